//! Textual quandle constructors.
//!
//! A spec is one of `dihedral:<n>`, `trivial:<n>`, `conj:<groupfile>`,
//! `core:<groupfile>`, `table:<file>`, `product:<spec>+<spec>+...`, or
//! `census:<max_order>`. Every form resolves to one quandle except
//! `census`, which expands to all tables up to the given order.

use std::path::Path;

use quandle_core::present::quandle_census;
use quandle_core::quandle::FiniteQuandle;

use crate::formats;
use crate::CliError;

/// Resolve a spec to one or more labeled quandles.
pub fn resolve_spec(spec: &str) -> Result<Vec<(String, FiniteQuandle)>, CliError> {
    let (kind, param) = spec
        .split_once(':')
        .ok_or_else(|| CliError::parse(format!("bad quandle spec {spec:?}")))?;
    let parse_order = |what: &str| -> Result<usize, CliError> {
        param
            .parse()
            .map_err(|_| CliError::parse(format!("bad {what} order {param:?}")))
    };
    match kind {
        "dihedral" => {
            let n = parse_order("dihedral")?;
            let q = FiniteQuandle::dihedral(n)
                .map_err(|e| CliError::domain(format!("dihedral:{n}: {e}")))?;
            Ok(vec![(spec.to_string(), q)])
        }
        "trivial" => {
            let n = parse_order("trivial")?;
            let q = FiniteQuandle::trivial(n)
                .map_err(|e| CliError::domain(format!("trivial:{n}: {e}")))?;
            Ok(vec![(spec.to_string(), q)])
        }
        "conj" => {
            let group = formats::read_group_file(Path::new(param))?;
            Ok(vec![(spec.to_string(), FiniteQuandle::conj(&group))])
        }
        "core" => {
            let group = formats::read_group_file(Path::new(param))?;
            Ok(vec![(spec.to_string(), FiniteQuandle::core(&group))])
        }
        "table" => {
            let q = formats::read_quandle_file(Path::new(param))?;
            Ok(vec![(spec.to_string(), q)])
        }
        "product" => {
            let mut factors = Vec::new();
            for part in param.split('+') {
                factors.push(resolve_single(part)?);
            }
            let q = FiniteQuandle::product(&factors)
                .map_err(|e| CliError::domain(format!("{spec}: {e}")))?;
            Ok(vec![(spec.to_string(), q)])
        }
        "census" => {
            let max_order = parse_order("census")?;
            let tables = quandle_census(max_order).map_err(|e| CliError::domain(e.to_string()))?;
            Ok(tables
                .into_iter()
                .enumerate()
                .map(|(i, q)| (format!("{spec}#{i}"), q))
                .collect())
        }
        _ => Err(CliError::parse(format!(
            "unknown quandle spec kind {kind:?}"
        ))),
    }
}

/// Resolve a spec that must name exactly one quandle.
pub fn resolve_single(spec: &str) -> Result<FiniteQuandle, CliError> {
    let mut resolved = resolve_spec(spec)?;
    if resolved.len() != 1 {
        return Err(CliError::parse(format!(
            "spec {spec:?} names {} quandles; exactly one needed",
            resolved.len()
        )));
    }
    Ok(resolved.pop().expect("length checked").1)
}

/// Resolve a comma-separated list of specs into a flat labeled library.
pub fn resolve_library(arg: &str) -> Result<Vec<(String, FiniteQuandle)>, CliError> {
    let mut library = Vec::new();
    for spec in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        library.extend(resolve_spec(spec)?);
    }
    Ok(library)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors_resolve() {
        assert_eq!(
            resolve_single("dihedral:3").unwrap(),
            FiniteQuandle::dihedral(3).unwrap()
        );
        assert_eq!(
            resolve_single("trivial:4").unwrap(),
            FiniteQuandle::trivial(4).unwrap()
        );
        let product = resolve_single("product:dihedral:3+trivial:2").unwrap();
        assert_eq!(product.order(), 6);
    }

    #[test]
    fn census_expands() {
        let library = resolve_spec("census:3").unwrap();
        assert_eq!(library.len(), 7); // 1 + 1 + 5 tables
        assert_eq!(library[0].0, "census:3#0");
    }

    #[test]
    fn bad_specs_are_parse_errors() {
        assert_eq!(resolve_spec("dihedral").unwrap_err().code, 2);
        assert_eq!(resolve_spec("dihedral:x").unwrap_err().code, 2);
        assert_eq!(resolve_spec("mystery:3").unwrap_err().code, 2);
        assert_eq!(resolve_single("census:2").unwrap_err().code, 2);
        // Order zero is a domain failure.
        assert_eq!(resolve_spec("trivial:0").unwrap_err().code, 1);
    }

    #[test]
    fn library_flattens() {
        let library = resolve_library("dihedral:3, dihedral:5").unwrap();
        assert_eq!(library.len(), 2);
        assert_eq!(library[0].0, "dihedral:3");
        assert_eq!(library[1].0, "dihedral:5");
    }
}
