//! Finite quandles as verified operation tables.
//!
//! The orientation is fixed as `table[x][y] = x * y`, so the columns are the
//! inner maps `S_y`. The inverse operation `x /* y` is precomputed by
//! inverting columns at verification time, giving O(1) lookups for both
//! operations.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{closure, FiniteGroup, GroupError, PermutationGroup};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuandleError {
    #[error("empty table: quandles are non-empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry at ({row}, {col}) is {value}, out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("axiom 1 (idempotence) violated: {x} * {x} = {got}")]
    NotIdempotent { x: usize, got: usize },
    #[error("axiom 2 (right translations) violated: column {y} repeats the value {value}")]
    ColumnNotBijective { y: usize, value: usize },
    #[error("axiom 3 (self-distributivity) violated at ({x}, {y}, {z}): ({x}*{y})*{z} = {left} but ({x}*{z})*({y}*{z}) = {right}")]
    NotSelfDistributive {
        x: usize,
        y: usize,
        z: usize,
        left: usize,
        right: usize,
    },
    #[error("element {element} out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("map is not a group automorphism: phi({a} {b}) != phi({a}) phi({b})")]
    NotGroupAutomorphism { a: usize, b: usize },
    #[error("degree {got} does not match order {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element {z} does not centralize the subgroup")]
    NotCentralizing { z: usize },
    #[error("empty factor list")]
    EmptyProduct,
    #[error("homomorphism has {got} images, expected {expected}")]
    HomWrongLength { expected: usize, got: usize },
    #[error("image {image} of {x} out of range for target order {order}")]
    HomImageOutOfRange {
        x: usize,
        image: usize,
        order: usize,
    },
    #[error("not a homomorphism: the images of {x} * {y} disagree")]
    NotHomomorphism { x: usize, y: usize },
    #[error("endomorphism is not bijective: image {value} repeats")]
    NotBijective { value: usize },
    #[error("automorphism has no fixed points")]
    EmptyFixedSet,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite quandle given by its full operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<usize>,
    inv_table: Vec<usize>,
}

impl FiniteQuandle {
    /// Verify a candidate table, returning the quandle (with the inverse
    /// operation populated) or a diagnostic naming the first violated axiom
    /// and a witness tuple. Axioms are checked in order 1, 2, 3 with
    /// lexicographically smallest witnesses.
    pub fn verify(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(QuandleError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(QuandleError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }
        for (x, row) in rows.iter().enumerate() {
            if row[x] != x {
                return Err(QuandleError::NotIdempotent { x, got: row[x] });
            }
        }
        for y in 0..n {
            let mut seen = vec![false; n];
            for row in rows {
                let v = row[y];
                if seen[v] {
                    return Err(QuandleError::ColumnNotBijective { y, value: v });
                }
                seen[v] = true;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = rows[rows[x][y]][z];
                    let right = rows[rows[x][z]][rows[y][z]];
                    if left != right {
                        return Err(QuandleError::NotSelfDistributive {
                            x,
                            y,
                            z,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for r in rows {
            table.extend_from_slice(r);
        }
        // inv_table[x][y] is the unique z with z * y = x: invert each column.
        let mut inv_table = vec![0usize; n * n];
        for y in 0..n {
            for z in 0..n {
                let x = table[z * n + y];
                inv_table[x * n + y] = z;
            }
        }
        Ok(Self {
            n,
            table,
            inv_table,
        })
    }

    fn build(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::verify(&rows)
    }

    /// The trivial quandle: `x * y = x`.
    pub fn trivial(n: usize) -> Result<Self, QuandleError> {
        Self::build(n, |x, _| x)
    }

    /// The dihedral quandle R_n on Z_n: `i * j = 2j - i (mod n)`.
    pub fn dihedral(n: usize) -> Result<Self, QuandleError> {
        Self::build(n, |x, y| (2 * y + n - x) % n)
    }

    /// Conjugation quandle of a group: `a * b = b^-1 a b`.
    pub fn conj(group: &FiniteGroup) -> Self {
        Self::build(group.order(), |a, b| {
            group.mul(group.mul(group.inv(b), a), b)
        })
        .expect("conjugation in a group satisfies the quandle axioms")
    }

    /// Core quandle of a group: `a * b = b a^-1 b`.
    pub fn core(group: &FiniteGroup) -> Self {
        Self::build(group.order(), |a, b| {
            group.mul(group.mul(b, group.inv(a)), b)
        })
        .expect("the core operation of a group satisfies the quandle axioms")
    }

    /// Generalized Alexander quandle of a group automorphism:
    /// `a * b = phi(a b^-1) b`.
    pub fn alexander(group: &FiniteGroup, phi: &Permutation) -> Result<Self, QuandleError> {
        let n = group.order();
        if phi.degree() != n {
            return Err(QuandleError::DegreeMismatch {
                expected: n,
                got: phi.degree(),
            });
        }
        for a in 0..n {
            for b in 0..n {
                if phi.apply(group.mul(a, b)) != group.mul(phi.apply(a), phi.apply(b)) {
                    return Err(QuandleError::NotGroupAutomorphism { a, b });
                }
            }
        }
        Self::build(n, |a, b| {
            group.mul(phi.apply(group.mul(a, group.inv(b))), b)
        })
    }

    /// Coset quandle (G/H, z) for z centralizing H:
    /// `Hx * Hy = H(z^-1 x y^-1 z y)`.
    pub fn coset(group: &FiniteGroup, subgroup: &[usize], z: usize) -> Result<Self, QuandleError> {
        let h = group.check_subgroup(subgroup)?;
        if z >= group.order() {
            return Err(QuandleError::ElementOutOfRange {
                element: z,
                order: group.order(),
            });
        }
        if !group.centralizer(&h).contains(&z) {
            return Err(QuandleError::NotCentralizing { z });
        }
        let cosets = group.right_cosets(&h)?;
        let k = cosets.len();
        Self::build(k, |i, j| {
            let x = cosets.representative(i);
            let y = cosets.representative(j);
            let mut w = group.inv(z);
            w = group.mul(w, x);
            w = group.mul(w, group.inv(y));
            w = group.mul(w, z);
            w = group.mul(w, y);
            cosets.coset_of[w]
        })
    }

    /// Product quandle with the componentwise operation. Elements are
    /// encoded mixed-radix with the first factor most significant.
    pub fn product(factors: &[FiniteQuandle]) -> Result<Self, QuandleError> {
        if factors.is_empty() {
            return Err(QuandleError::EmptyProduct);
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let total: usize = sizes.iter().product();
        let decode = |mut index: usize| -> Vec<usize> {
            let mut parts = vec![0usize; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                parts[i] = index % s;
                index /= s;
            }
            parts
        };
        let encode = |parts: &[usize]| -> usize {
            parts
                .iter()
                .zip(&sizes)
                .fold(0usize, |acc, (&p, &s)| acc * s + p)
        };
        Self::build(total, |x, y| {
            let xs = decode(x);
            let ys = decode(y);
            let parts: Vec<usize> = factors
                .iter()
                .zip(xs.iter().zip(&ys))
                .map(|(f, (&a, &b))| f.op(a, b))
                .collect();
            encode(&parts)
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `x * y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x /* y`, the unique `z` with `z * y = x`.
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_table[x * self.n + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.table[x * self.n..(x + 1) * self.n].to_vec())
            .collect()
    }

    /// The inner map S_y (column y of the table).
    pub fn column(&self, y: usize) -> Permutation {
        Permutation::new((0..self.n).map(|x| self.op(x, y)).collect())
            .expect("columns of a verified quandle are bijective")
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.op(x, y) == x))
    }

    /// The group generated by the inner maps { S_y }.
    pub fn inner_group(&self) -> PermutationGroup {
        let generators: BTreeSet<Permutation> = (0..self.n).map(|y| self.column(y)).collect();
        closure(self.n, generators.into_iter().collect())
            .expect("inner maps share the quandle's degree")
    }

    /// Verify `images` as a homomorphism into `target`, or return the
    /// witness pair on which it fails.
    pub fn hom_check(
        &self,
        target: &FiniteQuandle,
        images: &[usize],
    ) -> Result<QuandleHom, QuandleError> {
        if images.len() != self.n {
            return Err(QuandleError::HomWrongLength {
                expected: self.n,
                got: images.len(),
            });
        }
        for (x, &image) in images.iter().enumerate() {
            if image >= target.order() {
                return Err(QuandleError::HomImageOutOfRange {
                    x,
                    image,
                    order: target.order(),
                });
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if images[self.op(x, y)] != target.op(images[x], images[y]) {
                    return Err(QuandleError::NotHomomorphism { x, y });
                }
            }
        }
        Ok(QuandleHom {
            images: images.to_vec(),
        })
    }

    /// Fixed points of an automorphism of this quandle. Non-empty fixed sets
    /// are closed under both operations (asserted); an empty fixed set is
    /// flagged as an error.
    pub fn fixed_subquandle(&self, alpha: &QuandleHom) -> Result<Vec<usize>, QuandleError> {
        let alpha = self.hom_check(self, alpha.images())?;
        let mut seen = vec![false; self.n];
        for &v in alpha.images() {
            if seen[v] {
                return Err(QuandleError::NotBijective { value: v });
            }
            seen[v] = true;
        }
        let fixed: Vec<usize> = (0..self.n).filter(|&x| alpha.images()[x] == x).collect();
        if fixed.is_empty() {
            return Err(QuandleError::EmptyFixedSet);
        }
        for &x in &fixed {
            for &y in &fixed {
                assert!(
                    fixed.binary_search(&self.op(x, y)).is_ok(),
                    "fixed set must be closed under *"
                );
                assert!(
                    fixed.binary_search(&self.inv_op(x, y)).is_ok(),
                    "fixed set must be closed under the inverse operation"
                );
            }
        }
        Ok(fixed)
    }
}

/// A verified quandle homomorphism, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleHom {
    images: Vec<usize>,
}

impl QuandleHom {
    /// Wrap an unchecked image vector; use `FiniteQuandle::hom_check` to
    /// validate it against a source and target.
    pub fn from_images(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }
}
