//! Finite groups as verified Cayley tables, plus permutation-group closure.
//!
//! Groups are kept as full multiplication tables because the coset-quandle
//! construction quantifies over all cosets; orders stay desk-scale.

use alloc::collections::BTreeSet;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("empty table")]
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
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset element {element} out of range for order {order}")]
    SubsetOutOfRange { element: usize, order: usize },
    #[error("subset does not contain the identity")]
    SubgroupMissingIdentity,
    #[error("subset is not closed under the product: {a} * {b} falls outside")]
    SubgroupNotClosed { a: usize, b: usize },
    #[error("subset lacks the inverse of {element}")]
    SubgroupMissingInverse { element: usize },
    #[error("generator degree {got} does not match {expected}")]
    DegreeMismatch { expected: usize, got: usize },
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Verify a candidate table, returning the group or a diagnostic naming
    /// the first violated axiom and a witness.
    pub fn verify(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }
        let at = |a: usize, b: usize| rows[a][b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::MissingInverse { element: a })?;
            inv.push(b);
        }
        let mut table = Vec::with_capacity(n * n);
        for r in rows {
            table.extend_from_slice(r);
        }
        Ok(Self {
            n,
            table,
            identity,
            inv,
        })
    }

    /// The cyclic group Z_n under addition, identity 0.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs a positive order");
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Self {
            n,
            table,
            identity: 0,
            inv,
        }
    }

    /// The symmetric group on `points` points; elements are the permutations
    /// in lexicographic order of their image vectors, so the identity is
    /// element 0. Product means "apply left, then right".
    pub fn symmetric(points: usize) -> Self {
        assert!(
            (1..=6).contains(&points),
            "symmetric-group tables are desk-scale only"
        );
        let elements = all_permutations(points);
        let index_of = |p: &Permutation| {
            elements
                .binary_search(p)
                .expect("product of permutations is a permutation")
        };
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index_of(&a.then(b)));
            }
        }
        let inv = elements.iter().map(|a| index_of(&a.inverse())).collect();
        Self {
            n,
            table,
            identity: 0,
            inv,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    /// Check that `subset` is a subgroup; returns it sorted and deduplicated.
    pub fn check_subgroup(&self, subset: &[usize]) -> Result<Vec<usize>, GroupError> {
        if let Some(&element) = subset.iter().find(|&&h| h >= self.n) {
            return Err(GroupError::SubsetOutOfRange {
                element,
                order: self.n,
            });
        }
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if set.is_empty() {
            return Err(GroupError::EmptySubset);
        }
        if !set.contains(&self.identity) {
            return Err(GroupError::SubgroupMissingIdentity);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::SubgroupNotClosed { a, b });
                }
            }
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(GroupError::SubgroupMissingInverse { element: a });
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Right cosets Hg of a subgroup, ordered by smallest member, with a
    /// total element-to-coset map. The coset of the smallest element comes
    /// first, so with identity 0 the subgroup itself is coset 0.
    pub fn right_cosets(&self, subset: &[usize]) -> Result<Cosets, GroupError> {
        let h = self.check_subgroup(subset)?;
        let mut coset_of = vec![usize::MAX; self.n];
        let mut blocks = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let index = blocks.len();
            let block: BTreeSet<usize> = h.iter().map(|&x| self.mul(x, g)).collect();
            for &member in &block {
                debug_assert_eq!(coset_of[member], usize::MAX);
                coset_of[member] = index;
            }
            blocks.push(block.into_iter().collect::<Vec<_>>());
        }
        Ok(Cosets { blocks, coset_of })
    }

    /// Elements commuting with every member of `subset`.
    pub fn centralizer(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| subset.iter().all(|&h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }
}

/// A right-coset decomposition: coset blocks plus the element-to-coset map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosets {
    pub blocks: Vec<Vec<usize>>,
    pub coset_of: Vec<usize>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The smallest member, used as the canonical representative.
    pub fn representative(&self, index: usize) -> usize {
        self.blocks[index][0]
    }
}

pub(crate) fn all_permutations(points: usize) -> Vec<Permutation> {
    // Backtracking in ascending image order yields lexicographic order.
    fn rec(points: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == points {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for v in 0..points {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(points, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(points, &mut Vec::new(), &mut vec![false; points], &mut out);
    out
}

/// A permutation group held by its generators and its full element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in lexicographic order of their image vectors.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

/// Breadth-first closure of the generators under composition.
pub fn closure(
    degree: usize,
    generators: Vec<Permutation>,
) -> Result<PermutationGroup, GroupError> {
    for g in &generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
    }
    let mut elements = BTreeSet::new();
    let mut queue = VecDeque::new();
    let id = Permutation::identity(degree);
    elements.insert(id.clone());
    queue.push_back(id);
    while let Some(current) = queue.pop_front() {
        for g in &generators {
            let next = current.then(g);
            if elements.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(PermutationGroup {
        degree,
        generators,
        elements: elements.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verifies_cyclic_table() {
        let z3 = FiniteGroup::verify(&FiniteGroup::cyclic(3).rows()).unwrap();
        assert_eq!(z3.identity(), 0);
        assert_eq!(z3.mul(1, 2), 0);
        assert_eq!(z3.inv(1), 2);
    }

    #[test]
    fn verifies_symmetric_table() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let verified = FiniteGroup::verify(&s3.rows()).unwrap();
        assert_eq!(verified, s3);
    }

    #[test]
    fn corrupted_entry_is_diagnosed() {
        // Z_2 with table[0][0] flipped to 1.
        let err = FiniteGroup::verify(&[vec![1, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, GroupError::NotAssociative { a: 0, b: 0, c: 1 });
    }

    #[test]
    fn cosets_of_index_two_subgroup() {
        let z6 = FiniteGroup::cyclic(6);
        let cosets = z6.right_cosets(&[0, 3]).unwrap();
        assert_eq!(cosets.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(cosets.coset_of, vec![0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn coset_sizes_obey_lagrange() {
        let s3 = FiniteGroup::symmetric(3);
        for subgroup in [vec![0], vec![0, 2], vec![0, 3, 4], (0..6).collect()] {
            let h = s3.check_subgroup(&subgroup).unwrap();
            let cosets = s3.right_cosets(&h).unwrap();
            assert!(cosets.blocks.iter().all(|b| b.len() == h.len()));
            let total: usize = cosets.blocks.iter().map(Vec::len).sum();
            assert_eq!(total, s3.order());
        }
    }

    #[test]
    fn centralizers_are_subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        for subset in [vec![0], vec![2], vec![3], vec![1, 2, 3]] {
            let centralizer = s3.centralizer(&subset);
            assert!(s3.check_subgroup(&centralizer).is_ok());
        }
    }

    #[test]
    fn coset_edge_cases() {
        let z4 = FiniteGroup::cyclic(4);
        let whole = z4.right_cosets(&[0, 1, 2, 3]).unwrap();
        assert_eq!(whole.len(), 1);
        let singletons = z4.right_cosets(&[0]).unwrap();
        assert_eq!(singletons.len(), 4);
        assert!(singletons.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn rejects_non_subgroups() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(
            z6.right_cosets(&[0, 1]).unwrap_err(),
            GroupError::SubgroupNotClosed { a: 1, b: 1 }
        );
        assert_eq!(
            z6.right_cosets(&[3]).unwrap_err(),
            GroupError::SubgroupMissingIdentity
        );
    }

    #[test]
    fn centralizer_examples() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.centralizer(&[2, 4]), vec![0, 1, 2, 3, 4, 5]);
        let s3 = FiniteGroup::symmetric(3);
        // Element indices in lex order: 0 = id, 2 = (0 1).
        let h = s3.centralizer(&[2]);
        assert_eq!(h, vec![0, 2]);
        assert_eq!(s3.centralizer(&[0]).len(), 6);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(4, vec![]).unwrap().order(), 1);
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(closure(2, vec![swap]).unwrap().order(), 2);
        let t = Permutation::transposition(3, 0, 1);
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        let s3 = closure(3, vec![t, c]).unwrap();
        assert_eq!(s3.order(), 6);
        // Closed under composition.
        for a in s3.elements() {
            for b in s3.elements() {
                assert!(s3.contains(&a.then(b)));
            }
        }
    }

    #[test]
    fn closure_rejects_degree_mismatch() {
        let err = closure(3, vec![Permutation::identity(2)]).unwrap_err();
        assert_eq!(
            err,
            GroupError::DegreeMismatch {
                expected: 3,
                got: 2
            }
        );
    }
}
