//! Equivalence relations on `0..n`: ⋆-products, saturation and ⋆-closed
//! families.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::subset::{self, Subset};

/// A partition of `0..n`, stored as a canonical block-id array: block ids
/// are numbered by first occurrence, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equivalence {
    block_of: Vec<usize>,
    num_blocks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("universe sizes differ: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("equivalences do not commute: ({}, {}) is in the product only one way", witness.0, witness.1)]
    NonCommuting { witness: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("member {index} lives on {found} points, expected {expected}")]
    UniverseMismatch { index: usize, found: usize, expected: usize },
    #[error("{labels} labels for {members} members")]
    LabelCount { labels: usize, members: usize },
    #[error("members {0} and {1} are the same equivalence")]
    Duplicate(usize, usize),
    #[error("members {i} and {j} do not commute: witness ({}, {})", witness.0, witness.1)]
    NonCommuting { i: usize, j: usize, witness: (usize, usize) },
    #[error("product of members {0} and {1} is not in the family")]
    NotClosed(usize, usize),
}

impl Equivalence {
    /// Any block labelling; ids need not be dense or ordered.
    pub fn from_block_ids(ids: &[usize]) -> Self {
        Self::from_key(ids.len(), |x| ids[x])
    }

    /// Elements with equal keys share a block.
    pub fn from_key<K: Eq + Hash>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let block_of = (0..n)
            .map(|x| {
                let next = seen.len();
                *seen.entry(key(x)).or_insert(next)
            })
            .collect();
        Equivalence { block_of, num_blocks: seen.len() }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut ids: Vec<usize> = (0..n).map(|x| blocks.len() + x).collect();
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                ids[x] = b;
            }
        }
        Self::from_block_ids(&ids)
    }

    /// Δ.
    pub fn identity(n: usize) -> Self {
        Equivalence { block_of: (0..n).collect(), num_blocks: n }
    }

    /// ∇.
    pub fn all(n: usize) -> Self {
        Equivalence { block_of: vec![0; n], num_blocks: usize::from(n > 0) }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks == self.len()
    }

    pub fn is_all(&self) -> bool {
        self.num_blocks <= 1
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// `[x]`.
    pub fn class(&self, x: usize) -> Subset {
        let b = self.block_of[x];
        subset::from_indices(self.len(), (0..self.len()).filter(|&y| self.block_of[y] == b))
    }

    pub fn blocks(&self) -> Vec<Subset> {
        let mut out = vec![subset::empty(self.len()); self.num_blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].insert(x);
        }
        out
    }

    /// Inclusion of relations: every block of `self` lies inside a block of
    /// `other`.
    pub fn is_finer_than(&self, other: &Equivalence) -> bool {
        let mut image = vec![usize::MAX; self.num_blocks];
        self.block_of.iter().zip(&other.block_of).all(|(&b, &c)| {
            if image[b] == usize::MAX {
                image[b] = c;
            }
            image[b] == c
        })
    }

    /// σ_Θ(X): the union of all blocks meeting `x`.
    pub fn saturate(&self, x: &Subset) -> Subset {
        let mut hit = vec![false; self.num_blocks];
        for a in x.ones() {
            hit[self.block_of[a]] = true;
        }
        subset::from_indices(self.len(), (0..self.len()).filter(|&y| hit[self.block_of[y]]))
    }

    pub fn is_saturated(&self, x: &Subset) -> bool {
        self.saturate(x) == *x
    }

    /// The equivalence induced on `points`, re-indexed in the given order.
    pub fn restrict(&self, points: &[usize]) -> Equivalence {
        Equivalence::from_key(points.len(), |i| self.block_of[points[i]])
    }

    /// The relation as rows: `rows()[u]` is the class of `u`.
    pub fn rows(&self) -> Vec<Subset> {
        let blocks = self.blocks();
        self.block_of.iter().map(|&b| blocks[b].clone()).collect()
    }
}

/// Row `u` of the relational product `Θ⋆Γ`: `σ_Γ([u]_Θ)`.
fn product_rows(theta: &Equivalence, gamma: &Equivalence) -> Vec<Subset> {
    let sat: Vec<Subset> = theta.blocks().iter().map(|b| gamma.saturate(b)).collect();
    theta.block_of.iter().map(|&b| sat[b].clone()).collect()
}

/// The relational product `{(u,u′) : ∃v. uΘv ∧ vΓu′}`, returned as an
/// equivalence when `Θ` and `Γ` commute.
pub fn star(theta: &Equivalence, gamma: &Equivalence) -> Result<Equivalence, StarError> {
    if theta.len() != gamma.len() {
        return Err(StarError::UniverseMismatch { left: theta.len(), right: gamma.len() });
    }
    let left = product_rows(theta, gamma);
    let right = product_rows(gamma, theta);
    for (u, (l, r)) in left.iter().zip(&right).enumerate() {
        if let Some(v) = l.difference(r).next() {
            return Err(StarError::NonCommuting { witness: (u, v) });
        }
    }
    Ok(Equivalence::from_key(theta.len(), |u| left[u].minimum()))
}

pub fn commute(theta: &Equivalence, gamma: &Equivalence) -> bool {
    star(theta, gamma).is_ok()
}

/// Least equivalence containing both; equal to `Θ⋆Γ` for commuting inputs.
pub fn least_upper_equivalence(theta: &Equivalence, gamma: &Equivalence) -> Result<Equivalence, StarError> {
    let product = star(theta, gamma)?;
    debug_assert_eq!(product, join_by_transitive_closure(theta, gamma));
    Ok(product)
}

/// Transitive closure of `Θ ∪ Γ`, via union-find.
pub fn join_by_transitive_closure(theta: &Equivalence, gamma: &Equivalence) -> Equivalence {
    let n = theta.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for eq in [theta, gamma] {
        let mut first = vec![usize::MAX; eq.num_blocks];
        for x in 0..n {
            let b = eq.block_of[x];
            if first[b] == usize::MAX {
                first[b] = x;
            } else {
                let (r1, r2) = (find(&mut parent, first[b]), find(&mut parent, x));
                parent[r1] = r2;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Equivalence::from_block_ids(&roots)
}

/// Every partition of `0..n`, as restricted growth strings in lex order.
pub fn all_equivalences(n: usize) -> Vec<Equivalence> {
    let mut out = Vec::new();
    let mut ids = vec![0usize; n];
    fn go(ids: &mut Vec<usize>, pos: usize, max: usize, out: &mut Vec<Equivalence>) {
        if pos == ids.len() {
            out.push(Equivalence::from_block_ids(ids));
            return;
        }
        for b in 0..=max {
            ids[pos] = b;
            go(ids, pos + 1, if b == max { max + 1 } else { max }, out);
        }
    }
    if n == 0 {
        out.push(Equivalence::identity(0));
    } else {
        go(&mut ids, 1, 1, &mut out);
    }
    out
}

/// A labelled family of pairwise commuting equivalences closed under ⋆.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFamily {
    n: usize,
    members: Vec<Equivalence>,
    labels: Vec<String>,
    product: Vec<usize>,
}

impl StarFamily {
    pub fn new(n: usize, members: Vec<Equivalence>, labels: Vec<String>) -> Result<Self, FamilyError> {
        if labels.len() != members.len() {
            return Err(FamilyError::LabelCount { labels: labels.len(), members: members.len() });
        }
        if let Some((index, m)) = members.iter().enumerate().find(|(_, m)| m.len() != n) {
            return Err(FamilyError::UniverseMismatch { index, found: m.len(), expected: n });
        }
        let mut index: HashMap<&Equivalence, usize> = HashMap::new();
        for (j, m) in members.iter().enumerate() {
            if let Some(&i) = index.get(m) {
                return Err(FamilyError::Duplicate(i, j));
            }
            index.insert(m, j);
        }
        let k = members.len();
        let mut product = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = star(&members[i], &members[j]).map_err(|e| match e {
                    StarError::NonCommuting { witness } => FamilyError::NonCommuting { i, j, witness },
                    StarError::UniverseMismatch { .. } => unreachable!("sizes checked"),
                })?;
                product[i * k + j] = *index.get(&p).ok_or(FamilyError::NotClosed(i, j))?;
            }
        }
        Ok(StarFamily { n, members, labels, product })
    }

    /// Unlabelled convenience constructor: members are labelled by index.
    pub fn unlabelled(n: usize, members: Vec<Equivalence>) -> Result<Self, FamilyError> {
        let labels = (0..members.len()).map(|i| format!("t{i}")).collect();
        Self::new(n, members, labels)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Equivalence] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Equivalence {
        &self.members[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, eq: &Equivalence) -> Option<usize> {
        self.members.iter().position(|m| m == eq)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of `members[i] ⋆ members[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product[i * self.len() + j]
    }

    pub fn product_table(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        (0..k).map(|i| (0..k).map(|j| self.product(i, j)).collect()).collect()
    }

    /// `Ok` iff every two members have a common lower bound in the family;
    /// otherwise the first pair without one.
    pub fn is_downward_directed(&self) -> Result<(), (usize, usize)> {
        let k = self.len();
        for i in 0..k {
            for j in i..k {
                let below = |m: &Equivalence| m.is_finer_than(&self.members[i]) && m.is_finer_than(&self.members[j]);
                if !self.members.iter().any(below) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }
}

/// Least ⋆-closed superset of a labelled family. Duplicate inputs keep their
/// first label; new products are labelled `"a.b"`.
pub fn star_closure(n: usize, members: &[(String, Equivalence)]) -> Result<StarFamily, FamilyError> {
    let mut eqs: Vec<Equivalence> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (index, (label, m)) in members.iter().enumerate() {
        if m.len() != n {
            return Err(FamilyError::UniverseMismatch { index, found: m.len(), expected: n });
        }
        if !eqs.contains(m) {
            eqs.push(m.clone());
            labels.push(label.clone());
        }
    }
    let mut done = 0;
    while done < eqs.len() {
        let i = done;
        for j in 0..=i {
            for (a, b) in [(j, i), (i, j)] {
                let p = star(&eqs[a], &eqs[b]).map_err(|e| match e {
                    StarError::NonCommuting { witness } => FamilyError::NonCommuting { i: a, j: b, witness },
                    StarError::UniverseMismatch { .. } => unreachable!("sizes checked"),
                })?;
                if !eqs.contains(&p) {
                    labels.push(format!("{}.{}", labels[a], labels[b]));
                    eqs.push(p);
                }
            }
        }
        done += 1;
    }
    StarFamily::new(n, eqs, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows() -> Equivalence {
        Equivalence::from_blocks(4, &[vec![0, 1], vec![2, 3]])
    }

    fn cols() -> Equivalence {
        Equivalence::from_blocks(4, &[vec![0, 2], vec![1, 3]])
    }

    fn relation_product(a: &Equivalence, b: &Equivalence) -> Vec<(usize, usize)> {
        let n = a.len();
        let mut out = Vec::new();
        for u in 0..n {
            for w in 0..n {
                if (0..n).any(|v| a.related(u, v) && b.related(v, w)) {
                    out.push((u, w));
                }
            }
        }
        out
    }

    #[test]
    fn canonical_block_ids() {
        let e = Equivalence::from_block_ids(&[7, 3, 7, 9]);
        assert_eq!(e.block_ids(), &[0, 1, 0, 2]);
        assert_eq!(e, Equivalence::from_blocks(4, &[vec![0, 2], vec![1], vec![3]]));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&rows(), &rows()).unwrap(), rows());
        assert_eq!(star(&rows(), &cols()).unwrap(), Equivalence::all(4));
        let gamma = Equivalence::from_blocks(4, &[vec![1, 2], vec![0], vec![3]]);
        assert_eq!(star(&rows(), &gamma), Err(StarError::NonCommuting { witness: (0, 2) }));
        assert!(matches!(
            star(&rows(), &Equivalence::identity(3)),
            Err(StarError::UniverseMismatch { left: 4, right: 3 })
        ));
    }

    #[test]
    fn star_agrees_with_relational_product() {
        for a in all_equivalences(4) {
            for b in all_equivalences(4) {
                let ab = relation_product(&a, &b);
                let ba = relation_product(&b, &a);
                match star(&a, &b) {
                    Ok(p) => {
                        assert_eq!(ab, ba);
                        let mine: Vec<_> = (0..4)
                            .flat_map(|u| (0..4).map(move |w| (u, w)))
                            .filter(|&(u, w)| p.related(u, w))
                            .collect();
                        assert_eq!(mine, ab);
                    }
                    Err(StarError::NonCommuting { witness }) => {
                        assert_ne!(ab, ba);
                        let first = ab.iter().find(|p| !ba.contains(p)).copied();
                        assert_eq!(Some(witness), first);
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn saturate_examples() {
        let theta = Equivalence::from_blocks(3, &[vec![0, 1], vec![2]]);
        assert!(theta.saturate(&subset::empty(3)).is_clear());
        assert_eq!(theta.saturate(&subset::singleton(3, 0)), subset::from_indices(3, [0, 1]));
        let x = subset::from_indices(3, [0, 2]);
        assert_eq!(Equivalence::identity(3).saturate(&x), x);
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..=6).map(|n| all_equivalences(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn closure_examples() {
        let delta = Equivalence::identity(4);
        let nabla = Equivalence::all(4);
        let single = star_closure(4, &[("d".into(), delta.clone())]).unwrap();
        assert_eq!(single.members(), &[delta.clone()]);

        let grid = star_closure(4, &[("r".into(), rows()), ("c".into(), cols())]).unwrap();
        assert_eq!(grid.members(), &[rows(), cols(), nabla.clone()]);
        assert_eq!(grid.labels(), &["r", "c", "r.c"]);

        let again: Vec<(String, Equivalence)> = grid
            .labels()
            .iter()
            .cloned()
            .zip(grid.members().iter().cloned())
            .collect();
        assert_eq!(star_closure(4, &again).unwrap(), grid);

        let dn = star_closure(4, &[("d".into(), delta), ("n".into(), nabla)]).unwrap();
        assert_eq!(dn.len(), 2);

        let gamma = Equivalence::from_blocks(4, &[vec![1, 2], vec![0], vec![3]]);
        assert!(matches!(
            star_closure(4, &[("r".into(), rows()), ("g".into(), gamma)]),
            Err(FamilyError::NonCommuting { .. })
        ));
    }

    #[test]
    fn directedness() {
        let grid = StarFamily::unlabelled(4, vec![rows(), cols()]);
        // rows ⋆ cols = ∇ is missing, so the family is not even closed.
        assert_eq!(grid, Err(FamilyError::NotClosed(0, 1)));
        let closed = StarFamily::unlabelled(4, vec![rows(), cols(), Equivalence::all(4)]).unwrap();
        assert_eq!(closed.is_downward_directed(), Err((0, 1)));
        let with_delta =
            StarFamily::unlabelled(4, vec![Equivalence::identity(4), rows(), cols(), Equivalence::all(4)]).unwrap();
        assert!(with_delta.is_downward_directed().is_ok());
        assert!(StarFamily::unlabelled(4, vec![rows()]).unwrap().is_downward_directed().is_ok());
    }

    #[test]
    fn least_upper_examples() {
        assert_eq!(least_upper_equivalence(&rows(), &rows()).unwrap(), rows());
        assert_eq!(least_upper_equivalence(&rows(), &cols()).unwrap(), Equivalence::all(4));
        assert_eq!(join_by_transitive_closure(&rows(), &cols()), Equivalence::all(4));
        assert_eq!(least_upper_equivalence(&rows(), &Equivalence::identity(4)).unwrap(), rows());
    }

    #[test]
    fn saturation_is_injective() {
        for n in 1..=5 {
            let eqs = all_equivalences(n);
            for (i, a) in eqs.iter().enumerate() {
                for b in &eqs[i + 1..] {
                    assert!((0..n).any(|x| {
                        let s = subset::singleton(n, x);
                        a.saturate(&s) != b.saturate(&s)
                    }));
                }
            }
        }
    }

    fn arb_equivalence(n: usize) -> impl Strategy<Value = Equivalence> {
        prop::collection::vec(0..n, n).prop_map(|ids| Equivalence::from_block_ids(&ids))
    }

    fn arb_subset(n: usize) -> impl Strategy<Value = Subset> {
        prop::collection::vec(any::<bool>(), n)
            .prop_map(move |bits| subset::from_indices(n, (0..n).filter(|&i| bits[i])))
    }

    proptest! {
        #[test]
        fn saturation_laws(
            (theta, x, y) in (1usize..12).prop_flat_map(|n| (arb_equivalence(n), arb_subset(n), arb_subset(n)))
        ) {
            let sx = theta.saturate(&x);
            prop_assert!(x.is_subset(&sx));
            prop_assert_eq!(theta.saturate(&sx), sx.clone());
            let sy = theta.saturate(&y);
            prop_assert_eq!(theta.saturate(&subset::intersection(&sx, &y)), subset::intersection(&sx, &sy));
            prop_assert_eq!(theta.saturate(&subset::union(&x, &y)), subset::union(&sx, &sy));
            if x.is_subset(&y) {
                prop_assert!(sx.is_subset(&sy));
            }
        }

        #[test]
        fn star_of_commuting_is_composed_saturation(
            (a, b, x) in (1usize..9).prop_flat_map(|n| (arb_equivalence(n), arb_equivalence(n), arb_subset(n)))
        ) {
            if let Ok(p) = star(&a, &b) {
                prop_assert_eq!(p.saturate(&x), a.saturate(&b.saturate(&x)));
                prop_assert_eq!(p, join_by_transitive_closure(&a, &b));
            }
        }

        #[test]
        fn star_is_associative_on_commuting_triples(
            (a, b, c) in (1usize..7).prop_flat_map(|n| (arb_equivalence(n), arb_equivalence(n), arb_equivalence(n)))
        ) {
            if let (Ok(ab), Ok(bc)) = (star(&a, &b), star(&b, &c)) {
                if let (Ok(l), Ok(r)) = (star(&ab, &c), star(&a, &bc)) {
                    prop_assert_eq!(l, r);
                }
            }
            prop_assert_eq!(star(&a, &a).unwrap(), a);
        }
    }
}
