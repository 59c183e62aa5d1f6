//! Finite posets and bounded (semi)lattices in information order.
//!
//! Elements are dense indices `0..n`. In information order the unit
//! (vacuous information) is the least element and the zero (contradiction)
//! is the greatest; combination is the join.

use std::fmt;

use thiserror::Error;

use crate::subset::{self, Subset};

/// A violated partial-order axiom, with its lexicographically first witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetViolation {
    Reflexivity(usize),
    Antisymmetry(usize, usize),
    Transitivity(usize, usize, usize),
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PosetViolation::Reflexivity(a) => write!(f, "reflexivity fails at {a}"),
            PosetViolation::Antisymmetry(a, b) => {
                write!(f, "antisymmetry fails at ({a}, {b})")
            }
            PosetViolation::Transitivity(a, b, c) => {
                write!(f, "transitivity fails at ({a}, {b}, {c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("index {index} out of range for {n} elements")]
    OutOfRange { index: usize, n: usize },
    #[error("carrier is empty")]
    Empty,
    #[error("not a partial order: {0}")]
    NotPoset(PosetViolation),
    #[error("join is not idempotent at {0}")]
    NotIdempotent(usize),
    #[error("join is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("join is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("join of {a} and {b} is listed as {listed}, which is not their least upper bound")]
    NotLeastUpperBound { a: usize, b: usize, listed: usize },
    #[error("meet of {a} and {b} is listed as {listed}, which is not their greatest lower bound")]
    NotGreatestLowerBound { a: usize, b: usize, listed: usize },
    #[error("{0} and {1} have no least upper bound")]
    MissingJoin(usize, usize),
    #[error("{0} and {1} have no greatest lower bound")]
    MissingMeet(usize, usize),
    #[error("unit {unit} is not below {element}")]
    UnitNotLeast { unit: usize, element: usize },
    #[error("zero {zero} is not above {element}")]
    ZeroNotGreatest { zero: usize, element: usize },
    #[error("no least element")]
    NoLeast,
    #[error("no greatest element")]
    NoGreatest,
    #[error("more than {cap} up-sets")]
    TooManyUpSets { cap: usize },
}

/// Outcome of [`verify_poset`]: one entry per violated axiom.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosetReport {
    pub violations: Vec<PosetViolation>,
}

impl PosetReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_square<T>(table: &[Vec<T>]) -> Result<(), OrderError> {
    let n = table.len();
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(OrderError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    Ok(())
}

fn rows_from_table(leq: &[Vec<bool>]) -> Vec<Subset> {
    let n = leq.len();
    leq.iter()
        .map(|row| subset::from_indices(n, (0..n).filter(|&b| row[b])))
        .collect()
}

fn first_transitivity_failure(up: &[Subset]) -> Option<(usize, usize, usize)> {
    for (a, row_a) in up.iter().enumerate() {
        for b in row_a.ones() {
            if let Some(c) = up[b].difference(row_a).next() {
                return Some((a, b, c));
            }
        }
    }
    None
}

fn violations_of(up: &[Subset]) -> Vec<PosetViolation> {
    let n = up.len();
    let mut out = Vec::new();
    if let Some(a) = (0..n).find(|&a| !up[a].contains(a)) {
        out.push(PosetViolation::Reflexivity(a));
    }
    'anti: for a in 0..n {
        for b in up[a].ones().filter(|&b| b > a) {
            if up[b].contains(a) {
                out.push(PosetViolation::Antisymmetry(a, b));
                break 'anti;
            }
        }
    }
    if let Some((a, b, c)) = first_transitivity_failure(up) {
        out.push(PosetViolation::Transitivity(a, b, c));
    }
    out
}

/// Checks the three partial-order axioms on a boolean `leq` table.
pub fn verify_poset(leq: &[Vec<bool>]) -> Result<PosetReport, OrderError> {
    check_square(leq)?;
    Ok(PosetReport { violations: violations_of(&rows_from_table(leq)) })
}

/// A finite partially ordered set, stored as principal up- and down-sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl FinitePoset {
    pub fn from_table(leq: &[Vec<bool>]) -> Result<Self, OrderError> {
        check_square(leq)?;
        Self::from_up_rows(rows_from_table(leq))
    }

    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let up = (0..n)
            .map(|a| subset::from_indices(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        Self::from_up_rows(up)
    }

    fn from_up_rows(up: Vec<Subset>) -> Result<Self, OrderError> {
        if let Some(&v) = violations_of(&up).first() {
            return Err(OrderError::NotPoset(v));
        }
        Ok(Self::from_valid_rows(up))
    }

    pub(crate) fn from_valid_rows(up: Vec<Subset>) -> Self {
        let n = up.len();
        let mut down = vec![subset::empty(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        FinitePoset { up, down }
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        Self::from_valid_rows((0..n).map(|a| subset::from_indices(n, a..n)).collect())
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_valid_rows((0..n).map(|a| subset::singleton(n, a)).collect())
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `↑x`.
    pub fn principal_up_set(&self, x: usize) -> &Subset {
        &self.up[x]
    }

    /// `↓x`.
    pub fn principal_down_set(&self, x: usize) -> &Subset {
        &self.down[x]
    }

    pub fn to_table(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.leq(a, b)).collect()).collect()
    }

    pub fn is_up_set(&self, s: &Subset) -> bool {
        s.ones().all(|x| self.up[x].is_subset(s))
    }

    pub fn up_closure(&self, s: &Subset) -> Subset {
        let mut out = subset::empty(self.len());
        for x in s.ones() {
            out.union_with(&self.up[x]);
        }
        out
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|a| self.up[a].count_ones(..) == 1)
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        let mut strict = self.up[a].clone();
        strict.set(a, false);
        strict
            .ones()
            .filter(|&b| self.down[b].intersection(&strict).count() == 1)
            .collect()
    }

    /// Greatest lower bound of a set of elements, if it exists.
    pub fn glb_of(&self, s: &Subset) -> Option<usize> {
        let mut lower = subset::full(self.len());
        for x in s.ones() {
            lower.intersect_with(&self.down[x]);
        }
        lower.ones().find(|&g| lower.is_subset(&self.down[g]))
    }

    /// Least upper bound of a set of elements, if it exists.
    pub fn lub_of(&self, s: &Subset) -> Option<usize> {
        let mut upper = subset::full(self.len());
        for x in s.ones() {
            upper.intersect_with(&self.up[x]);
        }
        upper.ones().find(|&j| upper.is_subset(&self.up[j]))
    }

    /// The sub-poset induced on `points` (re-indexed in the given order).
    pub fn induced(&self, points: &[usize]) -> FinitePoset {
        let m = points.len();
        let up = points
            .iter()
            .map(|&p| subset::from_indices(m, (0..m).filter(|&j| self.leq(p, points[j]))))
            .collect();
        Self::from_valid_rows(up)
    }

    /// Whether `map: self → other` preserves order.
    pub fn first_order_violation(&self, other: &FinitePoset, map: &[usize]) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if !other.leq(map[a], map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Every up-set, sorted. Panics past `usize::MAX` results; see
    /// [`FinitePoset::up_sets_capped`] for a bounded variant.
    pub fn up_sets(&self) -> Vec<Subset> {
        self.up_sets_capped(usize::MAX).expect("uncapped enumeration")
    }

    pub fn up_sets_capped(&self, cap: usize) -> Result<Vec<Subset>, OrderError> {
        // Larger principal up-sets come later, so every strict upper bound of
        // an element is decided before the element itself.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.up[a].count_ones(..), a));
        let mut out = Vec::new();
        let mut current = subset::empty(self.len());
        self.extend_up_sets(&order, 0, &mut current, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn extend_up_sets(
        &self,
        order: &[usize],
        depth: usize,
        current: &mut Subset,
        out: &mut Vec<Subset>,
        cap: usize,
    ) -> Result<(), OrderError> {
        if depth == order.len() {
            if out.len() >= cap {
                return Err(OrderError::TooManyUpSets { cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let x = order[depth];
        self.extend_up_sets(order, depth + 1, current, out, cap)?;
        let mut strict_up = self.up[x].clone();
        strict_up.set(x, false);
        if strict_up.is_subset(current) {
            current.insert(x);
            self.extend_up_sets(order, depth + 1, current, out, cap)?;
            current.set(x, false);
        }
        Ok(())
    }
}

/// Every up-set of `poset` (including `∅` and the whole carrier).
pub fn up_sets(poset: &FinitePoset) -> Vec<Subset> {
    poset.up_sets()
}

/// `↑x`.
pub fn principal_up_set(poset: &FinitePoset, x: usize) -> Subset {
    poset.principal_up_set(x).clone()
}

/// A bounded join-semilattice: combination is the join, `unit` the least
/// element and `zero` the greatest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedJoinSemilattice {
    poset: FinitePoset,
    join: Vec<usize>,
    unit: usize,
    zero: usize,
}

impl BoundedJoinSemilattice {
    /// Validates a join table; the order is derived as `a ≤ b ⟺ a∨b = b`.
    pub fn from_join_table(join: &[Vec<usize>], unit: usize, zero: usize) -> Result<Self, OrderError> {
        check_square(join)?;
        let n = join.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        for &index in join.iter().flatten().chain([&unit, &zero]) {
            if index >= n {
                return Err(OrderError::OutOfRange { index, n });
            }
        }
        if let Some(a) = (0..n).find(|&a| join[a][a] != a) {
            return Err(OrderError::NotIdempotent(a));
        }
        for a in 0..n {
            for b in a + 1..n {
                if join[a][b] != join[b][a] {
                    return Err(OrderError::NotCommutative(a, b));
                }
            }
        }
        let up: Vec<Subset> = (0..n)
            .map(|a| subset::from_indices(n, (0..n).filter(|&b| join[a][b] == b)))
            .collect();
        let order_failure = violations_of(&up)
            .first()
            .map(|&v| OrderError::NotPoset(v))
            .or_else(|| first_lub_failure(&up, |a, b| join[a][b]));
        if let Some(err) = order_failure {
            return Err(first_associativity_failure(join)
                .map(|(a, b, c)| OrderError::NotAssociative(a, b, c))
                .unwrap_or(err));
        }
        let sl = BoundedJoinSemilattice {
            poset: FinitePoset::from_valid_rows(up),
            join: join.iter().flatten().copied().collect(),
            unit,
            zero,
        };
        sl.check_bounds()?;
        Ok(sl)
    }

    /// Derives the join from an order; fails if some pair lacks a least
    /// upper bound or the order has no least/greatest element.
    pub fn from_poset(poset: FinitePoset) -> Result<Self, OrderError> {
        let n = poset.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let pair = subset::from_indices(n, [a, b]);
                let j = poset.lub_of(&pair).ok_or(OrderError::MissingJoin(a, b))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let unit = (0..n)
            .find(|&a| poset.up[a].count_ones(..) == n)
            .ok_or(OrderError::NoLeast)?;
        let zero = (0..n)
            .find(|&a| poset.down[a].count_ones(..) == n)
            .ok_or(OrderError::NoGreatest)?;
        Ok(BoundedJoinSemilattice { poset, join, unit, zero })
    }

    /// Order given as a table; `unit` and `zero` must be its bounds.
    pub fn from_leq_table(leq: &[Vec<bool>], unit: usize, zero: usize) -> Result<Self, OrderError> {
        let n = leq.len();
        for index in [unit, zero] {
            if index >= n {
                return Err(OrderError::OutOfRange { index, n });
            }
        }
        let mut sl = Self::from_poset(FinitePoset::from_table(leq)?)?;
        sl.unit = unit;
        sl.zero = zero;
        sl.check_bounds()?;
        Ok(sl)
    }

    /// Construction from a join table that is known to be a semilattice.
    pub(crate) fn from_trusted_join(join: Vec<usize>, n: usize, unit: usize, zero: usize) -> Self {
        let up = (0..n)
            .map(|a| subset::from_indices(n, (0..n).filter(|&b| join[a * n + b] == b)))
            .collect();
        BoundedJoinSemilattice { poset: FinitePoset::from_valid_rows(up), join, unit, zero }
    }

    fn check_bounds(&self) -> Result<(), OrderError> {
        let n = self.len();
        if let Some(element) = (0..n).find(|&x| !self.leq(self.unit, x)) {
            return Err(OrderError::UnitNotLeast { unit: self.unit, element });
        }
        if let Some(element) = (0..n).find(|&x| !self.leq(x, self.zero)) {
            return Err(OrderError::ZeroNotGreatest { zero: self.zero, element });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.unit, |acc, x| self.join(acc, x))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.len().max(1)).map(<[usize]>::to_vec).collect()
    }

    /// Least upper bound; the join table entry.
    pub fn lub(&self, a: usize, b: usize) -> usize {
        self.join(a, b)
    }

    /// Greatest lower bound if it exists.
    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        self.poset.glb_of(&subset::from_indices(self.len(), [a, b]))
    }
}

fn first_lub_failure(up: &[Subset], join: impl Fn(usize, usize) -> usize) -> Option<OrderError> {
    let n = up.len();
    for a in 0..n {
        for b in a..n {
            let listed = join(a, b);
            let mut upper = up[a].clone();
            upper.intersect_with(&up[b]);
            if !upper.contains(listed) || !upper.is_subset(&up[listed]) {
                return Some(OrderError::NotLeastUpperBound { a, b, listed });
            }
        }
    }
    None
}

fn first_associativity_failure(join: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = join.len();
    for a in 0..n {
        for b in 0..n {
            let ab = join[a][b];
            for c in 0..n {
                if join[ab][c] != join[a][join[b][c]] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// A finite lattice: a bounded join-semilattice in which all binary meets
/// exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    sl: BoundedJoinSemilattice,
    meet: Vec<usize>,
}

impl FiniteLattice {
    pub fn from_semilattice(sl: BoundedJoinSemilattice) -> Result<Self, OrderError> {
        let n = sl.len();
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = sl.glb(a, b).ok_or(OrderError::MissingMeet(a, b))?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Ok(FiniteLattice { sl, meet })
    }

    /// Validates an explicitly given meet table against the order.
    pub fn from_tables(sl: BoundedJoinSemilattice, meet: &[Vec<usize>]) -> Result<Self, OrderError> {
        check_square(meet)?;
        let n = sl.len();
        if meet.len() != n {
            return Err(OrderError::NotSquare { row: 0, len: meet.len(), expected: n });
        }
        for &index in meet.iter().flatten() {
            if index >= n {
                return Err(OrderError::OutOfRange { index, n });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if sl.glb(a, b) != Some(meet[a][b]) {
                    return Err(OrderError::NotGreatestLowerBound { a, b, listed: meet[a][b] });
                }
            }
        }
        Ok(FiniteLattice { sl, meet: meet.iter().flatten().copied().collect() })
    }

    /// `0 < 1 < … < n−1`, with 0 least.
    pub fn chain(n: usize) -> Self {
        let sl = BoundedJoinSemilattice::from_poset(FinitePoset::chain(n)).expect("chains are lattices");
        Self::from_semilattice(sl).expect("chains are lattices")
    }

    /// Subsets of a `k`-set ordered by inclusion; element `m` is the mask `m`.
    pub fn power_set(k: usize) -> Self {
        let n = 1usize << k;
        let poset = FinitePoset::from_relation(n, |a, b| a & b == a).expect("inclusion is an order");
        let sl = BoundedJoinSemilattice::from_poset(poset).expect("power sets are lattices");
        Self::from_semilattice(sl).expect("power sets are lattices")
    }

    pub fn semilattice(&self) -> &BoundedJoinSemilattice {
        &self.sl
    }

    pub fn len(&self) -> usize {
        self.sl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sl.is_empty()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.sl.join(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.sl.leq(a, b)
    }

    /// Least element (the unit in information order).
    pub fn bottom(&self) -> usize {
        self.sl.unit()
    }

    /// Greatest element (the zero in information order).
    pub fn top(&self) -> usize {
        self.sl.zero()
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.len().max(1)).map(<[usize]>::to_vec).collect()
    }

    /// Checks `a∧(b∨c) = (a∧b)∨(a∧c)`, returning the first failing triple.
    pub fn is_distributive(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.meet(a, b);
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(ab, self.meet(a, c)) {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The complement map `φ ↦ φᶜ` (`φ∨φᶜ = top`, `φ∧φᶜ = bottom`), or the
    /// first element without a complement.
    pub fn complements(&self) -> Result<Vec<usize>, usize> {
        let n = self.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| self.join(a, b) == self.top() && self.meet(a, b) == self.bottom())
                    .ok_or(a)
            })
            .collect()
    }

    pub fn is_boolean(&self) -> bool {
        self.is_distributive().is_ok() && self.complements().is_ok()
    }

    /// Non-top elements that are not the meet of two elements different
    /// from themselves. Agrees with [`Self::meet_irreducibles_by_covers`].
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        let n = self.len();
        let out: Vec<usize> = (0..n)
            .filter(|&phi| phi != self.top())
            .filter(|&phi| {
                let mut strict = self.sl.poset().principal_up_set(phi).clone();
                strict.set(phi, false);
                !strict
                    .ones()
                    .any(|a| strict.ones().any(|b| self.meet(a, b) == phi))
            })
            .collect();
        debug_assert_eq!(out, self.meet_irreducibles_by_covers());
        out
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles_by_covers(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&phi| self.sl.poset().upper_covers(phi).len() == 1)
            .collect()
    }
}

/// Greatest lower bound in a lattice.
pub fn glb(lat: &FiniteLattice, a: usize, b: usize) -> usize {
    lat.meet(a, b)
}

/// Least upper bound in a semilattice.
pub fn lub(sl: &BoundedJoinSemilattice, a: usize, b: usize) -> usize {
    sl.lub(a, b)
}
