//! Finite duality between distributive information algebras and Q-spaces:
//! finite posets carrying a ⋆-closed family of separating equivalences.
//!
//! Prime ideals of a finite distributive lattice are the principal down-sets
//! of its meet-irreducible elements, so a dual point is stored as the
//! meet-irreducible that generates it.

use thiserror::Error;

use crate::algebra::{
    is_distributive_cdf, is_isomorphism, AlgebraMorphism, CdfFailure, HomViolation, InfoAlgebra,
};
use crate::equivalence::{Equivalence, FamilyError, StarFamily};
use crate::order::{FiniteLattice, FinitePoset, OrderError};
use crate::set_algebra::{SetAlgebra, SetAlgebraError};
use crate::subset::{self, Subset};

/// Why an equivalence fails to be separating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationFailure {
    /// Saturating this up-set does not give an up-set.
    UpSetNotPreserved(Subset),
    /// No saturated up-set contains exactly one of the two points.
    NotSplit(usize, usize),
}

impl std::fmt::Display for SeparationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeparationFailure::UpSetNotPreserved(u) => {
                write!(f, "saturation of up-set {} is not an up-set", subset::display(u))
            }
            SeparationFailure::NotSplit(p, q) => {
                write!(f, "no saturated up-set separates {p} and {q}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("not a distributive algebra: {0}")]
    NotDistributive(#[from] CdfFailure),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    SetAlgebra(#[from] SetAlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("equivalence {label} is not separating: {failure}")]
    NotSeparating { label: String, failure: SeparationFailure },
    #[error("equivalences live on {found} points, the order on {expected}")]
    UniverseMismatch { found: usize, expected: usize },
    #[error("round trip is not an isomorphism: {0}")]
    NotIsomorphic(HomViolation),
    #[error("round trip is not a Q-isomorphism: {0}")]
    NotQIsomorphic(String),
    #[error(transparent)]
    QMorphism(#[from] QMorphismViolation),
    #[error("element map is not a lattice homomorphism: {0}")]
    NotLatticeHom(HomViolation),
    #[error("extractors {0} and {1} share a dual equivalence but their images do not")]
    NotWellDefined(usize, usize),
    #[error("dual equivalences of {first} and {second} do not commute: witness {witness:?}")]
    DualNotCommuting { first: String, second: String, witness: (usize, usize) },
    #[error("not Boolean")]
    NotBoolean,
    #[error("need at least two points")]
    TooSmall,
    #[error("no nontrivial separating equivalence of the block-plus-singletons form exists")]
    NoNontrivial,
}

/// Every up-set `U`: `σ_Θ(U)` is an up-set; every `Θ`-inequivalent pair is
/// split by a `Θ`-saturated up-set.
pub fn check_separating(poset: &FinitePoset, theta: &Equivalence) -> Result<(), SeparationFailure> {
    let ups = poset.up_sets();
    if let Some(u) = ups.iter().find(|u| !poset.is_up_set(&theta.saturate(u))) {
        return Err(SeparationFailure::UpSetNotPreserved(u.clone()));
    }
    let saturated: Vec<&Subset> = ups.iter().filter(|u| theta.is_saturated(u)).collect();
    let n = poset.len();
    for p in 0..n {
        for q in p + 1..n {
            if !theta.related(p, q) && !saturated.iter().any(|u| u.contains(p) != u.contains(q)) {
                return Err(SeparationFailure::NotSplit(p, q));
            }
        }
    }
    Ok(())
}

/// `∀xyuv ∃y′ (x≤y Θ u≤v → x≤y′ Θ v)`; witness `(x, y, u, v)`.
pub fn check_a(poset: &FinitePoset, theta: &Equivalence) -> Result<(), (usize, usize, usize, usize)> {
    let n = poset.len();
    for x in 0..n {
        for y in poset.principal_up_set(x).ones() {
            for u in (0..n).filter(|&u| theta.related(y, u)) {
                for v in poset.principal_up_set(u).ones() {
                    let exists = poset.principal_up_set(x).ones().any(|y2| theta.related(y2, v));
                    if !exists {
                        return Err((x, y, u, v));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `∀xyx′y′ ((x≤x′ Θ y & y≤y′ Θ x) → x Θ y)`; witness `(x, y, x′, y′)`.
pub fn check_b(poset: &FinitePoset, theta: &Equivalence) -> Result<(), (usize, usize, usize, usize)> {
    let n = poset.len();
    for x in 0..n {
        for y in 0..n {
            if theta.related(x, y) {
                continue;
            }
            for x2 in poset.principal_up_set(x).ones().filter(|&x2| theta.related(x2, y)) {
                if let Some(y2) = poset.principal_up_set(y).ones().find(|&y2| theta.related(y2, x)) {
                    return Err((x, y, x2, y2));
                }
            }
        }
    }
    Ok(())
}

/// Points `y` with `x ≤ x′ Θᵢ u ≤ u′ Θⱼ y` for some `x′, u, u′`.
fn chain_reach(poset: &FinitePoset, ti: &Equivalence, tj: &Equivalence, x: usize) -> Subset {
    let up = poset.principal_up_set(x).clone();
    let step1 = poset.up_closure(&ti.saturate(&up));
    tj.saturate(&step1)
}

/// `∀xyx′uu′y′vv′ ∃z ((x≤x′Θᵢu≤u′Θⱼy & y≤y′Θᵢv≤v′Θⱼx) → xΘᵢzΘⱼy)`;
/// witness `(x, y)`.
pub fn check_bij(poset: &FinitePoset, ti: &Equivalence, tj: &Equivalence) -> Result<(), (usize, usize)> {
    let n = poset.len();
    let reach: Vec<Subset> = (0..n).map(|x| chain_reach(poset, ti, tj, x)).collect();
    for x in 0..n {
        for y in reach[x].ones() {
            if reach[y].contains(x) && !(0..n).any(|z| ti.related(x, z) && tj.related(z, y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// `∀xuy ∃u′ (x Θᵢ u Θⱼ y → x Θⱼ u′ Θᵢ y)`; witness `(x, u, y)`.
pub fn check_cij(poset: &FinitePoset, ti: &Equivalence, tj: &Equivalence) -> Result<(), (usize, usize, usize)> {
    let n = poset.len();
    for x in 0..n {
        for u in (0..n).filter(|&u| ti.related(x, u)) {
            for y in (0..n).filter(|&y| tj.related(u, y)) {
                if !(0..n).any(|u2| tj.related(x, u2) && ti.related(u2, y)) {
                    return Err((x, u, y));
                }
            }
        }
    }
    Ok(())
}

/// A finite Q-space: an ordered set with a ⋆-closed family of separating
/// equivalences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSpace {
    poset: FinitePoset,
    eqs: StarFamily,
}

impl QSpace {
    pub fn new(poset: FinitePoset, eqs: StarFamily) -> Result<Self, DualityError> {
        if eqs.universe() != poset.len() {
            return Err(DualityError::UniverseMismatch { found: eqs.universe(), expected: poset.len() });
        }
        for (i, theta) in eqs.members().iter().enumerate() {
            check_separating(&poset, theta).map_err(|failure| DualityError::NotSeparating {
                label: eqs.label(i).to_string(),
                failure,
            })?;
        }
        Ok(QSpace { poset, eqs })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn eqs(&self) -> &StarFamily {
        &self.eqs
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

/// The dual of an algebra: `points[h]` is the meet-irreducible of `Φ` at
/// point `h`, and `eq_of_extractor[ε]` indexes `≅_ε` in the space.
#[derive(Debug, Clone)]
pub struct Dual {
    pub space: QSpace,
    pub points: Vec<usize>,
    pub eq_of_extractor: Vec<usize>,
}

/// `μ ≅_ε ν ⟺ ↓μ ∩ εΦ = ↓ν ∩ εΦ`, on the given points.
pub fn dual_equivalence(a: &InfoAlgebra, ext: usize, points: &[usize]) -> Equivalence {
    let image = subset::from_indices(a.len(), (0..a.len()).map(|p| a.apply(ext, p)));
    let poset = a.semilattice().poset();
    Equivalence::from_key(points.len(), |h| subset::intersection(poset.principal_down_set(points[h]), &image))
}

pub fn dualize(a: &InfoAlgebra) -> Result<Dual, DualityError> {
    let lat = is_distributive_cdf(a)?;
    dualize_with(a, &lat)
}

fn dualize_with(a: &InfoAlgebra, lat: &FiniteLattice) -> Result<Dual, DualityError> {
    let points = lat.meet_irreducibles();
    let poset = a.semilattice().poset().induced(&points);
    let mut members: Vec<Equivalence> = Vec::new();
    let mut labels = Vec::new();
    let mut eq_of_extractor = Vec::new();
    for ext in 0..a.num_extractors() {
        let eq = dual_equivalence(a, ext, &points);
        match members.iter().position(|m| *m == eq) {
            Some(i) => eq_of_extractor.push(i),
            None => {
                eq_of_extractor.push(members.len());
                members.push(eq);
                labels.push(a.extractor(ext).label.clone());
            }
        }
    }
    let eqs = match StarFamily::new(points.len(), members, labels.clone()) {
        Ok(eqs) => eqs,
        Err(FamilyError::NonCommuting { i, j, witness }) => {
            return Err(DualityError::DualNotCommuting {
                first: labels[i].clone(),
                second: labels[j].clone(),
                witness,
            })
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Dual { space: QSpace::new(poset, eqs)?, points, eq_of_extractor })
}

/// `X_φ = ↑φ ∩ H` as a subset of dual points.
pub fn trace(a: &InfoAlgebra, dual: &Dual, phi: usize) -> Subset {
    subset::from_indices(dual.points.len(), (0..dual.points.len()).filter(|&h| a.leq(phi, dual.points[h])))
}

/// The set algebra of all up-sets of a Q-space.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub set_algebra: SetAlgebra,
    pub algebra: InfoAlgebra,
}

pub fn reconstruct(s: &QSpace) -> Result<Reconstruction, DualityError> {
    let ups = s.poset().up_sets();
    let set_algebra = SetAlgebra::new(s.len(), ups, s.eqs().clone())?;
    let algebra = set_algebra.to_info_algebra();
    Ok(Reconstruction { set_algebra, algebra })
}

#[derive(Debug, Clone)]
pub struct AlgebraRoundTrip {
    pub dual: Dual,
    pub reconstruction: Reconstruction,
    /// `κ_Φ(φ) = X_φ`, `κ_E(ε) = σ_{≅ε}`.
    pub kappa: AlgebraMorphism,
}

pub fn round_trip_algebra(a: &InfoAlgebra) -> Result<AlgebraRoundTrip, DualityError> {
    let dual = dualize(a)?;
    let reconstruction = reconstruct(&dual.space)?;
    let f = (0..a.len())
        .map(|phi| {
            reconstruction
                .set_algebra
                .index_of(&trace(a, &dual, phi))
                .ok_or_else(|| DualityError::NotQIsomorphic(format!("X_{phi} is not an up-set")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let kappa = AlgebraMorphism { f, g: dual.eq_of_extractor.clone() };
    is_isomorphism(&kappa, a, &reconstruction.algebra).map_err(DualityError::NotIsomorphic)?;
    Ok(AlgebraRoundTrip { dual, reconstruction, kappa })
}

/// A point map `α: Y → Z` and an equivalence map `ω: 𝒢 → 𝒯` (indices into
/// the codomain's and domain's families respectively).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMorphism {
    pub alpha: Vec<usize>,
    pub omega: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QMorphismViolation {
    #[error("point map has the wrong shape")]
    PointMapShape,
    #[error("equivalence map has the wrong shape")]
    EquivalenceMapShape,
    #[error("point map is not order-preserving at ({0}, {1})")]
    NotOrderPreserving(usize, usize),
    #[error("equivalence map does not preserve the product of {0} and {1}")]
    NotStarHom(usize, usize),
    #[error("saturation law fails for up-set {} and equivalence {eq}", subset::display(up_set))]
    Law { up_set: Subset, eq: usize },
}

/// Checks `α⁻¹(σ_Γ(V)) = σ_{ωΓ}(α⁻¹(V))` for every up-set `V` of `t` and
/// every `Γ`, after the shape, order and ⋆ conditions.
pub fn check_q_morphism(m: &QMorphism, s: &QSpace, t: &QSpace) -> Result<(), QMorphismViolation> {
    if m.alpha.len() != s.len() || m.alpha.iter().any(|&p| p >= t.len()) {
        return Err(QMorphismViolation::PointMapShape);
    }
    if m.omega.len() != t.eqs().len() || m.omega.iter().any(|&e| e >= s.eqs().len()) {
        return Err(QMorphismViolation::EquivalenceMapShape);
    }
    if let Some((p, q)) = s.poset().first_order_violation(t.poset(), &m.alpha) {
        return Err(QMorphismViolation::NotOrderPreserving(p, q));
    }
    let k = t.eqs().len();
    for i in 0..k {
        for j in 0..k {
            if m.omega[t.eqs().product(i, j)] != s.eqs().product(m.omega[i], m.omega[j]) {
                return Err(QMorphismViolation::NotStarHom(i, j));
            }
        }
    }
    for v in t.poset().up_sets() {
        let pre = subset::preimage(&m.alpha, &v);
        for (g, gamma) in t.eqs().members().iter().enumerate() {
            let lhs = subset::preimage(&m.alpha, &gamma.saturate(&v));
            let rhs = s.eqs().member(m.omega[g]).saturate(&pre);
            if lhs != rhs {
                return Err(QMorphismViolation::Law { up_set: v, eq: g });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SpaceRoundTrip {
    pub reconstruction: Reconstruction,
    pub dual: Dual,
    /// `λ_Y(p) = L_p`; `omega` sends `≃_Θ` back to `Θ`.
    pub lambda: QMorphism,
}

pub fn round_trip_space(s: &QSpace) -> Result<SpaceRoundTrip, DualityError> {
    let reconstruction = reconstruct(s)?;
    let a = &reconstruction.algebra;
    let dual = dualize(a)?;
    let not_iso = |msg: String| DualityError::NotQIsomorphic(msg);
    // L_p = {U : p ∈ U} is the principal ideal of ↑p in reverse inclusion.
    let alpha = (0..s.len())
        .map(|p| {
            let elem = reconstruction
                .set_algebra
                .index_of(s.poset().principal_up_set(p))
                .expect("principal up-sets are up-sets");
            dual.points
                .iter()
                .position(|&mu| mu == elem)
                .ok_or_else(|| not_iso(format!("L_{p} is not a dual point")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k = s.eqs().len();
    let lambda_t: Vec<usize> = (0..k).map(|theta| dual.eq_of_extractor[theta]).collect();
    if !is_permutation(&alpha, dual.points.len()) {
        return Err(not_iso("λ_Y is not bijective".into()));
    }
    if !is_permutation(&lambda_t, dual.space.eqs().len()) {
        return Err(not_iso("λ_T is not bijective".into()));
    }
    for p in 0..s.len() {
        for q in 0..s.len() {
            if s.poset().leq(p, q) != dual.space.poset().leq(alpha[p], alpha[q]) {
                return Err(not_iso(format!("order differs at ({p}, {q})")));
            }
            for theta in 0..k {
                let there = dual.space.eqs().member(lambda_t[theta]);
                if s.eqs().member(theta).related(p, q) != there.related(alpha[p], alpha[q]) {
                    return Err(not_iso(format!("equivalence {theta} differs at ({p}, {q})")));
                }
            }
        }
    }
    let mut omega = vec![0; k];
    for (theta, &img) in lambda_t.iter().enumerate() {
        omega[img] = theta;
    }
    let lambda = QMorphism { alpha, omega };
    check_q_morphism(&lambda, s, &dual.space)?;
    Ok(SpaceRoundTrip { reconstruction, dual, lambda })
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// The dual of a homomorphism `(f, g): A → B`: `α(μ) = ⋁{φ : f(φ) ≤ μ}` on
/// dual points of `B`, and `ω(≅_ε) = ≅_{g(ε)}`. Returns the duals of both
/// algebras with the morphism from `dual(B)` to `dual(A)`.
pub fn dualize_morphism(
    m: &AlgebraMorphism,
    a: &InfoAlgebra,
    b: &InfoAlgebra,
) -> Result<(Dual, Dual, QMorphism), DualityError> {
    let la = is_distributive_cdf(a)?;
    let lb = is_distributive_cdf(b)?;
    crate::algebra::check_homomorphism(m, a, b, Some((&la, &lb))).map_err(DualityError::NotLatticeHom)?;
    dualize_parts(m, a, b, &la, &lb)
}

/// As [`dualize_morphism`], but only requires `f` to be a bounded lattice
/// homomorphism and `g` to preserve composition; compatibility is not
/// assumed.
pub fn dualize_parts(
    m: &AlgebraMorphism,
    a: &InfoAlgebra,
    b: &InfoAlgebra,
    la: &FiniteLattice,
    lb: &FiniteLattice,
) -> Result<(Dual, Dual, QMorphism), DualityError> {
    check_lattice_hom(&m.f, la, lb).map_err(DualityError::NotLatticeHom)?;
    for i in 0..a.num_extractors() {
        for j in 0..a.num_extractors() {
            if m.g[a.compose(i, j)] != b.compose(m.g[i], m.g[j]) {
                return Err(DualityError::NotLatticeHom(HomViolation::Composition(i, j)));
            }
        }
    }
    let da = dualize_with(a, la)?;
    let db = dualize_with(b, lb)?;
    let alpha = db
        .points
        .iter()
        .map(|&mu| {
            let below = (0..a.len()).filter(|&phi| b.leq(m.f[phi], mu));
            let gen = a.semilattice().join_all(below);
            da.points.iter().position(|&p| p == gen).ok_or_else(|| {
                DualityError::NotQIsomorphic(format!("preimage of the ideal of {mu} is not prime"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut omega = vec![usize::MAX; da.space.eqs().len()];
    for ext in 0..a.num_extractors() {
        let src = da.eq_of_extractor[ext];
        let dst = db.eq_of_extractor[m.g[ext]];
        if omega[src] != usize::MAX && omega[src] != dst {
            let other = (0..ext).find(|&e| da.eq_of_extractor[e] == src).unwrap_or(ext);
            return Err(DualityError::NotWellDefined(other, ext));
        }
        omega[src] = dst;
    }
    Ok((da, db, QMorphism { alpha, omega }))
}

fn check_lattice_hom(f: &[usize], la: &FiniteLattice, lb: &FiniteLattice) -> Result<(), HomViolation> {
    if f.len() != la.len() || f.iter().any(|&y| y >= lb.len()) {
        return Err(HomViolation::ElementMapShape { found: f.len(), expected: la.len() });
    }
    if f[la.bottom()] != lb.bottom() {
        return Err(HomViolation::Unit);
    }
    if f[la.top()] != lb.top() {
        return Err(HomViolation::Zero);
    }
    for x in 0..la.len() {
        for y in x..la.len() {
            if f[la.join(x, y)] != lb.join(f[x], f[y]) {
                return Err(HomViolation::Join(x, y));
            }
            if f[la.meet(x, y)] != lb.meet(f[x], f[y]) {
                return Err(HomViolation::Meet(x, y));
            }
        }
    }
    Ok(())
}

/// Boolean-case facts about the dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanReport {
    pub points: usize,
    /// The dual order is trivial.
    pub antichain: bool,
    /// No proper principal ideal lies strictly above a prime one.
    pub primes_maximal: bool,
}

pub fn boolean_diagnostics(a: &InfoAlgebra) -> Result<BooleanReport, DualityError> {
    let lat = a.lattice().map_err(|_| DualityError::NotBoolean)?;
    if !lat.is_boolean() {
        return Err(DualityError::NotBoolean);
    }
    let dual = dualize(a)?;
    let top = lat.top();
    let primes_maximal = dual
        .points
        .iter()
        .all(|&mu| !(0..a.len()).any(|nu| nu != mu && nu != top && lat.leq(mu, nu)));
    Ok(BooleanReport {
        points: dual.points.len(),
        antichain: dual.space.poset().is_antichain(),
        primes_maximal,
    })
}

/// A separating equivalence other than `Δ` and `∇` with one block an up-set
/// `U ≠ H` and singletons elsewhere. Principal up-sets are tried first, in
/// index order, then all other up-sets with at least two points.
pub fn make_nontrivial_separating(poset: &FinitePoset) -> Result<Equivalence, DualityError> {
    let n = poset.len();
    if n < 2 {
        return Err(DualityError::TooSmall);
    }
    let full = subset::full(n);
    let block = |u: &Subset| Equivalence::from_key(n, |x| if u.contains(x) { n } else { x });
    let principal = (0..n).map(|x| poset.principal_up_set(x).clone());
    let others = poset.up_sets().into_iter().filter(|u| u.count_ones(..) >= 2);
    for u in principal.chain(others) {
        if u == full {
            continue;
        }
        let theta = block(&u);
        if !theta.is_identity() && !theta.is_all() && check_separating(poset, &theta).is_ok() {
            return Ok(theta);
        }
    }
    Err(DualityError::NoNontrivial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Extractor, Mode};
    use crate::order::BoundedJoinSemilattice;

    fn identity_algebra(lat: &FiniteLattice) -> InfoAlgebra {
        InfoAlgebra::identity_only(lat.semilattice().clone())
    }

    fn space(poset: FinitePoset, eqs: Vec<Equivalence>) -> QSpace {
        let n = poset.len();
        QSpace::new(poset, StarFamily::unlabelled(n, eqs).unwrap()).unwrap()
    }

    #[test]
    fn dual_of_three_chain() {
        let a = identity_algebra(&FiniteLattice::chain(3));
        let d = dualize(&a).unwrap();
        assert_eq!(d.points, vec![0, 1]);
        assert_eq!(d.space.poset(), &FinitePoset::chain(2));
        assert_eq!(d.space.eqs().members(), &[Equivalence::identity(2)]);
    }

    #[test]
    fn dual_of_four_element_boolean() {
        let a = identity_algebra(&FiniteLattice::power_set(2));
        let d = dualize(&a).unwrap();
        assert!(d.space.poset().is_antichain());
        assert_eq!(d.space.len(), 2);
    }

    #[test]
    fn reconstruct_examples() {
        let one = space(FinitePoset::chain(1), vec![Equivalence::identity(1)]);
        let r = reconstruct(&one).unwrap();
        assert_eq!(r.algebra.len(), 2);

        let anti = space(FinitePoset::antichain(2), vec![Equivalence::identity(2), Equivalence::all(2)]);
        let r = reconstruct(&anti).unwrap();
        assert_eq!(r.algebra.len(), 4);
        assert_eq!(r.algebra.num_extractors(), 2);
        assert!(r.algebra.verify_axioms(Mode::Strict).passed());
        assert!(is_distributive_cdf(&r.algebra).is_ok());

        let chain = space(FinitePoset::chain(2), vec![Equivalence::identity(2)]);
        let r = reconstruct(&chain).unwrap();
        assert_eq!(r.algebra.len(), 3);
        assert!(r.algebra.lattice().unwrap().is_distributive().is_ok());
    }

    #[test]
    fn separating_examples() {
        let p = FinitePoset::chain(3);
        assert!(check_separating(&p, &Equivalence::identity(3)).is_ok());
        assert!(check_separating(&p, &Equivalence::all(3)).is_ok());
        // Gluing the bottom and the top of a 3-chain: σ({top}) = {bottom, top}
        // is not an up-set.
        let glued = Equivalence::from_blocks(3, &[vec![0, 2], vec![1]]);
        assert!(matches!(check_separating(&p, &glued), Err(SeparationFailure::UpSetNotPreserved(_))));
        assert!(check_a(&p, &glued).is_err());
    }

    #[test]
    fn first_order_sentences_on_grid() {
        let p = FinitePoset::antichain(4);
        let rows = Equivalence::from_blocks(4, &[vec![0, 1], vec![2, 3]]);
        let cols = Equivalence::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        assert!(check_a(&p, &rows).is_ok());
        assert!(check_cij(&p, &rows, &cols).is_ok());
        let gamma = Equivalence::from_blocks(4, &[vec![1, 2], vec![0], vec![3]]);
        assert!(check_cij(&p, &rows, &gamma).is_err());
        for e in [Equivalence::identity(4), Equivalence::all(4)] {
            assert!(check_a(&p, &e).is_ok() && check_b(&p, &e).is_ok());
            assert!(check_bij(&p, &e, &e).is_ok() && check_cij(&p, &e, &e).is_ok());
        }
    }

    #[test]
    fn nontrivial_separating() {
        assert_eq!(make_nontrivial_separating(&FinitePoset::chain(1)), Err(DualityError::TooSmall));
        assert_eq!(make_nontrivial_separating(&FinitePoset::chain(2)), Err(DualityError::NoNontrivial));
        assert_eq!(make_nontrivial_separating(&FinitePoset::antichain(2)), Err(DualityError::NoNontrivial));
        let theta = make_nontrivial_separating(&FinitePoset::chain(3)).unwrap();
        assert_eq!(theta, Equivalence::from_blocks(3, &[vec![1, 2], vec![0]]));
        let theta = make_nontrivial_separating(&FinitePoset::antichain(4)).unwrap();
        assert!(!theta.is_identity() && !theta.is_all());
    }

    #[test]
    fn boolean_checks() {
        let r = boolean_diagnostics(&identity_algebra(&FiniteLattice::power_set(2))).unwrap();
        assert_eq!(r, BooleanReport { points: 2, antichain: true, primes_maximal: true });
        let r = boolean_diagnostics(&identity_algebra(&FiniteLattice::chain(2))).unwrap();
        assert_eq!(r.points, 1);
        assert_eq!(
            boolean_diagnostics(&identity_algebra(&FiniteLattice::chain(3))),
            Err(DualityError::NotBoolean)
        );
    }

    #[test]
    fn round_trips_on_chain() {
        let sl = BoundedJoinSemilattice::from_poset(FinitePoset::chain(3)).unwrap();
        let a = InfoAlgebra::new(
            sl,
            vec![Extractor::new("id", vec![0, 1, 2]), Extractor::new("e", vec![0, 0, 2])],
        )
        .unwrap();
        let rt = round_trip_algebra(&a).unwrap();
        assert_eq!(rt.kappa.f.len(), 3);
        let s = rt.dual.space.clone();
        let back = round_trip_space(&s).unwrap();
        assert!(check_q_morphism(&back.lambda, &s, &back.dual.space).is_ok());
    }

    /// B2 with a new top: two meet-preserving extractors whose dual
    /// equivalences fail to commute, although their saturations compose
    /// correctly on up-sets.
    #[test]
    fn dual_family_need_not_commute() {
        let join = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 1, 1, 1, 4],
            vec![2, 1, 2, 1, 4],
            vec![3, 1, 1, 3, 4],
            vec![4, 4, 4, 4, 4],
        ];
        let sl = BoundedJoinSemilattice::from_join_table(&join, 0, 4).unwrap();
        let a = InfoAlgebra::new(
            sl,
            vec![
                Extractor::new("e0", vec![0, 0, 0, 0, 4]),
                Extractor::new("e1", vec![0, 2, 2, 0, 4]),
                Extractor::new("e2", vec![0, 3, 0, 3, 4]),
            ],
        )
        .unwrap();
        assert!(a.verify_axioms(Mode::Strict).passed());
        let lat = is_distributive_cdf(&a).unwrap();
        assert!(matches!(dualize(&a), Err(DualityError::DualNotCommuting { .. })));

        let points = lat.meet_irreducibles();
        let poset = a.semilattice().poset().induced(&points);
        let eqs: Vec<Equivalence> = (0..3).map(|e| dual_equivalence(&a, e, &points)).collect();
        assert!(!crate::equivalence::commute(&eqs[1], &eqs[2]));
        for u in poset.up_sets() {
            assert_eq!(eqs[1].saturate(&eqs[2].saturate(&u)), eqs[0].saturate(&u));
        }
        for e in &eqs {
            assert!(check_separating(&poset, e).is_ok());
        }
    }
}
