//! Set algebras: ∩-closed families of subsets with compatible saturation
//! operators, and the principal up-set representation of an abstract
//! algebra.

use thiserror::Error;

use crate::algebra::{kernel, AlgebraMorphism, Extractor, InfoAlgebra};
use crate::equivalence::{Equivalence, FamilyError, StarFamily};
use crate::order::BoundedJoinSemilattice;
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetAlgebraError {
    #[error("member {0} is not a subset of the universe")]
    WrongSize(usize),
    #[error("family does not contain the universe")]
    MissingUniverse,
    #[error("family does not contain the empty set")]
    MissingEmpty,
    #[error("intersection of {} and {} is not in the family", subset::display(.0), subset::display(.1))]
    NotIntersectionClosed(Subset, Subset),
    #[error("saturating {} by {label} leaves the family", subset::display(member))]
    NotCompatible { member: Subset, label: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("members {0} and {1} have no common refinement in the family")]
    NotDirected(usize, usize),
    #[error("more than {cap} sets")]
    CapExceeded { cap: usize },
}

/// An ∩-closed family over `0..n` containing `U` and `∅`, closed under the
/// saturation operators of a ⋆-closed family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetAlgebra {
    n: usize,
    family: Vec<Subset>,
    eqs: StarFamily,
}

impl SetAlgebra {
    pub fn new(n: usize, mut family: Vec<Subset>, eqs: StarFamily) -> Result<Self, SetAlgebraError> {
        if let Some(i) = family.iter().position(|s| s.len() != n) {
            return Err(SetAlgebraError::WrongSize(i));
        }
        if eqs.universe() != n {
            return Err(FamilyError::UniverseMismatch { index: 0, found: eqs.universe(), expected: n }.into());
        }
        family.sort();
        family.dedup();
        let sa = SetAlgebra { n, family, eqs };
        if sa.index_of(&subset::full(n)).is_none() {
            return Err(SetAlgebraError::MissingUniverse);
        }
        if sa.index_of(&subset::empty(n)).is_none() {
            return Err(SetAlgebraError::MissingEmpty);
        }
        for (i, a) in sa.family.iter().enumerate() {
            for b in &sa.family[i + 1..] {
                if sa.index_of(&subset::intersection(a, b)).is_none() {
                    return Err(SetAlgebraError::NotIntersectionClosed(a.clone(), b.clone()));
                }
            }
        }
        for (t, theta) in sa.eqs.members().iter().enumerate() {
            if let Some(member) = sa.family.iter().find(|s| sa.index_of(&theta.saturate(s)).is_none()) {
                return Err(SetAlgebraError::NotCompatible {
                    member: member.clone(),
                    label: sa.eqs.label(t).to_string(),
                });
            }
        }
        Ok(sa)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Members in sorted order; element indices of the abstract algebra.
    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn eqs(&self) -> &StarFamily {
        &self.eqs
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.family.binary_search(s).ok()
    }

    /// The abstract algebra: combination is ∩, unit `U`, zero `∅`, and one
    /// extractor per equivalence with composition given by ⋆.
    pub fn to_info_algebra(&self) -> InfoAlgebra {
        let m = self.family.len();
        let join: Vec<usize> = (0..m * m)
            .map(|c| {
                let s = subset::intersection(&self.family[c / m], &self.family[c % m]);
                self.index_of(&s).expect("∩-closed")
            })
            .collect();
        let unit = self.index_of(&subset::full(self.n)).expect("contains U");
        let zero = self.index_of(&subset::empty(self.n)).expect("contains ∅");
        let sl = BoundedJoinSemilattice::from_trusted_join(join, m, unit, zero);
        let extractors = self
            .eqs
            .members()
            .iter()
            .zip(self.eqs.labels())
            .map(|(theta, label)| {
                let map = self
                    .family
                    .iter()
                    .map(|s| self.index_of(&theta.saturate(s)).expect("compatible"))
                    .collect();
                Extractor::new(label.clone(), map)
            })
            .collect();
        InfoAlgebra::with_composition(sl, extractors, &self.eqs.product_table())
            .expect("σ_Θ∘σ_Γ = σ_{Θ⋆Γ}")
    }
}

/// Validates the family and returns the abstract algebra.
pub fn build_set_algebra(n: usize, family: Vec<Subset>, eqs: StarFamily) -> Result<InfoAlgebra, SetAlgebraError> {
    Ok(SetAlgebra::new(n, family, eqs)?.to_info_algebra())
}

/// All unions of blocks of single members; valid iff the family is
/// downward directed.
pub fn build_block_union_algebra(eqs: StarFamily, cap: usize) -> Result<SetAlgebra, SetAlgebraError> {
    eqs.is_downward_directed()
        .map_err(|(i, j)| SetAlgebraError::NotDirected(i, j))?;
    let n = eqs.universe();
    let mut family: Vec<Subset> = vec![subset::empty(n), subset::full(n)];
    for theta in eqs.members() {
        let blocks = theta.blocks();
        if blocks.len() >= 63 || family.len() + (1usize << blocks.len()) > cap.saturating_mul(2) {
            return Err(SetAlgebraError::CapExceeded { cap });
        }
        for mask in 0u64..1 << blocks.len() {
            let mut s = subset::empty(n);
            for (b, block) in blocks.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.union_with(block);
                }
            }
            family.push(s);
        }
        family.sort();
        family.dedup();
        if family.len() > cap {
            return Err(SetAlgebraError::CapExceeded { cap });
        }
    }
    SetAlgebra::new(n, family, eqs)
}

/// The representation of an algebra by principal up-sets over `Φ₀ = Φ∖{0}`.
#[derive(Debug, Clone)]
pub struct UpsetRepresentation {
    pub set_algebra: SetAlgebra,
    pub algebra: InfoAlgebra,
    /// `points[u]` is the element of `Φ` at universe position `u`.
    pub points: Vec<usize>,
    /// `i(φ) = ↑φ ∩ Φ₀`, `j(ε) = σ_ε`.
    pub morphism: AlgebraMorphism,
}

/// `↑φ ∩ Φ₀` as a subset of universe positions.
fn trace(a: &InfoAlgebra, points: &[usize], phi: usize) -> Subset {
    subset::from_indices(points.len(), (0..points.len()).filter(|&u| a.leq(phi, points[u])))
}

pub fn principal_upset_representation(a: &InfoAlgebra) -> Result<UpsetRepresentation, SetAlgebraError> {
    let zero = a.zero();
    let points: Vec<usize> = (0..a.len()).filter(|&p| p != zero).collect();
    let m = points.len();
    let sets: Vec<Subset> = (0..a.len()).map(|phi| trace(a, &points, phi)).collect();

    let mut kernels: Vec<Equivalence> = Vec::new();
    let mut labels = Vec::new();
    let mut g = Vec::with_capacity(a.num_extractors());
    for ext in 0..a.num_extractors() {
        let k = kernel(a, ext).restrict(&points);
        match kernels.iter().position(|x| *x == k) {
            Some(i) => g.push(i),
            None => {
                g.push(kernels.len());
                kernels.push(k);
                labels.push(a.extractor(ext).label.clone());
            }
        }
    }
    let eqs = StarFamily::new(m, kernels, labels)?;
    let set_algebra = SetAlgebra::new(m, sets.clone(), eqs)?;
    let f = sets
        .iter()
        .map(|s| set_algebra.index_of(s).expect("member by construction"))
        .collect();
    let algebra = set_algebra.to_info_algebra();
    Ok(UpsetRepresentation { set_algebra, algebra, points, morphism: AlgebraMorphism { f, g } })
}

/// Checks `σ_ε(↑φ) = ↑(ε(φ))` on `Φ₀` for every extractor and element,
/// returning the first failure.
pub fn check_hom_of_extr(a: &InfoAlgebra, rep: &UpsetRepresentation) -> Result<(), (usize, usize)> {
    for ext in 0..a.num_extractors() {
        let theta = rep.set_algebra.eqs().member(rep.morphism.g[ext]);
        for phi in 0..a.len() {
            let lhs = theta.saturate(&trace(a, &rep.points, phi));
            if lhs != trace(a, &rep.points, a.apply(ext, phi)) {
                return Err((ext, phi));
            }
        }
    }
    Ok(())
}
