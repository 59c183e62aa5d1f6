//! Atoms, atomistic classification and the atom representation.

use thiserror::Error;

use crate::algebra::{check_homomorphism, kernel, AlgebraMorphism, HomViolation, InfoAlgebra};
use crate::equivalence::{Equivalence, FamilyError, StarFamily};
use crate::order::OrderError;
use crate::set_algebra::{SetAlgebra, SetAlgebraError};
use crate::subset::{self, Subset};

/// Largest atom set for which the full power set is built.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("element {0} lies below no atom")]
    NotAtomic(usize),
    #[error("not completely atomistic")]
    NotCompletelyAtomistic,
    #[error("{found} atoms exceed the limit of {limit}")]
    TooManyAtoms { found: usize, limit: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    SetAlgebra(#[from] SetAlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Nonzero elements whose only strict upper bound is `0`.
pub fn atoms(a: &InfoAlgebra) -> Vec<usize> {
    let zero = a.zero();
    (0..a.len())
        .filter(|&x| x != zero && (0..a.len()).all(|y| y == x || y == zero || !a.leq(x, y)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomReport {
    pub atoms: Vec<usize>,
    /// `At(φ)` as positions in `atoms`.
    pub at_map: Vec<Subset>,
    pub atomic: bool,
    pub atomistic: bool,
    pub completely_atomistic: bool,
}

impl AtomReport {
    /// Atom subsets (positions) not of the form `At(φ)`, in mask order.
    pub fn unrealized(&self) -> Vec<Subset> {
        let mut realized = self.at_map.clone();
        realized.sort();
        subset::all_subsets(self.atoms.len())
            .filter(|s| s.count_ones(..) > 0 && realized.binary_search(s).is_err())
            .collect()
    }
}

pub fn classify(a: &InfoAlgebra) -> AtomReport {
    let atoms = atoms(a);
    let k = atoms.len();
    let at_map: Vec<Subset> = (0..a.len())
        .map(|phi| subset::from_indices(k, (0..k).filter(|&i| a.leq(phi, atoms[i]))))
        .collect();
    let zero = a.zero();
    let nonzero = || (0..a.len()).filter(move |&x| x != zero);
    let atomic = nonzero().all(|x| at_map[x].count_ones(..) > 0);
    let poset = a.semilattice().poset();
    let atomistic = atomic
        && nonzero().all(|x| {
            let elems = subset::from_indices(a.len(), at_map[x].ones().map(|i| atoms[i]));
            poset.glb_of(&elems) == Some(x)
        });
    let mut report = AtomReport { atoms, at_map, atomic, atomistic, completely_atomistic: false };
    report.completely_atomistic = atomistic && (k >= 64 || report.unrealized().is_empty());
    report
}

/// The power-set algebra over `At Φ` with restricted kernels and the map
/// `φ ↦ At(φ)`, `ε ↦ σ′_ε`.
#[derive(Debug, Clone)]
pub struct AtomRepresentation {
    pub report: AtomReport,
    pub set_algebra: SetAlgebra,
    pub algebra: InfoAlgebra,
    pub morphism: AlgebraMorphism,
    pub homomorphism: Result<(), HomViolation>,
    pub embedding: bool,
    pub isomorphism: bool,
}

pub fn restricted_kernel(a: &InfoAlgebra, ext: usize, atoms: &[usize]) -> Equivalence {
    kernel(a, ext).restrict(atoms)
}

pub fn atom_representation(a: &InfoAlgebra) -> Result<AtomRepresentation, AtomError> {
    let report = classify(a);
    if !report.atomic {
        let zero = a.zero();
        let bad = (0..a.len()).find(|&x| x != zero && report.at_map[x].count_ones(..) == 0).unwrap_or(zero);
        return Err(AtomError::NotAtomic(bad));
    }
    let k = report.atoms.len();
    if k > MAX_ATOMS {
        return Err(AtomError::TooManyAtoms { found: k, limit: MAX_ATOMS });
    }
    let mut members: Vec<Equivalence> = Vec::new();
    let mut labels = Vec::new();
    let mut g = Vec::new();
    for ext in 0..a.num_extractors() {
        let eq = restricted_kernel(a, ext, &report.atoms);
        match members.iter().position(|m| *m == eq) {
            Some(i) => g.push(i),
            None => {
                g.push(members.len());
                members.push(eq);
                labels.push(a.extractor(ext).label.clone());
            }
        }
    }
    let eqs = StarFamily::new(k, members, labels)?;
    let set_algebra = SetAlgebra::new(k, subset::all_subsets(k).collect(), eqs)?;
    let algebra = set_algebra.to_info_algebra();
    let f: Vec<usize> = report
        .at_map
        .iter()
        .map(|s| set_algebra.index_of(s).expect("power set"))
        .collect();
    let morphism = AlgebraMorphism { f, g };
    let homomorphism = check_homomorphism(&morphism, a, &algebra, None);
    let mut image = morphism.f.clone();
    image.sort_unstable();
    image.dedup();
    let injective = image.len() == a.len();
    let embedding = homomorphism.is_ok() && injective;
    let isomorphism = embedding && image.len() == algebra.len();
    Ok(AtomRepresentation { report, set_algebra, algebra, morphism, homomorphism, embedding, isomorphism })
}

/// A failed Boolean-lattice check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanAtomFailure {
    Complement(usize),
    Join(Vec<usize>),
    Meet(Vec<usize>),
    ComplementTrace(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanAtomReport {
    pub complements: Vec<usize>,
    pub subsets_checked: usize,
}

/// On a completely atomistic algebra: complements exist, `At` sends joins
/// to intersections, meets to unions and complements to set complements.
/// Joins and meets are checked over every element subset of size at most 3
/// and the empty subset.
pub fn check_complete_atomistic_boolean(a: &InfoAlgebra) -> Result<Result<BooleanAtomReport, BooleanAtomFailure>, AtomError> {
    let report = classify(a);
    if !report.completely_atomistic {
        return Err(AtomError::NotCompletelyAtomistic);
    }
    let lat = a.lattice()?;
    let complements = match lat.complements() {
        Ok(c) => c,
        Err(x) => return Ok(Err(BooleanAtomFailure::Complement(x))),
    };
    let at = &report.at_map;
    let k = report.atoms.len();
    let n = a.len();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for x in 0..n {
        subsets.push(vec![x]);
        for y in x + 1..n {
            subsets.push(vec![x, y]);
            for z in y + 1..n {
                subsets.push(vec![x, y, z]);
            }
        }
    }
    for xs in &subsets {
        let join = xs.iter().fold(lat.bottom(), |acc, &x| lat.join(acc, x));
        let inter = xs.iter().fold(subset::full(k), |acc, &x| subset::intersection(&acc, &at[x]));
        if at[join] != inter {
            return Ok(Err(BooleanAtomFailure::Join(xs.clone())));
        }
        let meet = xs.iter().fold(lat.top(), |acc, &x| lat.meet(acc, x));
        let uni = xs.iter().fold(subset::empty(k), |acc, &x| subset::union(&acc, &at[x]));
        if at[meet] != uni {
            return Ok(Err(BooleanAtomFailure::Meet(xs.clone())));
        }
    }
    if let Some(x) = (0..n).find(|&x| at[complements[x]] != subset::complement(&at[x])) {
        return Ok(Err(BooleanAtomFailure::ComplementTrace(x)));
    }
    Ok(Ok(BooleanAtomReport { complements, subsets_checked: subsets.len() }))
}
