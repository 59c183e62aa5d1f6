//! Information algebras: a bounded join-semilattice `Φ` with a labelled
//! family `E` of extraction operators.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::equivalence::{star, Equivalence};
use crate::order::{BoundedJoinSemilattice, FiniteLattice, OrderError};
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Extractor {
    pub label: String,
    pub map: Vec<usize>,
}

impl Extractor {
    pub fn new(label: impl Into<String>, map: Vec<usize>) -> Self {
        Extractor { label: label.into(), map }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("extractor {label} has {len} entries, expected {expected}")]
    MapLength { label: String, len: usize, expected: usize },
    #[error("extractor {label} maps to {index}, out of range")]
    MapOutOfRange { label: String, index: usize },
    #[error("label {0} is used twice")]
    DuplicateLabel(String),
    #[error("extractors {first} and {second} are the same map")]
    DuplicateMap { first: String, second: String },
    #[error("composition table is not {0}×{0}")]
    CompositionShape(usize),
    #[error("composition table entry for ({first}, {second}) is not their composite")]
    CompositionMismatch { first: String, second: String },
    #[error("composite {first}∘{second} is not listed")]
    NotClosed { first: String, second: String },
    #[error("more than {cap} extractors")]
    CapExceeded { cap: usize },
}

/// A finite information algebra. Composition `(ε∘η)(φ) = ε(η(φ))` is
/// resolved against the listed extractors; missing composites are recorded
/// and reported by [`InfoAlgebra::verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoAlgebra {
    sl: BoundedJoinSemilattice,
    extractors: Vec<Extractor>,
    composition: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// ε(0) = 0.
    Null,
    /// ε(φ) ≤ φ.
    Absorption,
    /// ε(ε(φ)·ψ) = ε(φ)·ε(ψ).
    Quantifier,
    /// ε∘η = η∘ε.
    Commutation,
    /// ε∘ε = ε.
    Idempotence,
    /// ε(1) = 1.
    UnitFixed,
    /// E closed under ∘.
    Closure,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Null,
        Axiom::Absorption,
        Axiom::Quantifier,
        Axiom::Commutation,
        Axiom::Idempotence,
        Axiom::UnitFixed,
        Axiom::Closure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Null => "N",
            Axiom::Absorption => "A",
            Axiom::Quantifier => "Q",
            Axiom::Commutation => "C",
            Axiom::Idempotence => "I",
            Axiom::UnitFixed => "unit",
            Axiom::Closure => "closure",
        }
    }
}

/// A failing instance; indices are extractor and element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Null { ext: usize, image: usize },
    Absorption { ext: usize, phi: usize },
    Quantifier { ext: usize, phi: usize, psi: usize },
    Commutation { first: usize, second: usize, phi: usize },
    Idempotence { ext: usize, phi: usize },
    UnitFixed { ext: usize, image: usize },
    Closure { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    /// Skips the closure check, for partial algebras.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdicts: Vec<(Axiom, Verdict)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| !matches!(v, Verdict::Fail(_)))
    }

    pub fn verdict(&self, axiom: Axiom) -> Verdict {
        self.verdicts
            .iter()
            .find(|(a, _)| *a == axiom)
            .map(|&(_, v)| v)
            .unwrap_or(Verdict::Skipped)
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, Violation)> + '_ {
        self.verdicts.iter().filter_map(|&(a, v)| match v {
            Verdict::Fail(w) => Some((a, w)),
            _ => None,
        })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Null { ext, image } => write!(f, "extractor {ext} maps zero to {image}"),
            Violation::Absorption { ext, phi } => {
                write!(f, "extractor {ext}: image of {phi} is not below {phi}")
            }
            Violation::Quantifier { ext, phi, psi } => {
                write!(f, "extractor {ext} fails the quantifier law at ({phi}, {psi})")
            }
            Violation::Commutation { first, second, phi } => {
                write!(f, "extractors {first} and {second} do not commute at {phi}")
            }
            Violation::Idempotence { ext, phi } => write!(f, "extractor {ext} is not idempotent at {phi}"),
            Violation::UnitFixed { ext, image } => write!(f, "extractor {ext} maps unit to {image}"),
            Violation::Closure { first, second } => {
                write!(f, "composite of extractors {first} and {second} is not listed")
            }
        }
    }
}

fn compose_maps(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

impl InfoAlgebra {
    /// Resolves composition by comparing maps; labels and maps must be
    /// distinct.
    pub fn new(sl: BoundedJoinSemilattice, extractors: Vec<Extractor>) -> Result<Self, AlgebraError> {
        check_extractors(&sl, &extractors)?;
        let mut by_map: HashMap<&[usize], usize> = HashMap::new();
        for (i, e) in extractors.iter().enumerate() {
            if let Some(&j) = by_map.get(e.map.as_slice()) {
                return Err(AlgebraError::DuplicateMap {
                    first: extractors[j].label.clone(),
                    second: e.label.clone(),
                });
            }
            by_map.insert(&e.map, i);
        }
        let k = extractors.len();
        let mut composition = vec![None; k * k];
        for i in 0..k {
            for j in 0..k {
                let c = compose_maps(&extractors[i].map, &extractors[j].map);
                composition[i * k + j] = by_map.get(c.as_slice()).copied();
            }
        }
        Ok(InfoAlgebra { sl, extractors, composition })
    }

    /// Uses an explicit composition table (`table[i][j]` names `εᵢ∘εⱼ`),
    /// which is checked against the maps. Distinct labels may share a map.
    pub fn with_composition(
        sl: BoundedJoinSemilattice,
        extractors: Vec<Extractor>,
        table: &[Vec<usize>],
    ) -> Result<Self, AlgebraError> {
        check_extractors(&sl, &extractors)?;
        let k = extractors.len();
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(AlgebraError::CompositionShape(k));
        }
        let mut composition = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let c = table[i][j];
                if c >= k || extractors[c].map != compose_maps(&extractors[i].map, &extractors[j].map) {
                    return Err(AlgebraError::CompositionMismatch {
                        first: extractors[i].label.clone(),
                        second: extractors[j].label.clone(),
                    });
                }
                composition.push(Some(c));
            }
        }
        Ok(InfoAlgebra { sl, extractors, composition })
    }

    pub fn identity_only(sl: BoundedJoinSemilattice) -> Self {
        let id = Extractor::new("id", (0..sl.len()).collect());
        InfoAlgebra::new(sl, vec![id]).expect("identity is a valid extractor")
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

    pub fn unit(&self) -> usize {
        self.sl.unit()
    }

    pub fn zero(&self) -> usize {
        self.sl.zero()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.sl.join(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.sl.leq(a, b)
    }

    pub fn extractors(&self) -> &[Extractor] {
        &self.extractors
    }

    pub fn num_extractors(&self) -> usize {
        self.extractors.len()
    }

    pub fn extractor(&self, i: usize) -> &Extractor {
        &self.extractors[i]
    }

    pub fn extractor_index(&self, label: &str) -> Option<usize> {
        self.extractors.iter().position(|e| e.label == label)
    }

    pub fn apply(&self, ext: usize, phi: usize) -> usize {
        self.extractors[ext].map[phi]
    }

    /// Index of `εᵢ∘εⱼ` if it is listed.
    pub fn try_compose(&self, i: usize, j: usize) -> Option<usize> {
        self.composition[i * self.num_extractors() + j]
    }

    /// Index of `εᵢ∘εⱼ`. Panics on a partial algebra.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.try_compose(i, j).unwrap_or_else(|| {
            panic!(
                "composite {}∘{} is not listed",
                self.extractors[i].label, self.extractors[j].label
            )
        })
    }

    pub fn is_closed(&self) -> bool {
        self.composition.iter().all(Option::is_some)
    }

    pub fn composition_table(&self) -> Vec<Vec<Option<usize>>> {
        self.composition
            .chunks(self.num_extractors().max(1))
            .take(self.num_extractors())
            .map(<[Option<usize>]>::to_vec)
            .collect()
    }

    /// Whether two labels share an underlying map.
    pub fn has_duplicate_maps(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.extractors.iter().all(|e| seen.insert(&e.map))
    }

    /// The meet lattice of the carrier, if all meets exist.
    pub fn lattice(&self) -> Result<FiniteLattice, OrderError> {
        FiniteLattice::from_semilattice(self.sl.clone())
    }

    /// Checks each axiom and reports the first witness in index order.
    pub fn verify_axioms(&self, mode: Mode) -> AxiomReport {
        let n = self.len();
        let k = self.num_extractors();
        let (unit, zero) = (self.unit(), self.zero());
        let maps: Vec<&[usize]> = self.extractors.iter().map(|e| e.map.as_slice()).collect();

        let null = (0..k)
            .find(|&e| maps[e][zero] != zero)
            .map(|ext| Violation::Null { ext, image: maps[ext][zero] });
        let absorption = (0..k)
            .flat_map(|e| (0..n).map(move |p| (e, p)))
            .find(|&(e, p)| !self.leq(maps[e][p], p))
            .map(|(ext, phi)| Violation::Absorption { ext, phi });
        let quantifier = (|| {
            for (ext, m) in maps.iter().enumerate() {
                for phi in 0..n {
                    let e_phi = m[phi];
                    for psi in 0..n {
                        if m[self.join(e_phi, psi)] != self.join(e_phi, m[psi]) {
                            return Some(Violation::Quantifier { ext, phi, psi });
                        }
                    }
                }
            }
            None
        })();
        let commutation = (|| {
            for first in 0..k {
                for second in first + 1..k {
                    if let Some(phi) = (0..n).find(|&p| maps[first][maps[second][p]] != maps[second][maps[first][p]]) {
                        return Some(Violation::Commutation { first, second, phi });
                    }
                }
            }
            None
        })();
        let idempotence = (0..k)
            .flat_map(|e| (0..n).map(move |p| (e, p)))
            .find(|&(e, p)| maps[e][maps[e][p]] != maps[e][p])
            .map(|(ext, phi)| Violation::Idempotence { ext, phi });
        let unit_fixed = (0..k)
            .find(|&e| maps[e][unit] != unit)
            .map(|ext| Violation::UnitFixed { ext, image: maps[ext][unit] });
        let closure = match mode {
            Mode::Lenient => None,
            Mode::Strict => self
                .composition
                .iter()
                .position(Option::is_none)
                .map(|c| Violation::Closure { first: c / k, second: c % k }),
        };

        let verdict = |v: Option<Violation>| v.map_or(Verdict::Pass, Verdict::Fail);
        AxiomReport {
            verdicts: vec![
                (Axiom::Null, verdict(null)),
                (Axiom::Absorption, verdict(absorption)),
                (Axiom::Quantifier, verdict(quantifier)),
                (Axiom::Commutation, verdict(commutation)),
                (Axiom::Idempotence, verdict(idempotence)),
                (Axiom::UnitFixed, verdict(unit_fixed)),
                (
                    Axiom::Closure,
                    if mode == Mode::Lenient { Verdict::Skipped } else { verdict(closure) },
                ),
            ],
        }
    }

    /// Adds every missing composite (and optionally the identity, labelled
    /// `id`). New labels join the factors' labels with a dot.
    pub fn close(&self, with_identity: bool, cap: usize) -> Result<InfoAlgebra, AlgebraError> {
        let n = self.len();
        let mut exts = self.extractors.clone();
        let mut index: HashMap<Vec<usize>, usize> =
            exts.iter().enumerate().map(|(i, e)| (e.map.clone(), i)).collect();
        let identity: Vec<usize> = (0..n).collect();
        if with_identity && !index.contains_key(&identity) {
            let mut label = String::from("id");
            while exts.iter().any(|e| e.label == label) {
                label.push('\'');
            }
            index.insert(identity.clone(), exts.len());
            exts.push(Extractor::new(label, identity));
        }
        let mut done = 0;
        while done < exts.len() {
            let i = done;
            for j in 0..=i {
                for (a, b) in [(j, i), (i, j)] {
                    let c = compose_maps(&exts[a].map, &exts[b].map);
                    if !index.contains_key(&c) {
                        if exts.len() >= cap {
                            return Err(AlgebraError::CapExceeded { cap });
                        }
                        let mut label = format!("{}.{}", exts[a].label, exts[b].label);
                        while exts.iter().any(|e| e.label == label) {
                            label.push('\'');
                        }
                        index.insert(c.clone(), exts.len());
                        exts.push(Extractor::new(label, c));
                    }
                }
            }
            done += 1;
        }
        InfoAlgebra::new(self.sl.clone(), exts)
    }
}

fn check_extractors(sl: &BoundedJoinSemilattice, extractors: &[Extractor]) -> Result<(), AlgebraError> {
    let n = sl.len();
    let mut labels = std::collections::HashSet::new();
    for e in extractors {
        if !labels.insert(e.label.as_str()) {
            return Err(AlgebraError::DuplicateLabel(e.label.clone()));
        }
        if e.map.len() != n {
            return Err(AlgebraError::MapLength { label: e.label.clone(), len: e.map.len(), expected: n });
        }
        if let Some(&index) = e.map.iter().find(|&&x| x >= n) {
            return Err(AlgebraError::MapOutOfRange { label: e.label.clone(), index });
        }
    }
    Ok(())
}

/// `φ ≡_ε ψ ⟺ ε(φ) = ε(ψ)`.
pub fn kernel(a: &InfoAlgebra, ext: usize) -> Equivalence {
    let map = &a.extractor(ext).map;
    Equivalence::from_key(a.len(), |x| map[x])
}

/// Checks `ker ε ⋆ ker η = ker(ε∘η)` for all pairs; returns the first failing
/// pair.
pub fn check_kernel_theorem(a: &InfoAlgebra) -> Result<(), (usize, usize)> {
    let kernels: Vec<Equivalence> = (0..a.num_extractors()).map(|e| kernel(a, e)).collect();
    for i in 0..kernels.len() {
        for j in 0..kernels.len() {
            let ok = match (star(&kernels[i], &kernels[j]), a.try_compose(i, j)) {
                (Ok(p), Some(c)) => p == kernels[c],
                _ => false,
            };
            if !ok {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// An element map `f` and an extractor-index map `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl AlgebraMorphism {
    pub fn identity(a: &InfoAlgebra) -> Self {
        AlgebraMorphism { f: (0..a.len()).collect(), g: (0..a.num_extractors()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomViolation {
    #[error("element map has {found} entries or leaves the codomain; expected {expected}")]
    ElementMapShape { found: usize, expected: usize },
    #[error("extractor map has {found} entries or leaves the codomain; expected {expected}")]
    ExtractorMapShape { found: usize, expected: usize },
    #[error("join of {0} and {1} is not preserved")]
    Join(usize, usize),
    #[error("unit is not preserved")]
    Unit,
    #[error("zero is not preserved")]
    Zero,
    #[error("meet of {0} and {1} is not preserved")]
    Meet(usize, usize),
    #[error("composite of extractors {0} and {1} is not preserved")]
    Composition(usize, usize),
    #[error("compatibility fails for extractor {ext} at {phi}")]
    Compatibility { ext: usize, phi: usize },
    #[error("element map is not bijective")]
    ElementsNotBijective,
    #[error("extractor map is not bijective")]
    ExtractorsNotBijective,
}

/// Checks the homomorphism conditions; for two distributive CDFs, meets must
/// also be preserved.
pub fn is_homomorphism(m: &AlgebraMorphism, a: &InfoAlgebra, b: &InfoAlgebra) -> Result<(), HomViolation> {
    let meets = match (is_distributive_cdf(a), is_distributive_cdf(b)) {
        (Ok(la), Ok(lb)) => Some((la, lb)),
        _ => None,
    };
    check_homomorphism(m, a, b, meets.as_ref().map(|(la, lb)| (la, lb)))
}

/// Homomorphism check with an explicit choice of whether meets are checked.
pub fn check_homomorphism(
    m: &AlgebraMorphism,
    a: &InfoAlgebra,
    b: &InfoAlgebra,
    meets: Option<(&FiniteLattice, &FiniteLattice)>,
) -> Result<(), HomViolation> {
    let (n, k) = (a.len(), a.num_extractors());
    if m.f.len() != n || m.f.iter().any(|&x| x >= b.len()) {
        return Err(HomViolation::ElementMapShape { found: m.f.len(), expected: n });
    }
    if m.g.len() != k || m.g.iter().any(|&x| x >= b.num_extractors()) {
        return Err(HomViolation::ExtractorMapShape { found: m.g.len(), expected: k });
    }
    let f = &m.f;
    for x in 0..n {
        for y in x..n {
            if f[a.join(x, y)] != b.join(f[x], f[y]) {
                return Err(HomViolation::Join(x, y));
            }
        }
    }
    if f[a.unit()] != b.unit() {
        return Err(HomViolation::Unit);
    }
    if f[a.zero()] != b.zero() {
        return Err(HomViolation::Zero);
    }
    if let Some((la, lb)) = meets {
        for x in 0..n {
            for y in x..n {
                if f[la.meet(x, y)] != lb.meet(f[x], f[y]) {
                    return Err(HomViolation::Meet(x, y));
                }
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let lhs = a.try_compose(i, j).map(|c| &b.extractor(m.g[c]).map);
            let rhs = compose_maps(&b.extractor(m.g[i]).map, &b.extractor(m.g[j]).map);
            if lhs != Some(&rhs) {
                return Err(HomViolation::Composition(i, j));
            }
        }
    }
    for ext in 0..k {
        let target = &b.extractor(m.g[ext]).map;
        if let Some(phi) = (0..n).find(|&p| f[a.apply(ext, p)] != target[f[p]]) {
            return Err(HomViolation::Compatibility { ext, phi });
        }
    }
    Ok(())
}

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    let mut seen = vec![false; codomain];
    map.len() == codomain && map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

pub fn is_isomorphism(m: &AlgebraMorphism, a: &InfoAlgebra, b: &InfoAlgebra) -> Result<(), HomViolation> {
    is_homomorphism(m, a, b)?;
    if !is_bijection(&m.f, b.len()) {
        return Err(HomViolation::ElementsNotBijective);
    }
    if !is_bijection(&m.g, b.num_extractors()) {
        return Err(HomViolation::ExtractorsNotBijective);
    }
    Ok(())
}

/// The subalgebra on `εΦ` with every extractor restricted to it, and its
/// inclusion into `a`. Restrictions may coincide, so the composition table
/// is inherited from `a`.
pub fn extraction_image(a: &InfoAlgebra, ext: usize) -> (InfoAlgebra, AlgebraMorphism) {
    let map = &a.extractor(ext).map;
    let points: Vec<usize> = (0..a.len()).filter(|&p| map[p] == p).collect();
    let local: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let m = points.len();
    let join: Vec<usize> = (0..m * m)
        .map(|c| local[&a.join(points[c / m], points[c % m])])
        .collect();
    let sl = BoundedJoinSemilattice::from_trusted_join(join, m, local[&a.unit()], local[&a.zero()]);
    let extractors = a
        .extractors()
        .iter()
        .map(|e| Extractor::new(e.label.clone(), points.iter().map(|&p| local[&e.map[p]]).collect()))
        .collect();
    let k = a.num_extractors();
    let table: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| a.compose(i, j)).collect()).collect();
    let sub = InfoAlgebra::with_composition(sl, extractors, &table)
        .expect("extraction images are closed under the inherited operations");
    (sub, AlgebraMorphism { f: points, g: (0..k).collect() })
}

/// `εΦ` with one extractor per distinct restricted map. The extractor map
/// sends `η` to `η∘ε`, which restricts to `η` on `εΦ`.
pub fn extraction_subalgebra(a: &InfoAlgebra, ext: usize) -> Result<(InfoAlgebra, AlgebraMorphism), AlgebraError> {
    let (image, inc) = extraction_image(a, ext);
    let mut kept: Vec<Extractor> = Vec::new();
    let mut g = Vec::new();
    for (i, e) in image.extractors().iter().enumerate() {
        if kept.iter().any(|k| k.map == e.map) {
            continue;
        }
        let rep = a.try_compose(i, ext).ok_or_else(|| AlgebraError::NotClosed {
            first: a.extractor(i).label.clone(),
            second: a.extractor(ext).label.clone(),
        })?;
        kept.push(e.clone());
        g.push(rep);
    }
    let sub = InfoAlgebra::new(image.semilattice().clone(), kept)?;
    Ok((sub, AlgebraMorphism { f: inc.f, g }))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdfFailure {
    #[error("{0} and {1} have no meet")]
    MissingMeet(usize, usize),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("extractor {ext} does not preserve the meet of {phi} and {psi}")]
    MeetNotPreserved { ext: usize, phi: usize, psi: usize },
}

/// `Ok(lattice)` iff all meets exist, the lattice is distributive and every
/// extractor preserves binary meets.
pub fn is_distributive_cdf(a: &InfoAlgebra) -> Result<FiniteLattice, CdfFailure> {
    let lat = a.lattice().map_err(|e| match e {
        OrderError::MissingMeet(x, y) => CdfFailure::MissingMeet(x, y),
        other => unreachable!("semilattice already valid: {other}"),
    })?;
    lat.is_distributive()
        .map_err(|(x, y, z)| CdfFailure::NotDistributive(x, y, z))?;
    let n = a.len();
    for ext in 0..a.num_extractors() {
        for phi in 0..n {
            for psi in phi + 1..n {
                if a.apply(ext, lat.meet(phi, psi)) != lat.meet(a.apply(ext, phi), a.apply(ext, psi)) {
                    return Err(CdfFailure::MeetNotPreserved { ext, phi, psi });
                }
            }
        }
    }
    Ok(lat)
}

/// The algebra of ideals of `Φ` with `I₁·I₂ = {φ : φ ≤ φ₁·φ₂, φᵢ ∈ Iᵢ}` and
/// `ε̂(I) = {φ : φ ≤ ε(ψ), ψ ∈ I}`, plus the embedding `φ ↦ ↓φ`, `ε ↦ ε̂`.
/// Ideals of a finite semilattice are principal, so the carrier is indexed by
/// generators.
pub fn ideal_completion(a: &InfoAlgebra) -> (InfoAlgebra, AlgebraMorphism) {
    let n = a.len();
    let poset = a.semilattice().poset();
    let ideals: Vec<Subset> = (0..n).map(|p| poset.principal_down_set(p).clone()).collect();
    let index: HashMap<&Subset, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let down_closure = |generators: &mut dyn Iterator<Item = usize>| {
        let mut out = subset::empty(n);
        for g in generators {
            out.union_with(poset.principal_down_set(g));
        }
        out
    };
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let combined = down_closure(
                &mut ideals[i]
                    .ones()
                    .flat_map(|x| ideals[j].ones().map(move |y| (x, y)))
                    .map(|(x, y)| a.join(x, y)),
            );
            join[i * n + j] = index[&combined];
        }
    }
    let sl = BoundedJoinSemilattice::from_trusted_join(join, n, index[&ideals[a.unit()]], index[&ideals[a.zero()]]);
    let extractors = a
        .extractors()
        .iter()
        .map(|e| {
            let map = (0..n)
                .map(|i| index[&down_closure(&mut ideals[i].ones().map(|x| e.map[x]))])
                .collect();
            Extractor::new(e.label.clone(), map)
        })
        .collect();
    let completion = InfoAlgebra::new(sl, extractors).expect("ε̂ are distinct when the ε are");
    let f = (0..n).map(|p| index[&ideals[p]]).collect();
    (completion, AlgebraMorphism { f, g: (0..a.num_extractors()).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinitePoset;

    fn chain(n: usize) -> BoundedJoinSemilattice {
        BoundedJoinSemilattice::from_poset(FinitePoset::chain(n)).unwrap()
    }

    #[test]
    fn identity_passes() {
        for n in 1..5 {
            let a = InfoAlgebra::identity_only(chain(n));
            assert!(a.verify_axioms(Mode::Strict).passed());
            assert!(kernel(&a, 0).is_identity());
            assert!(check_kernel_theorem(&a).is_ok());
        }
    }

    #[test]
    fn absorption_violation() {
        // 3-chain 0 < 1 < 2 with 2 as zero; ε pushes 0 up to 1.
        let bad = Extractor::new("up", vec![1, 1, 2]);
        let a = InfoAlgebra::new(chain(3), vec![bad]).unwrap();
        let report = a.verify_axioms(Mode::Strict);
        assert_eq!(report.verdict(Axiom::Absorption), Verdict::Fail(Violation::Absorption { ext: 0, phi: 0 }));
        assert!(!report.passed());
    }

    #[test]
    fn kernel_of_collapse_to_unit() {
        let e = Extractor::new("e", vec![0, 0, 2]);
        let a = InfoAlgebra::new(chain(3), vec![e]).unwrap();
        assert!(a.verify_axioms(Mode::Strict).passed());
        assert_eq!(kernel(&a, 0), Equivalence::from_blocks(3, &[vec![0, 1], vec![2]]));
    }

    #[test]
    fn duplicate_maps_rejected_unless_table_given() {
        let id = |l: &str| Extractor::new(l, vec![0, 1]);
        assert!(matches!(
            InfoAlgebra::new(chain(2), vec![id("a"), id("b")]),
            Err(AlgebraError::DuplicateMap { .. })
        ));
        let table = vec![vec![0, 1], vec![1, 1]];
        let a = InfoAlgebra::with_composition(chain(2), vec![id("a"), id("b")], &table).unwrap();
        assert!(a.verify_axioms(Mode::Strict).passed());
        assert!(matches!(
            InfoAlgebra::new(chain(2), vec![id("a"), Extractor::new("a", vec![0, 0])]),
            Err(AlgebraError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn closure_adds_composites() {
        // Subsets of a 2×2 grid as masks, combined by intersection; the
        // extractors saturate along rows and along columns.
        let join: Vec<Vec<usize>> = (0..16).map(|a| (0..16).map(|b| a & b).collect()).collect();
        let sl = BoundedJoinSemilattice::from_join_table(&join, 15, 0).unwrap();
        let saturate = |blocks: [usize; 2]| -> Vec<usize> {
            (0..16).map(|x| blocks.iter().filter(|&&b| x & b != 0).fold(0, |acc, b| acc | b)).collect()
        };
        let fx = Extractor::new("fx", saturate([0b0011, 0b1100]));
        let fy = Extractor::new("fy", saturate([0b0101, 0b1010]));
        let partial = InfoAlgebra::new(sl, vec![fx, fy]).unwrap();
        let report = partial.verify_axioms(Mode::Strict);
        assert_eq!(report.verdict(Axiom::Closure), Verdict::Fail(Violation::Closure { first: 0, second: 1 }));
        assert_eq!(partial.verify_axioms(Mode::Lenient).verdict(Axiom::Closure), Verdict::Skipped);

        let closed = partial.close(false, 100).unwrap();
        assert_eq!(closed.num_extractors(), 3);
        assert_eq!(closed.extractor(2).label, "fx.fy");
        assert_eq!(closed.extractor(2).map, saturate([0b1111, 0]));
        assert!(closed.verify_axioms(Mode::Strict).passed());
        assert_eq!(closed.close(false, 100).unwrap(), closed);
        assert_eq!(closed.close(true, 100).unwrap().num_extractors(), 4);
        assert!(matches!(partial.close(false, 2), Err(AlgebraError::CapExceeded { cap: 2 })));
    }

    #[test]
    fn homomorphism_basics() {
        let a = InfoAlgebra::identity_only(chain(3));
        assert!(is_isomorphism(&AlgebraMorphism::identity(&a), &a, &a).is_ok());
        let collapse = AlgebraMorphism { f: vec![0, 0, 0], g: vec![0] };
        assert_eq!(is_homomorphism(&collapse, &a, &a), Err(HomViolation::Zero));
        let two = InfoAlgebra::identity_only(chain(2));
        let squash = AlgebraMorphism { f: vec![0, 0, 1], g: vec![0] };
        assert!(is_homomorphism(&squash, &a, &two).is_ok());
        assert_eq!(is_isomorphism(&squash, &a, &two), Err(HomViolation::ElementsNotBijective));
    }

    #[test]
    fn extraction_image_of_collapse() {
        let e = Extractor::new("e", vec![0, 0, 2]);
        let id = Extractor::new("id", vec![0, 1, 2]);
        let a = InfoAlgebra::new(chain(3), vec![id, e]).unwrap();
        let (sub, inc) = extraction_image(&a, 1);
        assert_eq!(sub.len(), 2);
        assert_eq!(inc.f, vec![0, 2]);
        let (sub, inc) = extraction_subalgebra(&a, 1).unwrap();
        assert_eq!(sub.num_extractors(), 1);
        assert_eq!(inc.g, vec![1]);
        assert!(sub.verify_axioms(Mode::Strict).passed());
        assert!(is_homomorphism(&inc, &sub, &a).is_ok());
        let (same, inc) = extraction_image(&a, 0);
        assert_eq!(same, a);
        assert_eq!(inc, AlgebraMorphism::identity(&a));
    }

    #[test]
    fn ideal_completion_of_chain() {
        let a = InfoAlgebra::identity_only(chain(2));
        let (c, emb) = ideal_completion(&a);
        assert!(is_isomorphism(&emb, &a, &c).is_ok());
    }
}
