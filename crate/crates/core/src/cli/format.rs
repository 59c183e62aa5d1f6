//! JSON file formats for algebras, Q-spaces and morphism maps, with a
//! canonical printer.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, AlgebraMorphism, Extractor, InfoAlgebra};
use crate::duality::QSpace;
use crate::equivalence::{Equivalence, StarFamily};
use crate::order::{BoundedJoinSemilattice, FiniteLattice, FinitePoset, OrderError};

/// Failure classes with distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Semantic(_) => 1,
            CliError::Io(_) | CliError::Parse(_) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
    pub unit: usize,
    pub zero: usize,
    pub extractors: IndexMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `composition[a][b]` names `a∘b`; required only when two labels share
    /// a map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<IndexMap<String, IndexMap<String, String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSpaceFile {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub equivalences: IndexMap<String, Vec<usize>>,
}

/// Element and extractor maps, either as index arrays or label maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexMapSpec {
    Indices(Vec<usize>),
    Labels(IndexMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub f: IndexMapSpec,
    pub g: IndexMapSpec,
}

/// A parsed algebra with its optional presentation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub algebra: InfoAlgebra,
    pub labels: Option<Vec<String>>,
    pub meet: Option<FiniteLattice>,
}

impl AlgebraDoc {
    pub fn plain(algebra: InfoAlgebra) -> Self {
        AlgebraDoc { algebra, labels: None, meet: None }
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn semantic(e: impl std::fmt::Display) -> CliError {
    CliError::Semantic(e.to_string())
}

fn check_square<T>(name: &str, t: &[Vec<T>], n: usize) -> Result<(), CliError> {
    if t.len() != n {
        return Err(CliError::Parse(format!("{name} has {} rows, expected {n}", t.len())));
    }
    if let Some(r) = t.iter().position(|row| row.len() != n) {
        return Err(CliError::Parse(format!("{name} row {r} has {} entries, expected {n}", t[r].len())));
    }
    Ok(())
}

fn check_indices(name: &str, t: &[Vec<usize>], n: usize) -> Result<(), CliError> {
    match t.iter().flatten().find(|&&x| x >= n) {
        Some(x) => Err(CliError::Parse(format!("{name} entry {x} is out of range"))),
        None => Ok(()),
    }
}

fn order_error(e: OrderError) -> CliError {
    match e {
        OrderError::NotSquare { .. } | OrderError::OutOfRange { .. } | OrderError::Empty => parse_err(e),
        other => semantic(other),
    }
}

fn algebra_error(e: AlgebraError) -> CliError {
    match e {
        AlgebraError::Order(o) => order_error(o),
        AlgebraError::MapLength { .. } | AlgebraError::MapOutOfRange { .. } => parse_err(e),
        other => semantic(other),
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDoc, CliError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(parse_err)?;
    algebra_from_file(&file)
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<AlgebraDoc, CliError> {
    let n = file.n;
    if n == 0 {
        return Err(CliError::Parse("n must be positive".into()));
    }
    if file.unit >= n || file.zero >= n {
        return Err(CliError::Parse("unit or zero out of range".into()));
    }
    let sl = match (&file.join, &file.leq) {
        (Some(join), None) => {
            check_square("join", join, n)?;
            check_indices("join", join, n)?;
            BoundedJoinSemilattice::from_join_table(join, file.unit, file.zero).map_err(order_error)?
        }
        (None, Some(leq)) => {
            check_square("leq", leq, n)?;
            BoundedJoinSemilattice::from_leq_table(leq, file.unit, file.zero).map_err(order_error)?
        }
        _ => return Err(CliError::Parse("exactly one of join and leq is required".into())),
    };
    if let Some(labels) = &file.labels {
        if labels.len() != n {
            return Err(CliError::Parse(format!("{} labels for {n} elements", labels.len())));
        }
    }
    let meet = match &file.meet {
        Some(m) => {
            check_square("meet", m, n)?;
            check_indices("meet", m, n)?;
            Some(FiniteLattice::from_tables(sl.clone(), m).map_err(order_error)?)
        }
        None => None,
    };
    let extractors: Vec<Extractor> =
        file.extractors.iter().map(|(l, m)| Extractor::new(l.clone(), m.clone())).collect();
    let algebra = match &file.composition {
        None => InfoAlgebra::new(sl, extractors).map_err(algebra_error)?,
        Some(comp) => {
            let idx = |l: &str| {
                file.extractors
                    .get_index_of(l)
                    .ok_or_else(|| CliError::Parse(format!("unknown extractor {l} in composition")))
            };
            let k = extractors.len();
            let mut table = vec![vec![usize::MAX; k]; k];
            for (a, row) in comp {
                for (b, c) in row {
                    table[idx(a)?][idx(b)?] = idx(c)?;
                }
            }
            if table.iter().flatten().any(|&c| c == usize::MAX) {
                return Err(CliError::Parse("composition table is incomplete".into()));
            }
            InfoAlgebra::with_composition(sl, extractors, &table).map_err(algebra_error)?
        }
    };
    Ok(AlgebraDoc { algebra, labels: file.labels.clone(), meet })
}

pub fn algebra_to_file(doc: &AlgebraDoc) -> AlgebraFile {
    let a = &doc.algebra;
    let composition = a.has_duplicate_maps().then(|| {
        let table = a.composition_table();
        a.extractors()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let row = a
                    .extractors()
                    .iter()
                    .enumerate()
                    .map(|(j, f)| (f.label.clone(), a.extractor(table[i][j].expect("explicit table")).label.clone()))
                    .collect();
                (e.label.clone(), row)
            })
            .collect()
    });
    AlgebraFile {
        n: a.len(),
        join: Some(a.semilattice().join_table()),
        leq: None,
        unit: a.unit(),
        zero: a.zero(),
        extractors: a.extractors().iter().map(|e| (e.label.clone(), e.map.clone())).collect(),
        meet: doc.meet.as_ref().map(|m| m.meet_table()),
        labels: doc.labels.clone(),
        composition,
    }
}

pub fn parse_qspace(text: &str) -> Result<QSpace, CliError> {
    let file: QSpaceFile = serde_json::from_str(text).map_err(parse_err)?;
    qspace_from_file(&file)
}

pub fn qspace_from_file(file: &QSpaceFile) -> Result<QSpace, CliError> {
    let n = file.n;
    check_square("leq", &file.leq, n)?;
    let poset = FinitePoset::from_table(&file.leq).map_err(order_error)?;
    let mut members = Vec::new();
    for (label, ids) in &file.equivalences {
        if ids.len() != n {
            return Err(CliError::Parse(format!("equivalence {label} has {} entries, expected {n}", ids.len())));
        }
        members.push(Equivalence::from_block_ids(ids));
    }
    let labels = file.equivalences.keys().cloned().collect();
    let eqs = StarFamily::new(n, members, labels).map_err(semantic)?;
    QSpace::new(poset, eqs).map_err(semantic)
}

pub fn qspace_to_file(s: &QSpace) -> QSpaceFile {
    QSpaceFile {
        n: s.len(),
        leq: s.poset().to_table(),
        equivalences: s
            .eqs()
            .members()
            .iter()
            .zip(s.eqs().labels())
            .map(|(e, l)| (l.clone(), e.block_ids().to_vec()))
            .collect(),
    }
}

fn resolve(
    spec: &IndexMapSpec,
    len: usize,
    target: usize,
    from: impl Fn(&str) -> Option<usize>,
    to: impl Fn(&str) -> Option<usize>,
    what: &str,
) -> Result<Vec<usize>, CliError> {
    let out = match spec {
        IndexMapSpec::Indices(v) => v.clone(),
        IndexMapSpec::Labels(m) => {
            let mut out = vec![usize::MAX; len];
            for (a, b) in m {
                let i = from(a).ok_or_else(|| CliError::Parse(format!("unknown {what} {a}")))?;
                let j = to(b).ok_or_else(|| CliError::Parse(format!("unknown {what} {b}")))?;
                out[i] = j;
            }
            out
        }
    };
    if out.len() != len || out.iter().any(|&x| x >= target) {
        return Err(CliError::Parse(format!("{what} map must send all {len} entries into 0..{target}")));
    }
    Ok(out)
}

fn element_index(doc: &AlgebraDoc, name: &str) -> Option<usize> {
    match &doc.labels {
        Some(l) => l.iter().position(|x| x == name),
        None => name.parse().ok().filter(|&i| i < doc.algebra.len()),
    }
}

pub fn parse_map(text: &str, a: &AlgebraDoc, b: &AlgebraDoc) -> Result<AlgebraMorphism, CliError> {
    let file: MapFile = serde_json::from_str(text).map_err(parse_err)?;
    let f = resolve(
        &file.f,
        a.algebra.len(),
        b.algebra.len(),
        |s| element_index(a, s),
        |s| element_index(b, s),
        "element",
    )?;
    let g = resolve(
        &file.g,
        a.algebra.num_extractors(),
        b.algebra.num_extractors(),
        |s| a.algebra.extractor_index(s),
        |s| b.algebra.extractor_index(s),
        "extractor",
    )?;
    Ok(AlgebraMorphism { f, g })
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn write_table<T: Serialize>(out: &mut String, name: &str, t: &[Vec<T>]) {
    out.push_str(&format!("  {}: [\n", json(name)));
    for (i, row) in t.iter().enumerate() {
        let sep = if i + 1 < t.len() { "," } else { "" };
        out.push_str(&format!("    {}{sep}\n", json(row)));
    }
    out.push_str("  ]");
}

fn write_map<V: Serialize>(out: &mut String, name: &str, m: &IndexMap<String, V>) {
    out.push_str(&format!("  {}: {{\n", json(name)));
    for (i, (k, v)) in m.iter().enumerate() {
        let sep = if i + 1 < m.len() { "," } else { "" };
        out.push_str(&format!("    {}: {}{sep}\n", json(k), json(v)));
    }
    out.push_str("  }");
}

/// Canonical text: one member per line group, one table row per line.
pub fn print_algebra_file(file: &AlgebraFile) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.push(format!("  \"n\": {}", file.n));
    if let Some(join) = &file.join {
        let mut s = String::new();
        write_table(&mut s, "join", join);
        parts.push(s);
    }
    if let Some(leq) = &file.leq {
        let mut s = String::new();
        write_table(&mut s, "leq", leq);
        parts.push(s);
    }
    parts.push(format!("  \"unit\": {}", file.unit));
    parts.push(format!("  \"zero\": {}", file.zero));
    let mut s = String::new();
    write_map(&mut s, "extractors", &file.extractors);
    parts.push(s);
    if let Some(meet) = &file.meet {
        let mut s = String::new();
        write_table(&mut s, "meet", meet);
        parts.push(s);
    }
    if let Some(labels) = &file.labels {
        parts.push(format!("  \"labels\": {}", json(labels)));
    }
    if let Some(comp) = &file.composition {
        let mut s = String::new();
        write_map(&mut s, "composition", comp);
        parts.push(s);
    }
    format!("{{\n{}\n}}\n", parts.join(",\n"))
}

pub fn print_qspace_file(file: &QSpaceFile) -> String {
    let mut leq = String::new();
    write_table(&mut leq, "leq", &file.leq);
    let mut eqs = String::new();
    write_map(&mut eqs, "equivalences", &file.equivalences);
    format!("{{\n  \"n\": {},\n{leq},\n{eqs}\n}}\n", file.n)
}

pub fn print_algebra(doc: &AlgebraDoc) -> String {
    print_algebra_file(&algebra_to_file(doc))
}

pub fn print_qspace(s: &QSpace) -> String {
    print_qspace_file(&qspace_to_file(s))
}
