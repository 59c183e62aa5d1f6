use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::json;

use super::format::{self, AlgebraDoc, CliError};
use super::{resolve_cap, Cli, Command, EnumerateKind, GenKind, OutputFormat};
use crate::algebra::{is_homomorphism, Mode, Verdict};
use crate::atoms::classify;
use crate::duality::{dualize, reconstruct, round_trip_algebra, round_trip_space, QSpace};
use crate::generators::{
    enumerate_algebras, enumerate_qspaces, gen_lattice_valued, gen_multivariate, gen_string, lattices_of_size,
    posets, MAX_LATTICE_SIZE, MAX_QSPACE_POINTS,
};
use crate::order::FiniteLattice;
use crate::subset;

/// What a command prints and its exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<Outcome, CliError> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn load_algebra(path: &Path) -> Result<AlgebraDoc, CliError> {
    format::parse_algebra(&read(path)?)
}

fn load_qspace(path: &Path) -> Result<QSpace, CliError> {
    format::parse_qspace(&read(path)?)
}

fn semantic(e: impl std::fmt::Display) -> CliError {
    CliError::Semantic(e.to_string())
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Verify { path, lenient } => verify(path, *lenient, fmt),
        Command::Close { path, with_identity, output } => {
            let cap = resolve_cap(cli.cap)?;
            let doc = load_algebra(path)?;
            let closed = doc.algebra.close(*with_identity, cap).map_err(semantic)?;
            emit(format::print_algebra(&AlgebraDoc { algebra: closed, ..doc }), output)
        }
        Command::Dualize { path, output } => {
            let doc = load_algebra(path)?;
            let dual = dualize(&doc.algebra).map_err(semantic)?;
            emit(format::print_qspace(&dual.space), output)
        }
        Command::Reconstruct { path, output } => {
            let s = load_qspace(path)?;
            let r = reconstruct(&s).map_err(semantic)?;
            let labels = r.set_algebra.family().iter().map(subset::display).collect();
            emit(format::print_algebra(&AlgebraDoc { algebra: r.algebra, labels: Some(labels), meet: None }), output)
        }
        Command::Roundtrip { path } => roundtrip(path, fmt),
        Command::Atoms { path } => {
            let doc = load_algebra(path)?;
            let names: Vec<String> = crate::atoms::atoms(&doc.algebra).iter().map(|&x| doc.element_name(x)).collect();
            Ok(Outcome::ok(match fmt {
                OutputFormat::Json => pretty(json!({ "atoms": names })),
                OutputFormat::Text => names.iter().map(|n| format!("{n}\n")).collect(),
            }))
        }
        Command::Classify { path } => classify_cmd(path, fmt),
        Command::Gen { kind, output } => {
            let cap = resolve_cap(cli.cap)?;
            emit(format::print_algebra(&generate(kind, cap)?), output)
        }
        Command::CheckHom { a, b, map } => {
            let da = load_algebra(a)?;
            let db = load_algebra(b)?;
            let m = format::parse_map(&read(map)?, &da, &db)?;
            match is_homomorphism(&m, &da.algebra, &db.algebra) {
                Ok(()) => Ok(Outcome::ok(match fmt {
                    OutputFormat::Json => pretty(json!({ "homomorphism": true })),
                    OutputFormat::Text => "homomorphism\n".into(),
                })),
                Err(v) => Ok(Outcome {
                    stdout: match fmt {
                        OutputFormat::Json => pretty(json!({ "homomorphism": false, "violation": v.to_string() })),
                        OutputFormat::Text => format!("not a homomorphism: {v}\n"),
                    },
                    stderr: String::new(),
                    code: 1,
                }),
            }
        }
        Command::Enumerate { max_n, what } => enumerate(*max_n, *what, fmt),
    }
}

fn verify(path: &Path, lenient: bool, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let doc = load_algebra(path)?;
    let mode = if lenient { Mode::Lenient } else { Mode::Strict };
    let report = doc.algebra.verify_axioms(mode);
    let passed = report.passed();
    let stdout = match fmt {
        OutputFormat::Json => {
            let verdicts: Vec<serde_json::Value> = report
                .verdicts
                .iter()
                .map(|(ax, v)| match v {
                    Verdict::Pass => json!({ "axiom": ax.name(), "verdict": "pass" }),
                    Verdict::Skipped => json!({ "axiom": ax.name(), "verdict": "skipped" }),
                    Verdict::Fail(w) => json!({ "axiom": ax.name(), "verdict": "fail", "witness": w.to_string() }),
                })
                .collect();
            pretty(json!({ "passed": passed, "verdicts": verdicts }))
        }
        OutputFormat::Text => {
            let mut s: String = report
                .verdicts
                .iter()
                .map(|(ax, v)| match v {
                    Verdict::Pass => format!("{}: pass\n", ax.name()),
                    Verdict::Skipped => format!("{}: skipped\n", ax.name()),
                    Verdict::Fail(w) => format!("{}: FAIL {w}\n", ax.name()),
                })
                .collect();
            s.push_str(if passed { "result: pass\n" } else { "result: FAIL\n" });
            s
        }
    };
    Ok(Outcome { stdout, stderr: String::new(), code: if passed { 0 } else { 1 } })
}

fn is_qspace_text(text: &str) -> Result<bool, CliError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(v.get("equivalences").is_some())
}

fn roundtrip(path: &Path, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let text = read(path)?;
    let (algebra_side, space_side) = if is_qspace_text(&text)? {
        let s = format::parse_qspace(&text)?;
        let sr = round_trip_space(&s).map_err(semantic)?;
        let ar = round_trip_algebra(&sr.reconstruction.algebra).map_err(semantic)?;
        (ar, sr)
    } else {
        let doc = format::parse_algebra(&text)?;
        let ar = round_trip_algebra(&doc.algebra).map_err(semantic)?;
        let sr = round_trip_space(&ar.dual.space).map_err(semantic)?;
        (ar, sr)
    };
    let k = &algebra_side.kappa;
    let l = &space_side.lambda;
    let stdout = match fmt {
        OutputFormat::Json => pretty(json!({
            "algebra": { "f": k.f, "g": k.g },
            "space": { "alpha": l.alpha, "omega": l.omega },
            "verified": true,
        })),
        OutputFormat::Text => format!(
            "algebra to up-sets of its dual: f = {:?}, g = {:?}\n\
             space to dual of its up-sets: alpha = {:?}, omega = {:?}\n\
             isomorphisms verified\n",
            k.f, k.g, l.alpha, l.omega
        ),
    };
    Ok(Outcome::ok(stdout))
}

fn classify_cmd(path: &Path, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let doc = load_algebra(path)?;
    let r = classify(&doc.algebra);
    let verdict = if r.completely_atomistic {
        "completely atomistic"
    } else if r.atomistic {
        "atomistic"
    } else if r.atomic {
        "atomic"
    } else {
        "not atomic"
    };
    let names: Vec<String> = r.atoms.iter().map(|&x| doc.element_name(x)).collect();
    Ok(Outcome::ok(match fmt {
        OutputFormat::Json => pretty(json!({
            "atoms": names,
            "atomic": r.atomic,
            "atomistic": r.atomistic,
            "completely_atomistic": r.completely_atomistic,
            "classification": verdict,
        })),
        OutputFormat::Text => format!(
            "atoms: {}\natomic: {}\natomistic: {}\ncompletely atomistic: {}\n{verdict}\n",
            names.join(" "),
            r.atomic,
            r.atomistic,
            r.completely_atomistic
        ),
    }))
}

fn parse_lattice(spec: &str) -> Result<FiniteLattice, CliError> {
    let bad = || CliError::Parse(format!("lattice must be chain:N or boolean:K, got {spec}"));
    let (kind, size) = spec.split_once(':').ok_or_else(bad)?;
    let size: usize = size.parse().map_err(|_| bad())?;
    match kind {
        "chain" if (1..=64).contains(&size) => Ok(FiniteLattice::chain(size)),
        "boolean" if size <= 6 => Ok(FiniteLattice::power_set(size)),
        _ => Err(bad()),
    }
}

fn generate(kind: &GenKind, cap: usize) -> Result<AlgebraDoc, CliError> {
    let g = match kind {
        GenKind::String { k, n } => gen_string(*k, *n, cap).map_err(semantic)?,
        GenKind::Multivariate { domains } => {
            let m = gen_multivariate(domains, cap).map_err(semantic)?;
            let labels = m.set_algebra.family().iter().map(subset::display).collect();
            return Ok(AlgebraDoc { algebra: m.algebra, labels: Some(labels), meet: None });
        }
        GenKind::LatticeValued { lattice, domains } => {
            gen_lattice_valued(domains, &parse_lattice(lattice)?, cap).map_err(semantic)?
        }
    };
    Ok(AlgebraDoc { algebra: g.algebra, labels: Some(g.element_labels), meet: None })
}

fn enumerate(max_n: usize, what: EnumerateKind, fmt: OutputFormat) -> Result<Outcome, CliError> {
    let too_big = |limit: usize| CliError::Semantic(format!("size {max_n} exceeds the limit {limit}"));
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    match what {
        EnumerateKind::Posets => {
            if max_n > 5 {
                return Err(too_big(5));
            }
            for n in 1..=max_n {
                counts.insert(n, posets(n).len());
            }
        }
        EnumerateKind::Lattices => {
            if max_n > MAX_LATTICE_SIZE {
                return Err(too_big(MAX_LATTICE_SIZE));
            }
            for n in 2..=max_n {
                counts.insert(n, lattices_of_size(n, false).len());
            }
        }
        EnumerateKind::Algebras => {
            for a in enumerate_algebras(max_n).map_err(semantic)? {
                *counts.entry(a.len()).or_default() += 1;
            }
        }
        EnumerateKind::Qspaces => {
            if max_n > MAX_QSPACE_POINTS {
                return Err(too_big(MAX_QSPACE_POINTS));
            }
            for s in enumerate_qspaces(max_n).map_err(semantic)? {
                *counts.entry(s.len()).or_default() += 1;
            }
        }
    }
    let total: usize = counts.values().sum();
    Ok(Outcome::ok(match fmt {
        OutputFormat::Json => {
            let by_size: serde_json::Map<String, serde_json::Value> =
                counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            pretty(json!({ "counts": by_size, "total": total }))
        }
        OutputFormat::Text => {
            let mut s: String = counts.iter().map(|(k, v)| format!("size {k}: {v}\n")).collect();
            s.push_str(&format!("total: {total}\n"));
            s
        }
    }))
}
