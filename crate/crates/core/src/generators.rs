//! Example algebras (strings, multivariate, lattice-valued) and exhaustive
//! enumeration of small lattices, algebras, posets and Q-spaces.
//!
//! Infinite objects are truncated: strings have length at most `N`, so the
//! atoms are the strings of length exactly `N` and `e{N}` acts as the
//! identity; the multivariate and lattice-valued examples use finitely many
//! variables with finite domains.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::algebra::{check_homomorphism, is_distributive_cdf, AlgebraMorphism, Extractor, InfoAlgebra};
use crate::duality::{check_separating, QSpace};
use crate::equivalence::{star, Equivalence, StarFamily};
use crate::order::{BoundedJoinSemilattice, FiniteLattice, FinitePoset};
use crate::set_algebra::SetAlgebra;
use crate::subset;

pub const DEFAULT_CAP: usize = 4096;

/// Largest lattice size accepted by [`enumerate_algebras`].
pub const MAX_LATTICE_SIZE: usize = 6;
/// Largest point count accepted by [`enumerate_qspaces`].
pub const MAX_QSPACE_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("carrier would have {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("value lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("enumeration bound {requested} exceeds the limit {limit}")]
    GuardExceeded { requested: usize, limit: usize },
    #[error("star identity fails for variable sets {0} and {1}")]
    StarIdentity(String, String),
}

/// A generated algebra with human-readable element names.
#[derive(Debug, Clone)]
pub struct Generated {
    pub algebra: InfoAlgebra,
    pub element_labels: Vec<String>,
}

fn check_cap(size: Option<usize>, cap: usize) -> Result<usize, GenError> {
    match size {
        Some(s) if s <= cap => Ok(s),
        Some(s) => Err(GenError::CapExceeded { size: s, cap }),
        None => Err(GenError::CapExceeded { size: usize::MAX, cap }),
    }
}

fn letter(i: usize) -> char {
    char::from_u32('a' as u32 + i as u32).unwrap_or('?')
}

fn set_label(vars: &[usize]) -> String {
    let items: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Strings of length `≤ n` over `k` letters, ordered by length then
/// lexicographically, followed by `0`. Combination keeps the longer of two
/// prefix-comparable strings and is `0` otherwise; `e{m}` truncates to
/// length `m`.
pub fn gen_string(k: usize, n: usize, cap: usize) -> Result<Generated, GenError> {
    if k == 0 || n == 0 {
        return Err(GenError::InvalidParameter("alphabet size and length must be positive".into()));
    }
    let count = (0..=n as u32)
        .try_fold(1usize, |acc, len| k.checked_pow(len).and_then(|p| acc.checked_add(p)));
    let size = check_cap(count, cap)?;
    let mut strings: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|s| {
                (0..k).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
        strings.extend(layer.iter().cloned());
    }
    let zero = strings.len();
    debug_assert_eq!(zero + 1, size);
    let index: std::collections::HashMap<&[usize], usize> =
        strings.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let join: Vec<usize> = (0..size * size)
        .map(|c| {
            let (r, s) = (c / size, c % size);
            if r == zero || s == zero {
                zero
            } else if strings[s].starts_with(&strings[r]) {
                s
            } else if strings[r].starts_with(&strings[s]) {
                r
            } else {
                zero
            }
        })
        .collect();
    let sl = BoundedJoinSemilattice::from_trusted_join(join, size, 0, zero);
    let extractors = (0..=n)
        .map(|m| {
            let map = (0..size)
                .map(|x| if x == zero { zero } else { index[&strings[x][..m.min(strings[x].len())]] })
                .collect();
            Extractor::new(format!("e{m}"), map)
        })
        .collect();
    let algebra = InfoAlgebra::new(sl, extractors).expect("truncations are distinct");
    let mut element_labels: Vec<String> = strings
        .iter()
        .map(|s| if s.is_empty() { "ε".to_string() } else { s.iter().map(|&c| letter(c)).collect() })
        .collect();
    element_labels.push("0".into());
    Ok(Generated { algebra, element_labels })
}

/// The multivariate set algebra over a finite product of domains.
#[derive(Debug, Clone)]
pub struct Multivariate {
    pub set_algebra: SetAlgebra,
    pub algebra: InfoAlgebra,
    /// Universe points as value tuples, in lexicographic order.
    pub tuples: Vec<Vec<usize>>,
    /// Variable set of each equivalence, aligned with the family's members.
    pub variable_sets: Vec<Vec<usize>>,
}

fn product_tuples(domains: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in domains {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
    }
    out
}

fn variable_subsets(d: usize) -> Vec<Vec<usize>> {
    (0u64..1 << d)
        .map(|m| (0..d).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Power set of `V₁×…×V_d` combined by ∩, with `≡_s` for every variable set
/// `s`. The identity `≡_s ⋆ ≡_r = ≡_{s∩r}` is checked for all pairs.
pub fn gen_multivariate(domains: &[usize], cap: usize) -> Result<Multivariate, GenError> {
    if domains.is_empty() || domains.contains(&0) || domains.len() > 16 {
        return Err(GenError::InvalidParameter("need 1 to 16 nonempty domains".into()));
    }
    let points = check_cap(domains.iter().try_fold(1usize, |a, &d| a.checked_mul(d)), cap)?;
    let size = if points < usize::BITS as usize { Some(1usize << points) } else { None };
    check_cap(size, cap)?;
    let tuples = product_tuples(domains);
    let by_vars = |s: &[usize]| Equivalence::from_key(points, |u| s.iter().map(|&i| tuples[u][i]).collect::<Vec<_>>());
    let subsets = variable_subsets(domains.len());
    for r in &subsets {
        for s in &subsets {
            let both: Vec<usize> = r.iter().copied().filter(|i| s.contains(i)).collect();
            if star(&by_vars(r), &by_vars(s)).ok() != Some(by_vars(&both)) {
                return Err(GenError::StarIdentity(set_label(r), set_label(s)));
            }
        }
    }
    let mut members = Vec::new();
    let mut labels = Vec::new();
    let mut variable_sets = Vec::new();
    for s in subsets {
        let eq = by_vars(&s);
        if !members.contains(&eq) {
            members.push(eq);
            labels.push(set_label(&s));
            variable_sets.push(s);
        }
    }
    let eqs = StarFamily::new(points, members, labels).expect("closed by the star identity");
    let set_algebra = SetAlgebra::new(points, subset::all_subsets(points).collect(), eqs)
        .expect("the power set is closed under everything");
    let algebra = set_algebra.to_info_algebra();
    Ok(Multivariate { set_algebra, algebra, tuples, variable_sets })
}

/// Maps `V → Λ` combined by pointwise meet, with
/// `ε_s(φ)(t) = ⋁{φ(u) : u agrees with t on s}`. Element indices encode the
/// value vector in base `|Λ|`, first tuple most significant.
pub fn gen_lattice_valued(domains: &[usize], lambda: &FiniteLattice, cap: usize) -> Result<Generated, GenError> {
    if domains.contains(&0) || domains.len() > 16 || lambda.len() < 2 {
        return Err(GenError::InvalidParameter("need nonempty domains and at least two values".into()));
    }
    lambda
        .is_distributive()
        .map_err(|(a, b, c)| GenError::NotDistributive(a, b, c))?;
    let points = check_cap(domains.iter().try_fold(1usize, |a, &d| a.checked_mul(d)), cap)?;
    let q = lambda.len();
    let size = check_cap(q.checked_pow(points as u32), cap)?;
    let tuples = product_tuples(domains);
    let decode = |x: usize| -> Vec<usize> {
        let mut digits = vec![0; points];
        let mut rest = x;
        for t in (0..points).rev() {
            digits[t] = rest % q;
            rest /= q;
        }
        digits
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * q + d);
    let values: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let join: Vec<usize> = (0..size * size)
        .map(|c| {
            let (a, b) = (&values[c / size], &values[c % size]);
            let m: Vec<usize> = (0..points).map(|t| lambda.meet(a[t], b[t])).collect();
            encode(&m)
        })
        .collect();
    let unit = encode(&vec![lambda.top(); points]);
    let zero = encode(&vec![lambda.bottom(); points]);
    let sl = BoundedJoinSemilattice::from_trusted_join(join, size, unit, zero);

    let mut extractors: Vec<Extractor> = Vec::new();
    for s in variable_subsets(domains.len()) {
        let agree = Equivalence::from_key(points, |u| s.iter().map(|&i| tuples[u][i]).collect::<Vec<_>>());
        let blocks = agree.blocks();
        let map: Vec<usize> = values
            .iter()
            .map(|v| {
                let sup: Vec<usize> = blocks
                    .iter()
                    .map(|b| b.ones().fold(lambda.bottom(), |acc, u| lambda.join(acc, v[u])))
                    .collect();
                encode(&(0..points).map(|t| sup[agree.block_of(t)]).collect::<Vec<_>>())
            })
            .collect();
        if !extractors.iter().any(|e| e.map == map) {
            extractors.push(Extractor::new(set_label(&s), map));
        }
    }
    let algebra = InfoAlgebra::new(sl, extractors).expect("maps deduplicated");
    let element_labels = values
        .iter()
        .map(|v| format!("[{}]", v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok(Generated { algebra, element_labels })
}

/// Every order-preserving bijection of a poset onto itself.
pub fn automorphisms(poset: &FinitePoset) -> Vec<Vec<usize>> {
    let n = poset.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(p: &FinitePoset, pos: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if pos == perm.len() {
            out.push(perm.clone());
            return;
        }
        for img in 0..perm.len() {
            if used[img] {
                continue;
            }
            let ok = (0..pos).all(|q| p.leq(q, pos) == p.leq(perm[q], img) && p.leq(pos, q) == p.leq(img, perm[q]));
            if ok {
                perm[pos] = img;
                used[img] = true;
                go(p, pos + 1, perm, used, out);
                used[img] = false;
            }
        }
        perm[pos] = usize::MAX;
    }
    go(poset, 0, &mut perm, &mut used, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Row-major bit encoding of an order after relabelling by `perm`.
fn order_code(poset: &FinitePoset, perm: &[usize]) -> Vec<bool> {
    let n = poset.len();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    (0..n * n).map(|c| poset.leq(inv[c / n], inv[c % n])).collect()
}

fn all_labelled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel = |a: usize, b: usize| {
            a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|i| mask >> i & 1 == 1)
        };
        if let Ok(p) = FinitePoset::from_relation(n, rel) {
            out.push(p);
        }
    }
    out
}

/// All posets on exactly `n` points up to isomorphism, each relabelled so
/// that its code is minimal.
pub fn posets(n: usize) -> Vec<FinitePoset> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in all_labelled_posets(n) {
        let (code, perm) = perms
            .iter()
            .map(|perm| (order_code(&p, perm), perm))
            .min()
            .expect("at least one permutation");
        if seen.insert(code) {
            let mut inv = vec![0; n];
            for (i, &x) in perm.iter().enumerate() {
                inv[x] = i;
            }
            out.push(FinitePoset::from_relation(n, |a, b| p.leq(inv[a], inv[b])).expect("relabelled order"));
        }
    }
    out
}

/// Bounded lattices with exactly `n ≥ 2` elements up to isomorphism; bottom
/// is index 0 and top index `n−1`.
pub fn lattices_of_size(n: usize, distributive_only: bool) -> Vec<FiniteLattice> {
    if n < 2 {
        return Vec::new();
    }
    let inner = n - 2;
    let mut out = Vec::new();
    for p in posets(inner) {
        let poset = FinitePoset::from_relation(n, |a, b| a == b || a == 0 || b == n - 1 || (a > 0 && b > 0 && a < n - 1 && b < n - 1 && p.leq(a - 1, b - 1)))
            .expect("bounded extension of an order");
        let Ok(sl) = BoundedJoinSemilattice::from_poset(poset) else { continue };
        let Ok(lat) = FiniteLattice::from_semilattice(sl) else { continue };
        if !distributive_only || lat.is_distributive().is_ok() {
            out.push(lat);
        }
    }
    out
}

/// Distributive lattices with 2 to `max_n` elements.
pub fn distributive_lattices(max_n: usize) -> Result<Vec<FiniteLattice>, GenError> {
    if max_n > MAX_LATTICE_SIZE {
        return Err(GenError::GuardExceeded { requested: max_n, limit: MAX_LATTICE_SIZE });
    }
    Ok((2..=max_n).flat_map(|n| lattices_of_size(n, true)).collect())
}

/// Every extraction operator on `sl` (N, A, Q, idempotent), optionally
/// restricted to those preserving the meets of `meet`.
pub fn extraction_operators(sl: &BoundedJoinSemilattice, meet: Option<&FiniteLattice>) -> Vec<Vec<usize>> {
    let n = sl.len();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    fn go(
        sl: &BoundedJoinSemilattice,
        meet: Option<&FiniteLattice>,
        phi: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = sl.len();
        if phi == n {
            if is_extraction_operator(sl, map) && meet.is_none_or(|l| preserves_meets(l, map)) {
                out.push(map.clone());
            }
            return;
        }
        let candidates: Vec<usize> = if phi == sl.zero() {
            vec![phi]
        } else {
            sl.poset().principal_down_set(phi).ones().collect()
        };
        for c in candidates {
            map[phi] = c;
            go(sl, meet, phi + 1, map, out);
        }
    }
    go(sl, meet, 0, &mut map, &mut out);
    out
}

fn is_extraction_operator(sl: &BoundedJoinSemilattice, map: &[usize]) -> bool {
    let n = sl.len();
    map[sl.zero()] == sl.zero()
        && (0..n).all(|p| sl.leq(map[p], p) && map[map[p]] == map[p])
        && (0..n).all(|p| (0..n).all(|q| map[sl.join(map[p], q)] == sl.join(map[p], map[q])))
}

fn preserves_meets(lat: &FiniteLattice, map: &[usize]) -> bool {
    let n = lat.len();
    (0..n).all(|p| (p + 1..n).all(|q| map[lat.meet(p, q)] == lat.meet(map[p], map[q])))
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

/// Nonempty, pairwise commuting, ∘-closed sets of the given operators (as
/// index sets into `ops`).
pub fn operator_families(ops: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = ops.len();
    let commute: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| compose(&ops[i], &ops[j]) == compose(&ops[j], &ops[i])).collect())
        .collect();
    let index: std::collections::HashMap<&[usize], usize> =
        ops.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let product: Vec<Vec<Option<usize>>> = (0..k)
        .map(|i| (0..k).map(|j| index.get(compose(&ops[i], &ops[j]).as_slice()).copied()).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        pos: usize,
        chosen: &mut Vec<usize>,
        commute: &[Vec<bool>],
        product: &[Vec<Option<usize>>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == commute.len() {
            let closed = chosen.iter().all(|&i| {
                chosen.iter().all(|&j| product[i][j].is_some_and(|c| chosen.contains(&c)))
            });
            if closed && !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        go(pos + 1, chosen, commute, product, out);
        if chosen.iter().all(|&c| commute[c][pos]) {
            chosen.push(pos);
            go(pos + 1, chosen, commute, product, out);
            chosen.pop();
        }
    }
    go(0, &mut chosen, &commute, &product, &mut out);
    out
}

/// Every distributive lattice with at most `max_n` elements paired with
/// every closed commuting family of meet-preserving extraction operators,
/// up to lattice automorphism.
pub fn enumerate_algebras(max_n: usize) -> Result<Vec<InfoAlgebra>, GenError> {
    let mut out = Vec::new();
    for lat in distributive_lattices(max_n)? {
        let sl = lat.semilattice();
        let ops = extraction_operators(sl, Some(&lat));
        let autos = automorphisms(sl.poset());
        let mut seen = HashSet::new();
        for family in operator_families(&ops) {
            let key = autos
                .iter()
                .map(|pi| {
                    let mut inv = vec![0; pi.len()];
                    for (i, &p) in pi.iter().enumerate() {
                        inv[p] = i;
                    }
                    let mut maps: Vec<Vec<usize>> = family
                        .iter()
                        .map(|&f| (0..pi.len()).map(|x| pi[ops[f][inv[x]]]).collect())
                        .collect();
                    maps.sort();
                    maps
                })
                .min()
                .expect("identity automorphism");
            if seen.insert(key) {
                let exts = family
                    .iter()
                    .enumerate()
                    .map(|(i, &f)| Extractor::new(format!("e{i}"), ops[f].clone()))
                    .collect();
                out.push(InfoAlgebra::new(sl.clone(), exts).expect("distinct operators"));
            }
        }
    }
    Ok(out)
}

/// Every equivalence on the poset that is separating.
pub fn separating_equivalences(poset: &FinitePoset) -> Vec<Equivalence> {
    crate::equivalence::all_equivalences(poset.len())
        .into_iter()
        .filter(|e| check_separating(poset, e).is_ok())
        .collect()
}

/// Every poset with 1 to `max_points` points paired with every nonempty
/// ⋆-closed family of separating equivalences, up to order automorphism.
pub fn enumerate_qspaces(max_points: usize) -> Result<Vec<QSpace>, GenError> {
    if max_points > MAX_QSPACE_POINTS {
        return Err(GenError::GuardExceeded { requested: max_points, limit: MAX_QSPACE_POINTS });
    }
    let mut out = Vec::new();
    for m in 1..=max_points {
        for poset in posets(m) {
            let candidates = separating_equivalences(&poset);
            let autos = automorphisms(&poset);
            let mut seen = HashSet::new();
            for family in star_families(&candidates) {
                let key = autos
                    .iter()
                    .map(|pi| {
                        let mut ids: Vec<Equivalence> = family
                            .iter()
                            .map(|&f| {
                                let mut moved = vec![0; m];
                                for x in 0..m {
                                    moved[pi[x]] = candidates[f].block_of(x);
                                }
                                Equivalence::from_block_ids(&moved)
                            })
                            .collect();
                        ids.sort();
                        ids
                    })
                    .min()
                    .expect("identity automorphism");
                if seen.insert(key) {
                    let members: Vec<Equivalence> = family.iter().map(|&f| candidates[f].clone()).collect();
                    let labels = (0..members.len()).map(|i| format!("t{i}")).collect();
                    let eqs = StarFamily::new(m, members, labels).expect("closed family");
                    out.push(QSpace::new(poset.clone(), eqs).expect("separating members"));
                }
            }
        }
    }
    Ok(out)
}

/// Nonempty, pairwise commuting, ⋆-closed subsets of `eqs`.
fn star_families(eqs: &[Equivalence]) -> Vec<Vec<usize>> {
    let k = eqs.len();
    let product: Vec<Vec<Option<usize>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| star(&eqs[i], &eqs[j]).ok().and_then(|p| eqs.iter().position(|e| *e == p)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(pos: usize, chosen: &mut Vec<usize>, product: &[Vec<Option<usize>>], out: &mut Vec<Vec<usize>>) {
        if pos == product.len() {
            let closed = chosen
                .iter()
                .all(|&i| chosen.iter().all(|&j| product[i][j].is_some_and(|c| chosen.contains(&c))));
            if closed && !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        go(pos + 1, chosen, product, out);
        // A non-commuting or non-separating product can never be repaired.
        if chosen.iter().all(|&c| product[c][pos].is_some()) {
            chosen.push(pos);
            go(pos + 1, chosen, product, out);
            chosen.pop();
        }
    }
    go(0, &mut chosen, &product, &mut out);
    out
}

/// All homomorphisms `a → b`, up to `limit` of them. Meets are checked when
/// both algebras are distributive CDFs.
pub fn homomorphisms(a: &InfoAlgebra, b: &InfoAlgebra, limit: usize) -> Vec<AlgebraMorphism> {
    let meets = match (is_distributive_cdf(a), is_distributive_cdf(b)) {
        (Ok(la), Ok(lb)) => Some((la, lb)),
        _ => None,
    };
    let (n, k) = (a.len(), a.num_extractors());
    let mut out = Vec::new();
    let mut f = vec![0; n];
    let mut fs = Vec::new();
    fn go_f(a: &InfoAlgebra, b: &InfoAlgebra, x: usize, f: &mut Vec<usize>, fs: &mut Vec<Vec<usize>>) {
        if x == f.len() {
            fs.push(f.clone());
            return;
        }
        let fixed = if x == a.unit() {
            Some(b.unit())
        } else if x == a.zero() {
            Some(b.zero())
        } else {
            None
        };
        for y in fixed.map_or(0..b.len(), |v| v..v + 1) {
            f[x] = y;
            let ok = (0..=x).all(|w| {
                (0..=x).all(|v| {
                    let j = a.join(w, v);
                    j > x || (w != x && v != x && j != x) || f[j] == b.join(f[w], f[v])
                })
            });
            if ok {
                go_f(a, b, x + 1, f, fs);
            }
        }
    }
    go_f(a, b, 0, &mut f, &mut fs);
    let gs: Vec<Vec<usize>> = (0..b.num_extractors().checked_pow(k as u32).unwrap_or(usize::MAX).min(1 << 20))
        .map(|code| {
            let mut rest = code;
            (0..k)
                .map(|_| {
                    let d = rest % b.num_extractors().max(1);
                    rest /= b.num_extractors().max(1);
                    d
                })
                .collect()
        })
        .collect();
    for f in fs {
        for g in &gs {
            let m = AlgebraMorphism { f: f.clone(), g: g.clone() };
            if check_homomorphism(&m, a, b, meets.as_ref().map(|(x, y)| (x, y))).is_ok() {
                out.push(m);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}
