#![allow(dead_code)]

use std::collections::BTreeSet;

use infalg::equivalence::Equivalence;
use infalg::generators::{gen_lattice_valued, gen_multivariate, gen_string, DEFAULT_CAP};
use infalg::order::FiniteLattice;
use infalg::InfoAlgebra;

/// The algebras produced by the example generators, with a name each.
pub fn generated() -> Vec<(String, InfoAlgebra)> {
    let mut out = Vec::new();
    for (k, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2)] {
        out.push((format!("string({k},{n})"), gen_string(k, n, DEFAULT_CAP).unwrap().algebra));
    }
    for d in [vec![1], vec![2], vec![3], vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
        out.push((format!("multivariate({d:?})"), gen_multivariate(&d, DEFAULT_CAP).unwrap().algebra));
    }
    let lattices = [
        ("chain2", FiniteLattice::chain(2)),
        ("chain3", FiniteLattice::chain(3)),
        ("chain4", FiniteLattice::chain(4)),
        ("boolean2", FiniteLattice::power_set(2)),
    ];
    for (d, (name, lat)) in [
        (vec![2], &lattices[1]),
        (vec![2], &lattices[2]),
        (vec![3], &lattices[0]),
        (vec![3], &lattices[1]),
        (vec![2], &lattices[3]),
        (vec![2, 2], &lattices[0]),
        (vec![2, 2], &lattices[1]),
    ] {
        out.push((
            format!("lattice_valued({d:?},{name})"),
            gen_lattice_valued(&d, lat, DEFAULT_CAP).unwrap().algebra,
        ));
    }
    out
}

/// `{(x, z) : ∃y x Θ y Γ z}` by direct search.
pub fn relational_product(theta: &Equivalence, gamma: &Equivalence) -> BTreeSet<(usize, usize)> {
    let n = theta.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if theta.block_of(x) != theta.block_of(y) {
                continue;
            }
            for z in 0..n {
                if gamma.block_of(y) == gamma.block_of(z) {
                    out.insert((x, z));
                }
            }
        }
    }
    out
}

pub fn pairs_of(e: &Equivalence) -> BTreeSet<(usize, usize)> {
    let n = e.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| e.block_of(x) == e.block_of(y))
        .collect()
}

/// Every partial order on `0..n` as a `leq` table, by filtering all
/// reflexive relations.
pub fn labelled_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off.len() {
        let mut t = vec![vec![false; n]; n];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(a, b)) in off.iter().enumerate() {
            t[a][b] = mask >> k & 1 == 1;
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(t[a][b] && t[b][a])));
        let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(t[a][b] && t[b][c]) || t[a][c])));
        if antisym && trans {
            out.push(t);
        }
    }
    out
}

/// All partitions of `0..n` as block-id arrays (restricted growth strings).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    go(&mut prefix, 0, n, &mut out);
    out
}

/// `σ(X)` over bitmasks from a block-id array.
pub fn saturate_mask(ids: &[usize], x: u32) -> u32 {
    let hit: BTreeSet<usize> = (0..ids.len()).filter(|&i| x >> i & 1 == 1).map(|i| ids[i]).collect();
    (0..ids.len()).filter(|&i| hit.contains(&ids[i])).fold(0, |acc, i| acc | 1 << i)
}

/// Up-sets of a `leq` table as bitmasks.
pub fn up_set_masks(leq: &[Vec<bool>]) -> Vec<u32> {
    let n = leq.len();
    (0u32..1 << n)
        .filter(|&u| (0..n).all(|a| u >> a & 1 == 0 || (0..n).all(|b| !leq[a][b] || u >> b & 1 == 1)))
        .collect()
}

/// Separation straight from the definition on bitmasks.
pub fn separating_oracle(leq: &[Vec<bool>], ids: &[usize]) -> bool {
    let n = leq.len();
    let ups = up_set_masks(leq);
    if ups.iter().any(|&u| !ups.contains(&saturate_mask(ids, u))) {
        return false;
    }
    let saturated: Vec<u32> = ups.iter().copied().filter(|&u| saturate_mask(ids, u) == u).collect();
    (0..n).all(|p| {
        (0..n).all(|q| ids[p] == ids[q] || saturated.iter().any(|&u| (u >> p & 1) != (u >> q & 1)))
    })
}
