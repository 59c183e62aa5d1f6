//! Membership bit-vectors over a finite universe `0..n`.

use fixedbitset::FixedBitSet;

/// A subset of `0..n`, stored as a bit-vector of length `n`.
pub type Subset = FixedBitSet;

pub fn empty(n: usize) -> Subset {
    FixedBitSet::with_capacity(n)
}

pub fn full(n: usize) -> Subset {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn singleton(n: usize, x: usize) -> Subset {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(x);
    s
}

pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Subset {
    let mut s = FixedBitSet::with_capacity(n);
    for x in items {
        s.insert(x);
    }
    s
}

pub fn from_mask(n: usize, mask: u64) -> Subset {
    debug_assert!(n <= 64);
    from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

pub fn to_vec(s: &Subset) -> Vec<usize> {
    s.ones().collect()
}

pub fn intersection(a: &Subset, b: &Subset) -> Subset {
    let mut s = a.clone();
    s.intersect_with(b);
    s
}

pub fn union(a: &Subset, b: &Subset) -> Subset {
    let mut s = a.clone();
    s.union_with(b);
    s
}

pub fn complement(a: &Subset) -> Subset {
    let mut s = a.clone();
    s.toggle_range(..);
    s
}

/// Preimage of `target` (a subset of the codomain) under `map`.
pub fn preimage(map: &[usize], target: &Subset) -> Subset {
    from_indices(
        map.len(),
        map.iter()
            .enumerate()
            .filter(|(_, &y)| target.contains(y))
            .map(|(x, _)| x),
    )
}

/// Renders `{0,2,5}` style text, mostly for reports.
pub fn display(s: &Subset) -> String {
    let items: Vec<String> = s.ones().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Every subset of `0..n`, in mask order. Only sensible for small `n`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n < 64, "power set of {n} points is too large to enumerate");
    (0u64..1 << n).map(move |m| from_mask(n, m))
}
