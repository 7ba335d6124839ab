use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::ceil_root;

/// Leafsize value of the recurrence: finite entries grow past u64 quickly
/// (already ~6e20 at depth 2 with 64 variables), so values are arbitrary
/// precision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BetaValue {
    Finite(BigUint),
    Infinite,
}

impl BetaValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, BetaValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            BetaValue::Finite(v) => Some(v),
            BetaValue::Infinite => None,
        }
    }

    pub fn to_display(&self) -> String {
        match self {
            BetaValue::Finite(v) => v.to_string(),
            BetaValue::Infinite => "inf".to_string(),
        }
    }
}

impl PartialOrd for BetaValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BetaValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use BetaValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

/// A tabulated entry: the exact minimum together with the top-level block
/// composition that achieves it (sorted nonincreasing; among minimizers the
/// lexicographically largest such composition). Infinite entries carry an
/// empty composition.
#[derive(Clone, Debug)]
pub struct BetaEntry {
    pub value: BetaValue,
    pub composition: Vec<u32>,
}

/// Memoized exact dynamic program for the depth/leafsize recurrence
///
///   beta(1,1) = 1,  beta(1,n) = inf for n > 1,
///   beta(D,n) = min over k and n_1+...+n_k = n of 2^{k-1} * sum beta(D-1,n_i).
pub struct BetaTable {
    cap_depth: u32,
    cap_n: u32,
    memo: HashMap<(u32, u32), BetaEntry>,
}

impl Default for BetaTable {
    fn default() -> Self {
        BetaTable::new()
    }
}

impl BetaTable {
    pub fn new() -> Self {
        BetaTable::with_caps(6, 64)
    }

    pub fn with_caps(cap_depth: u32, cap_n: u32) -> Self {
        BetaTable {
            cap_depth,
            cap_n,
            memo: HashMap::new(),
        }
    }

    pub fn beta(&mut self, depth: u32, n: u32) -> Result<BetaEntry> {
        if depth < 1 || n < 1 {
            return Err(Error::Domain(format!(
                "recurrence needs depth >= 1 and n >= 1, got ({depth}, {n})"
            )));
        }
        if depth > self.cap_depth {
            return Err(Error::CapExceeded {
                what: "beta table depth",
                limit: self.cap_depth as usize,
                got: depth as usize,
            });
        }
        if n > self.cap_n {
            return Err(Error::CapExceeded {
                what: "beta table variable count",
                limit: self.cap_n as usize,
                got: n as usize,
            });
        }
        if let Some(e) = self.memo.get(&(depth, n)) {
            return Ok(e.clone());
        }
        let entry = self.compute(depth, n)?;
        self.memo.insert((depth, n), entry.clone());
        Ok(entry)
    }

    fn compute(&mut self, depth: u32, n: u32) -> Result<BetaEntry> {
        if depth == 1 {
            return Ok(if n == 1 {
                BetaEntry {
                    value: BetaValue::Finite(BigUint::one()),
                    composition: vec![1],
                }
            } else {
                BetaEntry {
                    value: BetaValue::Infinite,
                    composition: vec![],
                }
            });
        }
        let n = n as usize;
        // Leafsize of each block at the previous depth; None encodes inf.
        let mut block: Vec<Option<BigUint>> = vec![None; n + 1];
        for j in 1..=n {
            block[j] = self
                .beta(depth - 1, j as u32)?
                .value
                .finite()
                .cloned();
        }
        // sums[k][r]: min sum of k block values totalling r variables.
        let mut sums: Vec<Vec<Option<BigUint>>> = vec![vec![None; n + 1]; n + 1];
        sums[0][0] = Some(BigUint::zero());
        for k in 1..=n {
            for r in k..=n {
                let mut best: Option<BigUint> = None;
                for j in 1..=(r - k + 1) {
                    if let (Some(bj), Some(rest)) = (&block[j], &sums[k - 1][r - j]) {
                        let cand = bj + rest;
                        if best.as_ref().map_or(true, |b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                }
                sums[k][r] = best;
            }
        }
        let mut best: Option<BigUint> = None;
        for k in 1..=n {
            if let Some(s) = &sums[k][n] {
                let total = s << (k - 1);
                if best.as_ref().map_or(true, |b| total < *b) {
                    best = Some(total);
                }
            }
        }
        let value = best.expect("depth >= 2 always admits the all-singletons split");

        // Among all minimizing (k, parts), reconstruct the lexicographically
        // largest nonincreasing composition via a part-size-capped variant
        // of the same program.
        let mut capped: HashMap<(usize, usize, usize), Option<BigUint>> = HashMap::new();
        let mut best_comp: Option<Vec<u32>> = None;
        for k in 1..=n {
            let achieves = match &sums[k][n] {
                Some(s) => (s << (k - 1)) == value,
                None => false,
            };
            if !achieves {
                continue;
            }
            let comp = reconstruct(k, n, &block, &mut capped);
            if best_comp.as_ref().map_or(true, |b| comp > *b) {
                best_comp = Some(comp);
            }
        }
        Ok(BetaEntry {
            value: BetaValue::Finite(value),
            composition: best_comp.expect("a minimizer exists"),
        })
    }
}

/// Minimum block-value sum over exactly k parts totalling r, each part of
/// size at most cap.
fn capped_min(
    k: usize,
    r: usize,
    cap: usize,
    block: &[Option<BigUint>],
    memo: &mut HashMap<(usize, usize, usize), Option<BigUint>>,
) -> Option<BigUint> {
    if k == 0 {
        return if r == 0 { Some(BigUint::zero()) } else { None };
    }
    if r < k || cap == 0 {
        return None;
    }
    let cap = cap.min(r);
    if let Some(v) = memo.get(&(k, r, cap)) {
        return v.clone();
    }
    let skip = capped_min(k, r, cap - 1, block, memo);
    let take = match (&block[cap], capped_min(k - 1, r - cap, cap, block, memo)) {
        (Some(b), Some(rest)) => Some(b + rest),
        _ => None,
    };
    let best = match (skip, take) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    memo.insert((k, r, cap), best.clone());
    best
}

fn reconstruct(
    k: usize,
    n: usize,
    block: &[Option<BigUint>],
    memo: &mut HashMap<(usize, usize, usize), Option<BigUint>>,
) -> Vec<u32> {
    let mut parts = Vec::with_capacity(k);
    let mut k = k;
    let mut r = n;
    let mut cap = n;
    let mut target = capped_min(k, r, cap, block, memo).expect("k was checked feasible");
    while k > 0 {
        let hi = cap.min(r - (k - 1));
        let mut chosen = None;
        for j in (1..=hi).rev() {
            if let (Some(bj), Some(rest)) = (&block[j], capped_min(k - 1, r - j, j, block, memo))
            {
                if bj + &rest == target {
                    chosen = Some((j, rest));
                    break;
                }
            }
        }
        let (j, rest) = chosen.expect("feasible state always has a feasible largest part");
        parts.push(j as u32);
        k -= 1;
        r -= j;
        cap = j;
        target = rest;
    }
    parts
}

/// Bound realized by the construction in the fixed split regime: k =
/// ceil(n^{1/(D-1)}) blocks of balanced sizes, applied recursively. This is
/// at most n * 2^{(D-1) * n^{1/(D-1)}}, and exactly n * 2^{(D-1)(n^{1/(D-1)}-1)}
/// when the root is an integer.
pub fn closed_form_leafsize(depth: u32, n: u32) -> BetaValue {
    if n == 1 {
        return BetaValue::Finite(BigUint::one());
    }
    if depth == 1 {
        return BetaValue::Infinite;
    }
    let comp = closed_form_composition(depth - 1, n);
    let mut total = BigUint::zero();
    for part in &comp {
        match closed_form_leafsize(depth - 1, *part) {
            BetaValue::Finite(v) => total += v,
            BetaValue::Infinite => return BetaValue::Infinite,
        }
    }
    BetaValue::Finite(total << (comp.len() - 1))
}

/// Balanced split with k = ceil(n^{1/d_inner}) parts, larger parts first.
pub fn closed_form_composition(d_inner: u32, n: u32) -> Vec<u32> {
    let k = ceil_root(n as u64, d_inner) as u32;
    let small = n / k;
    let bigger = n % k;
    let mut comp = vec![small + 1; bigger as usize];
    comp.extend(std::iter::repeat(small).take((k - bigger) as usize));
    comp
}
