use std::fmt;

use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::parallel;

/// Enumeration cap for minimum-weight searches (2^dim elements scanned).
pub const MIN_WEIGHT_DIM_CAP: usize = 28;

/// A linear subspace of {0,1}^n in canonical reduced row-echelon form.
///
/// Basis rows have strictly increasing leading columns and every leading
/// column is 1 in exactly one row, so two subspaces are equal iff their
/// bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<BitVec>,
}

impl Subspace {
    /// The zero subspace {0}.
    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    /// The full space {0,1}^n.
    pub fn full(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVec::unit(n, i)).collect();
        Subspace { n, rows }
    }

    /// Canonical subspace spanned by `rows`. Deterministic for any input order.
    pub fn span(n: usize, rows: &[BitVec]) -> Result<Self> {
        let mut basis: Vec<BitVec> = Vec::new();
        for r in rows {
            if r.dim() != n {
                return Err(Error::DimMismatch {
                    left: n,
                    right: r.dim(),
                });
            }
            let mut cur = r.clone();
            for b in &basis {
                let p = b.leading_one().expect("basis rows are nonzero");
                if cur.get(p) {
                    cur.xor_in_place(b);
                }
            }
            if !cur.is_zero() {
                let p = cur.leading_one().unwrap();
                for b in basis.iter_mut() {
                    if b.get(p) {
                        b.xor_in_place(&cur);
                    }
                }
                basis.push(cur);
                basis.sort_by_key(|b| b.leading_one().unwrap());
            }
        }
        Ok(Subspace { n, rows: basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after elimination against the basis; zero iff contained.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec> {
        if v.dim() != self.n {
            return Err(Error::DimMismatch {
                left: self.n,
                right: v.dim(),
            });
        }
        let mut cur = v.clone();
        for b in &self.rows {
            let p = b.leading_one().unwrap();
            if cur.get(p) {
                cur.xor_in_place(b);
            }
        }
        Ok(cur)
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subspace spanned by both arguments.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Subspace::span(self.n, &rows)
    }

    /// Intersection, computed through duals: (A ∩ B) = (A^⊥ + B^⊥)^⊥.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Orthogonal complement, in canonical form.
    pub fn dual(&self) -> Subspace {
        let mut is_pivot = vec![false; self.n];
        let pivots: Vec<usize> = self
            .rows
            .iter()
            .map(|r| r.leading_one().unwrap())
            .collect();
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut gens = Vec::with_capacity(self.n - self.rows.len());
        for j in 0..self.n {
            if is_pivot[j] {
                continue;
            }
            let mut v = BitVec::unit(self.n, j);
            for (row, &p) in self.rows.iter().zip(&pivots) {
                if row.get(j) {
                    v.set(p, true);
                }
            }
            gens.push(v);
        }
        Subspace::span(self.n, &gens).expect("kernel generators share the ambient dim")
    }

    /// The element indexed by the bits of `index` over the basis rows.
    pub fn element(&self, index: u64) -> BitVec {
        debug_assert!(self.rows.len() < 64);
        debug_assert!(index < (1u64 << self.rows.len()));
        let mut v = BitVec::zero(self.n);
        for (b, row) in self.rows.iter().enumerate() {
            if (index >> b) & 1 == 1 {
                v.xor_in_place(row);
            }
        }
        v
    }

    /// Iterates over all 2^dim elements. Caller is responsible for keeping
    /// dim small enough to enumerate.
    pub fn elements(&self) -> impl Iterator<Item = BitVec> + '_ {
        assert!(self.rows.len() < 64, "subspace too large to enumerate");
        (0..(1u64 << self.rows.len())).map(|i| self.element(i))
    }

    /// Number of elements, 2^dim.
    pub fn len(&self) -> u64 {
        assert!(self.rows.len() < 64);
        1u64 << self.rows.len()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, dim={}, rows=[", self.n, self.dim())?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "])")
    }
}

/// Minimum Hamming weight over A \ B together with the lexicographically
/// smallest witness of that weight.
///
/// B must be a proper subspace of A; the 2^dim(A) elements are enumerated
/// in Gray-code order with a running vector. `jobs` partitions the scan;
/// the (weight, lex) reduction makes the result independent of the count.
pub fn min_weight_in_difference(
    a: &Subspace,
    b: &Subspace,
    jobs: usize,
) -> Result<(usize, BitVec)> {
    if !b.is_subspace_of(a)? {
        return Err(Error::NotContained {
            sub: format!("{b:?}"),
            sup: format!("{a:?}"),
        });
    }
    if a.dim() == b.dim() {
        return Err(Error::EmptyDifference);
    }
    if a.dim() > MIN_WEIGHT_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "min-weight search dimension",
            limit: MIN_WEIGHT_DIM_CAP,
            got: a.dim(),
        });
    }
    let k = a.dim() as u32;
    let total = (1u64 << k) - 1; // skip index 0: the zero vector lies in B
    let best = parallel::run_chunked(total, jobs, |lo, hi| {
        scan_range(a, b, lo + 1, hi + 1)
    })
    .into_iter()
    .flatten()
    .min();
    let (w, v) = best.ok_or(Error::EmptyDifference)?;
    Ok((w, v))
}

fn scan_range(
    a: &Subspace,
    b: &Subspace,
    lo: u64,
    hi: u64,
) -> Option<(usize, BitVec)> {
    if lo >= hi {
        return None;
    }
    let mut cur = a.element(lo ^ (lo >> 1));
    let mut best: Option<(usize, BitVec)> = None;
    let mut i = lo;
    loop {
        let w = cur.weight();
        let improves = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && cur < *bv),
        };
        if improves && !b.contains(&cur).unwrap() {
            best = Some((w, cur.clone()));
        }
        i += 1;
        if i >= hi {
            break;
        }
        // Gray step: moving to index i flips basis bit trailing_zeros(i).
        cur.xor_in_place(&a.basis()[i.trailing_zeros() as usize]);
    }
    best
}

/// All subspaces of {0,1}^n, enumerated as RREF matrices. Intended for
/// exhaustive tests at small n (2825 subspaces already at n = 6).
pub fn enumerate_all_subspaces(n: usize) -> Vec<Subspace> {
    assert!(n <= 6, "subspace enumeration is for tiny dimensions");
    let mut out = Vec::new();
    for pivot_mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&j| (pivot_mask >> j) & 1 == 1).collect();
        // Free entries: (row i, column j) with j > pivot_i and j not a pivot.
        let mut slots = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if (pivot_mask >> j) & 1 == 0 {
                    slots.push((i, j));
                }
            }
        }
        for assignment in 0u64..(1 << slots.len()) {
            let mut rows: Vec<BitVec> = pivots
                .iter()
                .map(|&p| BitVec::unit(n, p))
                .collect();
            for (s, &(i, j)) in slots.iter().enumerate() {
                if (assignment >> s) & 1 == 1 {
                    rows[i].set(j, true);
                }
            }
            out.push(Subspace { n, rows });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Text format: line 1 `n=<int>`, then one 0/1 basis row per line. Blank
// lines and `#` comments are ignored; emitted files carry a format tag
// comment and rows in canonical RREF order.
// ---------------------------------------------------------------------------

pub const SUBSPACE_FORMAT: &str = "subspace/1";

impl Subspace {
    pub fn to_text(&self) -> String {
        let mut s = format!("# format: {SUBSPACE_FORMAT}\nn={}\n", self.n);
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Subspace> {
        let mut n: Option<usize> = None;
        let mut rows = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    let rest = line.strip_prefix("n=").ok_or(Error::Parse {
                        line: lineno,
                        msg: "expected `n=<int>` header".into(),
                    })?;
                    let value: usize = rest.trim().parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("invalid dimension `{rest}`"),
                    })?;
                    n = Some(value);
                }
                Some(dim) => {
                    if line.len() != dim {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("row has {} bits, expected {dim}", line.len()),
                        });
                    }
                    let row = BitVec::parse(line).map_err(|e| match e {
                        Error::Parse { msg, .. } => Error::Parse { line: lineno, msg },
                        other => other,
                    })?;
                    rows.push(row);
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n=<int>` header".into(),
        })?;
        Subspace::span(n, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    fn sp(n: usize, rows: &[&str]) -> Subspace {
        let rows: Vec<BitVec> = rows.iter().map(|s| v(s)).collect();
        Subspace::span(n, &rows).unwrap()
    }

    /// Even-weight subspace of {0,1}^n, used all over the tests.
    fn parity_space(n: usize) -> Subspace {
        Subspace::span(n, &[BitVec::ones(n)]).unwrap().dual()
    }

    #[test]
    fn empty_span_is_zero_subspace() {
        let s = Subspace::span(3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.is_zero());
    }

    #[test]
    fn span_row_reduces_to_canonical_basis() {
        let s = sp(3, &["110", "011", "101"]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[v("101"), v("011")]);
        // Deterministic for any input order.
        let t = sp(3, &["011", "101", "110"]);
        assert_eq!(s, t);
    }

    #[test]
    fn standard_basis_spans_full_space() {
        let s = sp(3, &["100", "010", "001"]);
        assert_eq!(s, Subspace::full(3));
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn sum_of_axes() {
        let a = sp(3, &["100"]);
        let b = sp(3, &["010"]);
        assert_eq!(a.sum(&b).unwrap(), sp(3, &["100", "010"]));
    }

    #[test]
    fn intersect_matches_exhaustive_set_intersection() {
        let p3 = parity_space(3);
        let other = sp(3, &["111", "100"]);
        let got = p3.intersect(&other).unwrap();
        // Oracle: intersect the two element sets over all 8 vectors.
        let mut common = Vec::new();
        for x in Subspace::full(3).elements() {
            if p3.contains(&x).unwrap() && other.contains(&x).unwrap() {
                common.push(x);
            }
        }
        let expect = Subspace::span(3, &common).unwrap();
        assert_eq!(got, expect);
        assert_eq!(got, sp(3, &["011"]));
    }

    #[test]
    fn membership_in_parity_space() {
        let p3 = parity_space(3);
        assert!(p3.contains(&v("110")).unwrap());
        assert!(!p3.contains(&v("100")).unwrap());
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        assert_eq!(Subspace::full(3).dual(), Subspace::zero(3));
    }

    #[test]
    fn dual_of_parity_space_is_all_ones_line() {
        assert_eq!(parity_space(3).dual(), sp(3, &["111"]));
    }

    #[test]
    fn dual_matches_exhaustive_orthogonality() {
        let a = sp(3, &["110", "011"]);
        let mut ortho = Vec::new();
        for x in Subspace::full(3).elements() {
            if a.basis().iter().all(|b| !b.dot(&x).unwrap()) {
                ortho.push(x);
            }
        }
        assert_eq!(a.dual(), Subspace::span(3, &ortho).unwrap());
        assert_eq!(a.dual(), sp(3, &["111"]));
    }

    #[test]
    fn dual_is_an_involution_exhaustively() {
        for n in 1..=4 {
            for s in enumerate_all_subspaces(n) {
                assert_eq!(s.dual().dual(), s);
                assert_eq!(s.dim() + s.dual().dim(), n);
            }
        }
    }

    #[test]
    fn complement_laws_exhaustively_small() {
        let all = enumerate_all_subspaces(3);
        for a in &all {
            for b in &all {
                let sum_dual = a.sum(b).unwrap().dual();
                let dual_cap = a.dual().intersect(&b.dual()).unwrap();
                assert_eq!(sum_dual, dual_cap);
                let sub = a.is_subspace_of(b).unwrap();
                let dual_sub = b.dual().is_subspace_of(&a.dual()).unwrap();
                assert_eq!(sub, dual_sub);
            }
        }
    }

    #[test]
    fn min_weight_parity_dual() {
        // A = P3^⊥ = span{111}, B = (full)^⊥ = {0}: witnessed by the all-1 vector.
        let a = parity_space(3).dual();
        let b = Subspace::full(3).dual();
        let (m, w) = min_weight_in_difference(&a, &b, 1).unwrap();
        assert_eq!(m, 3);
        assert_eq!(w, v("111"));
    }

    #[test]
    fn min_weight_full_minus_line() {
        let a = Subspace::full(3);
        let b = sp(3, &["111"]);
        let (m, w) = min_weight_in_difference(&a, &b, 1).unwrap();
        assert_eq!(m, 1);
        assert_eq!(w, v("100"));
    }

    #[test]
    fn min_weight_empty_difference_errors() {
        let a = sp(3, &["111"]);
        assert!(matches!(
            min_weight_in_difference(&a, &a, 1),
            Err(Error::EmptyDifference)
        ));
        let b = Subspace::full(3);
        assert!(matches!(
            min_weight_in_difference(&a, &b, 1),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn min_weight_matches_naive_scan_and_is_jobs_independent() {
        // Naive oracle: scan all 2^n ambient vectors.
        for n in 2..=5 {
            for a in enumerate_all_subspaces(n) {
                if a.dim() == 0 {
                    continue;
                }
                let b = Subspace::zero(n);
                let naive = Subspace::full(n)
                    .elements()
                    .filter(|x| !x.is_zero() && a.contains(x).unwrap())
                    .map(|x| (x.weight(), x))
                    .min()
                    .unwrap();
                for jobs in [1, 3, 8] {
                    let got = min_weight_in_difference(&a, &b, jobs).unwrap();
                    assert_eq!(got, naive);
                }
            }
        }
    }

    #[test]
    fn subspace_count_matches_galois_numbers() {
        assert_eq!(enumerate_all_subspaces(3).len(), 16);
        assert_eq!(enumerate_all_subspaces(4).len(), 67);
    }

    #[test]
    fn text_round_trip() {
        let s = sp(4, &["1100", "0011"]);
        let text = s.to_text();
        let back = Subspace::parse_text(&text).unwrap();
        assert_eq!(s, back);
        assert_eq!(text, back.to_text());
    }

    #[test]
    fn text_parse_reports_line_numbers() {
        let err = Subspace::parse_text("n=3\n110\n1x0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
        let err = Subspace::parse_text("# comment\nn=3\n1101\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
