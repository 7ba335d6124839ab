//! Numeric lower-bound calculators and the executable size-bound
//! certificate with its independent verifier.

mod trace;

pub use trace::{
    trace_lower_bound, trace_from_json_str, trace_to_json_string, verify_trace,
    LowerBoundTrace, ShiftCase, TraceNode, TRACE_FORMAT, TRACE_N_CAP,
};

use num_bigint::BigUint;
use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::f2::{min_weight_in_difference, BitVec, Subspace};
use crate::numeric::bound_exponent;

/// Relative tolerance for real-valued inequality checks.
pub const REL_TOL: f64 = 1e-9;

pub const BOUND_REPORT_FORMAT: &str = "bound-report/1";

/// 2^{d(m^{1/d}−1)}: the depth-(d+1) size bound.
pub fn theorem_bound(d: u32, m: u64) -> Result<f64> {
    check_dm(d, m)?;
    Ok(f64::exp2(bound_exponent(d, m)))
}

/// The exponent d(m^{1/d}−1), exact on perfect powers.
pub fn theorem_bound_log2(d: u32, m: u64) -> Result<f64> {
    check_dm(d, m)?;
    Ok(bound_exponent(d, m))
}

/// Depth-2 bounds (2^{m−1}, m·2^{m−1}) for size and leafsize.
pub fn base_case_bounds(m: u64) -> Result<(BigUint, BigUint)> {
    if m < 1 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let size = BigUint::one() << (m - 1);
    let leafsize = BigUint::from(m) * &size;
    Ok((size, leafsize))
}

/// d(m^{1/d}−1): the d-round query bound for locating a nonzero
/// coordinate of a hidden vector by linear queries.
pub fn search_game_bound(d: u32, m: u64) -> Result<f64> {
    check_dm(d, m)?;
    Ok(bound_exponent(d, m))
}

/// m^{ln 2}: the depth-free limit of the size bound.
pub fn unbounded_depth_bound(m: u64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    Ok((m as f64).powf(std::f64::consts::LN_2))
}

fn check_dm(d: u32, m: u64) -> Result<()> {
    if d < 1 || m < 1 {
        return Err(Error::Domain(format!(
            "bounds need d >= 1 and m >= 1, got ({d}, {m})"
        )));
    }
    Ok(())
}

/// Both sides of a + c(b/a)^{1/c} >= (c+1) b^{1/(c+1)} at one point.
#[derive(Clone, Copy, Debug)]
pub struct AbcCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

/// Evaluates the convexity inequality used by the induction step; valid
/// for all real a, b, c >= 1 with equality iff a = b^{1/(c+1)}.
pub fn abc_inequality(a: f64, b: f64, c: f64) -> Result<AbcCheck> {
    if !(a >= 1.0 && b >= 1.0 && c >= 1.0) {
        return Err(Error::Domain(format!(
            "inequality needs a,b,c >= 1, got ({a}, {b}, {c})"
        )));
    }
    let lhs = a + c * (b / a).powf(1.0 / c);
    let rhs = (c + 1.0) * b.powf(1.0 / (c + 1.0));
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    let holds = lhs >= rhs - REL_TOL * scale;
    let equality = (a - b.powf(1.0 / (c + 1.0))).abs() <= REL_TOL * a.abs().max(1.0);
    Ok(AbcCheck {
        lhs,
        rhs,
        holds,
        equality,
    })
}

/// Everything the main bound says about a pair U ⊂ V at depth parameter d.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub m: u64,
    pub witness: BitVec,
    pub depth_param: u32,
    pub theorem_bound: f64,
    pub base_case_size: BigUint,
    pub base_case_leafsize: BigUint,
    pub search_game_bound: f64,
    pub unbounded_depth_bound: f64,
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "format": BOUND_REPORT_FORMAT,
            "m": self.m,
            "witness": self.witness.to_string(),
            "d": self.depth_param,
            "theorem_bound": self.theorem_bound,
            "base_case_size": self.base_case_size.to_string(),
            "base_case_leafsize": self.base_case_leafsize.to_string(),
            "search_game_bound": self.search_game_bound,
            "unbounded_depth_bound": self.unbounded_depth_bound,
        })
    }
}

/// Computes m = min{|x| : x ∈ U^⊥ \ V^⊥} and fills every bound field.
/// Requires U ⊂ V proper; otherwise the difference is empty and no bound
/// applies.
pub fn lower_bound_certificate(
    u: &Subspace,
    v: &Subspace,
    d: u32,
    jobs: usize,
) -> Result<BoundReport> {
    if !u.is_subspace_of(v)? {
        return Err(Error::NotContained {
            sub: format!("{u:?}"),
            sup: format!("{v:?}"),
        });
    }
    if u.dim() == v.dim() {
        return Err(Error::EmptyDifference);
    }
    let (m, witness) = min_weight_in_difference(&u.dual(), &v.dual(), jobs)?;
    let m = m as u64;
    let (size, leafsize) = base_case_bounds(m)?;
    Ok(BoundReport {
        m,
        witness,
        depth_param: d,
        theorem_bound: theorem_bound(d, m)?,
        base_case_size: size,
        base_case_leafsize: leafsize,
        search_game_bound: search_game_bound(d, m)?,
        unbounded_depth_bound: unbounded_depth_bound(m)?,
    })
}
