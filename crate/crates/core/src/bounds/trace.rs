//! Executable size-bound certificates.
//!
//! `trace_lower_bound` runs the bound's induction on a concrete formula:
//! it reduces to a codimension-1 pair, splits the root gate's children
//! into orbits, picks the orbit that carries the function, descends to a
//! shifted orbit representative over the pair produced by `descend_pair`,
//! and bottoms out in the depth-2 counting bound. Every decision is
//! recorded so `verify_trace` can re-derive and re-check each node without
//! trusting the builder: pair memberships, invariance, non-constancy by
//! exhaustive evaluation, stabilizers by full group enumeration,
//! minimum weights by fresh scans, and the size/claim arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{
    descend_pair, min_weight_in_difference, BitVec, PairL2, QuadL4, Subspace,
};
use crate::formula::{
    act, evaluate, is_invariant, orbit_stabilizer, structural_cmp, Formula, FormulaView,
    OnSet,
};
use crate::numeric::bound_exponent;

use super::REL_TOL;

pub const TRACE_FORMAT: &str = "trace/1";

/// Traces evaluate formulas over whole subspaces; keep the ambient space
/// enumerable.
pub const TRACE_N_CAP: usize = 16;

/// How the shift u for the descended representative was found.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftCase {
    /// u = v ⊕ w from a witness v in the coset side and w in T \ U.
    CosetWitness,
    /// u taken directly inside the group.
    GroupWitness,
}

impl ShiftCase {
    fn code(self) -> u8 {
        match self {
            ShiftCase::CosetWitness => 1,
            ShiftCase::GroupWitness => 2,
        }
    }

    fn from_code(code: u8) -> Result<Self> {
        match code {
            1 => Ok(ShiftCase::CosetWitness),
            2 => Ok(ShiftCase::GroupWitness),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown case {other}"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub enum TraceNode {
    /// Root-only: replaces (U, V) by the first codimension-1 overspace
    /// W = U + <coset_rep> on which the formula is non-constant.
    Reduction {
        sub: Subspace,
        sup: Subspace,
        m: u64,
        claimed_log2: f64,
        coset_rep: BitVec,
        inner: Box<TraceNode>,
    },
    /// Depth <= 2 (or an orbit of bare literals): the counting bound
    /// size >= 2^{m-1} applies directly.
    Base {
        sub: Subspace,
        sup: Subspace,
        m: u64,
        claimed_log2: f64,
        polarity: bool,
        actual_size: u64,
    },
    /// One induction step at a gate root.
    Orbit {
        sub: Subspace,
        sup: Subspace,
        m: u64,
        claimed_log2: f64,
        actual_size: u64,
        orbit_index: usize,
        orbit_size: u64,
        stabilizer: Subspace,
        a: usize,
        shift: BitVec,
        case: ShiftCase,
        child: Box<TraceNode>,
    },
}

impl TraceNode {
    pub fn claimed_log2(&self) -> f64 {
        match self {
            TraceNode::Reduction { claimed_log2, .. }
            | TraceNode::Base { claimed_log2, .. }
            | TraceNode::Orbit { claimed_log2, .. } => *claimed_log2,
        }
    }

    pub fn m(&self) -> u64 {
        match self {
            TraceNode::Reduction { m, .. }
            | TraceNode::Base { m, .. }
            | TraceNode::Orbit { m, .. } => *m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LowerBoundTrace {
    pub ambient: usize,
    pub depth: usize,
    pub m: u64,
    pub claimed_log2: f64,
    pub actual_size: u64,
    pub root: TraceNode,
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

/// Runs the induction on `f` for the pair U ⊂ V and records the
/// resulting certificate. `f` must be syntactically U-invariant,
/// non-constant over V, and of depth at least 2.
pub fn trace_lower_bound(
    f: &Formula,
    u: &Subspace,
    v: &Subspace,
    jobs: usize,
) -> Result<LowerBoundTrace> {
    let n = f.ambient_dim();
    if n != u.ambient_dim() || n != v.ambient_dim() {
        return Err(Error::DimMismatch {
            left: n,
            right: u.ambient_dim().max(v.ambient_dim()),
        });
    }
    if n > TRACE_N_CAP {
        return Err(Error::CapExceeded {
            what: "trace ambient dimension",
            limit: TRACE_N_CAP,
            got: n,
        });
    }
    if f.depth() < 2 {
        return Err(Error::Domain(format!(
            "trace needs formula depth >= 2, got {}",
            f.depth()
        )));
    }
    if !u.is_subspace_of(v)? || u.dim() == v.dim() {
        return Err(Error::NotContained {
            sub: format!("{u:?}"),
            sup: format!("{v:?}"),
        });
    }
    if !is_invariant(f, u)? {
        return Err(Error::NotInvariant);
    }
    if classify_on(f, v)? != OnSet::NonConstant {
        return Err(Error::ConstantOnSet);
    }
    let (m, _) = min_weight_in_difference(&u.dual(), &v.dual(), jobs)?;
    let m = m as u64;
    let d = (f.depth() - 1) as u32;
    let claimed_log2 = bound_exponent(d, m);

    // Codimension-1 reduction: the first coset representative whose coset
    // value differs from the value on U.
    let base_value = evaluate(f, &BitVec::zero(n))?;
    let mut candidates: Vec<BitVec> = v
        .elements()
        .filter(|x| !u.contains(x).unwrap())
        .collect();
    candidates.sort();
    let mut chosen = None;
    for cand in candidates {
        if evaluate(f, &cand)? != base_value {
            chosen = Some(cand);
            break;
        }
    }
    let coset_rep = chosen.ok_or_else(|| {
        Error::Internal("non-constant formula must split some coset".into())
    })?;
    let w = u.sum(&Subspace::span(n, std::slice::from_ref(&coset_rep))?)?;
    let inner = build_node(f, u, &w, jobs)?;

    let root = TraceNode::Reduction {
        sub: u.clone(),
        sup: v.clone(),
        m,
        claimed_log2,
        coset_rep,
        inner: Box::new(inner),
    };
    Ok(LowerBoundTrace {
        ambient: n,
        depth: f.depth(),
        m,
        claimed_log2,
        actual_size: f.size(),
        root,
    })
}

fn classify_on(f: &Formula, s: &Subspace) -> Result<OnSet> {
    let mut zero = false;
    let mut one = false;
    for x in s.elements() {
        if evaluate(f, &x)? {
            one = true;
        } else {
            zero = true;
        }
        if zero && one {
            return Ok(OnSet::NonConstant);
        }
    }
    Ok(if one { OnSet::AllOne } else { OnSet::AllZero })
}

/// One induction node for formula `f`, invariant under `group`, over the
/// codimension-1 overspace `over`.
fn build_node(
    f: &Formula,
    group: &Subspace,
    over: &Subspace,
    jobs: usize,
) -> Result<TraceNode> {
    let n = f.ambient_dim();
    let (m, _) = min_weight_in_difference(&group.dual(), &over.dual(), jobs)?;
    let m = m as u64;
    if f.depth() <= 2 {
        return base_node(f, group, over, m);
    }

    let (op, children) = match f.view() {
        FormulaView::Gate { op, children } => (op, children),
        _ => unreachable!("depth >= 3 formulas are gates"),
    };

    // Partition the children into orbits, in first-occurrence order of the
    // canonical child list.
    let mut orbits: Vec<Vec<Formula>> = Vec::new();
    let mut assigned: Vec<Formula> = Vec::new();
    for c in children {
        if assigned.contains(c) {
            continue;
        }
        let dec = orbit_stabilizer(c, group)?;
        for member in &dec.orbit {
            if !children.contains(member) {
                return Err(Error::Internal(
                    "invariant formula's children must close under the action".into(),
                ));
            }
            assigned.push(member.clone());
        }
        orbits.push(dec.orbit);
    }

    // The orbit subformula that agrees with f everywhere on `over`.
    let over_points: Vec<BitVec> = over.elements().collect();
    let mut selected: Option<(usize, Formula)> = None;
    for (i, orbit) in orbits.iter().enumerate() {
        let sub = Formula::gate(op, orbit.clone())?;
        let mut agrees = true;
        for x in &over_points {
            if evaluate(&sub, x)? != evaluate(f, x)? {
                agrees = false;
                break;
            }
        }
        if agrees {
            let better = match &selected {
                None => true,
                Some((_, best)) => {
                    let (bh, sh) = (best.structural_hash(), sub.structural_hash());
                    sh < bh || (sh == bh && structural_cmp(&sub, best).is_lt())
                }
            };
            if better {
                selected = Some((i, sub));
            }
        }
    }
    let (orbit_index, _) = selected.ok_or_else(|| {
        Error::Internal("some orbit must carry the function on the overspace".into())
    })?;
    let orbit = &orbits[orbit_index];
    let rep = orbit
        .iter()
        .min_by(|a, b| structural_cmp(a, b))
        .unwrap()
        .clone();

    if rep.depth() == 0 {
        // An orbit of bare literals separates the pair by itself; the
        // counting bound degenerates to m = 1 and applies to f directly.
        return base_node(f, group, over, m);
    }

    let dec = orbit_stabilizer(&rep, group)?;
    let stabilizer = dec.stabilizer.clone();
    let a = dec.a;
    let t = descend_pair(&stabilizer, group, over)?;

    // A shift u such that the shifted representative is non-constant on T.
    let base_value = evaluate(f, &BitVec::zero(n))?;
    let coset_case = match op {
        crate::formula::GateOp::Or => !base_value,
        crate::formula::GateOp::And => base_value,
    };
    let w_min = t
        .elements()
        .filter(|x| !stabilizer.contains(x).unwrap())
        .min()
        .ok_or(Error::EmptyDifference)?;
    let (case, shift) = if coset_case {
        // Witness on the coset side: the first v outside the group where
        // the representative takes the coset value.
        let target = !base_value;
        let mut coset: Vec<BitVec> = over_points
            .iter()
            .filter(|x| !group.contains(x).unwrap())
            .cloned()
            .collect();
        coset.sort();
        let v_witness = coset
            .into_iter()
            .find(|x| evaluate(&rep, x).unwrap() == target)
            .ok_or_else(|| {
                Error::Internal("selected orbit must witness the coset value".into())
            })?;
        (ShiftCase::CosetWitness, v_witness.xor(&w_min)?)
    } else {
        // Witness inside the group.
        let target = base_value;
        let mut inside: Vec<BitVec> = group.elements().collect();
        inside.sort();
        let u_witness = inside
            .into_iter()
            .find(|x| evaluate(&rep, x).unwrap() == target)
            .ok_or_else(|| {
                Error::Internal("selected orbit must witness the group value".into())
            })?;
        (ShiftCase::GroupWitness, u_witness)
    };

    let shifted = act(&rep, &shift)?;
    let child = build_node(&shifted, &stabilizer, &t, jobs)?;
    Ok(TraceNode::Orbit {
        sub: group.clone(),
        sup: over.clone(),
        m,
        claimed_log2: bound_exponent((f.depth() - 1) as u32, m),
        actual_size: f.size(),
        orbit_index,
        orbit_size: orbit.len() as u64,
        stabilizer,
        a,
        shift,
        case,
        child: Box::new(child),
    })
}

fn base_node(f: &Formula, group: &Subspace, over: &Subspace, m: u64) -> Result<TraceNode> {
    let polarity = evaluate(f, &BitVec::zero(f.ambient_dim()))?;
    Ok(TraceNode::Base {
        sub: group.clone(),
        sup: over.clone(),
        m,
        claimed_log2: (m - 1) as f64,
        polarity,
        actual_size: f.size(),
    })
}

// ---------------------------------------------------------------------------
// Independent verifier
// ---------------------------------------------------------------------------

fn fail(msg: impl Into<String>) -> Error {
    Error::TraceInvalid(msg.into())
}

fn leq_tol(x: f64, y: f64) -> bool {
    x <= y + REL_TOL * y.abs().max(1.0)
}

/// Re-checks every node of a trace against the formula it certifies:
/// pair memberships, invariance, non-constancy, recomputed minimum
/// weights, stabilizers by full enumeration, orbit agreement, the size
/// chain with exact integers, and the claim chain with the stated
/// tolerance. Returns the first violation found.
pub fn verify_trace(f: &Formula, trace: &LowerBoundTrace) -> Result<()> {
    let n = f.ambient_dim();
    if trace.ambient != n {
        return Err(fail(format!(
            "trace ambient {} does not match formula ambient {n}",
            trace.ambient
        )));
    }
    if trace.depth != f.depth() {
        return Err(fail("recorded depth does not match the formula"));
    }
    if trace.actual_size != f.size() {
        return Err(fail("recorded size does not match the formula"));
    }
    let (u, v, coset_rep, m, claimed, inner) = match &trace.root {
        TraceNode::Reduction {
            sub,
            sup,
            m,
            claimed_log2,
            coset_rep,
            inner,
        } => (sub, sup, coset_rep, *m, *claimed_log2, inner),
        _ => return Err(fail("trace root must be the codimension-1 reduction")),
    };
    if trace.m != m || trace.claimed_log2 != claimed {
        return Err(fail("root summary disagrees with the reduction node"));
    }
    if !u.is_subspace_of(v).map_err(stringify)? || u.dim() == v.dim() {
        return Err(fail("root pair is not a proper inclusion"));
    }
    if !is_invariant(f, u).map_err(stringify)? {
        return Err(fail("formula is not invariant under the root subspace"));
    }
    let (m_check, _) = min_weight_in_difference(&u.dual(), &v.dual(), 1).map_err(stringify)?;
    if m_check as u64 != m {
        return Err(fail(format!(
            "root minimum weight is {m_check}, trace claims {m}"
        )));
    }
    let d = (f.depth() - 1) as u32;
    let expect_log2 = bound_exponent(d, m);
    if (claimed - expect_log2).abs() > REL_TOL * expect_log2.abs().max(1.0) {
        return Err(fail("root claim does not match the bound formula"));
    }
    // Reduction validity.
    if u.contains(coset_rep).map_err(stringify)?
        || !v.contains(coset_rep).map_err(stringify)?
    {
        return Err(fail("coset representative must lie in V \\ U"));
    }
    let w = u
        .sum(&Subspace::span(n, std::slice::from_ref(coset_rep)).map_err(stringify)?)
        .map_err(stringify)?;
    let (inner_sub, inner_sup) = node_pair(inner);
    if inner_sub != u || *inner_sup != w {
        return Err(fail("inner node pair must be (U, U + <rep>)"));
    }
    if inner.m() < m {
        return Err(fail("reduction cannot decrease the minimum weight"));
    }
    if !leq_tol(claimed, inner.claimed_log2()) {
        return Err(fail("reduction claim exceeds the inner claim"));
    }
    verify_node(f, inner)?;
    // Final inequality.
    if (f.size() as f64) < f64::exp2(claimed) * (1.0 - REL_TOL) {
        return Err(fail(format!(
            "final inequality fails: size {} < 2^{claimed:.6}",
            f.size()
        )));
    }
    Ok(())
}

fn stringify(e: Error) -> Error {
    fail(format!("cross-check failed: {e}"))
}

fn node_pair(node: &TraceNode) -> (&Subspace, &Subspace) {
    match node {
        TraceNode::Reduction { sub, sup, .. }
        | TraceNode::Base { sub, sup, .. }
        | TraceNode::Orbit { sub, sup, .. } => (sub, sup),
    }
}

fn verify_node(f: &Formula, node: &TraceNode) -> Result<()> {
    match node {
        TraceNode::Reduction { .. } => Err(fail("reduction is only valid at the root")),
        TraceNode::Base {
            sub,
            sup,
            m,
            claimed_log2,
            polarity,
            actual_size,
        } => {
            PairL2::new(sub.clone(), sup.clone()).map_err(stringify)?;
            let (m_check, _) =
                min_weight_in_difference(&sub.dual(), &sup.dual(), 1).map_err(stringify)?;
            if m_check as u64 != *m {
                return Err(fail(format!(
                    "base minimum weight is {m_check}, trace claims {m}"
                )));
            }
            if *actual_size != f.size() {
                return Err(fail("base node size does not match its formula"));
            }
            // Separation: constant `polarity` on the subspace, the other
            // value on the rest of the overspace.
            for x in sup.elements() {
                let val = evaluate(f, &x).map_err(stringify)?;
                let inside = sub.contains(&x).map_err(stringify)?;
                if inside && val != *polarity {
                    return Err(fail("base formula is not constant on the subspace"));
                }
                if !inside && val == *polarity {
                    return Err(fail("base formula does not separate the coset"));
                }
            }
            if (*claimed_log2 - (*m - 1) as f64).abs() > REL_TOL {
                return Err(fail("base claim must be 2^{m-1}"));
            }
            if *m > 63 || f.size() < (1u64 << (m - 1)) {
                return Err(fail(format!(
                    "counting bound fails: size {} < 2^{}",
                    f.size(),
                    m - 1
                )));
            }
            Ok(())
        }
        TraceNode::Orbit {
            sub: group,
            sup: over,
            m,
            claimed_log2,
            actual_size,
            orbit_index,
            orbit_size,
            stabilizer,
            a,
            shift,
            case,
            child,
        } => {
            PairL2::new(group.clone(), over.clone()).map_err(stringify)?;
            if !is_invariant(f, group).map_err(stringify)? {
                return Err(fail("orbit node formula is not invariant"));
            }
            if *actual_size != f.size() {
                return Err(fail("orbit node size does not match its formula"));
            }
            let (m_check, _) =
                min_weight_in_difference(&group.dual(), &over.dual(), 1).map_err(stringify)?;
            if m_check as u64 != *m {
                return Err(fail("orbit node minimum weight mismatch"));
            }
            let d = (f.depth() - 1) as u32;
            let expect = bound_exponent(d, *m);
            if (claimed_log2 - expect).abs() > REL_TOL * expect.abs().max(1.0) {
                return Err(fail("orbit claim does not match the bound formula"));
            }
            let (op, children) = match f.view() {
                FormulaView::Gate { op, children } => (op, children),
                _ => return Err(fail("orbit node needs a gate root")),
            };
            // Recompute the orbit partition deterministically.
            let mut orbits: Vec<Vec<Formula>> = Vec::new();
            let mut assigned: Vec<Formula> = Vec::new();
            for c in children {
                if assigned.contains(c) {
                    continue;
                }
                let dec = orbit_stabilizer(c, group).map_err(stringify)?;
                for member in &dec.orbit {
                    if !children.contains(member) {
                        return Err(fail("children are not closed under the action"));
                    }
                    assigned.push(member.clone());
                }
                orbits.push(dec.orbit);
            }
            let orbit = orbits
                .get(*orbit_index)
                .ok_or_else(|| fail("orbit index out of range"))?;
            if orbit.len() as u64 != *orbit_size {
                return Err(fail("recorded orbit size mismatch"));
            }
            // The selected orbit agrees with f over the whole overspace.
            let subformula = Formula::gate(op, orbit.clone()).map_err(stringify)?;
            for x in over.elements() {
                if evaluate(&subformula, &x).map_err(stringify)?
                    != evaluate(f, &x).map_err(stringify)?
                {
                    return Err(fail("selected orbit does not carry the function"));
                }
            }
            let rep = orbit
                .iter()
                .min_by(|x, y| structural_cmp(x, y))
                .unwrap()
                .clone();
            // Stabilizer by full enumeration, independent of how the
            // builder derived it.
            let fixes: Vec<BitVec> = group
                .elements()
                .filter(|e| act(&rep, e).unwrap() == rep)
                .collect();
            let stab_check =
                Subspace::span(f.ambient_dim(), &fixes).map_err(stringify)?;
            if stab_check != *stabilizer {
                return Err(fail("recorded stabilizer is wrong"));
            }
            if *a != group.dim() - stabilizer.dim() + 1 {
                return Err(fail("orbit parameter a mismatch"));
            }
            if *orbit_size != 1u64 << (*a - 1) {
                return Err(fail("orbit size is not 2^{a-1}"));
            }
            // Size chain with exact integers: the orbit members share the
            // representative's size.
            let shifted = act(&rep, shift).map_err(stringify)?;
            let lhs = f.size() as u128;
            let rhs = *orbit_size as u128 * shifted.size() as u128;
            if lhs < rhs {
                return Err(fail("size chain fails at the orbit split"));
            }
            // Quadruple membership for ((S,T),(U,W)).
            let (child_sub, child_sup) = node_pair(child);
            if child_sub != stabilizer {
                return Err(fail("child pair must start at the stabilizer"));
            }
            QuadL4::new(
                PairL2::new(stabilizer.clone(), child_sup.clone()).map_err(stringify)?,
                PairL2::new(group.clone(), over.clone()).map_err(stringify)?,
            )
            .map_err(stringify)?;
            // Weight inequality from the descent, checked with integers.
            let (m_child, _) =
                min_weight_in_difference(&stabilizer.dual(), &child_sup.dual(), 1)
                    .map_err(stringify)?;
            if m_child as u64 != child.m() {
                return Err(fail("child minimum weight mismatch"));
            }
            if (m_child as u64) * (*a as u64) < *m {
                return Err(fail("descended pair violates the weight inequality"));
            }
            // Shift validity and child non-constancy.
            if !group.contains(shift).map_err(stringify)? {
                return Err(fail("shift must lie inside the group"));
            }
            let _ = case;
            if classify_on(&shifted, child_sup).map_err(stringify)? != OnSet::NonConstant {
                return Err(fail("shifted representative is constant on T"));
            }
            // Claim chain: claimed <= (a-1) + claimed(child).
            if !leq_tol(*claimed_log2, (*a as f64 - 1.0) + child.claimed_log2()) {
                return Err(fail("claim chain fails at the orbit split"));
            }
            verify_node(&shifted, child)
        }
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TraceFile {
    format: String,
    n: usize,
    depth: usize,
    m: u64,
    claimed_log2: f64,
    actual_size: u64,
    root: NodeRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum NodeRepr {
    Reduction {
        sub: Vec<String>,
        sup: Vec<String>,
        m: u64,
        claimed_log2: f64,
        coset_rep: String,
        inner: Box<NodeRepr>,
    },
    Base {
        sub: Vec<String>,
        sup: Vec<String>,
        m: u64,
        claimed_log2: f64,
        polarity: u8,
        actual_size: u64,
    },
    Orbit {
        sub: Vec<String>,
        sup: Vec<String>,
        m: u64,
        claimed_log2: f64,
        actual_size: u64,
        orbit_index: usize,
        orbit_size: u64,
        stabilizer: Vec<String>,
        a: usize,
        shift: String,
        case: u8,
        child: Box<NodeRepr>,
    },
}

fn rows(s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|r| r.to_string()).collect()
}

fn unrows(rows: &[String], n: usize) -> Result<Subspace> {
    let parsed: Result<Vec<BitVec>> = rows.iter().map(|r| BitVec::parse(r)).collect();
    Subspace::span(n, &parsed?)
}

fn node_to_repr(node: &TraceNode) -> NodeRepr {
    match node {
        TraceNode::Reduction {
            sub,
            sup,
            m,
            claimed_log2,
            coset_rep,
            inner,
        } => NodeRepr::Reduction {
            sub: rows(sub),
            sup: rows(sup),
            m: *m,
            claimed_log2: *claimed_log2,
            coset_rep: coset_rep.to_string(),
            inner: Box::new(node_to_repr(inner)),
        },
        TraceNode::Base {
            sub,
            sup,
            m,
            claimed_log2,
            polarity,
            actual_size,
        } => NodeRepr::Base {
            sub: rows(sub),
            sup: rows(sup),
            m: *m,
            claimed_log2: *claimed_log2,
            polarity: *polarity as u8,
            actual_size: *actual_size,
        },
        TraceNode::Orbit {
            sub,
            sup,
            m,
            claimed_log2,
            actual_size,
            orbit_index,
            orbit_size,
            stabilizer,
            a,
            shift,
            case,
            child,
        } => NodeRepr::Orbit {
            sub: rows(sub),
            sup: rows(sup),
            m: *m,
            claimed_log2: *claimed_log2,
            actual_size: *actual_size,
            orbit_index: *orbit_index,
            orbit_size: *orbit_size,
            stabilizer: rows(stabilizer),
            a: *a,
            shift: shift.to_string(),
            case: case.code(),
            child: Box::new(node_to_repr(child)),
        },
    }
}

fn node_from_repr(repr: &NodeRepr, n: usize) -> Result<TraceNode> {
    Ok(match repr {
        NodeRepr::Reduction {
            sub,
            sup,
            m,
            claimed_log2,
            coset_rep,
            inner,
        } => TraceNode::Reduction {
            sub: unrows(sub, n)?,
            sup: unrows(sup, n)?,
            m: *m,
            claimed_log2: *claimed_log2,
            coset_rep: BitVec::parse(coset_rep)?,
            inner: Box::new(node_from_repr(inner, n)?),
        },
        NodeRepr::Base {
            sub,
            sup,
            m,
            claimed_log2,
            polarity,
            actual_size,
        } => TraceNode::Base {
            sub: unrows(sub, n)?,
            sup: unrows(sup, n)?,
            m: *m,
            claimed_log2: *claimed_log2,
            polarity: *polarity != 0,
            actual_size: *actual_size,
        },
        NodeRepr::Orbit {
            sub,
            sup,
            m,
            claimed_log2,
            actual_size,
            orbit_index,
            orbit_size,
            stabilizer,
            a,
            shift,
            case,
            child,
        } => TraceNode::Orbit {
            sub: unrows(sub, n)?,
            sup: unrows(sup, n)?,
            m: *m,
            claimed_log2: *claimed_log2,
            actual_size: *actual_size,
            orbit_index: *orbit_index,
            orbit_size: *orbit_size,
            stabilizer: unrows(stabilizer, n)?,
            a: *a,
            shift: BitVec::parse(shift)?,
            case: ShiftCase::from_code(*case)?,
            child: Box::new(node_from_repr(child, n)?),
        },
    })
}

pub fn trace_to_json_string(trace: &LowerBoundTrace) -> String {
    let file = TraceFile {
        format: TRACE_FORMAT.to_string(),
        n: trace.ambient,
        depth: trace.depth,
        m: trace.m,
        claimed_log2: trace.claimed_log2,
        actual_size: trace.actual_size,
        root: node_to_repr(&trace.root),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("trace serializes");
    s.push('\n');
    s
}

pub fn trace_from_json_str(input: &str) -> Result<LowerBoundTrace> {
    let file: TraceFile = serde_json::from_str(input)?;
    if file.format != TRACE_FORMAT {
        return Err(Error::Parse {
            line: 0,
            msg: format!("unsupported trace format `{}`", file.format),
        });
    }
    Ok(LowerBoundTrace {
        ambient: file.n,
        depth: file.depth,
        m: file.m,
        claimed_log2: file.claimed_log2,
        actual_size: file.actual_size,
        root: node_from_repr(&file.root, file.n)?,
    })
}
