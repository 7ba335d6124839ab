//! Construction of invariant parity formulas: the brute-force DNF/CNF base
//! at depth 2, and the block recursion that trades depth for leafsize. The
//! block sizes come either from the exact recurrence minimizer or from the
//! balanced fixed split.

mod beta;

pub use beta::{
    closed_form_composition, closed_form_leafsize, BetaEntry, BetaTable, BetaValue,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};
use crate::formula::{act, is_invariant, Formula, GateOp};

/// Refuse to materialize formulas beyond this leaf count.
pub const MAX_SYNTH_LEAVES: u64 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Blocks from the exact recurrence minimizer.
    ExactDp,
    /// Balanced blocks with k = ceil(n^{1/d}) at every level.
    ClosedForm,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::ExactDp => "exact-dp",
            Strategy::ClosedForm => "closed-form",
        }
    }
}

/// Sidecar report emitted alongside a synthesized formula.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SynthReport {
    pub format: String,
    pub depth: usize,
    pub n: usize,
    pub leafsize: u64,
    pub size: u64,
    pub beta_value: String,
    pub composition: Vec<u32>,
    pub strategy: String,
    pub invariance_checked: bool,
}

pub const SYNTH_REPORT_FORMAT: &str = "synth-report/1";

/// Even-weight subspace of {0,1}^n: the kernel of the total parity
/// functional, dimension n−1.
pub fn even_weight_subspace(n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::ZeroDim);
    }
    Ok(Subspace::span(n, &[BitVec::ones(n)])?.dual())
}

/// Subspace of vectors whose restriction to `block` has even parity
/// (0-indexed coordinates); dimension n−1.
pub fn block_parity_subspace(n: usize, block: &[usize]) -> Result<Subspace> {
    if block.is_empty() {
        return Err(Error::EmptyBlock);
    }
    let indicator = BitVec::from_support(n, block)?;
    Ok(Subspace::span(n, &[indicator])?.dual())
}

/// Builds a formula of depth `total_depth` computing the parity of all n
/// variables, invariant under the even-weight subspace, with the requested
/// output gate. Returns the formula with its report.
///
/// For n = 1 the formula is the bare literal. total_depth = 1 with n > 1
/// is infeasible.
pub fn synth_parity(
    total_depth: u32,
    n: u32,
    output_gate: GateOp,
    strategy: Strategy,
) -> Result<(Formula, SynthReport)> {
    if n == 0 {
        return Err(Error::ZeroDim);
    }
    if total_depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    if total_depth == 1 && n > 1 {
        return Err(Error::InfeasibleDepth {
            depth: total_depth as usize,
            n: n as usize,
        });
    }
    let mut table = BetaTable::with_caps(total_depth.max(6), n.max(64));
    let (expected, composition) = match strategy {
        Strategy::ExactDp => {
            let e = table.beta(total_depth, n)?;
            (e.value, e.composition)
        }
        Strategy::ClosedForm => {
            let comp = if n == 1 {
                vec![1]
            } else if total_depth == 2 {
                vec![1; n as usize]
            } else {
                closed_form_composition(total_depth - 1, n)
            };
            (closed_form_leafsize(total_depth, n), comp)
        }
    };
    let expected = match expected.finite() {
        Some(v) => v.clone(),
        None => {
            return Err(Error::InfeasibleDepth {
                depth: total_depth as usize,
                n: n as usize,
            })
        }
    };
    if expected > BigUint::from(MAX_SYNTH_LEAVES) {
        return Err(Error::CapExceeded {
            what: "synthesized leafsize",
            limit: MAX_SYNTH_LEAVES as usize,
            got: usize::MAX,
        });
    }
    let formula = if n == 1 {
        Formula::literal(1, 0, false)?
    } else {
        build_inner(n as usize, total_depth, 0, n, output_gate, strategy, &mut table)?
    };
    if BigUint::from(formula.leafsize()) != expected {
        return Err(Error::Internal(format!(
            "leafsize {} does not match the planned value {}",
            formula.leafsize(),
            expected
        )));
    }
    let invariant = is_invariant(&formula, &even_weight_subspace(n as usize)?)?;
    if !invariant {
        return Err(Error::Internal(
            "synthesized formula lost its invariance".into(),
        ));
    }
    let report = SynthReport {
        format: SYNTH_REPORT_FORMAT.to_string(),
        depth: formula.depth(),
        n: n as usize,
        leafsize: formula.leafsize(),
        size: formula.size(),
        beta_value: expected.to_string(),
        composition,
        strategy: strategy.name().to_string(),
        invariance_checked: true,
    };
    Ok((formula, report))
}

/// Recursive block construction over the contiguous variable range
/// [start, start+width). The output gate alternates down the tree; the two
/// adjacent same-gate layers created by substitution are merged on the fly.
fn build_inner(
    ambient: usize,
    depth: u32,
    start: u32,
    width: u32,
    out: GateOp,
    strategy: Strategy,
    table: &mut BetaTable,
) -> Result<Formula> {
    if width == 1 {
        // Single-variable blocks are padded with alternating singleton
        // gates so every block reaches its level exactly and the layer
        // merge above always sees the expected root gate.
        return padded_literal(ambient, start, depth, out);
    }
    match depth {
        0 | 1 => Err(Error::InfeasibleDepth {
            depth: depth as usize,
            n: width as usize,
        }),
        2 => brute_normal_form(ambient, start, width, out),
        _ => {
            let comp = match strategy {
                Strategy::ExactDp => table.beta(depth, width)?.composition,
                Strategy::ClosedForm => closed_form_composition(depth - 1, width),
            };
            let k = comp.len();
            let mut blocks = Vec::with_capacity(k);
            let mut cursor = start;
            for &w in &comp {
                blocks.push((cursor, w));
                cursor += w;
            }
            let inner_gate = out.dual();
            let mut plain = Vec::with_capacity(k);
            let mut flipped = Vec::with_capacity(k);
            for &(s, w) in &blocks {
                let g = build_inner(ambient, depth - 1, s, w, inner_gate, strategy, table)?;
                // Transposing the literals of the block's first variable
                // complements the block parity.
                let h = act(&g, &BitVec::unit(ambient, s as usize))?;
                plain.push(g);
                flipped.push(h);
            }
            let want_odd = out == GateOp::Or;
            let mut clauses = Vec::new();
            for pattern in 0u64..(1 << k) {
                if (pattern.count_ones() % 2 == 1) != want_odd {
                    continue;
                }
                let mut members: Vec<Formula> = Vec::new();
                for i in 0..k {
                    let bit = (pattern >> i) & 1 == 1;
                    // DNF clauses assert the pattern, CNF clauses refute it.
                    let pick_plain = if want_odd { bit } else { !bit };
                    let node = if pick_plain { &plain[i] } else { &flipped[i] };
                    match node.view() {
                        crate::formula::FormulaView::Gate { op, children }
                            if op == inner_gate =>
                        {
                            members.extend(children.iter().cloned())
                        }
                        _ => members.push(node.clone()),
                    }
                }
                clauses.push(Formula::gate(inner_gate, members)?);
            }
            Formula::gate(out, clauses)
        }
    }
}

fn padded_literal(ambient: usize, var: u32, depth: u32, out: GateOp) -> Result<Formula> {
    if depth == 0 {
        return Formula::literal(ambient, var as usize, false);
    }
    let inner = padded_literal(ambient, var, depth - 1, out.dual())?;
    Formula::gate(out, vec![inner])
}

/// Brute-force DNF (OR root) or CNF (AND root) for the parity of a
/// contiguous block, with leafsize width·2^{width−1}.
fn brute_normal_form(ambient: usize, start: u32, width: u32, out: GateOp) -> Result<Formula> {
    let want_odd = out == GateOp::Or;
    let mut clauses = Vec::new();
    for pattern in 0u64..(1 << width) {
        if (pattern.count_ones() % 2 == 1) != want_odd {
            continue;
        }
        let mut lits = Vec::with_capacity(width as usize);
        for j in 0..width {
            let bit = (pattern >> j) & 1 == 1;
            // DNF terms match the pattern; CNF clauses are false exactly on it.
            let negated = if want_odd { !bit } else { bit };
            lits.push(Formula::literal(ambient, (start + j) as usize, negated)?);
        }
        clauses.push(Formula::gate(out.dual(), lits)?);
    }
    Formula::gate(out, clauses)
}
