use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};
use crate::formula::{Formula, FormulaView, GateOp};

/// Exhaustive truth tables are built for at most this many variables.
pub const TRUTH_TABLE_CAP: usize = 24;

/// Classification of a formula over a point set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OnSet {
    AllZero,
    AllOne,
    NonConstant,
}

fn input_index(x: &BitVec) -> usize {
    debug_assert!(x.dim() <= 64);
    let mut idx = 0usize;
    for i in 0..x.dim() {
        if x.get(i) {
            idx |= 1 << i;
        }
    }
    idx
}

/// Evaluates the formula on a single input, sharing work across repeated
/// subtrees.
pub fn evaluate(f: &Formula, x: &BitVec) -> Result<bool> {
    if f.ambient_dim() != x.dim() {
        return Err(Error::DimMismatch {
            left: f.ambient_dim(),
            right: x.dim(),
        });
    }
    let mut memo: HashMap<usize, bool> = HashMap::new();
    Ok(eval_rec(f, x, &mut memo))
}

fn eval_rec(f: &Formula, x: &BitVec, memo: &mut HashMap<usize, bool>) -> bool {
    if let Some(&v) = memo.get(&f.node_id()) {
        return v;
    }
    let value = match f.view() {
        FormulaView::Const(v) => v,
        FormulaView::Literal { var, negated } => x.get(var) ^ negated,
        FormulaView::Gate { op, children } => match op {
            GateOp::And => children.iter().all(|c| eval_rec(c, x, memo)),
            GateOp::Or => children.iter().any(|c| eval_rec(c, x, memo)),
        },
    };
    memo.insert(f.node_id(), value);
    value
}

/// Classifies the formula over an explicit point set.
pub fn evaluate_on(f: &Formula, points: &[BitVec]) -> Result<OnSet> {
    let mut seen_zero = false;
    let mut seen_one = false;
    for p in points {
        if evaluate(f, p)? {
            seen_one = true;
        } else {
            seen_zero = true;
        }
        if seen_zero && seen_one {
            return Ok(OnSet::NonConstant);
        }
    }
    Ok(if seen_one { OnSet::AllOne } else { OnSet::AllZero })
}

/// Classifies the formula over all elements of a subspace.
pub fn evaluate_on_subspace(f: &Formula, s: &Subspace) -> Result<OnSet> {
    let points: Vec<BitVec> = s.elements().collect();
    evaluate_on(f, &points)
}

/// Full truth table as packed words: bit x of the table is the value on
/// the input whose coordinate i equals bit i of x.
pub fn truth_table(f: &Formula) -> Result<Vec<u64>> {
    let n = f.ambient_dim();
    if n > TRUTH_TABLE_CAP {
        return Err(Error::CapExceeded {
            what: "truth table variables",
            limit: TRUTH_TABLE_CAP,
            got: n,
        });
    }
    let words = (1usize << n).div_ceil(64);
    let mut memo: HashMap<usize, Arc<Vec<u64>>> = HashMap::new();
    Ok(tt_rec(f, n, words, &mut memo).as_ref().clone())
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        !0u64
    } else {
        (1u64 << (1usize << n)) - 1
    }
}

fn tt_rec(
    f: &Formula,
    n: usize,
    words: usize,
    memo: &mut HashMap<usize, Arc<Vec<u64>>>,
) -> Arc<Vec<u64>> {
    let key = f.node_id();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let table: Vec<u64> = match f.view() {
        FormulaView::Const(v) => {
            let fill = if v { tail_mask(n) } else { 0 };
            vec![fill; words]
        }
        FormulaView::Literal { var, negated } => {
            let mut t = vec![0u64; words];
            for (w, slot) in t.iter_mut().enumerate() {
                let base = if var < 6 {
                    VAR_PATTERNS[var]
                } else if (w >> (var - 6)) & 1 == 1 {
                    !0u64
                } else {
                    0u64
                };
                *slot = if negated { !base } else { base } & tail_mask(n);
            }
            t
        }
        FormulaView::Gate { op, children } => {
            let mut acc: Option<Vec<u64>> = None;
            for c in children {
                let ct = tt_rec(c, n, words, memo);
                match &mut acc {
                    None => acc = Some(ct.as_ref().clone()),
                    Some(t) => {
                        for (a, b) in t.iter_mut().zip(ct.iter()) {
                            match op {
                                GateOp::And => *a &= b,
                                GateOp::Or => *a |= b,
                            }
                        }
                    }
                }
            }
            acc.expect("gates are nonempty")
        }
    };
    let arc = Arc::new(table);
    memo.insert(key, arc.clone());
    arc
}

const VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Exhaustively checks that the formula computes the parity of its input,
/// i.e. the Hamming weight mod 2.
pub fn computes_parity(f: &Formula) -> Result<bool> {
    let n = f.ambient_dim();
    let table = truth_table(f)?;
    // Parity of the low 6 index bits follows a fixed pattern; the parity of
    // the word number flips it.
    let mut base = 0u64;
    for x in 0..64u64 {
        if x.count_ones() % 2 == 1 {
            base |= 1 << x;
        }
    }
    for (w, &got) in table.iter().enumerate() {
        let expect = if (w as u64).count_ones() % 2 == 1 {
            !base
        } else {
            base
        } & tail_mask(n);
        if got != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reads a single bit out of a packed truth table.
pub fn table_bit(table: &[u64], x: &BitVec) -> bool {
    let idx = input_index(x);
    (table[idx >> 6] >> (idx & 63)) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Formula {
        Formula::literal(n, i, false).unwrap()
    }

    fn nx(n: usize, i: usize) -> Formula {
        Formula::literal(n, i, true).unwrap()
    }

    fn parity2_dnf() -> Formula {
        Formula::or(vec![
            Formula::and(vec![x(2, 0), nx(2, 1)]).unwrap(),
            Formula::and(vec![nx(2, 0), x(2, 1)]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn constants_evaluate_to_themselves() {
        let one = Formula::constant(3, true).unwrap();
        for v in Subspace::full(3).elements() {
            assert!(evaluate(&one, &v).unwrap());
        }
    }

    #[test]
    fn parity2_dnf_matches_truth_table_oracle() {
        let f = parity2_dnf();
        assert!(evaluate(&f, &BitVec::parse("10").unwrap()).unwrap());
        assert!(!evaluate(&f, &BitVec::parse("11").unwrap()).unwrap());
        // Brute-force oracle over every input.
        for v in Subspace::full(2).elements() {
            assert_eq!(evaluate(&f, &v).unwrap(), v.weight() % 2 == 1);
        }
        assert!(computes_parity(&f).unwrap());
    }

    #[test]
    fn classify_on_even_weight_points() {
        let f = parity2_dnf();
        let points = vec![BitVec::parse("00").unwrap(), BitVec::parse("11").unwrap()];
        assert_eq!(evaluate_on(&f, &points).unwrap(), OnSet::AllZero);
        let all: Vec<BitVec> = Subspace::full(2).elements().collect();
        assert_eq!(evaluate_on(&f, &all).unwrap(), OnSet::NonConstant);
    }

    #[test]
    fn truth_table_agrees_with_pointwise_eval() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 1..=8 {
            for _ in 0..20 {
                let f = crate::formula::random_formula(&mut rng, n, 3);
                let t = truth_table(&f).unwrap();
                for v in Subspace::full(n).elements() {
                    assert_eq!(table_bit(&t, &v), evaluate(&f, &v).unwrap());
                }
            }
        }
    }

    #[test]
    fn dim_mismatch_rejected() {
        let f = parity2_dnf();
        assert!(evaluate(&f, &BitVec::zero(3)).is_err());
    }
}
