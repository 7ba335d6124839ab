use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};
use crate::formula::eval::{table_bit, truth_table, TRUTH_TABLE_CAP};
use crate::formula::{structural_cmp, Formula, FormulaView};

/// Orbit closure refuses groups larger than 2^ORBIT_DIM_CAP.
pub const ORBIT_DIM_CAP: usize = 20;

/// The shift action on formulas: literals X_i and ~X_i are transposed
/// exactly where u_i = 1. Preserves depth, size, and leafsize, and
/// satisfies act(F,u)(x) = F(x ⊕ u).
pub fn act(f: &Formula, u: &BitVec) -> Result<Formula> {
    if f.ambient_dim() != u.dim() {
        return Err(Error::DimMismatch {
            left: f.ambient_dim(),
            right: u.dim(),
        });
    }
    let mut memo: HashMap<usize, Formula> = HashMap::new();
    let shifted = act_rec(f, u, &mut memo)?;
    debug_assert_eq!(shifted.depth(), f.depth());
    debug_assert_eq!(shifted.size(), f.size());
    debug_assert_eq!(shifted.leafsize(), f.leafsize());
    Ok(shifted)
}

fn act_rec(f: &Formula, u: &BitVec, memo: &mut HashMap<usize, Formula>) -> Result<Formula> {
    if let Some(g) = memo.get(&f.node_id()) {
        return Ok(g.clone());
    }
    let result = match f.view() {
        FormulaView::Const(_) => f.clone(),
        FormulaView::Literal { var, negated } => {
            if u.get(var) {
                Formula::literal(f.ambient_dim(), var, !negated)?
            } else {
                f.clone()
            }
        }
        FormulaView::Gate { op, children } => {
            let mapped: Result<Vec<Formula>> =
                children.iter().map(|c| act_rec(c, u, memo)).collect();
            Formula::gate(op, mapped?)?
        }
    };
    memo.insert(f.node_id(), result.clone());
    Ok(result)
}

/// Syntactic invariance: the formula is fixed by the shift action for
/// every element of U. Checking the basis suffices because the action is
/// a group homomorphism.
pub fn is_invariant(f: &Formula, u: &Subspace) -> Result<bool> {
    if f.ambient_dim() != u.ambient_dim() {
        return Err(Error::DimMismatch {
            left: f.ambient_dim(),
            right: u.ambient_dim(),
        });
    }
    for b in u.basis() {
        if act(f, b)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semantic invariance: F(x) = F(x ⊕ b) for every input x and basis
/// vector b, checked exhaustively over all 2^n inputs.
pub fn is_semantically_invariant(f: &Formula, u: &Subspace) -> Result<bool> {
    let n = f.ambient_dim();
    if n != u.ambient_dim() {
        return Err(Error::DimMismatch {
            left: n,
            right: u.ambient_dim(),
        });
    }
    if n > TRUTH_TABLE_CAP {
        return Err(Error::NeedsSampling {
            n,
            cap: TRUTH_TABLE_CAP,
        });
    }
    let table = truth_table(f)?;
    let mut x = BitVec::zero(n);
    for b in u.basis() {
        for idx in 0u64..(1u64 << n) {
            for i in 0..n {
                x.set(i, (idx >> i) & 1 == 1);
            }
            let shifted = x.xor(b)?;
            if table_bit(&table, &x) != table_bit(&table, &shifted) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One-sided probabilistic check for dimensions beyond the exhaustive cap:
/// returns a concrete violating (x, u) pair if one is sampled, otherwise
/// None (which does NOT prove invariance).
pub fn semantic_invariance_sampled(
    f: &Formula,
    u: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<Option<(BitVec, BitVec)>> {
    let n = f.ambient_dim();
    if n != u.ambient_dim() {
        return Err(Error::DimMismatch {
            left: n,
            right: u.ambient_dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
        let mut shift = BitVec::zero(n);
        for b in u.basis() {
            if rng.gen() {
                shift.xor_in_place(b);
            }
        }
        let fx = crate::formula::evaluate(f, &x)?;
        let fs = crate::formula::evaluate(f, &x.xor(&shift)?)?;
        if fx != fs {
            return Ok(Some((x, shift)));
        }
    }
    Ok(None)
}

/// Orbit of a formula under a subspace action, with its stabilizer.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub base: Formula,
    pub group: Subspace,
    pub stabilizer: Subspace,
    /// Orbit elements in canonical formula order.
    pub orbit: Vec<Formula>,
    /// dim(group) − dim(stabilizer) + 1, the quantity the size recursion
    /// tracks per orbit.
    pub a: usize,
}

/// Enumerates the orbit of `g` under the action of `u` by closing under
/// the basis shifts, and extracts the stabilizer from the closure
/// transversal (for each edge H --b--> H^b the element t_H ⊕ b ⊕ t_{H^b}
/// fixes `g`; those elements span the stabilizer).
pub fn orbit_stabilizer(g: &Formula, u: &Subspace) -> Result<OrbitDecomposition> {
    if g.ambient_dim() != u.ambient_dim() {
        return Err(Error::DimMismatch {
            left: g.ambient_dim(),
            right: u.ambient_dim(),
        });
    }
    if u.dim() > ORBIT_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "orbit group dimension",
            limit: ORBIT_DIM_CAP,
            got: u.dim(),
        });
    }
    let n = u.ambient_dim();
    // transversal: orbit element -> group element mapping g onto it.
    let mut transversal: HashMap<Formula, BitVec> = HashMap::new();
    transversal.insert(g.clone(), BitVec::zero(n));
    let mut queue = vec![g.clone()];
    let mut stab_gens: Vec<BitVec> = Vec::new();
    while let Some(h) = queue.pop() {
        let t_h = transversal[&h].clone();
        for b in u.basis() {
            let hb = act(&h, b)?;
            let word = t_h.xor(b)?;
            match transversal.get(&hb) {
                None => {
                    transversal.insert(hb.clone(), word);
                    queue.push(hb);
                }
                Some(t_hb) => {
                    stab_gens.push(word.xor(t_hb)?);
                }
            }
        }
    }
    let stabilizer = Subspace::span(n, &stab_gens)?;
    let mut orbit: Vec<Formula> = transversal.into_keys().collect();
    orbit.sort_by(structural_cmp);
    if orbit.len() != 1usize << (u.dim() - stabilizer.dim()) {
        return Err(Error::Internal(format!(
            "orbit-stabilizer mismatch: orbit {} stabilizer dim {} group dim {}",
            orbit.len(),
            stabilizer.dim(),
            u.dim()
        )));
    }
    let a = u.dim() - stabilizer.dim() + 1;
    Ok(OrbitDecomposition {
        base: g.clone(),
        group: u.clone(),
        stabilizer,
        orbit,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{evaluate, random_formula, GateOp};

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    fn x(n: usize, i: usize) -> Formula {
        Formula::literal(n, i, false).unwrap()
    }

    fn nx(n: usize, i: usize) -> Formula {
        Formula::literal(n, i, true).unwrap()
    }

    fn parity_space(n: usize) -> Subspace {
        Subspace::span(n, &[BitVec::ones(n)]).unwrap().dual()
    }

    fn parity2_dnf() -> Formula {
        Formula::or(vec![
            Formula::and(vec![x(2, 0), nx(2, 1)]).unwrap(),
            Formula::and(vec![nx(2, 0), x(2, 1)]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn act_transposes_marked_literals() {
        let f = x(2, 0);
        assert_eq!(act(&f, &v("10")).unwrap(), nx(2, 0));
        assert_eq!(act(&f, &v("01")).unwrap(), f);
    }

    #[test]
    fn act_by_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random_formula(&mut rng, 4, 3);
            assert_eq!(act(&f, &BitVec::zero(4)).unwrap(), f);
        }
    }

    #[test]
    fn parity2_dnf_is_fixed_by_the_all_ones_shift() {
        let f = parity2_dnf();
        assert_eq!(act(&f, &v("11")).unwrap(), f);
    }

    #[test]
    fn action_is_a_group_action_and_preserves_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let f = random_formula(&mut rng, n, 3);
            let u = BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
            let w = BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
            let one = act(&act(&f, &u).unwrap(), &w).unwrap();
            let two = act(&f, &u.xor(&w).unwrap()).unwrap();
            assert_eq!(one, two);
            assert_eq!(act(&act(&f, &u).unwrap(), &u).unwrap(), f);
            let g = act(&f, &u).unwrap();
            assert_eq!(g.depth(), f.depth());
            assert_eq!(g.size(), f.size());
            assert_eq!(g.leafsize(), f.leafsize());
        }
    }

    #[test]
    fn shift_identity_on_semantics() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let f = random_formula(&mut rng, n, 3);
            let u = BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
            let g = act(&f, &u).unwrap();
            for xx in Subspace::full(n).elements() {
                assert_eq!(
                    evaluate(&g, &xx).unwrap(),
                    evaluate(&f, &xx.xor(&u).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn parity_dnf_is_syntactically_invariant_under_parity_space() {
        let f = parity2_dnf();
        assert!(is_invariant(&f, &parity_space(2)).unwrap());
        assert!(is_semantically_invariant(&f, &parity_space(2)).unwrap());
    }

    #[test]
    fn constant_and_gate_is_semantically_but_not_syntactically_invariant() {
        // (and 0 x1 ... xn) computes the zero function.
        let n = 3;
        let mut children = vec![Formula::constant(n, false).unwrap()];
        children.extend((0..n).map(|i| x(n, i)));
        let f = Formula::and(children).unwrap();
        let u = parity_space(n);
        assert!(is_semantically_invariant(&f, &u).unwrap());
        assert!(!is_invariant(&f, &u).unwrap());
    }

    #[test]
    fn plain_literal_is_neither() {
        let f = x(2, 0);
        let u = parity_space(2);
        assert!(!is_invariant(&f, &u).unwrap());
        assert!(!is_semantically_invariant(&f, &u).unwrap());
    }

    #[test]
    fn syntactic_implies_semantic_on_random_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..80 {
            let n = rng.gen_range(2..=5);
            let f = random_formula(&mut rng, n, 3);
            let u = parity_space(n);
            if is_invariant(&f, &u).unwrap() {
                assert!(is_semantically_invariant(&f, &u).unwrap());
            }
        }
    }

    #[test]
    fn sampled_mode_finds_a_literal_violation() {
        let f = x(4, 0);
        let u = parity_space(4);
        let hit = semantic_invariance_sampled(&f, &u, 200, 7).unwrap();
        assert!(hit.is_some());
    }

    #[test]
    fn orbit_of_and_under_parity_space() {
        let g = Formula::and(vec![x(2, 0), x(2, 1)]).unwrap();
        let u = parity_space(2); // {00, 11}
        let dec = orbit_stabilizer(&g, &u).unwrap();
        assert_eq!(dec.stabilizer, Subspace::zero(2));
        assert_eq!(dec.a, 2);
        let flipped = Formula::and(vec![nx(2, 0), nx(2, 1)]).unwrap();
        assert_eq!(dec.orbit.len(), 2);
        assert!(dec.orbit.contains(&g));
        assert!(dec.orbit.contains(&flipped));
    }

    #[test]
    fn fully_symmetric_formula_has_singleton_orbit() {
        let f = parity2_dnf();
        let dec = orbit_stabilizer(&f, &parity_space(2)).unwrap();
        assert_eq!(dec.orbit.len(), 1);
        assert_eq!(dec.a, 1);
        assert_eq!(dec.stabilizer, parity_space(2));
    }

    #[test]
    fn orbit_stabilizer_product_matches_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(2..=5);
            let f = random_formula(&mut rng, n, 3);
            let rows: Vec<BitVec> = (0..rng.gen_range(1..=n))
                .map(|_| BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>()))
                .collect();
            let u = Subspace::span(n, &rows).unwrap();
            let dec = orbit_stabilizer(&f, &u).unwrap();
            // Independent stabilizer oracle: enumerate the whole group.
            let mut fixes = Vec::new();
            for elem in u.elements() {
                if act(&f, &elem).unwrap() == f {
                    fixes.push(elem);
                }
            }
            let stab_oracle = Subspace::span(n, &fixes).unwrap();
            assert_eq!(dec.stabilizer, stab_oracle);
            assert_eq!(fixes.len() as u64, stab_oracle.len());
            assert_eq!(dec.orbit.len() as u64 * fixes.len() as u64, u.len());
            // Orbit elements all share depth/size/leafsize.
            for h in &dec.orbit {
                assert_eq!(h.depth(), f.depth());
                assert_eq!(h.size(), f.size());
                assert_eq!(h.leafsize(), f.leafsize());
            }
        }
    }

    #[test]
    fn orbit_members_are_reachable_shifts() {
        let g = Formula::gate(GateOp::Or, vec![x(3, 0), x(3, 1)]).unwrap();
        let u = parity_space(3);
        let dec = orbit_stabilizer(&g, &u).unwrap();
        for h in &dec.orbit {
            assert!(u.elements().any(|e| act(&g, &e).unwrap() == *h));
        }
    }
}
