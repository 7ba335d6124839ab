//! Brute-force ground truth at tiny scale: exact minimum size and leafsize
//! of depth-2 separators for a codimension-1 pair, searched over clause
//! sets (DNFs and, through negation, CNFs) with exact set-cover dynamic
//! programming over the covered points.

use serde_json::json;

use crate::error::{Error, Result};
use crate::f2::{BitVec, PairL2, Subspace};
use crate::formula::{evaluate, formula_to_json, Formula, GateOp};

/// The clause-set search space is 2^(3^n); keep n tiny.
pub const ORACLE_N_CAP: usize = 4;

pub const ORACLE_FORMAT: &str = "oracle/1";

/// Target behavior: F ≡ polarity on the subspace, the complement value on
/// the rest of the overspace.
#[derive(Clone, Debug)]
pub struct SeparatorSpec {
    pair: PairL2,
    polarity: bool,
}

impl SeparatorSpec {
    pub fn new(sub: Subspace, sup: Subspace, polarity: bool) -> Result<Self> {
        Ok(SeparatorSpec {
            pair: PairL2::new(sub, sup)?,
            polarity,
        })
    }

    pub fn sub(&self) -> &Subspace {
        self.pair.sub()
    }

    pub fn sup(&self) -> &Subspace {
        self.pair.sup()
    }

    pub fn polarity(&self) -> bool {
        self.polarity
    }
}

/// Exhaustively checks both halves of the separation property.
pub fn verify_separator(f: &Formula, spec: &SeparatorSpec) -> Result<bool> {
    if f.ambient_dim() != spec.sub().ambient_dim() {
        return Err(Error::DimMismatch {
            left: f.ambient_dim(),
            right: spec.sub().ambient_dim(),
        });
    }
    for x in spec.sup().elements() {
        let inside = spec.sub().contains(&x)?;
        let expect = if inside {
            spec.polarity
        } else {
            !spec.polarity
        };
        if evaluate(f, &x)? != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Minimum clause count over all separating clause-set formulas.
    pub min_size: u64,
    /// Minimum total literal count, minimized independently of the count.
    pub min_leafsize: u64,
    /// A witness minimal first in clause count, then in literals.
    pub witness: Formula,
}

impl OracleResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "format": ORACLE_FORMAT,
            "min_size": self.min_size,
            "min_leafsize": self.min_leafsize,
            "witness": formula_to_json(&self.witness),
        })
    }
}

fn point_index(x: &BitVec) -> u16 {
    let mut idx = 0u16;
    for i in 0..x.dim() {
        if x.get(i) {
            idx |= 1 << i;
        }
    }
    idx
}

/// A search unit: one clause, or one whole orbit of clauses when the
/// chosen set must be closed under the group action.
struct Unit {
    clauses: Vec<(u16, u16)>, // (position mask, pattern)
    coverage: u32,
    count: u64,
    leaves: u64,
}

/// Exact minimum over clause-set DNFs with the given zero/one points:
/// returns (min clause count, min total literals, witness clauses minimal
/// in (count, literals)).
fn search_direction(
    n: usize,
    zeros: &[u16],
    ones: &[u16],
    group: Option<&[u16]>,
) -> Result<(u64, u64, Vec<(u16, u16)>)> {
    debug_assert!(!ones.is_empty());
    let full: u32 = if ones.len() == 32 {
        u32::MAX
    } else {
        (1u32 << ones.len()) - 1
    };
    let mut units: Vec<Unit> = Vec::new();
    let mut seen: std::collections::HashSet<(u16, u16)> = std::collections::HashSet::new();
    for mask in 1u16..(1 << n) {
        let width = mask.count_ones() as u64;
        // All patterns within the mask, descending subset order.
        let mut pattern = mask;
        loop {
            if !seen.contains(&(mask, pattern)) {
                let clause_set: Vec<(u16, u16)> = match group {
                    None => vec![(mask, pattern)],
                    Some(elems) => {
                        let mut orbit: Vec<(u16, u16)> = elems
                            .iter()
                            .map(|g| (mask, pattern ^ (g & mask)))
                            .collect();
                        orbit.sort_unstable();
                        orbit.dedup();
                        orbit
                    }
                };
                for c in &clause_set {
                    seen.insert(*c);
                }
                let valid = clause_set
                    .iter()
                    .all(|(m, p)| zeros.iter().all(|z| z & m != *p));
                if valid {
                    let mut coverage = 0u32;
                    for (m, p) in &clause_set {
                        for (oi, o) in ones.iter().enumerate() {
                            if o & m == *p {
                                coverage |= 1 << oi;
                            }
                        }
                    }
                    if coverage != 0 {
                        units.push(Unit {
                            count: clause_set.len() as u64,
                            leaves: clause_set.len() as u64 * width,
                            clauses: clause_set,
                            coverage,
                        });
                    }
                }
            }
            if pattern == 0 {
                break;
            }
            pattern = (pattern - 1) & mask;
        }
    }

    // Set-cover DP over the ones mask, three objectives at once.
    let states = (full as usize) + 1;
    const INF: u64 = u64::MAX;
    let mut dp_count = vec![INF; states];
    let mut dp_leaves = vec![INF; states];
    let mut dp_pair = vec![(INF, INF); states];
    let mut choice: Vec<Option<(usize, u32)>> = vec![None; states];
    dp_count[0] = 0;
    dp_leaves[0] = 0;
    dp_pair[0] = (0, 0);
    for mask in 0..states {
        if dp_pair[mask].0 == INF && dp_count[mask] == INF && dp_leaves[mask] == INF {
            continue;
        }
        for (ui, unit) in units.iter().enumerate() {
            let next = mask | unit.coverage as usize;
            if next == mask {
                continue;
            }
            if dp_count[mask] != INF && dp_count[mask] + unit.count < dp_count[next] {
                dp_count[next] = dp_count[mask] + unit.count;
            }
            if dp_leaves[mask] != INF && dp_leaves[mask] + unit.leaves < dp_leaves[next] {
                dp_leaves[next] = dp_leaves[mask] + unit.leaves;
            }
            if dp_pair[mask].0 != INF {
                let cand = (dp_pair[mask].0 + unit.count, dp_pair[mask].1 + unit.leaves);
                if cand < dp_pair[next] {
                    dp_pair[next] = cand;
                    choice[next] = Some((ui, mask as u32));
                }
            }
        }
    }
    if dp_count[full as usize] == INF {
        return Err(Error::Internal(
            "codimension-1 separator search found no cover".into(),
        ));
    }
    let mut witness = Vec::new();
    let mut cursor = full as usize;
    while cursor != 0 {
        let (ui, prev) = choice[cursor].expect("reachable states have a parent");
        witness.extend(units[ui].clauses.iter().copied());
        cursor = prev as usize;
    }
    witness.sort_unstable();
    witness.dedup();
    Ok((dp_count[full as usize], dp_leaves[full as usize], witness))
}

fn clauses_to_formula(
    n: usize,
    clauses: &[(u16, u16)],
    normal_form: GateOp,
) -> Result<Formula> {
    // OR root: AND clauses matching their pattern. AND root (negated
    // search): OR clauses that reject their pattern.
    let mut gates = Vec::with_capacity(clauses.len());
    for (mask, pattern) in clauses {
        let mut lits = Vec::new();
        for i in 0..n {
            if (mask >> i) & 1 == 1 {
                let bit = (pattern >> i) & 1 == 1;
                let negated = match normal_form {
                    GateOp::Or => !bit,
                    GateOp::And => bit,
                };
                lits.push(Formula::literal(n, i, negated)?);
            }
        }
        gates.push(Formula::gate(normal_form.dual(), lits)?);
    }
    Formula::gate(normal_form, gates)
}

/// Exact minimum size / leafsize over clause-set depth-2 separators for
/// the spec, over both normal forms. With `require_invariant`, the clause
/// set must be closed under the action of the spec's subspace. The two
/// minima are reported independently; the witness is minimal first in
/// clause count and then in literals.
pub fn min_invariant_depth2_size(
    spec: &SeparatorSpec,
    require_invariant: bool,
) -> Result<OracleResult> {
    let n = spec.sub().ambient_dim();
    if n > ORACLE_N_CAP {
        return Err(Error::CapExceeded {
            what: "oracle ambient dimension",
            limit: ORACLE_N_CAP,
            got: n,
        });
    }
    let sub_pts: Vec<u16> = spec.sub().elements().map(|x| point_index(&x)).collect();
    let coset_pts: Vec<u16> = spec
        .sup()
        .elements()
        .filter(|x| !spec.sub().contains(x).unwrap())
        .map(|x| point_index(&x))
        .collect();
    let (zeros, ones) = if spec.polarity {
        (coset_pts.as_slice(), sub_pts.as_slice())
    } else {
        (sub_pts.as_slice(), coset_pts.as_slice())
    };
    let group: Option<Vec<u16>> = require_invariant.then(|| sub_pts.clone());
    let dnf = search_direction(n, zeros, ones, group.as_deref())?;
    // The dual normal form separates with the zeros and ones exchanged and
    // its literals negated.
    let cnf = search_direction(n, ones, zeros, group.as_deref())?;

    let min_size = dnf.0.min(cnf.0);
    let min_leafsize = dnf.1.min(cnf.1);
    let dnf_key = (dnf.0, dnf.2.iter().map(|(m, _)| m.count_ones() as u64).sum::<u64>());
    let cnf_key = (cnf.0, cnf.2.iter().map(|(m, _)| m.count_ones() as u64).sum::<u64>());
    let witness = if dnf_key <= cnf_key {
        clauses_to_formula(n, &dnf.2, GateOp::Or)?
    } else {
        clauses_to_formula(n, &cnf.2, GateOp::And)?
    };
    debug_assert!(verify_separator(&witness, spec)?);
    Ok(OracleResult {
        min_size,
        min_leafsize,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::min_weight_in_difference;
    use crate::formula::is_invariant;
    use crate::synthesis::{even_weight_subspace, synth_parity, Strategy};

    fn parity_spec(n: usize, polarity: bool) -> SeparatorSpec {
        SeparatorSpec::new(
            even_weight_subspace(n).unwrap(),
            Subspace::full(n),
            polarity,
        )
        .unwrap()
    }

    #[test]
    fn verify_separator_on_known_formulas() {
        let spec = parity_spec(2, false);
        let (dnf, _) = synth_parity(2, 2, GateOp::Or, Strategy::ExactDp).unwrap();
        assert!(verify_separator(&dnf, &spec).unwrap());
        let zero = Formula::constant(2, false).unwrap();
        assert!(!verify_separator(&zero, &spec).unwrap());
        let spec3 = parity_spec(3, false);
        let (dnf3, _) = synth_parity(2, 3, GateOp::Or, Strategy::ExactDp).unwrap();
        assert!(verify_separator(&dnf3, &spec3).unwrap());
    }

    #[test]
    fn parity_two_minimum() {
        for invariant in [false, true] {
            let r = min_invariant_depth2_size(&parity_spec(2, false), invariant).unwrap();
            assert_eq!(r.min_size, 2);
            assert_eq!(r.min_leafsize, 4);
            assert!(verify_separator(&r.witness, &parity_spec(2, false)).unwrap());
            if invariant {
                assert!(is_invariant(&r.witness, &even_weight_subspace(2).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn parity_three_minimum() {
        for invariant in [false, true] {
            let r = min_invariant_depth2_size(&parity_spec(3, false), invariant).unwrap();
            assert_eq!(r.min_size, 4, "invariant={invariant}");
            assert_eq!(r.min_leafsize, 12);
        }
    }

    #[test]
    fn cycle_space_of_triangle_needs_one_clause() {
        // Z = span{111} over the triangle's three edges, Z0 = {0}.
        let z = Subspace::span(3, &[BitVec::ones(3)]).unwrap();
        let z0 = Subspace::zero(3);
        let spec = SeparatorSpec::new(z0.clone(), z.clone(), false).unwrap();
        let r = min_invariant_depth2_size(&spec, false).unwrap();
        assert_eq!(r.min_size, 1);
        assert_eq!(r.min_leafsize, 1);
        assert!(verify_separator(&r.witness, &spec).unwrap());
        let (m, _) = min_weight_in_difference(&z0.dual(), &z.dual(), 1).unwrap();
        assert_eq!(m, 1);
    }

    #[test]
    fn counting_bound_met_with_equality_on_parity_pairs() {
        for n in 2..=3usize {
            let spec = parity_spec(n, false);
            let r = min_invariant_depth2_size(&spec, false).unwrap();
            assert_eq!(r.min_size, 1 << (n - 1));
            assert_eq!(r.min_leafsize, (n as u64) << (n - 1));
        }
    }

    #[test]
    fn counting_bound_over_all_small_pairs() {
        use crate::f2::enumerate_all_subspaces;
        for n in 1..=3usize {
            let all = enumerate_all_subspaces(n);
            for sup in &all {
                if sup.dim() == 0 {
                    continue;
                }
                for sub in &all {
                    if sub.dim() + 1 != sup.dim() || !sub.is_subspace_of(sup).unwrap() {
                        continue;
                    }
                    let (m, _) =
                        min_weight_in_difference(&sub.dual(), &sup.dual(), 1).unwrap();
                    for polarity in [false, true] {
                        let spec =
                            SeparatorSpec::new(sub.clone(), sup.clone(), polarity).unwrap();
                        for invariant in [false, true] {
                            let r = min_invariant_depth2_size(&spec, invariant).unwrap();
                            assert!(
                                r.min_size >= 1 << (m - 1),
                                "n={n} m={m} size={} sub={sub:?} sup={sup:?}",
                                r.min_size
                            );
                            assert!(r.min_leafsize >= (m as u64) << (m - 1));
                            assert!(verify_separator(&r.witness, &spec).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let spec = parity_spec(5, false);
        assert!(matches!(
            min_invariant_depth2_size(&spec, false),
            Err(Error::CapExceeded { .. })
        ));
    }
}
