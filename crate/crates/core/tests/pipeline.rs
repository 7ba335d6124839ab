//! Cross-module integration: synthesized formulas feed the certificate
//! machinery, graph instances feed the bound reports, and the depth-2
//! oracle agrees with the counting bound on every small pair.

use ac0form::bounds::{
    base_case_bounds, lower_bound_certificate, trace_from_json_str, trace_lower_bound,
    trace_to_json_string, verify_trace,
};
use ac0form::f2::{enumerate_all_subspaces, min_weight_in_difference, BitVec, Subspace};
use ac0form::formula::{
    computes_parity, formula_from_json_str, formula_to_json_string, is_invariant, GateOp,
};
use ac0form::graph::{complete_graph, even_weight_sub, m_via_maxcut, random_regular};
use ac0form::oracle::{min_invariant_depth2_size, verify_separator, SeparatorSpec};
use ac0form::synthesis::{even_weight_subspace, synth_parity, Strategy};

#[test]
fn synthesized_formulas_survive_serialization_and_certification() {
    for (depth, n) in [(2u32, 3u32), (3, 4), (3, 6), (4, 8)] {
        for gate in [GateOp::And, GateOp::Or] {
            let (f, report) = synth_parity(depth, n, gate, Strategy::ExactDp).unwrap();
            assert!(computes_parity(&f).unwrap());
            assert_eq!(report.leafsize, f.leafsize());

            let text = formula_to_json_string(&f);
            let back = formula_from_json_str(&text).unwrap();
            assert_eq!(back, f);

            let u = even_weight_subspace(n as usize).unwrap();
            let v = Subspace::full(n as usize);
            let trace = trace_lower_bound(&back, &u, &v, 1).unwrap();
            verify_trace(&back, &trace).unwrap();

            let trace_text = trace_to_json_string(&trace);
            let trace_back = trace_from_json_str(&trace_text).unwrap();
            verify_trace(&back, &trace_back).unwrap();
        }
    }
}

#[test]
fn certificate_m_matches_a_naive_full_scan() {
    // The certificate's m equals a scan over the whole ambient space.
    for n in 2..=4usize {
        for u in enumerate_all_subspaces(n) {
            let v = Subspace::full(n);
            if u.dim() == v.dim() {
                continue;
            }
            let report = lower_bound_certificate(&u, &v, 2, 1).unwrap();
            let naive = Subspace::full(n)
                .elements()
                .filter(|x| {
                    !x.is_zero() && u.basis().iter().all(|b| !b.dot(x).unwrap())
                })
                .map(|x| x.weight())
                .min()
                .unwrap();
            assert_eq!(report.m as usize, naive);
        }
    }
}

#[test]
fn oracle_meets_the_counting_bound_on_every_pair_at_n4() {
    let all = enumerate_all_subspaces(4);
    let mut pairs = 0;
    for sup in &all {
        if sup.dim() == 0 {
            continue;
        }
        for sub in &all {
            if sub.dim() + 1 != sup.dim() || !sub.is_subspace_of(sup).unwrap() {
                continue;
            }
            let (m, _) = min_weight_in_difference(&sub.dual(), &sup.dual(), 1).unwrap();
            let (size_bound, leaf_bound) = base_case_bounds(m as u64).unwrap();
            for polarity in [false, true] {
                let spec = SeparatorSpec::new(sub.clone(), sup.clone(), polarity).unwrap();
                let r = min_invariant_depth2_size(&spec, false).unwrap();
                assert!(num_bigint::BigUint::from(r.min_size) >= size_bound);
                assert!(num_bigint::BigUint::from(r.min_leafsize) >= leaf_bound);
                assert!(verify_separator(&r.witness, &spec).unwrap());
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 240);
}

#[test]
fn invariant_and_unrestricted_minima_agree_on_parity_pairs() {
    for n in 2..=3usize {
        let spec = SeparatorSpec::new(
            even_weight_subspace(n).unwrap(),
            Subspace::full(n),
            false,
        )
        .unwrap();
        let free = min_invariant_depth2_size(&spec, false).unwrap();
        let constrained = min_invariant_depth2_size(&spec, true).unwrap();
        assert_eq!(free.min_size, constrained.min_size);
        assert_eq!(free.min_leafsize, constrained.min_leafsize);
        assert!(is_invariant(&constrained.witness, &even_weight_subspace(n).unwrap()).unwrap());
    }
}

#[test]
fn graph_pipeline_produces_consistent_bounds() {
    for g in [complete_graph(3), complete_graph(4)] {
        let z = g.cycle_space();
        let (z0, codim) = even_weight_sub(&z);
        assert_eq!(codim, 1);
        let m = m_via_maxcut(&g, 1).unwrap();
        let report = lower_bound_certificate(&z0, &z, 1, 1).unwrap();
        assert_eq!(report.m as usize, m);
    }
    // Triangle: m = 1 so the depth-1 bound is 2^0 = 1.
    let k3 = complete_graph(3);
    let z = k3.cycle_space();
    let (z0, _) = even_weight_sub(&z);
    let report = lower_bound_certificate(&z0, &z, 1, 1).unwrap();
    assert_eq!(report.m, 1);
    assert_eq!(report.theorem_bound, 1.0);

    for seed in 0..20u64 {
        let (g, _) = random_regular(8, 3, seed).unwrap();
        if g.is_bipartite() {
            continue;
        }
        let z = g.cycle_space();
        let (z0, codim) = even_weight_sub(&z);
        assert_eq!(codim, 1);
        let m = m_via_maxcut(&g, 1).unwrap();
        let (m_scan, _) = min_weight_in_difference(&z0.dual(), &z.dual(), 1).unwrap();
        assert_eq!(m, m_scan);
        assert!(m >= 1);
    }
}

#[test]
fn subspace_files_round_trip_through_text() {
    let spaces = [
        even_weight_subspace(5).unwrap(),
        Subspace::full(3),
        Subspace::zero(4),
        Subspace::span(6, &[BitVec::parse("101010").unwrap(), BitVec::parse("010101").unwrap()])
            .unwrap(),
    ];
    for s in spaces {
        let text = s.to_text();
        let back = Subspace::parse_text(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
    }
}
