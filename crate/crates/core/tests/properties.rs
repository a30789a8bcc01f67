//! Randomized invariant checks on small plane curves.
//!
//! Curves are generated as branch documents: cuspidal branches `(t^a, u(t))`
//! with coprime leading orders and smooth branches `(t, p(t))`.  Every
//! property asserted here is an exact integer identity, so any failure is a
//! real defect rather than tolerance noise.

use std::collections::BTreeMap;

use proptest::collection::vec;
use proptest::prelude::*;

use curvemilnor_core::{
    classify_engine, equisingular, CurveDocument, CurveSpec, Engine, LocalType,
};

/// One branch as sparse (exponent, coefficient) lists for x and y.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Branch {
    x: Vec<(u32, i64)>,
    y: Vec<(u32, i64)>,
}

fn normalize(terms: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    let map: BTreeMap<u32, i64> = terms.into_iter().collect();
    map.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn smooth_branch() -> impl Strategy<Value = Branch> {
    // (t, p(t)) with p polynomial of degree <= 4; p may vanish.
    vec((1u32..=4, -3i64..=3), 0..=3).prop_map(|terms| Branch {
        x: vec![(1, 1)],
        y: normalize(terms),
    })
}

fn cusp_branch() -> impl Strategy<Value = Branch> {
    // (t^a, t^b + tail) with gcd(a, b) = 1 so the branch is singular but
    // its parametrization is generically injective.
    (2u32..=3)
        .prop_flat_map(|a| {
            let b = ((a + 1)..=9u32).prop_filter("coprime leading orders", move |&b| {
                num::integer::gcd(a, b) == 1
            });
            (Just(a), b, vec((1u32..=3, -2i64..=2), 0..=2))
        })
        .prop_map(|(a, b, tail)| {
            let mut y = vec![(b, 1)];
            y.extend(tail.into_iter().map(|(off, c)| (b + off, c)));
            Branch {
                x: vec![(a, 1)],
                y: normalize(y),
            }
        })
}

fn any_branch() -> impl Strategy<Value = Branch> {
    prop_oneof![3 => smooth_branch(), 1 => cusp_branch()]
}

fn spec_of(branches: &[Branch]) -> CurveSpec {
    let terms = |ts: &[(u32, i64)]| {
        serde_json::Value::Array(
            ts.iter()
                .map(|&(e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    };
    let list: Vec<serde_json::Value> = branches
        .iter()
        .map(|b| serde_json::json!({ "series": { "x": terms(&b.x), "y": terms(&b.y) } }))
        .collect();
    let doc = serde_json::json!({
        "field": { "kind": "rational" },
        "variables": ["x", "y"],
        "branches": list,
    });
    CurveDocument::from_json(&doc.to_string())
        .expect("generated document is valid")
        .to_spec()
        .expect("generated document loads")
}

fn pairwise_distinct(branches: &[Branch]) -> bool {
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            if branches[i] == branches[j] {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// One-branch plane curves are Gorenstein with the classical semigroup
    /// numerology: conductor 2*delta, delta gaps, symmetric gap set.
    #[test]
    fn branch_semigroup_numerology(branch in any_branch()) {
        let mut eng = Engine::new(spec_of(&[branch]));
        let inv = eng.invariants().unwrap();
        prop_assert_eq!(inv.r, 1);
        prop_assert_eq!(inv.milnor, 2 * inv.delta);
        prop_assert_eq!(inv.mult, inv.branch_mults[0]);
        prop_assert!(inv.gorenstein);
        prop_assert!(inv.certified);

        let gamma = eng.gamma_semigroup().unwrap();
        prop_assert_eq!(gamma.conductor(), 2 * inv.delta);
        prop_assert_eq!(gamma.conductor(), inv.conductor[0]);
        prop_assert_eq!(gamma.genus(), inv.delta);
        prop_assert_eq!(gamma.gaps().len() as u32, inv.delta);
        prop_assert!(gamma.is_symmetric());
        if inv.delta > 0 {
            prop_assert_eq!(gamma.min_nonzero(), inv.mult);
            prop_assert!(!gamma.contains(2 * inv.delta - 1));
        }
    }

    /// Blow-up chains of singular branches: the rho sequence refines delta,
    /// every step respects the multiplicity bounds, and one transform drops
    /// the Milnor number by exactly 2*rho.
    #[test]
    fn branch_blowup_chain(branch in cusp_branch()) {
        let mut eng = Engine::new(spec_of(&[branch]));
        let inv = eng.invariants().unwrap();
        prop_assume!(inv.delta > 0);

        let chain = eng.blowup_chain(None).unwrap();
        let rho_sum: u32 = chain.iter().map(|s| s.rho).sum();
        prop_assert_eq!(rho_sum, inv.delta);
        for step in &chain {
            let m = step.mult_before;
            prop_assert!(step.rho >= m - 1);
            prop_assert!(step.rho <= m * (m - 1) / 2);
        }
        for pair in chain.windows(2) {
            prop_assert!(pair[0].mult_before >= pair[1].mult_before);
        }

        let mseq = eng.multiplicity_sequence().unwrap();
        for (k, step) in chain.iter().enumerate() {
            prop_assert_eq!(mseq[k], step.mult_before);
        }

        let mut child = Engine::new(chain[0].curve.clone());
        let child_inv = child.invariants().unwrap();
        prop_assert_eq!(inv.milnor - child_inv.milnor, 2 * chain[0].rho);
    }

}

proptest! {
    // Value-semigroup boxes grow multiplicatively with the conductor, so
    // these multi-branch properties run fewer cases.
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Multi-branch smooth configurations: intersection numbers are
    /// symmetric and positive, delta splits along branches and pairs, and
    /// the ordinary-multiple-point predicate matches transversality.
    #[test]
    fn smooth_configuration_identities(branches in vec(smooth_branch(), 2..=3)) {
        prop_assume!(pairwise_distinct(&branches));
        let spec = spec_of(&branches);
        let mut eng = Engine::new(spec.clone());
        let inv = eng.invariants().unwrap();
        let r = branches.len();
        prop_assert_eq!(inv.r as usize, r);
        prop_assert_eq!(inv.mult as usize, r);
        prop_assert_eq!(inv.milnor + inv.r, 2 * inv.delta + 1);

        let mut pair_sum = 0;
        let mut all_transverse = true;
        for i in 0..r {
            for j in i + 1..r {
                let v = eng.intersection_multiplicity(i, j).unwrap();
                prop_assert!(v >= 1);
                prop_assert_eq!(v, eng.intersection_multiplicity(j, i).unwrap());
                pair_sum += v;
                all_transverse &= v == 1;
            }
        }
        // Smooth branches have delta 0, so the plane decomposition of delta
        // reduces to the pairwise intersection total.
        prop_assert_eq!(inv.delta, pair_sum);

        if all_transverse {
            // The node keeps its more specific label; larger transverse
            // configurations are ordinary multiple points.
            let expected = if r == 2 {
                LocalType::DoublePoint
            } else {
                LocalType::OrdinaryMultiplePoint
            };
            prop_assert_eq!(inv.local_type, expected);
            prop_assert_eq!(inv.milnor, (inv.r - 1) * (inv.r - 1));
        } else {
            prop_assert!(inv.local_type != LocalType::OrdinaryMultiplePoint);
        }

        let nu = eng.value_semigroup().unwrap();
        prop_assert_eq!(nu.gamma(), inv.conductor.as_slice());
        let from_nu = nu.sum_image().unwrap();
        let gamma = eng.gamma_semigroup().unwrap();
        prop_assert_eq!(from_nu.conductor(), gamma.conductor());
        prop_assert_eq!(from_nu.small_values(), gamma.small_values());

        let mut perm: Vec<usize> = (0..r).collect();
        perm.reverse();
        let permuted = spec.subcurve(&perm).unwrap();
        prop_assert!(equisingular(&spec, &permuted).unwrap());
    }

    /// Finite CM type agrees with membership in the ADE catalog on singular
    /// plane curves.
    #[test]
    fn finite_type_matches_catalog(branches in vec(any_branch(), 1..=2)) {
        prop_assume!(pairwise_distinct(&branches));
        let mut eng = Engine::new(spec_of(&branches));
        let inv = eng.invariants().unwrap();
        prop_assume!(inv.delta > 0);
        let finite = eng.has_finite_cm_type().unwrap();
        let ade = classify_engine(&mut eng).unwrap();
        prop_assert_eq!(finite, ade.is_some());
    }

    /// Reports are deterministic: two engines built from the same document
    /// serialize byte-identically, and the document JSON round-trips.
    #[test]
    fn deterministic_reports(branches in vec(any_branch(), 1..=2)) {
        prop_assume!(pairwise_distinct(&branches));
        let spec = spec_of(&branches);
        let doc = CurveDocument::from_spec(&spec);
        let json = doc.to_json();
        let reparsed = CurveDocument::from_json(&json).unwrap();
        prop_assert_eq!(reparsed.to_json(), json);

        let a = curvemilnor_core::Report::build(&mut Engine::new(spec.clone()))
            .unwrap()
            .to_json_string();
        let b = curvemilnor_core::Report::build(&mut Engine::new(spec))
            .unwrap()
            .to_json_string();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Numerical semigroups from two coprime generators follow the closed
    /// forms: conductor (a-1)(b-1), genus = conductor/2, symmetric.
    #[test]
    fn two_generator_semigroups(a in 2u32..=12, b in 2u32..=12) {
        prop_assume!(a < b && num::integer::gcd(a, b) == 1);
        let gamma = curvemilnor_core::NumericalSemigroup::from_generators(&[a, b]).unwrap();
        prop_assert_eq!(gamma.conductor(), (a - 1) * (b - 1));
        prop_assert_eq!(gamma.genus(), (a - 1) * (b - 1) / 2);
        prop_assert_eq!(gamma.min_nonzero(), a);
        prop_assert!(gamma.is_symmetric());
    }

    /// General finite generator sets: membership is closed under addition,
    /// the conductor is tight, and genus counts the gaps.
    #[test]
    fn generated_semigroup_closure(gens in vec(2u32..=15, 2..=4)) {
        prop_assume!(gens.iter().copied().reduce(num::integer::gcd) == Some(1));
        let gamma = curvemilnor_core::NumericalSemigroup::from_generators(&gens).unwrap();
        let c = gamma.conductor();
        if c > 0 {
            prop_assert!(!gamma.contains(c - 1));
        }
        prop_assert_eq!(gamma.genus() as usize, gamma.gaps().len());
        let members = gamma.members_through(c + 5);
        for &m in &members {
            for &n in &members {
                prop_assert!(gamma.contains(m + n));
            }
        }
        let symmetric = (0..c).all(|v| gamma.contains(v) != gamma.contains(c - 1 - v));
        prop_assert_eq!(gamma.is_symmetric(), symmetric);
    }
}
