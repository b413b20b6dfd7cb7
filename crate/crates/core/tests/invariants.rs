use num_bigint::BigInt;
use proptest::prelude::*;
use verlinde_core::arith::{binomial, divisors, gcd};
use verlinde_core::cyclo::Rat;
use verlinde_core::output::OutputRecord;
use verlinde_core::suites::{self, Check, FINAL_IDENTITY_TUPLES};
use verlinde_core::verlinde::{
    brace_symbol, decompose, enumerate_characters, mult_theorem1, mult_theorem3,
    order_orbit_automorphism, restrict_to_torsion, tensor_power_shape, theorem2_decompose,
    Character, MultiplicityTable, Theorem3TraceTable,
};

fn assert_all_pass(checks: Vec<Check>) {
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn sym_trace_support_and_closed_form() {
    assert_all_pass(suites::sym_trace_closed_form(6, 8));
}

#[test]
fn sym_traces_are_central_class_functions() {
    assert_all_pass(suites::sym_trace_centrality(5, 6));
}

#[test]
fn rank_one_case_of_general_formula() {
    assert_all_pass(suites::r1_consistency(6, 4));
}

#[test]
fn representation_identity_is_representative_independent() {
    assert_all_pass(suites::representative_independence(&FINAL_IDENTITY_TUPLES));
}

#[test]
fn json_round_trip_small_reports() {
    for rank in 1..=6 {
        for level in 1..=8 {
            let rec = OutputRecord::from_report(&decompose(rank, level).unwrap());
            let parsed = OutputRecord::from_json(&rec.to_json()).unwrap();
            assert_eq!(parsed, rec, "({rank},{level})");
            assert!(rec
                .summands
                .windows(2)
                .all(|w| (w[0].order, w[0].character_rep) < (w[1].order, w[1].character_rep)));
        }
    }
}

#[test]
fn theorem2_matches_line_bundle_table() {
    for r in 1..=8i64 {
        for d in -6..=6i64 {
            let h = gcd(r as usize, d.unsigned_abs() as usize);
            for level in (h..=3 * h).step_by(h) {
                let rep = theorem2_decompose(r, d, level, 0).unwrap();
                let expected = MultiplicityTable::theorem1(h, level / h + 1).unwrap();
                assert_eq!(rep.table, expected);
            }
        }
    }
}

proptest! {
    #[test]
    fn rank_is_conserved(rank in 1usize..=12, level in 1usize..=16) {
        let rep = decompose(rank, level).unwrap();
        prop_assert_eq!(&rep.rank_total, &binomial(level + rank - 1, rank - 1));
        let summed: BigInt = rep.summands.iter().map(|s| &s.multiplicity * BigInt::from(s.descriptor.rank)).sum();
        prop_assert_eq!(summed, rep.rank_total.clone());
        prop_assert_eq!(rep.summands.len(), rep.h * rep.h);
        prop_assert_eq!(gcd(rep.r, rep.k), 1);
    }

    #[test]
    fn line_bundle_multiplicities_are_natural(h in 1usize..=20, q in 2usize..=6) {
        for omega in divisors(h) {
            let m = mult_theorem1(h, q, omega).unwrap();
            prop_assert!(m.is_integer() && m >= Rat::from_integer(0.into()), "m={}", m);
            prop_assert_eq!(mult_theorem3(h, 1, q - 1, omega).unwrap(), m);
        }
    }

    #[test]
    fn symbol_is_multiplicative(h1 in 1usize..=30, h2 in 1usize..=30, lam in 0usize..200) {
        prop_assume!(gcd(h1, h2) == 1);
        prop_assert_eq!(brace_symbol(lam, h1 * h2), brace_symbol(lam, h1) * brace_symbol(lam, h2));
    }

    #[test]
    fn symbol_depends_on_lam_mod_h(h in 1usize..=40, lam in 0usize..100) {
        prop_assert_eq!(brace_symbol(lam, h), brace_symbol(lam + h, h));
    }

    #[test]
    fn tensor_power_bookkeeping(h in 1usize..=9, d in -9i64..=9, k in 1usize..=6) {
        prop_assume!(gcd(h, d.unsigned_abs() as usize) == 1);
        let s = tensor_power_shape(h, d, k).unwrap();
        prop_assert_eq!(&s.count * BigInt::from(s.summand_rank), BigInt::from(h).pow(k as u32));
        prop_assert_eq!(&s.count * BigInt::from(s.summand_degree), s.total_degree.clone());
        prop_assert_eq!(gcd(s.h_prime, s.k_prime), 1);
    }

    #[test]
    fn orbit_search_connects_equal_orders(h in 1usize..=9, a1 in 0i64..9, b1 in 0i64..9, a2 in 0i64..9, b2 in 0i64..9) {
        let c1 = Character::new(h, a1, b1).unwrap();
        let c2 = Character::new(h, a2, b2).unwrap();
        let result = order_orbit_automorphism(h, &c1, &c2);
        if c1.order() == c2.order() {
            let rep = result.unwrap();
            prop_assert!(rep.induced_map_ok);
            prop_assert!(rep.automorphism.determinant_is_one());
        } else {
            prop_assert!(result.is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem3_oracle_sees_only_the_restriction(
        idx in 0usize..64,
        a in 0usize..6,
        b in 0usize..6,
        sa in 0usize..6,
        sb in 0usize..6,
    ) {
        let tuples = suites::theorem3_tuples(6, 3);
        let (h, r, k) = tuples[idx % tuples.len()];
        let n = h * r;
        let table = Theorem3TraceTable::new(h, r, k).unwrap();
        let chi = Character::new(n, (a % n) as i64, (b % n) as i64).unwrap();
        let shifted = Character::new(n, (chi.a() + h * sa) as i64, (chi.b() + h * sb) as i64).unwrap();
        prop_assert_eq!(restrict_to_torsion(&chi, h, r).unwrap(), restrict_to_torsion(&shifted, h, r).unwrap());
        prop_assert_eq!(table.multiplicity(&chi).unwrap(), table.multiplicity(&shifted).unwrap());
    }
}

#[test]
fn every_character_is_listed_once() {
    for h in 1..=12 {
        let chars = enumerate_characters(h);
        let mut pairs: Vec<_> = chars.iter().map(|c| (c.a(), c.b())).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), h * h);
    }
}
