mod common;

use fp2_uncertainty::arith::rat;
use fp2_uncertainty::bounds::{
    check_as2, check_as3, check_basic, check_birotao, check_conjecture, check_kp1,
    check_meshulam_alt, check_rational, lemma_aq_check, lemma_sxmn_check, profile, sumset_bound,
    ExceptionKind, Verdict,
};
use fp2_uncertainty::fourier::{fourier_transform, GFunc};
use fp2_uncertainty::plane::{lines_in_direction, LineSubgroup, Point, Side};
use fp2_uncertainty::search::{frontier, gallery, SearchSpace};
use fp2_uncertainty::{CycNum, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ok(v: Verdict) -> bool {
    matches!(v, Verdict::Holds | Verdict::HoldsWithEquality)
}

#[test]
fn sxmn_exhaustive_p3() {
    let alphabet = SearchSpace::int_alphabet(3, &[-1, 0, 1]).unwrap();
    let space = SearchSpace::exhaustive(3, 2, alphabet).unwrap();
    let hs: Vec<LineSubgroup> = (0..=3).map(|d| LineSubgroup::new(3, d, Side::Primal).unwrap()).collect();
    for i in 0..space.len() {
        let f = space.candidate(i);
        if f.is_zero() {
            continue;
        }
        for h in &hs {
            let r = lemma_sxmn_check(&f, h).unwrap();
            assert!(ok(r.verdict), "{} direction {}", f.to_literal(), h.direction);
        }
    }
}

#[test]
fn one_dimensional_example() {
    let f = GFunc::from_ints(5, 1, Side::Primal, &[1, 1, 0, 0, 0]).unwrap();
    let r = check_birotao(&f).unwrap();
    assert_eq!((r.s_size, r.x_size), (2, 5));
    assert_eq!(r.verdict, Verdict::Holds);
    assert!(matches!(
        check_meshulam_alt(&f),
        Err(Error::RankMismatch { expected: 2, found: 1 })
    ));
}

#[test]
fn character_on_coset_is_extremal_for_the_product() {
    let h = LineSubgroup::new(7, 4, Side::Primal).unwrap();
    let f = gallery::character_on_coset(&h, &Point::primal(3, 3), &Point::dual(2, 5), &CycNum::from_int(7, -3)).unwrap();
    assert_eq!(check_basic(&f).unwrap().verdict, Verdict::HoldsWithEquality);
}

#[test]
fn paired_cosets_meet_kp1_with_equality() {
    for p in [3u64, 5, 7] {
        let f = gallery::pm_two_cosets(p, 1, 0, 2).unwrap();
        let r = check_kp1(&f).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality, "p={p}");
        assert_eq!(r.lhs.to_string(), (p + 1).to_string());
    }
    let h = LineSubgroup::new(5, 0, Side::Primal).unwrap();
    let f = gallery::character_on_coset(&h, &Point::primal(1, 0), &Point::dual(1, 1), &CycNum::one(5)).unwrap();
    let r = check_kp1(&f).unwrap();
    assert_eq!(r.verdict, Verdict::Exception);
    assert_eq!(r.exception.unwrap().kind, ExceptionKind::SingleCosetCharacter);
}

#[test]
fn rational_check_examples() {
    let f = gallery::diff_of_subgroups(3, 0, 1).unwrap();
    let r = check_rational(&f).unwrap();
    assert_eq!(r.verdict, Verdict::HoldsWithEquality);
    assert_eq!((r.lhs.to_string(), r.rhs.to_string()), ("4".into(), "4".into()));

    // sum of values nonzero: spectrum is all of H^perp
    let f = gallery::subgroup_indicator(5, 2).unwrap();
    let r = check_rational(&f).unwrap();
    assert_eq!(r.verdict, Verdict::Exception);
    assert_eq!(r.x_size, 5);
    // zero sum: the trivial character drops out
    let g = gallery::pm_two_cosets(5, 2, 1, 3).unwrap();
    let r = check_rational(&g).unwrap();
    assert_eq!(r.verdict, Verdict::Exception);
    assert_eq!(r.x_size, 4);

    let complex = GFunc::parse_literal("3; 2; 1,z,0,0,0,0,0,0,0").unwrap();
    assert!(matches!(check_rational(&complex), Err(Error::NonRational)));
}

#[test]
fn conjecture_endpoints() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let f = common::random_function(&mut rng, 5, 2, &[-1, 0, 1]);
        if f.is_zero() {
            continue;
        }
        let one = check_conjecture(&f, 1).unwrap();
        let alt = check_meshulam_alt(&f).unwrap();
        assert_eq!(one.lhs, alt.lhs);
        assert_eq!(one.verdict, alt.verdict);
        assert!(ok(check_conjecture(&f, 5).unwrap().verdict));
    }
    let f = gallery::delta(5, 2, 0).unwrap();
    assert!(check_conjecture(&f, 0).is_err());
    assert!(check_conjecture(&f, 6).is_err());
}

#[test]
fn dots_sit_on_the_conjectured_lines() {
    // m = k, n = p + 1 - k lands on the k-th line
    let p = 7u32;
    for k in 1..=p {
        let f = gallery::yellow_dot(p as u64, k, p + 1 - k).unwrap();
        let r = check_conjecture(&f, k).unwrap();
        assert!(ok(r.verdict), "k={k}: {:?}", r.verdict);
    }
}

#[test]
fn escape_clauses_of_the_asymptotic_bounds() {
    let eps = rat(1, 2);
    let line = gallery::subgroup_indicator(5, 1).unwrap();
    assert_eq!(check_as2(&line, &eps).unwrap().verdict, Verdict::Exception);
    let two_lines = gallery::diff_of_subgroups(5, 0, 3).unwrap();
    assert_eq!(check_as3(&two_lines, &eps).unwrap().verdict, Verdict::Exception);
    let r = check_as2(&two_lines, &eps).unwrap();
    assert!(r.advisory);
    assert!(ok(r.verdict));
    assert!(check_as2(&line, &rat(1, 1)).is_err());
}

#[test]
fn additive_helpers() {
    assert_eq!(sumset_bound(&[2], &[4], 5).unwrap(), 1);
    assert_eq!(sumset_bound(&[0, 1], &[0, 1], 5).unwrap(), 3);
    assert_eq!(sumset_bound(&[0, 1, 2, 3, 4], &[1], 5).unwrap(), 5);
    assert!(sumset_bound(&[], &[1], 5).is_err());

    let p = 7u32;
    let chi = GFunc::from_values(7, 1, Side::Primal, (0..p).map(|x| CycNum::zeta_pow(p, 3 * x % p).scalar_mul(&rat(2, 1))).collect()).unwrap();
    let r = lemma_aq_check(&chi, &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(r.x_size, 1);
    assert!(ok(r.verdict));
    let mixed = GFunc::from_ints(7, 1, Side::Primal, &[1, 2, 3, 1, 1, 2, 5]).unwrap();
    assert_eq!(lemma_aq_check(&mixed, &[0, 1, 2, 3, 4]).unwrap().verdict, Verdict::HypothesisFails);
    assert!(lemma_aq_check(&mixed, &[0, 1, 2, 3]).is_err());
}

#[test]
fn frontier_witnesses_reverify() {
    let alphabet = SearchSpace::int_alphabet(3, &[0, 1]).unwrap();
    let map = frontier(&SearchSpace::exhaustive(3, 2, alphabet).unwrap()).unwrap();
    assert!(map.attained.contains_key(&(3, 3)));
    assert!(map.attained.contains_key(&(1, 9)));
    for (&(s, x), w) in &map.attained {
        let f = GFunc::parse_literal(&w.function).unwrap();
        assert_eq!((f.support_size(), fourier_transform(&f).unwrap().support_size()), (s, x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_invariants(seed in any::<u64>(), p in prop::sample::select(vec![3u32, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_function(&mut rng, p, 2, &[-1, 0, 0, 1]);
        prop_assume!(!f.is_zero());
        let prof = profile(&f).unwrap();
        for d in 0..=p {
            let h = LineSubgroup::new(p, d, Side::Primal).unwrap();
            let st = prof.stats(&h);
            let total: usize = lines_in_direction(&h)
                .iter()
                .map(|c| prof.s.count_on(c))
                .sum();
            prop_assert_eq!(total, prof.s.len());
            prop_assert!(st.n_s >= 1 && st.n_s * st.k_s <= prof.s.len());
            prop_assert!(st.k_s * p as usize >= prof.s.len());
            prop_assert!(prof.isolated_count(&h) <= st.k_x);
            let counts = prof.line_counts(&h);
            prop_assert_eq!(counts.len(), (p * p) as usize);
            for idx in prof.s.indices() {
                prop_assert!(counts[idx] >= 1);
            }
        }
    }
}
