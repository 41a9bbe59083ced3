mod common;

use common::{acceptable_kind, random_form, FORMS};
use fp2_uncertainty::bounds::{classify_exception, Analyzed, ExceptionKind};
use fp2_uncertainty::fourier::fourier_transform;
use fp2_uncertainty::plane::{LineSubgroup, Point, Side};
use fp2_uncertainty::search::gallery;
use fp2_uncertainty::{CycNum, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sizes(f: &fp2_uncertainty::fourier::GFunc) -> (usize, usize) {
    let a = Analyzed::new(f).unwrap();
    (a.s_size, a.x_size)
}

#[test]
fn remark_families_have_stated_sizes() {
    for p in [3u64, 5, 7, 11] {
        let q = p as usize;
        assert_eq!(sizes(&gallery::diff_of_subgroups(p, 0, 1).unwrap()), (2 * (q - 1), 2 * (q - 1)));
        assert_eq!(sizes(&gallery::pm_two_cosets(p, 2, 0, 1).unwrap()), (2 * q, q - 1));
        assert_eq!(sizes(&gallery::triple_subgroups(p, 0, 1, 2).unwrap()), (3 * (q - 1), 3 * (q - 1)));
        assert_eq!(sizes(&gallery::subgroup_indicator(p, 1).unwrap()), (q, q));
        assert_eq!(sizes(&gallery::delta(p, 2, 4).unwrap()), (1, q * q));
    }
}

#[test]
fn extremal_one_dimensional_functions() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for s in 1..=p as u32 {
            let f = gallery::extremal_1d(p, s).unwrap();
            let fhat = fourier_transform(&f).unwrap();
            assert_eq!(f.support_size(), s as usize, "p={p} s={s}");
            assert_eq!(fhat.support_size(), p as usize + 1 - s as usize, "p={p} s={s}");
        }
    }
}

#[test]
fn tensor_products_land_on_the_dots() {
    for p in [3u64, 5] {
        for m in 1..=p as u32 {
            for n in 1..=p as u32 {
                let f = gallery::yellow_dot(p, m, n).unwrap();
                let (mm, nn, pp) = (m as usize, n as usize, p as usize);
                assert_eq!(sizes(&f), (mm * (pp + 1 - nn), nn * (pp + 1 - mm)));
            }
        }
    }
}

#[test]
fn degenerate_parameters_are_rejected() {
    let degenerate = |r: fp2_uncertainty::Result<_>| {
        matches!(r, Err(Error::InvalidParameter(m)) if m.starts_with("degenerate"))
    };
    assert!(degenerate(gallery::diff_of_subgroups(5, 2, 2)));
    assert!(degenerate(gallery::triple_subgroups(5, 0, 1, 0)));
    assert!(degenerate(gallery::pm_two_cosets(5, 0, 3, 3)));
    let h = LineSubgroup::new(5, 0, Side::Primal).unwrap();
    let z = CycNum::zero(5);
    assert!(degenerate(gallery::character_on_coset(&h, &Point::primal(0, 0), &Point::dual(0, 0), &z)));
    assert!(degenerate(gallery::character_on_two_cosets(
        &h,
        &Point::primal(1, 0),
        &Point::primal(3, 0),
        &Point::dual(0, 1),
        &CycNum::one(5),
        &CycNum::one(5),
    )));
    assert!(gallery::by_name("no-such-family", 5).is_err());
    assert!(gallery::extremal_1d(5, 6).is_err());
}

#[test]
fn every_named_family_builds() {
    for name in gallery::FAMILIES {
        for p in [3u64, 5, 7] {
            let f = gallery::by_name(name, p).unwrap();
            assert!(!f.is_zero(), "{name} at p={p}");
        }
    }
}

#[test]
fn one_line_examples_classify_as_expected() {
    let p = 5;
    let h = LineSubgroup::new(p, 3, Side::Primal).unwrap();
    let f = gallery::character_on_coset(&h, &Point::primal(2, 0), &Point::dual(1, 4), &CycNum::from_int(p, 3)).unwrap();
    let d = classify_exception(&f).unwrap().unwrap();
    assert_eq!(d.kind, ExceptionKind::SingleCosetCharacter);
    assert_eq!(d.reconstruct().unwrap(), f);

    let periodic = gallery::subgroup_indicator(5, 2).unwrap();
    let d = classify_exception(&periodic).unwrap().unwrap();
    assert_eq!(d.kind, ExceptionKind::HPeriodic);

    let generic = gallery::yellow_dot(5, 3, 3).unwrap();
    assert!(classify_exception(&generic).unwrap().is_none());
}

#[test]
fn classifier_round_trip_small_batch() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for form in FORMS {
        for i in 0..40 {
            let p = [3, 5, 7][i % 3];
            let f = random_form(&mut rng, p, form);
            let fhat = fourier_transform(&f).unwrap();
            let d = classify_exception(&f)
                .unwrap()
                .unwrap_or_else(|| panic!("{} not classified: {}", form.name(), f.to_literal()));
            assert_eq!(d.reconstruct().unwrap(), f, "{}: {}", form.name(), f.to_literal());
            assert!(acceptable_kind(&f, &fhat, form, d.kind), "{} gave {:?}", form.name(), d.kind);
            if let Some(s) = &d.sandwich {
                assert!(s.holds, "{}: sandwich fails for {}", form.name(), f.to_literal());
            }
        }
    }
}
