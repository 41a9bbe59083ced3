#![allow(dead_code)]

use fp2_uncertainty::bounds::ExceptionKind;
use fp2_uncertainty::fourier::GFunc;
use fp2_uncertainty::plane::{coset_of, find_one_line_cover, LineSubgroup, Point, PointSet, Side};
use fp2_uncertainty::search::gallery;
use fp2_uncertainty::CycNum;
use rand::Rng;

/// `a + b·z^k` with small integers, never zero.
pub fn nonzero_value<R: Rng>(rng: &mut R, p: u32) -> CycNum {
    loop {
        let a = CycNum::from_int(p, rng.random_range(-2..=2));
        let b = CycNum::from_int(p, rng.random_range(-1..=1));
        let v = &a + &b.mul_zeta_pow(rng.random_range(1..p));
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn value<R: Rng>(rng: &mut R, p: u32) -> CycNum {
    if rng.random_bool(0.3) {
        CycNum::zero(p)
    } else {
        nonzero_value(rng, p)
    }
}

pub fn point<R: Rng>(rng: &mut R, p: u32, side: Side) -> Point {
    Point::new(rng.random_range(0..p), rng.random_range(0..p), side)
}

pub fn subgroup<R: Rng>(rng: &mut R, p: u32) -> LineSubgroup {
    LineSubgroup::new(p, rng.random_range(0..=p), Side::Primal).unwrap()
}

pub fn random_function<R: Rng>(rng: &mut R, p: u32, rank: u8, alphabet: &[i64]) -> GFunc {
    let n = (p as usize).pow(rank as u32);
    let vals: Vec<i64> = (0..n)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect();
    GFunc::from_ints(p as u64, rank, Side::Primal, &vals).unwrap()
}

pub fn random_cyclotomic_function<R: Rng>(rng: &mut R, p: u32, rank: u8) -> GFunc {
    let n = (p as usize).pow(rank as u32);
    let vals = (0..n).map(|_| value(rng, p)).collect();
    GFunc::from_values(p as u64, rank, Side::Primal, vals).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// Two characters on one coset.
    CosetsTwoI,
    /// One character on two cosets.
    CosetsTwoII,
    TwoParallel,
    TwoNonparallel,
}

pub const FORMS: [Form; 4] = [
    Form::CosetsTwoI,
    Form::CosetsTwoII,
    Form::TwoParallel,
    Form::TwoNonparallel,
];

impl Form {
    pub fn kind(self) -> ExceptionKind {
        match self {
            Form::CosetsTwoI => ExceptionKind::TwoCharactersOneCoset,
            Form::CosetsTwoII => ExceptionKind::OneCharacterTwoCosets,
            Form::TwoParallel => ExceptionKind::TwoParallelLines,
            Form::TwoNonparallel => ExceptionKind::TwoNonparallelLines,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Form::CosetsTwoI => "cosets2-i",
            Form::CosetsTwoII => "cosets2-ii",
            Form::TwoParallel => "twoparallel",
            Form::TwoNonparallel => "twononparallel",
        }
    }
}

/// A random nonzero function of the given form.
pub fn random_form<R: Rng>(rng: &mut R, p: u32, form: Form) -> GFunc {
    loop {
        let h = subgroup(rng, p);
        let perp = h.orthogonal();
        let f = match form {
            Form::CosetsTwoI => {
                let chi1 = point(rng, p, Side::Dual);
                let chi2 = point(rng, p, Side::Dual);
                if coset_of(&chi1, &perp).unwrap() == coset_of(&chi2, &perp).unwrap() {
                    continue;
                }
                gallery::characters_on_coset(
                    &h,
                    &point(rng, p, Side::Primal),
                    &[chi1, chi2],
                    &[nonzero_value(rng, p), nonzero_value(rng, p)],
                )
            }
            Form::CosetsTwoII => {
                let g1 = point(rng, p, Side::Primal);
                let g2 = point(rng, p, Side::Primal);
                if coset_of(&g1, &h).unwrap() == coset_of(&g2, &h).unwrap() {
                    continue;
                }
                gallery::character_on_two_cosets(
                    &h,
                    &g1,
                    &g2,
                    &point(rng, p, Side::Dual),
                    &nonzero_value(rng, p),
                    &nonzero_value(rng, p),
                )
            }
            Form::TwoParallel => {
                let chi1 = point(rng, p, Side::Dual);
                let chi2 = point(rng, p, Side::Dual);
                if coset_of(&chi1, &perp).unwrap() == coset_of(&chi2, &perp).unwrap() {
                    continue;
                }
                let f1: Vec<CycNum> = (0..p).map(|_| value(rng, p)).collect();
                let f2: Vec<CycNum> = (0..p).map(|_| value(rng, p)).collect();
                gallery::two_parallel_form(&h, &chi1, &chi2, &f1, &f2)
            }
            Form::TwoNonparallel => {
                let h2 = subgroup(rng, p);
                if h2.direction == h.direction {
                    continue;
                }
                let f1: Vec<CycNum> = (0..p).map(|_| value(rng, p)).collect();
                let f2: Vec<CycNum> = (0..p).map(|_| value(rng, p)).collect();
                gallery::two_nonparallel_form(&h, &h2, &point(rng, p, Side::Dual), &f1, &f2)
            }
        }
        .unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Whether `got` is a correct answer for a function built as `form`: either
/// the form itself or a structure the classifier tries earlier.
pub fn acceptable_kind(f: &GFunc, fhat: &GFunc, form: Form, got: ExceptionKind) -> bool {
    if got == form.kind() {
        return true;
    }
    let one_line = find_one_line_cover(&fhat.support()).is_some()
        || find_one_line_cover(&f.support()).is_some();
    let parallel = |set: &PointSet| {
        (0..=set.p()).any(|d| set.direction_counts(d).iter().filter(|&&c| c > 0).count() <= 2)
    };
    match form {
        Form::CosetsTwoI => false,
        // the character is trivial on H
        Form::CosetsTwoII => got == ExceptionKind::HPeriodic,
        Form::TwoParallel => one_line,
        Form::TwoNonparallel => one_line || parallel(&fhat.support()) || parallel(&f.support()),
    }
}
