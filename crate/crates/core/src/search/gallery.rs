//! Explicit functions with known support sizes.

use crate::arith::check_prime;
use crate::bounds::{ExceptionDescriptor, ExceptionKind};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::fourier::GFunc;
use crate::plane::{coset_of, LineSubgroup, Point, PointSet, Side};

fn subgroup(p: u32, d: u32) -> Result<LineSubgroup> {
    LineSubgroup::new(p, d, Side::Primal)
}

fn degenerate(msg: &str) -> Error {
    Error::InvalidParameter(format!("degenerate parameters: {msg}"))
}

fn distinct(ds: &[u32]) -> bool {
    ds.iter()
        .enumerate()
        .all(|(i, a)| ds[i + 1..].iter().all(|b| a != b))
}

/// `δ_g`: one at `g`, zero elsewhere.
pub fn delta(p: u64, rank: u8, at: usize) -> Result<GFunc> {
    let q = check_prime(p)?;
    let mut f = GFunc::zero(q, rank, Side::Primal);
    if at >= f.order() {
        return Err(Error::InvalidParameter(format!("index {at} is outside the group")));
    }
    f.set(at, CycNum::one(q));
    Ok(f)
}

/// Indicator of the coset `g + H_d`.
pub fn coset_indicator(p: u64, d: u32, g: &Point) -> Result<GFunc> {
    let h = subgroup(check_prime(p)?, d)?;
    Ok(GFunc::indicator(&PointSet::from_coset(&coset_of(g, &h)?)))
}

pub fn subgroup_indicator(p: u64, d: u32) -> Result<GFunc> {
    coset_indicator(p, d, &Point::primal(0, 0))
}

/// `1_{H₁} - 1_{H₂}`.
pub fn diff_of_subgroups(p: u64, d1: u32, d2: u32) -> Result<GFunc> {
    if d1 == d2 {
        return Err(degenerate("the two subgroups coincide"));
    }
    subgroup_indicator(p, d1)?.sub(&subgroup_indicator(p, d2)?)
}

/// `+1` on the coset with intercept `c1`, `-1` on the one with intercept `c2`.
pub fn pm_two_cosets(p: u64, d: u32, c1: u32, c2: u32) -> Result<GFunc> {
    let q = check_prime(p)?;
    if c1 % q == c2 % q {
        return Err(degenerate("the two cosets coincide"));
    }
    let offset = |c: u32| {
        crate::plane::Coset::from_id(q, Side::Primal, (d * q + c % q) as usize).offset
    };
    coset_indicator(p, d, &offset(c1))?.sub(&coset_indicator(p, d, &offset(c2))?)
}

/// `1_{H₁} + 1_{H₂} - 2·1_{H₃}`.
pub fn triple_subgroups(p: u64, d1: u32, d2: u32, d3: u32) -> Result<GFunc> {
    if !distinct(&[d1, d2, d3]) {
        return Err(degenerate("the three subgroups must be distinct"));
    }
    let two = CycNum::from_int(check_prime(p)?, 2);
    subgroup_indicator(p, d1)?
        .add(&subgroup_indicator(p, d2)?)?
        .sub(&subgroup_indicator(p, d3)?.scale(&two))
}

fn descriptor(p: u32, kind: ExceptionKind) -> ExceptionDescriptor {
    ExceptionDescriptor {
        kind,
        dual: false,
        p,
        subgroups: vec![],
        offsets: vec![],
        characters: vec![],
        coefficients: vec![],
        components: vec![],
        sandwich: None,
    }
}

fn require_nonzero(c: &CycNum) -> Result<()> {
    if c.is_zero() {
        Err(degenerate("coefficient is zero"))
    } else {
        Ok(())
    }
}

/// `c·χ` on `g + H`, zero elsewhere.
pub fn character_on_coset(h: &LineSubgroup, g: &Point, chi: &Point, c: &CycNum) -> Result<GFunc> {
    require_nonzero(c)?;
    ExceptionDescriptor {
        subgroups: vec![*h],
        offsets: vec![*g],
        characters: vec![*chi],
        coefficients: vec![c.clone()],
        ..descriptor(h.p, ExceptionKind::SingleCosetCharacter)
    }
    .reconstruct()
}

/// `Σ cᵢχᵢ` on `g + H`; the `χᵢ` must lie in distinct `H^⊥`-cosets and at
/// most one `cᵢ` may vanish.
pub fn characters_on_coset(
    h: &LineSubgroup,
    g: &Point,
    chis: &[Point],
    coeffs: &[CycNum],
) -> Result<GFunc> {
    let p = h.p;
    let perp = h.orthogonal();
    if chis.len() != coeffs.len() || chis.len() < 2 {
        return Err(degenerate("need matching characters and coefficients"));
    }
    let classes: Vec<u32> = chis
        .iter()
        .map(|c| Ok(coset_of(&c.with_side(Side::Dual), &perp)?.intercept_value()))
        .collect::<Result<_>>()?;
    if !distinct(&classes) {
        return Err(degenerate("characters share an orthogonal coset"));
    }
    if coeffs.iter().filter(|c| c.is_zero()).count() > 1 {
        return Err(degenerate("more than one coefficient vanishes"));
    }
    let kind = if chis.len() == 2 {
        ExceptionKind::TwoCharactersOneCoset
    } else {
        ExceptionKind::CharactersOneCoset
    };
    ExceptionDescriptor {
        subgroups: vec![*h],
        offsets: vec![*g],
        characters: chis.to_vec(),
        coefficients: coeffs.to_vec(),
        ..descriptor(p, kind)
    }
    .reconstruct()
}

/// `cᵢ·χ` on `gᵢ + H` for two distinct cosets; at most one `cᵢ` may vanish.
pub fn character_on_two_cosets(
    h: &LineSubgroup,
    g1: &Point,
    g2: &Point,
    chi: &Point,
    c1: &CycNum,
    c2: &CycNum,
) -> Result<GFunc> {
    if coset_of(g1, h)? == coset_of(g2, h)? {
        return Err(degenerate("the two cosets coincide"));
    }
    if c1.is_zero() && c2.is_zero() {
        return Err(degenerate("both coefficients vanish"));
    }
    ExceptionDescriptor {
        subgroups: vec![*h],
        offsets: vec![*g1, *g2],
        characters: vec![*chi],
        coefficients: vec![c1.clone(), c2.clone()],
        ..descriptor(h.p, ExceptionKind::OneCharacterTwoCosets)
    }
    .reconstruct()
}

/// `χ₁f₁ + χ₂f₂` with `fᵢ` constant on `H`-lines, given by intercept.
pub fn two_parallel_form(
    h: &LineSubgroup,
    chi1: &Point,
    chi2: &Point,
    f1: &[CycNum],
    f2: &[CycNum],
) -> Result<GFunc> {
    let perp = h.orthogonal();
    let p = h.p as usize;
    if f1.len() != p || f2.len() != p {
        return Err(degenerate("components need one value per line"));
    }
    if coset_of(&chi1.with_side(Side::Dual), &perp)? == coset_of(&chi2.with_side(Side::Dual), &perp)? {
        return Err(degenerate("characters share an orthogonal coset"));
    }
    ExceptionDescriptor {
        subgroups: vec![*h],
        characters: vec![*chi1, *chi2],
        components: vec![f1.to_vec(), f2.to_vec()],
        ..descriptor(h.p, ExceptionKind::TwoParallelLines)
    }
    .reconstruct()
}

/// `χ(t₁e₁ + t₂e₂)(f₁[t₁] + f₂[t₂])`.
pub fn two_nonparallel_form(
    h1: &LineSubgroup,
    h2: &LineSubgroup,
    chi: &Point,
    f1: &[CycNum],
    f2: &[CycNum],
) -> Result<GFunc> {
    let p = h1.p as usize;
    if h1.direction == h2.direction {
        return Err(degenerate("the two subgroups coincide"));
    }
    if f1.len() != p || f2.len() != p {
        return Err(degenerate("components need one value per subgroup element"));
    }
    ExceptionDescriptor {
        subgroups: vec![*h1, *h2],
        characters: vec![*chi],
        components: vec![f1.to_vec(), f2.to_vec()],
        ..descriptor(h1.p, ExceptionKind::TwoNonparallelLines)
    }
    .reconstruct()
}

/// Coefficients of `Π_{a=1}^{s-1} (z - ζ^{-a})` as a function on `F_p`:
/// `s` nonzero values with `p + 1 - s` nonzero Fourier coefficients.
pub fn extremal_1d(p: u64, s: u32) -> Result<GFunc> {
    let q = check_prime(p)?;
    if s == 0 || s > q {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= {q}, got {s}")));
    }
    let mut poly = vec![CycNum::one(q)];
    for a in 1..s {
        let root = CycNum::zeta_pow(q, (q - a) % q);
        let mut next = vec![CycNum::zero(q); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &root);
        }
        poly = next;
    }
    poly.resize(q as usize, CycNum::zero(q));
    GFunc::from_values(p, 1, Side::Primal, poly)
}

/// `a(x)·b(y)` with `|S| = m(p+1-n)` and `|X| = n(p+1-m)`.
pub fn yellow_dot(p: u64, m: u32, n: u32) -> Result<GFunc> {
    let q = check_prime(p)?;
    if m == 0 || n == 0 || m > q || n > q {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m, n <= {q}, got ({m}, {n})"
        )));
    }
    let a = extremal_1d(p, m)?;
    let b = extremal_1d(p, q + 1 - n)?;
    let mut f = GFunc::zero(q, 2, Side::Primal);
    for x in 0..q {
        for y in 0..q {
            f.set(
                Point::primal(x, y).index(q),
                a.value(x as usize) * b.value(y as usize),
            );
        }
    }
    Ok(f)
}

/// Gallery entry by name with default parameters, for command-line use.
pub fn by_name(name: &str, p: u64) -> Result<GFunc> {
    let q = check_prime(p)?;
    let unit = CycNum::one(q);
    match name {
        "delta" => delta(p, 2, 0),
        "subgroup" => subgroup_indicator(p, 0),
        "coset" => coset_indicator(p, 0, &Point::primal(0, 1)),
        "diff-of-subgroups" | "diff_of_subgroups" => diff_of_subgroups(p, 0, 1),
        "pm-two-cosets" | "pm_two_cosets" => pm_two_cosets(p, 0, 0, 1),
        "triple-subgroups" | "triple_subgroups" => triple_subgroups(p, 0, 1, 2),
        "character-on-coset" | "character_on_coset" => character_on_coset(
            &subgroup(q, 1)?,
            &Point::primal(0, 1),
            &Point::dual(1, 0),
            &unit,
        ),
        "yellow-dot" | "yellow_dot" => yellow_dot(p, 2.min(q), 2.min(q)),
        other => Err(Error::InvalidParameter(format!(
            "unknown family `{other}`; expected one of {}",
            FAMILIES.join(", ")
        ))),
    }
}

pub const FAMILIES: [&str; 8] = [
    "delta",
    "subgroup",
    "coset",
    "diff-of-subgroups",
    "pm-two-cosets",
    "triple-subgroups",
    "character-on-coset",
    "yellow-dot",
];
