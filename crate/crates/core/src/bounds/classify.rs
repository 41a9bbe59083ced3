//! Structural classification of functions whose support or spectrum sits in
//! one or two lines.

use serde::Serialize;

use crate::arith::{rat, rat_int};
use crate::cyclotomic::{CycAccumulator, CycNum};
use crate::error::{Error, Result};
use crate::fourier::{inverse_transform, GFunc};
use crate::plane::{
    coset_of, direction_of, find_one_line_cover, lines_in_direction, pairing, Coset, LineSubgroup,
    Point, PointSet, Side,
};

use super::{Analyzed, Quantity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionKind {
    /// `c·χ` on one coset.
    SingleCosetCharacter,
    /// `c₁χ₁ + c₂χ₂` on one coset, `χ₂ ∉ χ₁H^⊥`.
    TwoCharactersOneCoset,
    /// `Σ cᵢχᵢ` on one coset, three or more `H^⊥`-classes.
    CharactersOneCoset,
    /// `cᵢ·χ` on two cosets of `H`.
    OneCharacterTwoCosets,
    /// `cᵢ·χ` on three or more cosets of `H`, `χ ∉ H^⊥`.
    OneCharacterCosets,
    /// Constant on `H`-cosets.
    HPeriodic,
    /// `χ₁f₁ + χ₂f₂` with `H`-periodic `f₁, f₂`.
    TwoParallelLines,
    /// `χ(h₁+h₂)(f₁(h₁) + f₂(h₂))` over `G = H₁ ⊕ H₂`.
    TwoNonparallelLines,
}

impl ExceptionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionKind::SingleCosetCharacter => "single-coset-character",
            ExceptionKind::TwoCharactersOneCoset => "two-characters-one-coset",
            ExceptionKind::CharactersOneCoset => "characters-one-coset",
            ExceptionKind::OneCharacterTwoCosets => "one-character-two-cosets",
            ExceptionKind::OneCharacterCosets => "one-character-cosets",
            ExceptionKind::HPeriodic => "h-periodic",
            ExceptionKind::TwoParallelLines => "two-parallel-lines",
            ExceptionKind::TwoNonparallelLines => "two-nonparallel-lines",
        }
    }
}

/// Cardinality sandwich `lower ≤ value ≤ upper` attached to two-line forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sandwich {
    pub lower: Quantity,
    pub value: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Quantity>,
    pub holds: bool,
}

/// Parameters of a structured function. With `dual` set, the description is
/// of `f̂` as a function on the dual group: subgroups and offsets then live in
/// the dual plane and the characters are points of `G`.
///
/// * one-coset forms: `f(z) = Σ cᵢχᵢ(z)` on `offsets[0] + H`;
/// * one-character forms and `h-periodic`: `f(z) = cᵢχ(z)` on `offsets[i] + H`;
/// * `two-parallel-lines`: `f(z) = χ₁(z)f₁[ℓ(z)] + χ₂(z)f₂[ℓ(z)]`, with `ℓ(z)`
///   the intercept of the `H`-line through `z`;
/// * `two-nonparallel-lines`: `f(t₁e₁ + t₂e₂) = χ(·)(f₁[t₁] + f₂[t₂])`, with
///   `eᵢ` the generator of `Hᵢ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionDescriptor {
    pub kind: ExceptionKind,
    pub dual: bool,
    pub p: u32,
    pub subgroups: Vec<LineSubgroup>,
    pub offsets: Vec<Point>,
    pub characters: Vec<Point>,
    pub coefficients: Vec<CycNum>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<CycNum>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<Sandwich>,
}

fn primal_h(h: &LineSubgroup) -> LineSubgroup {
    LineSubgroup {
        side: Side::Primal,
        ..*h
    }
}

impl ExceptionDescriptor {
    /// Rebuilds the primal function exactly.
    pub fn reconstruct(&self) -> Result<GFunc> {
        let p = self.p;
        let hs: Vec<LineSubgroup> = self.subgroups.iter().map(primal_h).collect();
        let offsets: Vec<Point> = self.offsets.iter().map(|g| g.with_side(Side::Primal)).collect();
        let chars: Vec<Point> = self.characters.iter().map(|c| c.with_side(Side::Dual)).collect();
        let bad = || Error::InvalidParameter(format!("malformed {} descriptor", self.kind.name()));
        let mut f = GFunc::zero(p, 2, Side::Primal);
        match self.kind {
            ExceptionKind::TwoCharactersOneCoset | ExceptionKind::CharactersOneCoset => {
                let h = hs.first().ok_or_else(bad)?;
                let g = offsets.first().ok_or_else(bad)?;
                if chars.len() != self.coefficients.len() {
                    return Err(bad());
                }
                for z in coset_of(g, h)?.points() {
                    let mut acc = CycAccumulator::new(p);
                    for (chi, c) in chars.iter().zip(&self.coefficients) {
                        acc.add_shifted(c, pairing(chi, &z, p));
                    }
                    f.set(z.index(p), acc.finish());
                }
            }
            ExceptionKind::SingleCosetCharacter
            | ExceptionKind::OneCharacterTwoCosets
            | ExceptionKind::OneCharacterCosets
            | ExceptionKind::HPeriodic => {
                let h = hs.first().ok_or_else(bad)?;
                let chi = chars.first().ok_or_else(bad)?;
                if offsets.len() != self.coefficients.len() {
                    return Err(bad());
                }
                for (g, c) in offsets.iter().zip(&self.coefficients) {
                    for z in coset_of(g, h)?.points() {
                        f.set(z.index(p), c.mul_zeta_pow(pairing(chi, &z, p)));
                    }
                }
            }
            ExceptionKind::TwoParallelLines => {
                let h = hs.first().ok_or_else(bad)?;
                if chars.len() != 2 || self.components.len() != 2 {
                    return Err(bad());
                }
                for i in 0..(p * p) as usize {
                    let z = Point::from_index(i, p, Side::Primal);
                    let c = coset_of(&z, h)?.intercept_value() as usize;
                    let mut acc = CycAccumulator::new(p);
                    for (chi, comp) in chars.iter().zip(&self.components) {
                        acc.add_shifted(comp.get(c).ok_or_else(bad)?, pairing(chi, &z, p));
                    }
                    f.set(i, acc.finish());
                }
            }
            ExceptionKind::TwoNonparallelLines => {
                if hs.len() != 2 || chars.len() != 1 || self.components.len() != 2 {
                    return Err(bad());
                }
                let chi = &chars[0];
                for i in 0..(p * p) as usize {
                    let z = Point::from_index(i, p, Side::Primal);
                    let (t1, t2) = decompose(&z, &hs[0], &hs[1]).ok_or_else(bad)?;
                    let v = &self.components[0][t1 as usize] + &self.components[1][t2 as usize];
                    f.set(i, v.mul_zeta_pow(pairing(chi, &z, p)));
                }
            }
        }
        if self.dual {
            inverse_transform(&f.with_side(Side::Dual))
        } else {
            Ok(f)
        }
    }
}

/// Coordinates `(t₁, t₂)` with `z = t₁e₁ + t₂e₂`.
fn decompose(z: &Point, h1: &LineSubgroup, h2: &LineSubgroup) -> Option<(u32, u32)> {
    let p = h1.p;
    let origin2 = Coset {
        subgroup: *h2,
        offset: Point::new(0, 0, h2.side),
    };
    let part2 = coset_of(z, h1).ok()?.intersection(&origin2)?;
    let part1 = z.sub(&part2, p);
    Some((h1.coordinate(&part1)?, h2.coordinate(&part2)?))
}

/// The parallel pair of lines holding `set`, as `(direction, [intercepts])`.
fn parallel_cover(set: &PointSet) -> Option<(u32, [u32; 2])> {
    (0..=set.p()).find_map(|d| {
        let met: Vec<u32> = set
            .direction_counts(d)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i as u32)
            .collect();
        (met.len() == 2).then(|| (d, [met[0], met[1]]))
    })
}

/// The nonparallel pair of lines holding `set` with the least directions.
fn nonparallel_cover(set: &PointSet) -> Option<(Coset, Coset)> {
    let p = set.p();
    let side = set.side();
    let pts = set.points();
    let first = *pts.first()?;
    let mut best: Option<(Coset, Coset)> = None;
    let mut consider = |a: Coset, b: Coset| {
        let (a, b) = if a.subgroup.direction < b.subgroup.direction {
            (a, b)
        } else {
            (b, a)
        };
        let key = |x: &(Coset, Coset)| (x.0.id(), x.1.id());
        if best.as_ref().is_none_or(|cur| key(&(a, b)) < key(cur)) {
            best = Some((a, b));
        }
    };
    for d in 0..=p {
        let h = LineSubgroup { p, direction: d, side };
        let a = coset_of(&first, &h).ok()?;
        let rest: Vec<Point> = pts.iter().copied().filter(|q| !a.contains(q)).collect();
        match rest.len() {
            0 => {}
            1 => {
                for d2 in (0..=p).filter(|&d2| d2 != d) {
                    let h2 = LineSubgroup { p, direction: d2, side };
                    consider(a, coset_of(&rest[0], &h2).ok()?);
                }
            }
            _ => {
                let v = rest[1].sub(&rest[0], p);
                let d2 = direction_of(v.x, v.y, p);
                if d2 == d {
                    continue;
                }
                let h2 = LineSubgroup { p, direction: d2, side };
                let b = coset_of(&rest[0], &h2).ok()?;
                if rest.iter().all(|q| b.contains(q)) {
                    consider(a, b);
                }
            }
        }
    }
    best
}

/// Function and transform with the roles of `G` and its dual exchanged: `F`
/// is `f̂` read as a function on `G`, and `F̂(χ) = |G|⁻¹ f(-χ)`.
fn dualize(a: &Analyzed) -> (GFunc, GFunc) {
    let p = a.f.p();
    let big = a.fhat.clone().with_side(Side::Primal);
    let mut big_hat = GFunc::zero(p, 2, Side::Dual);
    let inv = rat(1, (p * p) as i64);
    for i in a.f.support_indices() {
        let g = Point::from_index(i, p, Side::Primal);
        let neg = Point::new((p - g.x) % p, (p - g.y) % p, Side::Dual);
        big_hat.set(neg.index(p), a.f.value(i).scalar_mul(&inv));
    }
    (big, big_hat)
}

fn sides_for(dual: bool) -> (Side, Side) {
    if dual {
        (Side::Dual, Side::Primal)
    } else {
        (Side::Primal, Side::Dual)
    }
}

fn present(mut d: ExceptionDescriptor) -> ExceptionDescriptor {
    let (group, chars) = sides_for(d.dual);
    for h in d.subgroups.iter_mut() {
        h.side = group;
    }
    for g in d.offsets.iter_mut() {
        g.side = group;
    }
    for c in d.characters.iter_mut() {
        c.side = chars;
    }
    d
}

/// `f` with spectrum in one dual line `χH^⊥`: `χ̄f` is `H`-periodic.
fn one_dual_line(f: &GFunc, x: &PointSet, dual: bool) -> Option<ExceptionDescriptor> {
    let line = find_one_line_cover(x)?;
    let p = f.p();
    let h = line.subgroup.orthogonal();
    let chi = line.offset;
    let mut offsets = Vec::new();
    let mut coefficients = Vec::new();
    for coset in lines_in_direction(&h) {
        let g = coset.offset;
        let v = f.at(&g);
        if !v.is_zero() {
            offsets.push(g);
            coefficients.push(v.mul_zeta_pow((p - pairing(&chi, &g, p)) % p));
        }
    }
    let kind = if chi.is_origin() {
        ExceptionKind::HPeriodic
    } else {
        match offsets.len() {
            1 => ExceptionKind::SingleCosetCharacter,
            2 => ExceptionKind::OneCharacterTwoCosets,
            _ => ExceptionKind::OneCharacterCosets,
        }
    };
    Some(present(ExceptionDescriptor {
        kind,
        dual,
        p,
        subgroups: vec![h],
        offsets,
        characters: vec![chi],
        coefficients,
        components: vec![],
        sandwich: None,
    }))
}

/// `f` supported on one line `g+H`: `f = Σ cᵢχᵢ` there, `cᵢ = p·f̂(χᵢ)`.
fn one_primal_line(f: &GFunc, fhat: &GFunc, s: &PointSet) -> Option<ExceptionDescriptor> {
    let line = find_one_line_cover(s)?;
    let p = f.p();
    let pr = rat_int(p as i64);
    let mut characters = Vec::new();
    let mut coefficients = Vec::new();
    for coset in lines_in_direction(&line.subgroup.orthogonal()) {
        let v = fhat.at(&coset.offset);
        if !v.is_zero() {
            characters.push(coset.offset);
            coefficients.push(v.scalar_mul(&pr));
        }
    }
    let kind = match characters.len() {
        1 => ExceptionKind::SingleCosetCharacter,
        2 => ExceptionKind::TwoCharactersOneCoset,
        _ => ExceptionKind::CharactersOneCoset,
    };
    Some(ExceptionDescriptor {
        kind,
        dual: false,
        p,
        subgroups: vec![line.subgroup],
        offsets: vec![line.offset],
        characters,
        coefficients,
        components: vec![],
        sandwich: None,
    })
}

/// `Σ_{ψ ∈ K} f̂(χ + ψ) ζ^⟨ψ, g⟩`, optionally skipping `ψ = 0`.
fn perp_sum(fhat: &GFunc, chi: &Point, k: &LineSubgroup, g: &Point, skip_origin: bool) -> CycNum {
    let p = fhat.p();
    let mut acc = CycAccumulator::new(p);
    for psi in k.points() {
        if skip_origin && psi.is_origin() {
            continue;
        }
        acc.add_shifted(fhat.at(&chi.add(&psi, p)), pairing(&psi, g, p));
    }
    acc.finish()
}

fn two_parallel(f: &GFunc, fhat: &GFunc, x: &PointSet, dual: bool) -> Option<ExceptionDescriptor> {
    let (d, intercepts) = parallel_cover(x)?;
    let p = f.p();
    let k = LineSubgroup { p, direction: d, side: Side::Dual };
    let h = k.orthogonal();
    let characters: Vec<Point> = intercepts
        .iter()
        .map(|&c| Coset::from_id(p, Side::Dual, (d * p + c) as usize).offset)
        .collect();
    let reps: Vec<Point> = lines_in_direction(&h).iter().map(|c| c.offset).collect();
    let components: Vec<Vec<CycNum>> = characters
        .iter()
        .map(|chi| reps.iter().map(|g| perp_sum(fhat, chi, &k, g, false)).collect())
        .collect();
    let met = (0..p as usize)
        .filter(|&c| components.iter().any(|comp| !comp[c].is_zero()))
        .count();
    let n = (met * p as usize) as i64;
    let s = f.support_size() as i64;
    let lower = rat((p as i64 - 1) * n, p as i64);
    let sandwich = Sandwich {
        holds: lower <= rat_int(s) && s <= n,
        lower: Quantity::Exact(lower),
        value: Quantity::Exact(rat_int(s)),
        upper: Some(Quantity::Exact(rat_int(n))),
    };
    Some(present(ExceptionDescriptor {
        kind: ExceptionKind::TwoParallelLines,
        dual,
        p,
        subgroups: vec![h],
        offsets: vec![],
        characters,
        coefficients: vec![],
        components,
        sandwich: Some(sandwich),
    }))
}

/// Shifts `f₁` by its most frequent value (first in coordinate order on ties).
fn normalize_components(f1: &mut [CycNum], f2: &mut [CycNum]) {
    let mut best: Option<(usize, &CycNum)> = None;
    for v in f1.iter() {
        let count = f1.iter().filter(|w| *w == v).count();
        if best.is_none_or(|(c, _)| count > c) {
            best = Some((count, v));
        }
    }
    let Some((_, mode)) = best else { return };
    let mode = mode.clone();
    for v in f1.iter_mut() {
        *v = &*v - &mode;
    }
    for v in f2.iter_mut() {
        *v = &*v + &mode;
    }
}

fn two_nonparallel(f: &GFunc, fhat: &GFunc, x: &PointSet, dual: bool) -> Option<ExceptionDescriptor> {
    let (l1, l2) = nonparallel_cover(x)?;
    let p = f.p();
    let chi = l1.intersection(&l2)?;
    let (k1, k2) = (l1.subgroup, l2.subgroup);
    let (h1, h2) = (k1.orthogonal(), k2.orthogonal());
    let (e1, e2) = (h1.generator(), h2.generator());
    let mut f1: Vec<CycNum> = (0..p)
        .map(|t| perp_sum(fhat, &chi, &k2, &e1.scale(t, p), true))
        .collect();
    let mut f2: Vec<CycNum> = (0..p)
        .map(|t| perp_sum(fhat, &chi, &k1, &e2.scale(t, p), false))
        .collect();
    normalize_components(&mut f1, &mut f2);
    let count = |v: &[CycNum]| v.iter().filter(|c| !c.is_zero()).count() as i64;
    let s = f.support_size() as i64;
    let pp = (p * p) as i64;
    let middle = p as i64 * (count(&f1) + count(&f2));
    let upper = (2 * s < pp).then(|| rat((pp + 2 * s) * s, pp));
    let holds = s <= middle && upper.as_ref().is_none_or(|u| rat_int(middle) <= *u);
    Some(present(ExceptionDescriptor {
        kind: ExceptionKind::TwoNonparallelLines,
        dual,
        p,
        subgroups: vec![h1, h2],
        offsets: vec![],
        characters: vec![chi],
        coefficients: vec![],
        components: vec![f1, f2],
        sandwich: Some(Sandwich {
            lower: Quantity::Exact(rat_int(s)),
            value: Quantity::Exact(rat_int(middle)),
            upper: upper.map(Quantity::Exact),
            holds,
        }),
    }))
}

/// Tries, in order: spectrum on one line, support on one line, spectrum then
/// support on two parallel lines, spectrum then support on two nonparallel
/// lines.
pub(crate) fn classify_analyzed(a: &Analyzed) -> Result<Option<ExceptionDescriptor>> {
    let (s, x) = (a.s()?, a.x()?);
    if let Some(d) = one_dual_line(&a.f, x, false) {
        return Ok(Some(d));
    }
    if let Some(d) = one_primal_line(&a.f, &a.fhat, s) {
        return Ok(Some(d));
    }
    let (big, big_hat) = dualize(a);
    let minus_s = big_hat.support();
    if let Some(d) = two_parallel(&a.f, &a.fhat, x, false) {
        return Ok(Some(d));
    }
    if let Some(d) = two_parallel(&big, &big_hat, &minus_s, true) {
        return Ok(Some(d));
    }
    if let Some(d) = two_nonparallel(&a.f, &a.fhat, x, false) {
        return Ok(Some(d));
    }
    Ok(two_nonparallel(&big, &big_hat, &minus_s, true))
}

/// Structured description of `f` when its support or spectrum fits in one or
/// two lines.
pub fn classify_exception(f: &GFunc) -> Result<Option<ExceptionDescriptor>> {
    classify_analyzed(&Analyzed::new(f)?)
}
