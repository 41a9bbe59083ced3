//! Exact Fourier analysis on `F_p` and `F_p^2` over `Q(ζ_p)`.
//!
//! Normalization follows the uniform probability measure on `G`:
//!
//! ```text
//! f̂(χ) = |G|⁻¹ Σ_g f(g) χ̄(g)          f(g) = Σ_χ f̂(χ) χ(g)
//! (f₁ ∗ f₂)(g) = |G|⁻¹ Σ_{g₁+g₂=g} f₁(g₁) f₂(g₂)
//! (u₁ ∗ u₂)(χ) = Σ_{χ₁χ₂=χ} u₁(χ₁) u₂(χ₂)
//! ```
//!
//! The dual convolution carries no `|G|⁻¹`, so that `(f₁f₂)^ = f̂₁ ∗ f̂₂`.

use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime, rat_int};
use crate::cyclotomic::{CycAccumulator, CycNum};
use crate::error::{Error, Result};
use crate::plane::{pairing, LineSubgroup, Point, PointSet, Side};

/// A `Q(ζ_p)`-valued function on `F_p` (rank 1) or `F_p^2` (rank 2), or on
/// the corresponding dual group.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GFunc {
    p: u32,
    rank: u8,
    side: Side,
    values: Vec<CycNum>,
}

fn check_rank(rank: u8) -> Result<()> {
    if rank == 1 || rank == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rank must be 1 or 2, got {rank}")))
    }
}

impl GFunc {
    pub fn zero(p: u32, rank: u8, side: Side) -> Self {
        let n = (p as usize).pow(rank as u32);
        GFunc {
            p,
            rank,
            side,
            values: vec![CycNum::zero(p); n],
        }
    }

    pub fn from_values(p: u64, rank: u8, side: Side, values: Vec<CycNum>) -> Result<Self> {
        let p = check_prime(p)?;
        check_rank(rank)?;
        let n = (p as usize).pow(rank as u32);
        if values.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| v.p() != p) {
            return Err(Error::OrderMismatch(p, v.p()));
        }
        Ok(GFunc {
            p,
            rank,
            side,
            values,
        })
    }

    pub fn from_ints(p: u64, rank: u8, side: Side, values: &[i64]) -> Result<Self> {
        let q = check_prime(p)?;
        Self::from_values(
            p,
            rank,
            side,
            values.iter().map(|&v| CycNum::from_int(q, v)).collect(),
        )
    }

    /// Indicator of a rank-2 point set, on the set's side.
    pub fn indicator(set: &PointSet) -> Self {
        let mut f = Self::zero(set.p(), 2, set.side());
        for i in set.indices() {
            f.values[i] = CycNum::one(set.p());
        }
        f
    }

    /// The rank-2 character labelled `chi`, as a primal function `g ↦ ζ^⟨χ,g⟩`.
    pub fn character(p: u32, chi: &Point) -> Self {
        let mut f = Self::zero(p, 2, Side::Primal);
        for (i, v) in f.values.iter_mut().enumerate() {
            let g = Point::from_index(i, p, Side::Primal);
            *v = CycNum::zeta_pow(p, pairing(chi, &g, p));
        }
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &CycNum {
        &self.values[idx]
    }

    pub fn at(&self, pt: &Point) -> &CycNum {
        &self.values[pt.index(self.p)]
    }

    pub fn set(&mut self, idx: usize, v: CycNum) {
        assert_eq!(v.p(), self.p, "cyclotomic order mismatch");
        self.values[idx] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(CycNum::is_rational)
    }

    /// Indices where the function is nonzero, ascending.
    pub fn support_indices(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// Support as a point set (rank 2).
    pub fn support(&self) -> PointSet {
        assert_eq!(self.rank, 2, "point sets live in rank 2");
        PointSet::from_indices(self.p, self.side, self.support_indices())
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    fn check_compatible(&self, other: &GFunc) -> Result<()> {
        if self.p != other.p {
            return Err(Error::OrderMismatch(self.p, other.p));
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        other.side.expect(self.side)
    }

    fn zip_with(&self, other: &GFunc, op: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<GFunc> {
        self.check_compatible(other)?;
        Ok(GFunc {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn add(&self, other: &GFunc) -> Result<GFunc> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GFunc) -> Result<GFunc> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_mul(&self, other: &GFunc) -> Result<GFunc> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &CycNum) -> GFunc {
        GFunc {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> GFunc {
        GFunc {
            values: self.values.iter().map(|v| v.scalar_mul(r)).collect(),
            ..self.clone()
        }
    }

    pub fn map(&self, op: impl Fn(&CycNum) -> CycNum) -> GFunc {
        GFunc {
            values: self.values.iter().map(op).collect(),
            ..self.clone()
        }
    }

    fn layout(&self) -> Layout {
        Layout {
            p: self.p,
            rank: self.rank,
        }
    }

    /// Parses `"p; rank; v0,v1,…"` with values in the [`CycNum::parse`] grammar.
    pub fn parse_literal(text: &str) -> Result<GFunc> {
        let mut parts = text.splitn(3, ';');
        let (Some(p), Some(rank), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "expected `p; rank; v0,v1,…`, got `{text}`"
            )));
        };
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime `{}`", p.trim())))?;
        let q = check_prime(p)?;
        let rank: u8 = rank
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rank `{}`", rank.trim())))?;
        let values = body
            .split(',')
            .map(|v| CycNum::parse(q, v))
            .collect::<Result<Vec<_>>>()?;
        GFunc::from_values(p, rank, Side::Primal, values)
    }

    pub fn to_literal(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("{}; {}; {}", self.p, self.rank, vals.join(","))
    }
}

impl fmt::Debug for GFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GFunc[{}]({})", self.side.name(), self.to_literal())
    }
}

/// Index arithmetic for `F_p` or `F_p^2` stored densely.
#[derive(Clone, Copy)]
pub(crate) struct Layout {
    pub p: u32,
    pub rank: u8,
}

impl Layout {
    pub fn len(&self) -> usize {
        (self.p as usize).pow(self.rank as u32)
    }

    fn split(&self, i: usize) -> (u32, u32) {
        let p = self.p as usize;
        if self.rank == 1 {
            (0, i as u32)
        } else {
            ((i / p) as u32, (i % p) as u32)
        }
    }

    fn join(&self, (x, y): (u32, u32)) -> usize {
        if self.rank == 1 {
            y as usize
        } else {
            (x * self.p + y) as usize
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let p = self.p;
        let ((ax, ay), (bx, by)) = (self.split(a), self.split(b));
        self.join(((ax + bx) % p, (ay + by) % p))
    }

    pub fn scale(&self, a: usize, t: u32) -> usize {
        let p = self.p;
        let (ax, ay) = self.split(a);
        self.join((ax * t % p, ay * t % p))
    }

    /// Pairing exponent between a character index and a group index.
    pub fn pair(&self, chi: usize, g: usize) -> u32 {
        let ((cx, cy), (gx, gy)) = (self.split(chi), self.split(g));
        (cx * gx + cy * gy) % self.p
    }
}

/// `Σ_i value(i) · ζ^(sign·⟨χ, i⟩)` for every `χ`, optionally scaled.
fn character_sums(f: &GFunc, conjugate: bool, scale: Option<&BigRational>) -> Vec<CycNum> {
    let layout = f.layout();
    let p = f.p;
    let support: Vec<usize> = f.support_indices();
    let eval = |chi: usize| {
        let mut acc = CycAccumulator::new(p);
        for &g in &support {
            let e = layout.pair(chi, g);
            let shift = if conjugate { (p - e) % p } else { e };
            match f.values[g].as_rational() {
                Some(r) => acc.add_rational_shifted(r, shift),
                None => acc.add_shifted(&f.values[g], shift),
            }
        }
        let v = acc.finish();
        match scale {
            Some(s) => v.scalar_mul(s),
            None => v,
        }
    };
    let n = layout.len();
    if n * support.len() >= 1 << 14 {
        (0..n).into_par_iter().map(eval).collect()
    } else {
        (0..n).map(eval).collect()
    }
}

/// `f̂`, as a dual-side function.
pub fn fourier_transform(f: &GFunc) -> Result<GFunc> {
    f.side.expect(Side::Primal)?;
    let inv = BigRational::new(1.into(), (f.order() as i64).into());
    Ok(GFunc {
        values: character_sums(f, true, Some(&inv)),
        side: Side::Dual,
        ..f.clone()
    })
}

/// `f(g) = Σ_χ u(χ) χ(g)`, as a primal-side function.
pub fn inverse_transform(u: &GFunc) -> Result<GFunc> {
    u.side.expect(Side::Dual)?;
    Ok(GFunc {
        values: character_sums(u, false, None),
        side: Side::Primal,
        ..u.clone()
    })
}

fn convolve(a: &GFunc, b: &GFunc, scale: Option<BigRational>) -> Result<GFunc> {
    a.check_compatible(b)?;
    let layout = a.layout();
    let mut out = vec![CycNum::zero(a.p); layout.len()];
    let sa = a.support_indices();
    let sb = b.support_indices();
    for &i in &sa {
        for &j in &sb {
            let k = layout.add(i, j);
            out[k] = &out[k] + &(&a.values[i] * &b.values[j]);
        }
    }
    if let Some(s) = scale {
        for v in out.iter_mut() {
            *v = v.scalar_mul(&s);
        }
    }
    Ok(GFunc {
        values: out,
        ..a.clone()
    })
}

/// `f₁ ∗ f₂` on `G`, with the `|G|⁻¹` factor.
pub fn convolution(f1: &GFunc, f2: &GFunc) -> Result<GFunc> {
    f1.side.expect(Side::Primal)?;
    let inv = BigRational::new(1.into(), (f1.order() as i64).into());
    convolve(f1, f2, Some(inv))
}

/// `u₁ ∗ u₂` on the dual group, without normalization.
pub fn dual_convolution(u1: &GFunc, u2: &GFunc) -> Result<GFunc> {
    u1.side.expect(Side::Dual)?;
    convolve(u1, u2, None)
}

fn require_rank2(f: &GFunc) -> Result<()> {
    if f.rank == 2 {
        Ok(())
    } else {
        Err(Error::RankMismatch {
            expected: 2,
            found: f.rank,
        })
    }
}

/// `Σ_{ψ ∈ H^⊥} f̂(χψ) · w(ψ)` for every `χ`, where `w(ψ) = ζ^(weight(ψ))`
/// summed over the listed exponent functions with signs.
fn perp_sums(fhat: &GFunc, h: &LineSubgroup, weights: impl Fn(&Point) -> Vec<(u32, bool)>) -> Vec<CycNum> {
    let p = fhat.p;
    let layout = fhat.layout();
    let perp: Vec<(usize, Vec<(u32, bool)>)> = h
        .orthogonal()
        .points()
        .iter()
        .map(|psi| (psi.index(p), weights(psi)))
        .collect();
    (0..layout.len())
        .map(|chi| {
            let mut acc = CycAccumulator::new(p);
            for (psi, ws) in &perp {
                let v = &fhat.values[layout.add(chi, *psi)];
                if v.is_zero() {
                    continue;
                }
                for &(e, negative) in ws {
                    if negative {
                        acc.add_shifted(&v.negate(), e);
                    } else {
                        acc.add_shifted(v, e);
                    }
                }
            }
            acc.finish()
        })
        .collect()
}

/// Transform of `f·1_{g+H}` computed from `f̂` as
/// `|H^⊥|⁻¹ Σ_{ψ ∈ H^⊥} f̂(χψ) ψ(g)`.
pub fn coset_restriction_from_transform(fhat: &GFunc, g: &Point, h: &LineSubgroup) -> Result<GFunc> {
    fhat.side.expect(Side::Dual)?;
    require_rank2(fhat)?;
    let p = fhat.p;
    let inv = BigRational::new(1.into(), (p as i64).into());
    let values = perp_sums(fhat, h, |psi| vec![(pairing(psi, g, p), false)])
        .into_iter()
        .map(|v| v.scalar_mul(&inv))
        .collect();
    Ok(GFunc {
        values,
        ..fhat.clone()
    })
}

/// Transform of `f·1_{g+H}`, evaluated through the coset-sum formula over `H^⊥`.
pub fn coset_restriction_transform(f: &GFunc, g: &Point, h: &LineSubgroup) -> Result<GFunc> {
    require_rank2(f)?;
    coset_restriction_from_transform(&fourier_transform(f)?, g, h)
}

/// Both sides of
/// `Σ_{ψ ∈ H^⊥} f̂(χψ) ψ(g) = χ̄(g) |H|⁻¹ Σ_{h ∈ H} f(g+h) χ̄(h)`.
pub fn psi_identity_sides(
    f: &GFunc,
    fhat: &GFunc,
    g: &Point,
    h: &LineSubgroup,
    chi: &Point,
) -> Result<(CycNum, CycNum)> {
    require_rank2(f)?;
    let p = f.p;
    let layout = f.layout();
    let ci = chi.index(p);
    let mut lhs = CycAccumulator::new(p);
    for psi in h.orthogonal().points() {
        lhs.add_shifted(&fhat.values[layout.add(ci, psi.index(p))], pairing(&psi, g, p));
    }
    let mut inner = CycAccumulator::new(p);
    for hp in h.points() {
        let v = &f.values[g.add(&hp, p).index(p)];
        inner.add_shifted(v, (p - pairing(chi, &hp, p)) % p);
    }
    let rhs = inner
        .finish()
        .mul_zeta_pow((p - pairing(chi, g, p)) % p)
        .scalar_mul(&BigRational::new(1.into(), (p as i64).into()));
    Ok((lhs.finish(), rhs))
}

pub fn psi_identity_check(f: &GFunc, g: &Point, h: &LineSubgroup, chi: &Point) -> Result<bool> {
    let fhat = fourier_transform(f)?;
    let (lhs, rhs) = psi_identity_sides(f, &fhat, g, h, chi)?;
    Ok(lhs == rhs)
}

/// `f_g(t) = f(g + t·e_H)` on `F_p`, where `e_H` is the generator of `H`.
pub fn restriction_to_coset_1d(f: &GFunc, g: &Point, h: &LineSubgroup) -> Result<GFunc> {
    require_rank2(f)?;
    let p = f.p;
    let e = h.generator();
    let values = (0..p)
        .map(|t| f.at(&g.add(&e.scale(t, p), p).with_side(f.side)).clone())
        .collect();
    Ok(GFunc {
        p,
        rank: 1,
        side: f.side,
        values,
    })
}

/// Rank-1 label of `χ|_H` under the parametrization `t ↦ t·e_H`.
pub fn restricted_character(chi: &Point, h: &LineSubgroup) -> u32 {
    pairing(chi, &h.generator(), h.p)
}

/// Applies `ζ ↦ ζ^j` to every value.
pub fn galois_twist(u: &GFunc, j: u64) -> Result<GFunc> {
    let values = u
        .values
        .iter()
        .map(|v| v.galois_apply(j))
        .collect::<Result<Vec<_>>>()?;
    Ok(GFunc {
        values,
        ..u.clone()
    })
}

/// For rational-valued `f`: checks `f̂(χ^j) = σ_j(f̂(χ))` for all `χ` and
/// units `j`, and that `X ∪ {1}` is a union of lines through the origin.
pub fn rational_support_closure_check(f: &GFunc) -> Result<bool> {
    if !f.is_rational() {
        return Err(Error::NonRational);
    }
    let fhat = fourier_transform(f)?;
    let layout = f.layout();
    for j in 1..f.p {
        let twisted = galois_twist(&fhat, j as u64)?;
        for chi in 0..layout.len() {
            if fhat.values[layout.scale(chi, j)] != twisted.values[chi] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl Point {
    pub(crate) fn with_side(mut self, side: Side) -> Point {
        self.side = side;
        self
    }
}

fn coset_indicator(p: u32, g: &Point, h: &LineSubgroup) -> GFunc {
    let mut f = GFunc::zero(p, 2, Side::Primal);
    for hp in h.points() {
        f.values[g.add(&hp, p).index(p)] = CycNum::one(p);
    }
    f
}

/// `Δ_g = f ∗ (f · (1_{g+H} - 1_{g₀+H}))`.
pub fn proof_trace_delta(f: &GFunc, h: &LineSubgroup, g: &Point, g0: &Point) -> Result<GFunc> {
    require_rank2(f)?;
    let p = f.p;
    let window = coset_indicator(p, g, h).sub(&coset_indicator(p, g0, h))?;
    convolution(f, &f.pointwise_mul(&window)?)
}

/// `Δ̂_g(χ) = p⁻¹ f̂(χ) Σ_{ψ ∈ H^⊥} f̂(χψ)(ψ(g) - ψ(g₀))`.
pub fn delta_transform_formula(fhat: &GFunc, h: &LineSubgroup, g: &Point, g0: &Point) -> Result<GFunc> {
    require_rank2(fhat)?;
    fhat.side.expect(Side::Dual)?;
    let p = fhat.p;
    let inv = BigRational::new(1.into(), (p as i64).into());
    let sums = perp_sums(fhat, h, |psi| {
        vec![(pairing(psi, g, p), false), (pairing(psi, g0, p), true)]
    });
    let values = sums
        .iter()
        .zip(&fhat.values)
        .map(|(s, v)| (s * v).scalar_mul(&inv))
        .collect();
    Ok(GFunc {
        values,
        ..fhat.clone()
    })
}

/// `F_g = f · (1_{g+γ+H} - 1_{g+H})`.
pub fn proof_trace_f(f: &GFunc, h: &LineSubgroup, gamma: &Point, g: &Point) -> Result<GFunc> {
    require_rank2(f)?;
    let p = f.p;
    let window = coset_indicator(p, &g.add(gamma, p), h).sub(&coset_indicator(p, g, h))?;
    f.pointwise_mul(&window)
}

/// `F̂_g(χ) = p⁻¹ Σ_{ψ ∈ H^⊥} f̂(χψ)(ψ(γ) - 1) ψ(g)`.
pub fn f_transform_formula(fhat: &GFunc, h: &LineSubgroup, gamma: &Point, g: &Point) -> Result<GFunc> {
    require_rank2(fhat)?;
    fhat.side.expect(Side::Dual)?;
    let p = fhat.p;
    let inv = BigRational::new(1.into(), (p as i64).into());
    let sums = perp_sums(fhat, h, |psi| {
        let e = pairing(psi, g, p);
        vec![((pairing(psi, gamma, p) + e) % p, false), (e, true)]
    });
    Ok(GFunc {
        values: sums.into_iter().map(|v| v.scalar_mul(&inv)).collect(),
        ..fhat.clone()
    })
}

fn check_quadruple(gs: &[Point; 4], p: u32) -> Result<()> {
    if gs[0].add(&gs[1], p) != gs[2].add(&gs[3], p) {
        return Err(Error::Precondition("g1 + g2 must equal g3 + g4".into()));
    }
    Ok(())
}

/// `Δ_𝐠 = f ∗ (F_{g₁} ∗ F_{g₂} - F_{g₃} ∗ F_{g₄})` for `g₁ + g₂ = g₃ + g₄`.
pub fn proof_trace_delta4(f: &GFunc, h: &LineSubgroup, gamma: &Point, gs: &[Point; 4]) -> Result<GFunc> {
    require_rank2(f)?;
    check_quadruple(gs, f.p)?;
    let fs = gs
        .iter()
        .map(|g| proof_trace_f(f, h, gamma, g))
        .collect::<Result<Vec<_>>>()?;
    let inner = convolution(&fs[0], &fs[1])?.sub(&convolution(&fs[2], &fs[3])?)?;
    convolution(f, &inner)
}

/// `Δ̂_𝐠 = f̂ · (F̂_{g₁}F̂_{g₂} - F̂_{g₃}F̂_{g₄})`.
pub fn delta4_transform_formula(fhat: &GFunc, h: &LineSubgroup, gamma: &Point, gs: &[Point; 4]) -> Result<GFunc> {
    check_quadruple(gs, fhat.p)?;
    let fh = gs
        .iter()
        .map(|g| f_transform_formula(fhat, h, gamma, g))
        .collect::<Result<Vec<_>>>()?;
    let inner = fh[0].pointwise_mul(&fh[1])?.sub(&fh[2].pointwise_mul(&fh[3])?)?;
    fhat.pointwise_mul(&inner)
}

/// `|G| · 1_{0}`, the unit for [`convolution`].
pub fn convolution_identity(p: u32, rank: u8) -> GFunc {
    let mut f = GFunc::zero(p, rank, Side::Primal);
    let n = f.order() as i64;
    f.values[0] = CycNum::from_rational(p, rat_int(n));
    f
}
