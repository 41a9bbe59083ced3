//! Support-size functionals and the inequality evaluators built on them.
//!
//! Every evaluator compares exact quantities. Irrational sides (square and
//! cube roots) are decided by squaring or cubing integers, never by floats;
//! the `approx` field of an algebraic [`Quantity`] is display-only.

mod classify;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use classify::{classify_exception, ExceptionDescriptor, ExceptionKind, Sandwich};

use crate::arith::{parse_rational, rat, rat_int, rat_to_string};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, GFunc};
use crate::plane::{
    find_one_line_cover, line_cover, line_table, one_line_cover, two_line_cover, LineSubgroup,
    PointSet, Side,
};

/// An exact rational, or an algebraic number shown with a float approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Algebraic { expr: String, approx: f64 },
}

impl Quantity {
    pub fn int(n: i64) -> Self {
        Quantity::Exact(rat_int(n))
    }

    pub fn approx(&self) -> f64 {
        match self {
            Quantity::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Quantity::Algebraic { approx, .. } => *approx,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{}", rat_to_string(r)),
            Quantity::Algebraic { expr, approx } => write!(f, "{expr} (≈{approx:.6})"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(r) => s.serialize_str(&rat_to_string(r)),
            Quantity::Algebraic { expr, approx } => {
                let mut st = s.serialize_struct("Algebraic", 2)?;
                st.serialize_field("expr", expr)?;
                st.serialize_field("approx", approx)?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Exception,
    Violated,
    /// The lemma's hypothesis is false, so it asserts nothing.
    HypothesisFails,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithEquality => "holds-with-equality",
            Verdict::Exception => "exception",
            Verdict::Violated => "violated",
            Verdict::HypothesisFails => "hypothesis-fails",
        }
    }

    pub const ALL: [Verdict; 5] = [
        Verdict::Holds,
        Verdict::HoldsWithEquality,
        Verdict::Exception,
        Verdict::Violated,
        Verdict::HypothesisFails,
    ];
}

/// One inequality `lhs ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub holds: bool,
    pub tight: bool,
}

impl Clause {
    fn new(name: &str, lhs: Quantity, rhs: Quantity, ord: Ordering) -> Self {
        Clause {
            name: name.to_string(),
            lhs,
            rhs,
            holds: ord != Ordering::Less,
            tight: ord == Ordering::Equal,
        }
    }

    fn rational(name: &str, lhs: BigRational, rhs: BigRational) -> Self {
        let ord = lhs.cmp(&rhs);
        Self::new(name, Quantity::Exact(lhs), Quantity::Exact(rhs), ord)
    }
}

/// Verdict of a disjunction of clauses.
fn disjunction(clauses: &[Clause]) -> Verdict {
    if clauses.iter().any(|c| c.holds && !c.tight) {
        Verdict::Holds
    } else if clauses.iter().any(|c| c.tight) {
        Verdict::HoldsWithEquality
    } else {
        Verdict::Violated
    }
}

/// How many lines cover `S` and `X`, relative to an escape threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverStats {
    /// The escape clause applies to sets covered by fewer than this many lines.
    pub fewer_than: usize,
    /// Least number of lines covering `S`, when below `fewer_than`.
    pub s_lines: Option<usize>,
    pub x_lines: Option<usize>,
    pub applies: bool,
}

fn cover_stats(s: &PointSet, x: &PointSet, fewer_than: usize) -> CoverStats {
    let lines = |set: &PointSet| {
        fewer_than
            .checked_sub(1)
            .and_then(|limit| line_cover(set, limit))
            .map(|c| c.len())
    };
    let (s_lines, x_lines) = (lines(s), lines(x));
    CoverStats {
        fewer_than,
        applies: s_lines.is_some() || x_lines.is_some(),
        s_lines,
        x_lines,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: String,
    pub verdict: Verdict,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub s_size: usize,
    pub x_size: usize,
    pub clauses: Vec<Clause>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception: Option<ExceptionDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverStats>,
    /// Evaluated outside the prime range the statement is made for.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub advisory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GFunc>,
}

impl BoundReport {
    fn from_clauses(theorem: String, a: &Analyzed, clauses: Vec<Clause>) -> Self {
        let verdict = disjunction(&clauses);
        BoundReport {
            theorem,
            verdict,
            lhs: clauses[0].lhs.clone(),
            rhs: clauses[0].rhs.clone(),
            s_size: a.s_size,
            x_size: a.x_size,
            clauses,
            exception_reason: None,
            exception: None,
            cover: None,
            advisory: false,
            witness: (verdict == Verdict::Violated).then(|| a.f.clone()),
        }
    }

    fn mark_exception(&mut self, reason: String, a: &Analyzed) -> Result<()> {
        self.verdict = Verdict::Exception;
        self.exception_reason = Some(reason);
        self.exception = classify::classify_analyzed(a)?;
        self.witness = None;
        Ok(())
    }
}

/// A selectable inequality, with its parameter where it has one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Basic,
    BiroTao,
    MeshulamAlt,
    Conjecture(u32),
    Roots,
    Rational,
    Kp1,
    Kp2,
    UpperGray,
    As2(BigRational),
    As3(BigRational),
}

impl Check {
    pub const IDS: [&'static str; 11] = [
        "basic",
        "birotao",
        "meshulam_alt",
        "conjecture",
        "roots",
        "rational",
        "kp1",
        "kp2",
        "uppergray",
        "as2",
        "as3",
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Check::Basic => "basic",
            Check::BiroTao => "birotao",
            Check::MeshulamAlt => "meshulam_alt",
            Check::Conjecture(_) => "conjecture",
            Check::Roots => "roots",
            Check::Rational => "rational",
            Check::Kp1 => "kp1",
            Check::Kp2 => "kp2",
            Check::UpperGray => "uppergray",
            Check::As2(_) => "as2",
            Check::As3(_) => "as3",
        }
    }

    /// The id with its parameter, e.g. `conjecture[k=2]`.
    pub fn label(&self) -> String {
        match self {
            Check::Conjecture(k) => format!("conjecture[k={k}]"),
            Check::As2(e) => format!("as2[eps={}]", rat_to_string(e)),
            Check::As3(e) => format!("as3[eps={}]", rat_to_string(e)),
            other => other.id().to_string(),
        }
    }

    /// Builds a check from its id; `conjecture` needs `k`, `as2`/`as3` need `eps`.
    pub fn parse(id: &str, k: Option<u32>, eps: Option<&str>) -> Result<Check> {
        let eps = || -> Result<BigRational> {
            let e = parse_rational(eps.ok_or_else(|| {
                Error::InvalidParameter(format!("{id} needs an epsilon"))
            })?)?;
            check_epsilon(&e)?;
            Ok(e)
        };
        Ok(match id {
            "basic" => Check::Basic,
            "birotao" => Check::BiroTao,
            "meshulam_alt" | "meshalt" => Check::MeshulamAlt,
            "conjecture" => Check::Conjecture(
                k.ok_or_else(|| Error::InvalidParameter("conjecture needs k".into()))?,
            ),
            "roots" => Check::Roots,
            "rational" => Check::Rational,
            "kp1" => Check::Kp1,
            "kp2" => Check::Kp2,
            "uppergray" => Check::UpperGray,
            "as2" => Check::As2(eps()?),
            "as3" => Check::As3(eps()?),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown theorem `{other}`; expected one of {}",
                    Check::IDS.join(", ")
                )))
            }
        })
    }
}

fn check_epsilon(e: &BigRational) -> Result<()> {
    if e.is_positive() && *e < BigRational::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {}",
            rat_to_string(e)
        )))
    }
}

/// A nonzero primal function together with its transform and supports.
#[derive(Clone, Debug)]
pub struct Analyzed {
    pub f: GFunc,
    pub fhat: GFunc,
    pub s_size: usize,
    pub x_size: usize,
    s: Option<PointSet>,
    x: Option<PointSet>,
}

impl Analyzed {
    pub fn new(f: &GFunc) -> Result<Self> {
        f.side().expect(Side::Primal)?;
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let fhat = fourier_transform(f)?;
        Ok(Self::from_parts(f.clone(), fhat))
    }

    pub(crate) fn from_parts(f: GFunc, fhat: GFunc) -> Self {
        let (s, x) = if f.rank() == 2 {
            (Some(f.support()), Some(fhat.support()))
        } else {
            (None, None)
        };
        Analyzed {
            s_size: f.support_size(),
            x_size: fhat.support_size(),
            f,
            fhat,
            s,
            x,
        }
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn s(&self) -> Result<&PointSet> {
        self.s.as_ref().ok_or(Error::RankMismatch {
            expected: 2,
            found: self.f.rank(),
        })
    }

    pub fn x(&self) -> Result<&PointSet> {
        self.x.as_ref().ok_or(Error::RankMismatch {
            expected: 2,
            found: self.f.rank(),
        })
    }

    pub fn min_max(&self) -> (usize, usize) {
        (
            self.s_size.min(self.x_size),
            self.s_size.max(self.x_size),
        )
    }

    /// The smaller of `S`, `X`, then the larger; both orders on a tie.
    fn ordered_pairs(&self) -> Result<Vec<(&PointSet, &PointSet)>> {
        let (s, x) = (self.s()?, self.x()?);
        Ok(match self.s_size.cmp(&self.x_size) {
            Ordering::Less => vec![(s, x)],
            Ordering::Greater => vec![(x, s)],
            Ordering::Equal => vec![(s, x), (x, s)],
        })
    }
}

fn r(n: usize) -> BigRational {
    rat_int(n as i64)
}

/// Sign of `sqrt(a) + sqrt(b) - c` for `c ≥ 0`.
fn cmp_sqrt_sum(a: usize, b: usize, c: usize) -> Ordering {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let t = &c * &c - &a - &b;
    if t.is_negative() {
        return Ordering::Greater;
    }
    (BigInt::from(4) * a * b).cmp(&(&t * &t))
}

/// Evaluates one check on an analyzed function.
pub fn evaluate(check: &Check, a: &Analyzed) -> Result<BoundReport> {
    let p = a.p() as usize;
    let label = check.label();
    let (m, big_m) = a.min_max();
    match check {
        Check::Basic => {
            let lhs = r(a.s_size * a.x_size);
            Ok(BoundReport::from_clauses(
                label,
                a,
                vec![Clause::rational("product", lhs, r(a.f.order()))],
            ))
        }
        Check::BiroTao => {
            if a.f.rank() != 1 {
                return Err(Error::RankMismatch {
                    expected: 1,
                    found: a.f.rank(),
                });
            }
            let lhs = r(a.s_size + a.x_size);
            Ok(BoundReport::from_clauses(
                label,
                a,
                vec![Clause::rational("sum", lhs, r(p + 1))],
            ))
        }
        Check::MeshulamAlt => {
            a.s()?;
            let lhs = r(m) + rat(big_m as i64, p as i64);
            Ok(BoundReport::from_clauses(
                label,
                a,
                vec![Clause::rational("weighted-sum", lhs, r(p + 1))],
            ))
        }
        Check::Conjecture(k) => {
            let k = *k as usize;
            if k == 0 || k > p {
                return Err(Error::InvalidParameter(format!(
                    "k must lie in [1, {p}], got {k}"
                )));
            }
            let (s, x) = (a.s()?, a.x()?);
            let lhs = rat(m as i64, k as i64) + rat(big_m as i64, (p + 1 - k) as i64);
            let mut report = BoundReport::from_clauses(
                label,
                a,
                vec![Clause::rational("weighted-sum", lhs, r(p + 1))],
            );
            let cover = cover_stats(s, x, k.min(p + 1 - k));
            if report.verdict == Verdict::Violated && cover.applies {
                report.mark_exception(
                    format!("S or X is covered by fewer than {} lines", cover.fewer_than),
                    a,
                )?;
            }
            report.cover = Some(cover);
            Ok(report)
        }
        Check::Roots => {
            let (s, x) = (a.s()?, a.x()?);
            let ord = cmp_sqrt_sum(a.x_size, a.s_size, p + 1);
            let lhs = Quantity::Algebraic {
                expr: format!("sqrt({})+sqrt({})", a.x_size, a.s_size),
                approx: (a.x_size as f64).sqrt() + (a.s_size as f64).sqrt(),
            };
            let mut report = BoundReport::from_clauses(
                label,
                a,
                vec![Clause::new("root-sum", lhs, Quantity::int(p as i64 + 1), ord)],
            );
            // fewer than p/2 lines
            let cover = cover_stats(s, x, p.div_ceil(2));
            if report.verdict == Verdict::Violated && cover.applies {
                report.mark_exception(
                    format!("S or X is covered by fewer than {}/2 lines", p),
                    a,
                )?;
            }
            report.cover = Some(cover);
            Ok(report)
        }
        Check::Rational => check_rational_analyzed(label, a),
        Check::Kp1 => {
            require_odd_prime(p, "kp1")?;
            let lhs = rat(m as i64, p as i64 - 1) + rat(big_m as i64, 2);
            let mut report = BoundReport::from_clauses(
                label,
                a,
                vec![Clause::rational("weighted-sum", lhs, r(p + 1))],
            );
            if orthogonal_cosets(a.s()?, a.x()?) {
                report.mark_exception("S and X are cosets of orthogonal subgroups".into(), a)?;
            }
            Ok(report)
        }
        Check::Kp2 => {
            require_odd_prime(p, "kp2")?;
            let mut report = BoundReport::from_clauses(label, a, kp2_clauses(a));
            if let Some(reason) = near_coset_structure(a)? {
                report.mark_exception(reason, a)?;
            }
            Ok(report)
        }
        Check::UpperGray => {
            a.s()?;
            let lhs = r(a.s_size * a.x_size);
            let rhs = rat_int(3 * p as i64 * (p as i64 - 2));
            let mut report =
                BoundReport::from_clauses(label, a, vec![Clause::rational("product", lhs, rhs)]);
            report.advisory = p <= 3;
            if m <= 2 {
                report.mark_exception("min{|S|,|X|} <= 2".into(), a)?;
            } else if let Some(reason) = near_coset_structure(a)? {
                report.mark_exception(reason, a)?;
            }
            Ok(report)
        }
        Check::As2(eps) => {
            check_epsilon(eps)?;
            let two_minus = (BigRational::one() - eps) * r(2 * p);
            let ord = (r(big_m * big_m)).cmp(&(eps * eps * r(p * p * p)));
            let clauses = vec![
                Clause::rational("min-large", r(m), two_minus),
                Clause::new(
                    "max-large",
                    Quantity::int(big_m as i64),
                    Quantity::Algebraic {
                        expr: format!("{}*{}^(3/2)", rat_to_string(eps), p),
                        approx: eps.to_f64().unwrap_or(f64::NAN) * (p as f64).powf(1.5),
                    },
                    ord,
                ),
            ];
            let mut report = BoundReport::from_clauses(label, a, clauses);
            report.advisory = p < 31;
            if a.ordered_pairs()?.iter().any(|(small, _)| one_line_cover(small)) {
                report.mark_exception("the smaller support lies in one line".into(), a)?;
            }
            Ok(report)
        }
        Check::As3(eps) => {
            check_epsilon(eps)?;
            let three_minus = (BigRational::one() - eps) * r(3 * p);
            let six_max = r(6 * big_m);
            let ord = (&six_max * &six_max * &six_max).cmp(&(eps * eps * eps * r(p * p * p * p)));
            let clauses = vec![
                Clause::rational("min-large", r(m), three_minus),
                Clause::new(
                    "max-large",
                    Quantity::int(big_m as i64),
                    Quantity::Algebraic {
                        expr: format!("{}*{}^(4/3)/6", rat_to_string(eps), p),
                        approx: eps.to_f64().unwrap_or(f64::NAN) * (p as f64).powf(4.0 / 3.0)
                            / 6.0,
                    },
                    ord,
                ),
            ];
            let mut report = BoundReport::from_clauses(label, a, clauses);
            if a.ordered_pairs()?.iter().any(|(small, _)| two_line_cover(small)) {
                report.mark_exception("the smaller support lies in two lines".into(), a)?;
            }
            Ok(report)
        }
    }
}

fn require_odd_prime(p: usize, what: &str) -> Result<()> {
    if p >= 3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} requires p >= 3")))
    }
}

fn kp2_clauses(a: &Analyzed) -> Vec<Clause> {
    let p = a.p() as i64;
    let (m, big_m) = a.min_max();
    vec![
        Clause::rational(
            "weighted-sum",
            rat(m as i64, p - 2) + rat(big_m as i64, 3),
            rat_int(p + 1),
        ),
        Clause::rational("min-large", r(m), rat(3 * (p - 1), 2)),
    ]
}

/// The direction of the single line holding all of `set`, tried per direction
/// so that small sets report every line through them.
fn full_lines(set: &PointSet, d: u32) -> Option<usize> {
    let counts = set.direction_counts(d);
    let p = set.p() as usize;
    counts
        .iter()
        .all(|&c| c == 0 || c == p)
        .then(|| counts.iter().filter(|&&c| c == p).count())
}

/// `S` a coset of `H` and `X` a coset of `H^⊥`.
fn orthogonal_cosets(s: &PointSet, x: &PointSet) -> bool {
    let p = s.p() as usize;
    if s.len() != p || x.len() != p {
        return false;
    }
    let (Some(ls), Some(lx)) = (find_one_line_cover(s), find_one_line_cover(x)) else {
        return false;
    };
    ls.subgroup.orthogonal().direction == lx.subgroup.direction
}

/// The smaller set is a line possibly missing one point, and the larger is one
/// or two full lines of the orthogonal direction.
fn near_coset_structure(a: &Analyzed) -> Result<Option<String>> {
    let p = a.p();
    for (small, large) in a.ordered_pairs()? {
        let n = small.len();
        if n + 1 < p as usize || n > p as usize {
            continue;
        }
        for d in 0..=p {
            let on_one = small.direction_counts(d).contains(&n);
            if !on_one {
                continue;
            }
            let h = LineSubgroup {
                p,
                direction: d,
                side: small.side(),
            };
            if let Some(k) = full_lines(large, h.orthogonal().direction) {
                if k == 1 || k == 2 {
                    return Ok(Some(format!(
                        "smaller support is a line{} and the larger is {k} orthogonal line{}",
                        if n < p as usize { " minus a point" } else { "" },
                        if k == 2 { "s" } else { "" }
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Direction of a subgroup on whose cosets `f` is constant.
fn periodic_direction(f: &GFunc) -> Option<u32> {
    let p = f.p();
    let table = line_table(p);
    (0..=p).find(|&d| {
        (0..p as usize).all(|c| {
            let line = &table.lines[d as usize * p as usize + c];
            line.iter().all(|&i| f.value(i) == f.value(line[0]))
        })
    })
}

fn check_rational_analyzed(label: String, a: &Analyzed) -> Result<BoundReport> {
    if !a.f.is_rational() {
        return Err(Error::NonRational);
    }
    let p = a.p() as usize;
    require_odd_prime(p, "rational")?;
    let x = a.x()?;
    let (m, big_m) = a.min_max();
    let lhs = rat(m as i64, 2) + rat(big_m as i64, p as i64 - 1);
    let mut clauses = vec![Clause::rational("weighted-sum", lhs, r(p + 1))];
    let constant = a.s_size == a.f.order() && a.x_size == 1;
    let periodic = if constant {
        None
    } else {
        periodic_direction(&a.f)
    };
    let Some(d) = periodic else {
        return Ok(BoundReport::from_clauses(label, a, clauses));
    };
    let h = LineSubgroup {
        p: a.p(),
        direction: d,
        side: Side::Primal,
    };
    let mut expected = PointSet::empty(a.p(), Side::Dual);
    for chi in h.orthogonal().points() {
        expected.insert(&chi);
    }
    if a.fhat.value(0).is_zero() {
        expected.remove_index(0);
    }
    let shape = Clause {
        name: "spectrum-shape".into(),
        lhs: Quantity::int(a.x_size as i64),
        rhs: Quantity::int(expected.len() as i64),
        holds: *x == expected,
        tight: *x == expected,
    };
    let shape_holds = shape.holds;
    clauses.push(shape);
    let mut report = BoundReport::from_clauses(label, a, clauses);
    report.mark_exception(format!("f is constant on the cosets of direction {d}"), a)?;
    if !shape_holds {
        report.verdict = Verdict::Violated;
        report.witness = Some(a.f.clone());
    }
    Ok(report)
}

macro_rules! checker {
    ($(#[$m:meta])* $name:ident, $check:expr) => {
        $(#[$m])*
        pub fn $name(f: &GFunc) -> Result<BoundReport> {
            evaluate(&$check, &Analyzed::new(f)?)
        }
    };
}

checker!(
    /// `|S||X| ≥ |G|`.
    check_basic,
    Check::Basic
);
checker!(
    /// `|S| + |X| ≥ p + 1` on `F_p`.
    check_birotao,
    Check::BiroTao
);
checker!(
    /// `min + max/p ≥ p + 1`.
    check_meshulam_alt,
    Check::MeshulamAlt
);
checker!(
    /// `√|S| + √|X| ≥ p + 1` unless `S` or `X` fits in fewer than `p/2` lines.
    check_roots,
    Check::Roots
);
checker!(
    /// `min/2 + max/(p-1) ≥ p + 1` for rational `f` that is not periodic
    /// along a line.
    check_rational,
    Check::Rational
);
checker!(
    /// `min/(p-1) + max/2 ≥ p + 1` unless `S`, `X` are orthogonal cosets.
    check_kp1,
    Check::Kp1
);
checker!(
    /// `min/(p-2) + max/3 ≥ p + 1` or `min ≥ 3(p-1)/2`, outside near-coset pairs.
    check_kp2,
    Check::Kp2
);
checker!(
    /// `|S||X| ≥ 3p(p-2)` outside near-coset pairs and `min ≤ 2`.
    check_uppergray,
    Check::UpperGray
);

/// `min/k + max/(p+1-k) ≥ p + 1`, with line-cover statistics for the escape clause.
pub fn check_conjecture(f: &GFunc, k: u32) -> Result<BoundReport> {
    evaluate(&Check::Conjecture(k), &Analyzed::new(f)?)
}

/// `min ≥ 2(1-ε)p` or `max ≥ εp^{3/2}`, unless the smaller support is in one line.
pub fn check_as2(f: &GFunc, eps: &BigRational) -> Result<BoundReport> {
    check_epsilon(eps)?;
    evaluate(&Check::As2(eps.clone()), &Analyzed::new(f)?)
}

/// `min ≥ 3(1-ε)p` or `max ≥ εp^{4/3}/6`, unless the smaller support is in two lines.
pub fn check_as3(f: &GFunc, eps: &BigRational) -> Result<BoundReport> {
    check_epsilon(eps)?;
    evaluate(&Check::As3(eps.clone()), &Analyzed::new(f)?)
}

/// Coset statistics for one direction `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupStats {
    pub direction: u32,
    /// Smallest positive `|(s + H) ∩ S|`.
    pub n_s: usize,
    /// Smallest positive `|χH^⊥ ∩ X|`.
    pub n_x: usize,
    /// `H`-cosets meeting `S`.
    pub k_s: usize,
    /// `H^⊥`-cosets meeting `X`.
    pub k_x: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportProfile {
    pub p: u32,
    pub s: PointSet,
    pub x: PointSet,
    pub subgroups: Vec<SubgroupStats>,
}

fn coset_stats(counts: &[usize]) -> (usize, usize) {
    let met: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
    (met.iter().copied().min().unwrap_or(0), met.len())
}

impl SupportProfile {
    pub fn stats(&self, h: &LineSubgroup) -> &SubgroupStats {
        &self.subgroups[h.direction as usize]
    }

    /// `k_g = |(S - g) ∩ H|` for every point `g`, by point index.
    pub fn line_counts(&self, h: &LineSubgroup) -> Vec<usize> {
        let p = self.p as usize;
        let counts = self.s.direction_counts(h.direction);
        let table = line_table(self.p);
        (0..p * p)
            .map(|i| counts[table.point_lines[i][h.direction as usize] % p])
            .collect()
    }

    /// Number of `H^⊥`-lines holding exactly one point of `X`.
    pub fn isolated_count(&self, h: &LineSubgroup) -> usize {
        self.x
            .direction_counts(h.orthogonal().direction)
            .iter()
            .filter(|&&c| c == 1)
            .count()
    }
}

pub fn profile(f: &GFunc) -> Result<SupportProfile> {
    profile_analyzed(&Analyzed::new(f)?)
}

pub fn profile_analyzed(a: &Analyzed) -> Result<SupportProfile> {
    let (s, x) = (a.s()?, a.x()?);
    let p = a.p();
    let subgroups = (0..=p)
        .map(|d| {
            let h = LineSubgroup {
                p,
                direction: d,
                side: Side::Primal,
            };
            let (n_s, k_s) = coset_stats(&s.direction_counts(d));
            let (n_x, k_x) = coset_stats(&x.direction_counts(h.orthogonal().direction));
            SubgroupStats {
                direction: d,
                n_s,
                n_x,
                k_s,
                k_x,
            }
        })
        .collect();
    Ok(SupportProfile {
        p,
        s: s.clone(),
        x: x.clone(),
        subgroups,
    })
}

/// `K_X ≥ p+1-n_S`, `|X| ≥ n_X(p+1-n_S)`, `K_S ≥ p+1-n_X`, `|S| ≥ n_S(p+1-n_X)`.
pub fn lemma_sxmn_check(f: &GFunc, h: &LineSubgroup) -> Result<BoundReport> {
    let a = Analyzed::new(f)?;
    let prof = profile_analyzed(&a)?;
    let st = prof.stats(h);
    let p = a.p() as i64;
    let (n_s, n_x) = (st.n_s as i64, st.n_x as i64);
    let clauses = vec![
        Clause::rational("x-cosets", r(st.k_x), rat_int(p + 1 - n_s)),
        Clause::rational("x-size", r(a.x_size), rat_int(n_x * (p + 1 - n_s))),
        Clause::rational("s-cosets", r(st.k_s), rat_int(p + 1 - n_x)),
        Clause::rational("s-size", r(a.s_size), rat_int(n_s * (p + 1 - n_x))),
    ];
    let verdict = if clauses.iter().any(|c| !c.holds) {
        Verdict::Violated
    } else if clauses.iter().any(|c| c.tight) {
        Verdict::HoldsWithEquality
    } else {
        Verdict::Holds
    };
    Ok(BoundReport {
        theorem: format!("sxmn[direction={}]", h.direction),
        verdict,
        lhs: clauses[0].lhs.clone(),
        rhs: clauses[0].rhs.clone(),
        s_size: a.s_size,
        x_size: a.x_size,
        clauses,
        exception_reason: None,
        exception: None,
        cover: None,
        advisory: false,
        witness: (verdict == Verdict::Violated).then(|| a.f.clone()),
    })
}

/// `|A + B|` in `F_p`, checked against `min(p, |A| + |B| - 1)`.
pub fn sumset_bound(a: &[u32], b: &[u32], p: u32) -> Result<usize> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("sumset of an empty set".into()));
    }
    let a: BTreeSet<u32> = a.iter().map(|x| x % p).collect();
    let b: BTreeSet<u32> = b.iter().map(|x| x % p).collect();
    let sum: BTreeSet<u32> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x + y) % p))
        .collect();
    let floor = (p as usize).min(a.len() + b.len() - 1);
    assert!(sum.len() >= floor, "sumset below the Cauchy-Davenport floor");
    Ok(sum.len())
}

/// Multiplicative quadruple condition on `A`, then `|supp ĥ| = 1` or `≥ |A|`.
pub fn lemma_aq_check(h: &GFunc, a: &[u32]) -> Result<BoundReport> {
    if h.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: h.rank(),
        });
    }
    let p = h.p();
    let set: BTreeSet<u32> = a.iter().map(|x| x % p).collect();
    if 3 * set.len() <= 2 * p as usize {
        return Err(Error::Precondition(format!(
            "need |A| > 2p/3, got |A| = {}",
            set.len()
        )));
    }
    let an = Analyzed::new(h)?;
    let members: Vec<u32> = set.iter().copied().collect();
    let product = |i: u32, j: u32| h.value(i as usize) * h.value(j as usize);
    let hypothesis = members.iter().all(|&a1| {
        members.iter().all(|&a2| {
            members.iter().all(|&a3| {
                let a4 = (a1 + a2 + p - a3) % p;
                !set.contains(&a4) || product(a1, a2) == product(a3, a4)
            })
        })
    });
    let x = an.x_size;
    let lhs = Quantity::int(x as i64);
    let rhs = Quantity::int(set.len() as i64);
    let ord = if x == 1 {
        Ordering::Greater
    } else {
        x.cmp(&set.len())
    };
    let clause = Clause::new("spectrum-size", lhs.clone(), rhs.clone(), ord);
    let verdict = if !hypothesis {
        Verdict::HypothesisFails
    } else {
        disjunction(std::slice::from_ref(&clause))
    };
    Ok(BoundReport {
        theorem: "aq".into(),
        verdict,
        lhs,
        rhs,
        s_size: an.s_size,
        x_size: x,
        clauses: vec![clause],
        exception_reason: None,
        exception: None,
        cover: None,
        advisory: false,
        witness: (verdict == Verdict::Violated).then(|| h.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::plane::{coset_of, Point};

    fn subgroup_indicator(p: u32, d: u32) -> GFunc {
        let h = LineSubgroup::new(p, d, Side::Primal).unwrap();
        GFunc::indicator(&PointSet::from_coset(
            &coset_of(&Point::primal(0, 0), &h).unwrap(),
        ))
    }

    fn diff(a: &GFunc, b: &GFunc) -> GFunc {
        a.sub(b).unwrap()
    }

    #[test]
    fn profile_of_subgroup_indicator() {
        for p in [3u32, 5] {
            let f = subgroup_indicator(p, 1);
            let prof = profile(&f).unwrap();
            let h = LineSubgroup::new(p, 1, Side::Primal).unwrap();
            let st = prof.stats(&h);
            assert_eq!((st.n_s, st.k_s, st.n_x, st.k_x), (p as usize, 1, p as usize, 1));
        }
    }

    #[test]
    fn profile_of_delta() {
        let mut f = GFunc::zero(5, 2, Side::Primal);
        f.set(0, CycNum::one(5));
        let prof = profile(&f).unwrap();
        assert_eq!(prof.x.len(), 25);
        for st in &prof.subgroups {
            assert_eq!((st.n_s, st.k_s, st.n_x, st.k_x), (1, 1, 5, 5));
        }
        assert_eq!(profile(&GFunc::zero(5, 2, Side::Primal)), Err(Error::ZeroFunction));
    }

    #[test]
    fn line_counts_sum_to_support() {
        let f = diff(&subgroup_indicator(5, 0), &subgroup_indicator(5, 2));
        let prof = profile(&f).unwrap();
        assert_eq!((prof.s.len(), prof.x.len()), (8, 8));
        let h = LineSubgroup::new(5, 3, Side::Primal).unwrap();
        let k = prof.line_counts(&h);
        let reps: usize = (0..5)
            .map(|c| k[crate::plane::Coset::from_id(5, Side::Primal, 3 * 5 + c).offset.index(5)])
            .sum();
        assert_eq!(reps, 8);
        assert!(prof.isolated_count(&h) <= prof.stats(&h).k_x);
    }

    #[test]
    fn birotao_two_points() {
        let f = GFunc::from_ints(5, 1, Side::Primal, &[1, 1, 0, 0, 0]).unwrap();
        let rep = check_birotao(&f).unwrap();
        assert_eq!((rep.s_size, rep.x_size), (2, 5));
        assert_eq!(rep.verdict, Verdict::Holds);
        assert!(check_meshulam_alt(&f).is_err());
    }

    #[test]
    fn rational_difference_of_subgroups_is_tight() {
        let f = diff(&subgroup_indicator(3, 0), &subgroup_indicator(3, 1));
        let rep = check_rational(&f).unwrap();
        assert_eq!(rep.verdict, Verdict::HoldsWithEquality);
        assert_eq!(rep.lhs, Quantity::int(4));
        assert_eq!(rep.rhs, Quantity::int(4));
    }

    #[test]
    fn rational_subgroup_indicator_is_periodic() {
        let rep = check_rational(&subgroup_indicator(5, 2)).unwrap();
        assert_eq!(rep.verdict, Verdict::Exception);
        assert!(rep.clauses[1].holds);
        assert_eq!(rep.x_size, 5);
        let desc = rep.exception.unwrap();
        assert_eq!(desc.kind, ExceptionKind::HPeriodic);
    }

    #[test]
    fn parameter_errors() {
        let f = subgroup_indicator(3, 0);
        assert!(check_conjecture(&f, 0).is_err());
        assert!(check_conjecture(&f, 4).is_err());
        assert!(check_as2(&f, &rat(1, 1)).is_err());
        assert!(check_as3(&f, &rat(0, 1)).is_err());
        let mut g = GFunc::zero(3, 2, Side::Primal);
        g.set(1, CycNum::zeta_pow(3, 1));
        assert_eq!(check_rational(&g), Err(Error::NonRational));
    }

    #[test]
    fn sqrt_comparison() {
        assert_eq!(cmp_sqrt_sum(4, 4, 4), Ordering::Equal);
        assert_eq!(cmp_sqrt_sum(3, 5, 4), Ordering::Less);
        assert_eq!(cmp_sqrt_sum(3, 6, 4), Ordering::Greater);
        assert_eq!(cmp_sqrt_sum(0, 16, 4), Ordering::Equal);
        assert_eq!(cmp_sqrt_sum(20, 0, 4), Ordering::Greater);
    }

    #[test]
    fn sumsets() {
        assert_eq!(sumset_bound(&[2], &[3], 5).unwrap(), 1);
        assert_eq!(sumset_bound(&[0, 1], &[0, 1], 5).unwrap(), 3);
        assert_eq!(sumset_bound(&[0, 1, 2, 3, 4], &[1], 5).unwrap(), 5);
        assert!(sumset_bound(&[], &[1], 5).is_err());
    }

    #[test]
    fn aq_character() {
        let p = 7u32;
        let chi: Vec<CycNum> = (0..p).map(|t| CycNum::zeta_pow(p, 3 * t % p)).collect();
        let h = GFunc::from_values(7, 1, Side::Primal, chi).unwrap();
        let rep = lemma_aq_check(&h, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.x_size, 1);
        assert!(lemma_aq_check(&h, &[0, 1, 2, 3]).is_err());
        let bumpy = GFunc::from_ints(7, 1, Side::Primal, &[1, 2, 5, 1, 1, 3, 1]).unwrap();
        assert_eq!(
            lemma_aq_check(&bumpy, &[0, 1, 2, 3, 4]).unwrap().verdict,
            Verdict::HypothesisFails
        );
    }

    #[test]
    fn report_json_shape() {
        let f = diff(&subgroup_indicator(3, 0), &subgroup_indicator(3, 1));
        let json = serde_json::to_value(check_rational(&f).unwrap()).unwrap();
        assert_eq!(json["theorem"], "rational");
        assert_eq!(json["verdict"], "holds-with-equality");
        assert_eq!(json["lhs"], "4");
        assert!(json.get("witness").is_none());
    }
}
