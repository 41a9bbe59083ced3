//! Enumeration of function spaces, sweeps of the evaluators over them,
//! support-size frontiers and counterexample hunting.
//!
//! A space is a finite alphabet of values assigned to each group element,
//! optionally multiplied by every character. Candidates are numbered by a
//! mixed-radix counter whose most significant digit is point 0 (and, for
//! twisted spaces, the character above that), so every output that names "the
//! first" witness refers to this numbering.

pub mod gallery;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{check_prime, rat_to_string};
use crate::bounds::{evaluate, Analyzed, BoundReport, Check, CoverStats, Quantity, Verdict};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, GFunc};
use crate::plane::{pairing, Point, Side};

/// Largest exhaustive space accepted unless overridden.
pub const DEFAULT_CEILING: u128 = 100_000_000;

/// Candidates handled per work unit.
const CHUNK: u128 = 2048;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSpace {
    pub p: u32,
    pub rank: u8,
    pub alphabet: Vec<CycNum>,
    /// Multiply every base function by every character.
    pub twist: bool,
    pub mode: Mode,
    #[serde(skip)]
    pub ceiling: u128,
}

/// Parses a comma-separated alphabet such as `-1,0,1` or `0,1,z`.
pub fn parse_alphabet(p: u32, text: &str) -> Result<Vec<CycNum>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v = CycNum::parse(p, part)?;
        if seen.insert(v.to_string()) {
            out.push(v);
        }
    }
    Ok(out)
}

impl SearchSpace {
    fn build(p: u64, rank: u8, alphabet: Vec<CycNum>, mode: Mode) -> Result<Self> {
        let space = SearchSpace {
            p: check_prime(p)?,
            rank,
            alphabet,
            twist: false,
            mode,
            ceiling: DEFAULT_CEILING,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn exhaustive(p: u64, rank: u8, alphabet: Vec<CycNum>) -> Result<Self> {
        Self::build(p, rank, alphabet, Mode::Exhaustive)
    }

    pub fn random(p: u64, rank: u8, alphabet: Vec<CycNum>, seed: u64, budget: u64) -> Result<Self> {
        Self::build(p, rank, alphabet, Mode::Random { seed, budget })
    }

    /// Integer alphabet from a slice, e.g. `&[-1, 0, 1]`.
    pub fn int_alphabet(p: u64, values: &[i64]) -> Result<Vec<CycNum>> {
        let q = check_prime(p)?;
        Ok(values.iter().map(|&v| CycNum::from_int(q, v)).collect())
    }

    pub fn with_twist(mut self, twist: bool) -> Result<Self> {
        self.twist = twist;
        self.validate()?;
        Ok(self)
    }

    pub fn with_ceiling(mut self, ceiling: u128) -> Result<Self> {
        self.ceiling = ceiling;
        self.validate()?;
        Ok(self)
    }

    fn points(&self) -> usize {
        (self.p as usize).pow(self.rank as u32)
    }

    fn twists(&self) -> u128 {
        if self.twist {
            self.points() as u128
        } else {
            1
        }
    }

    /// Size of the exhaustive space, saturating.
    pub fn exhaustive_size(&self) -> u128 {
        let base = self.alphabet.len() as u128;
        (0..self.points())
            .try_fold(self.twists(), |acc, _| acc.checked_mul(base))
            .unwrap_or(u128::MAX)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank != 1 && self.rank != 2 {
            return Err(Error::InvalidParameter(format!(
                "rank must be 1 or 2, got {}",
                self.rank
            )));
        }
        if self.alphabet.is_empty() {
            return Err(Error::InvalidParameter("alphabet is empty".into()));
        }
        if let Some(v) = self.alphabet.iter().find(|v| v.p() != self.p) {
            return Err(Error::OrderMismatch(self.p, v.p()));
        }
        match self.mode {
            Mode::Exhaustive => {
                let n = self.exhaustive_size();
                if n > self.ceiling {
                    return Err(Error::CeilingExceeded {
                        candidates: n,
                        ceiling: self.ceiling,
                    });
                }
            }
            Mode::Random { budget, .. } => {
                if budget == 0 {
                    return Err(Error::InvalidParameter("random budget is zero".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of candidates visited.
    pub fn len(&self) -> u128 {
        match self.mode {
            Mode::Exhaustive => self.exhaustive_size(),
            Mode::Random { budget, .. } => budget as u128,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Candidate number `index`.
    pub fn candidate(&self, index: u128) -> GFunc {
        let n = self.points();
        let base = self.alphabet.len() as u128;
        let (digits, twist) = match self.mode {
            Mode::Exhaustive => {
                let mut rest = index;
                let mut digits = vec![0usize; n];
                for d in digits.iter_mut().rev() {
                    *d = (rest % base) as usize;
                    rest /= base;
                }
                (digits, rest as usize)
            }
            Mode::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                let digits = (0..n)
                    .map(|_| rng.random_range(0..self.alphabet.len()))
                    .collect();
                let twist = if self.twist {
                    rng.random_range(0..n)
                } else {
                    0
                };
                (digits, twist)
            }
        };
        let mut f = GFunc::zero(self.p, self.rank, Side::Primal);
        for (i, d) in digits.into_iter().enumerate() {
            let v = &self.alphabet[d];
            if v.is_zero() {
                continue;
            }
            let e = if twist == 0 {
                0
            } else {
                self.pair(twist, i)
            };
            f.set(i, v.mul_zeta_pow(e));
        }
        f
    }

    fn pair(&self, chi: usize, g: usize) -> u32 {
        if self.rank == 1 {
            (chi * g) as u32 % self.p
        } else {
            let a = Point::from_index(chi, self.p, Side::Dual);
            let b = Point::from_index(g, self.p, Side::Primal);
            pairing(&a, &b, self.p)
        }
    }

    pub fn describe(&self) -> String {
        let alphabet: Vec<String> = self.alphabet.iter().map(|v| v.to_string()).collect();
        let mode = match &self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Random { seed, budget } => format!("random(seed={seed}, budget={budget})"),
        };
        format!(
            "p={} rank={} alphabet={{{}}}{} {mode}",
            self.p,
            self.rank,
            alphabet.join(","),
            if self.twist { " twisted" } else { "" }
        )
    }
}

/// A candidate named by its index, with its support sizes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub index: u128,
    pub function: String,
    pub s_size: usize,
    pub x_size: usize,
    pub lhs: Quantity,
    pub rhs: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverStats>,
}

impl Witness {
    fn new(index: u128, a: &Analyzed, report: &BoundReport) -> Self {
        Witness {
            index,
            function: a.f.to_literal(),
            s_size: a.s_size,
            x_size: a.x_size,
            lhs: report.lhs.clone(),
            rhs: report.rhs.clone(),
            cover: report.cover.clone(),
        }
    }
}

/// Aggregated outcome of one check over a space.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckSummary {
    pub histogram: BTreeMap<String, u64>,
    /// Candidates the check does not apply to (e.g. non-rational values).
    pub inapplicable: u64,
    pub exception_kinds: BTreeMap<String, u64>,
    /// Exceptions for which no structural descriptor was found.
    pub unclassified_exceptions: u64,
    pub violations: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_equality: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_exception: Option<Witness>,
}

impl CheckSummary {
    pub fn count(&self, v: Verdict) -> u64 {
        self.histogram.get(v.name()).copied().unwrap_or(0)
    }

    fn merge(&mut self, other: CheckSummary) {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.exception_kinds {
            *self.exception_kinds.entry(k).or_default() += v;
        }
        self.inapplicable += other.inapplicable;
        self.unclassified_exceptions += other.unclassified_exceptions;
        self.violations.extend(other.violations);
        if self.first_equality.is_none() {
            self.first_equality = other.first_equality;
        }
        if self.first_exception.is_none() {
            self.first_exception = other.first_exception;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub space: String,
    pub candidates: u128,
    pub zero_functions: u64,
    pub checks: BTreeMap<String, CheckSummary>,
}

impl SweepSummary {
    pub fn total_violations(&self) -> usize {
        self.checks.values().map(|c| c.violations.len()).sum()
    }

    pub fn check(&self, check: &Check) -> Option<&CheckSummary> {
        self.checks.get(&check.label())
    }
}

struct Partial {
    zero: u64,
    checks: Vec<CheckSummary>,
}

fn sweep_chunk(space: &SearchSpace, checks: &[Check], range: std::ops::Range<u128>) -> Result<Partial> {
    let mut part = Partial {
        zero: 0,
        checks: vec![CheckSummary::default(); checks.len()],
    };
    for index in range {
        let f = space.candidate(index);
        if f.is_zero() {
            part.zero += 1;
            continue;
        }
        let a = Analyzed::new(&f)?;
        for (check, summary) in checks.iter().zip(part.checks.iter_mut()) {
            let report = match evaluate(check, &a) {
                Ok(r) => r,
                Err(Error::NonRational) | Err(Error::Precondition(_)) => {
                    summary.inapplicable += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            *summary
                .histogram
                .entry(report.verdict.name().to_string())
                .or_default() += 1;
            match report.verdict {
                Verdict::Violated => summary.violations.push(Witness::new(index, &a, &report)),
                Verdict::HoldsWithEquality if summary.first_equality.is_none() => {
                    summary.first_equality = Some(Witness::new(index, &a, &report));
                }
                Verdict::Exception => {
                    match &report.exception {
                        Some(d) => {
                            *summary
                                .exception_kinds
                                .entry(d.kind.name().to_string())
                                .or_default() += 1
                        }
                        None => summary.unclassified_exceptions += 1,
                    }
                    if summary.first_exception.is_none() {
                        summary.first_exception = Some(Witness::new(index, &a, &report));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(part)
}

/// Runs every check over the space. Deterministic for a given space: work
/// units are merged in index order.
pub fn sweep(space: &SearchSpace, checks: &[Check]) -> Result<SweepSummary> {
    space.validate()?;
    if checks.is_empty() {
        return Err(Error::InvalidParameter("no checks requested".into()));
    }
    let total = space.len();
    let chunks: Vec<std::ops::Range<u128>> = (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect();
    let parts = chunks
        .into_par_iter()
        .map(|range| sweep_chunk(space, checks, range))
        .collect::<Result<Vec<_>>>()?;
    let mut merged = vec![CheckSummary::default(); checks.len()];
    let mut zero = 0;
    for part in parts {
        zero += part.zero;
        for (m, c) in merged.iter_mut().zip(part.checks) {
            m.merge(c);
        }
    }
    for m in merged.iter_mut() {
        for v in Verdict::ALL {
            if v != Verdict::HypothesisFails {
                m.histogram.entry(v.name().to_string()).or_default();
            }
        }
    }
    Ok(SweepSummary {
        space: space.describe(),
        candidates: total,
        zero_functions: zero,
        checks: checks
            .iter()
            .map(|c| c.label())
            .zip(merged)
            .collect(),
    })
}

/// Outcome of a hunt for one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntResult {
    pub theorem: String,
    pub space: String,
    pub candidates: u128,
    /// First violation in candidate order.
    pub violation: Option<Witness>,
    /// Failures of the inequality excused by the exception or escape clause.
    pub excused: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_excused: Option<Witness>,
    pub note: String,
}

/// Searches for the first violation of `check`.
pub fn hunt(check: &Check, space: &SearchSpace) -> Result<HuntResult> {
    let summary = sweep(space, std::slice::from_ref(check))?;
    let cs = summary
        .checks
        .into_values()
        .next()
        .unwrap_or_default();
    let excused = cs.count(Verdict::Exception);
    Ok(HuntResult {
        theorem: check.label(),
        space: summary.space,
        candidates: summary.candidates,
        violation: cs.violations.into_iter().next(),
        excused,
        first_excused: cs.first_exception,
        note: "alphabet-restricted search: absence of a violation is not a proof".into(),
    })
}

/// Attained `(|S|, |X|)` pairs with their first witnesses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontierMap {
    pub space: String,
    pub attained: BTreeMap<(usize, usize), Witness>,
}

impl FrontierMap {
    /// Rows `S_size,X_size,witness_literal`, the literal quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("S_size,X_size,witness_literal\n");
        for ((s, x), w) in &self.attained {
            out.push_str(&format!("{s},{x},\"{}\"\n", w.function));
        }
        out
    }

    /// Pairs on or below the staircase: no other pair is smaller in both.
    pub fn pareto(&self) -> Vec<(usize, usize)> {
        let pairs: Vec<(usize, usize)> = self.attained.keys().copied().collect();
        pairs
            .iter()
            .copied()
            .filter(|&(s, x)| {
                !pairs
                    .iter()
                    .any(|&(s2, x2)| (s2, x2) != (s, x) && s2 <= s && x2 <= x)
            })
            .collect()
    }
}

pub fn frontier(space: &SearchSpace) -> Result<FrontierMap> {
    space.validate()?;
    let total = space.len();
    let chunks: Vec<std::ops::Range<u128>> = (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect();
    let parts = chunks
        .into_par_iter()
        .map(|range| {
            let mut seen: BTreeMap<(usize, usize), (u128, GFunc)> = BTreeMap::new();
            for index in range {
                let f = space.candidate(index);
                if f.is_zero() {
                    continue;
                }
                let fhat = fourier_transform(&f)?;
                let key = (f.support_size(), fhat.support_size());
                seen.entry(key).or_insert((index, f));
            }
            Ok(seen)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut attained = BTreeMap::new();
    for part in parts {
        for (key, (index, f)) in part {
            attained.entry(key).or_insert_with(|| Witness {
                index,
                function: f.to_literal(),
                s_size: key.0,
                x_size: key.1,
                lhs: Quantity::int(key.0 as i64),
                rhs: Quantity::int(key.1 as i64),
                cover: None,
            });
        }
    }
    Ok(FrontierMap {
        space: space.describe(),
        attained,
    })
}

/// `(m(p+1-n), n(p+1-m))` for `1 ≤ m, n ≤ p`.
pub fn yellow_dots(p: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for m in 1..=p {
        for n in 1..=p {
            out.insert((m * (p + 1 - n), n * (p + 1 - m)));
        }
    }
    out
}

/// `ε` as text, for labels.
pub fn epsilon_label(e: &num_rational::BigRational) -> String {
    rat_to_string(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_numbering() {
        let a = SearchSpace::int_alphabet(3, &[-1, 0, 1]).unwrap();
        let space = SearchSpace::exhaustive(3, 2, a).unwrap();
        assert_eq!(space.len(), 19683);
        assert_eq!(space.candidate(0).to_literal(), "3; 2; -1,-1,-1,-1,-1,-1,-1,-1,-1");
        assert_eq!(space.candidate(1).to_literal(), "3; 2; -1,-1,-1,-1,-1,-1,-1,-1,0");
        assert_eq!(space.candidate(3u128.pow(8)).value(0), &CycNum::zero(3));
        assert!(space.candidate(9841).is_zero());
    }

    #[test]
    fn empty_alphabet_and_ceiling() {
        assert!(SearchSpace::exhaustive(3, 2, vec![]).is_err());
        let a = SearchSpace::int_alphabet(5, &[-1, 0, 1]).unwrap();
        assert!(matches!(
            SearchSpace::exhaustive(5, 2, a.clone()),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(SearchSpace::random(5, 2, a, 1, 100).is_ok());
    }

    #[test]
    fn random_mode_is_reproducible() {
        let a = SearchSpace::int_alphabet(5, &[-1, 0, 1]).unwrap();
        let space = SearchSpace::random(5, 2, a, 42, 300).unwrap();
        let one = sweep(&space, &[Check::Basic, Check::MeshulamAlt]).unwrap();
        let two = sweep(&space, &[Check::Basic, Check::MeshulamAlt]).unwrap();
        assert_eq!(one, two);
        assert_eq!(space.candidate(17), space.candidate(17));
    }

    #[test]
    fn twisted_space_multiplies_by_characters() {
        let a = SearchSpace::int_alphabet(3, &[0, 1]).unwrap();
        let space = SearchSpace::exhaustive(3, 1, a).unwrap().with_twist(true).unwrap();
        assert_eq!(space.len(), 8 * 3);
        let f = space.candidate(8 + 7);
        assert_eq!(f.value(1), &CycNum::zeta_pow(3, 1));
    }

    #[test]
    fn yellow_dots_small() {
        let dots = yellow_dots(3);
        assert!(dots.contains(&(3, 3)));
        assert!(dots.contains(&(1, 9)));
        assert!(dots.contains(&(9, 1)));
    }

    #[test]
    fn parse_alphabets() {
        let a = parse_alphabet(3, "-1, 0, 1, 1").unwrap();
        assert_eq!(a.len(), 3);
        assert!(parse_alphabet(3, "0,x").is_err());
    }
}
