//! `F_p^2` and its dual as affine planes.
//!
//! Points are pairs of residues. The dual plane uses the same coordinates, and
//! the character labelled `(a, b)` acts by `(x, y) ↦ ζ^(ax + by)`. The `p + 1`
//! order-`p` subgroups are the directions; their cosets are the lines.
//! Directions are indexed `0..=p`: slope `s` is direction `s` (generator
//! `(1, s)`), and the vertical direction is `p` (generator `(0, 1)`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{check_prime, inv_mod, rat_int};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    pub(crate) fn expect(self, expected: Side) -> Result<()> {
        if self == expected {
            Ok(())
        } else {
            Err(Error::SideMismatch {
                expected: expected.name(),
                found: self.name(),
            })
        }
    }
}

/// A point of `F_p^2` (primal) or of its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
    pub side: Side,
}

impl Point {
    pub fn new(x: u32, y: u32, side: Side) -> Self {
        Point { x, y, side }
    }

    pub fn primal(x: u32, y: u32) -> Self {
        Self::new(x, y, Side::Primal)
    }

    pub fn dual(x: u32, y: u32) -> Self {
        Self::new(x, y, Side::Dual)
    }

    /// Dense index `x·p + y`.
    pub fn index(&self, p: u32) -> usize {
        (self.x * p + self.y) as usize
    }

    pub fn from_index(idx: usize, p: u32, side: Side) -> Self {
        let idx = idx as u32;
        Point::new(idx / p, idx % p, side)
    }

    pub fn add(&self, other: &Point, p: u32) -> Point {
        Point::new((self.x + other.x) % p, (self.y + other.y) % p, self.side)
    }

    pub fn sub(&self, other: &Point, p: u32) -> Point {
        Point::new(
            (self.x + p - other.x) % p,
            (self.y + p - other.y) % p,
            self.side,
        )
    }

    pub fn scale(&self, t: u32, p: u32) -> Point {
        Point::new(self.x * t % p, self.y * t % p, self.side)
    }

    pub fn is_origin(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

/// The exponent `ax + by mod p` of the pairing between `G` and its dual.
pub fn pairing(a: &Point, b: &Point, p: u32) -> u32 {
    (a.x * b.x + a.y * b.y) % p
}

/// Direction index of the nonzero vector `(dx, dy)`.
pub fn direction_of(dx: u32, dy: u32, p: u32) -> u32 {
    let (dx, dy) = (dx % p, dy % p);
    debug_assert!(dx != 0 || dy != 0);
    if dx == 0 {
        p
    } else {
        dy * inv_mod(dx, p) % p
    }
}

/// An order-`p` subgroup: a line through the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineSubgroup {
    pub p: u32,
    pub direction: u32,
    pub side: Side,
}

impl LineSubgroup {
    pub fn new(p: u32, direction: u32, side: Side) -> Result<Self> {
        if direction > p {
            return Err(Error::InvalidParameter(format!(
                "direction {direction} out of range 0..={p}"
            )));
        }
        Ok(LineSubgroup { p, direction, side })
    }

    pub fn generator(&self) -> Point {
        if self.direction == self.p {
            Point::new(0, 1, self.side)
        } else {
            Point::new(1, self.direction, self.side)
        }
    }

    pub fn contains(&self, pt: &Point) -> bool {
        let g = self.generator();
        let p = self.p as u64;
        (g.x as u64 * pt.y as u64 + p * p - g.y as u64 * pt.x as u64).is_multiple_of(p)
    }

    /// Members `t·generator` for `t = 0, …, p-1`.
    pub fn points(&self) -> Vec<Point> {
        let g = self.generator();
        (0..self.p).map(|t| g.scale(t, self.p)).collect()
    }

    /// `H^⊥`: the points of the other side pairing to zero with all of `H`.
    pub fn orthogonal(&self) -> LineSubgroup {
        let g = self.generator();
        let p = self.p;
        let direction = direction_of((p - g.y) % p, g.x, p);
        LineSubgroup {
            p,
            direction,
            side: self.side.flip(),
        }
    }

    /// Parameter `t` with `pt = t·generator`, if `pt` lies in the subgroup.
    pub fn coordinate(&self, pt: &Point) -> Option<u32> {
        if !self.contains(pt) {
            return None;
        }
        let g = self.generator();
        Some(if g.x != 0 { pt.x } else { pt.y })
    }
}

pub fn all_subgroups(p: u64, side: Side) -> Result<Vec<LineSubgroup>> {
    let p = check_prime(p)?;
    Ok((0..=p).map(|d| LineSubgroup { p, direction: d, side }).collect())
}

pub fn orthogonal(h: &LineSubgroup) -> LineSubgroup {
    h.orthogonal()
}

/// A line: a coset of a [`LineSubgroup`], keyed by its lexicographically least
/// member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coset {
    pub subgroup: LineSubgroup,
    pub offset: Point,
}

impl Coset {
    /// Intercept of the line through `pt`: `y - s·x` for slope `s`, `x` for vertical.
    fn intercept(h: &LineSubgroup, pt: &Point) -> u32 {
        let p = h.p;
        if h.direction == p {
            pt.x
        } else {
            (pt.y + p * p - h.direction * pt.x % p) % p
        }
    }

    fn from_intercept(h: LineSubgroup, c: u32) -> Coset {
        let offset = if h.direction == h.p {
            Point::new(c, 0, h.side)
        } else {
            Point::new(0, c, h.side)
        };
        Coset {
            subgroup: h,
            offset,
        }
    }

    pub fn intercept_value(&self) -> u32 {
        Self::intercept(&self.subgroup, &self.offset)
    }

    /// Dense line id `direction·p + intercept`, in `0..p(p+1)`.
    pub fn id(&self) -> usize {
        (self.subgroup.direction * self.subgroup.p + self.intercept_value()) as usize
    }

    pub fn from_id(p: u32, side: Side, id: usize) -> Coset {
        let id = id as u32;
        let h = LineSubgroup {
            p,
            direction: id / p,
            side,
        };
        Self::from_intercept(h, id % p)
    }

    pub fn contains(&self, pt: &Point) -> bool {
        pt.side == self.offset.side
            && Self::intercept(&self.subgroup, pt) == self.intercept_value()
    }

    pub fn points(&self) -> Vec<Point> {
        let p = self.subgroup.p;
        self.subgroup
            .points()
            .iter()
            .map(|h| self.offset.add(h, p))
            .collect()
    }

    pub fn is_subgroup(&self) -> bool {
        self.offset.is_origin()
    }

    /// The common point of two nonparallel lines.
    pub fn intersection(&self, other: &Coset) -> Option<Point> {
        if self.subgroup.direction == other.subgroup.direction {
            return None;
        }
        self.points().into_iter().find(|pt| other.contains(pt))
    }
}

/// The `p` parallel lines of a direction, in intercept order.
pub fn lines_in_direction(h: &LineSubgroup) -> Vec<Coset> {
    (0..h.p).map(|c| Coset::from_intercept(*h, c)).collect()
}

pub fn coset_of(g: &Point, h: &LineSubgroup) -> Result<Coset> {
    g.side.expect(h.side)?;
    Ok(Coset::from_intercept(*h, Coset::intercept(h, g)))
}

/// Precomputed incidences for one prime.
pub(crate) struct LineTable {
    pub p: u32,
    /// Point indices on each line, by line id.
    pub lines: Vec<Vec<usize>>,
    /// `point_lines[idx][d]` is the id of the direction-`d` line through `idx`.
    pub point_lines: Vec<Vec<usize>>,
}

pub(crate) fn line_table(p: u32) -> Arc<LineTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<LineTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("line table cache poisoned");
    guard
        .entry(p)
        .or_insert_with(|| Arc::new(build_line_table(p)))
        .clone()
}

fn build_line_table(p: u32) -> LineTable {
    let n = (p * p) as usize;
    let mut lines = vec![Vec::with_capacity(p as usize); (p * (p + 1)) as usize];
    let mut point_lines = vec![Vec::with_capacity(p as usize + 1); n];
    for (idx, pl) in point_lines.iter_mut().enumerate() {
        let pt = Point::from_index(idx, p, Side::Primal);
        for d in 0..=p {
            let h = LineSubgroup {
                p,
                direction: d,
                side: Side::Primal,
            };
            let id = (d * p + Coset::intercept(&h, &pt)) as usize;
            lines[id].push(idx);
            pl.push(id);
        }
    }
    LineTable {
        p,
        lines,
        point_lines,
    }
}

/// A set of points on one side of the plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    p: u32,
    side: Side,
    bits: Vec<bool>,
    len: usize,
}

impl PointSet {
    pub fn empty(p: u32, side: Side) -> Self {
        PointSet {
            p,
            side,
            bits: vec![false; (p * p) as usize],
            len: 0,
        }
    }

    pub fn full(p: u32, side: Side) -> Self {
        PointSet {
            p,
            side,
            bits: vec![true; (p * p) as usize],
            len: (p * p) as usize,
        }
    }

    pub fn from_indices(p: u32, side: Side, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(p, side);
        for i in indices {
            s.insert_index(i);
        }
        s
    }

    pub fn from_points(p: u32, side: Side, points: &[Point]) -> Result<Self> {
        let mut s = Self::empty(p, side);
        for pt in points {
            pt.side.expect(side)?;
            if pt.x >= p || pt.y >= p {
                return Err(Error::InvalidParameter(format!(
                    "point ({}, {}) out of range for p = {p}",
                    pt.x, pt.y
                )));
            }
            s.insert(pt);
        }
        Ok(s)
    }

    pub fn from_coset(c: &Coset) -> Self {
        let p = c.subgroup.p;
        Self::from_indices(p, c.offset.side, c.points().iter().map(|q| q.index(p)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.bits[idx]
    }

    pub fn contains(&self, pt: &Point) -> bool {
        pt.side == self.side && self.bits[pt.index(self.p)]
    }

    pub fn insert_index(&mut self, idx: usize) {
        if !self.bits[idx] {
            self.bits[idx] = true;
            self.len += 1;
        }
    }

    pub fn insert(&mut self, pt: &Point) {
        self.insert_index(pt.index(self.p));
    }

    pub fn remove_index(&mut self, idx: usize) {
        if self.bits[idx] {
            self.bits[idx] = false;
            self.len -= 1;
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn points(&self) -> Vec<Point> {
        self.indices()
            .map(|i| Point::from_index(i, self.p, self.side))
            .collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.indices().all(|i| other.bits[i])
    }

    /// Number of members on the line.
    pub fn count_on(&self, line: &Coset) -> usize {
        line.points()
            .iter()
            .filter(|q| self.bits[q.index(self.p)])
            .count()
    }

    /// Member counts of the `p` lines in direction `d`, by intercept.
    pub fn direction_counts(&self, d: u32) -> Vec<usize> {
        let table = line_table(self.p);
        let base = (d * self.p) as usize;
        (0..self.p as usize)
            .map(|c| {
                table.lines[base + c]
                    .iter()
                    .filter(|&&i| self.bits[i])
                    .count()
            })
            .collect()
    }

    /// Relabels the set onto the other side with the same coordinates.
    pub fn with_side(&self, side: Side) -> PointSet {
        PointSet { side, ..self.clone() }
    }

    /// Parses `"p; (x1,y1),(x2,y2),…"`.
    pub fn parse(text: &str, side: Side) -> Result<PointSet> {
        let (head, body) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `p; (x,y),…`, got `{text}`")))?;
        let p: u64 = head
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime `{}`", head.trim())))?;
        let p = check_prime(p)?;
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let mut points = Vec::new();
        let mut rest = body.as_str();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("malformed point list `{body}`")))?;
            let (pair, tail) = inner;
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("malformed point `({pair})`")))?;
            let coord = |s: &str| -> Result<u32> {
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid coordinate `{s}`")))?;
                Ok(v.rem_euclid(p as i64) as u32)
            };
            points.push(Point::new(coord(x)?, coord(y)?, side));
            rest = tail.strip_prefix(',').unwrap_or(tail);
        }
        PointSet::from_points(p, side, &points)
    }

    pub fn to_literal(&self) -> String {
        let pts: Vec<String> = self
            .points()
            .iter()
            .map(|q| format!("({},{})", q.x, q.y))
            .collect();
        format!("{}; {}", self.p, pts.join(","))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}]({})", self.side.name(), self.to_literal())
    }
}

#[derive(Serialize, Deserialize)]
struct PointSetRepr {
    p: u32,
    side: Side,
    points: Vec<[u32; 2]>,
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointSetRepr {
            p: self.p,
            side: self.side,
            points: self.points().iter().map(|q| [q.x, q.y]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PointSetRepr::deserialize(d)?;
        let p = check_prime(repr.p as u64).map_err(D::Error::custom)?;
        let pts: Vec<Point> = repr
            .points
            .iter()
            .map(|[x, y]| Point::new(*x, *y, repr.side))
            .collect();
        PointSet::from_points(p, repr.side, &pts).map_err(D::Error::custom)
    }
}

/// Directions of the lines through two distinct members of `set`.
pub fn directions_determined(set: &PointSet) -> Result<BTreeSet<u32>> {
    if set.len() < 2 {
        return Err(Error::Precondition(
            "at least two points are needed to determine a direction".into(),
        ));
    }
    let p = set.p();
    let pts = set.points();
    let mut dirs = BTreeSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = b.sub(a, p);
            dirs.insert(direction_of(d.x, d.y, p));
            if dirs.len() == p as usize + 1 {
                return Ok(dirs);
            }
        }
    }
    Ok(dirs)
}

/// Whether `set` meets every one of the `p(p+1)` lines.
pub fn is_blocking_set(set: &PointSet) -> bool {
    let table = line_table(set.p());
    table
        .lines
        .iter()
        .all(|line| line.iter().any(|&i| set.contains_index(i)))
}

/// Exact minimum size of a blocking set of the affine plane, with a witness.
///
/// Branch and bound: always branch on the unblocked line with the fewest
/// still-allowed points, and prune with the larger of two lower bounds (the
/// most unblocked lines in one pencil, which need distinct points, and the
/// unblocked line count over `p + 1`). Translation invariance lets the
/// origin be fixed in the set.
pub fn min_blocking_size(p: u64) -> Result<(usize, PointSet)> {
    let p = check_prime(p)?;
    let table = line_table(p);
    let mut search = BlockingSearch {
        table: &table,
        hits: vec![0; table.lines.len()],
        allowed: vec![true; (p * p) as usize],
        chosen: vec![0],
        best: (0..(p * p) as usize).collect(),
    };
    for &l in &table.point_lines[0] {
        search.hits[l] += 1;
    }
    search.allowed[0] = false;
    search.run();
    let witness = PointSet::from_indices(p, Side::Primal, search.best.iter().copied());
    Ok((witness.len(), witness))
}

struct BlockingSearch<'a> {
    table: &'a LineTable,
    hits: Vec<u32>,
    allowed: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl BlockingSearch<'_> {
    fn run(&mut self) {
        let p = self.table.p as usize;
        let mut per_direction = vec![0usize; p + 1];
        let mut unblocked = 0usize;
        let mut branch_line = None;
        let mut branch_width = usize::MAX;
        for (id, line) in self.table.lines.iter().enumerate() {
            if self.hits[id] > 0 {
                continue;
            }
            unblocked += 1;
            per_direction[id / p] += 1;
            let width = line.iter().filter(|&&i| self.allowed[i]).count();
            if width < branch_width {
                branch_width = width;
                branch_line = Some(id);
            }
        }
        let Some(line_id) = branch_line else {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        if branch_width == 0 {
            return;
        }
        let pencil_bound = per_direction.iter().copied().max().unwrap_or(0);
        let spread_bound = unblocked.div_ceil(p + 1);
        if self.chosen.len() + pencil_bound.max(spread_bound) >= self.best.len() {
            return;
        }
        let candidates: Vec<usize> = self.table.lines[line_id]
            .iter()
            .copied()
            .filter(|&i| self.allowed[i])
            .collect();
        let mut disallowed = Vec::new();
        for idx in candidates {
            self.chosen.push(idx);
            self.allowed[idx] = false;
            for &l in &self.table.point_lines[idx] {
                self.hits[l] += 1;
            }
            self.run();
            for &l in &self.table.point_lines[idx] {
                self.hits[l] -= 1;
            }
            self.chosen.pop();
            // later branches exclude this point
            disallowed.push(idx);
        }
        for idx in disallowed {
            self.allowed[idx] = true;
        }
    }
}

/// Unblocked-pencil statistics for a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    /// Directions containing at least one line missing the set.
    pub k: usize,
    /// Most unblocked lines within one direction.
    pub m: usize,
    pub size: usize,
    /// `2p - k - m`, or `2p - 1` for a blocking set.
    pub bound: i64,
    pub bound_holds: bool,
}

pub fn pencil_stability_check(set: &PointSet) -> PencilReport {
    let p = set.p();
    let unblocked: Vec<usize> = (0..=p)
        .map(|d| set.direction_counts(d).iter().filter(|&&c| c == 0).count())
        .collect();
    let k = unblocked.iter().filter(|&&u| u > 0).count();
    let m = unblocked.iter().copied().max().unwrap_or(0);
    let bound = if k == 0 {
        2 * p as i64 - 1
    } else {
        2 * p as i64 - k as i64 - m as i64
    };
    PencilReport {
        k,
        m,
        size: set.len(),
        bound,
        bound_holds: set.len() as i64 >= bound,
    }
}

/// A smallest set of lines covering `set`, if one with at most `limit` lines exists.
pub fn line_cover(set: &PointSet, limit: usize) -> Option<Vec<Coset>> {
    let table = line_table(set.p());
    let pts: Vec<usize> = set.indices().collect();
    (0..=limit).find_map(|budget| {
        let mut chosen = Vec::new();
        cover_dfs(&table, &pts, budget, &mut chosen).then(|| {
            chosen
                .iter()
                .map(|&id| Coset::from_id(set.p(), set.side(), id))
                .collect()
        })
    })
}

fn cover_dfs(table: &LineTable, pts: &[usize], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(&first) = pts.first() else {
        return true;
    };
    if budget == 0 || pts.len() > budget * table.p as usize {
        return false;
    }
    for &line in &table.point_lines[first] {
        let rest: Vec<usize> = pts
            .iter()
            .copied()
            .filter(|&i| table.point_lines[i][line / table.p as usize] != line)
            .collect();
        chosen.push(line);
        if cover_dfs(table, &rest, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Fewest lines covering `set` (at most `p`, by any pencil).
pub fn min_line_cover(set: &PointSet) -> usize {
    line_cover(set, set.p() as usize)
        .map(|c| c.len())
        .unwrap_or(set.p() as usize)
}

pub fn one_line_cover(set: &PointSet) -> bool {
    find_one_line_cover(set).is_some() || set.is_empty()
}

/// The line containing `set`, when `|set| >= 2` and it is collinear; for a
/// single point, the direction-0 line through it.
pub fn find_one_line_cover(set: &PointSet) -> Option<Coset> {
    let pts = set.points();
    let first = pts.first()?;
    let p = set.p();
    let direction = match pts.get(1) {
        Some(second) => {
            let d = second.sub(first, p);
            direction_of(d.x, d.y, p)
        }
        None => 0,
    };
    let h = LineSubgroup {
        p,
        direction,
        side: set.side(),
    };
    let line = coset_of(first, &h).ok()?;
    pts.iter().all(|q| line.contains(q)).then_some(line)
}

pub fn two_line_cover(set: &PointSet) -> bool {
    find_two_line_cover(set).is_some()
}

/// At most two lines covering `set`. One of any covering pair holds two of the
/// first three points, so only three candidate first lines need trying.
pub fn find_two_line_cover(set: &PointSet) -> Option<Vec<Coset>> {
    let pts = set.points();
    if pts.len() <= 2 {
        return pts.iter()
                .map(|q| {
                    let single = PointSet::from_points(set.p(), set.side(), &[*q]).ok()?;
                    find_one_line_cover(&single)
                })
                .collect::<Option<Vec<_>>>();
    }
    if let Some(line) = find_one_line_cover(set) {
        return Some(vec![line]);
    }
    let p = set.p();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let d = pts[b].sub(&pts[a], p);
        let h = LineSubgroup {
            p,
            direction: direction_of(d.x, d.y, p),
            side: set.side(),
        };
        let first = coset_of(&pts[a], &h).ok()?;
        let rest: Vec<Point> = pts.iter().copied().filter(|q| !first.contains(q)).collect();
        let rest_set = PointSet::from_points(p, set.side(), &rest).ok()?;
        if let Some(second) = find_one_line_cover(&rest_set) {
            return Some(vec![first, second]);
        }
    }
    None
}

/// `c < sqrt(n) + a`, decided exactly.
fn below_sqrt_plus(c: usize, n: usize, a: &BigRational) -> bool {
    let t = rat_int(c as i64) - a;
    t < BigRational::zero() || &t * &t < rat_int(n as i64)
}

/// A determined direction whose lines each hold fewer than
/// `sqrt(|P|) + max{1, |P|/(2p)}` points of `P`.
pub fn bounded_line_direction(set: &PointSet) -> Result<Option<u32>> {
    let p = set.p();
    let n = set.len();
    if n < 2 || n > 4 * p as usize {
        return Err(Error::Precondition(format!(
            "need 2 <= |P| <= 4p = {}, got {n}",
            4 * p
        )));
    }
    if one_line_cover(set) {
        return Err(Error::Precondition("P lies on a single line".into()));
    }
    let a = std::cmp::max(rat_int(1), BigRational::new((n as i64).into(), (2 * p as i64).into()));
    for d in directions_determined(set)? {
        let max = set.direction_counts(d).into_iter().max().unwrap_or(0);
        if below_sqrt_plus(max, n, &a) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// A direction with some line holding at least three points of `P` and no
/// line holding more than `(p+5)/2`.
pub fn rich_direction_search(set: &PointSet) -> Result<Option<u32>> {
    let p = set.p() as usize;
    let n = set.len();
    if p < 3 {
        return Err(Error::Precondition("requires p >= 3".into()));
    }
    if 2 * n < 3 * p + 7 || n > 2 * p + 7 {
        return Err(Error::Precondition(format!(
            "need (3p+7)/2 <= |P| <= 2p+7, got |P| = {n}"
        )));
    }
    if two_line_cover(set) {
        return Err(Error::Precondition("P lies in a union of two lines".into()));
    }
    for d in 0..=p as u32 {
        let counts = set.direction_counts(d);
        let rich = counts.iter().any(|&c| c >= 3);
        let bounded = counts.iter().all(|&c| 2 * c <= p + 5);
        if rich && bounded {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> PointSet {
        PointSet::parse(text, Side::Primal).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(3, Side::Primal).unwrap().len(), 4);
        assert!(all_subgroups(4, Side::Primal).is_err());
        for p in [2u32, 3, 5, 7] {
            let subs = all_subgroups(p as u64, Side::Primal).unwrap();
            let mut union = PointSet::empty(p, Side::Primal);
            for h in &subs {
                assert_eq!(h.points().len(), p as usize);
                for q in h.points() {
                    assert!(h.contains(&q));
                    union.insert(&q);
                }
                assert!(!h.generator().is_origin() && h.contains(&h.generator()));
            }
            assert_eq!(union.len(), (p * p) as usize);
            // every nonzero point in exactly one subgroup
            for idx in 1..(p * p) as usize {
                let q = Point::from_index(idx, p, Side::Primal);
                assert_eq!(subs.iter().filter(|h| h.contains(&q)).count(), 1);
            }
        }
    }

    #[test]
    fn generators_mod_five() {
        let gens: Vec<(u32, u32)> = all_subgroups(5, Side::Primal)
            .unwrap()
            .iter()
            .map(|h| (h.generator().x, h.generator().y))
            .collect();
        assert_eq!(gens, vec![(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (0, 1)]);
    }

    #[test]
    fn orthogonality() {
        for p in [3u64, 5, 7] {
            for h in all_subgroups(p, Side::Primal).unwrap() {
                let perp = h.orthogonal();
                assert_eq!(perp.side, Side::Dual);
                assert_eq!(perp.orthogonal(), h);
                assert_eq!(perp.points().len(), p as usize);
                for a in perp.points() {
                    for x in h.points() {
                        assert_eq!(pairing(&a, &x, p as u32), 0);
                    }
                }
            }
        }
        let h = LineSubgroup::new(3, 0, Side::Primal).unwrap();
        assert_eq!(h.orthogonal().generator(), Point::dual(0, 1));
    }

    #[test]
    fn cosets_partition() {
        let h = LineSubgroup::new(3, 0, Side::Primal).unwrap();
        let lines = lines_in_direction(&h);
        assert_eq!(lines.len(), 3);
        let c = coset_of(&Point::primal(1, 2), &h).unwrap();
        let mut pts = c.points();
        pts.sort();
        assert_eq!(
            pts,
            vec![Point::primal(0, 2), Point::primal(1, 2), Point::primal(2, 2)]
        );
        assert_eq!(c.offset, Point::primal(0, 2));
        assert!(coset_of(&Point::dual(0, 0), &h).is_err());
        for p in [3u32, 5] {
            let table = line_table(p);
            assert_eq!(table.lines.len(), (p * (p + 1)) as usize);
            assert!(table.point_lines.iter().all(|l| l.len() == p as usize + 1));
            for (id, line) in table.lines.iter().enumerate() {
                let c = Coset::from_id(p, Side::Primal, id);
                assert_eq!(c.id(), id);
                let least = line.iter().min().unwrap();
                assert_eq!(c.offset.index(p), *least);
            }
            // two distinct points lie on exactly one common line
            for a in 0..(p * p) as usize {
                for b in a + 1..(p * p) as usize {
                    let common = table.point_lines[a]
                        .iter()
                        .filter(|l| table.point_lines[b].contains(l))
                        .count();
                    assert_eq!(common, 1);
                }
            }
        }
    }

    #[test]
    fn directions() {
        assert_eq!(directions_determined(&set("5; (0,0),(1,0)")).unwrap().len(), 1);
        assert!(directions_determined(&set("5; (0,0)")).is_err());
        let big = set("3; (0,0),(0,1),(1,0),(2,2)");
        assert_eq!(directions_determined(&big).unwrap().len(), 4);
    }

    #[test]
    fn blocking_sets() {
        let two_lines = set("5; (0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(0,2),(0,3),(0,4)");
        assert!(is_blocking_set(&two_lines));
        assert_eq!(two_lines.len(), 9);
        assert!(!is_blocking_set(&set("3; (0,0),(1,1),(2,2)")));
        let (size, witness) = min_blocking_size(3).unwrap();
        assert_eq!(size, 5);
        assert!(is_blocking_set(&witness));
        assert_eq!(min_blocking_size(2).unwrap().0, 3);
    }

    #[test]
    fn pencils() {
        let line = set("3; (0,0),(1,0),(2,0)");
        let r = pencil_stability_check(&line);
        assert_eq!((r.k, r.m, r.bound), (1, 2, 3));
        assert!(r.bound_holds);
        let blocking = set("3; (0,0),(1,0),(2,0),(0,1),(0,2)");
        let r = pencil_stability_check(&blocking);
        assert_eq!((r.k, r.m, r.bound), (0, 0, 5));
    }

    #[test]
    fn covers() {
        assert!(two_line_cover(&set("5; (1,2),(3,4)")));
        assert!(!two_line_cover(&PointSet::full(3, Side::Primal)));
        assert!(two_line_cover(&set("3; (0,0),(1,0),(2,0),(0,1),(1,1),(2,1)")));
        assert!(!one_line_cover(&set("3; (0,0),(1,0),(0,1)")));
        assert_eq!(min_line_cover(&PointSet::full(5, Side::Primal)), 5);
        assert_eq!(min_line_cover(&set("5; (0,0),(1,0),(0,1),(1,1)")), 2);
        assert_eq!(min_line_cover(&PointSet::empty(5, Side::Primal)), 0);
        let cover = find_two_line_cover(&set("5; (0,0),(1,1),(2,2),(0,3),(1,3)")).unwrap();
        assert_eq!(cover.len(), 2);
    }

    #[test]
    fn bounded_direction() {
        let two_lines = set("5; (0,0),(1,0),(2,0),(3,0),(4,0),(0,1),(0,2),(0,3),(0,4)");
        let d = bounded_line_direction(&two_lines).unwrap().unwrap();
        let max = two_lines.direction_counts(d).into_iter().max().unwrap();
        assert!(max < 4);
        assert!(bounded_line_direction(&set("5; (0,0),(1,0)")).is_err());
        assert!(bounded_line_direction(&set("5; (0,0),(1,0),(0,1)")).unwrap().is_some());
    }

    #[test]
    fn rich_direction_preconditions() {
        let mut almost = PointSet::full(3, Side::Primal);
        almost.remove_index(4);
        assert!(rich_direction_search(&almost).unwrap().is_some());
        assert!(rich_direction_search(&set("5; (0,0),(1,0),(2,0)")).is_err());
    }

    #[test]
    fn literal_and_json() {
        let s = set("5; (4,1),(0,0),(-1,2)");
        assert_eq!(s.to_literal(), "5; (0,0),(4,1),(4,2)");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"p":5,"side":"primal","points":[[0,0],[4,1],[4,2]]}"#);
        assert_eq!(serde_json::from_str::<PointSet>(&json).unwrap(), s);
        assert!(PointSet::parse("4; (0,0)", Side::Primal).is_err());
        assert!(PointSet::parse("5; (0,0", Side::Primal).is_err());
    }
}
