//! Balls and affinoids of the projective line, covers, and cover refinement.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{ProjPoint, Series};
use crate::magnitude::{Exponent, Magnitude, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `{z : |z - c| < r}` or `≤ r`.
    Disk,
    /// The complement in `P¹` of a disk; contains `∞`.
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Open,
    Closed,
    /// Radius outside the value group; open and closed coincide.
    Irrational,
}

impl Kind {
    fn opposite(self) -> Kind {
        match self {
            Kind::Open => Kind::Closed,
            Kind::Closed => Kind::Open,
            Kind::Irrational => Kind::Irrational,
        }
    }

    pub fn is_open(self) -> bool {
        self != Kind::Closed
    }

    pub fn is_closed(self) -> bool {
        self != Kind::Open
    }
}

/// Drops the terms of `c` that cannot change the disk `|z - c| < r` (or
/// `≤ r` when `closed`), giving a canonical center.
pub fn canonical_center(c: &Series, r: &Magnitude, closed: bool) -> Series {
    c.filter_exponents(|e| {
        let m = Magnitude::base_pow_rat(-e.clone());
        if closed {
            m > *r
        } else {
            m >= *r
        }
    })
}

/// A disk of `K`: the affine part of a disk-side ball, or the excluded part
/// of a complement-side one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disk {
    pub center: Series,
    pub radius: Magnitude,
    pub kind: Kind,
}

impl Disk {
    pub fn contains(&self, z: &Series) -> bool {
        let d = (z - &self.center).norm();
        match self.kind {
            Kind::Closed => d <= self.radius,
            _ => d < self.radius,
        }
    }

    pub fn is_subset(&self, other: &Disk) -> bool {
        if !other.contains(&self.center) {
            return false;
        }
        match self.radius.cmp(&other.radius) {
            Ordering::Less => true,
            Ordering::Equal => self.kind == Kind::Open || self.kind == other.kind,
            Ordering::Greater => false,
        }
    }

    pub fn meets(&self, other: &Disk) -> bool {
        other.contains(&self.center) || self.contains(&other.center)
    }
}

/// A ball of `P¹_K`. Centers are stored canonically, so structural
/// equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    side: Side,
    center: Series,
    radius: Magnitude,
    kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallRelation {
    Disjoint,
    Equal,
    SubsetStrict,
    SupersetStrict,
    /// Neither nested nor disjoint; the two balls then cover `P¹`. Only
    /// possible when at least one of them is complement-side.
    Overlap,
}

impl Ball {
    /// `open` is ignored when the radius lies outside the value group.
    pub fn new(side: Side, center: Series, radius: Magnitude, open: bool) -> Result<Ball> {
        if !matches!(radius, Magnitude::Pos(_)) {
            return Err(Error::InvalidRadius);
        }
        let kind = if !radius.in_value_group() {
            Kind::Irrational
        } else if open {
            Kind::Open
        } else {
            Kind::Closed
        };
        let disk_closed = match side {
            Side::Disk => kind == Kind::Closed,
            Side::Complement => kind == Kind::Open,
        };
        let center = canonical_center(&center, &radius, disk_closed);
        Ok(Ball {
            side,
            center,
            radius,
            kind,
        })
    }

    pub fn open_disk(c: Series, r: Magnitude) -> Result<Ball> {
        Ball::new(Side::Disk, c, r, true)
    }

    pub fn closed_disk(c: Series, r: Magnitude) -> Result<Ball> {
        Ball::new(Side::Disk, c, r, false)
    }

    /// `{|z - c| > r} ∪ {∞}`.
    pub fn open_complement(c: Series, r: Magnitude) -> Result<Ball> {
        Ball::new(Side::Complement, c, r, true)
    }

    /// `{|z - c| ≥ r} ∪ {∞}`.
    pub fn closed_complement(c: Series, r: Magnitude) -> Result<Ball> {
        Ball::new(Side::Complement, c, r, false)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn center(&self) -> &Series {
        &self.center
    }

    pub fn radius(&self) -> &Magnitude {
        &self.radius
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_open(&self) -> bool {
        self.kind.is_open()
    }

    pub fn is_closed(&self) -> bool {
        self.kind.is_closed()
    }

    /// The disk of `K` this ball is, or excludes.
    pub fn disk(&self) -> Disk {
        let kind = match self.side {
            Side::Disk => self.kind,
            Side::Complement => self.kind.opposite(),
        };
        Disk {
            center: self.center.clone(),
            radius: self.radius.clone(),
            kind,
        }
    }

    pub fn complement(&self) -> Ball {
        Ball {
            side: match self.side {
                Side::Disk => Side::Complement,
                Side::Complement => Side::Disk,
            },
            center: self.center.clone(),
            radius: self.radius.clone(),
            kind: self.kind.opposite(),
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        match (self.side, p) {
            (Side::Disk, ProjPoint::Infinity) => false,
            (Side::Complement, ProjPoint::Infinity) => true,
            (Side::Disk, ProjPoint::Finite(z)) => self.disk().contains(z),
            (Side::Complement, ProjPoint::Finite(z)) => !self.disk().contains(z),
        }
    }

    /// The same ball with its boundary sphere added.
    pub fn closure(&self) -> Ball {
        if self.kind == Kind::Open {
            Ball::new(self.side, self.center.clone(), self.radius.clone(), false).expect("positive radius")
        } else {
            self.clone()
        }
    }

    /// Some point of the ball.
    pub fn witness(&self) -> ProjPoint {
        match self.side {
            Side::Disk => ProjPoint::Finite(self.center.clone()),
            Side::Complement => ProjPoint::Infinity,
        }
    }

    pub fn is_subset(&self, other: &Ball) -> bool {
        let (a, b) = (self.disk(), other.disk());
        match (self.side, other.side) {
            (Side::Disk, Side::Disk) => a.is_subset(&b),
            (Side::Disk, Side::Complement) => !a.meets(&b),
            (Side::Complement, Side::Disk) => false,
            (Side::Complement, Side::Complement) => b.is_subset(&a),
        }
    }

    pub fn is_disjoint(&self, other: &Ball) -> bool {
        let (a, b) = (self.disk(), other.disk());
        match (self.side, other.side) {
            (Side::Disk, Side::Disk) => !a.meets(&b),
            (Side::Disk, Side::Complement) => a.is_subset(&b),
            (Side::Complement, Side::Disk) => b.is_subset(&a),
            (Side::Complement, Side::Complement) => false,
        }
    }

    pub fn relation(&self, other: &Ball) -> BallRelation {
        if self == other {
            return BallRelation::Equal;
        }
        if self.is_disjoint(other) {
            BallRelation::Disjoint
        } else if self.is_subset(other) {
            BallRelation::SubsetStrict
        } else if other.is_subset(self) {
            BallRelation::SupersetStrict
        } else {
            BallRelation::Overlap
        }
    }

    fn sort_key(&self) -> (Magnitude, Side, Option<Rat>, String, Kind) {
        (
            self.radius.clone(),
            self.side,
            self.center.valuation().cloned(),
            self.center.to_string(),
            self.kind,
        )
    }
}

impl Ord for Ball {
    fn cmp(&self, other: &Self) -> Ordering {
        let (r1, s1, v1, c1, k1) = self.sort_key();
        let (r2, s2, v2, c2, k2) = other.sort_key();
        let val_cmp = match (v1, v2) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        };
        r1.cmp(&r2)
            .then(s1.cmp(&s2))
            .then(val_cmp)
            .then(c1.cmp(&c2))
            .then(k1.cmp(&k2))
    }
}

impl PartialOrd for Ball {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match (self.side, self.kind) {
            (Side::Disk, Kind::Closed) => "<=",
            (Side::Disk, _) => "<",
            (Side::Complement, Kind::Closed) => ">=",
            (Side::Complement, _) => ">",
        };
        write!(f, "B({}, {} {})", self.center, op, self.radius)
    }
}

/// True when the intersection of `balls` is nonempty. Pairwise suffices:
/// the value group is dense and the residue field infinite, so a family of
/// pairwise meeting balls has a common point.
pub fn balls_meet(balls: &[Ball]) -> bool {
    for (i, a) in balls.iter().enumerate() {
        for b in &balls[i + 1..] {
            if a.is_disjoint(b) {
                return false;
            }
        }
    }
    true
}

/// A nonempty finite intersection of balls of one openness class, kept in
/// irredundant sorted form. The empty list is `P¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affinoid {
    balls: Vec<Ball>,
}

impl Affinoid {
    pub fn full() -> Affinoid {
        Affinoid { balls: Vec::new() }
    }

    pub fn normalize(balls: Vec<Ball>) -> Result<Affinoid> {
        let has_open = balls.iter().any(|b| b.kind == Kind::Open);
        let has_closed = balls.iter().any(|b| b.kind == Kind::Closed);
        if has_open && has_closed {
            return Err(Error::MixedOpenness);
        }
        Affinoid::from_any(balls)
    }

    /// Like [`Affinoid::normalize`] without the openness check; used for
    /// intermediate sets such as zones.
    fn from_any(mut balls: Vec<Ball>) -> Result<Affinoid> {
        if !balls_meet(&balls) {
            return Err(Error::EmptyIntersection);
        }
        balls.sort();
        balls.dedup();
        let mut kept: Vec<Ball> = Vec::with_capacity(balls.len());
        for (i, b) in balls.iter().enumerate() {
            let redundant = balls.iter().enumerate().any(|(j, o)| j != i && o.is_subset(b));
            if !redundant {
                kept.push(b.clone());
            }
        }
        Ok(Affinoid { balls: kept })
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn is_full(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn is_open(&self) -> bool {
        self.balls.iter().all(Ball::is_open)
    }

    pub fn is_closed(&self) -> bool {
        self.balls.iter().all(Ball::is_closed)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.balls.iter().all(|b| b.contains(p))
    }

    pub fn closure(&self) -> Affinoid {
        Affinoid::from_any(self.balls.iter().map(Ball::closure).collect()).expect("closure of a nonempty set")
    }

    /// Pairwise disjoint balls whose union is the complement.
    pub fn complement_components(&self) -> Vec<Ball> {
        let mut out: Vec<Ball> = self.balls.iter().map(Ball::complement).collect();
        out.sort();
        out
    }

    pub fn meets(&self, other: &Affinoid) -> bool {
        let all: Vec<Ball> = self.balls.iter().chain(&other.balls).cloned().collect();
        balls_meet(&all)
    }

    pub fn intersect(&self, other: &Affinoid) -> Result<Affinoid> {
        Affinoid::normalize(self.balls.iter().chain(&other.balls).cloned().collect())
    }

    pub fn is_subset(&self, other: &Affinoid) -> bool {
        other.balls.iter().all(|b| {
            let mut probe = self.balls.clone();
            probe.push(b.complement());
            !balls_meet(&probe)
        })
    }

    /// Union with an affinoid it meets.
    fn union_meeting(&self, other: &Affinoid) -> Affinoid {
        let mut comps: Vec<Ball> = Vec::new();
        for c in self.complement_components() {
            for d in other.complement_components() {
                if c.is_subset(&d) {
                    comps.push(c.clone());
                } else if d.is_subset(&c) {
                    comps.push(d.clone());
                }
            }
        }
        comps.sort();
        comps.dedup();
        let maximal: Vec<Ball> = comps
            .iter()
            .filter(|c| !comps.iter().any(|o| o != *c && c.is_subset(o)))
            .map(Ball::complement)
            .collect();
        Affinoid::from_any(maximal).expect("union contains both operands")
    }
}

impl fmt::Display for Affinoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.balls.is_empty() {
            return write!(f, "P1");
        }
        let parts: Vec<String> = self.balls.iter().map(Ball::to_string).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

pub fn ball_relation(a: &Ball, b: &Ball) -> BallRelation {
    a.relation(b)
}

/// A block of [`components_of_union`]: member indices and their union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub members: Vec<usize>,
    pub union: Affinoid,
}

/// Connected components of the overlap graph of `xs`, ordered by least
/// member index.
pub fn components_of_union(xs: &[Affinoid]) -> Vec<Component> {
    let n = xs.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut order = vec![start];
        let mut union = xs[start].clone();
        let mut i = 0;
        while i < order.len() {
            let cur = order[i];
            for j in 0..n {
                if !seen[j] && xs[cur].meets(&xs[j]) {
                    seen[j] = true;
                    union = union.union_meeting(&xs[j]);
                    order.push(j);
                }
            }
            i += 1;
        }
        order.sort_unstable();
        out.push(Component {
            members: order,
            union,
        });
    }
    out
}

/// Searches for a nonempty intersection `c_1 ∩ ... ∩ c_m` with each `c_i`
/// drawn from `choices[i]`.
fn find_choice(choices: &[Vec<Ball>], chosen: &mut Vec<Ball>) -> bool {
    let Some((first, rest)) = choices.split_first() else {
        return true;
    };
    for c in first {
        if chosen.iter().all(|x| !x.is_disjoint(c)) {
            chosen.push(c.clone());
            if find_choice(rest, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

pub fn is_cover(members: &[Affinoid]) -> bool {
    let choices: Vec<Vec<Ball>> = members.iter().map(Affinoid::complement_components).collect();
    !find_choice(&choices, &mut Vec::new())
}

pub fn entourage_related(cover: &[Affinoid], p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    if !is_cover(cover) {
        return Err(Error::NotACover);
    }
    Ok(cover.iter().any(|y| y.contains(p) && y.contains(q)))
}

/// Members of the cover containing `p`.
pub fn entourage_star(cover: &[Affinoid], p: &ProjPoint) -> Vec<Affinoid> {
    cover.iter().filter(|y| y.contains(p)).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub refined: Vec<Affinoid>,
    /// Annulus thickness, in `|K*| ∩ (0, 1)`.
    pub eta: Magnitude,
    /// The partition cells, one per refined member.
    pub zones: Vec<Affinoid>,
}

/// Refines a finite open cover so that, around every point, the union of
/// refined members containing it lies in a single original member.
pub fn refine_cover(cover: &[Affinoid]) -> Result<Refinement> {
    if !is_cover(cover) || cover.iter().any(|y| !y.is_open()) {
        return Err(Error::NotACover);
    }
    let mut boundary: Vec<Ball> = Vec::new();
    for y in cover {
        for c in y.complement_components() {
            boundary.push(c.complement());
            boundary.push(c);
        }
    }
    boundary.sort();
    boundary.dedup();

    let q = annulus_exponent(&boundary);
    let eta = Magnitude::base_pow_rat(-q.clone());

    // one representative per complementary pair, the closed-type one
    let pairs: Vec<Ball> = boundary.iter().filter(|b| b.is_closed()).cloned().collect();
    let mut zones: Vec<Affinoid> = Vec::new();
    enumerate_zones(&pairs, &mut Vec::new(), &mut zones);
    zones.sort_by_key(|z| z.to_string());
    zones.dedup();

    let mut refined: Vec<Affinoid> = Vec::new();
    for z in &zones {
        let grown: Vec<Ball> = z.balls().iter().map(|b| enlarge(b, &q)).collect();
        let y = Affinoid::normalize(grown).expect("enlarged zone is open and nonempty");
        if !refined.contains(&y) {
            refined.push(y);
        }
    }
    Ok(Refinement { refined, eta, zones })
}

fn enumerate_zones(pairs: &[Ball], chosen: &mut Vec<Ball>, out: &mut Vec<Affinoid>) {
    let Some((first, rest)) = pairs.split_first() else {
        out.push(Affinoid::from_any(chosen.clone()).expect("pruned to nonempty"));
        return;
    };
    for b in [first.clone(), first.complement()] {
        if chosen.iter().all(|x| !x.is_disjoint(&b)) {
            chosen.push(b);
            enumerate_zones(rest, chosen, out);
            chosen.pop();
        }
    }
}

/// Open enlargement of a closed ball by the factor `β^q`.
fn enlarge(b: &Ball, q: &Rat) -> Ball {
    if b.kind != Kind::Closed {
        return b.clone();
    }
    let e = b.radius.exponent().expect("positive radius");
    let shift = Exponent::rational(q.clone());
    match b.side {
        Side::Disk => Ball::open_disk(b.center.clone(), Magnitude::base_pow(e + &shift)),
        Side::Complement => Ball::open_complement(b.center.clone(), Magnitude::base_pow(e - &shift)),
    }
    .expect("positive radius")
}

/// A rational `q` with `0 < q ≤ g/2`, where `g` is the least positive gap
/// between radius and center-distance exponents of `balls`.
fn annulus_exponent(balls: &[Ball]) -> Rat {
    let mut exps: BTreeSet<Exponent> = BTreeSet::new();
    for (i, a) in balls.iter().enumerate() {
        exps.insert(a.radius.exponent().expect("positive radius").clone());
        for b in &balls[i + 1..] {
            if let Magnitude::Pos(e) = (a.center() - b.center()).norm() {
                exps.insert(e);
            }
        }
    }
    let sorted: Vec<&Exponent> = exps.iter().collect();
    let gap = sorted.windows(2).map(|w| w[1] - w[0]).min();
    let Some(g) = gap else {
        return Rat::new(1.into(), 2.into());
    };
    let half = g.scale(&Rat::new(1.into(), 2.into()));
    if half.is_rational() {
        return half.rational_part().clone();
    }
    let mut digits = 4;
    loop {
        let (lo, _) = half.rational_bounds(digits);
        if lo.is_positive() {
            return lo;
        }
        digits += 4;
    }
}

/// For each witness, the refined members containing it lie together in one
/// member of `cover`.
pub fn refine_check(cover: &[Affinoid], refined: &[Affinoid], witnesses: &[ProjPoint]) -> bool {
    witnesses.iter().all(|w| {
        let star = entourage_star(refined, w);
        !star.is_empty() && cover.iter().any(|y| star.iter().all(|m| m.is_subset(y)))
    })
}
