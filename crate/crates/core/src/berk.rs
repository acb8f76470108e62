//! Points of the Berkovich projective line and the operations on them.
//!
//! Types 1 to 3 and `∞` are stored as tree nodes with canonical centers.
//! Type 4 points are nested ball chains with empty intersection in `K`;
//! queries on them walk the chain until the answer provably stops changing,
//! up to a depth cap.

use std::fmt;

use num_traits::{One, Zero};

use crate::affinoid::{canonical_center, Affinoid, Ball, Disk, Kind, Side};
use crate::error::{Error, Result};
use crate::field::{Polynomial, ProjPoint, Series};
use crate::magnitude::{fmt_rat, int, rat, Exponent, Magnitude, Rat, RealValue, DEFAULT_PRECISION_CAP};
use crate::tree::{Node, SeriesMetric, UltrametricSpace};

pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainSchema {
    /// Centers `base + Σ_{k≤n} t^(shift + 1 - 1/(k+1))`, radii
    /// `β^-(shift + 1 - 1/(n+1))`, limit `β^-(shift + 1)`.
    Standard { base: Series, shift: Rat },
}

/// A strictly decreasing sequence of closed disks, given by an explicit
/// prefix or by a rule producing every term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BallChain {
    prefix: Vec<(Series, Magnitude)>,
    limit: Magnitude,
    schema: Option<ChainSchema>,
}

fn standard_exponent(shift: &Rat, n: usize) -> Rat {
    shift + int(1) - rat(1, n as i64 + 1)
}

impl BallChain {
    pub fn standard() -> BallChain {
        BallChain::standard_at(Series::zero(), Rat::zero())
    }

    pub fn standard_at(base: Series, shift: Rat) -> BallChain {
        BallChain {
            prefix: Vec::new(),
            limit: Magnitude::base_pow_rat(-(&shift + int(1))),
            schema: Some(ChainSchema::Standard { base, shift }),
        }
    }

    /// A chain known only through finitely many balls.
    pub fn explicit(balls: Vec<(Series, Magnitude)>, limit: Magnitude) -> Result<BallChain> {
        if balls.is_empty() {
            return Err(Error::InvalidChain("no balls".into()));
        }
        let chain = BallChain {
            prefix: balls,
            limit,
            schema: None,
        };
        chain.validate(chain.prefix.len())?;
        Ok(chain)
    }

    pub fn limit(&self) -> &Magnitude {
        &self.limit
    }

    pub fn schema(&self) -> Option<&ChainSchema> {
        self.schema.as_ref()
    }

    pub fn prefix(&self) -> &[(Series, Magnitude)] {
        &self.prefix
    }

    /// Ball `n`, counting from 1.
    pub fn ball(&self, n: usize) -> Option<(Series, Magnitude)> {
        self.walk(n)
            .last()
            .filter(|(k, _, _)| *k == n)
            .map(|(_, c, r)| (c, r))
    }

    /// `(n, center, radius)` for `n = 1..=cap`, as far as the chain is known.
    pub fn walk(&self, cap: usize) -> Box<dyn Iterator<Item = (usize, Series, Magnitude)> + '_> {
        match &self.schema {
            None => Box::new(
                self.prefix
                    .iter()
                    .take(cap)
                    .enumerate()
                    .map(|(i, (c, r))| (i + 1, c.clone(), r.clone())),
            ),
            Some(ChainSchema::Standard { base, shift }) => {
                let mut center = base.clone();
                Box::new((1..=cap).map(move |n| {
                    let e = standard_exponent(shift, n);
                    center = &center + &Series::monomial(Rat::one(), e.clone());
                    (n, center.clone(), Magnitude::base_pow_rat(-e))
                }))
            }
        }
    }

    /// Checks strict nesting and the limit on the first `depth` balls.
    pub fn validate(&self, depth: usize) -> Result<()> {
        if !matches!(self.limit, Magnitude::Pos(_)) {
            return Err(Error::InvalidChain("limit must be positive and finite".into()));
        }
        let balls: Vec<_> = self.walk(depth).collect();
        if balls.len() < depth {
            return Err(Error::InvalidChain(format!("only {} balls known", balls.len())));
        }
        for (n, c, r) in &balls {
            if !matches!(r, Magnitude::Pos(_)) || *r < self.limit {
                return Err(Error::InvalidChain(format!("radius {} below the limit", n)));
            }
            if *n > 1 {
                let (_, pc, pr) = &balls[n - 2];
                let inner = Disk {
                    center: c.clone(),
                    radius: r.clone(),
                    kind: Kind::Closed,
                };
                let outer = Disk {
                    center: pc.clone(),
                    radius: pr.clone(),
                    kind: Kind::Closed,
                };
                if r >= pr || !inner.is_subset(&outer) {
                    return Err(Error::InvalidChain(format!(
                        "ball {} is not inside ball {}",
                        n,
                        n - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BallChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.schema {
            Some(ChainSchema::Standard { base, shift }) => {
                if base.is_zero() && shift.is_zero() {
                    write!(f, "chain(std)")
                } else {
                    write!(f, "chain(std, {}, {})", base, fmt_rat(shift))
                }
            }
            None => {
                write!(f, "chain(explicit, {}", self.limit)?;
                for (c, r) in &self.prefix {
                    write!(f, ", [{}, {}]", c, r)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A point of the Berkovich projective line.
///
/// There is no structural equality; use [`Line::same_point`].
#[derive(Clone, Debug)]
pub enum BerkPoint {
    Type1(Series),
    Type2 { center: Series, radius: Magnitude },
    Type3 { center: Series, radius: Magnitude },
    Type4(BallChain),
    Infinity,
}

impl BerkPoint {
    /// The point `[center, radius]`, classified by its radius.
    pub fn from_node(center: Series, radius: Magnitude) -> BerkPoint {
        match radius {
            Magnitude::Zero => BerkPoint::Type1(center),
            Magnitude::Infinity => BerkPoint::Infinity,
            Magnitude::Pos(_) if radius.in_value_group() => BerkPoint::Type2 {
                center: canonical_center(&center, &radius, true),
                radius,
            },
            Magnitude::Pos(_) => BerkPoint::Type3 {
                center: canonical_center(&center, &radius, false),
                radius,
            },
        }
    }

    pub fn gauss() -> BerkPoint {
        BerkPoint::from_node(Series::zero(), Magnitude::one())
    }

    pub fn from_proj(p: &ProjPoint) -> BerkPoint {
        match p {
            ProjPoint::Finite(x) => BerkPoint::Type1(x.clone()),
            ProjPoint::Infinity => BerkPoint::Infinity,
        }
    }

    pub fn diam(&self) -> Magnitude {
        match self {
            BerkPoint::Type1(_) => Magnitude::Zero,
            BerkPoint::Type2 { radius, .. } | BerkPoint::Type3 { radius, .. } => radius.clone(),
            BerkPoint::Type4(ch) => ch.limit.clone(),
            BerkPoint::Infinity => Magnitude::Infinity,
        }
    }

    /// `1`..`4`, or `None` for `∞`.
    pub fn point_type(&self) -> Option<u8> {
        match self {
            BerkPoint::Type1(_) => Some(1),
            BerkPoint::Type2 { .. } => Some(2),
            BerkPoint::Type3 { .. } => Some(3),
            BerkPoint::Type4(_) => Some(4),
            BerkPoint::Infinity => None,
        }
    }

    /// The `(center, radius)` data of a type 1, 2 or 3 point.
    pub fn node(&self) -> Option<Node<Series>> {
        match self {
            BerkPoint::Type1(x) => Some(Node::point(x.clone())),
            BerkPoint::Type2 { center, radius } | BerkPoint::Type3 { center, radius } => {
                Some(Node::new(center.clone(), radius.clone()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::Type1(x) => write!(f, "pt({})", x),
            BerkPoint::Type2 { center, radius } | BerkPoint::Type3 { center, radius } => {
                write!(f, "[{}, {}]", center, radius)
            }
            BerkPoint::Type4(ch) => write!(f, "{}", ch),
            BerkPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A branch at a type 2 or type 3 point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    InfinityDir,
    Residue(Rat),
    InteriorDir,
    ExteriorDir,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::InfinityDir => write!(f, "inf"),
            Direction::Residue(q) => write!(f, "residue({})", fmt_rat(q)),
            Direction::InteriorDir => write!(f, "interior"),
            Direction::ExteriorDir => write!(f, "exterior"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Query {
    /// Membership in the Berkovich open of the ball.
    Membership(Ball),
    Join(BerkPoint),
    Seminorm(Polynomial),
}

#[derive(Clone, Debug)]
pub enum Answer {
    Member(bool),
    Point(BerkPoint),
    Value(Magnitude),
}

enum View<'a> {
    Node(Node<Series>),
    Chain(&'a BallChain),
    Inf,
}

fn view(p: &BerkPoint) -> View<'_> {
    match p {
        BerkPoint::Type4(ch) => View::Chain(ch),
        BerkPoint::Infinity => View::Inf,
        other => View::Node(other.node().expect("node type")),
    }
}

/// Evaluation context carrying the caps for semi-decidable queries.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub depth_cap: usize,
    pub precision_cap: usize,
}

impl Default for Line {
    fn default() -> Self {
        Line {
            depth_cap: DEFAULT_DEPTH_CAP,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

fn gauss_value(p: &Polynomial, center: &Series, radius: &Magnitude) -> Magnitude {
    if radius.is_zero() {
        return p.eval(center).norm();
    }
    p.recenter(center)
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, q)| {
            q.norm()
                .mul(&radius.pow(i as i64).expect("finite"))
                .expect("finite")
        })
        .max()
        .unwrap_or(Magnitude::Zero)
}

/// Consecutive convergents of `√2` used as strictly nested brackets:
/// `(1, 3/2), (7/5, 17/12), (41/29, 99/70), ...`.
pub fn sqrt2_brackets(count: usize) -> Vec<(Rat, Rat)> {
    let (mut p, mut q) = (int(1), int(1));
    let mut conv = Vec::with_capacity(2 * count);
    for _ in 0..2 * count {
        conv.push(&p / &q);
        let np = &p + &q * int(2);
        let nq = &p + &q;
        p = np;
        q = nq;
    }
    conv.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

impl Line {
    pub fn new(depth_cap: usize, precision_cap: usize) -> Self {
        Line {
            depth_cap,
            precision_cap,
        }
    }

    /// `sup` of a chain point and the node `[c, r]`, with the depth at
    /// which it settled.
    fn chain_node_sup(&self, ch: &BallChain, c: &Series, r: &Magnitude) -> Result<(Magnitude, usize)> {
        for (n, a, rn) in ch.walk(self.depth_cap) {
            let d = (&a - c).norm();
            if d > rn {
                return Ok((d.max(r.clone()), n));
            }
            if *r >= rn {
                return Ok((r.clone(), n));
            }
        }
        Err(Error::Type4Undetermined(self.depth_cap))
    }

    /// `None` when the chains are known to define the same point, else the
    /// center and diameter of their join.
    fn chain_chain_join(&self, x: &BallChain, y: &BallChain) -> Result<Option<(Series, Magnitude)>> {
        if x == y {
            return Ok(None);
        }
        for ((_, a, rn), (_, b, sn)) in x.walk(self.depth_cap).zip(y.walk(self.depth_cap)) {
            let d = (&a - &b).norm();
            if d > rn.clone().max(sn) {
                return Ok(Some((a, d)));
            }
        }
        Err(Error::Type4Undetermined(self.depth_cap))
    }

    pub fn sup(&self, s: &BerkPoint, t: &BerkPoint) -> Result<Magnitude> {
        Ok(match (view(s), view(t)) {
            (View::Inf, _) | (_, View::Inf) => Magnitude::Infinity,
            (View::Node(a), View::Node(b)) => SeriesMetric.sup(&a, &b),
            (View::Chain(ch), View::Node(b)) | (View::Node(b), View::Chain(ch)) => {
                self.chain_node_sup(ch, &b.center, &b.radius)?.0
            }
            (View::Chain(x), View::Chain(y)) => match self.chain_chain_join(x, y)? {
                None => x.limit.clone(),
                Some((_, d)) => d,
            },
        })
    }

    pub fn join(&self, s: &BerkPoint, t: &BerkPoint) -> Result<BerkPoint> {
        Ok(match (view(s), view(t)) {
            (View::Inf, _) | (_, View::Inf) => BerkPoint::Infinity,
            (View::Node(a), View::Node(b)) => {
                let j = SeriesMetric.join(&a, &b);
                BerkPoint::from_node(j.center, j.radius)
            }
            (View::Chain(ch), View::Node(b)) | (View::Node(b), View::Chain(ch)) => {
                let (m, _) = self.chain_node_sup(ch, &b.center, &b.radius)?;
                BerkPoint::from_node(b.center, m)
            }
            (View::Chain(x), View::Chain(y)) => match self.chain_chain_join(x, y)? {
                None => s.clone(),
                Some((c, d)) => BerkPoint::from_node(c, d),
            },
        })
    }

    pub fn leq(&self, s: &BerkPoint, t: &BerkPoint) -> Result<bool> {
        Ok(match (view(s), view(t)) {
            (_, View::Inf) => true,
            (View::Inf, _) => false,
            (View::Node(a), View::Node(b)) => SeriesMetric.leq(&a, &b),
            (View::Chain(ch), View::Node(b)) => self.chain_node_sup(ch, &b.center, &b.radius)?.0 == b.radius,
            (View::Node(_), View::Chain(_)) => false,
            (View::Chain(x), View::Chain(y)) => self.chain_chain_join(x, y)?.is_none(),
        })
    }

    pub fn same_point(&self, s: &BerkPoint, t: &BerkPoint) -> Result<bool> {
        Ok(match (view(s), view(t)) {
            (View::Inf, View::Inf) => true,
            (View::Node(a), View::Node(b)) => SeriesMetric.node_eq(&a, &b),
            (View::Chain(x), View::Chain(y)) => self.chain_chain_join(x, y)?.is_none(),
            _ => false,
        })
    }

    /// `|S| = sup{S, 0}`.
    pub fn abs(&self, s: &BerkPoint) -> Result<Magnitude> {
        self.sup(s, &BerkPoint::Type1(Series::zero()))
    }

    /// Path-length metric on the affine part.
    pub fn delta(&self, s: &BerkPoint, t: &BerkPoint) -> Result<RealValue> {
        if matches!(s, BerkPoint::Infinity) || matches!(t, BerkPoint::Infinity) {
            return Err(Error::InfiniteOperand);
        }
        let half = rat(-1, 2);
        RealValue::combine(&[
            (int(1), self.sup(s, t)?),
            (half.clone(), s.diam()),
            (half, t.diam()),
        ])
    }

    /// Chordal metric: `δ` reweighted by the density `max(1, |S|)^-2`.
    pub fn chordal(&self, s: &BerkPoint, t: &BerkPoint) -> Result<RealValue> {
        let scale = |p: &BerkPoint| -> Result<Magnitude> { Ok(self.abs(p)?.max(Magnitude::one())) };
        match (s, t) {
            (BerkPoint::Infinity, BerkPoint::Infinity) => Ok(RealValue::zero()),
            (p, BerkPoint::Infinity) | (BerkPoint::Infinity, p) => {
                RealValue::from_magnitude(&scale(p)?.recip()?)
            }
            _ => {
                let (m, mp) = (scale(s)?, scale(t)?);
                let sup = self.sup(s, t)?.div(&m.mul(&mp)?)?;
                let d = s.diam().div(&m.pow(2)?)?;
                let dp = t.diam().div(&mp.pow(2)?)?;
                RealValue::combine(&[(int(1), sup), (rat(-1, 2), d), (rat(-1, 2), dp)])
            }
        }
    }

    /// Membership in the Berkovich open and closed sets of a disk of `K`.
    fn disk_membership(&self, s: &BerkPoint, disk: &Disk) -> Result<(bool, bool)> {
        let sup = self.sup(s, &BerkPoint::Type1(disk.center.clone()))?;
        let d = s.diam();
        let r0 = &disk.radius;
        let open = sup < *r0 || (disk.kind == Kind::Closed && sup == *r0 && d < *r0);
        let closed = sup < *r0 || (sup == *r0 && (disk.kind != Kind::Open || d == *r0));
        Ok((open, closed))
    }

    fn ball_membership(&self, s: &BerkPoint, b: &Ball) -> Result<(bool, bool)> {
        let (open, closed) = self.disk_membership(s, &b.disk())?;
        Ok(match b.side() {
            Side::Disk => (open, closed),
            Side::Complement => (!closed, !open),
        })
    }

    pub fn in_open(&self, s: &BerkPoint, b: &Ball) -> Result<bool> {
        Ok(self.ball_membership(s, b)?.0)
    }

    pub fn in_closed(&self, s: &BerkPoint, b: &Ball) -> Result<bool> {
        Ok(self.ball_membership(s, b)?.1)
    }

    pub fn in_open_affinoid(&self, s: &BerkPoint, a: &Affinoid) -> Result<bool> {
        for b in a.balls() {
            if !self.in_open(s, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn in_closed_affinoid(&self, s: &BerkPoint, a: &Affinoid) -> Result<bool> {
        for b in a.balls() {
            if !self.in_closed(s, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn direction(&self, s: &BerkPoint, t: &BerkPoint) -> Result<Direction> {
        let (c, r, irrational) = match s {
            BerkPoint::Type2 { center, radius } => (center, radius, false),
            BerkPoint::Type3 { center, radius } => (center, radius, true),
            _ => return Err(Error::UnsupportedPointType),
        };
        if self.same_point(s, t)? {
            return Err(Error::SamePoint);
        }
        let outward = if irrational {
            Direction::ExteriorDir
        } else {
            Direction::InfinityDir
        };
        let inward = |x: &Series| -> Direction {
            if irrational {
                Direction::InteriorDir
            } else {
                let v = -r.exponent().expect("positive").rational_part().clone();
                Direction::Residue((x - c).coeff_at(&v))
            }
        };
        match view(t) {
            View::Inf => Ok(outward),
            View::Node(n) => {
                if SeriesMetric.sup(&n, &Node::new(c.clone(), r.clone())) > *r {
                    Ok(outward)
                } else {
                    Ok(inward(&n.center))
                }
            }
            View::Chain(ch) => {
                for (_, a, rn) in ch.walk(self.depth_cap) {
                    if (&a - c).norm() > *r {
                        return Ok(outward);
                    }
                    if rn < *r {
                        return Ok(inward(&a));
                    }
                }
                Err(Error::Type4Undetermined(self.depth_cap))
            }
        }
    }

    /// The member of the partition at `s` labelled by `dir`.
    pub fn direction_ball(&self, s: &BerkPoint, dir: &Direction) -> Result<Ball> {
        match (s, dir) {
            (BerkPoint::Type2 { center, radius }, Direction::Residue(q)) => {
                let v = -radius.exponent().expect("positive").rational_part().clone();
                let c = center + &Series::monomial(q.clone(), v);
                Ball::open_disk(c, radius.clone())
            }
            (BerkPoint::Type2 { center, radius }, Direction::InfinityDir)
            | (BerkPoint::Type3 { center, radius }, Direction::ExteriorDir) => {
                Ball::open_complement(center.clone(), radius.clone())
            }
            (BerkPoint::Type3 { center, radius }, Direction::InteriorDir) => {
                Ball::open_disk(center.clone(), radius.clone())
            }
            _ => Err(Error::UnsupportedPointType),
        }
    }

    pub fn same_component(&self, s: &BerkPoint, t: &BerkPoint, u: &BerkPoint) -> Result<bool> {
        Ok(self.direction(s, t)? == self.direction(s, u)?)
    }

    /// The branch point of three points: the least of the pairwise joins.
    pub fn median(&self, a: &BerkPoint, b: &BerkPoint, c: &BerkPoint) -> Result<BerkPoint> {
        let joins = [self.join(a, b)?, self.join(a, c)?, self.join(b, c)?];
        for (i, j) in joins.iter().enumerate() {
            let mut least = true;
            for (k, o) in joins.iter().enumerate() {
                if i != k && !self.leq(j, o)? {
                    least = false;
                    break;
                }
            }
            if least {
                return Ok(j.clone());
            }
        }
        unreachable!("pairwise joins of three points are totally ordered below their maximum")
    }

    /// `lim |P|` along the point's filter.
    pub fn seminorm(&self, p: &Polynomial, s: &BerkPoint) -> Result<Magnitude> {
        match s {
            BerkPoint::Infinity => Err(Error::InfiniteOperand),
            BerkPoint::Type4(ch) => Ok(self.chain_seminorm(p, ch)?.0),
            other => {
                let n = other.node().expect("node type");
                Ok(gauss_value(p, &n.center, &n.radius))
            }
        }
    }

    fn chain_seminorm(&self, p: &Polynomial, ch: &BallChain) -> Result<(Magnitude, usize)> {
        if p.is_zero() {
            return Ok((Magnitude::Zero, 0));
        }
        for (n, a, rn) in ch.walk(self.depth_cap) {
            let q = p.recenter(&a);
            let constant = q.coeffs()[0].norm();
            let rest = q.coeffs()[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.norm()
                        .mul(&rn.pow(i as i64 + 1).expect("finite"))
                        .expect("finite")
                })
                .max()
                .unwrap_or(Magnitude::Zero);
            if constant > rest {
                return Ok((constant, n));
            }
        }
        Err(Error::Type4Undetermined(self.depth_cap))
    }

    /// Answers a query about a type 4 point, with the chain depth that
    /// settled it.
    pub fn type4_resolve(&self, ch: &BallChain, query: &Query) -> Result<(Answer, usize)> {
        match query {
            Query::Membership(b) => {
                let target = b.disk();
                for (n, a, rn) in ch.walk(self.depth_cap) {
                    let cb = Disk {
                        center: a,
                        radius: rn,
                        kind: Kind::Closed,
                    };
                    let (inside, outside) = (cb.is_subset(&target), !cb.meets(&target));
                    let decided = match b.side() {
                        Side::Disk if inside => Some(true),
                        Side::Disk if outside => Some(false),
                        Side::Complement if outside => Some(true),
                        Side::Complement if inside => Some(false),
                        _ => None,
                    };
                    if let Some(v) = decided {
                        return Ok((Answer::Member(v), n));
                    }
                }
                Err(Error::Type4Undetermined(self.depth_cap))
            }
            Query::Join(t) => match view(t) {
                View::Inf => Ok((Answer::Point(BerkPoint::Infinity), 0)),
                View::Node(b) => {
                    let (m, n) = self.chain_node_sup(ch, &b.center, &b.radius)?;
                    Ok((Answer::Point(BerkPoint::from_node(b.center, m)), n))
                }
                View::Chain(_) => {
                    let j = self.join(&BerkPoint::Type4(ch.clone()), t)?;
                    Ok((Answer::Point(j), self.depth_cap))
                }
            },
            Query::Seminorm(p) => {
                let (v, n) = self.chain_seminorm(p, ch)?;
                Ok((Answer::Value(v), n))
            }
        }
    }

    /// The first `budget` members of the canonical neighbourhood base.
    pub fn filter_base(&self, s: &BerkPoint, budget: usize) -> Result<Vec<Affinoid>> {
        let annulus = |c: &Series, lo: Exponent, hi: Exponent| -> Result<Affinoid> {
            Affinoid::normalize(vec![
                Ball::open_complement(c.clone(), Magnitude::base_pow(lo))?,
                Ball::open_disk(c.clone(), Magnitude::base_pow(hi))?,
            ])
        };
        match s {
            BerkPoint::Type2 { center, radius } => {
                let e = radius.exponent().expect("positive");
                (1..=budget)
                    .map(|n| {
                        let q = Exponent::rational(rat(1, n as i64));
                        annulus(center, e - &q, e + &q)
                    })
                    .collect()
            }
            BerkPoint::Type3 { center, radius } => {
                let e = radius.exponent().expect("positive");
                let (a, b) = (e.rational_part(), e.tau_part());
                sqrt2_brackets(budget)
                    .into_iter()
                    .map(|(lo, hi)| {
                        let x = Exponent::rational(a + b * &lo);
                        let y = Exponent::rational(a + b * &hi);
                        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                        annulus(center, lo, hi)
                    })
                    .collect()
            }
            BerkPoint::Type4(ch) => {
                let balls: Vec<_> = ch.walk(budget + 1).collect();
                if balls.len() < budget + 1 {
                    return Err(Error::Type4Undetermined(balls.len()));
                }
                balls
                    .windows(2)
                    .map(|w| {
                        let b = Ball::open_disk(w[1].1.clone(), w[0].2.clone())?;
                        Affinoid::normalize(vec![b])
                    })
                    .collect()
            }
            _ => Err(Error::UnsupportedPointType),
        }
    }
}

/// Whether a nested list of affinoids looks like the start of a minimal
/// Cauchy filter base: all open, each containing the closure of the next.
pub fn is_minimal_base_prefix(elems: &[Affinoid]) -> Result<bool> {
    for w in elems.windows(2) {
        if !w[1].is_subset(&w[0]) {
            return Err(Error::NotNested);
        }
    }
    if !elems.iter().all(Affinoid::is_open) {
        return Ok(false);
    }
    Ok(elems.windows(2).all(|w| w[1].closure().is_subset(&w[0])))
}

/// The point determined by a ball: the closed or irrational disk of the same
/// diameter containing it or its complement.
pub fn boundary_ball(b: &Ball) -> BerkPoint {
    BerkPoint::from_node(b.center().clone(), b.radius().clone())
}

/// Boundary points of an affinoid, one per complement component.
pub fn boundary_affinoid(a: &Affinoid) -> Vec<BerkPoint> {
    let mut out: Vec<BerkPoint> = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    for c in a.complement_components() {
        let p = boundary_ball(&c);
        let key = p.to_string();
        if !seen.contains(&key) {
            seen.push(key);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{series_int, t_pow};

    fn m(e: i64) -> Magnitude {
        Magnitude::base_pow_int(e)
    }

    fn tau_mag(a: Rat, b: Rat) -> Magnitude {
        Magnitude::base_pow(Exponent::new(a, b))
    }

    fn node(c: Series, r: Magnitude) -> BerkPoint {
        BerkPoint::from_node(c, r)
    }

    fn p1(c: Series) -> BerkPoint {
        BerkPoint::Type1(c)
    }

    fn t() -> Series {
        Series::t()
    }

    fn l() -> Line {
        Line::default()
    }

    #[test]
    fn abs_examples() {
        assert_eq!(l().abs(&node(Series::zero(), m(-1))).unwrap(), m(-1));
        assert_eq!(l().abs(&node(t_pow(int(-1)), m(-1))).unwrap(), m(1));
        assert_eq!(l().abs(&BerkPoint::Infinity).unwrap(), Magnitude::Infinity);
    }

    #[test]
    fn join_examples() {
        let j = l().join(&p1(Series::zero()), &p1(t())).unwrap();
        assert_eq!(j.to_string(), "[0, b^-1]");
        let j = l().join(&BerkPoint::gauss(), &BerkPoint::Infinity).unwrap();
        assert!(matches!(j, BerkPoint::Infinity));
        assert!(l()
            .leq(&node(Series::zero(), m(-1)), &BerkPoint::Infinity)
            .unwrap());
    }

    #[test]
    fn chordal_examples() {
        let g = BerkPoint::gauss();
        assert_eq!(
            l().chordal(&g, &BerkPoint::Infinity).unwrap().as_rational(),
            Some(int(1))
        );
        let far = node(t_pow(int(-1)), Magnitude::one());
        assert_eq!(l().chordal(&g, &far).unwrap().as_rational(), Some(rat(3, 8)));
        assert!(l().delta(&far, &far).unwrap().is_zero());
        assert_eq!(l().delta(&g, &BerkPoint::Infinity), Err(Error::InfiniteOperand));
    }

    #[test]
    fn membership_examples() {
        let g = BerkPoint::gauss();
        let open = Ball::open_disk(Series::zero(), m(0)).unwrap();
        let closed = Ball::closed_disk(Series::zero(), m(0)).unwrap();
        assert!(!l().in_open(&g, &open).unwrap());
        assert!(l().in_closed(&g, &closed).unwrap());
        assert!(l().in_open(&p1(t()), &open).unwrap());
        let irr = node(Series::zero(), tau_mag(int(0), int(-1)));
        assert!(matches!(irr, BerkPoint::Type3 { .. }));
        let small = Ball::open_disk(Series::zero(), m(-1)).unwrap();
        assert!(l().in_open(&irr, &small).unwrap());
    }

    #[test]
    fn boundary_examples() {
        let g = BerkPoint::gauss().to_string();
        assert_eq!(
            boundary_ball(&Ball::open_disk(Series::zero(), m(0)).unwrap()).to_string(),
            g
        );
        assert_eq!(
            boundary_ball(&Ball::open_complement(Series::zero(), m(0)).unwrap()).to_string(),
            g
        );
        let irr = Ball::open_disk(Series::zero(), tau_mag(int(0), int(-1))).unwrap();
        assert!(matches!(boundary_ball(&irr), BerkPoint::Type3 { .. }));

        let annulus = Affinoid::normalize(vec![
            Ball::open_complement(Series::zero(), m(-2)).unwrap(),
            Ball::open_disk(Series::zero(), m(0)).unwrap(),
        ])
        .unwrap();
        let pts: Vec<String> = boundary_affinoid(&annulus)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(pts, vec!["[0, b^-2]", "[0, b^0]"]);
        assert!(boundary_affinoid(&Affinoid::full()).is_empty());
        let cl = Affinoid::normalize(vec![Ball::closed_disk(Series::zero(), m(-1)).unwrap()]).unwrap();
        let pts: Vec<String> = boundary_affinoid(&cl).iter().map(|p| p.to_string()).collect();
        assert_eq!(pts, vec!["[0, b^-1]"]);
    }

    #[test]
    fn direction_examples() {
        let g = BerkPoint::gauss();
        assert_eq!(l().direction(&g, &p1(t())).unwrap(), Direction::Residue(int(0)));
        let one_t = &series_int(1) + &t();
        assert_eq!(
            l().direction(&g, &p1(one_t.clone())).unwrap(),
            Direction::Residue(int(1))
        );
        assert_eq!(
            l().direction(&g, &BerkPoint::Infinity).unwrap(),
            Direction::InfinityDir
        );
        assert_eq!(l().direction(&g, &BerkPoint::gauss()), Err(Error::SamePoint));
        assert!(l().same_component(&g, &p1(t()), &p1(t().pow(2))).unwrap());
        assert!(!l().same_component(&g, &p1(t()), &p1(one_t)).unwrap());
        assert!(l().same_component(&g, &p1(t()), &p1(t())).unwrap());
    }

    #[test]
    fn filter_base_examples() {
        let fb = l().filter_base(&BerkPoint::gauss(), 2).unwrap();
        let s: Vec<String> = fb.iter().map(|a| a.to_string()).collect();
        assert_eq!(
            s,
            vec!["B(0, > b^-1) & B(0, < b^1)", "B(0, > b^(-1/2)) & B(0, < b^(1/2))"]
        );
        let irr = node(Series::zero(), tau_mag(int(0), int(-1)));
        let fb = l().filter_base(&irr, 1).unwrap();
        assert_eq!(fb[0].to_string(), "B(0, > b^(-3/2)) & B(0, < b^-1)");
        let fb = l()
            .filter_base(&BerkPoint::Type4(BallChain::standard()), 2)
            .unwrap();
        assert_eq!(fb.len(), 2);
        assert!(is_minimal_base_prefix(&l().filter_base(&BerkPoint::gauss(), 3).unwrap()).unwrap());
        let a = Affinoid::normalize(vec![Ball::open_disk(Series::zero(), m(-1)).unwrap()]).unwrap();
        let b = Affinoid::normalize(vec![Ball::open_disk(series_int(1), m(-1)).unwrap()]).unwrap();
        assert_eq!(is_minimal_base_prefix(&[a.clone(), b]), Err(Error::NotNested));
        assert!(is_minimal_base_prefix(&[a]).unwrap());
        assert_eq!(
            l().filter_base(&p1(t()), 1).unwrap_err(),
            Error::UnsupportedPointType
        );
    }

    #[test]
    fn seminorm_examples() {
        let x = Polynomial::var();
        assert_eq!(
            l().seminorm(&(&x * &x), &BerkPoint::gauss()).unwrap(),
            Magnitude::one()
        );
        let p = &x * &(&x - &Polynomial::constant(series_int(1)));
        assert_eq!(l().seminorm(&p, &node(Series::zero(), m(-1))).unwrap(), m(-1));
        let c = Polynomial::constant(&series_int(3) + &t());
        assert_eq!(l().seminorm(&c, &p1(t())).unwrap(), Magnitude::one());
        assert_eq!(
            l().seminorm(&c, &BerkPoint::Type4(BallChain::standard()))
                .unwrap(),
            Magnitude::one()
        );
    }

    #[test]
    fn type4_examples() {
        let ch = BallChain::standard();
        ch.validate(6).unwrap();
        let (a, n) = l()
            .type4_resolve(
                &ch,
                &Query::Membership(Ball::open_disk(Series::zero(), m(0)).unwrap()),
            )
            .unwrap();
        assert!(matches!(a, Answer::Member(true)));
        assert_eq!(n, 1);
        let (a, n) = l().type4_resolve(&ch, &Query::Join(BerkPoint::gauss())).unwrap();
        match a {
            Answer::Point(p) => assert_eq!(p.to_string(), "[0, b^0]"),
            _ => panic!("expected a point"),
        }
        assert_eq!(n, 1);
        let tight = Line::new(3, DEFAULT_PRECISION_CAP);
        let deep = Query::Join(node(Series::zero(), m(-1)));
        let (c5, r5) = ch.ball(5).unwrap();
        let near_limit = Query::Membership(Ball::open_disk(c5, r5).unwrap());
        let (a, n) = l().type4_resolve(&ch, &near_limit).unwrap();
        assert!(matches!(a, Answer::Member(true)));
        assert_eq!(n, 6);
        assert_eq!(
            tight.type4_resolve(&ch, &near_limit).unwrap_err(),
            Error::Type4Undetermined(3)
        );
        assert!(tight.type4_resolve(&ch, &deep).is_ok());
    }

    #[test]
    fn type4_equality() {
        let a = BerkPoint::Type4(BallChain::standard());
        let b = BerkPoint::Type4(BallChain::standard_at(series_int(1), Rat::zero()));
        assert!(l().same_point(&a, &a.clone()).unwrap());
        assert!(!l().same_point(&a, &b).unwrap());
        assert!(!l().same_point(&a, &BerkPoint::gauss()).unwrap());
    }
}
