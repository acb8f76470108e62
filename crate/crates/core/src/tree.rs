//! The real tree of balls of an ultrametric space, driven by an exact
//! distance oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{chordal, ProjPoint, Series};
use crate::magnitude::{rat, Magnitude, Rat, RealValue};

/// A node `[x, r]`: the closed ball of radius `r` about `x`. Radius zero
/// gives the points of the space itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node<P> {
    pub center: P,
    pub radius: Magnitude,
}

impl<P> Node<P> {
    pub fn new(center: P, radius: Magnitude) -> Self {
        Node { center, radius }
    }

    pub fn point(center: P) -> Self {
        Node {
            center,
            radius: Magnitude::Zero,
        }
    }

    pub fn diam(&self) -> &Magnitude {
        &self.radius
    }
}

impl<P: fmt::Display> fmt::Display for Node<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.center, self.radius)
    }
}

/// An ultrametric space with exact distances. The tree operations come as
/// provided methods.
pub trait UltrametricSpace {
    type Point: Clone;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> Magnitude;

    fn node_eq(&self, s: &Node<Self::Point>, t: &Node<Self::Point>) -> bool {
        s.radius == t.radius && self.dist(&s.center, &t.center) <= s.radius
    }

    /// `s ≼ t`: the ball of `s` lies in the ball of `t`.
    fn leq(&self, s: &Node<Self::Point>, t: &Node<Self::Point>) -> bool {
        s.radius <= t.radius && self.dist(&s.center, &t.center) <= t.radius
    }

    fn sup(&self, s: &Node<Self::Point>, t: &Node<Self::Point>) -> Magnitude {
        let d = self.dist(&s.center, &t.center);
        d.max(s.radius.clone()).max(t.radius.clone())
    }

    /// Least upper bound, centered at the first argument.
    fn join(&self, s: &Node<Self::Point>, t: &Node<Self::Point>) -> Node<Self::Point> {
        Node::new(s.center.clone(), self.sup(s, t))
    }

    fn delta(&self, s: &Node<Self::Point>, t: &Node<Self::Point>) -> Result<RealValue> {
        let half = rat(-1, 2);
        RealValue::combine(&[
            (Rat::from_integer(1.into()), self.sup(s, t)),
            (half.clone(), s.radius.clone()),
            (half, t.radius.clone()),
        ])
    }

    /// Whether `x` lies on the geodesic from `s` to `t`.
    fn on_segment(&self, x: &Node<Self::Point>, s: &Node<Self::Point>, t: &Node<Self::Point>) -> bool {
        let j = self.join(s, t);
        (self.leq(s, x) || self.leq(t, x)) && self.leq(x, &j)
    }

    /// The point of `[s, s ∨ t]` with diameter `m`.
    fn point_at(
        &self,
        s: &Node<Self::Point>,
        t: &Node<Self::Point>,
        m: &Magnitude,
    ) -> Result<Node<Self::Point>> {
        if *m < s.radius || *m > self.sup(s, t) {
            return Err(Error::OutOfRange);
        }
        Ok(Node::new(s.center.clone(), m.clone()))
    }

    /// The branch point of three nodes: the least of the pairwise joins.
    fn median(
        &self,
        a: &Node<Self::Point>,
        b: &Node<Self::Point>,
        c: &Node<Self::Point>,
    ) -> Node<Self::Point> {
        let joins = [self.join(a, b), self.join(a, c), self.join(b, c)];
        joins
            .into_iter()
            .min_by(|x, y| x.radius.cmp(&y.radius))
            .expect("three joins")
    }

    /// Membership of `s` in the tree ball `{S : sup(x, S) < r}` (or `≤ r`).
    fn tree_ball_contains(
        &self,
        x: &Self::Point,
        r: &Magnitude,
        strict: bool,
        s: &Node<Self::Point>,
    ) -> bool {
        let v = self.sup(&Node::point(x.clone()), s);
        if strict {
            v < *r
        } else {
            v <= *r
        }
    }
}

/// `K` with `dist(x, y) = |x - y|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeriesMetric;

impl UltrametricSpace for SeriesMetric {
    type Point = Series;
    fn dist(&self, a: &Series, b: &Series) -> Magnitude {
        (a - b).norm()
    }
}

/// `P¹_K` with the chordal distance.
#[derive(Clone, Copy, Debug, Default)]
pub struct ChordalMetric;

impl UltrametricSpace for ChordalMetric {
    type Point = ProjPoint;
    fn dist(&self, a: &ProjPoint, b: &ProjPoint) -> Magnitude {
        chordal(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::series_int;
    use crate::magnitude::int;

    fn m(e: i64) -> Magnitude {
        Magnitude::base_pow_int(e)
    }

    fn n(c: Series, e: i64) -> Node<Series> {
        Node::new(c, m(e))
    }

    fn p(c: Series) -> Node<Series> {
        Node::point(c)
    }

    fn t() -> Series {
        Series::t()
    }

    const X: SeriesMetric = SeriesMetric;

    #[test]
    fn node_eq_examples() {
        assert!(X.node_eq(&n(Series::zero(), -1), &n(t(), -1)));
        assert!(!X.node_eq(&n(Series::zero(), -1), &n(Series::zero(), -2)));
        assert!(X.node_eq(&n(t(), -3), &n(t(), -3)));
    }

    #[test]
    fn leq_examples() {
        assert!(X.leq(&n(t(), -2), &n(Series::zero(), -1)));
        assert!(!X.leq(&n(Series::zero(), -1), &n(series_int(1), -1)));
        assert!(X.leq(&n(t(), -2), &n(t(), -2)));
    }

    #[test]
    fn join_examples() {
        let j = X.join(&n(Series::zero(), -2), &n(t(), -3));
        assert!(X.node_eq(&j, &n(Series::zero(), -1)));
        let s = n(t(), -2);
        assert!(X.node_eq(&X.join(&s, &s), &s));
        assert_eq!(X.sup(&s, &s), m(-2));
        let j = X.join(&n(Series::zero(), -1), &n(Series::zero(), -3));
        assert!(X.node_eq(&j, &n(Series::zero(), -1)));
    }

    #[test]
    fn delta_examples() {
        let d = X.delta(&p(Series::zero()), &p(t())).unwrap();
        assert_eq!(d.as_rational(), Some(rat(1, 2)));
        let d = X.delta(&n(Series::zero(), -1), &n(Series::zero(), -3)).unwrap();
        assert_eq!(d.as_rational(), Some(rat(3, 16)));
        assert!(X.delta(&n(t(), -1), &n(t(), -1)).unwrap().is_zero());
    }

    #[test]
    fn segment_examples() {
        let a = p(Series::zero());
        let b = p(series_int(1));
        let x = X.point_at(&a, &b, &m(-1)).unwrap();
        assert!(X.node_eq(&x, &n(Series::zero(), -1)));
        assert!(X.on_segment(&n(Series::zero(), -1), &a, &b));
        assert!(X.on_segment(&a, &a, &b));
        assert_eq!(X.point_at(&a, &b, &m(1)), Err(Error::OutOfRange));
    }

    #[test]
    fn median_examples() {
        let md = X.median(&p(Series::zero()), &p(t()), &p(series_int(1)));
        assert!(X.node_eq(&md, &n(Series::zero(), -1)));
        let s = n(t(), -2);
        assert!(X.node_eq(&X.median(&s, &s, &p(series_int(1))), &s));
        let t2 = &t() + &t().pow(2);
        let md = X.median(&p(Series::zero()), &p(t()), &p(t2));
        assert!(X.node_eq(&md, &n(t(), -2)));
    }

    #[test]
    fn tree_ball_examples() {
        let z = Series::zero();
        assert!(X.tree_ball_contains(&z, &m(-1), false, &n(Series::zero(), -2)));
        assert!(!X.tree_ball_contains(&z, &m(-1), false, &p(series_int(1))));
        assert!(!X.tree_ball_contains(&z, &m(-1), true, &n(Series::zero(), -1)));
    }

    #[test]
    fn chordal_instance() {
        let c = ChordalMetric;
        let a = Node::point(ProjPoint::Finite(series_int(0)));
        let b = Node::point(ProjPoint::Infinity);
        assert_eq!(c.sup(&a, &b), Magnitude::one());
        assert_eq!(c.delta(&a, &b).unwrap().as_rational(), Some(int(1)));
    }
}
