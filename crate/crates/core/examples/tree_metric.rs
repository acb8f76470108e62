//! The tree of closed balls of K: order, joins, the path metric and medians.

use berkline::field::Series;
use berkline::magnitude::Magnitude;
use berkline::parse::parse_series;
use berkline::tree::{Node, SeriesMetric, UltrametricSpace};

fn node(c: &str, e: i64) -> Node<Series> {
    Node::new(parse_series(c).unwrap(), Magnitude::base_pow_int(e))
}

fn main() {
    let x = SeriesMetric;
    let zero = Node::point(Series::zero());
    let t = Node::point(Series::t());
    let one = Node::point(Series::one());

    let j = x.join(&zero, &t);
    println!("0 v t = {}", j);
    println!("0 v 1 = {}", x.join(&zero, &one));
    println!(
        "[t, b^-2] <= [0, b^-1]: {}",
        x.leq(&node("t", -2), &node("0", -1))
    );

    println!("delta(0, t) = {}", x.delta(&zero, &t).unwrap());
    println!(
        "delta([0, b^-1], [0, b^-3]) = {}",
        x.delta(&node("0", -1), &node("0", -3)).unwrap()
    );

    let m = x.median(&zero, &t, &one);
    println!("median(0, t, 1) = {}", m);

    for k in 0..=4 {
        let m = Magnitude::base_pow_int(-k);
        let at = x.point_at(&zero, &one, &m).unwrap();
        println!("on [0, 1] at diameter {}: {}", m, at);
    }
}
