//! Points of all four types, directions, neighbourhood bases and type 4 queries.

use berkline::affinoid::Ball;
use berkline::berk::{Answer, BallChain, BerkPoint, Line, Query};
use berkline::field::Series;
use berkline::magnitude::Magnitude;
use berkline::parse::parse_point;

fn main() -> berkline::Result<()> {
    let line = Line::default();
    for s in ["pt(1 + t)", "[0, b^0]", "[t, b^(-tau)]", "chain(std)", "inf"] {
        let p = parse_point(s)?;
        println!(
            "{:<16} type {:?}, diameter {}",
            p.to_string(),
            p.point_type(),
            p.diam()
        );
    }

    let gauss = BerkPoint::gauss();
    for s in ["pt(0)", "pt(1 + t)", "pt(2)", "[t^-1, b^-1]", "inf"] {
        let t = parse_point(s)?;
        println!(
            "direction of {} at the Gauss point: {}",
            t,
            line.direction(&gauss, &t)?
        );
    }

    println!("base of the Gauss point:");
    for e in line.filter_base(&gauss, 3)? {
        println!("  {}", e);
    }

    let ch = BallChain::standard();
    for n in 1..=4 {
        let (c, r) = ch.ball(n).unwrap();
        println!("chain ball {}: [{}, {}]", n, c, r);
    }
    if let (Answer::Point(j), depth) = line.type4_resolve(&ch, &Query::Join(gauss.clone()))? {
        println!("join with the Gauss point: {} after {} balls", j, depth);
    }
    let unit = Ball::open_disk(Series::zero(), Magnitude::one())?;
    if let (Answer::Member(inside), depth) = line.type4_resolve(&ch, &Query::Membership(unit))? {
        println!("in B(0, < b^0): {} after {} balls", inside, depth);
    }

    let shallow = Line::new(3, 256);
    let (c5, r5) = ch.ball(5).unwrap();
    let deep = Ball::open_disk(c5, r5)?;
    println!(
        "with depth cap 3: {}",
        shallow.type4_resolve(&ch, &Query::Membership(deep)).unwrap_err()
    );
    Ok(())
}
