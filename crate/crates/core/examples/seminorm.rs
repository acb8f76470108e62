//! Multiplicative seminorms of points evaluated on polynomials.

use berkline::berk::{BallChain, BerkPoint, Line};
use berkline::parse::{parse_point, parse_polynomial};

fn main() -> berkline::Result<()> {
    let line = Line::default();
    let p = parse_polynomial("T^2 + (-1 - t)*T")?;
    println!("P = {}", p);
    for s in [
        "pt(1 + t)",
        "pt(t^-1)",
        "[0, b^0]",
        "[1, b^-1]",
        "[1 + t, b^-2]",
        "[0, b^(tau)]",
    ] {
        let pt = parse_point(s)?;
        println!("|P| at {:<14} = {}", s, line.seminorm(&p, &pt)?);
    }
    let chain = BerkPoint::Type4(BallChain::standard());
    println!("|P| at chain(std) = {}", line.seminorm(&p, &chain)?);

    let q = parse_polynomial("T - 1")?;
    let g = BerkPoint::gauss();
    let pq = &p * &q;
    println!(
        "|PQ| = {} and |P||Q| = {} at the Gauss point",
        line.seminorm(&pq, &g)?,
        line.seminorm(&p, &g)?.mul(&line.seminorm(&q, &g)?)?
    );
    Ok(())
}
