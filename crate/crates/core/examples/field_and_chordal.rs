//! Series arithmetic, norms, residues and the chordal distance.

use berkline::field::{chordal, ProjPoint};
use berkline::magnitude::{int, Magnitude, RealValue};
use berkline::parse::{parse_real, parse_series};

fn main() -> berkline::Result<()> {
    let x = parse_series("1 + 2*t^(1/2) - t^3")?;
    let y = parse_series("t^(-1) + t")?;
    println!("x = {}", x);
    println!("y = {}", y);
    println!("x * y = {}", &x * &y);
    println!(
        "|x| = {}, |y| = {}, |x*y| = {}",
        x.norm(),
        y.norm(),
        (&x * &y).norm()
    );

    // residues live on the unit ball
    println!("reduce(x) = {}", x.reduce()?);
    println!("reduce(y) fails: {}", y.reduce().unwrap_err());

    let (p, q) = (ProjPoint::Finite(x), ProjPoint::Finite(y));
    println!("chordal(x, y) = {}", chordal(&p, &q));
    println!("chordal(y, inf) = {}", chordal(&q, &ProjPoint::Infinity));

    let v = parse_real("b^(tau) - 1/4*b^(2/3)")?;
    println!("{} has sign {:?}, about {}", v, v.sign(256)?, v.approx(12));
    let zero = RealValue::combine(&[(int(1), Magnitude::one()), (int(-1), Magnitude::one())])?;
    println!("1 - 1 = {}", zero);
    Ok(())
}
