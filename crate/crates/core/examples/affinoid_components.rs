//! Balls, affinoids, complement components and connected components of unions.

use berkline::affinoid::{components_of_union, Affinoid};
use berkline::parse::{parse_affinoid, parse_ball, parse_cover};

fn main() -> berkline::Result<()> {
    let a = parse_ball("B(0, < b^0)")?;
    let b = parse_ball("B(t, <= b^-2)")?;
    println!("{} vs {}: {:?}", a, b, a.relation(&b));
    println!("complement of {} is {}", b, b.complement());

    let annulus = parse_affinoid("B(0, < b^1) & B(0, > b^-1)")?;
    println!("annulus: {}", annulus);
    for c in annulus.complement_components() {
        println!("  hole: {}", c);
    }

    match parse_affinoid("B(1+t, < b^-2) & B(0, < 1)") {
        Ok(x) => println!("{}", x),
        Err(e) => println!("B(1+t, < b^-2) & B(0, < 1): {}", e),
    }

    let family = parse_cover("B(0,<b^-1) | B(1,<b^-1) | B(0,<1)")?;
    for (k, comp) in components_of_union(&family).iter().enumerate() {
        println!(
            "component {}: members {:?}, union {}",
            k + 1,
            comp.members,
            comp.union
        );
    }
    println!("whole line: {}", Affinoid::full());
    Ok(())
}
