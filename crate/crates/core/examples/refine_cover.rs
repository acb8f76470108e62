//! Refining a finite open cover so that stars of points fit in one member.

use berkline::affinoid::{is_cover, refine_check, refine_cover};
use berkline::field::{ProjPoint, Series};
use berkline::magnitude::rat;
use berkline::parse::{fmt_cover, parse_cover};

fn main() -> berkline::Result<()> {
    let cover = parse_cover("B(0, < b^1) & B(1, > b^-1) | B(0, > b^0) | B(1, < b^0)")?;
    println!("cover: {}", fmt_cover(&cover));
    println!("is a cover: {}", is_cover(&cover));

    let r = refine_cover(&cover)?;
    println!("eta = {}", r.eta);
    for (zone, member) in r.zones.iter().zip(&r.refined) {
        println!("zone {}\n  grown {}", zone, member);
    }

    let mut probes = vec![ProjPoint::Infinity];
    for c in [Series::zero(), Series::one()] {
        for e in [-2, -1, 0, 1, 2] {
            probes.push(ProjPoint::Finite(&c + &Series::monomial(rat(3, 1), rat(e, 2))));
        }
    }
    println!("refined is a cover: {}", is_cover(&r.refined));
    println!(
        "star check on {} probes: {}",
        probes.len(),
        refine_check(&cover, &r.refined, &probes)
    );
    Ok(())
}
