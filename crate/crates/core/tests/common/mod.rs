//! Seeded generators and witness sets shared by the integration tests.
#![allow(dead_code)]

use berkline::affinoid::{Affinoid, Ball, Side};
use berkline::berk::BerkPoint;
use berkline::field::{ProjPoint, Series};
use berkline::magnitude::{rat, Exponent, Magnitude, Rat};
use berkline::tree::Node;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational with denominator at most `max_den` in `[lo, hi]`.
pub fn rand_rat(r: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> Rat {
    let d = r.gen_range(1..=max_den);
    rat(r.gen_range(lo * d..=hi * d), d)
}

fn rand_coeff(r: &mut StdRng) -> Rat {
    let mut c = rat(r.gen_range(-3..=3), r.gen_range(1..=2));
    while c.is_zero() {
        c = rat(r.gen_range(-3..=3), 1);
    }
    c
}

/// Up to `max_terms` terms with exponents in `[-1, 3]`, denominators at most 6.
pub fn rand_series(r: &mut StdRng, max_terms: usize) -> Series {
    let n = r.gen_range(0..=max_terms);
    Series::from_terms((0..n).map(|_| (rand_coeff(r), rand_rat(r, -1, 3, 6))).collect())
}

/// Series drawn from a small pool of exponents, so that norms and joins
/// collide often.
pub fn rand_clustered_series(r: &mut StdRng) -> Series {
    let pool = [rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1)];
    let n = r.gen_range(0..=3);
    Series::from_terms(
        (0..n)
            .map(|_| {
                (
                    rat(r.gen_range(1..=2), 1),
                    pool[r.gen_range(0..pool.len())].clone(),
                )
            })
            .collect(),
    )
}

/// `β^e` with `e` a small rational, or with a `τ` part when `irrational`.
pub fn rand_mag(r: &mut StdRng, irrational: bool) -> Magnitude {
    let a = rand_rat(r, -2, 1, 4);
    if irrational {
        let b = rat(
            r.gen_range(1..=2) * if r.gen_bool(0.5) { 1 } else { -1 },
            r.gen_range(1..=3),
        );
        Magnitude::base_pow(Exponent::new(a, b))
    } else {
        Magnitude::base_pow_rat(a)
    }
}

pub fn rand_node(r: &mut StdRng) -> Node<Series> {
    let c = rand_clustered_series(r);
    let radius = match r.gen_range(0..4) {
        0 => Magnitude::Zero,
        _ => rand_mag(r, false),
    };
    Node::new(c, radius)
}

/// A type 1, 2 or 3 point; `types` lists the allowed types.
pub fn rand_point(r: &mut StdRng, types: &[u8]) -> BerkPoint {
    let c = rand_clustered_series(r);
    match types[r.gen_range(0..types.len())] {
        1 => BerkPoint::Type1(c),
        2 => BerkPoint::from_node(c, rand_mag(r, false)),
        _ => BerkPoint::from_node(c, rand_mag(r, true)),
    }
}

/// A point within the closed disk of radius `β^k` about 0.
pub fn rand_point_within(r: &mut StdRng, k: i64) -> BerkPoint {
    loop {
        let p = rand_point(r, &[1, 2, 3]);
        let bound = Magnitude::base_pow_int(k);
        let n = p.node().unwrap();
        if n.center.norm() <= bound && n.radius <= bound {
            return p;
        }
    }
}

pub fn rand_ball(r: &mut StdRng) -> Ball {
    let side = if r.gen_bool(0.5) {
        Side::Disk
    } else {
        Side::Complement
    };
    let irr = r.gen_bool(0.15);
    let radius = rand_mag(r, irr);
    Ball::new(side, rand_clustered_series(r), radius, r.gen_bool(0.5)).unwrap()
}

pub fn rand_open_ball(r: &mut StdRng) -> Ball {
    let side = if r.gen_bool(0.6) {
        Side::Disk
    } else {
        Side::Complement
    };
    let irr = r.gen_bool(0.1);
    let radius = rand_mag(r, irr);
    Ball::new(side, rand_clustered_series(r), radius, true).unwrap()
}

/// A nonempty open affinoid of at most `max_balls` balls.
pub fn rand_open_affinoid(r: &mut StdRng, max_balls: usize) -> Affinoid {
    loop {
        let n = r.gen_range(1..=max_balls);
        let balls: Vec<Ball> = (0..n).map(|_| rand_open_ball(r)).collect();
        if let Ok(a) = Affinoid::normalize(balls) {
            return a;
        }
    }
}

/// A nonempty closed affinoid of at most `max_balls` balls.
pub fn rand_closed_affinoid(r: &mut StdRng, max_balls: usize) -> Affinoid {
    loop {
        let n = r.gen_range(1..=max_balls);
        let balls: Vec<Ball> = (0..n)
            .map(|_| {
                let side = if r.gen_bool(0.6) {
                    Side::Disk
                } else {
                    Side::Complement
                };
                Ball::new(side, rand_clustered_series(r), rand_mag(r, false), false).unwrap()
            })
            .collect();
        if let Ok(a) = Affinoid::normalize(balls) {
            return a;
        }
    }
}

/// A finite open cover of at most four members: a random open affinoid
/// plus, for each complement component, an open ball slightly larger.
pub fn rand_cover(r: &mut StdRng) -> Vec<Affinoid> {
    loop {
        let first = rand_open_affinoid(r, 3);
        let comps = first.complement_components();
        if comps.is_empty() {
            continue;
        }
        let mut cover = vec![first];
        for c in comps {
            let grow = Magnitude::base_pow_rat(rand_rat(r, 0, 1, 4).max(rat(1, 4)));
            let ball = match c.side() {
                Side::Disk => Ball::open_disk(c.center().clone(), c.radius().mul(&grow).unwrap()),
                Side::Complement => Ball::open_complement(c.center().clone(), c.radius().div(&grow).unwrap()),
            }
            .unwrap();
            cover.push(Affinoid::normalize(vec![ball]).unwrap());
        }
        if cover.len() <= 4 {
            assert!(berkline::affinoid::is_cover(&cover));
            return cover;
        }
    }
}

/// Distance exponents `f` (points at `|z - c| = β^-f`) probing every gap
/// between the given radii.
fn probe_exponents(radii: &[Magnitude]) -> Vec<Rat> {
    let mut fs: Vec<Rat> = Vec::new();
    for m in radii {
        if let Some(e) = m.exponent() {
            let (lo, hi) = e.rational_bounds(6);
            fs.push(-lo);
            fs.push(-hi);
        }
    }
    fs.sort();
    fs.dedup();
    let mut out = fs.clone();
    for w in fs.windows(2) {
        out.push((&w[0] + &w[1]) / rat(2, 1));
    }
    if let (Some(lo), Some(hi)) = (fs.first(), fs.last()) {
        out.push(lo - rat(1, 1));
        out.push(hi + rat(1, 1));
    } else {
        out.push(rat(0, 1));
    }
    out.sort();
    out.dedup();
    out
}

/// Points of `P¹` that meet every region cut out by the given balls:
/// the centers, `c + k t^f` for every probe exponent `f` and enough
/// residues `k`, and `∞`.
pub fn witness_set(balls: &[Ball]) -> Vec<ProjPoint> {
    let mut centers: Vec<Series> = balls.iter().map(|b| b.center().clone()).collect();
    centers.push(Series::zero());
    centers.sort();
    centers.dedup();
    let radii: Vec<Magnitude> = balls.iter().map(|b| b.radius().clone()).collect();
    let fs = probe_exponents(&radii);
    let ks = centers.len() as i64 + 2;
    let mut out = vec![ProjPoint::Infinity];
    for c in &centers {
        out.push(ProjPoint::Finite(c.clone()));
        for f in &fs {
            for k in 1..=ks {
                out.push(ProjPoint::Finite(c + &Series::monomial(rat(k, 1), f.clone())));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn witness_set_for(affinoids: &[Affinoid]) -> Vec<ProjPoint> {
    let balls: Vec<Ball> = affinoids.iter().flat_map(|a| a.balls().to_vec()).collect();
    witness_set(&balls)
}

/// Berkovich sample points: the witnesses plus nodes about them at every
/// probe radius and at each given radius exactly.
pub fn berk_samples(balls: &[Ball]) -> Vec<BerkPoint> {
    let ws = witness_set(balls);
    let mut radii: Vec<Magnitude> = balls.iter().map(|b| b.radius().clone()).collect();
    for f in probe_exponents(&radii.clone()) {
        radii.push(Magnitude::base_pow_rat(-f));
    }
    let mut out = Vec::new();
    for w in &ws {
        out.push(BerkPoint::from_proj(w));
        if let ProjPoint::Finite(x) = w {
            for r in &radii {
                out.push(BerkPoint::from_node(x.clone(), r.clone()));
            }
        }
    }
    out
}
