//! The field model: finite generalized power series in `t` with rational
//! coefficients and rational exponents, `|t| = β^-1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::magnitude::{fmt_rat, int, Magnitude, Rat};

/// `Σ c_e t^e`, terms sorted by strictly increasing exponent, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Series {
    terms: Vec<(Rat, Rat)>,
}

impl Series {
    pub fn zero() -> Self {
        Series::default()
    }

    pub fn one() -> Self {
        Series::constant(Rat::one())
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        Series::monomial(Rat::one(), Rat::one())
    }

    pub fn constant(q: Rat) -> Self {
        Series::monomial(q, Rat::zero())
    }

    /// `coeff · t^exp`.
    pub fn monomial(coeff: Rat, exp: Rat) -> Self {
        Series::from_terms(vec![(exp, coeff)])
    }

    /// Builds a series from `(exponent, coefficient)` pairs in any order.
    pub fn from_terms(mut raw: Vec<(Rat, Rat)>) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Rat, Rat)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Series { terms }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent, `None` for zero.
    pub fn valuation(&self) -> Option<&Rat> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn norm(&self) -> Magnitude {
        match self.valuation() {
            None => Magnitude::Zero,
            Some(v) => Magnitude::base_pow_rat(-v.clone()),
        }
    }

    /// Coefficient of `t^e` (zero when absent).
    pub fn coeff_at(&self, e: &Rat) -> Rat {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    pub fn scale(&self, q: &Rat) -> Series {
        if q.is_zero() {
            return Series::zero();
        }
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &Rat) -> Series {
        Series {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Series {
        (0..k).fold(Series::one(), |acc, _| &acc * self)
    }

    /// Keeps the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(&Rat) -> bool) -> Series {
        Series {
            terms: self.terms.iter().filter(|(e, _)| keep(e)).cloned().collect(),
        }
    }

    /// Image in the residue field `ℚ`; needs `|z| ≤ 1`.
    pub fn reduce(&self) -> Result<Rat> {
        if self.norm() > Magnitude::one() {
            return Err(Error::OutOfUnitBall);
        }
        Ok(self.coeff_at(&Rat::zero()))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned().collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                raw.push((e1 + e2, c1 * c2));
            }
        }
        Series::from_terms(raw)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}
owned_ops!(Series);
owned_ops!(Polynomial);

fn fmt_t_power(e: &Rat) -> String {
    if e.is_one() {
        "t".into()
    } else if e.is_integer() && e.is_positive() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({})", fmt_rat(e))
    }
}

/// `|c|·t^e` without its sign.
fn fmt_monomial(e: &Rat, c: &Rat) -> String {
    let a = c.abs();
    if e.is_zero() {
        fmt_rat(&a)
    } else if a.is_one() {
        fmt_t_power(e)
    } else {
        format!("{}*{}", fmt_rat(&a), fmt_t_power(e))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", fmt_monomial(e, c))?;
        }
        Ok(())
    }
}

/// A point `[x:1]` or `∞ = [1:0]` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(Series),
    Infinity,
}

impl ProjPoint {
    /// `max(1, |P|)`, infinite at `∞`.
    pub fn density_scale(&self) -> Magnitude {
        match self {
            ProjPoint::Finite(x) => x.norm().max(Magnitude::one()),
            ProjPoint::Infinity => Magnitude::Infinity,
        }
    }

    pub fn proj_reduce(&self) -> ResiduePoint {
        match self {
            ProjPoint::Finite(x) => match x.reduce() {
                Ok(q) => ResiduePoint::Finite(q),
                Err(_) => ResiduePoint::Infinity,
            },
            ProjPoint::Infinity => ResiduePoint::Infinity,
        }
    }
}

impl From<Series> for ProjPoint {
    fn from(x: Series) -> Self {
        ProjPoint::Finite(x)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{}", x),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of the residue projective line `P¹(ℚ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResiduePoint {
    Finite(Rat),
    Infinity,
}

/// Chordal distance on `P¹_K`; always at most 1.
pub fn chordal(p: &ProjPoint, q: &ProjPoint) -> Magnitude {
    match (p, q) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => Magnitude::Zero,
        (ProjPoint::Finite(z), ProjPoint::Infinity) | (ProjPoint::Infinity, ProjPoint::Finite(z)) => {
            ProjPoint::Finite(z.clone())
                .density_scale()
                .recip()
                .expect("scale is at least 1")
        }
        (ProjPoint::Finite(z), ProjPoint::Finite(w)) => {
            let num = (z - w).norm();
            let den = p.density_scale().mul(&q.density_scale()).expect("finite");
            num.div(&den).expect("scale is at least 1")
        }
    }
}

/// `Σ c_i T^i` with series coefficients; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Series>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Series>) -> Self {
        while coeffs.last().is_some_and(Series::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Series) -> Self {
        Polynomial::new(vec![c])
    }

    /// The variable `T`.
    pub fn var() -> Self {
        Polynomial::new(vec![Series::zero(), Series::one()])
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &Series) -> Series {
        self.coeffs
            .iter()
            .rev()
            .fold(Series::zero(), |acc, c| &(&acc * z) + c)
    }

    /// `Q(T) = P(T + a)`.
    pub fn recenter(&self, a: &Series) -> Polynomial {
        let shift = Polynomial::new(vec![a.clone(), Series::one()]);
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| {
            &(&acc * &shift) + &Polynomial::constant(c.clone())
        })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::constant(Series::one()), |acc, _| &acc * self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Series::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Series::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    /// Highest degree first: `T^2 - (1 + t)*T + 2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match d {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{}", d),
            };
            let (neg, body) = if let [(e, q)] = c.terms() {
                let body = if d > 0 && e.is_zero() && q.abs().is_one() {
                    var.clone()
                } else if d == 0 {
                    fmt_monomial(e, q)
                } else {
                    format!("{}*{}", fmt_monomial(e, q), var)
                };
                (q.is_negative(), body)
            } else if d == 0 {
                (false, format!("({})", c))
            } else {
                (false, format!("({})*{}", c, var))
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{}", body)?;
            first = false;
        }
        Ok(())
    }
}

/// `t^e`.
pub fn t_pow(n: Rat) -> Series {
    Series::monomial(Rat::one(), n)
}

/// The constant series `n`.
pub fn series_int(n: i64) -> Series {
    Series::constant(int(n))
}
