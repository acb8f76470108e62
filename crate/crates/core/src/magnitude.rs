//! Exact arithmetic on the value group.
//!
//! Norms live in `β^E` where `E = ℚ + ℚτ` and `τ = √2`. Exponents with a
//! nonzero `τ` part give radii outside the value group `|K*| = β^ℚ`.
//! [`RealValue`] holds finite rational combinations of such powers, which is
//! what the tree metrics produce.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    BigRational::new(numer.into(), denom.into())
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

pub(crate) fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Default number of refinement steps allowed when certifying a sign.
pub const DEFAULT_PRECISION_CAP: usize = 256;

static BASE: AtomicU32 = AtomicU32::new(2);

/// The integer base `β`; magnitudes are powers of it.
pub fn base() -> u32 {
    BASE.load(AtomicOrdering::Relaxed)
}

/// Sets the process-wide base. Intended to be called once at start-up,
/// before any [`RealValue`] is built.
pub fn set_base(b: u32) -> Result<()> {
    if b < 2 || is_perfect_power(b) {
        return Err(Error::InvalidBase(b));
    }
    BASE.store(b, AtomicOrdering::Relaxed);
    Ok(())
}

fn is_perfect_power(n: u32) -> bool {
    (2..32).any(|k| {
        let r = n.nth_root(k);
        r > 1 && r.checked_pow(k) == Some(n)
    })
}

/// Sign of `x + y√2`, decided exactly by squaring.
fn sign_plus_sqrt2(x: &Rat, y: &Rat) -> Ordering {
    let zero = Rat::zero();
    let sx = x.cmp(&zero);
    let sy = y.cmp(&zero);
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // opposite signs: compare x² with 2y²
    let lhs = x * x;
    let rhs = y * y * int(2);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => unreachable!("√2 is irrational"),
    }
}

/// An exponent `a + b·τ` with `a, b ∈ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    rational: Rat,
    tau: Rat,
}

impl Exponent {
    pub fn new(rational: Rat, tau: Rat) -> Self {
        Exponent { rational, tau }
    }

    pub fn rational(r: Rat) -> Self {
        Exponent::new(r, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Exponent::rational(int(n))
    }

    pub fn zero() -> Self {
        Exponent::rational(Rat::zero())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn tau_part(&self) -> &Rat {
        &self.tau
    }

    pub fn is_rational(&self) -> bool {
        self.tau.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.tau.is_zero()
    }

    pub fn scale(&self, k: &Rat) -> Exponent {
        Exponent::new(&self.rational * k, &self.tau * k)
    }

    /// A rational interval `(lo, hi)` strictly containing the value, or the
    /// exact value twice when the exponent is rational. `digits` controls
    /// the width through a decimal bracket of `√2`.
    pub fn rational_bounds(&self, digits: u32) -> (Rat, Rat) {
        if self.is_rational() {
            return (self.rational.clone(), self.rational.clone());
        }
        let (lo, hi) = sqrt2_bracket(digits);
        let a = &self.rational + &self.tau * &lo;
        let b = &self.rational + &self.tau * &hi;
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Decimal bracket `lo < √2 < hi` with `hi - lo = 10^-digits`.
pub(crate) fn sqrt2_bracket(digits: u32) -> (Rat, Rat) {
    let scale = BigInt::from(10u32).pow(digits);
    let s = (BigInt::from(2u32) * &scale * &scale).sqrt();
    let lo = BigRational::new(s.clone(), scale.clone());
    let hi = BigRational::new(s + 1, scale);
    (lo, hi)
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        sign_plus_sqrt2(&(&self.rational - &other.rational), &(&self.tau - &other.tau))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent::new(&self.rational + &rhs.rational, &self.tau + &rhs.tau)
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        Exponent::new(&self.rational - &rhs.rational, &self.tau - &rhs.tau)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent::new(-&self.rational, -&self.tau)
    }
}

impl fmt::Display for Exponent {
    /// The text following `b^`: `-1`, `(1/2)`, `(-tau)`, `(1/2+3*tau)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.rational.is_integer() {
                return write!(f, "{}", self.rational.numer());
            }
            return write!(f, "({})", fmt_rat(&self.rational));
        }
        let tau_term = |t: &Rat| -> String {
            if t.is_one() {
                "tau".to_string()
            } else if *t == -Rat::one() {
                "-tau".to_string()
            } else {
                format!("{}*tau", fmt_rat(t))
            }
        };
        if self.rational.is_zero() {
            return write!(f, "({})", tau_term(&self.tau));
        }
        let t = tau_term(&self.tau.abs());
        let sep = if self.tau.is_negative() { "-" } else { "+" };
        write!(f, "({}{}{})", fmt_rat(&self.rational), sep, t)
    }
}

/// A nonnegative extended real of the form `0`, `β^e` or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Zero,
    Pos(Exponent),
    Infinity,
}

impl Magnitude {
    pub fn one() -> Self {
        Magnitude::Pos(Exponent::zero())
    }

    pub fn base_pow(e: Exponent) -> Self {
        Magnitude::Pos(e)
    }

    /// `β^r` for rational `r`.
    pub fn base_pow_rat(r: Rat) -> Self {
        Magnitude::Pos(Exponent::rational(r))
    }

    pub fn base_pow_int(n: i64) -> Self {
        Magnitude::Pos(Exponent::from_int(n))
    }

    pub fn exponent(&self) -> Option<&Exponent> {
        match self {
            Magnitude::Pos(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Zero)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Magnitude::Infinity)
    }

    /// Membership in `|K*| = β^ℚ`.
    pub fn in_value_group(&self) -> bool {
        matches!(self, Magnitude::Pos(e) if e.is_rational())
    }

    pub fn mul(&self, other: &Magnitude) -> Result<Magnitude> {
        use Magnitude::*;
        match (self, other) {
            (Zero, Infinity) | (Infinity, Zero) => Err(Error::UndefinedProduct),
            (Zero, _) | (_, Zero) => Ok(Zero),
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            (Pos(a), Pos(b)) => Ok(Pos(a + b)),
        }
    }

    pub fn recip(&self) -> Result<Magnitude> {
        match self {
            Magnitude::Zero => Err(Error::DivisionByZero),
            Magnitude::Infinity => Ok(Magnitude::Zero),
            Magnitude::Pos(e) => Ok(Magnitude::Pos(-e)),
        }
    }

    pub fn div(&self, other: &Magnitude) -> Result<Magnitude> {
        match (self, other) {
            (_, Magnitude::Zero) => Err(Error::DivisionByZero),
            (Magnitude::Infinity, Magnitude::Infinity) => Err(Error::UndefinedProduct),
            _ => self.mul(&other.recip()?),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Magnitude> {
        match self {
            Magnitude::Pos(e) => Ok(Magnitude::Pos(e.scale(&int(k)))),
            _ if k == 0 => Ok(Magnitude::one()),
            Magnitude::Zero if k < 0 => Err(Error::DivisionByZero),
            Magnitude::Infinity if k < 0 => Ok(Magnitude::Zero),
            other => Ok(other.clone()),
        }
    }
}

impl Ord for Magnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        use Magnitude::*;
        match (self, other) {
            (Zero, Zero) | (Infinity, Infinity) => Ordering::Equal,
            (Zero, _) | (_, Infinity) => Ordering::Less,
            (_, Zero) | (Infinity, _) => Ordering::Greater,
            (Pos(a), Pos(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Zero => write!(f, "0"),
            Magnitude::Infinity => write!(f, "inf"),
            Magnitude::Pos(e) => write!(f, "b^{}", e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// A finite sum `Σ q_e β^e`, kept in folded normal form: every exponent has
/// rational part in `[0, 1)`, the integer part having been absorbed into the
/// coefficient. Since `β` is not a perfect power, `x^N - β` is irreducible,
/// so within one `τ` component the folded form is zero iff it is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RealValue {
    terms: BTreeMap<Exponent, Rat>,
}

impl RealValue {
    pub fn zero() -> Self {
        RealValue::default()
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut v = RealValue::zero();
        v.insert(Exponent::zero(), q);
        v
    }

    pub fn from_magnitude(m: &Magnitude) -> Result<Self> {
        RealValue::combine(&[(Rat::one(), m.clone())])
    }

    /// Normalized formal sum of `coeff · magnitude` terms.
    pub fn combine(coeffs: &[(Rat, Magnitude)]) -> Result<Self> {
        let mut v = RealValue::zero();
        for (q, m) in coeffs {
            match m {
                Magnitude::Infinity => return Err(Error::InfiniteOperand),
                Magnitude::Zero => {}
                Magnitude::Pos(e) => v.insert(e.clone(), q.clone()),
            }
        }
        Ok(v)
    }

    fn insert(&mut self, e: Exponent, q: Rat) {
        if q.is_zero() {
            return;
        }
        let whole = e.rational.floor();
        let frac = &e.rational - &whole;
        let shift = whole.to_integer();
        let b = BigInt::from(base());
        let factor = match shift.sign() {
            num_bigint::Sign::Minus => {
                let p = u32::try_from(-shift).expect("exponent too large");
                BigRational::new(BigInt::one(), b.pow(p))
            }
            _ => {
                let p = u32::try_from(shift).expect("exponent too large");
                BigRational::from_integer(b.pow(p))
            }
        };
        let key = Exponent::new(frac, e.tau);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += q * factor;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Folded terms, by increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as an exact rational when no irrational power survives.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, q) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| q.clone())
            }
            _ => None,
        }
    }

    pub fn scale_rat(&self, k: &Rat) -> RealValue {
        let mut v = RealValue::zero();
        for (e, q) in &self.terms {
            v.insert(e.clone(), q * k);
        }
        v
    }

    /// Multiplies every term by a positive finite magnitude.
    pub fn scale_mag(&self, m: &Magnitude) -> Result<RealValue> {
        match m {
            Magnitude::Zero => Ok(RealValue::zero()),
            Magnitude::Infinity => Err(Error::InfiniteOperand),
            Magnitude::Pos(f) => {
                let mut v = RealValue::zero();
                for (e, q) in &self.terms {
                    v.insert(e + f, q.clone());
                }
                Ok(v)
            }
        }
    }

    /// Certified sign, refining interval enclosures up to `cap` steps.
    pub fn sign(&self, cap: usize) -> Result<Sign> {
        if let Some(q) = self.as_rational() {
            return Ok(match q.cmp(&Rat::zero()) {
                Ordering::Less => Sign::Negative,
                Ordering::Equal => Sign::Zero,
                Ordering::Greater => Sign::Positive,
            });
        }
        if self.terms.len() == 1 {
            let q = self.terms.values().next().unwrap();
            return Ok(if q.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        let mut step = 0usize;
        while step < cap.max(1) {
            let (lo, hi) = self.enclosure(64 + 32 * step as u32);
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            step = 2 * step + 1;
        }
        Err(Error::PrecisionExhausted)
    }

    pub fn cmp_certified(&self, other: &RealValue, cap: usize) -> Result<Ordering> {
        Ok((self - other).sign(cap)?.to_ordering())
    }

    /// Rational interval `[lo, hi]` containing the value, from `bits`-bit
    /// fixed-point bounds on `√2` and on the dyadic roots of `β`.
    pub fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        if self.terms.is_empty() {
            return (lo, hi);
        }
        let roots = dyadic_roots(base(), bits);
        let one = BigInt::one() << bits;
        let s = (BigInt::from(2u32) << (2 * bits)).sqrt();
        let tau_lo = BigRational::new(s.clone(), one.clone());
        let tau_hi = BigRational::new(s + 1, one.clone());
        let k = roots.len() as u32;
        let two_k = BigInt::one() << k;
        for (e, q) in &self.terms {
            let (ylo, yhi) = if e.tau.is_zero() {
                (e.rational.clone(), e.rational.clone())
            } else if e.tau.is_positive() {
                (&e.rational + &e.tau * &tau_lo, &e.rational + &e.tau * &tau_hi)
            } else {
                (&e.rational + &e.tau * &tau_hi, &e.rational + &e.tau * &tau_lo)
            };
            let n_lo = (ylo * BigRational::from_integer(two_k.clone()))
                .floor()
                .to_integer();
            let n_hi = (yhi * BigRational::from_integer(two_k.clone()))
                .ceil()
                .to_integer();
            let p_lo = dyadic_power(&roots, bits, &n_lo, false);
            let p_hi = dyadic_power(&roots, bits, &n_hi, true);
            if q.is_positive() {
                lo += q * p_lo;
                hi += q * p_hi;
            } else {
                lo += q * p_hi;
                hi += q * p_lo;
            }
        }
        (lo, hi)
    }

    /// Decimal approximation with `digits` digits after the point.
    pub fn approx(&self, digits: u32) -> String {
        let (lo, hi) = self.enclosure(64 + 4 * digits);
        let mid = (lo + hi) / int(2);
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (mid * BigRational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let neg = scaled.is_negative();
        let abs = scaled.abs();
        let (whole, frac) = abs.div_rem(&scale);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!(
                "{sign}{whole}.{:0>width$}",
                frac.to_string(),
                width = digits as usize
            )
        }
    }
}

type RootTable = Arc<Vec<(BigInt, BigInt)>>;

/// Lower and upper fixed-point bounds (scaled by `2^bits`) of `β^(1/2^j)`
/// for `j = 1..=bits/2`.
fn dyadic_roots(b: u32, bits: u32) -> RootTable {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(b, bits)) {
        return t.clone();
    }
    let k = (bits / 2).max(8);
    let mut lo = BigInt::from(b) << bits;
    let mut hi = lo.clone();
    let mut table = Vec::with_capacity(k as usize);
    for _ in 0..k {
        lo = (&lo << bits).sqrt();
        hi = (&hi << bits).sqrt() + 1;
        table.push((lo.clone(), hi.clone()));
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert((b, bits), table.clone());
    table
}

/// Bound on `β^(n / 2^k)` where `k = roots.len()`.
fn dyadic_power(roots: &[(BigInt, BigInt)], bits: u32, n: &BigInt, upper: bool) -> Rat {
    let k = roots.len() as u32;
    let modulus = BigInt::one() << k;
    let (whole, frac) = n.div_mod_floor(&modulus);
    let mut acc = BigInt::one() << bits;
    for i in 0..k {
        if frac.bit(i as u64) {
            let (rlo, rhi) = &roots[(k - 1 - i) as usize];
            acc = if upper {
                let prod: BigInt = &acc * rhi;
                let (q, r) = prod.div_rem(&(BigInt::one() << bits));
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            } else {
                (&acc * rlo) >> bits
            };
        }
    }
    let frac_part = BigRational::new(acc, BigInt::one() << bits);
    let b = BigInt::from(base());
    let w = i64::try_from(whole).expect("exponent too large");
    let scale = if w >= 0 {
        BigRational::from_integer(b.pow(w as u32))
    } else {
        BigRational::new(BigInt::one(), b.pow((-w) as u32))
    };
    frac_part * scale
}

impl Add for &RealValue {
    type Output = RealValue;
    fn add(self, rhs: &RealValue) -> RealValue {
        let mut v = self.clone();
        for (e, q) in &rhs.terms {
            v.insert(e.clone(), q.clone());
        }
        v
    }
}

impl Sub for &RealValue {
    type Output = RealValue;
    fn sub(self, rhs: &RealValue) -> RealValue {
        let mut v = self.clone();
        for (e, q) in &rhs.terms {
            v.insert(e.clone(), -q.clone());
        }
        v
    }
}

impl Neg for &RealValue {
    type Output = RealValue;
    fn neg(self) -> RealValue {
        self.scale_rat(&int(-1))
    }
}

impl fmt::Display for RealValue {
    /// Signed sum, largest exponent first: `1/2 - 3*b^(1/2) + b^(-tau)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if e.is_zero() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "b^{}", e)?;
            } else {
                write!(f, "{}*b^{}", fmt_rat(&a), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: Rat, b: Rat) -> Exponent {
        Exponent::new(a, b)
    }

    fn mag(a: Rat) -> Magnitude {
        Magnitude::base_pow_rat(a)
    }

    #[test]
    fn exp_cmp_examples() {
        assert_eq!(Exponent::zero().cmp(&Exponent::zero()), Ordering::Equal);
        assert_eq!(e(rat(-3, 2), int(0)).cmp(&e(int(0), int(-1))), Ordering::Less);
        assert_eq!(e(rat(7, 5), int(0)).cmp(&e(int(0), int(1))), Ordering::Less);
        // √2 ∈ (141/100, 142/100)
        assert_eq!(e(rat(141, 100), int(0)).cmp(&e(int(0), int(1))), Ordering::Less);
        assert_eq!(
            e(rat(142, 100), int(0)).cmp(&e(int(0), int(1))),
            Ordering::Greater
        );
    }

    #[test]
    fn magnitude_group_law() {
        assert_eq!(mag(int(-1)).mul(&mag(rat(-1, 2))).unwrap(), mag(rat(-3, 2)));
        assert!(Magnitude::Zero < mag(int(-100)));
        assert_eq!(mag(rat(-1, 2)).pow(2).unwrap(), mag(int(-1)));
        assert_eq!(
            Magnitude::Zero.mul(&Magnitude::Infinity),
            Err(Error::UndefinedProduct)
        );
        assert_eq!(mag(int(1)).div(&Magnitude::Zero), Err(Error::DivisionByZero));
    }

    #[test]
    fn value_group_membership() {
        assert!(mag(int(-1)).in_value_group());
        assert!(!Magnitude::base_pow(e(int(0), int(-1))).in_value_group());
        assert!(!Magnitude::Zero.in_value_group());
    }

    #[test]
    fn combine_examples() {
        let v = RealValue::combine(&[
            (int(1), Magnitude::one()),
            (rat(-1, 2), mag(int(-1))),
            (rat(-1, 2), mag(int(-1))),
        ])
        .unwrap();
        // {0 ↦ 1, -1 ↦ -1} = 1 - 1/2
        assert_eq!(v.as_rational(), Some(rat(1, 2)));
        let w = RealValue::combine(&[(int(1), mag(int(1))), (int(-2), Magnitude::one())]).unwrap();
        assert!(w.is_zero());
        assert!(RealValue::combine(&[(int(1), Magnitude::Zero)])
            .unwrap()
            .is_zero());
        assert_eq!(
            RealValue::combine(&[(int(1), Magnitude::Infinity)]),
            Err(Error::InfiniteOperand)
        );
    }

    #[test]
    fn sign_examples() {
        let cap = DEFAULT_PRECISION_CAP;
        assert_eq!(RealValue::zero().sign(cap).unwrap(), Sign::Zero);
        let v = RealValue::combine(&[(int(1), mag(int(-1))), (int(-1), mag(int(-2)))]).unwrap();
        assert_eq!(v.sign(cap).unwrap(), Sign::Positive);
        let w = RealValue::combine(&[
            (int(1), Magnitude::base_pow(e(int(0), int(-1)))),
            (int(-1), mag(rat(-3, 2))),
        ])
        .unwrap();
        assert_eq!(w.sign(cap).unwrap(), Sign::Positive);
    }

    #[test]
    fn sign_of_close_irrational_terms() {
        // 2^(1/2) vs 1.4142 and 2^(1/3) vs 1.2599
        let v = &RealValue::combine(&[(int(1), mag(rat(1, 2)))]).unwrap()
            - &RealValue::from_rat(rat(14142, 10000));
        assert_eq!(v.sign(DEFAULT_PRECISION_CAP).unwrap(), Sign::Positive);
        let w = &RealValue::combine(&[(int(1), mag(rat(1, 3)))]).unwrap()
            - &RealValue::from_rat(rat(12600, 10000));
        assert_eq!(w.sign(DEFAULT_PRECISION_CAP).unwrap(), Sign::Negative);
    }

    #[test]
    fn base_validation() {
        assert!(is_perfect_power(4));
        assert!(is_perfect_power(27));
        assert!(!is_perfect_power(2));
        assert!(!is_perfect_power(12));
    }

    #[test]
    fn display_forms() {
        assert_eq!(mag(int(-1)).to_string(), "b^-1");
        assert_eq!(mag(rat(1, 2)).to_string(), "b^(1/2)");
        assert_eq!(Magnitude::base_pow(e(int(0), int(-1))).to_string(), "b^(-tau)");
        assert_eq!(
            Magnitude::base_pow(e(rat(1, 2), int(-3))).to_string(),
            "b^(1/2-3*tau)"
        );
        let v = RealValue::combine(&[(int(1), Magnitude::one()), (int(-3), mag(rat(-1, 2)))]).unwrap();
        assert_eq!(v.to_string(), "-3/2*b^(1/2) + 1");
        assert_eq!(RealValue::from_rat(rat(3, 8)).approx(3), "0.375");
    }
}
