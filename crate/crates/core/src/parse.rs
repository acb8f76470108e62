//! Recursive descent parser for the textual forms printed by the library.
//!
//! ```text
//! rat      := int ["/" int]
//! mag      := "0" | "inf" | "b^" exp | rat            (rat must be a power of b)
//! exp      := ["-"] (rat | "(" lin ")")
//! lin      := ["-"] lterm {("+" | "-") lterm}         lterm := rat ["*" "tau"] | "tau"
//! real     := ["-"] rvterm {("+" | "-") rvterm}      rvterm := rat ["*" "b^" exp] | "b^" exp
//! ring     := ["-"] prod {("+" | "-") prod}          (series in t, polynomials in T)
//! prod     := factor {"*" factor}
//! factor   := atom ["^" power]                        atom := rat | "t" | "T" | "(" ring ")"
//! point    := "pt(" ring ")" | "inf" | "[" ring "," mag "]"
//!           | "chain(std" ["," ring "," rat] ")"
//!           | "chain(explicit," mag {"," "[" ring "," mag "]"} ")"
//! ball     := "B(" ring "," ("<" | "<=" | ">" | ">=") mag ")"
//! affinoid := "P1" | ball {"&" ball}
//! cover    := affinoid {"|" affinoid}
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::affinoid::{Affinoid, Ball, Side};
use crate::berk::{BallChain, BerkPoint};
use crate::error::{Error, Result};
use crate::field::{Polynomial, Series};
use crate::magnitude::{base, Exponent, Magnitude, Rat, RealValue};

/// A parsed literal.
#[derive(Clone, Debug)]
pub enum Expr {
    Series(Series),
    Polynomial(Polynomial),
    Magnitude(Magnitude),
    Real(RealValue),
    Point(BerkPoint),
    Ball(Ball),
    /// Balls as written; not yet intersected.
    Affinoid(Vec<Ball>),
    Cover(Vec<Vec<Ball>>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Series(s) => write!(f, "{}", s),
            Expr::Polynomial(p) => write!(f, "{}", p),
            Expr::Magnitude(m) => write!(f, "{}", m),
            Expr::Real(v) => write!(f, "{}", v),
            Expr::Point(p) => write!(f, "{}", p),
            Expr::Ball(b) => write!(f, "{}", b),
            Expr::Affinoid(a) => write!(f, "{}", fmt_balls(a)),
            Expr::Cover(c) => {
                write!(
                    f,
                    "{}",
                    c.iter().map(|a| fmt_balls(a)).collect::<Vec<_>>().join(" | ")
                )
            }
        }
    }
}

fn fmt_balls(balls: &[Ball]) -> String {
    if balls.is_empty() {
        return "P1".into();
    }
    balls.iter().map(Ball::to_string).collect::<Vec<_>>().join(" & ")
}

pub fn fmt_cover(c: &[Affinoid]) -> String {
    c.iter().map(Affinoid::to_string).collect::<Vec<_>>().join(" | ")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn rest_starts(&mut self, lit: &str) -> bool {
        self.ws();
        self.src[self.pos..].starts_with(lit.as_bytes())
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest_starts(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    /// Like `eat` but refuses to split an identifier.
    fn eat_word(&mut self, word: &str) -> bool {
        if !self.rest_starts(word) {
            return false;
        }
        let next = self.src.get(self.pos + word.len());
        if next.is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            return false;
        }
        self.pos += word.len();
        true
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(&[lit])
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.fail(&["end of input"]);
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(&["integer"]);
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn unsigned_rat(&mut self) -> Result<Rat> {
        let n = self.integer()?;
        if self.eat("/") {
            let at = self.pos;
            let d = self.integer()?;
            if d.is_zero() {
                self.pos = at;
                return self.fail(&["nonzero denominator"]);
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn signed_rat(&mut self) -> Result<Rat> {
        let neg = self.eat("-");
        let r = self.unsigned_rat()?;
        Ok(if neg { -r } else { r })
    }

    fn starts_number(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    // exponent after "b^"
    fn exponent(&mut self) -> Result<Exponent> {
        let neg = self.eat("-");
        let e = if self.eat("(") {
            let e = self.linear()?;
            self.expect(")")?;
            e
        } else if self.starts_number() {
            Exponent::rational(self.unsigned_rat()?)
        } else {
            return self.fail(&["rational", "("]);
        };
        Ok(if neg { -&e } else { e })
    }

    fn linear(&mut self) -> Result<Exponent> {
        let mut acc = Exponent::zero();
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if first || self.eat("+") {
                false
            } else {
                return Ok(acc);
            };
            let term = if self.eat_word("tau") {
                Exponent::new(Rat::zero(), Rat::one())
            } else if self.starts_number() {
                let q = self.unsigned_rat()?;
                if self.eat("*") {
                    if !self.eat_word("tau") {
                        return self.fail(&["tau"]);
                    }
                    Exponent::new(Rat::zero(), q)
                } else {
                    Exponent::rational(q)
                }
            } else {
                return self.fail(&["rational", "tau"]);
            };
            acc = if neg { &acc - &term } else { &acc + &term };
            first = false;
        }
    }

    fn magnitude(&mut self) -> Result<Magnitude> {
        if self.eat_word("inf") {
            return Ok(Magnitude::Infinity);
        }
        if self.eat("b^") {
            return Ok(Magnitude::base_pow(self.exponent()?));
        }
        if self.starts_number() {
            let at = self.pos;
            let q = self.unsigned_rat()?;
            if q.is_zero() {
                return Ok(Magnitude::Zero);
            }
            return match base_log(&q) {
                Some(k) => Ok(Magnitude::base_pow_int(k)),
                None => {
                    self.pos = at;
                    self.fail(&["power of the base"])
                }
            };
        }
        self.fail(&["0", "inf", "b^", "rational"])
    }

    fn real(&mut self) -> Result<RealValue> {
        let mut terms: Vec<(Rat, Magnitude)> = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if first || self.eat("+") {
                false
            } else {
                break;
            };
            let (q, m) = if self.eat("b^") {
                (Rat::one(), Magnitude::base_pow(self.exponent()?))
            } else if self.starts_number() {
                let q = self.unsigned_rat()?;
                if self.eat("*") {
                    self.expect("b^")?;
                    (q, Magnitude::base_pow(self.exponent()?))
                } else {
                    (q, Magnitude::one())
                }
            } else {
                return self.fail(&["rational", "b^"]);
            };
            terms.push((if neg { -q } else { q }, m));
            first = false;
        }
        RealValue::combine(&terms)
    }

    fn ring(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            let neg = if self.eat("-") {
                true
            } else if first || self.eat("+") {
                false
            } else {
                return Ok(acc);
            };
            let p = self.product()?;
            acc = if neg { &acc - &p } else { &acc + &p };
            first = false;
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn nonneg_power(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.integer()?;
        match n.to_u32() {
            Some(k) if k <= 4096 => Ok(k),
            _ => {
                self.pos = at;
                self.fail(&["small nonnegative integer"])
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat_word("t") {
            let e = if self.eat("^") {
                if self.eat("(") {
                    let e = self.signed_rat()?;
                    self.expect(")")?;
                    e
                } else {
                    self.signed_rat()?
                }
            } else {
                Rat::one()
            };
            return Ok(Polynomial::constant(Series::monomial(Rat::one(), e)));
        }
        let base = if self.eat_word("T") {
            Polynomial::var()
        } else if self.eat("(") {
            let p = self.ring()?;
            self.expect(")")?;
            p
        } else if self.starts_number() {
            Polynomial::constant(Series::constant(self.unsigned_rat()?))
        } else {
            return self.fail(&["rational", "t", "T", "("]);
        };
        if self.eat("^") {
            let k = self.nonneg_power()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn series(&mut self) -> Result<Series> {
        let at = self.pos;
        let p = self.ring()?;
        match p.degree() {
            None => Ok(Series::zero()),
            Some(0) => Ok(p.coeffs()[0].clone()),
            Some(_) => {
                self.pos = at;
                self.fail(&["series in t"])
            }
        }
    }

    fn point(&mut self) -> Result<BerkPoint> {
        if self.eat_word("inf") {
            return Ok(BerkPoint::Infinity);
        }
        if self.eat("pt(") {
            let s = self.series()?;
            self.expect(")")?;
            return Ok(BerkPoint::Type1(s));
        }
        if self.eat("[") {
            let c = self.series()?;
            self.expect(",")?;
            let r = self.magnitude()?;
            self.expect("]")?;
            return Ok(BerkPoint::from_node(c, r));
        }
        if self.eat("chain(") {
            return self.chain().map(BerkPoint::Type4);
        }
        self.fail(&["pt(", "[", "inf", "chain("])
    }

    fn chain(&mut self) -> Result<BallChain> {
        if self.eat_word("std") {
            let ch = if self.eat(",") {
                let base = self.series()?;
                self.expect(",")?;
                let shift = self.signed_rat()?;
                BallChain::standard_at(base, shift)
            } else {
                BallChain::standard()
            };
            self.expect(")")?;
            return Ok(ch);
        }
        if self.eat_word("explicit") {
            self.expect(",")?;
            let limit = self.magnitude()?;
            let mut balls = Vec::new();
            while self.eat(",") {
                self.expect("[")?;
                let c = self.series()?;
                self.expect(",")?;
                let r = self.magnitude()?;
                self.expect("]")?;
                balls.push((c, r));
            }
            self.expect(")")?;
            return BallChain::explicit(balls, limit);
        }
        self.fail(&["std", "explicit"])
    }

    fn ball(&mut self) -> Result<Ball> {
        self.expect("B(")?;
        let c = self.series()?;
        self.expect(",")?;
        let (side, open) = if self.eat("<=") {
            (Side::Disk, false)
        } else if self.eat("<") {
            (Side::Disk, true)
        } else if self.eat(">=") {
            (Side::Complement, false)
        } else if self.eat(">") {
            (Side::Complement, true)
        } else {
            return self.fail(&["<", "<=", ">", ">="]);
        };
        let r = self.magnitude()?;
        self.expect(")")?;
        Ball::new(side, c, r, open)
    }

    fn affinoid(&mut self) -> Result<Vec<Ball>> {
        if self.eat_word("P1") {
            return Ok(Vec::new());
        }
        let mut balls = vec![self.ball()?];
        while self.eat("&") {
            balls.push(self.ball()?);
        }
        Ok(balls)
    }

    fn cover(&mut self) -> Result<Vec<Vec<Ball>>> {
        let mut out = vec![self.affinoid()?];
        while self.eat("|") {
            out.push(self.affinoid()?);
        }
        Ok(out)
    }
}

/// `k` with `q = β^k`, if any.
fn base_log(q: &Rat) -> Option<i64> {
    if !q.is_positive() {
        return None;
    }
    let b = BigInt::from(base());
    let (mut n, neg) = if q.denom().is_one() {
        (q.numer().clone(), false)
    } else if q.numer().is_one() {
        (q.denom().clone(), true)
    } else {
        return None;
    };
    let mut k = 0i64;
    while n > BigInt::one() {
        if (&n % &b).is_zero() {
            n /= &b;
            k += 1;
        } else {
            return None;
        }
    }
    Some(if neg { -k } else { k })
}

fn whole<T>(s: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(s);
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_series(s: &str) -> Result<Series> {
    whole(s, |p| p.series())
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    whole(s, |p| p.ring())
}

pub fn parse_magnitude(s: &str) -> Result<Magnitude> {
    whole(s, |p| p.magnitude())
}

pub fn parse_real(s: &str) -> Result<RealValue> {
    whole(s, |p| p.real())
}

pub fn parse_point(s: &str) -> Result<BerkPoint> {
    whole(s, |p| p.point())
}

pub fn parse_ball(s: &str) -> Result<Ball> {
    whole(s, |p| p.ball())
}

/// Parses and normalizes an affinoid.
pub fn parse_affinoid(s: &str) -> Result<Affinoid> {
    Affinoid::normalize(whole(s, |p| p.affinoid())?)
}

/// Parses a `|`-separated family, normalizing each member.
pub fn parse_cover(s: &str) -> Result<Vec<Affinoid>> {
    whole(s, |p| p.cover())?
        .into_iter()
        .map(Affinoid::normalize)
        .collect()
}

/// Parses any literal, choosing the production from its first tokens.
pub fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser::new(s);
    if p.rest_starts("pt(") || p.rest_starts("[") || p.rest_starts("chain(") || p.rest_starts("inf") {
        return parse_point(s).map(Expr::Point);
    }
    if p.rest_starts("B(") || p.rest_starts("P1") {
        let mut c = whole(s, |p| p.cover())?;
        if c.len() > 1 {
            return Ok(Expr::Cover(c));
        }
        let mut a = c.pop().expect("one member");
        if a.len() == 1 {
            return Ok(Expr::Ball(a.pop().expect("one ball")));
        }
        return Ok(Expr::Affinoid(a));
    }
    if s.contains("b^") {
        if let Ok(m) = parse_magnitude(s) {
            return Ok(Expr::Magnitude(m));
        }
        return parse_real(s).map(Expr::Real);
    }
    let poly = parse_polynomial(s)?;
    match poly.degree() {
        Some(d) if d > 0 => Ok(Expr::Polynomial(poly)),
        _ => Ok(Expr::Series(
            poly.coeffs().first().cloned().unwrap_or_else(Series::zero),
        )),
    }
}
