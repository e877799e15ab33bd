//! Exact arithmetic in the rational function field ℚ(q).
//!
//! A [`ScalarQ`] is stored as a pair of integer polynomials kept in a
//! canonical form:
//! - numerator and denominator are coprime in ℚ[q],
//! - the integer contents of numerator and denominator share no factor,
//! - the leading coefficient of the denominator is positive,
//! - zero is `0/1`.
//!
//! With this normalization two scalars are equal iff their stored pairs are
//! equal, so `PartialEq`, `Ord` and `Hash` are all structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at q = {0}")]
    Pole(String),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Dense integer polynomial in `q`, little-endian, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c · q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Order of vanishing at `q = 0`.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        match self.order() {
            Some(o) => o + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) · a mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &lead * dc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Primitive gcd over ℚ[q] (primitive remainder sequence), normalized
    /// with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact division `self / d` where `d` is primitive and divides `self`
    /// in ℤ[q].
    fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Poly::zero();
        }
        let mut quot = vec![BigInt::zero(); n - dd];
        for top in (dd..n).rev() {
            let c = &r[top] / lc;
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            quot[shift] = c;
        }
        Poly::new(quot)
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            if k == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Poly::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, deg) = match body.find('q') {
                None => (body.parse::<BigInt>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| err())? };
                    let rest = &body[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?
                    };
                    (coef, deg)
                }
            };
            let coef = if neg { -coef } else { coef };
            acc = &acc + &Poly::monomial(coef, deg);
        }
        Ok(acc)
    }
}

/// Element of ℚ(q) in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarQ {
    num: Poly,
    den: Poly,
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl ScalarQ {
    /// Builds `num/den` and brings it to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return ScalarQ::zero();
        }
        if den.is_monomial() {
            let k = den.order().unwrap();
            let s = k.min(num.order().unwrap());
            if s > 0 {
                num = num.shift_down(s);
                den = den.shift_down(s);
            }
        } else {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        ScalarQ { num, den }
    }

    pub fn zero() -> Self {
        ScalarQ { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ScalarQ::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ { num: Poly::constant(BigInt::from(n)), den: Poly::one() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        ScalarQ::new(Poly::constant(n.into()), Poly::constant(d.into())).expect("zero denominator in from_ratio")
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarQ::canonical(p, Poly::one())
    }

    /// The deformation parameter itself.
    pub fn q() -> Self {
        ScalarQ::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            ScalarQ { num: m, den: Poly::one() }
        } else {
            ScalarQ { num: Poly::one(), den: m }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<ScalarQ, ScalarError> {
        ScalarQ::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &ScalarQ) -> Result<ScalarQ, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval_rational(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.eval_rational(q0) / d)
    }

    /// Exact evaluation, then rounding to `digits` significant decimal digits.
    pub fn evaluate_decimal(&self, q0: &BigRational, digits: usize) -> Result<String, ScalarError> {
        let v = self.evaluate(q0)?;
        Ok(format_decimal(&v, digits))
    }

    pub fn evaluate_f64(&self, q0: f64) -> Result<f64, ScalarError> {
        let d = self.den.eval_f64(q0);
        if d == 0.0 {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.eval_f64(q0) / d)
    }

    fn is_integer_den(&self) -> bool {
        self.den.is_one()
    }
}

/// Decimal rendering of a rational with `digits` significant digits
/// (round half away from zero).
pub fn format_decimal(v: &BigRational, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = v.is_negative();
    let a = v.abs();
    // find exponent e with 10^e <= a < 10^(e+1)
    let ten = BigRational::from_integer(10.into());
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let mut m = scaled;
    for _ in 1..digits {
        m *= &ten;
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut mant = (m + half).floor().to_integer();
    let mut exp = e;
    if mant.to_string().len() > digits {
        mant /= 10;
        exp += 1;
    }
    let s = mant.to_string();
    let point = exp + 1; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), s)
    } else if point as usize >= s.len() {
        format!("{}{}", s, "0".repeat(point as usize - s.len()))
    } else {
        format!("{}.{}", &s[..point as usize], &s[point as usize..])
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_integer_den() && rhs.is_integer_den() {
            let num = &self.num + &rhs.num;
            return ScalarQ { num, den: Poly::one() };
        }
        if self.den == rhs.den {
            return ScalarQ::canonical(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            // common denominator c1 c2 q^max(k1,k2)
            let k1 = self.den.order().unwrap();
            let k2 = rhs.den.order().unwrap();
            let c1 = self.den.leading().unwrap();
            let c2 = rhs.den.leading().unwrap();
            let k = k1.max(k2);
            let a = self.num.scale(c2).shift_up(k - k1);
            let b = rhs.num.scale(c1).shift_up(k - k2);
            return ScalarQ::canonical(&a + &b, Poly::monomial(c1 * c2, k));
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarQ::canonical(num, &self.den * &rhs.den)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_integer_den() && rhs.is_integer_den() {
            return ScalarQ { num: &self.num * &rhs.num, den: Poly::one() };
        }
        ScalarQ::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: &ScalarQ) -> ScalarQ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ScalarQ {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let strip = |p: &str| {
            let p = p.trim();
            p.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(p).to_string()
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let num: Poly = strip(n).parse()?;
                let den: Poly = strip(d).parse()?;
                ScalarQ::new(num, den)
            }
            None => Ok(ScalarQ::from_poly(strip(s).parse()?)),
        }
    }
}

impl Serialize for ScalarQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScalarQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarQ {
        x.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form_is_unique() {
        assert_eq!(s("-q^2+1/-q+1"), s("q+1"));
        assert_eq!(s("2q/4q^3"), s("1/2q^2"));
        assert_eq!(s("0/q^2+1"), ScalarQ::zero());
        let x = s("q^2-1/-2q-2");
        assert!(x.denominator().leading().unwrap().is_positive());
        assert_eq!(x, s("-q+1/2"));
    }

    #[test]
    fn inverse_powers() {
        let qi = ScalarQ::q_pow(-1);
        assert!((&qi * &ScalarQ::q()).is_one());
        assert_eq!(&ScalarQ::q_pow(3) * &ScalarQ::q_pow(-5), ScalarQ::q_pow(-2));
    }

    #[test]
    fn evaluate_examples() {
        let x = s("1-q^2/1-q");
        assert_eq!(x.evaluate(&rat(1, 2)).unwrap(), rat(3, 2));
        let qi = ScalarQ::q_pow(-1);
        assert!(matches!(qi.evaluate(&rat(0, 1)), Err(ScalarError::Pole(_))));
        // q = 1 specialization by direct substitution
        let y = s("q^3+2q-7/q^2+1");
        assert_eq!(y.evaluate(&rat(1, 1)).unwrap(), rat(-4, 2));
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&rat(3, 2), 5), "1.5");
        assert_eq!(format_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(format_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&rat(-1234, 1), 2), "-1200");
        assert_eq!(format_decimal(&rat(1, 1000), 2), "0.001");
    }

    #[test]
    fn display_parse_roundtrip() {
        for x in ["3q^2-q+1/q", "-1/2", "q^4+1/2q^3-q+5", "0"] {
            let v = s(x);
            assert_eq!(v.to_string().parse::<ScalarQ>().unwrap(), v);
        }
        assert_eq!(s("q^2+1/q").to_string(), "q^2+1/q");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(ScalarQ::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(-6i64..6, 0..5).prop_map(|c| Poly::from_i64s(&c))
        }

        fn scalar() -> impl Strategy<Value = ScalarQ> {
            (poly(), poly()).prop_filter_map("nonzero den", |(n, d)| ScalarQ::new(n, d).ok())
        }

        proptest! {
            #[test]
            fn add_then_sub(a in scalar(), b in scalar()) {
                prop_assert_eq!(&(&a + &b) - &b, a);
            }

            #[test]
            fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), n in 1i64..9) {
                let q0 = BigRational::new(n.into(), 7.into());
                if let (Ok(x), Ok(y)) = (a.evaluate(&q0), b.evaluate(&q0)) {
                    prop_assert_eq!((&a * &b).evaluate(&q0).unwrap(), &x * &y);
                    prop_assert_eq!((&a + &b).evaluate(&q0).unwrap(), x + y);
                }
            }
        }
    }
}
