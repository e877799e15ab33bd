//! Scalar backends for the numerical index: `f64` and binary fixed point
//! on big integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Minimal real-field interface used by the singular value solver.
pub trait Real: Clone + PartialOrd + fmt::Debug + Send + Sync + 'static {
    /// Precision context needed to create values.
    type Ctx: Copy + fmt::Debug + Send + Sync;

    fn from_rational(r: &BigRational, ctx: Self::Ctx) -> Self;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    /// Relative accuracy of the arithmetic.
    fn epsilon(ctx: Self::Ctx) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Real for f64 {
    type Ctx = ();

    fn from_rational(r: &BigRational, _: ()) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn zero(_: ()) -> Self {
        0.0
    }
    fn one(_: ()) -> Self {
        1.0
    }
    fn epsilon(_: ()) -> Self {
        f64::EPSILON
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `mantissa / 2^bits`, truncating toward zero after every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mantissa: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn bits(&self) -> u32 {
        self.bits
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Real for Fixed {
    type Ctx = u32;

    fn from_rational(r: &BigRational, bits: u32) -> Self {
        Fixed { mantissa: (r.numer() << bits) / r.denom(), bits }
    }
    fn zero(bits: u32) -> Self {
        Fixed { mantissa: BigInt::zero(), bits }
    }
    fn one(bits: u32) -> Self {
        Fixed { mantissa: BigInt::one() << bits, bits }
    }
    fn epsilon(bits: u32) -> Self {
        // a few guard bits for accumulated truncation
        Fixed { mantissa: BigInt::one() << 8u32.min(bits), bits }
    }
    fn add(&self, o: &Self) -> Self {
        Fixed { mantissa: &self.mantissa + &o.mantissa, bits: self.bits }
    }
    fn sub(&self, o: &Self) -> Self {
        Fixed { mantissa: &self.mantissa - &o.mantissa, bits: self.bits }
    }
    fn mul(&self, o: &Self) -> Self {
        Fixed { mantissa: (&self.mantissa * &o.mantissa) >> self.bits, bits: self.bits }
    }
    fn div(&self, o: &Self) -> Self {
        Fixed { mantissa: (&self.mantissa << self.bits) / &o.mantissa, bits: self.bits }
    }
    fn neg(&self) -> Self {
        Fixed { mantissa: -&self.mantissa, bits: self.bits }
    }
    fn abs(&self) -> Self {
        Fixed { mantissa: self.mantissa.abs(), bits: self.bits }
    }
    fn sqrt(&self) -> Self {
        assert!(!self.mantissa.is_negative(), "square root of a negative number");
        Fixed { mantissa: (&self.mantissa << self.bits).sqrt(), bits: self.bits }
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
    fn to_f64(&self) -> f64 {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.bits).to_f64().unwrap_or(f64::NAN)
    }
}

/// Arithmetic used for the singular values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Precision {
    F64,
    /// Fixed point with this many fractional bits.
    Fixed(u32),
}

impl Precision {
    /// Fixed point used when double precision cannot separate the spectrum.
    pub const FALLBACK: Precision = Precision::Fixed(256);
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::F64 => write!(f, "f64"),
            Precision::Fixed(b) => write!(f, "fixed{b}"),
        }
    }
}

impl FromStr for Precision {
    type Err = String;

    /// `f64`, or a number of fractional bits (at least 64), optionally
    /// written `fixed256`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bits = s.strip_prefix("fixed").unwrap_or(s);
        if s.eq_ignore_ascii_case("f64") || s.eq_ignore_ascii_case("double") {
            return Ok(Precision::F64);
        }
        match bits.parse::<u32>() {
            Ok(b) if (64..=16384).contains(&b) => Ok(Precision::Fixed(b)),
            _ => Err(format!("precision must be `f64` or a bit count in 64..=16384, got `{s}`")),
        }
    }
}
