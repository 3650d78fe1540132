//! Exact dyadic rationals `num / 2^exp`.
//!
//! Values are kept in normal form: either `exp == 0`, or `num` is odd.
//! Zero is always `0 / 2^0`. Because the representation is unique, derived
//! equality and hashing agree with equality of rational values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("malformed dyadic literal `{0}`")]
    Malformed(String),
    #[error("denominator of `{0}` is not a power of two")]
    NotDyadic(String),
    #[error("ratio {0} / {1} is not an integer power of two")]
    NotPowerOfTwo(Dyadic, Dyadic),
    #[error("expected a strictly positive value, got {0}")]
    NonPositive(Dyadic),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// `2^k` for any signed `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Dyadic {
                num: BigInt::one() << (k as u64),
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::one(),
                exp: k.unsigned_abs(),
            }
        }
    }

    fn normalize(&mut self) {
        match self.num.trailing_zeros() {
            None => self.exp = 0,
            Some(tz) => {
                let shift = tz.min(self.exp);
                if shift > 0 {
                    self.num >>= shift;
                    self.exp -= shift;
                }
            }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the denominator in normal form.
    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.exp == 0 {
            self.num.to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let n = self.num.to_f64().unwrap_or(f64::NAN);
        n / 2f64.powi(self.exp.min(i32::MAX as u64) as i32)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp == 0 {
            return self.num.clone();
        }
        // arithmetic shift rounds towards negative infinity
        &self.num >> self.exp
    }

    /// Splits a non-zero value into `odd * 2^k`.
    fn odd_and_log(&self) -> (BigInt, i64) {
        let tz = self.num.trailing_zeros().expect("non-zero");
        let odd = &self.num >> tz;
        (odd, tz as i64 - self.exp as i64)
    }

    /// If the value is `2^k`, returns `k`.
    pub fn log2(&self) -> Option<i64> {
        if !self.is_positive() {
            return None;
        }
        let (odd, k) = self.odd_and_log();
        odd.is_one().then_some(k)
    }

    /// The `k` with `a / b = 2^k`.
    pub fn log2_ratio(a: &Dyadic, b: &Dyadic) -> Result<i64, DyadicError> {
        for v in [a, b] {
            if !v.is_positive() {
                return Err(DyadicError::NonPositive(v.clone()));
            }
        }
        let (odd_a, ka) = a.odd_and_log();
        let (odd_b, kb) = b.odd_and_log();
        if odd_a != odd_b {
            return Err(DyadicError::NotPowerOfTwo(a.clone(), b.clone()));
        }
        Ok(ka - kb)
    }

    /// Multiplies by `2^k`.
    pub fn scale_pow2(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u64;
            if self.exp >= k {
                Dyadic::new(self.num.clone(), self.exp - k)
            } else {
                Dyadic::new(&self.num << (k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + k.unsigned_abs())
        }
    }

    pub fn half(&self) -> Dyadic {
        self.scale_pow2(-1)
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).half()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<usize> for Dyadic {
    fn from(n: usize) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n`, `p/2^e` and `p/q` with `q` a power of two.
impl FromStr for Dyadic {
    type Err = DyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let malformed = || DyadicError::Malformed(s.to_string());
        let parse_int = |x: &str| -> Result<BigInt, DyadicError> {
            let x = x.trim();
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            x.parse::<BigInt>().map_err(|_| malformed())
        };
        let Some((n, d)) = t.split_once('/') else {
            return Ok(Dyadic::new(parse_int(t)?, 0));
        };
        let num = parse_int(n)?;
        let d = d.trim();
        let exp = if let Some(e) = d.strip_prefix("2^") {
            if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            e.parse::<u64>().map_err(|_| malformed())?
        } else {
            let den = parse_int(d)?;
            if !den.is_positive() {
                return Err(malformed());
            }
            let tz = den.trailing_zeros().unwrap_or(0);
            if !(&den >> tz).is_one() {
                return Err(DyadicError::NotDyadic(s.to_string()));
            }
            tz
        };
        Ok(Dyadic::new(num, exp))
    }
}
