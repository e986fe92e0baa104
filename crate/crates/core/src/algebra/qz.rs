use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::valuation::factor_u64;
use super::AlgebraError;

/// An element of `Q/Z` with prime-power denominator, stored reduced in `[0, 1)`.
///
/// Zero is `0/1`. Sums are only defined when both operands live over the same
/// prime (or one of them is zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QZElement {
    num: u64,
    den: u64,
}

fn prime_of(den: u64) -> Result<Option<u64>, AlgebraError> {
    if den == 1 {
        return Ok(None);
    }
    match factor_u64(den).as_slice() {
        [(p, _)] => Ok(Some(*p)),
        _ => Err(AlgebraError::NotPrimePower(den)),
    }
}

impl QZElement {
    pub const ZERO: QZElement = QZElement { num: 0, den: 1 };

    /// `num/den mod 1`; `den` must be a prime power (1 allowed).
    pub fn new(num: i128, den: u64) -> Result<Self, AlgebraError> {
        if den == 0 {
            return Err(AlgebraError::NotPrimePower(0));
        }
        prime_of(den)?;
        let r = num.rem_euclid(den as i128) as u64;
        Ok(Self::reduced(r, den))
    }

    pub fn from_bigint(num: &BigInt, den: &BigInt) -> Result<Self, AlgebraError> {
        let den_abs = den.magnitude();
        let r = num.mod_floor(&BigInt::from(den_abs.clone()));
        let g = r.gcd(&BigInt::from(den_abs.clone()));
        let (n, d) = if r.is_zero() {
            (BigInt::zero(), BigInt::from(1))
        } else {
            (&r / &g, BigInt::from(den_abs.clone()) / &g)
        };
        let d64 = d
            .to_u64()
            .ok_or_else(|| AlgebraError::Overflow(d.to_string()))?;
        let n64 = n.to_u64().expect("numerator is below the denominator");
        prime_of(d64)?;
        Ok(QZElement { num: n64, den: d64 })
    }

    fn reduced(num: u64, den: u64) -> Self {
        if num == 0 {
            return QZElement::ZERO;
        }
        let g = num.gcd(&den);
        QZElement {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The prime of the denominator, `None` for zero.
    pub fn prime(&self) -> Option<u64> {
        prime_of(self.den).expect("denominator invariant")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        if self.prime() != other.prime() {
            return Err(AlgebraError::MixedPrimes(self.den, other.den));
        }
        let den = self.den.max(other.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = other.num as u128 * (den / other.den) as u128;
        Ok(Self::reduced(((a + b) % den as u128) as u64, den))
    }

    /// Integer multiple `k * self`.
    pub fn mul_int(&self, k: i128) -> Self {
        let k = k.rem_euclid(self.den as i128) as u128;
        Self::reduced(((self.num as u128 * k) % self.den as u128) as u64, self.den)
    }

    /// Numerator over a denominator `den` that `self.den()` divides.
    pub fn numerator_over(&self, den: u64) -> Option<u64> {
        if !den.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (den / self.den))
    }

    /// Formats as `n/den` for a denominator `self.den()` divides.
    pub fn display_over(&self, den: u64) -> String {
        match self.numerator_over(den) {
            Some(n) => format!("{n}/{den}"),
            None => self.to_string(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for QZElement {
    type Output = QZElement;

    /// Panics when the denominators belong to different primes.
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(&rhs).expect("Q/Z addition across different primes")
    }
}

impl Neg for QZElement {
    type Output = QZElement;

    fn neg(self) -> Self::Output {
        if self.is_zero() {
            self
        } else {
            QZElement {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl fmt::Display for QZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QZElement {
    type Err = String;

    /// Accepts `n/d` with any integer `n` (reduced mod 1) or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i128 = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: u64 = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        QZElement::new(n, d).map_err(|e| e.to_string())
    }
}
