use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use super::AlgebraError;

/// Relative tolerance used when reading an argument off a Gauss sum. The
/// argument is quantized to eighth-turns, so this only guards against bugs.
pub const ARG_TOLERANCE: f64 = 1e-6;

/// An element `sum_j c_j zeta^j` of `Z[zeta]`, `zeta = exp(2 pi i / 2^m)`,
/// in the power basis `0 <= j < 2^(m-1)`. The minimal polynomial of `zeta` is
/// `x^(2^(m-1)) + 1`, so the representation is unique and zero-testing is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicSum {
    m: u32,
    coeffs: Vec<i128>,
}

impl CyclotomicSum {
    pub fn zero(m: u32) -> Self {
        assert!((1..=30).contains(&m), "cyclotomic order 2^{m} out of range");
        CyclotomicSum {
            m,
            coeffs: vec![0; 1 << (m - 1)],
        }
    }

    pub fn from_int(m: u32, value: i128) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = value;
        z
    }

    /// Builds from coefficients over all `2^m` exponents (not yet reduced).
    pub fn from_full_coeffs(m: u32, full: &[i128]) -> Self {
        let mut z = Self::zero(m);
        let half = z.coeffs.len();
        assert_eq!(full.len(), 2 * half, "need 2^m coefficients");
        for (j, &c) in full.iter().enumerate() {
            if j < half {
                z.coeffs[j] += c;
            } else {
                z.coeffs[j - half] -= c;
            }
        }
        z
    }

    /// `sum_j counts[j] * zeta^j` for phase counts over `Z/2^m`.
    pub fn from_phase_counts(m: u32, counts: &[u64]) -> Self {
        let full: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        Self::from_full_coeffs(m, &full)
    }

    pub fn order_exponent(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> i128 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Rewrites the same value over `Z[zeta_(2^m2)]`, `m2 >= m`.
    pub fn lift(&self, m2: u32) -> Self {
        assert!(m2 >= self.m);
        let mut z = Self::zero(m2);
        let step = 1usize << (m2 - self.m);
        for (j, &c) in self.coeffs.iter().enumerate() {
            z.coeffs[j * step] = c;
        }
        z
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.m.max(other.m);
        let a = self.lift(m);
        let b = other.lift(m);
        let half = a.coeffs.len();
        let mut out = Self::zero(m);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = i + j;
                if k < half {
                    out.coeffs[k] += x * y;
                } else {
                    out.coeffs[k - half] -= x * y;
                }
            }
        }
        out
    }

    /// Complex conjugate: `zeta^j -> zeta^(-j)`.
    pub fn conj(&self) -> Self {
        let half = self.coeffs.len();
        let mut out = Self::zero(self.m);
        out.coeffs[0] = self.coeffs[0];
        for j in 1..half {
            // zeta^(-j) = zeta^(2^m - j) = -zeta^(half - j)
            out.coeffs[half - j] -= self.coeffs[j];
        }
        out
    }

    /// Floating-point value `(re, im)`.
    pub fn eval(&self) -> (f64, f64) {
        let n = (1u64 << self.m) as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, &c)| {
                let theta = 2.0 * PI * j as f64 / n;
                (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
            })
    }
}

impl Add for &CyclotomicSum {
    type Output = CyclotomicSum;

    fn add(self, rhs: &CyclotomicSum) -> CyclotomicSum {
        let m = self.m.max(rhs.m);
        let mut a = self.lift(m);
        for (x, y) in a.coeffs.iter_mut().zip(rhs.lift(m).coeffs) {
            *x += y;
        }
        a
    }
}

impl fmt::Display for CyclotomicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => format!("{c}"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} (z = exp(2 pi i/{}))", terms.join(" + "), 1u64 << self.m)
        }
    }
}

/// An element of `Z/8 ∪ {inf}`: an argument in eighth-turns, or infinity for
/// a vanishing sum. Infinity absorbs addition and negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sigma {
    Finite(u8),
    Infinity,
}

impl Sigma {
    pub fn new(v: i64) -> Self {
        Sigma::Finite(v.rem_euclid(8) as u8)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Sigma::Infinity)
    }
}

impl Add for Sigma {
    type Output = Sigma;

    fn add(self, rhs: Sigma) -> Sigma {
        match (self, rhs) {
            (Sigma::Finite(a), Sigma::Finite(b)) => Sigma::Finite((a + b) % 8),
            _ => Sigma::Infinity,
        }
    }
}

impl Neg for Sigma {
    type Output = Sigma;

    fn neg(self) -> Sigma {
        match self {
            Sigma::Finite(a) => Sigma::Finite((8 - a) % 8),
            Sigma::Infinity => Sigma::Infinity,
        }
    }
}

impl Sub for Sigma {
    type Output = Sigma;

    fn sub(self, rhs: Sigma) -> Sigma {
        self + (-rhs)
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Finite(a) => write!(f, "{a}"),
            Sigma::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sigma::Finite(a) => s.serialize_u8(*a),
            Sigma::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Sigma {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Sigma;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer in 0..8 or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Sigma, E> {
                if v < 8 {
                    Ok(Sigma::Finite(v as u8))
                } else {
                    Err(E::custom(format!("sigma {v} out of range")))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Sigma, E> {
                if (0..8).contains(&v) {
                    Ok(Sigma::Finite(v as u8))
                } else {
                    Err(E::custom(format!("sigma {v} out of range")))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Sigma, E> {
                match v {
                    "inf" => Ok(Sigma::Infinity),
                    _ => Err(E::custom(format!("unknown sigma {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Argument of a Gauss sum in eighth-turns, or infinity when it vanishes.
///
/// The zero test is exact; only the ray is read off in floating point.
pub fn cyclotomic_arg_eighths(z: &CyclotomicSum) -> Result<Sigma, AlgebraError> {
    if z.is_zero() {
        return Ok(Sigma::Infinity);
    }
    let (re, im) = z.eval();
    let angle = im.atan2(re) / (PI / 4.0);
    let j = angle.round();
    let off_ray = (angle - j) * PI / 4.0;
    if off_ray.abs() > ARG_TOLERANCE {
        return Err(AlgebraError::NotOnRay {
            angle_eighths: format!("{angle:.6}"),
        });
    }
    Ok(Sigma::new(j as i64))
}
