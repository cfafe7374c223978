//! Exact polynomial arithmetic in `u = v - v^{-1}` and in `q`.

use crate::error::HeckeError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul};

/// A polynomial in `u = v - v^{-1}` with integer coefficients; index `i`
/// holds the coefficient of `u^i` and the representation has no trailing
/// zeros (the zero polynomial is the empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        UPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c * u^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with nonzero coefficient; `None` encodes degree
    /// minus infinity for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Every exponent with a nonzero coefficient has the same parity.
    pub fn parity_homogeneous(&self) -> Option<usize> {
        let mut parity = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                match parity {
                    None => parity = Some(i % 2),
                    Some(p) if p != i % 2 => return None,
                    _ => {}
                }
            }
        }
        parity.or(Some(0))
    }

    pub fn scale(&self, c: i64) -> UPoly {
        if c == 0 {
            return UPoly::zero();
        }
        let k = BigInt::from(c);
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x * &k).collect())
    }

    /// Multiply by `u` (degree shift by one).
    pub fn mul_u(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Evaluate at a rational point, exactly (used by numeric cross-checks).
    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            let cf = c.to_string().parse::<f64>().unwrap_or(f64::NAN);
            acc = acc * u + cf;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    serde_json::Value::Number(
                        c.to_string().parse().expect("integer literal is a JSON number"),
                    )
                })
                .collect(),
        )
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
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
        UPoly::from_coeffs(coeffs)
    }
}

pub fn upoly_add(f: &UPoly, g: &UPoly) -> UPoly {
    f + g
}

pub fn upoly_mul(f: &UPoly, g: &UPoly) -> UPoly {
    f * g
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("u")?,
                1 => write!(f, "{c}*u")?,
                _ if c.is_one() => write!(f, "u^{i}")?,
                _ => write!(f, "{c}*u^{i}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial in `q` with integer coefficients, trailing-zero free.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    serde_json::Value::Number(
                        c.to_string().parse().expect("integer literal is a JSON number"),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("q")?,
                1 => write!(f, "{c}*q")?,
                _ if c.is_one() => write!(f, "q^{i}")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Expand `n * q^{len/2} * f(sqrt(q) - 1/sqrt(q))` as an exact polynomial in
/// `q`, substituting `u = (q-1)/sqrt(q)` and clearing half-integer powers.
///
/// Requires `len` and every exponent of `f` to agree mod 2 (and `len` to
/// dominate the degree), which holds for every valid class polynomial.
pub fn eval_point_count(f: &UPoly, len: u64, n: u64) -> Result<QPoly, HeckeError> {
    let mut total: Vec<BigInt> = Vec::new();
    for (d, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if (len as i64 - d as i64) % 2 != 0 || (d as u64) > len {
            return Err(HeckeError::ParityViolation { len, degree: d });
        }
        // c * (q-1)^d * q^{(len-d)/2}
        let shift = ((len - d as u64) / 2) as usize;
        let mut term = vec![BigInt::zero(); shift + d + 1];
        // binomial expansion of (q-1)^d
        let mut binom = BigInt::one();
        for j in 0..=d {
            // coefficient of q^j in (q-1)^d is (-1)^{d-j} C(d,j)
            let sign = if (d - j) % 2 == 0 { 1 } else { -1 };
            term[shift + j] += c * &binom * BigInt::from(sign);
            if j < d {
                binom = binom * BigInt::from((d - j) as i64) / BigInt::from(j as i64 + 1);
            }
        }
        if total.len() < term.len() {
            total.resize(term.len(), BigInt::zero());
        }
        for (i, t) in term.into_iter().enumerate() {
            total[i] += t;
        }
    }
    let scale = BigInt::from(n);
    Ok(QPoly::from_coeffs(
        total.into_iter().map(|c| c * &scale).collect(),
    ))
}
