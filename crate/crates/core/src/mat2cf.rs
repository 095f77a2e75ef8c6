//! Exact 2×2 integer matrices, the `η` family, finite-order classification and
//! continued-fraction convergents.
//!
//! All arithmetic is checked: any intermediate that leaves `i64` is reported as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

fn add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(Error::Overflow)
}

fn sub(x: i64, y: i64) -> Result<i64> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

fn mul(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y).ok_or(Error::Overflow)
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);
    pub const NEG_IDENTITY: Mat2 = Mat2::new(-1, 0, 0, -1);
    /// The coordinate swap `[[0, 1], [1, 0]]`.
    pub const TAU: Mat2 = Mat2::new(0, 1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// `η(i) = [[i, -1], [1, 0]]`.
    pub const fn eta(i: i64) -> Self {
        Mat2::new(i, -1, 1, 0)
    }

    pub fn checked_mul(&self, rhs: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            a: add(mul(self.a, rhs.a)?, mul(self.b, rhs.c)?)?,
            b: add(mul(self.a, rhs.b)?, mul(self.b, rhs.d)?)?,
            c: add(mul(self.c, rhs.a)?, mul(self.d, rhs.c)?)?,
            d: add(mul(self.c, rhs.b)?, mul(self.d, rhs.d)?)?,
        })
    }

    pub fn det(&self) -> Result<i64> {
        sub(mul(self.a, self.d)?, mul(self.b, self.c)?)
    }

    pub fn trace(&self) -> Result<i64> {
        add(self.a, self.d)
    }

    pub fn checked_neg(&self) -> Result<Mat2> {
        let n = |x: i64| x.checked_neg().ok_or(Error::Overflow);
        Ok(Mat2::new(n(self.a)?, n(self.b)?, n(self.c)?, n(self.d)?))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det()?;
        let n = |x: i64| x.checked_neg().ok_or(Error::Overflow);
        match det {
            1 => Ok(Mat2::new(self.d, n(self.b)?, n(self.c)?, self.a)),
            -1 => Ok(Mat2::new(n(self.d)?, self.b, self.c, n(self.a)?)),
            det => Err(Error::NotUnimodular { det }),
        }
    }

    /// Matrix-vector product with a column vector `(x, y)`.
    pub fn apply(&self, v: [i64; 2]) -> Result<[i64; 2]> {
        Ok([
            add(mul(self.a, v[0])?, mul(self.b, v[1])?)?,
            add(mul(self.c, v[0])?, mul(self.d, v[1])?)?,
        ])
    }

    pub fn pow(&self, k: u32) -> Result<Mat2> {
        let mut acc = Mat2::IDENTITY;
        let mut base = *self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::IDENTITY
    }

    pub fn is_neg_identity(&self) -> bool {
        *self == Mat2::NEG_IDENTITY
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn eta(i: i64) -> Mat2 {
    Mat2::eta(i)
}

/// `η(c₁)·η(c₂)·…·η(cₙ)`, multiplied left to right. The empty product is the
/// identity.
pub fn eta_product(seq: &[i64]) -> Result<Mat2> {
    seq.iter()
        .try_fold(Mat2::IDENTITY, |acc, &c| acc.checked_mul(&Mat2::eta(c)))
}

/// Order of an element of `GL(2, ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderResult {
    Finite(u32),
    Infinite,
}

impl OrderResult {
    pub fn finite(self) -> Option<u32> {
        match self {
            OrderResult::Finite(k) => Some(k),
            OrderResult::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, OrderResult::Finite(_))
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(k) => write!(f, "{k}"),
            OrderResult::Infinite => f.write_str("infinite"),
        }
    }
}

/// Order of a unimodular matrix from its trace and determinant.
///
/// A finite-order element of `GL(2, ℤ)` has trace in `[-2, 2]` and order in
/// `{1, 2, 3, 4, 6}`; the characteristic polynomial pins the order down
/// exactly. Traces `±2` are finite only for `±id` (otherwise the element is
/// a nontrivial unipotent up to sign).
pub fn matrix_order(m: &Mat2) -> Result<OrderResult> {
    let det = m.det()?;
    let tr = m.trace()?;
    match det {
        1 => Ok(if m.is_identity() {
            OrderResult::Finite(1)
        } else if m.is_neg_identity() {
            OrderResult::Finite(2)
        } else {
            match tr {
                -1 => OrderResult::Finite(3),
                0 => OrderResult::Finite(4),
                1 => OrderResult::Finite(6),
                _ => OrderResult::Infinite,
            }
        }),
        -1 => Ok(if tr == 0 {
            OrderResult::Finite(2)
        } else {
            OrderResult::Infinite
        }),
        det => Err(Error::NotUnimodular { det }),
    }
}

/// Numerator/denominator pair `(A_ν, B_ν)` of a convergent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentPair {
    pub num: i64,
    pub den: i64,
}

/// Convergents `(A₀,B₀), …, (Aₙ,Bₙ)` of `b₀ + a₁|/|b₁ + a₂|/|b₂ + …`, given the
/// coefficient pairs `(a_ν, b_ν)` for `ν ≥ 1`.
pub fn convergents(b0: i64, coeffs: &[(i64, i64)], n: usize) -> Result<Vec<ConvergentPair>> {
    if n > coeffs.len() {
        return Err(Error::TooFewCoefficients {
            requested: n,
            available: coeffs.len(),
        });
    }
    let mut out = Vec::with_capacity(n + 1);
    let (mut num_prev, mut den_prev) = (1i64, 0i64);
    let (mut num, mut den) = (b0, 1i64);
    out.push(ConvergentPair { num, den });
    for &(a, b) in &coeffs[..n] {
        let next_num = add(mul(b, num)?, mul(a, num_prev)?)?;
        let next_den = add(mul(b, den)?, mul(a, den_prev)?)?;
        (num_prev, den_prev) = (num, den);
        (num, den) = (next_num, next_den);
        out.push(ConvergentPair { num, den });
    }
    Ok(out)
}

/// Convergents with every partial numerator `a_ν = -1`.
pub fn convergents_neg_one(b0: i64, bs: &[i64], n: usize) -> Result<Vec<ConvergentPair>> {
    let coeffs: Vec<(i64, i64)> = bs.iter().map(|&b| (-1, b)).collect();
    convergents(b0, &coeffs, n)
}
