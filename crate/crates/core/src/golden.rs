//! Exact arithmetic in `Z[ε]`, `ε² = ε + 1`, and the ε-invariant of a spine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::spine::DualSpine;
use crate::subpoly::{enumerate_simple_subpolyhedra, SubpolyError};

/// `(1 + √5) / 2`.
pub const EPSILON_F64: f64 = 1.618_033_988_749_895;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenError {
    #[error("integer overflow in Z[eps] arithmetic")]
    Overflow,
    #[error(transparent)]
    Subpoly(#[from] SubpolyError),
}

/// The element `a + b·ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GoldenNumber {
    pub a: i128,
    pub b: i128,
}

impl GoldenNumber {
    pub const ZERO: GoldenNumber = GoldenNumber { a: 0, b: 0 };
    pub const ONE: GoldenNumber = GoldenNumber { a: 1, b: 0 };
    pub const EPSILON: GoldenNumber = GoldenNumber { a: 0, b: 1 };

    pub const fn new(a: i128, b: i128) -> Self {
        Self { a, b }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, GoldenError> {
        Ok(Self {
            a: self.a.checked_add(rhs.a).ok_or(GoldenError::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<Self, GoldenError> {
        Ok(Self {
            a: self.a.checked_neg().ok_or(GoldenError::Overflow)?,
            b: self.b.checked_neg().ok_or(GoldenError::Overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, GoldenError> {
        self.checked_add(rhs.checked_neg()?)
    }

    /// `(a1 + b1ε)(a2 + b2ε) = (a1a2 + b1b2) + (a1b2 + a2b1 + b1b2)ε`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, GoldenError> {
        let m = |x: i128, y: i128| x.checked_mul(y).ok_or(GoldenError::Overflow);
        let bb = m(self.b, rhs.b)?;
        let a = m(self.a, rhs.a)?.checked_add(bb).ok_or(GoldenError::Overflow)?;
        let b = m(self.a, rhs.b)?
            .checked_add(m(rhs.a, self.b)?)
            .and_then(|x| x.checked_add(bb))
            .ok_or(GoldenError::Overflow)?;
        Ok(Self { a, b })
    }

    pub fn to_f64(self) -> f64 {
        // multiply by ε until the coefficients agree in sign, then scale back
        let (mut a, mut b, mut shift) = (self.a, self.b, 0i32);
        while (a < 0 && b > 0) || (a > 0 && b < 0) {
            (a, b) = (b, a + b);
            shift += 1;
        }
        (a as f64 + b as f64 * EPSILON_F64) * EPSILON_F64.powi(-shift)
    }

    /// `(a,b)`.
    pub fn machine_form(self) -> String {
        format!("({},{})", self.a, self.b)
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*eps", self.a, self.b)
    }
}

// Operator forms panic on overflow instead of wrapping.
impl Add for GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("Z[eps] addition overflowed")
    }
}

impl Sub for GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("Z[eps] subtraction overflowed")
    }
}

impl Mul for GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("Z[eps] multiplication overflowed")
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> Self {
        self.checked_neg().expect("Z[eps] negation overflowed")
    }
}

pub fn golden_mul(x: GoldenNumber, y: GoldenNumber) -> Result<GoldenNumber, GoldenError> {
    x.checked_mul(y)
}

/// Fibonacci numbers extended to negative indices by `F(-n) = (-1)^(n+1) F(n)`.
fn fibonacci(k: i64) -> Result<i128, GoldenError> {
    let n = k.unsigned_abs();
    let (mut prev, mut cur) = (0i128, 1i128); // F(0), F(1)
    if n == 0 {
        return Ok(0);
    }
    for _ in 1..n {
        let next = prev.checked_add(cur).ok_or(GoldenError::Overflow)?;
        prev = cur;
        cur = next;
    }
    if k < 0 && n.is_multiple_of(2) {
        Ok(-cur)
    } else {
        Ok(cur)
    }
}

/// `ε^k = F(k)·ε + F(k-1)` for any integer `k`.
pub fn golden_pow(k: i64) -> Result<GoldenNumber, GoldenError> {
    let prev = k.checked_sub(1).ok_or(GoldenError::Overflow)?;
    Ok(GoldenNumber {
        a: fibonacci(prev)?,
        b: fibonacci(k)?,
    })
}

pub fn golden_to_float(x: GoldenNumber) -> f64 {
    x.to_f64()
}

/// `t(P) = Σ_{Q ∈ F(P)} (-1)^{v(Q)} ε^{χ(Q) - v(Q)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonInvariant {
    pub value: GoldenNumber,
    /// Number of simple subpolyhedra summed over.
    pub term_count: usize,
}

/// `(-1)^v ε^(χ - v)`.
pub fn epsilon_weight(v: usize, chi: i64) -> Result<GoldenNumber, GoldenError> {
    let w = golden_pow(chi - v as i64)?;
    if v % 2 == 1 {
        w.checked_neg()
    } else {
        Ok(w)
    }
}

pub fn epsilon_invariant(spine: &DualSpine) -> Result<EpsilonInvariant, GoldenError> {
    let members = enumerate_simple_subpolyhedra(spine)?;
    let mut value = GoldenNumber::ZERO;
    for m in &members.members {
        value = value.checked_add(epsilon_weight(m.v, m.chi)?)?;
    }
    Ok(EpsilonInvariant {
        value,
        term_count: members.len(),
    })
}
