//! Minkowski metric `g = diag(+1, -1, -1, -1)` and contraction helpers.

use crate::scalar::{ComplexScalar, Rational};
use num_traits::{One, Zero};

/// Diagonal entry `g_{μμ}` as a sign.
pub fn sign(mu: usize) -> i64 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

pub fn g(mu: usize, nu: usize) -> i64 {
    if mu == nu {
        sign(mu)
    } else {
        0
    }
}

/// `a·b` over rationals.
pub fn dot(a: &[Rational; 4], b: &[Rational; 4]) -> Rational {
    (0..4).fold(Rational::zero(), |acc, mu| {
        let t = &a[mu] * &b[mu];
        if sign(mu) > 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// `k·a` for real `k` and complex `a` (bilinear, no conjugation).
pub fn dot_cx(k: &[Rational; 4], a: &[ComplexScalar]) -> ComplexScalar {
    let mut acc = ComplexScalar::new(Rational::zero(), Rational::zero());
    for mu in 0..4 {
        let t = &a[mu] * &k[mu];
        if sign(mu) > 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

pub fn dot_f64(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

pub fn signed(mu: usize, x: Rational) -> Rational {
    if sign(mu) > 0 {
        x
    } else {
        -x
    }
}

pub fn one_hot(mu: usize) -> [Rational; 4] {
    let mut v: [Rational; 4] = Default::default();
    v[mu] = Rational::one();
    v
}
