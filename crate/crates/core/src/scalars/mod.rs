//! Exact arithmetic in `Q(s)` with `s = q^{1/2}`, extended by the central
//! unit `c = gamma^{1/2}`.

mod coefficient;
mod parse;
mod poly;
mod scalar;

pub use coefficient::Coefficient;
pub use parse::ParseError;
pub use scalar::{scalar_arith, ArithOp, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution of zero for an invertible variable")]
    ZeroSubstitution,
    #[error("not invertible in the coefficient ring: {0}")]
    NotInvertible(String),
}

/// Balanced quantum integer `[n]_d = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn quantum_integer(n: i64, d: i64) -> Scalar {
    assert!(d > 0, "symmetrizer must be positive");
    if n == 0 {
        return Scalar::zero();
    }
    let sign = n.signum();
    let n = n.abs();
    // q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    let mut acc = Scalar::zero();
    for t in 0..n {
        acc += &Scalar::q_pow(d * (n - 1 - 2 * t));
    }
    if sign < 0 {
        -acc
    } else {
        acc
    }
}

/// `q_i = q^{d}`.
pub fn q_i(d: i64) -> Scalar {
    Scalar::q_pow(d)
}

/// `q_i - q_i^{-1}` for symmetrizer `d`.
pub fn q_i_diff(d: i64) -> Scalar {
    &Scalar::q_pow(d) - &Scalar::q_pow(-d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integer_small_cases() {
        assert!(quantum_integer(0, 1).is_zero());
        assert!(quantum_integer(1, 3).is_one());
        assert_eq!(
            quantum_integer(2, 1),
            &Scalar::q_pow(1) + &Scalar::q_pow(-1)
        );
    }

    #[test]
    fn quantum_integer_matches_division() {
        for d in 1..=3 {
            for n in -6..=6 {
                let direct = (&Scalar::q_pow(d * n) - &Scalar::q_pow(-d * n))
                    .checked_div(&q_i_diff(d))
                    .unwrap();
                let qi = quantum_integer(n, d);
                assert_eq!(qi, direct, "n={n} d={d}");
                assert!(qi.is_laurent_polynomial());
                assert_eq!(quantum_integer(-n, d), -qi);
            }
        }
    }
}
