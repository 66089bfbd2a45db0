//! Dense univariate polynomials over the integers.
//!
//! This is the kernel underneath [`Scalar`](super::Scalar): numerators and
//! denominators are kept as `Poly` values, and the primitive polynomial
//! remainder sequence below supplies the gcd used for canonical forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in one variable with arbitrary-precision integer coefficients.
///
/// Coefficients are stored in ascending order of degree with no trailing
/// zeros, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
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

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    /// Number of low-order zero coefficients (the s-adic valuation).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Coefficients in reverse order: `s^deg * p(1/s)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += o;
        }
        Poly::from_coeffs(coeffs)
    }

    /// `self + other * s^k` without materialising the shifted operand.
    pub fn add_shifted(&self, other: &Poly, k: usize) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len() + k);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        for (i, o) in other.coeffs.iter().enumerate() {
            coeffs[i + k] += o;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Non-negative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.div_exact_scalar(&self.content())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        let mut r = self.clone();
        let db = b.degree();
        let lb = b.lc().clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lc().clone();
            // r <- lb * r - lr * s^shift * b
            let scaled = r.scale(&lb);
            let sub = b.scale(&lr).shift_up(shift);
            r = scaled.sub(&sub);
        }
        r
    }

    /// Greatest common divisor over `Z[s]` with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            if b.degree() == 0 {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c).normalize_sign()
    }

    pub fn normalize_sign(&self) -> Poly {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide `self` in `Z[s]`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let ld = d.lc();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(ld);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }

    /// Evaluates the polynomial at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        // (s^2 - 1) and (s - 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn gcd_carries_content() {
        let a = p(&[6, 6]);
        let b = p(&[4, 4]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), Poly::one());
    }

    #[test]
    fn div_exact_rejects_remainder() {
        assert!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])).is_none());
        assert!(p(&[1, 1]).div_exact(&p(&[0, 2])).is_none());
    }

    #[test]
    fn pseudo_remainder_matches_definition() {
        // a = 3s^3 + s + 1, b = 2s + 1 -> prem = 2^3 * a mod b
        let a = p(&[1, 1, 0, 3]);
        let b = p(&[1, 2]);
        let r = a.pseudo_rem(&b);
        assert!(r.is_constant());
        // a(-1/2) * 8 = (3*(-1/8) - 1/2 + 1) * 8 = -3 - 4 + 8 = 1
        assert_eq!(r, p(&[1]));
    }
}
