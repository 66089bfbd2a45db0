use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ScalarError;

/// Exact element of `Q(s)`, where `s = q^{1/2}`.
///
/// The value is `s^shift * num(s) / den(s)` with
/// * `num(0) != 0` and `den(0) != 0` (powers of `s` live in `shift`),
/// * `gcd(num, den) = 1` in `Z[s]`, integer content included,
/// * `den` has a positive leading coefficient.
///
/// Zero is `shift = 0, num = 0, den = 1`. These rules make the representation
/// unique, so derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: Poly,
    den: Poly,
}

/// Arithmetic selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`; division by zero is reported as an error.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            shift: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            shift: 0,
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    /// The rational number `n / d`.
    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Scalar::from_int(n).checked_div(&Scalar::from_int(d))
    }

    /// `s^e`, i.e. `q^{e/2}`.
    pub fn s_pow(e: i64) -> Self {
        Scalar {
            shift: e,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// `q^e = s^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Scalar::s_pow(2 * e)
    }

    /// Laurent polynomial `sum_i coeffs[i] * s^(low + i)`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        let poly = Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        Scalar::from_parts(low, poly, Poly::one())
    }

    pub(crate) fn from_parts(shift: i64, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        let shift = shift + vn as i64 - vd as i64;
        let mut num = if vn > 0 { num.shift_down(vn) } else { num };
        let mut den = if vd > 0 { den.shift_down(vd) } else { den };
        if den.is_constant() {
            let d = den.coeffs()[0].clone();
            let g = num.content().gcd(&d);
            if !g.is_one() {
                num = num.div_exact_scalar(&g);
                den = den.div_exact_scalar(&g);
            }
        } else {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial
    /// in `s` with integer coefficients.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Integer coefficients `(lowest exponent, coefficients)` when the value is
    /// a Laurent polynomial with machine-size coefficients.
    pub fn laurent_coeffs(&self) -> Option<(i64, Vec<i64>)> {
        if !self.den.is_one() {
            return None;
        }
        let cs: Option<Vec<i64>> = self
            .num
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).ok())
            .collect();
        Some((self.shift, cs?))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::from_parts(
            -self.shift,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The substitution `s -> 1/s` (equivalently `q -> q^{-1}`).
    pub fn invert_variable(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let shift = -self.shift - self.num.degree() as i64 + self.den.degree() as i64;
        Scalar::from_parts(shift, self.num.reversed(), self.den.reversed())
    }

    /// Evaluates at an integer value of `s`; `None` if the denominator vanishes
    /// or `s = 0` meets a negative power.
    pub fn eval_at(&self, s: i64) -> Option<(BigInt, BigInt)> {
        let x = BigInt::from(s);
        let mut n = self.num.eval(&x);
        let mut d = self.den.eval(&x);
        if d.is_zero() {
            return None;
        }
        if self.shift >= 0 {
            n *= x.pow(self.shift as u32);
        } else {
            if s == 0 {
                return None;
            }
            d *= x.pow((-self.shift) as u32);
        }
        let g = n.gcd(&d);
        if !g.is_zero() {
            n /= &g;
            d /= &g;
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }

    /// Numerator and denominator as polynomials in `s` with the `s`-power
    /// folded into whichever side keeps all exponents non-negative.
    fn display_parts(&self) -> (Poly, Poly) {
        if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.shift) as usize))
        }
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (deg, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match deg {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if deg == 1 {
                    write!(f, "s")?;
                } else {
                    write!(f, "s^{deg}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.display_parts();
        if d.is_one() {
            write_poly(f, &n)
        } else {
            write!(f, "(")?;
            write_poly(f, &n)?;
            write!(f, ")/(")?;
            write_poly(f, &d)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.shift.min(rhs.shift);
        let da = (self.shift - low) as usize;
        let db = (rhs.shift - low) as usize;
        if self.den == rhs.den {
            let num = self.num.shift_up(da).add_shifted(&rhs.num, db);
            if self.den.is_one() {
                return Scalar::from_parts(low, num, Poly::one());
            }
            return Scalar::from_parts(low, num, self.den.clone());
        }
        let left = self.num.mul(&rhs.den).shift_up(da);
        let num = left.add_shifted(&rhs.num.mul(&self.den), db);
        Scalar::from_parts(low, num, self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            // Laurent polynomials: the product is already canonical.
            return Scalar {
                shift,
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        Scalar::from_parts(shift, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    #[test]
    fn difference_of_squares() {
        let a = &q() - &Scalar::q_pow(-1);
        let b = &q() + &Scalar::q_pow(-1);
        assert_eq!(&a * &b, &Scalar::q_pow(2) - &Scalar::q_pow(-2));
    }

    #[test]
    fn rational_normalization() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = &Scalar::q_pow(2) - &Scalar::one();
        let den = &q() - &Scalar::one();
        let r = num.checked_div(&den).unwrap();
        assert_eq!(r, &q() + &Scalar::one());
        assert!(r.is_laurent_polynomial());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(scalar_arith(&q(), &Scalar::zero(), ArithOp::Div).is_err());
    }

    #[test]
    fn sign_and_content_are_canonical() {
        let a = Scalar::from_ratio(2, -4).unwrap();
        let b = Scalar::from_ratio(-1, 2).unwrap();
        assert_eq!(a, b);
        let x = (&q() - &Scalar::one())
            .checked_div(&(&Scalar::one() - &q()))
            .unwrap();
        assert_eq!(x, Scalar::from_int(-1));
    }

    #[test]
    fn display_matches_grammar() {
        let x = (&Scalar::s_pow(4).mul(Scalar::from_int(3)) - &Scalar::one())
            .checked_div(&Scalar::s_pow(2))
            .unwrap();
        assert_eq!(x.to_string(), "(3*s^4 - 1)/(s^2)");
        assert_eq!((&q() + &Scalar::one()).to_string(), "s^2 + 1");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_ratio(1, 2).unwrap().to_string(), "(1)/(2)");
    }

    #[test]
    fn invert_variable_on_laurent_and_fraction() {
        let a = Scalar::laurent(-2, &[1, 0, 3]); // s^-2 + 3
        assert_eq!(a.invert_variable(), Scalar::laurent(0, &[3, 0, 1]));
        let f = Scalar::one().checked_div(&(&q() - &Scalar::one())).unwrap();
        let g = Scalar::one()
            .checked_div(&(&Scalar::q_pow(-1) - &Scalar::one()))
            .unwrap();
        assert_eq!(f.invert_variable(), g);
    }

    #[test]
    fn pow_negative() {
        assert_eq!(q().pow(-3).unwrap(), Scalar::q_pow(-3));
        assert!(Scalar::zero().pow(-1).is_err());
        assert_eq!(Scalar::zero().pow(0).unwrap(), Scalar::one());
    }
}
