use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Scalar, ScalarError};

/// Laurent polynomial in the central variable `c = gamma^{1/2}` with
/// [`Scalar`] coefficients.
///
/// Terms are kept sorted by exponent of `c` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: Vec<(i64, Scalar)>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Coefficient::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Coefficient::monomial(0, s)
    }

    /// `s * c^e`.
    pub fn monomial(e: i64, s: Scalar) -> Self {
        if s.is_zero() {
            Coefficient::zero()
        } else {
            Coefficient {
                terms: vec![(e, s)],
            }
        }
    }

    /// `c^e = gamma^{e/2}`.
    pub fn c_pow(e: i64) -> Self {
        Coefficient::monomial(e, Scalar::one())
    }

    /// `gamma^e = c^{2e}`.
    pub fn gamma_pow(e: i64) -> Self {
        Coefficient::c_pow(2 * e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut out = Coefficient::zero();
        for (e, s) in terms {
            out.add_term(e, &s);
        }
        out
    }

    pub fn terms(&self) -> &[(i64, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The coefficient as a plain scalar when no power of `c` is present.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(0, s)] => Some(s.clone()),
            _ => None,
        }
    }

    /// `Some((e, s))` when the coefficient is the single term `s * c^e`.
    pub fn as_monomial(&self) -> Option<(i64, &Scalar)> {
        match self.terms.as_slice() {
            [(e, s)] => Some((*e, s)),
            _ => None,
        }
    }

    pub fn coeff_of(&self, e: i64) -> Scalar {
        self.terms
            .binary_search_by_key(&e, |(x, _)| *x)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn add_term(&mut self, e: i64, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => {
                let v = &self.terms[i].1 + s;
                if v.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = v;
                }
            }
            Err(i) => self.terms.insert(i, (e, s.clone())),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Coefficient) {
        for (e, s) in &other.terms {
            self.add_term(*e, s);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Coefficient {
        if s.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(e, x)| (*e, x * s)).collect(),
        }
    }

    /// Multiplies by `c^k`.
    pub fn shift_c(&self, k: i64) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    /// Substitutes a value for `c` and sums.
    pub fn specialize(&self, c_value: &Scalar) -> Result<Scalar, ScalarError> {
        if c_value.is_zero() {
            return Err(ScalarError::ZeroSubstitution);
        }
        let mut acc = Scalar::zero();
        for (e, s) in &self.terms {
            acc += &(s * &c_value.pow(*e)?);
        }
        Ok(acc)
    }

    /// Sum of all scalar parts: the value at `c = 1`.
    pub fn at_c_one(&self) -> Scalar {
        self.terms.iter().map(|(_, s)| s.clone()).sum()
    }

    /// `s -> 1/s` applied to every scalar part.
    pub fn invert_variable(&self) -> Coefficient {
        Coefficient {
            terms: self
                .terms
                .iter()
                .map(|(e, s)| (*e, s.invert_variable()))
                .collect(),
        }
    }

    /// `c -> 1/c`.
    pub fn invert_c(&self) -> Coefficient {
        Coefficient::from_terms(self.terms.iter().map(|(e, s)| (-e, s.clone())))
    }

    /// Exact quotient in `Q(s)[c, 1/c]`; `None` when the division leaves a
    /// remainder. Division by zero is an error.
    pub fn exact_div(&self, d: &Coefficient) -> Result<Option<Coefficient>, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Coefficient::zero()));
        }
        let d_low = d.min_exp().unwrap_or(0);
        let d_top = d.max_exp().unwrap_or(0);
        let lead_inv = d.coeff_of(d_top).inv()?;
        let mut rem = self.clone();
        let mut quot = Coefficient::zero();
        // Long division from the top exponent down; once the remainder's span
        // is narrower than the divisor's the division cannot be exact.
        while !rem.is_zero() {
            let r_top = rem.max_exp().unwrap();
            let r_low = rem.min_exp().unwrap();
            if r_top - r_low < d_top - d_low {
                return Ok(None);
            }
            let e = r_top - d_top;
            let f = &rem.coeff_of(r_top) * &lead_inv;
            quot.add_term(e, &f);
            let sub = d.shift_c(e).scale(&f);
            rem = &rem - &sub;
        }
        Ok(Some(quot))
    }

    /// Multiplicative inverse; only `c`-monomials are units.
    pub fn inv(&self) -> Result<Coefficient, ScalarError> {
        match self.as_monomial() {
            Some((e, s)) => Ok(Coefficient::monomial(-e, s.inv()?)),
            None if self.is_zero() => Err(ScalarError::DivisionByZero),
            None => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }
}

impl From<Scalar> for Coefficient {
    fn from(s: Scalar) -> Self {
        Coefficient::from_scalar(s)
    }
}

impl Add<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, sa) = &self.terms[i];
            let (eb, sb) = &rhs.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, sa.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, sb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = sa + sb;
                    if !v.is_zero() {
                        out.push((*ea, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Coefficient { terms: out }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(e, s)| (*e, -s)).collect(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl Sub<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.terms.len() == 1 {
            let (e, s) = &self.terms[0];
            return rhs.scale(s).shift_c(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, s) = &rhs.terms[0];
            return self.scale(s).shift_c(*e);
        }
        let mut out = Coefficient::zero();
        for (ea, sa) in &self.terms {
            for (eb, sb) in &rhs.terms {
                out.add_term(ea + eb, &(sa * sb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: &Coefficient) -> Coefficient {
                (&self).$m(rhs)
            }
        }
        impl $tr<Coefficient> for &Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        for (n, (e, s)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "({s})")?,
                1 => write!(f, "({s})*c")?,
                e => write!(f, "({s})*c^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialize_at_one() {
        let x = &Coefficient::c_pow(2) + &Coefficient::c_pow(-2);
        assert_eq!(x.specialize(&Scalar::one()).unwrap(), Scalar::from_int(2));
        let qc = Coefficient::monomial(1, Scalar::q_pow(1));
        assert_eq!(qc.specialize(&Scalar::one()).unwrap(), Scalar::q_pow(1));
        for m in -5..=5 {
            assert!(Coefficient::gamma_pow(-m)
                .specialize(&Scalar::one())
                .unwrap()
                .is_one());
        }
        assert_eq!(
            x.specialize(&Scalar::zero()),
            Err(ScalarError::ZeroSubstitution)
        );
    }

    #[test]
    fn exact_division() {
        // (c^2 - 1) / (c - 1) = c + 1
        let a = &Coefficient::c_pow(2) - &Coefficient::one();
        let b = &Coefficient::c_pow(1) - &Coefficient::one();
        let q = a.exact_div(&b).unwrap().unwrap();
        assert_eq!(q, &Coefficient::c_pow(1) + &Coefficient::one());
        assert!(Coefficient::one().exact_div(&b).unwrap().is_none());
        assert!(a.exact_div(&Coefficient::zero()).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = Coefficient::monomial(3, Scalar::q_pow(1));
        assert!((&a - &a).is_zero());
        assert_eq!(a.to_string(), "(s^2)*c^3");
    }
}
