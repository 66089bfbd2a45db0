//! Schur polynomials `S_k`, the substituted symbols `S^+-_{i,k}` in the
//! commuting modes `h_{i,l}`, and the assembly of the raising action from
//! its current components.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::CartanData;
use crate::freealg::Element;
use crate::omega::XplusComponents;
use crate::scalars::{Coefficient, Scalar};
use crate::verma::HighestWeight;

/// Commuting indeterminates: `x_l` or the mode `h_{i,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    H(usize, i64),
}

impl Var {
    /// Degree for the derivation `d`.
    pub fn degree(&self) -> i64 {
        match *self {
            Var::X(l) => l as i64,
            Var::H(_, l) => l,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(l) => write!(f, "x{l}"),
            Var::H(i, l) => write!(f, "h[{i},{l}]"),
        }
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *m.entry(v).or_default() += e;
    }
    m.into_iter().collect()
}

/// Polynomial in commuting variables with coefficients in `Q(s)[c, 1/c]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(Vec::new(), &c);
        p
    }

    pub fn one() -> Self {
        CommPoly::constant(Coefficient::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(vec![(v, 1)], &Coefficient::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, by: &Coefficient) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * by));
        }
        out
    }

    pub fn constant_term(&self) -> Coefficient {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// The common `d`-degree of all monomials, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self
            .terms
            .keys()
            .map(|m| m.iter().map(|(v, e)| v.degree() * *e as i64).sum::<i64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Replaces every `x_l` by `f(l)`; other variables are kept.
    pub fn substitute(&self, f: impl Fn(u32) -> CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut t = CommPoly::constant(c.clone());
            for &(v, e) in m {
                let base = match v {
                    Var::X(l) => f(l),
                    other => CommPoly::var(other),
                };
                for _ in 0..e {
                    t = t.mul(&base);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (v, e) in m {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

fn rational(n: i64, d: i64) -> Coefficient {
    Scalar::from_ratio(n, d)
        .expect("nonzero denominator")
        .into()
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// `S_k` as the sum over partitions of `k` of `prod x_l^{m_l} / m_l!`.
pub fn schur_poly(k: u32) -> CommPoly {
    fn rec(rest: u32, max_part: u32, mono: &mut Monomial, denom: i64, out: &mut CommPoly) {
        if rest == 0 {
            out.add_term(mono.clone(), &rational(1, denom));
            return;
        }
        for l in (1..=max_part.min(rest)).rev() {
            for m in 1..=rest / l {
                mono.push((Var::X(l), m));
                rec(rest - l * m, l - 1, mono, denom * factorial(m), out);
                mono.pop();
            }
        }
    }
    let mut out = CommPoly::zero();
    rec(k, k, &mut Vec::new(), 1, &mut out);
    // monomials were built with descending variables
    let mut sorted = CommPoly::zero();
    for (m, c) in out.iter() {
        let mut m = m.clone();
        m.sort();
        sorted.add_term(m, c);
    }
    sorted
}

/// `S_0, ..., S_n` from `k S_k = sum_{l=1}^k l x_l S_{k-l}`.
pub fn schur_by_recursion(n: u32) -> Vec<CommPoly> {
    let mut out = vec![CommPoly::one()];
    for k in 1..=n {
        let mut acc = CommPoly::zero();
        for l in 1..=k {
            let t = CommPoly::var(Var::X(l)).mul(&out[(k - l) as usize]);
            acc = acc.add(&t.scale(&rational(l as i64, 1)));
        }
        out.push(acc.scale(&rational(1, k as i64)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `S^+-_{i,k}`: substitutes `x_l -> (q_i - q_i^{-1}) h_{i,+-l} gamma^{-+l/2}`
/// into `S_k`.
pub fn s_plus_minus(cd: &CartanData, i: usize, k: u32, sign: Sign) -> CommPoly {
    let qd: Coefficient = cd.qi_diff(i).into();
    let (hs, cs) = match sign {
        Sign::Plus => (1, -1),
        Sign::Minus => (-1, 1),
    };
    schur_poly(k).substitute(|l| {
        CommPoly::var(Var::H(i, hs * l as i64)).scale(&(&qd * &Coefficient::c_pow(cs * l as i64)))
    })
}

/// Modes `psi_{i,k} / K_i` for `k <= order`, as coefficients of
/// `exp((q_i - q_i^{-1}) sum_l h_{i,l} z^l)` computed by multiplying
/// truncated power series.
pub fn psi_modes(cd: &CartanData, i: usize, order: u32) -> Vec<CommPoly> {
    let n = order as usize;
    let qd: Coefficient = cd.qi_diff(i).into();
    let y: Vec<CommPoly> = (0..=n)
        .map(|l| match l {
            0 => CommPoly::zero(),
            l => CommPoly::var(Var::H(i, l as i64)).scale(&qd),
        })
        .collect();
    let series_mul = |a: &[CommPoly], b: &[CommPoly]| {
        let mut out = vec![CommPoly::zero(); n + 1];
        for (p, ap) in a.iter().enumerate() {
            for (r, br) in b.iter().enumerate().take(n + 1 - p) {
                out[p + r] = out[p + r].add(&ap.mul(br));
            }
        }
        out
    };
    let mut total = vec![CommPoly::zero(); n + 1];
    total[0] = CommPoly::one();
    let mut power = total.clone();
    for m in 1..=n {
        power = series_mul(&power, &y);
        let inv = rational(1, factorial(m as u32));
        for (t, p) in total.iter_mut().zip(&power) {
            *t = t.add(&p.scale(&inv));
        }
    }
    total
}

/// Checks `psi_{i,k} gamma^{-k/2} = K_i S^+_{i,k}` for `k <= order`.
pub fn psi_consistency(cd: &CartanData, i: usize, order: u32) -> bool {
    psi_modes(cd, i, order).iter().enumerate().all(|(k, psi)| {
        psi.scale(&Coefficient::c_pow(-(k as i64))) == s_plus_minus(cd, i, k as u32, Sign::Plus)
    })
}

/// `[x+_{i,k}, P] v_lambda` assembled from its components with `h -> 0`,
/// `gamma -> 1`, `K_i -> q^{lambda_i}`.
pub fn specialize_xplus(cd: &CartanData, comps: &XplusComponents, hw: &HighestWeight) -> Element {
    let i = comps.color;
    let k_i = Scalar::q_pow(hw.value(i));
    let k_inv = Scalar::q_pow(-hw.value(i));
    let mut out = Element::zero();
    for (p, q) in &comps.psi {
        let s = s_plus_minus(cd, i, *p as u32, Sign::Plus).constant_term();
        out.add_scaled(q, &s.scale(&k_i));
    }
    for (r, v) in &comps.phi {
        let s = s_plus_minus(cd, i, *r as u32, Sign::Minus).constant_term();
        out.add_scaled(v, &s.scale(&k_inv));
    }
    let inv = cd.qi_diff(i).inv().expect("q_i - q_i^{-1} is nonzero");
    out.specialize_gamma(&Scalar::one())
        .expect("c = 1 is nonzero")
        .scale_scalar(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order() {
        assert_eq!(schur_poly(0), CommPoly::one());
        assert_eq!(schur_poly(1), CommPoly::var(Var::X(1)));
        let x1 = CommPoly::var(Var::X(1));
        let s2 = CommPoly::var(Var::X(2)).add(&x1.mul(&x1).scale(&rational(1, 2)));
        assert_eq!(schur_poly(2), s2);
    }

    #[test]
    fn recursion_agrees() {
        let rec = schur_by_recursion(6);
        for k in 0..=6 {
            assert_eq!(schur_poly(k), rec[k as usize], "k = {k}");
        }
    }

    #[test]
    fn substituted_symbols() {
        let cd = CartanData::from_label("A1").unwrap();
        assert_eq!(s_plus_minus(&cd, 1, 0, Sign::Plus), CommPoly::one());
        let expect = CommPoly::var(Var::H(1, 1))
            .scale(&(&Coefficient::from(cd.qi_diff(1)) * &Coefficient::c_pow(-1)));
        assert_eq!(s_plus_minus(&cd, 1, 1, Sign::Plus), expect);
        assert_eq!(
            s_plus_minus(&cd, 1, 2, Sign::Plus).homogeneous_degree(),
            Some(2)
        );
        assert_eq!(
            s_plus_minus(&cd, 1, 3, Sign::Minus).homogeneous_degree(),
            Some(-3)
        );
    }

    #[test]
    fn psi_side_bookkeeping() {
        let cd = CartanData::from_label("C2").unwrap();
        assert!(psi_consistency(&cd, 1, 4));
        assert!(psi_consistency(&cd, 2, 4));
    }
}
