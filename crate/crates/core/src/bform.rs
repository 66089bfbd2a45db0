//! The symmetric invariant form on the free model, Gram matrices and exact
//! rank.
//!
//! The form is determined by `(1, 1) = 1` and the adjunction
//! `(x_{i,m} a, b) = (a, Omega_psi_i(-m) b)`; stripping letters off the left
//! argument terminates because every step shortens it.

use rayon::prelude::*;

use crate::cartan::CartanData;
use crate::freealg::{Element, Letter, Word};
use crate::linalg::{rank_coefficient, rank_scalar};
use crate::omega::omega_psi;
use crate::scalars::{Coefficient, Scalar, ScalarError};

fn pair_word(cd: &CartanData, w: &[Letter], b: &Element) -> Coefficient {
    let mut cur = b.clone();
    for l in w {
        if cur.is_zero() {
            return Coefficient::zero();
        }
        cur = omega_psi(cd, l.color, -l.index, &cur);
    }
    cur.coeff(&[])
}

/// The form `(a, b)`, bilinear over the coefficient ring.
pub fn pair(cd: &CartanData, a: &Element, b: &Element) -> Coefficient {
    let mut out = Coefficient::zero();
    for (w, c) in a.iter() {
        let v = pair_word(cd, w, b);
        if !v.is_zero() {
            out.add_assign_ref(&(c * &v));
        }
    }
    out
}

/// `G[a][b] = (a, b)` over the given words; entries are computed in parallel.
pub fn gram(cd: &CartanData, words: &[Word]) -> Vec<Vec<Coefficient>> {
    let elems: Vec<Element> = words.iter().cloned().map(Element::from_word).collect();
    words
        .par_iter()
        .map(|a| elems.iter().map(|b| pair_word(cd, a, b)).collect())
        .collect()
}

/// Exact rank, over `Q(s)` after substituting `gamma = gamma_value` or over
/// the fraction field in `c` when no value is given.
pub fn rank(m: &[Vec<Coefficient>], gamma_value: Option<&Scalar>) -> Result<usize, ScalarError> {
    match gamma_value {
        None => Ok(rank_coefficient(m)),
        Some(g) => {
            let c = sqrt_gamma(g)?;
            let rows = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.specialize(&c))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(rank_scalar(&rows))
        }
    }
}

/// A value of `c = gamma^{1/2}` for a gamma given as `+-s^{2k}` or `1`.
/// Only even exponents of `c` appear in form values, so the choice of root
/// does not matter.
pub fn sqrt_gamma(g: &Scalar) -> Result<Scalar, ScalarError> {
    if g.is_one() {
        return Ok(Scalar::one());
    }
    if let Some((low, coeffs)) = g.laurent_coeffs() {
        if coeffs == [1] && low % 2 == 0 {
            return Ok(Scalar::s_pow(low / 2));
        }
    }
    Err(ScalarError::NotInvertible(format!(
        "gamma value {g} has no square root of the form s^k"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::word;

    fn a1() -> CartanData {
        CartanData::from_label("A1").unwrap()
    }

    #[test]
    fn normalization() {
        assert!(pair(&a1(), &Element::one(), &Element::one()).is_one());
        assert!(pair(&a1(), &Element::one(), &Element::letter(1, 0)).is_zero());
    }

    #[test]
    fn single_letters() {
        let cd = a1();
        for m in -2..=2 {
            for n in -2..=2 {
                let v = pair(&cd, &Element::letter(1, m), &Element::letter(1, n));
                let expect = if m == n {
                    Coefficient::gamma_pow(-m)
                } else {
                    Coefficient::zero()
                };
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn square_of_zero_mode() {
        let cd = a1();
        let e = Element::from_word(word(&[(1, 0), (1, 0)]));
        let expect: Coefficient = (&Scalar::one() + &Scalar::q_pow(2)).into();
        assert_eq!(pair(&cd, &e, &e), expect);
    }

    #[test]
    fn gram_block_structure() {
        let cd = CartanData::from_label("A2").unwrap();
        let g = gram(&cd, &[word(&[(1, 0)]), word(&[(2, 0)])]);
        assert!(g[0][1].is_zero() && g[1][0].is_zero());
        assert!(g[0][0].is_one() && g[1][1].is_one());
        assert_eq!(gram(&cd, &[vec![]]), vec![vec![Coefficient::one()]]);
    }

    #[test]
    fn two_by_two_gram() {
        let cd = a1();
        let g = gram(&cd, &[word(&[(1, -1), (1, 1)]), word(&[(1, 0), (1, 0)])]);
        assert_eq!(g[0][1], g[1][0]);
        let at1: Vec<Vec<Scalar>> = g
            .iter()
            .map(|r| r.iter().map(|x| x.at_c_one()).collect())
            .collect();
        let q = Scalar::q_pow;
        assert_eq!(at1[0][0], &(&Scalar::one() + &q(6)) - &q(2));
        assert_eq!(at1[0][1], &q(4) - &Scalar::one());
        assert_eq!(at1[1][1], &Scalar::one() + &q(2));
        assert_eq!(rank(&g, Some(&Scalar::one())).unwrap(), 2);
        assert_eq!(rank(&g, None).unwrap(), 2);
    }

    #[test]
    fn gamma_roots() {
        assert_eq!(sqrt_gamma(&Scalar::q_pow(3)).unwrap(), Scalar::s_pow(3));
        assert!(sqrt_gamma(&Scalar::from_int(2)).is_err());
    }
}
