//! The reduced imaginary Verma module at zero central charge, modelled on
//! the free algebra with `gamma = 1`.

use serde::Serialize;
use thiserror::Error;

use crate::cartan::CartanData;
use crate::freealg::{weight_of, Element, Letter};
use crate::omega::{omega_phi, omega_psi};
use crate::scalars::{Coefficient, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("highest weight has {got} entries, rank is {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("vector carries a gamma-dependent coefficient")]
    GammaDependent,
}

/// Integer values `lambda(h_i)` and `lambda(d)`; the central charge is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighestWeight {
    pub lambda: Vec<i64>,
    pub lambda_d: i64,
}

impl HighestWeight {
    pub fn new(cd: &CartanData, lambda: Vec<i64>, lambda_d: i64) -> Result<Self, VermaError> {
        if lambda.len() != cd.rank() {
            return Err(VermaError::RankMismatch {
                got: lambda.len(),
                rank: cd.rank(),
            });
        }
        Ok(HighestWeight { lambda, lambda_d })
    }

    pub fn value(&self, i: usize) -> i64 {
        self.lambda[i - 1]
    }
}

/// `P v_lambda` for a gamma-free element `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VermaVector {
    pub elem: Element,
    pub hw: HighestWeight,
}

impl VermaVector {
    pub fn highest(hw: &HighestWeight) -> Self {
        VermaVector {
            elem: Element::one(),
            hw: hw.clone(),
        }
    }

    pub fn new(elem: Element, hw: &HighestWeight) -> Result<Self, VermaError> {
        if !elem.is_gamma_free() {
            return Err(VermaError::GammaDependent);
        }
        Ok(VermaVector {
            elem,
            hw: hw.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    fn with(&self, elem: Element) -> Self {
        VermaVector {
            elem,
            hw: self.hw.clone(),
        }
    }
}

pub fn act_xminus(i: usize, k: i64, v: &VermaVector) -> VermaVector {
    v.with(v.elem.left_mul_letter(Letter::new(i, k)))
}

fn at_gamma_one(e: &Element) -> Element {
    e.specialize_gamma(&Scalar::one())
        .expect("c = 1 is nonzero")
}

/// `(q_i - q_i^{-1})^{-1} (q^{lambda_i} Omega_psi_i(k) P - q^{-lambda_i} Omega_phi_i(k) P)`
/// at `gamma = 1`.
pub fn act_xplus(cd: &CartanData, i: usize, k: i64, v: &VermaVector) -> VermaVector {
    let lam = v.hw.value(i);
    let psi = omega_psi(cd, i, k, &v.elem).scale_scalar(&Scalar::q_pow(lam));
    let phi = omega_phi(cd, i, k, &v.elem).scale_scalar(&Scalar::q_pow(-lam));
    let inv = cd.qi_diff(i).inv().expect("q_i - q_i^{-1} is nonzero");
    v.with(at_gamma_one(&(&psi - &phi)).scale_scalar(&inv))
}

/// Multiplies each word of weight `(n; m)` by `q^{lambda_i - sum_j n_j (alpha_i|alpha_j)}`.
pub fn act_k(cd: &CartanData, i: usize, v: &VermaVector) -> VermaVector {
    let mut out = Element::zero();
    for (w, c) in v.elem.iter() {
        let wt = weight_of(w, cd.rank());
        let shift: i64 = (1..=cd.rank())
            .map(|j| wt.n[j - 1] as i64 * cd.pairing(i, j))
            .sum();
        out.add_term(w.clone(), &c.scale(&Scalar::q_pow(v.hw.value(i) - shift)));
    }
    v.with(out)
}

/// Multiplies each word of degree `m` by `q^{lambda_d + m}`.
pub fn act_d(cd: &CartanData, v: &VermaVector) -> VermaVector {
    let mut out = Element::zero();
    for (w, c) in v.elem.iter() {
        let m = weight_of(w, cd.rank()).m;
        out.add_term(w.clone(), &c.scale(&Scalar::q_pow(v.hw.lambda_d + m)));
    }
    v.with(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub window: (i64, i64),
    pub singular: bool,
    /// False when only the window was scanned and the support is not known
    /// to lie inside it.
    pub exact: bool,
    /// First `(color, k)` with a nonzero raising action.
    pub witness: Option<(usize, i64)>,
}

/// Scans `x+_{i,k} v` for every color and `k` in `[kmin, kmax]`.
///
/// The result is exact when a witness is found, or when `v` is a
/// combination of words of length at most one whose support `-index` lies
/// inside the window.
pub fn singular_vector_check(
    cd: &CartanData,
    v: &VermaVector,
    kmin: i64,
    kmax: i64,
) -> SingularReport {
    for i in 1..=cd.rank() {
        for k in kmin..=kmax {
            if !act_xplus(cd, i, k, v).is_zero() {
                return SingularReport {
                    window: (kmin, kmax),
                    singular: false,
                    exact: true,
                    witness: Some((i, k)),
                };
            }
        }
    }
    let exact = v.elem.max_len() <= 1
        && v.elem
            .words()
            .flat_map(|w| w.iter())
            .all(|l| (kmin..=kmax).contains(&-l.index));
    SingularReport {
        window: (kmin, kmax),
        singular: true,
        exact,
        witness: None,
    }
}

/// `(i, x_{i,0} v_lambda)` for the first color with `lambda_i = 0`, with its
/// singular check.
pub fn reducibility_witness(
    cd: &CartanData,
    hw: &HighestWeight,
) -> Option<(usize, VermaVector, SingularReport)> {
    let i = (1..=cd.rank()).find(|&i| hw.value(i) == 0)?;
    let v = act_xminus(i, 0, &VermaVector::highest(hw));
    let rep = singular_vector_check(cd, &v, -2, 2);
    Some((i, v, rep))
}

/// The scalar `(q^{lambda_i} - q^{-lambda_i}) / (q_i - q_i^{-1})`.
pub fn drinfeld_scalar(cd: &CartanData, hw: &HighestWeight, i: usize) -> Scalar {
    let lam = hw.value(i);
    let num = &Scalar::q_pow(lam) - &Scalar::q_pow(-lam);
    num.checked_div(&cd.qi_diff(i))
        .expect("nonzero denominator")
}

/// Residual of `[x+_{i,k}, x-_{j,l}] v_lambda` against its expected value.
pub fn drinfeld_residual(
    cd: &CartanData,
    hw: &HighestWeight,
    i: usize,
    k: i64,
    j: usize,
    l: i64,
) -> Element {
    let v = VermaVector::highest(hw);
    let a = act_xplus(cd, i, k, &act_xminus(j, l, &v));
    let b = act_xminus(j, l, &act_xplus(cd, i, k, &v));
    let mut res = &a.elem - &b.elem;
    if i == j && k + l == 0 {
        res.add_term(Vec::new(), &-Coefficient::from(drinfeld_scalar(cd, hw, i)));
    }
    res
}
