//! The annihilation operators `Omega_psi_i(k)` and `Omega_phi_i(k)`.
//!
//! Two independent implementations are provided: the component recursion
//! on the leading letter ([`omega_psi`], [`omega_phi`]) and the direct
//! expansion over letter positions and shift vectors ([`omega_oracle`]).
//!
//! Conventions, with `g'` the `q -> q^{-1}` series:
//! ```text
//! psi_j(k)(x_{i,m} w) = d_ij d_{k,-m} gamma^k w  + sum_r g'_ij(r) gamma^r x_{i,m+r} psi_j(k-r)(w)
//! phi_j(k)(x_{i,m} w) = d_ij d_{k,-m} gamma^-k w + sum_r g_ij(r)  gamma^r x_{i,m-r} phi_j(k+r)(w)
//! ```
//! `psi_j(k)(w) = 0` for `k < -max{n : x_{j,n} in w}` and
//! `phi_j(k)(w) = 0` for `k > -min{n : x_{j,n} in w}`, which bounds every `r`-sum.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::freealg::{Element, Letter, Word};
use crate::scalars::Coefficient;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaKind {
    Psi,
    Phi,
}

impl fmt::Display for OmegaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaKind::Psi => "psi",
            OmegaKind::Phi => "phi",
        })
    }
}

/// `Omega_{kind_color}(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OmegaOp {
    pub kind: OmegaKind,
    pub color: usize,
    pub k: i64,
}

impl OmegaOp {
    pub fn psi(color: usize, k: i64) -> Self {
        OmegaOp {
            kind: OmegaKind::Psi,
            color,
            k,
        }
    }

    pub fn phi(color: usize, k: i64) -> Self {
        OmegaOp {
            kind: OmegaKind::Phi,
            color,
            k,
        }
    }

    pub fn apply(&self, cd: &CartanData, e: &Element) -> Element {
        match self.kind {
            OmegaKind::Psi => omega_psi(cd, self.color, self.k, e),
            OmegaKind::Phi => omega_phi(cd, self.color, self.k, e),
        }
    }
}

/// Smallest component at which `Omega_psi_i` can be nonzero on `e`.
pub fn psi_support_min(i: usize, e: &Element) -> Option<i64> {
    e.words()
        .flat_map(|w| w.iter().filter(|l| l.color == i).map(|l| -l.index))
        .min()
}

/// Largest component at which `Omega_phi_i` can be nonzero on `e`.
pub fn phi_support_max(i: usize, e: &Element) -> Option<i64> {
    e.words()
        .flat_map(|w| w.iter().filter(|l| l.color == i).map(|l| -l.index))
        .max()
}

struct Recursion<'a> {
    cd: &'a CartanData,
    kind: OmegaKind,
    j: usize,
    word: &'a [Letter],
    /// For each suffix start: max and min index among color-`j` letters.
    bounds: Vec<Option<(i64, i64)>>,
    memo: HashMap<(usize, i64), Element>,
}

impl<'a> Recursion<'a> {
    fn new(cd: &'a CartanData, kind: OmegaKind, j: usize, word: &'a [Letter]) -> Self {
        let mut bounds: Vec<Option<(i64, i64)>> = vec![None; word.len() + 1];
        for p in (0..word.len()).rev() {
            bounds[p] = bounds[p + 1];
            if word[p].color == j {
                let n = word[p].index;
                bounds[p] = Some(match bounds[p] {
                    Some((hi, lo)) => (hi.max(n), lo.min(n)),
                    None => (n, n),
                });
            }
        }
        Recursion {
            cd,
            kind,
            j,
            word,
            bounds,
            memo: HashMap::new(),
        }
    }

    /// Largest `r` with a possibly nonzero inner term on the suffix at `p`.
    fn r_max(&self, p: usize, k: i64) -> Option<i64> {
        let (hi, lo) = self.bounds[p]?;
        let r = match self.kind {
            OmegaKind::Psi => k + hi,
            OmegaKind::Phi => -lo - k,
        };
        (r >= 0).then_some(r)
    }

    fn eval(&mut self, p: usize, k: i64) -> Element {
        if self.bounds[p].is_none() {
            return Element::zero();
        }
        if let Some(e) = self.memo.get(&(p, k)) {
            return e.clone();
        }
        let x = self.word[p];
        let rest = &self.word[p + 1..];
        let mut out = Element::zero();
        if x.color == self.j && k == -x.index {
            let g = match self.kind {
                OmegaKind::Psi => Coefficient::gamma_pow(k),
                OmegaKind::Phi => Coefficient::gamma_pow(-k),
            };
            out.add_term(rest.to_vec(), &g);
        }
        if let Some(rmax) = self.r_max(p + 1, k) {
            let pair = self.cd.pairing(x.color, self.j);
            for r in 0..=rmax {
                let (inner_k, shift, inverse) = match self.kind {
                    OmegaKind::Psi => (k - r, r, true),
                    OmegaKind::Phi => (k + r, -r, false),
                };
                let g = self.cd.g_by_pairing(pair, r as usize, inverse);
                if g.is_zero() {
                    continue;
                }
                let inner = self.eval(p + 1, inner_k);
                if inner.is_zero() {
                    continue;
                }
                let coeff = Coefficient::monomial(2 * r, g);
                out.add_scaled(&inner.left_mul_letter(x.shifted(shift)), &coeff);
            }
        }
        self.memo.insert((p, k), out.clone());
        out
    }
}

fn omega_recursive(cd: &CartanData, kind: OmegaKind, j: usize, k: i64, e: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.iter() {
        let mut rec = Recursion::new(cd, kind, j, w);
        out.add_scaled(&rec.eval(0, k), c);
    }
    out
}

/// `Omega_psi_i(k)(e)` by the component recursion.
pub fn omega_psi(cd: &CartanData, i: usize, k: i64, e: &Element) -> Element {
    omega_recursive(cd, OmegaKind::Psi, i, k, e)
}

/// `Omega_phi_i(k)(e)` by the component recursion.
pub fn omega_phi(cd: &CartanData, i: usize, k: i64, e: &Element) -> Element {
    omega_recursive(cd, OmegaKind::Phi, i, k, e)
}

/// Calls `f` on every vector of `parts` nonnegative integers summing to `total`.
fn for_each_composition(total: i64, parts: usize, f: &mut impl FnMut(&[i64])) {
    fn rec(left: i64, parts: usize, buf: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for r in 0..=left {
            buf.push(r);
            rec(left - r, parts, buf, f);
            buf.pop();
        }
    }
    if total < 0 {
        return;
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(total, parts, &mut Vec::new(), f);
}

/// Direct expansion: sum over positions `l` of a color-`i` letter and
/// shift vectors on the letters before it.
pub fn omega_oracle(cd: &CartanData, op: OmegaOp, w: &[Letter]) -> Element {
    let i = op.color;
    let mut out = Element::zero();
    for (l, x) in w.iter().enumerate() {
        if x.color != i {
            continue;
        }
        let (total, gamma, inverse, sign) = match op.kind {
            OmegaKind::Psi => (x.index + op.k, op.k, true, 1),
            OmegaKind::Phi => (-(x.index + op.k), -op.k, false, -1),
        };
        for_each_composition(total, l, &mut |rs| {
            let mut coeff = Coefficient::gamma_pow(gamma);
            let mut nw: Word = Vec::with_capacity(w.len() - 1);
            for (m, &r) in rs.iter().enumerate() {
                let g = cd.g_by_pairing(cd.pairing(i, w[m].color), r as usize, inverse);
                coeff = coeff.scale(&g);
                nw.push(w[m].shifted(sign * r));
            }
            nw.extend_from_slice(&w[l + 1..]);
            out.add_term(nw, &coeff);
        });
    }
    out
}

/// Linear extension of [`omega_oracle`] to elements.
pub fn omega_oracle_element(cd: &CartanData, op: OmegaOp, e: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.iter() {
        out.add_scaled(&omega_oracle(cd, op, w), c);
    }
    out
}

/// The families `(p, Q_p)` and `(r, R_r)` with `Q_p = Omega_psi_i(k-p)(e)`
/// and `R_r = -Omega_phi_i(k+r)(e)` assembling `[x^+_{i,k}, e]`.
#[derive(Debug, Clone, PartialEq)]
pub struct XplusComponents {
    pub color: usize,
    pub k: i64,
    pub psi: Vec<(i64, Element)>,
    pub phi: Vec<(i64, Element)>,
}

/// Nonzero components of the `x^+` commutator; both families are finite by
/// the vanishing thresholds.
pub fn xplus_commutator_components(
    cd: &CartanData,
    i: usize,
    k: i64,
    e: &Element,
) -> XplusComponents {
    let mut psi = Vec::new();
    if let Some(lo) = psi_support_min(i, e) {
        for p in 0..=(k - lo).max(-1) {
            let q = omega_psi(cd, i, k - p, e);
            if !q.is_zero() {
                psi.push((p, q));
            }
        }
    }
    let mut phi = Vec::new();
    if let Some(hi) = phi_support_max(i, e) {
        for r in 0..=(hi - k).max(-1) {
            let v = omega_phi(cd, i, k + r, e);
            if !v.is_zero() {
                phi.push((r, -&v));
            }
        }
    }
    XplusComponents {
        color: i,
        k,
        psi,
        phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::word;
    use crate::scalars::Scalar;

    fn a1() -> CartanData {
        CartanData::from_label("A1").unwrap()
    }

    #[test]
    fn kills_one() {
        let cd = a1();
        for k in -3..=3 {
            assert!(omega_psi(&cd, 1, k, &Element::one()).is_zero());
            assert!(omega_phi(&cd, 1, k, &Element::one()).is_zero());
        }
    }

    #[test]
    fn base_cases() {
        let cd = a1();
        for m in -3..=3 {
            let x = Element::letter(1, m);
            assert_eq!(
                omega_psi(&cd, 1, -m, &x),
                Element::term(vec![], Coefficient::gamma_pow(-m))
            );
            assert_eq!(
                omega_phi(&cd, 1, -m, &x),
                Element::term(vec![], Coefficient::gamma_pow(m))
            );
        }
    }

    #[test]
    fn two_step_recursion() {
        let cd = a1();
        let e = Element::from_word(word(&[(1, 0), (1, 0)]));
        let expected = Element::term(word(&[(1, 0)]), (&Scalar::one() + &Scalar::q_pow(2)).into());
        assert_eq!(omega_psi(&cd, 1, 0, &e), expected);
    }

    #[test]
    fn oracle_single_term() {
        let cd = a1();
        let w = word(&[(1, 0), (1, 1)]);
        let expected = Element::term(word(&[(1, 0)]), Coefficient::monomial(-2, Scalar::q_pow(2)));
        assert_eq!(omega_oracle(&cd, OmegaOp::psi(1, -1), &w), expected);
        assert_eq!(omega_psi(&cd, 1, -1, &Element::from_word(w)), expected);
    }

    #[test]
    fn absent_color_vanishes() {
        let cd = CartanData::from_label("A2").unwrap();
        let w = word(&[(2, 0), (2, 1)]);
        for k in -4..=4 {
            assert!(omega_oracle(&cd, OmegaOp::psi(1, k), &w).is_zero());
            assert!(omega_psi(&cd, 1, k, &Element::from_word(w.clone())).is_zero());
        }
    }

    #[test]
    fn recursion_matches_oracle_small() {
        let cd = CartanData::from_label("A2").unwrap();
        let letters: Vec<Letter> = (1..=2)
            .flat_map(|c| (-1..=1).map(move |k| Letter::new(c, k)))
            .collect();
        for a in &letters {
            for b in &letters {
                let w = vec![*a, *b];
                let e = Element::from_word(w.clone());
                for i in 1..=2 {
                    for k in -4..=4 {
                        assert_eq!(
                            omega_psi(&cd, i, k, &e),
                            omega_oracle(&cd, OmegaOp::psi(i, k), &w)
                        );
                        assert_eq!(
                            omega_phi(&cd, i, k, &e),
                            omega_oracle(&cd, OmegaOp::phi(i, k), &w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn xplus_components_base() {
        let cd = a1();
        assert_eq!(
            xplus_commutator_components(&cd, 1, 0, &Element::one()),
            XplusComponents {
                color: 1,
                k: 0,
                psi: vec![],
                phi: vec![]
            }
        );
        let m = 2;
        let c = xplus_commutator_components(&cd, 1, -m, &Element::letter(1, m));
        assert_eq!(
            c.psi,
            vec![(0, Element::term(vec![], Coefficient::gamma_pow(-m)))]
        );
        assert_eq!(
            c.phi,
            vec![(0, Element::term(vec![], -Coefficient::gamma_pow(m)))]
        );
    }
}
