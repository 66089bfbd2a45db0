//! Free-word model of the negative current algebra.
//!
//! An [`Element`] is a finite map from words in the letters `x_{i,k}` to
//! [`Coefficient`]s. The quadratic current relations are never imposed on
//! the representation; they enter through [`serre_element`], single-color
//! straightening and windowed ideal membership.

mod ideal;
mod json;
mod straighten;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::CartanData;
use crate::scalars::{Coefficient, Scalar, ScalarError};

pub use ideal::{certificate_sum, ideal_membership, Generator, Membership, Window};
pub use json::JsonError;
pub use straighten::{
    apply_rule_at, find_redexes, straighten_single_color, straighten_with, Strategy,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("word mixes colors {0} and {1}; straightening is single-color")]
    MixedColor(usize, usize),
    #[error("letter x({color},{index}) outside window [{kmin},{kmax}]")]
    WindowOverflow {
        color: usize,
        index: i64,
        kmin: i64,
        kmax: i64,
    },
    #[error("word of length {len} exceeds maxlen {maxlen}")]
    LengthOverflow { len: usize, maxlen: usize },
    #[error("color {color} out of range 1..={rank}")]
    ColorOutOfRange { color: usize, rank: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The generator `x^-_{color,index}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub color: usize,
    pub index: i64,
}

impl Letter {
    pub fn new(color: usize, index: i64) -> Self {
        Letter { color, index }
    }

    pub fn shifted(self, by: i64) -> Self {
        Letter::new(self.color, self.index + by)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.color, self.index)
    }
}

/// Ordered product of letters; the empty word is `1`.
pub type Word = Vec<Letter>;

/// Builds a word from `(color, index)` pairs.
pub fn word(pairs: &[(usize, i64)]) -> Word {
    pairs.iter().map(|&(c, k)| Letter::new(c, k)).collect()
}

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join("*")
}

/// Color multiplicities and total mode of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub n: Vec<usize>,
    pub m: i64,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            n: vec![0; rank],
            m: 0,
        }
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let len = self.n.len().max(rhs.n.len());
        let n = (0..len)
            .map(|i| self.n.get(i).copied().unwrap_or(0) + rhs.n.get(i).copied().unwrap_or(0))
            .collect();
        Weight {
            n,
            m: self.m + rhs.m,
        }
    }
}

/// `n_i` counts color-`i` letters (stored at `n[i-1]`), `m` sums the indices.
pub fn weight_of(w: &[Letter], rank: usize) -> Weight {
    let mut wt = Weight::zero(rank);
    for l in w {
        if l.color > wt.n.len() {
            wt.n.resize(l.color, 0);
        }
        wt.n[l.color - 1] += 1;
        wt.m += l.index;
    }
    wt
}

/// Finite linear combination of words with [`Coefficient`] values.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, Coefficient>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_word(Vec::new())
    }

    pub fn from_word(w: Word) -> Self {
        Element::term(w, Coefficient::one())
    }

    pub fn letter(color: usize, index: i64) -> Self {
        Element::from_word(vec![Letter::new(color, index)])
    }

    pub fn term(w: Word, c: Coefficient) -> Self {
        let mut e = Element::zero();
        e.add_term(w, &c);
        e
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(Vec::new(), s.into())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &[Letter]) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, by: &Coefficient) {
        if by.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &(c * by));
        }
    }

    pub fn add_assign_ref(&mut self, other: &Element) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn scale(&self, by: &Coefficient) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, by);
        out
    }

    pub fn scale_scalar(&self, by: &Scalar) -> Element {
        self.scale(&Coefficient::from_scalar(by.clone()))
    }

    /// Left multiplication by a single letter.
    pub fn left_mul_letter(&self, l: Letter) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(l);
                nw.extend_from_slice(w);
                (nw, c.clone())
            })
            .collect();
        Element { terms }
    }

    /// Longest word length, 0 for the zero element.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Substitutes a value for `c = gamma^{1/2}`; the result has no `c`-dependence.
    pub fn specialize_gamma(&self, c_value: &Scalar) -> Result<Element, ScalarError> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.specialize(c_value)?.into());
        }
        Ok(out)
    }

    /// True when every coefficient is free of `c`.
    pub fn is_gamma_free(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    /// Splits by weight; keys ordered deterministically.
    pub fn split_by_weight(&self, rank: usize) -> BTreeMap<Weight, Element> {
        let mut out: BTreeMap<Weight, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(weight_of(w, rank))
                .or_default()
                .add_term(w.clone(), c);
        }
        out
    }

    /// Checks every letter color against the rank.
    pub fn check_colors(&self, cd: &CartanData) -> Result<(), FreeAlgError> {
        for w in self.terms.keys() {
            for l in w {
                if l.color == 0 || l.color > cd.rank() {
                    return Err(FreeAlgError::ColorOutOfRange {
                        color: l.color,
                        rank: cd.rank(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Free concatenation product, bilinear over the coefficient ring.
pub fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let mut w = Vec::with_capacity(wa.len() + wb.len());
            w.extend_from_slice(wa);
            w.extend_from_slice(wb);
            out.add_term(w, &(ca * cb));
        }
    }
    out
}

/// `x_{i,k+1}x_{j,l} - q^{-a}x_{j,l}x_{i,k+1} - q^{-a}x_{i,k}x_{j,l+1} + x_{j,l+1}x_{i,k}`
/// with `a = (alpha_i|alpha_j)`.
pub fn serre_element(cd: &CartanData, i: usize, j: usize, k: i64, l: i64) -> Element {
    let qa: Coefficient = Scalar::q_pow(-cd.pairing(i, j)).into();
    let one = Coefficient::one();
    let mut e = Element::zero();
    e.add_term(word(&[(i, k + 1), (j, l)]), &one);
    e.add_term(word(&[(j, l), (i, k + 1)]), &-&qa);
    e.add_term(word(&[(i, k), (j, l + 1)]), &-&qa);
    e.add_term(word(&[(j, l + 1), (i, k)]), &one);
    e
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coefficient::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Coefficient::one())
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*{}", word_to_string(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
