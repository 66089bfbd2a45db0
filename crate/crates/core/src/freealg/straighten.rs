//! Single-color straightening to ascending index order.
//!
//! For a redex `x_a x_b` with `a > b` the rewriting rule is
//! `x_a x_b -> q^{-A} x_b x_a + q^{-A} x_{a-1} x_{b+1} - x_{b+1} x_{a-1}`,
//! `A = (alpha_i|alpha_i)`, and for `a = b + 1` it collapses to
//! `x_{b+1} x_b -> q^{-A} x_b x_{b+1}`. Each step lowers
//! `(sum of squared indices, number of inversions)` lexicographically.

use std::collections::HashMap;

use super::{Element, FreeAlgError, Letter, Word};
use crate::cartan::CartanData;
use crate::scalars::{Coefficient, Scalar};

/// Which redex is rewritten first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Positions `p` where `w[p].index > w[p+1].index`.
pub fn find_redexes(w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| w[p].index > w[p + 1].index)
        .collect()
}

/// One rewriting step at position `p`; `None` when `p` is not a redex.
pub fn apply_rule_at(cd: &CartanData, w: &[Letter], p: usize) -> Option<Element> {
    if p + 1 >= w.len() {
        return None;
    }
    let (x, y) = (w[p], w[p + 1]);
    if x.color != y.color || x.index <= y.index {
        return None;
    }
    let (a, b) = (x.index, y.index);
    let i = x.color;
    let qa: Coefficient = Scalar::q_pow(-cd.pairing(i, i)).into();
    let with_pair = |l: i64, r: i64| {
        let mut nw = w.to_vec();
        nw[p] = Letter::new(i, l);
        nw[p + 1] = Letter::new(i, r);
        nw
    };
    let mut out = Element::zero();
    out.add_term(with_pair(b, a), &qa);
    if a > b + 1 {
        out.add_term(with_pair(a - 1, b + 1), &qa);
        out.add_term(with_pair(b + 1, a - 1), &-Coefficient::one());
    }
    Some(out)
}

fn check_single_color(e: &Element) -> Result<(), FreeAlgError> {
    for w in e.words() {
        if let Some(first) = w.first() {
            if let Some(other) = w.iter().find(|l| l.color != first.color) {
                return Err(FreeAlgError::MixedColor(first.color, other.color));
            }
        }
    }
    Ok(())
}

struct Straightener<'a> {
    cd: &'a CartanData,
    strategy: Strategy,
    memo: HashMap<Word, Element>,
}

impl Straightener<'_> {
    fn normal_form(&mut self, w: &[Letter]) -> Element {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let redexes = find_redexes(w);
        let result = match self.strategy {
            Strategy::Leftmost => redexes.first(),
            Strategy::Rightmost => redexes.last(),
        }
        .copied()
        .map(|p| {
            let step = apply_rule_at(self.cd, w, p).expect("position is a redex");
            let mut acc = Element::zero();
            for (nw, c) in step.iter() {
                let nf = self.normal_form(nw);
                acc.add_scaled(&nf, c);
            }
            acc
        })
        .unwrap_or_else(|| Element::from_word(w.to_vec()));
        self.memo.insert(w.to_vec(), result.clone());
        result
    }
}

/// Rewrites every word into ascending index order using `strategy`.
pub fn straighten_with(
    cd: &CartanData,
    e: &Element,
    strategy: Strategy,
) -> Result<Element, FreeAlgError> {
    check_single_color(e)?;
    let mut s = Straightener {
        cd,
        strategy,
        memo: HashMap::new(),
    };
    let mut out = Element::zero();
    for (w, c) in e.iter() {
        let nf = s.normal_form(w);
        out.add_scaled(&nf, c);
    }
    Ok(out)
}

/// Straightening with the leftmost-redex strategy.
pub fn straighten_single_color(cd: &CartanData, e: &Element) -> Result<Element, FreeAlgError> {
    straighten_with(cd, e, Strategy::Leftmost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::word;

    fn a1() -> CartanData {
        CartanData::from_label("A1").unwrap()
    }

    #[test]
    fn adjacent_swap() {
        let e = Element::from_word(word(&[(1, 1), (1, 0)]));
        let s = straighten_single_color(&a1(), &e).unwrap();
        assert_eq!(
            s,
            Element::term(word(&[(1, 0), (1, 1)]), Scalar::q_pow(-2).into())
        );
    }

    #[test]
    fn gap_two() {
        let e = Element::from_word(word(&[(1, 2), (1, 0)]));
        let s = straighten_single_color(&a1(), &e).unwrap();
        let mut expected = Element::term(word(&[(1, 0), (1, 2)]), Scalar::q_pow(-2).into());
        expected.add_term(
            word(&[(1, 1), (1, 1)]),
            &(&Scalar::q_pow(-2) - &Scalar::one()).into(),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn sorted_is_fixed_and_mixed_rejected() {
        let w = Element::from_word(word(&[(1, -1), (1, 0), (1, 0)]));
        assert_eq!(straighten_single_color(&a1(), &w).unwrap(), w);
        let a2 = CartanData::from_label("A2").unwrap();
        let m = Element::from_word(word(&[(1, 0), (2, 0)]));
        assert_eq!(
            straighten_single_color(&a2, &m),
            Err(FreeAlgError::MixedColor(1, 2))
        );
    }

    #[test]
    fn strategies_agree_on_length_three() {
        let cd = a1();
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let e = Element::from_word(word(&[(1, a), (1, b), (1, c)]));
                    let l = straighten_with(&cd, &e, Strategy::Leftmost).unwrap();
                    let r = straighten_with(&cd, &e, Strategy::Rightmost).unwrap();
                    assert_eq!(l, r, "word {a},{b},{c}");
                }
            }
        }
    }
}
