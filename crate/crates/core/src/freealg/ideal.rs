//! Windowed membership in the two-sided ideal generated by the quadratic
//! relation elements.

use std::collections::BTreeMap;

use super::{serre_element, Element, FreeAlgError, Letter, Word};
use crate::cartan::CartanData;
use crate::linalg::{SpanSolver, SparseVec};
use crate::scalars::Coefficient;

/// Closed index range `[kmin, kmax]` for letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub kmin: i64,
    pub kmax: i64,
}

impl Window {
    pub fn new(kmin: i64, kmax: i64) -> Self {
        Window { kmin, kmax }
    }

    pub fn contains(&self, k: i64) -> bool {
        self.kmin <= k && k <= self.kmax
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.kmin..=self.kmax
    }
}

/// The ideal element `left * serre_element(i, j, k, l) * right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub left: Word,
    pub i: usize,
    pub j: usize,
    pub k: i64,
    pub l: i64,
    pub right: Word,
}

impl Generator {
    pub fn element(&self, cd: &CartanData) -> Element {
        let r = serre_element(cd, self.i, self.j, self.k, self.l);
        let mut out = Element::zero();
        for (w, c) in r.iter() {
            let mut nw = self.left.clone();
            nw.extend_from_slice(w);
            nw.extend_from_slice(&self.right);
            out.add_term(nw, c);
        }
        out
    }
}

/// Outcome of [`ideal_membership`].
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    /// Expressing combination when `member`; its sum equals the input.
    pub certificate: Vec<(Coefficient, Generator)>,
    /// Number of window words spanned by the generators that were used.
    pub basis_size: usize,
    pub generators: usize,
}

/// All words with the given ordered color pattern, letters in the window,
/// and index sum `m`.
fn words_with(colors: &[usize], m: i64, window: Window) -> Vec<Word> {
    fn rec(colors: &[usize], m: i64, window: Window, prefix: &mut Word, out: &mut Vec<Word>) {
        let Some((&c, rest)) = colors.split_first() else {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let n = rest.len() as i64;
        for k in window.indices() {
            let remaining = m - k;
            if remaining < n * window.kmin || remaining > n * window.kmax {
                continue;
            }
            prefix.push(Letter::new(c, k));
            rec(rest, remaining, window, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(colors, m, window, &mut Vec::new(), &mut out);
    out
}

/// Distinct orderings of a color multiset.
fn color_patterns(n: &[usize]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [usize], len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for c in 0..counts.len() {
            if counts[c] > 0 {
                counts[c] -= 1;
                prefix.push(c + 1);
                rec(counts, len, prefix, out);
                prefix.pop();
                counts[c] += 1;
            }
        }
    }
    let mut counts = n.to_vec();
    let len = n.iter().sum();
    let mut out = Vec::new();
    rec(&mut counts, len, &mut Vec::new(), &mut out);
    out
}

fn to_sparse(e: &Element, cexp: i64) -> SparseVec<Word> {
    e.iter()
        .filter_map(|(w, c)| {
            let s = c.coeff_of(cexp);
            (!s.is_zero()).then(|| (w.clone(), s))
        })
        .collect()
}

/// Decides whether `e` lies in the span of `u * serre_element(i,j,k,l) * v`
/// with every letter inside `window` and word length at most `maxlen`.
pub fn ideal_membership(
    cd: &CartanData,
    e: &Element,
    window: Window,
    maxlen: usize,
) -> Result<Membership, FreeAlgError> {
    e.check_colors(cd)?;
    for w in e.words() {
        if w.len() > maxlen {
            return Err(FreeAlgError::LengthOverflow {
                len: w.len(),
                maxlen,
            });
        }
        if let Some(l) = w.iter().find(|l| !window.contains(l.index)) {
            return Err(FreeAlgError::WindowOverflow {
                color: l.color,
                index: l.index,
                kmin: window.kmin,
                kmax: window.kmax,
            });
        }
    }
    let mut member = true;
    let mut certificate: BTreeMap<Generator, Coefficient> = BTreeMap::new();
    let mut basis_size = 0;
    let mut generators = 0;
    for (wt, part) in e.split_by_weight(cd.rank()) {
        let len: usize = wt.n.iter().sum();
        if len < 2 {
            member = false;
            continue;
        }
        let mut gens = Vec::new();
        let mut solver = SpanSolver::new();
        let mut span_words = std::collections::BTreeSet::new();
        for pattern in color_patterns(&wt.n) {
            for w in words_with(&pattern, wt.m, window) {
                span_words.insert(w.clone());
                for p in 0..len - 1 {
                    // leading word x_{i,k+1} x_{j,l} of the relation sits at p
                    let (x, y) = (w[p], w[p + 1]);
                    if !window.contains(x.index - 1) || !window.contains(y.index + 1) {
                        continue;
                    }
                    let g = Generator {
                        left: w[..p].to_vec(),
                        i: x.color,
                        j: y.color,
                        k: x.index - 1,
                        l: y.index,
                        right: w[p + 2..].to_vec(),
                    };
                    solver.insert(to_sparse(&g.element(cd), 0));
                    gens.push(g);
                }
            }
        }
        basis_size += span_words.len();
        generators += gens.len();
        let cexps: Vec<i64> = {
            let mut v: Vec<i64> = part
                .iter()
                .flat_map(|(_, c)| c.terms().iter().map(|t| t.0))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        for ce in cexps {
            match solver.solve(&to_sparse(&part, ce)) {
                Some(comb) => {
                    for (g, s) in comb {
                        certificate
                            .entry(gens[g].clone())
                            .or_default()
                            .add_term(ce, &s);
                    }
                }
                None => member = false,
            }
        }
    }
    let certificate: Vec<(Coefficient, Generator)> = if member {
        certificate
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (c, g))
            .collect()
    } else {
        Vec::new()
    };
    if member {
        debug_assert_eq!(
            &certificate_sum(cd, &certificate),
            e,
            "certificate must reproduce the input"
        );
    }
    Ok(Membership {
        member,
        certificate,
        basis_size,
        generators,
    })
}

/// Sum of a certificate; equals the tested element when membership holds.
pub fn certificate_sum(cd: &CartanData, cert: &[(Coefficient, Generator)]) -> Element {
    let mut out = Element::zero();
    for (c, g) in cert {
        out.add_scaled(&g.element(cd), c);
    }
    out
}
