//! The desk-scale verification grid shared by the command line and the
//! acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bform::{gram, pair, rank};
use crate::cartan::CartanData;
use crate::freealg::{
    ideal_membership, multiply, serre_element, straighten_with, weight_of, Element, Letter,
    Strategy, Window, Word,
};
use crate::kashiwara::{
    alpha_bar, alpha_relation_closure, verify_operator_identity, FormalExpr, Identity,
    IdentityParams, KLetter,
};
use crate::omega::{
    omega_oracle, omega_phi, omega_psi, xplus_commutator_components, OmegaKind, OmegaOp,
};
use crate::scalars::{Coefficient, Scalar};
use crate::schur::{psi_consistency, schur_by_recursion, schur_poly, specialize_xplus};
use crate::verma::{
    act_xminus, act_xplus, drinfeld_residual, reducibility_witness, singular_vector_check,
    HighestWeight, VermaVector,
};

const MAX_REPORTED: usize = 20;

/// Outcome of one family of checks.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    pub failure_count: usize,
    /// The first few failures.
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            instances: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: CheckResult) {
        self.instances += other.instances;
        self.failure_count += other.failure_count;
        let room = MAX_REPORTED.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

fn merge_all(name: &str, parts: impl IntoIterator<Item = CheckResult>) -> CheckResult {
    let mut out = CheckResult::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}

/// All words of length at most `maxlen` over colors `1..=rank` with indices
/// in `[lo, hi]`, shortest first.
pub fn all_words(rank: usize, maxlen: usize, lo: i64, hi: i64) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=rank)
        .flat_map(|c| (lo..=hi).map(move |k| Letter::new(c, k)))
        .collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let mut nw: Word = w.clone();
                nw.push(*l);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Recursive Omega operators against the generating-function oracle.
pub fn check_omega_oracle(cd: &CartanData, words: &[Word], kmin: i64, kmax: i64) -> CheckResult {
    let parts: Vec<CheckResult> = words
        .par_iter()
        .map(|w| {
            let mut r = CheckResult::new("omega-oracle");
            let e = Element::from_word(w.clone());
            for i in 1..=cd.rank() {
                for k in kmin..=kmax {
                    for kind in [OmegaKind::Psi, OmegaKind::Phi] {
                        let op = OmegaOp { kind, color: i, k };
                        let rec = match kind {
                            OmegaKind::Psi => omega_psi(cd, i, k, &e),
                            OmegaKind::Phi => omega_phi(cd, i, k, &e),
                        };
                        let orc = omega_oracle(cd, op, w);
                        r.record(rec == orc, || {
                            format!(
                                "{kind}_{i}({k}) on {}: {rec} vs {orc}",
                                crate::freealg::word_to_string(w)
                            )
                        });
                    }
                }
            }
            r
        })
        .collect();
    merge_all("omega-oracle", parts)
}

/// The five operator identities for every color pair and parameters in
/// `[plo, phi]`.
pub fn check_identities(cd: &CartanData, words: &[Word], plo: i64, phi: i64) -> CheckResult {
    let mut jobs = Vec::new();
    for id in Identity::ALL {
        for i in 1..=cd.rank() {
            for j in 1..=cd.rank() {
                for m in plo..=phi {
                    for n in plo..=phi {
                        jobs.push((id, IdentityParams { i, j, m, n }));
                    }
                }
            }
        }
    }
    let parts: Vec<CheckResult> = jobs
        .par_iter()
        .map(|(id, p)| {
            let rep = verify_operator_identity(cd, *id, *p, words);
            CheckResult {
                name: id.name().to_string(),
                instances: rep.instances,
                failure_count: rep.failures.len(),
                failures: rep
                    .failures
                    .iter()
                    .take(MAX_REPORTED)
                    .map(|f| format!("{} {:?} on {}: {}", id.name(), p, f.word, f.residual))
                    .collect(),
            }
        })
        .collect();
    merge_all("identities", parts)
}

/// Symmetry and weight orthogonality on all word pairs, normalization, and
/// adjunction symmetry.
pub fn check_form(cd: &CartanData, words: &[Word], lo: i64, hi: i64) -> CheckResult {
    let rank_n = cd.rank();
    let elems: Vec<Element> = words.iter().cloned().map(Element::from_word).collect();
    let mut out = CheckResult::new("form");
    out.record(pair(cd, &Element::one(), &Element::one()).is_one(), || {
        "(1,1) != 1".into()
    });
    let grid: Vec<CheckResult> = (0..words.len())
        .into_par_iter()
        .map(|a| {
            let mut r = CheckResult::new("form");
            for b in a..words.len() {
                let ab = pair(cd, &elems[a], &elems[b]);
                let ba = pair(cd, &elems[b], &elems[a]);
                let same = weight_of(&words[a], rank_n) == weight_of(&words[b], rank_n);
                r.record(ab == ba, || {
                    format!("symmetry {:?} {:?}: {ab} vs {ba}", words[a], words[b])
                });
                if !same {
                    r.record(ab.is_zero(), || {
                        format!("orthogonality {:?} {:?}: {ab}", words[a], words[b])
                    });
                }
            }
            r
        })
        .collect();
    out.merge(merge_all("form", grid));
    let maxlen = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let short: Vec<&Element> = elems
        .iter()
        .zip(words)
        .filter(|(_, w)| w.len() < maxlen)
        .map(|(e, _)| e)
        .collect();
    let adj: Vec<CheckResult> = elems
        .par_iter()
        .map(|a| {
            let mut r = CheckResult::new("adjunction");
            for i in 1..=rank_n {
                for m in lo..=hi {
                    let oa = omega_psi(cd, i, m, a);
                    for b in &short {
                        let lhs = pair(cd, &oa, b);
                        let rhs = pair(cd, a, &b.left_mul_letter(Letter::new(i, -m)));
                        r.record(lhs == rhs, || {
                            format!("adjunction i={i} m={m} {a} {b}: {lhs} vs {rhs}")
                        });
                    }
                }
            }
            r
        })
        .collect();
    out.merge(merge_all("adjunction", adj));
    out
}

/// `pair(u R v, w) = 0 = pair(w, u R v)` for relation elements `R` with
/// all letters in `[lo, hi]`.
pub fn check_radical(cd: &CartanData, maxlen: usize, lo: i64, hi: i64) -> CheckResult {
    if maxlen < 2 {
        return CheckResult::new("radical");
    }
    let rank_n = cd.rank();
    let pads = all_words(rank_n, maxlen - 2, lo, hi);
    let targets = all_words(rank_n, maxlen, lo, hi);
    let mut rels = Vec::new();
    for i in 1..=rank_n {
        for j in 1..=rank_n {
            for k in lo..hi {
                for l in lo..hi {
                    rels.push(serre_element(cd, i, j, k, l));
                }
            }
        }
    }
    let mut jobs = Vec::new();
    for r in &rels {
        for u in &pads {
            for v in &pads {
                if u.len() + v.len() + 2 <= maxlen {
                    jobs.push(multiply(
                        &multiply(&Element::from_word(u.clone()), r),
                        &Element::from_word(v.clone()),
                    ));
                }
            }
        }
    }
    let parts: Vec<CheckResult> = jobs
        .par_iter()
        .map(|x| {
            let mut r = CheckResult::new("radical");
            let Some((w0, _)) = x.iter().next() else {
                return r;
            };
            let wt = weight_of(w0, rank_n);
            for t in targets.iter().filter(|t| weight_of(t, rank_n) == wt) {
                let te = Element::from_word(t.clone());
                let a = pair(cd, x, &te);
                let b = pair(cd, &te, x);
                r.record(a.is_zero() && b.is_zero(), || {
                    format!("radical {x} against {t:?}: {a}, {b}")
                });
            }
            r
        })
        .collect();
    merge_all("radical", parts)
}

/// Smallest window around the letters of `e`, widened by one on each side
/// so relations straddling the edge are available.
fn hull(e: &Element) -> Window {
    let idx = e.words().flat_map(|w| w.iter().map(|l| l.index));
    let (lo, hi) = idx.fold((0, 0), |(a, b), k| (a.min(k), b.max(k)));
    Window::new(lo - 1, hi + 1)
}

/// Idempotence, strategy independence, and invariance of the form and of
/// Omega under straightening, for color-1 words.
pub fn check_straightening(cd: &CartanData, maxlen: usize, lo: i64, hi: i64) -> CheckResult {
    let words = all_words(1, maxlen, lo, hi);
    let parts: Vec<CheckResult> = words
        .par_iter()
        .map(|w| {
            let mut r = CheckResult::new("straightening");
            let e = Element::from_word(w.clone());
            let (Ok(a), Ok(b)) = (
                straighten_with(cd, &e, Strategy::Leftmost),
                straighten_with(cd, &e, Strategy::Rightmost),
            ) else {
                r.record(false, || format!("straightening failed on {w:?}"));
                return r;
            };
            r.record(a == b, || format!("order dependence on {w:?}: {a} vs {b}"));
            let again = straighten_with(cd, &a, Strategy::Leftmost);
            r.record(again.as_ref() == Ok(&a), || format!("not idempotent on {w:?}"));
            let d = &a - &e;
            if d.is_zero() {
                return r;
            }
            let mem = ideal_membership(cd, &d, hull(&d), maxlen);
            r.record(matches!(mem, Ok(ref m) if m.member), || format!("difference for {w:?} not in the ideal"));
            for t in all_words(1, w.len(), lo, hi).iter().filter(|t| t.len() == w.len()) {
                let p = pair(cd, &d, &Element::from_word(t.clone()));
                r.record(p.is_zero(), || format!("form moved by straightening {w:?} against {t:?}: {p}"));
            }
            if w.len() >= 3 {
                for k in lo..=hi {
                    let od = omega_psi(cd, 1, k, &d);
                    let ok = od.is_zero()
                        || matches!(ideal_membership(cd, &od, hull(&od), maxlen), Ok(ref m) if m.member);
                    r.record(ok, || format!("Omega_psi({k}) moved by straightening {w:?}: {od}"));
                }
            }
            r
        })
        .collect();
    merge_all("straightening", parts)
}

/// Sample highest weights used by the Drinfeld and singular checks.
pub fn sample_weights(rank_n: usize) -> Vec<Vec<i64>> {
    match rank_n {
        1 => vec![vec![1], vec![2]],
        2 => vec![vec![1, 1], vec![1, -1]],
        n => vec![
            vec![1; n],
            (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
        ],
    }
}

/// Highest weights with at least one zero entry: all of `{-1,0,1}^rank`
/// for rank at most 2, otherwise one zero at each position.
pub fn degenerate_weights(rank_n: usize) -> Vec<Vec<i64>> {
    if rank_n <= 2 {
        let mut out = vec![Vec::new()];
        for _ in 0..rank_n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    [-1, 0, 1].into_iter().map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.retain(|v| v.contains(&0));
        out
    } else {
        (0..rank_n)
            .map(|z| (0..rank_n).map(|i| if i == z { 0 } else { 1 }).collect())
            .collect()
    }
}

/// Ranks at `gamma = 1` of color-1 Gram blocks of sorted monomials of
/// length at most 2 with indices in `[-1, 1]`, by degree.
pub fn simplicity_gram_ranks(cd: &CartanData) -> Vec<(i64, usize, usize)> {
    let mut by_deg: std::collections::BTreeMap<i64, Vec<Word>> = Default::default();
    for w in all_words(1, 2, -1, 1) {
        if w.windows(2).all(|p| p[0].index <= p[1].index) {
            by_deg
                .entry(w.iter().map(|l| l.index).sum())
                .or_default()
                .push(w);
        }
    }
    by_deg
        .into_iter()
        .map(|(deg, ws)| {
            let g = gram(cd, &ws);
            (
                deg,
                ws.len(),
                rank(&g, Some(&Scalar::one())).expect("gamma = 1"),
            )
        })
        .collect()
}

pub fn check_verma(cd: &CartanData, lo: i64, hi: i64) -> CheckResult {
    let mut r = CheckResult::new("verma");
    for lam in sample_weights(cd.rank()) {
        let hw = HighestWeight::new(cd, lam.clone(), 0).expect("rank matches");
        for i in 1..=cd.rank() {
            for j in 1..=cd.rank() {
                for k in lo..=hi {
                    for l in lo..=hi {
                        let res = drinfeld_residual(cd, &hw, i, k, j, l);
                        r.record(res.is_zero(), || {
                            format!("drinfeld {lam:?} i={i} k={k} j={j} l={l}: {res}")
                        });
                    }
                }
            }
            for l in lo..=hi {
                let v = act_xminus(i, l, &VermaVector::highest(&hw));
                let rep = singular_vector_check(cd, &v, lo - 1, hi + 1);
                let all_nonzero = lam.iter().all(|&x| x != 0);
                if all_nonzero {
                    r.record(!rep.singular, || {
                        format!("unexpected singular x_{i},{l} for {lam:?}")
                    });
                }
            }
        }
    }
    for lam in degenerate_weights(cd.rank()) {
        let hw = HighestWeight::new(cd, lam.clone(), 0).expect("rank matches");
        let ok = matches!(reducibility_witness(cd, &hw), Some((_, _, ref rep)) if rep.singular && rep.exact);
        r.record(ok, || format!("no exact witness for {lam:?}"));
    }
    for (deg, size, rk) in simplicity_gram_ranks(cd) {
        r.record(rk == size, || {
            format!("gram block at degree {deg} has rank {rk} of {size}")
        });
    }
    r
}

/// A random expression over `X` and `O` letters with small coefficients.
pub fn random_formal_expr(rng: &mut impl Rng, rank_n: usize) -> FormalExpr {
    let mut e = FormalExpr::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let len = rng.gen_range(0..=3);
        let w: Vec<KLetter> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=rank_n);
                let m = rng.gen_range(-3..=3);
                if rng.gen_bool(0.5) {
                    KLetter::X(i, m)
                } else {
                    KLetter::O(i, m)
                }
            })
            .collect();
        let c = Coefficient::monomial(
            rng.gen_range(-2..=2),
            Scalar::laurent(rng.gen_range(-2..=2), &[rng.gen_range(-3..=3), 1]),
        );
        e.add_term(w, &c);
    }
    e
}

pub fn check_alpha_bar(
    cd: &CartanData,
    lo: i64,
    hi: i64,
    samples: usize,
    seed: u64,
) -> CheckResult {
    let mut r = CheckResult::new("alpha-bar");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_formal_expr(&mut rng, cd.rank());
        let b = random_formal_expr(&mut rng, cd.rank());
        let twice = alpha_bar(&alpha_bar(&a).expect("no phi letters")).expect("no phi letters");
        r.record(twice == a, || format!("alpha_bar twice moved {a}"));
        let lhs = alpha_bar(&a.multiply(&b)).expect("no phi letters");
        let rhs = alpha_bar(&b)
            .expect("no phi letters")
            .multiply(&alpha_bar(&a).expect("no phi letters"));
        r.record(lhs == rhs, || {
            format!("alpha_bar not anti-multiplicative on {a} and {b}")
        });
    }
    let rep = alpha_relation_closure(cd, lo, hi);
    for e in &rep.entries {
        r.record(e.closed, || {
            format!(
                "alpha_bar image of {:?} not in the relation span",
                e.relation
            )
        });
    }
    r
}

/// Schur recursion, psi-side bookkeeping, and the specialized raising
/// action on random gamma-free elements.
pub fn check_schur(cd: &CartanData, samples: usize, seed: u64) -> CheckResult {
    let mut r = CheckResult::new("schur");
    let rec = schur_by_recursion(6);
    for k in 0..=6u32 {
        r.record(schur_poly(k) == rec[k as usize], || {
            format!("S_{k} recursion mismatch")
        });
    }
    for i in 1..=cd.rank() {
        r.record(psi_consistency(cd, i, 4), || {
            format!("psi bookkeeping fails for color {i}")
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lams = sample_weights(cd.rank());
    for s in 0..samples {
        let hw = HighestWeight::new(cd, lams[s % lams.len()].clone(), 0).expect("rank matches");
        let i = rng.gen_range(1..=cd.rank());
        let k = rng.gen_range(-3..=3);
        let mut p = Element::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(0..=2);
            let w: Word = (0..len)
                .map(|_| Letter::new(rng.gen_range(1..=cd.rank()), rng.gen_range(-2..=2)))
                .collect();
            p.add_term(
                w,
                &Scalar::laurent(rng.gen_range(-2..=2), &[rng.gen_range(1..=3)]).into(),
            );
        }
        let comps = xplus_commutator_components(cd, i, k, &p);
        let a = specialize_xplus(cd, &comps, &hw);
        let b = act_xplus(
            cd,
            i,
            k,
            &VermaVector::new(p.clone(), &hw).expect("gamma free"),
        )
        .elem;
        r.record(a == b, || {
            format!("components disagree for i={i} k={k} on {p}: {a} vs {b}")
        });
    }
    r
}

/// `g(t)(t - q^a) = q^a t - 1` to `order` for every color pair, both
/// orientations of `q`.
pub fn check_g_series(cd: &CartanData, order: usize) -> CheckResult {
    let mut r = CheckResult::new("g-series");
    for i in 1..=cd.rank() {
        for j in 1..=cd.rank() {
            for inverse in [false, true] {
                let g = cd.g_series(i, j, inverse, order).expect("valid colors");
                r.record(g.product_identity_holds(), || {
                    format!("g_{i}{j} inverse={inverse}")
                });
                if cd.pairing(i, j) == 0 {
                    let trivial = g.coeffs.iter().enumerate().all(|(n, c)| {
                        if n == 0 {
                            c.is_one()
                        } else {
                            c.is_zero()
                        }
                    });
                    r.record(trivial, || format!("orthogonal g_{i}{j} is not 1"));
                }
            }
        }
    }
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub cartan: String,
    pub kmin: i64,
    pub kmax: i64,
    pub maxlen: usize,
    /// Omega components checked against the oracle.
    pub component_min: i64,
    pub component_max: i64,
    /// Identity and relation parameters.
    pub param_min: i64,
    pub param_max: i64,
    /// Word length for the identity and form grids.
    pub identity_maxlen: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cartan: "A1".into(),
            kmin: -2,
            kmax: 2,
            maxlen: 3,
            component_min: -6,
            component_max: 6,
            param_min: -3,
            param_max: 3,
            identity_maxlen: 2,
            samples: 200,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn run_suite(cd: &CartanData, cfg: &SuiteConfig) -> SuiteReport {
    let (lo, hi) = (cfg.kmin, cfg.kmax);
    let words = all_words(cd.rank(), cfg.maxlen, lo, hi);
    let short = all_words(cd.rank(), cfg.identity_maxlen, lo, hi);
    let checks = vec![
        check_omega_oracle(cd, &words, cfg.component_min, cfg.component_max),
        check_identities(cd, &short, cfg.param_min, cfg.param_max),
        check_form(cd, &short, lo, hi),
        check_radical(cd, cfg.identity_maxlen.max(2), lo, hi),
        check_straightening(cd, cfg.maxlen, lo, hi),
        check_verma(cd, lo, hi),
        check_alpha_bar(cd, lo, hi, cfg.samples, cfg.seed),
        check_schur(cd, cfg.samples.min(100), cfg.seed),
        check_g_series(cd, 10),
    ];
    let passed = checks.iter().all(|c| c.passed());
    SuiteReport {
        config: cfg.clone(),
        checks,
        passed,
    }
}
