//! Formal expressions in the Kashiwara algebra, the anti-involution
//! `alpha_bar`, and operator identities checked on the free model.
//!
//! Letters are `X(i,m) = x^-_{i,m}`, `O(i,m) = Omega_psi_i(m)` and, for the
//! phi-side identities only, `P(i,m) = Omega_phi_i(m)`. A word acts on an
//! element by applying its letters right to left.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::CartanData;
use crate::freealg::{word_to_string, Element, Letter};
use crate::linalg::{SpanSolver, SparseVec};
use crate::omega::{omega_phi, omega_psi};
use crate::scalars::{Coefficient, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KashiwaraError {
    #[error("alpha_bar is defined on X and O letters only, found {0}")]
    PhiLetter(String),
    #[error("unknown relation kind {0:?}")]
    UnknownRelation(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KLetter {
    X(usize, i64),
    O(usize, i64),
    P(usize, i64),
}

impl fmt::Display for KLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KLetter::X(i, m) => write!(f, "X({i},{m})"),
            KLetter::O(i, m) => write!(f, "O({i},{m})"),
            KLetter::P(i, m) => write!(f, "P({i},{m})"),
        }
    }
}

/// Finite combination of words in [`KLetter`]s over the coefficient ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FormalExpr {
    terms: BTreeMap<Vec<KLetter>, Coefficient>,
}

impl FormalExpr {
    pub fn zero() -> Self {
        FormalExpr::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        FormalExpr::term(Vec::new(), c)
    }

    pub fn term(w: Vec<KLetter>, c: Coefficient) -> Self {
        let mut e = FormalExpr::zero();
        e.add_term(w, &c);
        e
    }

    pub fn word(w: Vec<KLetter>) -> Self {
        FormalExpr::term(w, Coefficient::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<KLetter>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Vec<KLetter>, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        entry.add_assign_ref(c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalExpr, by: &Coefficient) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &(c * by));
        }
    }

    pub fn scale(&self, by: &Coefficient) -> FormalExpr {
        let mut out = FormalExpr::zero();
        out.add_scaled(self, by);
        out
    }

    pub fn multiply(&self, other: &FormalExpr) -> FormalExpr {
        let mut out = FormalExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(ca * cb));
            }
        }
        out
    }

    /// Image of a free-algebra element under `x_{i,m} -> X(i,m)`.
    pub fn from_element(e: &Element) -> FormalExpr {
        let mut out = FormalExpr::zero();
        for (w, c) in e.iter() {
            out.add_term(w.iter().map(|l| KLetter::X(l.color, l.index)).collect(), c);
        }
        out
    }

    /// Applies the expression as an operator on the free model.
    pub fn apply(&self, cd: &CartanData, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut v = e.clone();
            for l in w.iter().rev() {
                if v.is_zero() {
                    break;
                }
                v = match *l {
                    KLetter::X(i, m) => v.left_mul_letter(Letter::new(i, m)),
                    KLetter::O(i, m) => omega_psi(cd, i, m, &v),
                    KLetter::P(i, m) => omega_phi(cd, i, m, &v),
                };
            }
            out.add_scaled(&v, c);
        }
        out
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join("*")
            };
            write!(f, "[{c}]*{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalExpr({self})")
    }
}

/// Reverses words and swaps `X(i,m) <-> O(i,-m)`; fixes coefficients.
pub fn alpha_bar(e: &FormalExpr) -> Result<FormalExpr, KashiwaraError> {
    let mut out = FormalExpr::zero();
    for (w, c) in e.iter() {
        let mut nw = Vec::with_capacity(w.len());
        for l in w.iter().rev() {
            nw.push(match *l {
                KLetter::X(i, m) => KLetter::O(i, -m),
                KLetter::O(i, m) => KLetter::X(i, -m),
                KLetter::P(..) => return Err(KashiwaraError::PhiLetter(l.to_string())),
            });
        }
        out.add_term(nw, c);
    }
    Ok(out)
}

/// The defining relations of the Kashiwara algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Mixed,
    OmegaOmega,
    XX,
}

impl FromStr for RelationKind {
    type Err = KashiwaraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mixed" => Ok(RelationKind::Mixed),
            "omega_omega" => Ok(RelationKind::OmegaOmega),
            "x_x" => Ok(RelationKind::XX),
            other => Err(KashiwaraError::UnknownRelation(other.to_string())),
        }
    }
}

fn qpow(e: i64) -> Coefficient {
    Scalar::q_pow(e).into()
}

fn push(e: &mut FormalExpr, w: &[KLetter], c: Coefficient) {
    e.add_term(w.to_vec(), &c);
}

/// LHS minus RHS of a defining relation.
///
/// * `Mixed(i,j,m,n)`: `q^a gamma O(j,m)X(i,n+1) - O(j,m+1)X(i,n)
///   - (q^a - 1) gamma^{m+1} d_ij d_{m,-n-1} - gamma X(i,n+1)O(j,m) + q^a X(i,n)O(j,m+1)`
/// * `OmegaOmega(i,j,k,l)`: `q^a O(i,k+1)O(j,l) - O(j,l)O(i,k+1) - O(i,k)O(j,l+1) + q^a O(j,l+1)O(i,k)`
/// * `XX(i,j,k,l)`: the quadratic relation element.
///
/// Here `a = (alpha_i|alpha_j)`.
pub fn kq_relation(
    cd: &CartanData,
    kind: RelationKind,
    i: usize,
    j: usize,
    m: i64,
    n: i64,
) -> FormalExpr {
    use KLetter::{O, X};
    let a = cd.pairing(i, j);
    let one = Coefficient::one;
    let mut e = FormalExpr::zero();
    match kind {
        RelationKind::Mixed => {
            let g = Coefficient::gamma_pow(1);
            push(&mut e, &[O(j, m), X(i, n + 1)], &qpow(a) * &g);
            push(&mut e, &[O(j, m + 1), X(i, n)], -one());
            if i == j && m == -n - 1 {
                let delta = &(&qpow(a) - &one()) * &Coefficient::gamma_pow(m + 1);
                push(&mut e, &[], -delta);
            }
            push(&mut e, &[X(i, n + 1), O(j, m)], -g);
            push(&mut e, &[X(i, n), O(j, m + 1)], qpow(a));
        }
        RelationKind::OmegaOmega => {
            let (k, l) = (m, n);
            push(&mut e, &[O(i, k + 1), O(j, l)], qpow(a));
            push(&mut e, &[O(j, l), O(i, k + 1)], -one());
            push(&mut e, &[O(i, k), O(j, l + 1)], -one());
            push(&mut e, &[O(j, l + 1), O(i, k)], qpow(a));
        }
        RelationKind::XX => {
            let (k, l) = (m, n);
            push(&mut e, &[X(i, k + 1), X(j, l)], one());
            push(&mut e, &[X(j, l), X(i, k + 1)], -qpow(-a));
            push(&mut e, &[X(i, k), X(j, l + 1)], -qpow(-a));
            push(&mut e, &[X(j, l + 1), X(i, k)], one());
        }
    }
    e
}

/// Operator identities verified on the free model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// Mixed psi relation (component form of the `Omega_psi x^-` exchange).
    MixedPsi,
    /// Mixed phi relation (component form of the `Omega_phi x^-` exchange).
    MixedPhi,
    /// `OmegaOmega` relation for `Omega_psi`.
    PsiPsi,
    /// The same relation for `Omega_phi`.
    PhiPhi,
    /// `O(i,k)P(j,m) = sum_r g_ij(r) gamma^{2r} P(j,r+m) O(i,k-r)`.
    PsiPhi,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::MixedPsi,
        Identity::MixedPhi,
        Identity::PsiPsi,
        Identity::PhiPhi,
        Identity::PsiPhi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::MixedPsi => "mixed-psi",
            Identity::MixedPhi => "mixed-phi",
            Identity::PsiPsi => "psi-psi",
            Identity::PhiPhi => "phi-phi",
            Identity::PsiPhi => "psi-phi",
        }
    }
}

impl FromStr for Identity {
    type Err = KashiwaraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| KashiwaraError::UnknownIdentity(s.to_string()))
    }
}

/// Colors and components of an identity instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityParams {
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub n: i64,
}

/// LHS minus RHS of `id` as an operator expression. `r_max` bounds the
/// `r`-sum of the psi-phi exchange and is ignored otherwise.
pub fn identity_expr(cd: &CartanData, id: Identity, p: IdentityParams, r_max: i64) -> FormalExpr {
    use KLetter::{O, P, X};
    let IdentityParams { i, j, m, n } = p;
    let a = cd.pairing(i, j);
    let one = Coefficient::one;
    let mut e = FormalExpr::zero();
    match id {
        Identity::MixedPsi => return kq_relation(cd, RelationKind::Mixed, i, j, m, n),
        Identity::MixedPhi => {
            let g = Coefficient::gamma_pow(1);
            push(&mut e, &[P(j, m), X(i, n + 1)], qpow(a));
            push(&mut e, &[P(j, m + 1), X(i, n)], -g.clone());
            if i == j && m == -n - 1 {
                let delta = &(&qpow(a) - &one()) * &Coefficient::gamma_pow(-m);
                push(&mut e, &[], -delta);
            }
            push(&mut e, &[X(i, n + 1), P(j, m)], -one());
            push(&mut e, &[X(i, n), P(j, m + 1)], &qpow(a) * &g);
        }
        Identity::PsiPsi => return kq_relation(cd, RelationKind::OmegaOmega, i, j, m, n),
        Identity::PhiPhi => {
            let (k, l) = (m, n);
            push(&mut e, &[P(i, k + 1), P(j, l)], qpow(a));
            push(&mut e, &[P(j, l), P(i, k + 1)], -one());
            push(&mut e, &[P(i, k), P(j, l + 1)], -one());
            push(&mut e, &[P(j, l + 1), P(i, k)], qpow(a));
        }
        Identity::PsiPhi => {
            let k = m;
            let mm = n;
            push(&mut e, &[O(i, k), P(j, mm)], one());
            for r in 0..=r_max {
                let g = cd.g_by_pairing(a, r as usize, false);
                push(
                    &mut e,
                    &[P(j, r + mm), O(i, k - r)],
                    -Coefficient::monomial(4 * r, g),
                );
            }
        }
    }
    e
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityFailure {
    pub word: String,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub params: IdentityParams,
    pub instances: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates LHS minus RHS of `id` on every test word and records nonzero
/// residuals.
pub fn verify_operator_identity(
    cd: &CartanData,
    id: Identity,
    params: IdentityParams,
    test_set: &[Vec<Letter>],
) -> IdentityReport {
    let mut failures = Vec::new();
    let fixed = (id != Identity::PsiPhi).then(|| identity_expr(cd, id, params, 0));
    for w in test_set {
        let e = Element::from_word(w.clone());
        let expr = match &fixed {
            Some(x) => x.clone(),
            None => {
                // O(i, k - r) kills w once k - r < -max index of color i in w
                let hi = w
                    .iter()
                    .filter(|l| l.color == params.i)
                    .map(|l| l.index)
                    .max();
                let r_max = hi.map_or(-1, |h| params.m + h);
                identity_expr(cd, id, params, r_max)
            }
        };
        let res = expr.apply(cd, &e);
        if !res.is_zero() {
            failures.push(IdentityFailure {
                word: word_to_string(w),
                residual: res.to_string(),
            });
        }
    }
    IdentityReport {
        identity: id.name(),
        params,
        instances: test_set.len(),
        failures,
    }
}

/// Grading of operator words: `X(i,m)` has weight `(+e_i, m)`,
/// `O(i,m)` and `P(i,m)` have weight `(-e_i, m)`.
fn kweight(w: &[KLetter], rank: usize) -> (Vec<i64>, i64) {
    let mut n = vec![0i64; rank];
    let mut d = 0;
    for l in w {
        match *l {
            KLetter::X(i, m) => {
                n[i - 1] += 1;
                d += m;
            }
            KLetter::O(i, m) | KLetter::P(i, m) => {
                n[i - 1] -= 1;
                d += m;
            }
        }
    }
    (n, d)
}

type KKey = (Vec<KLetter>, i64);

fn expr_vec(e: &FormalExpr) -> SparseVec<KKey> {
    let mut v = SparseVec::new();
    for (w, c) in e.iter() {
        for (ce, s) in c.terms() {
            v.insert((w.clone(), *ce), s.clone());
        }
    }
    v
}

/// A relation instance used in closure reports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RelationRef {
    pub kind: RelationKind,
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub n: i64,
    /// Exponent of `c` multiplying the relation.
    pub cexp: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureEntry {
    pub relation: RelationRef,
    pub closed: bool,
    /// `(coefficient, relation)` pairs whose sum equals `alpha_bar(relation)`.
    pub combination: Vec<(String, RelationRef)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub window: (i64, i64),
    pub span_window: (i64, i64),
    pub relations_checked: usize,
    pub spanning_set: usize,
    pub entries: Vec<ClosureEntry>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.entries.iter().all(|e| e.closed)
    }
}

/// Relation instances with parameters in `lo..=hi`; symmetric kinds are
/// listed once per unordered color pair.
pub fn relation_instances(rank: usize, lo: i64, hi: i64) -> Vec<RelationRef> {
    let mut out = Vec::new();
    for kind in [
        RelationKind::Mixed,
        RelationKind::OmegaOmega,
        RelationKind::XX,
    ] {
        for i in 1..=rank {
            for j in 1..=rank {
                if kind != RelationKind::Mixed && j < i {
                    continue;
                }
                for m in lo..=hi {
                    for n in lo..=hi {
                        out.push(RelationRef {
                            kind,
                            i,
                            j,
                            m,
                            n,
                            cexp: 0,
                        });
                    }
                }
            }
        }
    }
    out
}

fn relation_expr(cd: &CartanData, r: &RelationRef) -> FormalExpr {
    kq_relation(cd, r.kind, r.i, r.j, r.m, r.n).scale(&Coefficient::c_pow(r.cexp))
}

/// Checks that `alpha_bar` maps every relation with parameters in
/// `[kmin, kmax]` into the span of relations.
///
/// The spanning set uses parameters in the hull of the window and its image
/// `p -> -p - 1`, multiplied by `c^e` for `|e| <= 2`.
pub fn alpha_relation_closure(cd: &CartanData, kmin: i64, kmax: i64) -> ClosureReport {
    let lo = kmin.min(-kmax - 1);
    let hi = kmax.max(-kmin - 1);
    let mut spanning: BTreeMap<(Vec<i64>, i64), Vec<RelationRef>> = BTreeMap::new();
    for base in relation_instances(cd.rank(), lo, hi) {
        for cexp in -2..=2 {
            let r = RelationRef {
                cexp,
                ..base.clone()
            };
            let e = relation_expr(cd, &r);
            let Some((w, _)) = e.iter().next() else {
                continue;
            };
            spanning.entry(kweight(w, cd.rank())).or_default().push(r);
        }
    }
    let mut solvers: BTreeMap<(Vec<i64>, i64), SpanSolver<KKey>> = BTreeMap::new();
    let mut size = 0;
    for (wt, rels) in &spanning {
        let mut s = SpanSolver::new();
        for r in rels {
            s.insert(expr_vec(&relation_expr(cd, r)));
        }
        size += rels.len();
        solvers.insert(wt.clone(), s);
    }
    let mut entries = Vec::new();
    let targets = relation_instances(cd.rank(), kmin, kmax);
    for r in &targets {
        let image = alpha_bar(&relation_expr(cd, r)).expect("relations use X and O only");
        let Some((w, _)) = image.iter().next() else {
            entries.push(ClosureEntry {
                relation: r.clone(),
                closed: true,
                combination: Vec::new(),
            });
            continue;
        };
        let wt = kweight(w, cd.rank());
        let solved = solvers.get(&wt).and_then(|s| s.solve(&expr_vec(&image)));
        let combination = solved
            .as_ref()
            .map(|comb| {
                comb.iter()
                    .map(|(g, s)| (s.to_string(), spanning[&wt][*g].clone()))
                    .collect()
            })
            .unwrap_or_default();
        entries.push(ClosureEntry {
            relation: r.clone(),
            closed: solved.is_some(),
            combination,
        });
    }
    ClosureReport {
        window: (kmin, kmax),
        span_window: (lo, hi),
        relations_checked: targets.len(),
        spanning_set: size,
        entries,
    }
}
