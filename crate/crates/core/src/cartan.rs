//! Untwisted affine Cartan data and the structure series `g_ij(t)`.
//!
//! Node 0 is the affine node; colors seen by the current algebra are
//! `1..=N`. Finite nodes follow Bourbaki numbering.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use thiserror::Error;

use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = CartanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(CartanError::UnknownType(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("invalid rank {rank} for type {ty}: {constraint}")]
    InvalidRank {
        ty: CartanType,
        rank: usize,
        constraint: &'static str,
    },
    #[error("malformed label {0:?}, expected e.g. \"A2\"")]
    BadLabel(String),
    #[error("Cartan table check failed: {0}")]
    Invalid(String),
    #[error("color {color} out of range 1..={rank}")]
    ColorOutOfRange { color: usize, rank: usize },
}

/// Affine Cartan matrix, symmetrizers and the pairing `(alpha_i|alpha_j)`.
pub struct CartanData {
    ty: CartanType,
    rank: usize,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    g_cache: RwLock<HashMap<(i64, bool), Vec<Scalar>>>,
}

impl Clone for CartanData {
    fn clone(&self) -> Self {
        CartanData {
            ty: self.ty,
            rank: self.rank,
            a: self.a.clone(),
            d: self.d.clone(),
            g_cache: RwLock::new(self.g_cache.read().expect("g cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for CartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CartanData")
            .field("type", &self.ty)
            .field("rank", &self.rank)
            .field("a", &self.a)
            .field("d", &self.d)
            .finish()
    }
}

impl PartialEq for CartanData {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.rank == other.rank
    }
}

/// Symmetrizers, edges and marks of a finite diagram.
type FiniteTables = (Vec<i64>, Vec<(usize, usize)>, Vec<i64>);

/// Finite data: symmetrizers, edges (Bourbaki numbering, 1-based) and marks.
fn finite_tables(ty: CartanType, n: usize) -> Result<FiniteTables, CartanError> {
    let bad = |constraint| CartanError::InvalidRank {
        ty,
        rank: n,
        constraint,
    };
    let chain = |len: usize| (1..len).map(|i| (i, i + 1)).collect::<Vec<_>>();
    Ok(match ty {
        CartanType::A => {
            if n < 1 {
                return Err(bad("type A needs rank >= 1"));
            }
            (vec![1; n], chain(n), vec![1; n])
        }
        CartanType::B => {
            if n < 3 {
                return Err(bad("type B needs rank >= 3 (B2 is C2)"));
            }
            let mut d = vec![2; n];
            d[n - 1] = 1;
            let mut marks = vec![2; n];
            marks[0] = 1;
            (d, chain(n), marks)
        }
        CartanType::C => {
            if n < 2 {
                return Err(bad("type C needs rank >= 2"));
            }
            let mut d = vec![1; n];
            d[n - 1] = 2;
            let mut marks = vec![2; n];
            marks[n - 1] = 1;
            (d, chain(n), marks)
        }
        CartanType::D => {
            if n < 4 {
                return Err(bad("type D needs rank >= 4"));
            }
            let mut edges = chain(n - 1);
            edges.push((n - 2, n));
            let mut marks = vec![2; n];
            marks[0] = 1;
            marks[n - 2] = 1;
            marks[n - 1] = 1;
            (vec![1; n], edges, marks)
        }
        CartanType::E => {
            let marks = match n {
                6 => vec![1, 2, 2, 3, 2, 1],
                7 => vec![2, 2, 3, 4, 3, 2, 1],
                8 => vec![2, 3, 4, 6, 5, 4, 3, 2],
                _ => return Err(bad("type E needs rank 6, 7 or 8")),
            };
            let mut edges = vec![(1, 3), (2, 4)];
            edges.extend((3..n).map(|i| (i, i + 1)));
            (vec![1; n], edges, marks)
        }
        CartanType::F => {
            if n != 4 {
                return Err(bad("type F needs rank 4"));
            }
            (vec![2, 2, 1, 1], chain(4), vec![2, 3, 4, 2])
        }
        CartanType::G => {
            if n != 2 {
                return Err(bad("type G needs rank 2"));
            }
            (vec![1, 3], chain(2), vec![3, 2])
        }
    })
}

/// Builds and validates the affine Cartan data of type `ty` and finite rank `rank`.
#[allow(clippy::needless_range_loop)]
pub fn load_cartan(ty: CartanType, rank: usize) -> Result<CartanData, CartanError> {
    let (d_fin, edges, marks) = finite_tables(ty, rank)?;
    let n = rank;
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    for i in 1..=n {
        a[i][i] = 2;
    }
    for &(i, j) in &edges {
        let pair = -d_fin[i - 1].max(d_fin[j - 1]);
        a[i][j] = pair / d_fin[i - 1];
        a[j][i] = pair / d_fin[j - 1];
    }
    let d_long = *d_fin.iter().max().expect("nonempty");
    let comarks: Vec<i64> = (0..n).map(|i| marks[i] * d_fin[i] / d_long).collect();
    for i in 1..=n {
        a[i][0] = -(1..=n).map(|j| a[i][j] * marks[j - 1]).sum::<i64>();
        a[0][i] = -(1..=n).map(|j| comarks[j - 1] * a[j][i]).sum::<i64>();
    }
    a[0][0] = 2;
    let mut d = vec![d_long];
    d.extend(d_fin);
    let cd = CartanData {
        ty,
        rank,
        a,
        d,
        g_cache: RwLock::new(HashMap::new()),
    };
    cd.validate(&marks)?;
    Ok(cd)
}

impl CartanData {
    /// Parses labels such as `"A1"` or `"c2"`.
    pub fn from_label(label: &str) -> Result<CartanData, CartanError> {
        let label = label.trim();
        let mut chars = label.chars();
        let ty: CartanType = chars
            .next()
            .ok_or_else(|| CartanError::BadLabel(label.to_string()))?
            .to_string()
            .parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CartanError::BadLabel(label.to_string()))?;
        load_cartan(ty, rank)
    }

    fn validate(&self, marks: &[i64]) -> Result<(), CartanError> {
        let n = self.rank;
        let fail = |m: String| Err(CartanError::Invalid(m));
        for i in 0..=n {
            if self.a[i][i] != 2 {
                return fail(format!("a[{i}][{i}] != 2"));
            }
            for j in 0..=n {
                if i != j && self.a[i][j] > 0 {
                    return fail(format!("a[{i}][{j}] > 0"));
                }
                if self.d[i] * self.a[i][j] != self.d[j] * self.a[j][i] {
                    return fail(format!("DA not symmetric at ({i},{j})"));
                }
                if (self.a[i][j] == 0) != (self.a[j][i] == 0) {
                    return fail(format!("zero pattern not symmetric at ({i},{j})"));
                }
            }
        }
        // null vector delta = alpha_0 + sum marks_i alpha_i
        let mut delta = vec![1i64];
        delta.extend_from_slice(marks);
        for i in 0..=n {
            let v: i64 = (0..=n).map(|j| self.a[i][j] * delta[j]).sum();
            if v != 0 {
                return fail(format!("row {i} does not annihilate the null root"));
            }
        }
        // finite part of DA positive definite: all leading minors positive
        let b: Vec<Vec<i128>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| (self.d[i] * self.a[i][j]) as i128)
                    .collect()
            })
            .collect();
        for k in 1..=n {
            if bareiss_det(&b, k) <= 0 {
                return fail(format!("finite part not positive definite (minor {k})"));
            }
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    /// Affine Cartan matrix entry, `0 <= i, j <= N`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Symmetrizer `d_i`, `0 <= i <= N`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn check_color(&self, i: usize) -> Result<(), CartanError> {
        if i == 0 || i > self.rank {
            Err(CartanError::ColorOutOfRange {
                color: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `(alpha_i|alpha_j) = d_i a_ij`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// `q_i - q_i^{-1}`.
    pub fn qi_diff(&self, i: usize) -> Scalar {
        crate::scalars::q_i_diff(self.d[i])
    }

    /// `r`-th Taylor coefficient at `t = 0` of `(c t - 1)/(t - c)` with
    /// `c = q^{(alpha_i|alpha_j)}`, or `c = q^{-(alpha_i|alpha_j)}` when `inverse_q`.
    pub fn g_coeff(
        &self,
        i: usize,
        j: usize,
        r: usize,
        inverse_q: bool,
    ) -> Result<Scalar, CartanError> {
        self.check_color(i)?;
        self.check_color(j)?;
        Ok(self.g_by_pairing(self.pairing(i, j), r, inverse_q))
    }

    pub(crate) fn g_by_pairing(&self, pair: i64, r: usize, inverse_q: bool) -> Scalar {
        let key = (pair, inverse_q);
        if let Some(v) = self.g_cache.read().expect("g cache poisoned").get(&key) {
            if r < v.len() {
                return v[r].clone();
            }
        }
        let mut cache = self.g_cache.write().expect("g cache poisoned");
        let series = cache.entry(key).or_default();
        let c = Scalar::q_pow(if inverse_q { -pair } else { pair });
        extend_series(series, &c, r + 1);
        series[r].clone()
    }

    /// The series `g_ij` (or its `q -> q^{-1}` form) truncated to `order` terms.
    pub fn g_series(
        &self,
        i: usize,
        j: usize,
        inverse_q: bool,
        order: usize,
    ) -> Result<GSeries, CartanError> {
        self.check_color(i)?;
        self.check_color(j)?;
        let coeffs = (0..order)
            .map(|r| self.g_by_pairing(self.pairing(i, j), r, inverse_q))
            .collect();
        Ok(GSeries {
            i,
            j,
            inverse_q,
            base: if inverse_q {
                -self.pairing(i, j)
            } else {
                self.pairing(i, j)
            },
            coeffs,
        })
    }
}

/// Exact power-series division of `c t - 1` by `t - c`, extended in place.
fn extend_series(series: &mut Vec<Scalar>, c: &Scalar, len: usize) {
    let c_inv = c.inv().expect("q-power is invertible");
    while series.len() < len {
        let r = series.len();
        let numer = match r {
            0 => -Scalar::one(),
            1 => c.clone(),
            _ => Scalar::zero(),
        };
        let prev = if r == 0 {
            Scalar::zero()
        } else {
            series[r - 1].clone()
        };
        // coefficient of t^r in (t - c) g(t) is g_{r-1} - c g_r
        series.push(&(&prev - &numer) * &c_inv);
    }
}

fn bareiss_det(m: &[Vec<i128>], k: usize) -> i128 {
    let mut a: Vec<Vec<i128>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            match (p + 1..k).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
        }
        prev = a[p][p];
    }
    sign * a[k - 1][k - 1]
}

/// Truncated Taylor series of `(c t - 1)/(t - c)` with `c = q^base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSeries {
    pub i: usize,
    pub j: usize,
    pub inverse_q: bool,
    /// Exponent of `q` in `c`.
    pub base: i64,
    pub coeffs: Vec<Scalar>,
}

impl GSeries {
    /// Checks `g(t)(t - c) = c t - 1` through the truncation order.
    pub fn product_identity_holds(&self) -> bool {
        let c = Scalar::q_pow(self.base);
        (0..self.coeffs.len()).all(|r| {
            let prev = if r == 0 {
                Scalar::zero()
            } else {
                self.coeffs[r - 1].clone()
            };
            let lhs = &prev - &(&c * &self.coeffs[r]);
            let rhs = match r {
                0 => -Scalar::one(),
                1 => c.clone(),
                _ => Scalar::zero(),
            };
            lhs == rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_matrix() {
        let cd = load_cartan(CartanType::A, 1).unwrap();
        assert_eq!(cd.matrix(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(cd.symmetrizers(), &[1, 1]);
    }

    #[test]
    fn a2_matrix() {
        let cd = load_cartan(CartanType::A, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cd.a(i, j), if i == j { 2 } else { -1 });
            }
        }
        assert_eq!(cd.symmetrizers(), &[1, 1, 1]);
    }

    #[test]
    fn all_families_load() {
        let cases = [
            ("A", 1..=8),
            ("B", 3..=8),
            ("C", 2..=8),
            ("D", 4..=8),
            ("E", 6..=8),
            ("F", 4..=4),
            ("G", 2..=2),
        ];
        for (t, ranks) in cases {
            for n in ranks {
                let ty: CartanType = t.parse().unwrap();
                load_cartan(ty, n).unwrap_or_else(|e| panic!("{t}{n}: {e}"));
            }
        }
    }

    #[test]
    fn invalid_ranks_name_the_constraint() {
        let err = load_cartan(CartanType::E, 9).unwrap_err();
        assert!(err.to_string().contains("rank 6, 7 or 8"));
        assert!(load_cartan(CartanType::A, 0).is_err());
        assert!(load_cartan(CartanType::G, 3).is_err());
        assert!(CartanData::from_label("X3").is_err());
    }

    #[test]
    fn c2_and_g2_pairings() {
        let c2 = CartanData::from_label("C2").unwrap();
        assert_eq!(c2.pairing(1, 1), 2);
        assert_eq!(c2.pairing(2, 2), 4);
        assert_eq!(c2.pairing(1, 2), -2);
        assert_eq!((c2.a(1, 2), c2.a(2, 1)), (-2, -1));
        let g2 = CartanData::from_label("G2").unwrap();
        assert_eq!((g2.a(1, 2), g2.a(2, 1)), (-3, -1));
        assert_eq!(g2.d(0), 3);
    }

    #[test]
    fn g_closed_forms() {
        let cd = CartanData::from_label("A2").unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 1)] {
            let a = cd.pairing(i, j);
            for inv in [false, true] {
                let e = if inv { -a } else { a };
                assert_eq!(cd.g_coeff(i, j, 0, inv).unwrap(), Scalar::q_pow(-e));
                for r in 1..8i64 {
                    let expected = &Scalar::q_pow(e * (-r - 1)) - &Scalar::q_pow(e * (-r + 1));
                    assert_eq!(cd.g_coeff(i, j, r as usize, inv).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn a1_examples() {
        let cd = CartanData::from_label("A1").unwrap();
        assert_eq!(cd.g_coeff(1, 1, 0, false).unwrap(), Scalar::q_pow(-2));
        assert_eq!(
            cd.g_coeff(1, 1, 1, true).unwrap(),
            &Scalar::q_pow(2) * &Scalar::q_pow(2) - Scalar::one()
        );
        assert!(cd.g_coeff(2, 1, 0, false).is_err());
    }

    #[test]
    fn inverse_is_variable_inversion() {
        let cd = CartanData::from_label("C2").unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                for r in 0..6 {
                    let g = cd.g_coeff(i, j, r, false).unwrap();
                    let gi = cd.g_coeff(i, j, r, true).unwrap();
                    assert_eq!(gi, g.invert_variable());
                }
                assert!(cd
                    .g_series(i, j, false, 10)
                    .unwrap()
                    .product_identity_holds());
            }
        }
    }

    #[test]
    fn orthogonal_colors_give_trivial_series() {
        let cd = CartanData::from_label("A3").unwrap();
        assert_eq!(cd.pairing(1, 3), 0);
        let g = cd.g_series(1, 3, false, 10).unwrap();
        assert!(g.coeffs[0].is_one());
        assert!(g.coeffs[1..].iter().all(|c| c.is_zero()));
    }
}
