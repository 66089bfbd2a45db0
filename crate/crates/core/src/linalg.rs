//! Exact linear algebra over `Q(s)` and over `Q(s)[c, 1/c]`.

use std::collections::BTreeMap;

use crate::scalars::{Coefficient, Scalar};

/// Sparse vector over `Q(s)` keyed by column.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    for (k, v) in x {
        let add = a * v;
        match y.get_mut(k) {
            Some(cur) => {
                *cur += &add;
                if cur.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    y.insert(k.clone(), add);
                }
            }
        }
    }
}

fn scaled<K: Ord>(v: SparseVec<K>, by: &Scalar) -> SparseVec<K> {
    v.into_iter().map(|(k, s)| (k, &s * by)).collect()
}

struct Pivot<K> {
    col: K,
    row: SparseVec<K>,
    /// `row` as a combination of the inserted generators.
    comb: SparseVec<usize>,
}

/// Incremental row echelon form that remembers how each row was built.
pub struct SpanSolver<K> {
    pivots: Vec<Pivot<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        SpanSolver::new()
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        SpanSolver {
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the pivots; returns the remainder and the
    /// combination of generators that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        for p in &self.pivots {
            if let Some(f) = v.get(&p.col).cloned() {
                let neg = -&f;
                axpy(&mut v, &neg, &p.row);
                axpy(&mut used, &f, &p.comb);
            }
        }
        (v, used)
    }

    /// Adds generator number `self.inserted`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        let Some((col, lead)) = rem.iter().next().map(|(k, s)| (k.clone(), s.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let mut comb = SparseVec::new();
        comb.insert(id, Scalar::one());
        axpy(&mut comb, &-Scalar::one(), &used);
        let row = scaled(rem, &inv);
        let comb = scaled(comb, &inv);
        // keep rows fully reduced with respect to the new pivot
        for p in &mut self.pivots {
            if let Some(f) = p.row.get(&col).cloned() {
                let neg = -&f;
                axpy(&mut p.row, &neg, &row);
                axpy(&mut p.comb, &neg, &comb);
            }
        }
        self.pivots.push(Pivot { col, row, comb });
        true
    }

    /// `Some(combination)` of inserted generators equal to `v`, if any.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(v.clone());
        rem.is_empty().then_some(used)
    }
}

/// Rank of a dense matrix over `Q(s)`.
pub fn rank_scalar(m: &[Vec<Scalar>]) -> usize {
    let mut solver = SpanSolver::new();
    for row in m {
        let v: SparseVec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| (j, s.clone()))
            .collect();
        solver.insert(v);
    }
    solver.rank()
}

/// Rank over the fraction field of `Q(s)[c, 1/c]` by fraction-free
/// (Bareiss) elimination with exact divisions.
pub fn rank_coefficient(m: &[Vec<Coefficient>]) -> usize {
    let mut a: Vec<Vec<Coefficient>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = Coefficient::one();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let num = &(&a[i][j] * &a[r][col]) - &(&a[i][col] * &a[r][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("nonzero pivot")
                    .expect("Bareiss division is exact");
            }
            a[i][col] = Coefficient::zero();
        }
        prev = a[r][col].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_rank() {
        let m: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..3).map(|j| s((i == j) as i64)).collect())
            .collect();
        assert_eq!(rank_scalar(&m), 3);
        let mc: Vec<Vec<Coefficient>> = m
            .iter()
            .map(|r| r.iter().map(|x| x.clone().into()).collect())
            .collect();
        assert_eq!(rank_coefficient(&mc), 3);
    }

    #[test]
    fn dependent_row() {
        let r0 = vec![s(1), Scalar::s_pow(1), s(3)];
        let r1: Vec<Scalar> = r0.iter().map(|x| x * &Scalar::q_pow(1)).collect();
        let r2 = vec![s(0), s(1), s(1)];
        assert_eq!(rank_scalar(&[r0.clone(), r1.clone(), r2.clone()]), 2);
        let to_c = |r: &Vec<Scalar>| {
            r.iter()
                .map(|x| Coefficient::from(x.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(rank_coefficient(&[to_c(&r0), to_c(&r1), to_c(&r2)]), 2);
    }

    #[test]
    fn c_dependent_rank() {
        // [[1, c], [c, c^2]] is singular; [[1, c], [c, 1]] is not.
        let c = Coefficient::c_pow(1);
        let one = Coefficient::one();
        assert_eq!(
            rank_coefficient(&[
                vec![one.clone(), c.clone()],
                vec![c.clone(), Coefficient::c_pow(2)]
            ]),
            1
        );
        assert_eq!(
            rank_coefficient(&[vec![one.clone(), c.clone()], vec![c, one]]),
            2
        );
    }

    #[test]
    fn solver_certificate() {
        let mut sv: SpanSolver<usize> = SpanSolver::new();
        let g0: SparseVec<usize> = [(0, s(1)), (1, s(1))].into_iter().collect();
        let g1: SparseVec<usize> = [(1, s(1)), (2, s(1))].into_iter().collect();
        assert!(sv.insert(g0.clone()));
        assert!(sv.insert(g1.clone()));
        let target: SparseVec<usize> = [(0, s(2)), (1, s(5)), (2, s(3))].into_iter().collect();
        let comb = sv.solve(&target).unwrap();
        assert_eq!(comb.get(&0), Some(&s(2)));
        assert_eq!(comb.get(&1), Some(&s(3)));
        let miss: SparseVec<usize> = [(0, s(1))].into_iter().collect();
        assert!(sv.solve(&miss).is_none());
    }
}
