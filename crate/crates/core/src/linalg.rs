//! Exact linear algebra: dense level matrices with fraction-free
//! elimination, and sparse echelon bases of module vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::pbw::{ModuleVector, Monomial};
use crate::rational::{fmt_rational, Rational};

/// Matrix of an operator between two graded pieces, columns indexed by the
/// source basis and rows by the target basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl LevelMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LevelMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        LevelMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(parts: &[LevelMatrix]) -> LevelMatrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        assert!(parts.iter().all(|m| m.cols == cols));
        LevelMatrix {
            rows: parts.iter().map(|m| m.rows).sum(),
            cols,
            data: parts.iter().flat_map(|m| m.data.iter().cloned()).collect(),
        }
    }

    pub fn mul(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = LevelMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LevelMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> LevelMatrix {
        LevelMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Integer row echelon form (Gauss-Jordan without division), rows made
    /// primitive after each step. Pivots are the first nonzero entry from
    /// the top in each column.
    fn integer_rref(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
            .collect();
        for row in rows.iter_mut() {
            make_primitive(row);
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r);
            let (prow, tail) = tail.split_first_mut().expect("pivot row");
            for other in head.iter_mut().chain(tail.iter_mut()) {
                if other[c].is_zero() {
                    continue;
                }
                let g = prow[c].gcd(&other[c]);
                let a = &prow[c] / &g;
                let b = &other[c] / &g;
                for (o, pv) in other.iter_mut().zip(prow.iter()) {
                    *o = &a * &*o - &b * pv;
                }
                make_primitive(other);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.integer_rref().1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.integer_rref();
        let pivot_set: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains_key(c))
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (&pc, &ri) in &pivot_set {
                    let num = &rows[ri][f];
                    if !num.is_zero() {
                        x[pc] = -Rational::new(num.clone(), rows[ri][pc].clone());
                    }
                }
                x
            })
            .collect()
    }

    /// Determinant of a square matrix by rational elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &a[r * n + c] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        det
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

impl fmt::Display for LevelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced echelon basis of a subspace of module vectors. Every row has
/// coefficient 1 on its pivot (its leading monomial) and 0 on every other
/// pivot.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<ModuleVector>,
    pivots: BTreeMap<Monomial, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.pivots.contains_key(m)
    }

    /// Basis vectors ordered by pivot, greatest first.
    pub fn basis(&self) -> Vec<ModuleVector> {
        self.pivots
            .values()
            .rev()
            .map(|&i| self.rows[i].clone())
            .collect()
    }

    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        let mut out = v.clone();
        for (m, c) in v.terms() {
            if let Some(&i) = self.pivots.get(m) {
                out.add_scaled(&-c.clone(), &self.rows[i]);
            }
        }
        out
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, v: &ModuleVector) -> bool {
        let r = self.reduce(v);
        let Some((lead, _)) = r.leading() else {
            return false;
        };
        let lead = lead.clone();
        let r = r.normalized();
        for row in self.rows.iter_mut() {
            let c = row.coeff(&lead);
            if !c.is_zero() {
                row.add_scaled(&-c, &r);
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a ModuleVector>) {
        for v in vs {
            self.insert(v);
        }
    }
}

/// Column coordinates of `v` in a monomial basis.
pub fn coordinates(basis: &[Monomial], v: &ModuleVector) -> Vec<Rational> {
    basis.iter().map(|m| v.coeff(m)).collect()
}

pub fn from_coordinates(basis: &[Monomial], x: &[Rational]) -> ModuleVector {
    basis
        .iter()
        .zip(x)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> LevelMatrix {
        LevelMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.nullspace();
        assert_eq!(k.len(), 1);
        let x = &k[0];
        for r in 0..3 {
            let s: Rational = (0..3).map(|c| a.get(r, c) * &x[c]).sum();
            assert!(s.is_zero());
        }
        assert_eq!(m(&[&[0, 0], &[0, 0]]).nullspace().len(), 2);
        assert_eq!(LevelMatrix::zeros(0, 3).nullspace().len(), 3);
    }

    #[test]
    fn determinant_small() {
        let a = LevelMatrix::from_rows(vec![vec![int(0), frac(1, 2)], vec![int(3), int(5)]]);
        assert_eq!(a.determinant(), frac(-3, 2));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in prop::collection::vec(-3i64..=3, 12), den in 1i64..5) {
            let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&x| frac(x, den)).collect()).collect();
            let a = LevelMatrix::from_rows(rows);
            let k = a.nullspace();
            prop_assert_eq!(k.len() + a.rank(), 4);
            for x in &k {
                for r in 0..a.rows() {
                    let s: Rational = (0..4).map(|c| a.get(r, c) * &x[c]).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
