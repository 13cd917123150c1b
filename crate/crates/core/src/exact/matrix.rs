//! Dense matrices, fraction-free elimination over the rationals and
//! cofactor determinants over any coefficient ring.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, zero: T) -> Self {
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: T) -> Self {
        let mut m = Self::filled(n, n, zero);
        for i in 0..n {
            m[(i, i)] = m.zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, zero: T) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, zero, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<T>], rows: usize, zero: T) -> Self {
        let mut m = Self::filled(rows, cols.len(), zero);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::filled(self.cols, self.rows, self.zero.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::filled(self.rows, other.cols, self.zero.clone());
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.vanishes() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.vanishes() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn map<U: Scalar>(&self, zero: U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, zero, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::filled(rows.len(), cols.len(), self.zero.clone());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Cofactor expansion along columns, memoized on row subsets.
    pub fn determinant_expand(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.zero.one_like());
        }
        assert!(n <= 63, "cofactor expansion limited to 63 rows");
        // level j holds minors of the first j+1 columns keyed by row mask
        let mut level: HashMap<u64, T> = HashMap::new();
        for i in 0..n {
            if !self[(i, 0)].vanishes() {
                level.insert(1 << i, self[(i, 0)].clone());
            }
        }
        for j in 1..n {
            let mut next: HashMap<u64, T> = HashMap::new();
            for (&mask, minor) in &level {
                for i in 0..n {
                    if mask & (1 << i) != 0 || self[(i, j)].vanishes() {
                        continue;
                    }
                    // cofactor sign: parity of the chosen rows below row i
                    let below = (mask >> i).count_ones();
                    let mut term = minor.times(&self[(i, j)]);
                    if below % 2 == 1 {
                        term = term.negated();
                    }
                    let key = mask | (1 << i);
                    let entry = next.entry(key).or_insert_with(|| self.zero.clone());
                    *entry = entry.plus(&term);
                }
            }
            next.retain(|_, v| !v.vanishes());
            level = next;
        }
        Ok(level.remove(&((1u64 << n) - 1)).unwrap_or_else(|| self.zero.clone()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub type RatMatrix = Matrix<Rational>;

impl Matrix<Rational> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Rational::zero())
    }

    pub fn eye(n: usize) -> Self {
        Self::identity(n, Rational::zero())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
            Rational::zero(),
        )
    }

    pub fn rank(&self) -> usize {
        Echelon::of_rows(self.to_rows(), self.cols).pivots.len()
    }

    /// Basis of the right null space, each vector scaled to primitive integers.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        Echelon::of_rows(self.to_rows(), self.cols).kernel()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (ints, scales) = integer_rows(self.to_rows());
        let e = Echelon::of_int_rows(ints, n);
        if e.pivots.len() < n {
            return Ok(Rational::zero());
        }
        let mut det = Rational::from_integer(e.rows[n - 1][n - 1].clone());
        if e.swaps % 2 == 1 {
            det = -det;
        }
        let scale: BigInt = scales.iter().product();
        Ok(det / Rational::from_integer(scale))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::eye(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[i][j] -= t;
                        let t = &f * &inv[c][j];
                        inv[i][j] -= t;
                    }
                }
            }
        }
        Ok(Self::from_rows(inv, Rational::zero()))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Rank of a list of vectors.
pub fn rank_of_vectors(vectors: &[Vec<Rational>], dim: usize) -> usize {
    Echelon::of_rows(vectors.to_vec(), dim).pivots.len()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = rank_of_vectors(a, dim);
    let rb = rank_of_vectors(b, dim);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_vectors(&both, dim) == ra
}

fn integer_rows(rows: Vec<Vec<Rational>>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let ints = rows
        .into_iter()
        .map(|row| {
            let l = common_denominator(&row);
            let out = row
                .iter()
                .map(|r| (r * Rational::from_integer(l.clone())).to_integer())
                .collect();
            scales.push(l);
            out
        })
        .collect();
    (ints, scales)
}

/// Row echelon form computed by Bareiss elimination on integer rows.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
    swaps: usize,
}

impl Echelon {
    pub fn of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        Self::of_int_rows(integer_rows(rows).0, cols)
    }

    pub fn of_int_rows(mut a: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(a.iter().all(|r| r.len() == cols), "ragged rows");
        let m = a.len();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].abs())
            else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = pivot_row[c].clone();
            for row in bottom.iter_mut() {
                let f = row[c].clone();
                if f.is_zero() {
                    if !prev.is_one() {
                        for x in row[c + 1..].iter_mut() {
                            if !x.is_zero() {
                                *x = &*x * &piv / &prev;
                            }
                        }
                    } else if !piv.is_one() {
                        for x in row[c + 1..].iter_mut() {
                            if !x.is_zero() {
                                *x *= &piv;
                            }
                        }
                    }
                    continue;
                }
                for j in c + 1..cols {
                    let v = &piv * &row[j] - &f * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
                row[c] = BigInt::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon { rows: a, pivots, cols, swaps }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (i, &pc) in self.pivots.iter().enumerate().rev() {
                let row = &self.rows[i];
                let mut s = Rational::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Rational::from_integer(row[pc].clone());
            }
            basis.push(primitive(x));
        }
        basis
    }
}

/// Scales a vector to coprime integers with positive last nonzero entry.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = common_denominator(&v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|r| (r * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{SparsePolynomial, VarSet};
    use crate::exact::rational::int;

    #[test]
    fn kernels() {
        assert_eq!(RatMatrix::zeros(2, 3).kernel_basis().len(), 3);
        assert!(RatMatrix::eye(3).kernel_basis().is_empty());
        let k = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn determinants() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant().unwrap(), int(-2));
        assert_eq!(m.determinant_expand().unwrap(), int(-2));
        assert_eq!(RatMatrix::eye(5).determinant().unwrap(), int(1));
        assert!(matches!(RatMatrix::zeros(2, 3).determinant(), Err(Error::NotSquare(2, 3))));
        let v = VarSet::new(["u11", "u21"]);
        let p = |s: &str| SparsePolynomial::parse(&v, s).unwrap();
        let m = Matrix::from_rows(
            vec![vec![p("u11"), p("u21")], vec![p("0"), p("u11^2")]],
            p("0"),
        );
        assert_eq!(m.determinant_expand().unwrap(), p("u11^3"));
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::eye(3));
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn skipped_pivot_columns() {
        let m = RatMatrix::from_i64(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4]]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel_basis() {
            assert!(m.apply(&v).iter().all(Zero::is_zero));
        }
    }
}
