//! Smith normal form of integer matrices with unimodular transforms.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.set(i, i, 1);
        }
        out
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Copy + Into<i128>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<T: Copy + Into<i128>>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut out = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, v.into());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (Bareiss). Square matrices only.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a.get(k, k) == 0 {
                let Some(p) = (k + 1..n).find(|&i| a.get(i, k) != 0) else {
                    return 0;
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k);
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }
}

/// Integer Smith normal form. Pivoting picks the nonzero entry of least
/// absolute value, first by row then by column, which makes the output a
/// deterministic function of the input.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);

    'pivots: for t in 0..n {
        loop {
            let mut best: Option<(i128, usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = w.get(i, j).abs();
                    if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break 'pivots;
            };
            w.swap_rows(t, pi);
            u.swap_rows(t, pi);
            w.swap_cols(t, pj);
            v.swap_cols(t, pj);
            if w.get(t, t) < 0 {
                w.negate_row(t);
                u.negate_row(t);
            }
            let p = w.get(t, t);

            let mut dirty = false;
            for i in t + 1..r {
                let q = w.get(i, t).div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if w.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let q = w.get(t, j).div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if w.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| w.get(i, j) % p != 0));
            match offender {
                Some(i) => {
                    w.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
    }
    SnfResult { u, v, d: w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(a: &IntMatrix) -> SnfResult {
        let s = snf(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), 1);
        assert_eq!(s.v.determinant().abs(), 1);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        let diag = s.diagonal();
        assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = verify(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_rows(&[vec![2i64, 4], vec![0, 6]]);
        assert_eq!(verify(&a).diagonal(), vec![2, 6]);
    }

    #[test]
    fn zero_and_empty() {
        let z = IntMatrix::from_rows(&[vec![0i64]]);
        assert_eq!(verify(&z).d, z);
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(verify(&e).d.rows(), 0);
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[vec![6i64, -4, 10], vec![3, 9, -12], vec![0, 5, 7]]);
        assert_eq!(snf(&a), snf(&a));
        verify(&a);
    }
}
