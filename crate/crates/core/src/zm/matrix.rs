use std::fmt;

use super::arith::{add_mod, mul_mod};

/// Dense row-major matrix with entries in Z/m (values kept in `[0, m)`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ZMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize, m: u64) -> Self {
        let mut out = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, v % m);
            }
        }
        out
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u64>], rows: usize, m: u64) -> Self {
        let mut out = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, &v) in c.iter().enumerate() {
                out.set(i, j, v % m);
            }
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: u64, m: u64) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let v = add_mod(self.get(dst, j), mul_mod(k, s, m), m);
                self.set(dst, j, v);
            }
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: u64, m: u64) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let v = add_mod(self.get(i, dst), mul_mod(k, s, m), m);
                self.set(i, dst, v);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, k: u64, m: u64) {
        for j in 0..self.cols {
            let v = mul_mod(self.get(i, j), k, m);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, k: u64, m: u64) {
        for i in 0..self.rows {
            let v = mul_mod(self.get(i, j), k, m);
            self.set(i, j, v);
        }
    }

    /// Replaces rows `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    pub fn mix_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [u64; 4], m: u64) {
        for j in 0..self.cols {
            let x = self.get(a, j);
            let y = self.get(b, j);
            self.set(a, j, add_mod(mul_mod(p, x, m), mul_mod(q, y, m), m));
            self.set(b, j, add_mod(mul_mod(r, x, m), mul_mod(s, y, m), m));
        }
    }

    /// Replaces columns `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    pub fn mix_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [u64; 4], m: u64) {
        for i in 0..self.rows {
            let x = self.get(i, a);
            let y = self.get(i, b);
            self.set(i, a, add_mod(mul_mod(p, x, m), mul_mod(q, y, m), m));
            self.set(i, b, add_mod(mul_mod(r, x, m), mul_mod(s, y, m), m));
        }
    }

    pub fn mul(&self, other: &ZMat, m: u64) -> ZMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ZMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = add_mod(out.get(i, j), mul_mod(a, b, m), m);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], m: u64) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, m), m))
            })
            .collect()
    }

    pub fn hcat(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.rows, other.rows);
        let mut out = ZMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

impl fmt::Debug for ZMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

