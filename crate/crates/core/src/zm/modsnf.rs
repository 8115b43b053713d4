//! Smith normal form over the principal ideal ring Z/m.
//!
//! All entries stay in `[0, m)`, so there is no coefficient growth. The
//! transforms satisfy `U * A * V = D` over Z/m where `D` carries the
//! divisors `d_1 | d_2 | ... | m` on its diagonal (`m` standing for a zero
//! entry).

use super::arith::{divisor_of, ext_gcd, inv_mod, neg_mod, reduce_i128, unit_part};
use super::matrix::ZMat;

#[derive(Clone, Debug)]
pub struct ModSnf {
    pub m: u64,
    /// Diagonal as divisors of `m`; `m` encodes zero. Length `min(rows, cols)`.
    pub diag: Vec<u64>,
    pub u: ZMat,
    pub u_inv: ZMat,
    pub v: ZMat,
}

impl ModSnf {
    pub fn new(a: &ZMat, m: u64) -> Self {
        let (r, c) = (a.rows(), a.cols());
        let mut w = a.clone();
        let mut u = ZMat::identity(r);
        let mut u_inv = ZMat::identity(r);
        let mut v = ZMat::identity(c);
        let n = r.min(c);
        let mut diag = vec![m; n];

        'pivots: for t in 0..n {
            loop {
                // Pivot: smallest associated divisor, first by row then column.
                let mut best: Option<(u64, usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let d = divisor_of(w.get(i, j), m);
                        if d < m && best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
                let Some((_, pi, pj)) = best else {
                    break 'pivots;
                };
                w.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                w.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let unit = unit_part(w.get(t, t), m);
                let unit_inv = inv_mod(unit, m).expect("unit");
                w.scale_row(t, unit_inv, m);
                u.scale_row(t, unit_inv, m);
                u_inv.scale_col(t, unit, m);
                let g = w.get(t, t);

                let mut restart = false;
                for i in t + 1..r {
                    let b = w.get(i, t);
                    if b == 0 {
                        continue;
                    }
                    if b % g == 0 {
                        let q = neg_mod(b / g, m);
                        w.add_row_multiple(i, t, q, m);
                        u.add_row_multiple(i, t, q, m);
                        u_inv.add_col_multiple(t, i, b / g, m);
                    } else {
                        let [p, q, rr, s] = bezout(g, b, m);
                        w.mix_rows(t, i, [p, q, rr, s], m);
                        u.mix_rows(t, i, [p, q, rr, s], m);
                        // inverse of [[p, q], [rr, s]] is [[s, -q], [-rr, p]]
                        u_inv.mix_cols(t, i, [s, neg_mod(rr, m), neg_mod(q, m), p], m);
                        restart = true;
                        break;
                    }
                }
                if restart {
                    continue;
                }
                for j in t + 1..c {
                    let b = w.get(t, j);
                    if b == 0 {
                        continue;
                    }
                    if b % g == 0 {
                        let q = neg_mod(b / g, m);
                        w.add_col_multiple(j, t, q, m);
                        v.add_col_multiple(j, t, q, m);
                    } else {
                        let mix = bezout(g, b, m);
                        w.mix_cols(t, j, mix, m);
                        v.mix_cols(t, j, mix, m);
                        restart = true;
                        break;
                    }
                }
                if restart {
                    continue;
                }
                // Divisibility of the remaining block by the pivot.
                let mut offender = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        if w.get(i, j) % g != 0 {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        w.add_row_multiple(t, i, 1, m);
                        u.add_row_multiple(t, i, 1, m);
                        u_inv.add_col_multiple(i, t, neg_mod(1, m), m);
                    }
                    None => {
                        diag[t] = g;
                        break;
                    }
                }
            }
        }
        Self {
            m,
            diag,
            u,
            u_inv,
            v,
        }
    }

    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    /// Solves `A x = b` over Z/m, returning one solution if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let m = self.m;
        let y = self.u.mul_vec(b, m);
        let mut z = vec![0u64; self.cols()];
        for (t, &yt) in y.iter().enumerate() {
            if t < self.diag.len() {
                let d = self.diag[t];
                if d == m {
                    if yt != 0 {
                        return None;
                    }
                } else {
                    if yt % d != 0 {
                        return None;
                    }
                    z[t] = yt / d;
                }
            } else if yt != 0 {
                return None;
            }
        }
        Some(self.v.mul_vec(&z, m))
    }

    /// Generators of `{x : A x = 0}` over Z/m, in SNF order.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let m = self.m;
        let mut gens = Vec::new();
        for t in 0..self.cols() {
            let scale = if t < self.diag.len() {
                let d = self.diag[t];
                if d == m {
                    1
                } else {
                    m / d
                }
            } else {
                1
            };
            if scale % m == 0 {
                continue;
            }
            let col: Vec<u64> = self.v.col(t).into_iter().map(|x| x * scale % m).collect();
            if col.iter().any(|&x| x != 0) {
                gens.push(col);
            }
        }
        gens
    }
}

/// Unimodular 2x2 integer matrix `[[s, t], [-b/h, a/h]]` (reduced mod `m`)
/// sending `(a, b)` to `(h, 0)`, `h = gcd(a, b)`.
fn bezout(a: u64, b: u64, m: u64) -> [u64; 4] {
    let (h, s, t) = ext_gcd(a as i128, b as i128);
    [
        reduce_i128(s, m),
        reduce_i128(t, m),
        reduce_i128(-(b as i128 / h), m),
        reduce_i128(a as i128 / h, m),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(a: &ZMat, m: u64) {
        let s = ModSnf::new(a, m);
        let d = s.u.mul(a, m).mul(&s.v, m);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j && i < s.diag.len() { s.diag[i] % m } else { 0 };
                assert_eq!(d.get(i, j), expect, "U A V != D for {a:?} mod {m}");
            }
        }
        assert!(s.u.mul(&s.u_inv, m) == ZMat::identity(a.rows()));
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", s.diag);
        }
        for k in s.kernel() {
            assert!(a.mul_vec(&k, m).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn random_matrices_diagonalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [2u64, 4, 6, 8, 12, 30, 36] {
            for _ in 0..40 {
                let r = rng.gen_range(0..6);
                let c = rng.gen_range(0..6);
                let rows: Vec<Vec<u64>> =
                    (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..m)).collect()).collect();
                check(&ZMat::from_rows(&rows, c, m), m);
            }
        }
    }

    #[test]
    fn solve_finds_preimage() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [4u64, 6, 12] {
            for _ in 0..30 {
                let rows: Vec<Vec<u64>> =
                    (0..4).map(|_| (0..3).map(|_| rng.gen_range(0..m)).collect()).collect();
                let a = ZMat::from_rows(&rows, 3, m);
                let x: Vec<u64> = (0..3).map(|_| rng.gen_range(0..m)).collect();
                let b = a.mul_vec(&x, m);
                let s = ModSnf::new(&a, m);
                let sol = s.solve(&b).expect("consistent system");
                assert_eq!(a.mul_vec(&sol, m), b);
            }
        }
    }

    #[test]
    fn kernel_size_matches_enumeration() {
        let m = 4;
        let a = ZMat::from_rows(&[vec![2, 0], vec![0, 0]], 2, m);
        let s = ModSnf::new(&a, m);
        // kernel of x -> 2x on (Z/4)^2 in the first coordinate: {0,2} x Z/4
        let mut span = std::collections::HashSet::new();
        let gens = s.kernel();
        for c0 in 0..m {
            for c1 in 0..m {
                let mut v = vec![0u64; 2];
                for (k, g) in gens.iter().enumerate() {
                    let c = if k == 0 { c0 } else { c1 };
                    for i in 0..2 {
                        v[i] = (v[i] + c * g[i]) % m;
                    }
                }
                span.insert(v);
            }
        }
        assert_eq!(span.len(), 8);
    }
}
