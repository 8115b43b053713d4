//! `A / B` for submodules `B ⊆ A ⊆ (Z/m)^n` given by generators.
//!
//! This is the workhorse behind kernels, images, cokernels, direct sums and
//! Hom groups: each of those is a subquotient of some free ambient module.

use super::matrix::ZMat;
use super::modsnf::ModSnf;
use super::module::{FinModule, Ring};

#[derive(Clone, Debug)]
pub(crate) struct Subquotient {
    ring: Ring,
    pub module: FinModule,
    /// Ambient vectors mapping to the canonical generators of `module`.
    pub reps: Vec<Vec<u64>>,
    solver: ModSnf,
    num_gens: usize,
    u: ZMat,
    kept: Vec<(usize, u64)>,
}

impl Subquotient {
    /// `span(a_gens) / (span(a_gens) ∩ span(b_gens))`, all vectors of length `dim`.
    pub fn new(ring: Ring, dim: usize, a_gens: &[Vec<u64>], b_gens: &[Vec<u64>]) -> Self {
        let m = ring.modulus();
        let g = a_gens.len();
        let gmat = ZMat::from_cols(a_gens, dim, m);
        let bmat = ZMat::from_cols(b_gens, dim, m);
        let combined = gmat.hcat(&bmat);
        let solver = ModSnf::new(&combined, m);

        // Relations among the A-generators: y with G y ∈ span(B).
        let rels: Vec<Vec<u64>> = solver
            .kernel()
            .into_iter()
            .map(|k| k[..g].to_vec())
            .filter(|y| y.iter().any(|&v| v != 0))
            .collect();
        let rmat = ZMat::from_cols(&rels, g, m);
        let rsnf = ModSnf::new(&rmat, m);

        let mut kept = Vec::new();
        for t in 0..g {
            let c = if t < rsnf.diag.len() { rsnf.diag[t] } else { m };
            if c > 1 {
                kept.push((t, c));
            }
        }
        let reps = kept
            .iter()
            .map(|&(t, _)| gmat.mul_vec(&rsnf.u_inv.col(t), m))
            .collect();
        let module =
            FinModule::from_factors_unchecked(ring, kept.iter().map(|&(_, c)| c).collect());
        Self {
            ring,
            module,
            reps,
            solver,
            num_gens: g,
            u: rsnf.u,
            kept,
        }
    }

    /// Coordinates of an ambient vector lying in `A`, or `None` if it does not.
    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let m = self.ring.modulus();
        let sol = self.solver.solve(x)?;
        let z = self.u.mul_vec(&sol[..self.num_gens], m);
        Some(self.kept.iter().map(|&(t, c)| z[t] % c).collect())
    }

    /// Ambient vector representing a coordinate vector of the subquotient.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let m = self.ring.modulus();
        let dim = self.solver.rows();
        let mut out = vec![0u64; dim];
        for (c, rep) in coords.iter().zip(&self.reps) {
            for (o, &r) in out.iter_mut().zip(rep) {
                *o = (*o + c * r) % m;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_free_by_diagonal() {
        let r = Ring::new(4).unwrap();
        let sq = Subquotient::new(r, 2, &[vec![1, 0], vec![0, 1]], &[vec![2, 0], vec![0, 2]]);
        assert_eq!(sq.module.factors(), &[2, 2]);
        assert_eq!(sq.coords(&[3, 1]).unwrap().len(), 2);
    }

    #[test]
    fn relation_x_plus_y() {
        let r = Ring::new(4).unwrap();
        let sq = Subquotient::new(r, 2, &[vec![1, 0], vec![0, 1]], &[vec![1, 1]]);
        assert_eq!(sq.module.factors(), &[4]);
    }

    #[test]
    fn mixed_primes_normalize() {
        let r = Ring::new(6).unwrap();
        let sq = Subquotient::new(r, 2, &[vec![1, 0], vec![0, 1]], &[vec![2, 0], vec![0, 3]]);
        assert_eq!(sq.module.factors(), &[6]);
        // every rep maps back to its own coordinate vector
        for (i, rep) in sq.reps.iter().enumerate() {
            let c = sq.coords(rep).unwrap();
            let mut e = vec![0; sq.module.rank()];
            e[i] = 1;
            assert_eq!(c, e);
        }
    }
}
