//! Hom groups as modules, and module presentations.

use super::arith::gcd;
use super::matrix::ZMat;
use super::module::{FinModule, Ring};
use super::morphism::{unit_vectors, Morphism};
use super::subquotient::Subquotient;

/// `Hom(M, N)` as a finite module, with conversion between morphisms and
/// coordinates. Entry `(i, j)` of a morphism is `t_ij * e_i / gcd(d_j, e_i)`
/// for a parameter `t_ij ∈ Z/gcd(d_j, e_i)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: FinModule,
    target: FinModule,
    sq: Subquotient,
}

impl HomSpace {
    pub fn new(source: &FinModule, target: &FinModule) -> Self {
        let ring = source.ring();
        let dim = source.rank() * target.rank();
        let rels: Vec<Vec<u64>> = (0..dim)
            .filter_map(|p| {
                let g = param_modulus(source, target, p);
                (g != ring.modulus()).then(|| {
                    let mut v = vec![0; dim];
                    v[p] = g;
                    v
                })
            })
            .collect();
        let sq = Subquotient::new(ring, dim, &unit_vectors(dim), &rels);
        Self {
            source: source.clone(),
            target: target.clone(),
            sq,
        }
    }

    pub fn module(&self) -> &FinModule {
        &self.sq.module
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    /// Morphisms corresponding to the canonical generators of `module()`.
    pub fn basis(&self) -> Vec<Morphism> {
        self.sq.reps.iter().map(|p| self.from_params(p)).collect()
    }

    pub fn coords(&self, h: &Morphism) -> Vec<u64> {
        assert!(h.source() == &self.source && h.target() == &self.target, "hom-set mismatch");
        self.sq.coords(&self.params(h)).expect("parameters span the ambient")
    }

    pub fn morphism(&self, coords: &[u64]) -> Morphism {
        self.from_params(&self.sq.lift(coords))
    }

    pub(crate) fn params(&self, h: &Morphism) -> Vec<u64> {
        let (r, k) = (self.target.rank(), self.source.rank());
        let mut out = Vec::with_capacity(r * k);
        for i in 0..r {
            for j in 0..k {
                let step = param_step(&self.source, &self.target, i, j);
                out.push(h.entry(i, j) / step);
            }
        }
        out
    }

    pub(crate) fn from_params(&self, p: &[u64]) -> Morphism {
        let m = self.source.modulus();
        let (r, k) = (self.target.rank(), self.source.rank());
        let mut mat = ZMat::zeros(r, k);
        for i in 0..r {
            for j in 0..k {
                let step = param_step(&self.source, &self.target, i, j);
                mat.set(i, j, (p[i * k + j] % m) * step % m);
            }
        }
        Morphism::from_zmat(&self.source, &self.target, mat)
    }
}

/// Modulus of parameter `p = i * rank(M) + j`.
pub(crate) fn param_modulus(source: &FinModule, target: &FinModule, p: usize) -> u64 {
    let k = source.rank();
    gcd(source.factors()[p % k], target.factors()[p / k])
}

/// `e_i / gcd(d_j, e_i)`: the smallest well-defined entry.
pub(crate) fn param_step(source: &FinModule, target: &FinModule, i: usize, j: usize) -> u64 {
    let e = target.factors()[i];
    e / gcd(source.factors()[j], e)
}

/// `Hom(M, N)` in normal form together with generating morphisms.
pub fn hom_group(source: &FinModule, target: &FinModule) -> (FinModule, Vec<Morphism>) {
    let h = HomSpace::new(source, target);
    (h.module().clone(), h.basis())
}

/// Normal form of `<x_1..x_n | relations>` over Z/m; each relation lists the
/// integer coefficients of one relator `Σ a_j x_j = 0`.
pub fn normalize_module(ring: Ring, generators: usize, relations: &[Vec<i128>]) -> FinModule {
    let m = ring.modulus();
    let rels: Vec<Vec<u64>> = relations
        .iter()
        .map(|r| {
            assert_eq!(r.len(), generators, "relator has wrong length");
            r.iter().map(|&a| super::arith::reduce_i128(a, m)).collect()
        })
        .collect();
    Subquotient::new(ring, generators, &unit_vectors(generators), &rels).module
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Ring {
        Ring::new(m).unwrap()
    }

    fn md(m: u64, f: &[u64]) -> FinModule {
        FinModule::new(z(m), f.to_vec()).unwrap()
    }

    #[test]
    fn presentations_normalize() {
        assert_eq!(normalize_module(z(4), 1, &[vec![2]]), md(4, &[2]));
        assert_eq!(normalize_module(z(4), 2, &[vec![2, 0], vec![0, 2]]), md(4, &[2, 2]));
        assert_eq!(normalize_module(z(4), 2, &[vec![1, 1]]), md(4, &[4]));
        assert_eq!(normalize_module(z(4), 0, &[]), FinModule::zero(z(4)));
    }

    #[test]
    fn hom_group_orders() {
        assert_eq!(hom_group(&md(4, &[2]), &md(4, &[4])).0, md(4, &[2]));
        assert!(hom_group(&FinModule::zero(z(4)), &md(4, &[4])).0.is_zero());
        assert_eq!(hom_group(&md(4, &[2, 2]), &md(4, &[2])).0, md(4, &[2, 2]));
    }

    #[test]
    fn coords_round_trip_through_basis() {
        let a = md(12, &[2, 6]);
        let b = md(12, &[3, 12]);
        let h = HomSpace::new(&a, &b);
        for c in h.module().elements(4096).unwrap() {
            let f = h.morphism(&c);
            assert_eq!(h.coords(&f), c);
        }
    }
}
