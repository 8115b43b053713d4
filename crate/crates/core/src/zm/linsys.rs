//! Linear systems whose unknowns are morphisms between finite modules.
//!
//! Each unknown `h: M -> N` is parametrized as in [`HomSpace`]; each equation
//! is an identity `Σ ± p ∘ h ∘ q = r` in some `Hom(A, B)`. Equations mod the
//! target factor `e` are scaled by `m / e` into equations over Z/m, and the
//! whole system is solved with one Smith normal form.

use rand::Rng;

use super::arith::{mul_mod, neg_mod};
use super::hom::{param_modulus, param_step};
use super::matrix::ZMat;
use super::modsnf::ModSnf;
use super::module::{FinModule, Ring};
use super::morphism::Morphism;
use super::subquotient::Subquotient;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarId(usize);

#[derive(Clone, Debug)]
struct Block {
    source: FinModule,
    target: FinModule,
    offset: usize,
}

/// One summand `sign * left ∘ var ∘ right` of an equation.
#[derive(Clone, Copy, Debug)]
pub struct Term<'a> {
    pub negate: bool,
    pub left: Option<&'a Morphism>,
    pub var: VarId,
    pub right: Option<&'a Morphism>,
}

impl<'a> Term<'a> {
    pub fn var(var: VarId) -> Self {
        Self {
            negate: false,
            left: None,
            var,
            right: None,
        }
    }

    pub fn left(mut self, p: &'a Morphism) -> Self {
        self.left = Some(p);
        self
    }

    pub fn right(mut self, q: &'a Morphism) -> Self {
        self.right = Some(q);
        self
    }

    pub fn neg(mut self) -> Self {
        self.negate = !self.negate;
        self
    }
}

#[derive(Clone, Debug)]
pub struct LinSys {
    ring: Ring,
    blocks: Vec<Block>,
    nvars: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
}

impl LinSys {
    pub fn new(ring: Ring) -> Self {
        Self {
            ring,
            blocks: Vec::new(),
            nvars: 0,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn var(&mut self, source: &FinModule, target: &FinModule) -> VarId {
        let id = VarId(self.blocks.len());
        self.blocks.push(Block {
            source: source.clone(),
            target: target.clone(),
            offset: self.nvars,
        });
        self.nvars += source.rank() * target.rank();
        for r in &mut self.rows {
            r.resize(self.nvars, 0);
        }
        id
    }

    pub fn num_unknowns(&self) -> usize {
        self.nvars
    }

    /// Adds `Σ terms = rhs` as an identity of maps `source -> target`
    /// (`rhs = None` means zero).
    pub fn equation(
        &mut self,
        source: &FinModule,
        target: &FinModule,
        terms: &[Term<'_>],
        rhs: Option<&Morphism>,
    ) {
        let m = self.ring.modulus();
        let (nr, nc) = (target.rank(), source.rank());
        let base = self.rows.len();
        for _ in 0..nr * nc {
            self.rows.push(vec![0; self.nvars]);
            self.rhs.push(0);
        }
        for term in terms {
            let blk = &self.blocks[term.var.0];
            if let Some(p) = term.left {
                assert!(p.source() == &blk.target && p.target() == target, "left factor mismatch");
            } else {
                assert!(&blk.target == target, "unknown target mismatch");
            }
            if let Some(q) = term.right {
                assert!(q.target() == &blk.source && q.source() == source, "right factor mismatch");
            } else {
                assert!(&blk.source == source, "unknown source mismatch");
            }
            let (vr, vc) = (blk.target.rank(), blk.source.rank());
            let sign = if term.negate { neg_mod(1, m) } else { 1 };
            for a in 0..vr {
                for b in 0..vc {
                    let step = param_step(&blk.source, &blk.target, a, b);
                    let col = blk.offset + a * vc + b;
                    for i in 0..nr {
                        let pia = match term.left {
                            Some(p) => p.entry(i, a),
                            None => u64::from(i == a),
                        };
                        if pia == 0 {
                            continue;
                        }
                        for j in 0..nc {
                            let qbj = match term.right {
                                Some(q) => q.entry(b, j),
                                None => u64::from(b == j),
                            };
                            if qbj == 0 {
                                continue;
                            }
                            let c = mul_mod(mul_mod(mul_mod(pia, step, m), qbj, m), sign, m);
                            let row = &mut self.rows[base + i * nc + j];
                            row[col] = (row[col] + c) % m;
                        }
                    }
                }
            }
        }
        if let Some(r) = rhs {
            assert!(r.source() == source && r.target() == target, "rhs mismatch");
            for i in 0..nr {
                for j in 0..nc {
                    self.rhs[base + i * nc + j] = r.entry(i, j);
                }
            }
        }
        // scale rows mod e_i up to rows mod m
        for i in 0..nr {
            let scale = m / target.factors()[i];
            for j in 0..nc {
                let idx = base + i * nc + j;
                for v in &mut self.rows[idx] {
                    *v = mul_mod(*v, scale, m);
                }
                self.rhs[idx] = mul_mod(self.rhs[idx], scale, m);
            }
        }
    }

    pub fn finish(self) -> Solved {
        let m = self.ring.modulus();
        let (rows, rhs): (Vec<_>, Vec<_>) = self
            .rows
            .into_iter()
            .zip(self.rhs)
            .filter(|(r, b)| *b != 0 || r.iter().any(|&v| v != 0))
            .unzip();
        let mat = ZMat::from_rows(&rows, self.nvars, m);
        let snf = ModSnf::new(&mat, m);
        Solved {
            ring: self.ring,
            blocks: self.blocks,
            nvars: self.nvars,
            snf,
            rhs,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solved {
    ring: Ring,
    blocks: Vec<Block>,
    nvars: usize,
    snf: ModSnf,
    rhs: Vec<u64>,
}

impl Solved {
    /// The first solution in SNF order, if the system is consistent.
    pub fn particular(&self) -> Option<Assignment> {
        let params = self.snf.solve(&self.rhs)?;
        Some(self.assignment(params))
    }

    pub fn assignment(&self, params: Vec<u64>) -> Assignment {
        Assignment {
            ring: self.ring,
            blocks: self.blocks.clone(),
            params,
        }
    }

    /// Generators of the solutions of the homogeneous system.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        self.snf.kernel()
    }

    fn param_relations(&self) -> Vec<Vec<u64>> {
        let m = self.ring.modulus();
        let mut rels = Vec::new();
        for blk in &self.blocks {
            let n = blk.source.rank() * blk.target.rank();
            for p in 0..n {
                let g = param_modulus(&blk.source, &blk.target, p);
                if g != m {
                    let mut v = vec![0; self.nvars];
                    v[blk.offset + p] = g;
                    rels.push(v);
                }
            }
        }
        rels
    }

    /// The homogeneous solution set as a module.
    pub fn space(&self) -> SolutionSpace {
        let rels = self.param_relations();
        let sq = Subquotient::new(self.ring, self.nvars, &self.kernel(), &rels);
        SolutionSpace {
            sq,
            template: self.assignment(vec![0; self.nvars]),
        }
    }

    /// A uniformly random homogeneous solution.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Assignment {
        let m = self.ring.modulus();
        let mut params = vec![0u64; self.nvars];
        for g in self.kernel() {
            let c = rng.gen_range(0..m);
            for (p, v) in params.iter_mut().zip(&g) {
                *p = (*p + c * v) % m;
            }
        }
        self.assignment(params)
    }
}

/// The module of homogeneous solutions, with coordinates.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    sq: Subquotient,
    template: Assignment,
}

impl SolutionSpace {
    pub fn module(&self) -> &FinModule {
        &self.sq.module
    }

    pub fn generators(&self) -> Vec<Assignment> {
        self.sq
            .reps
            .iter()
            .map(|p| self.template.with_params(p.clone()))
            .collect()
    }

    pub fn element(&self, coords: &[u64]) -> Assignment {
        self.template.with_params(self.sq.lift(coords))
    }

    pub fn coords(&self, a: &Assignment) -> Option<Vec<u64>> {
        self.sq.coords(&a.params)
    }

    /// Coordinates of the solution with the given value for every unknown.
    pub fn coords_of(&self, values: &[Morphism]) -> Option<Vec<u64>> {
        self.sq.coords(&self.template.params_of(values))
    }
}

/// Values for every unknown of a system.
#[derive(Clone, Debug)]
pub struct Assignment {
    ring: Ring,
    blocks: Vec<Block>,
    params: Vec<u64>,
}

impl Assignment {
    pub fn get(&self, var: VarId) -> Morphism {
        let blk = &self.blocks[var.0];
        let m = self.ring.modulus();
        let (r, k) = (blk.target.rank(), blk.source.rank());
        let mut mat = ZMat::zeros(r, k);
        for i in 0..r {
            for j in 0..k {
                let step = param_step(&blk.source, &blk.target, i, j);
                mat.set(i, j, mul_mod(self.params[blk.offset + i * k + j], step, m));
            }
        }
        Morphism::from_zmat(&blk.source, &blk.target, mat)
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    fn with_params(&self, params: Vec<u64>) -> Self {
        Self {
            ring: self.ring,
            blocks: self.blocks.clone(),
            params,
        }
    }

    /// Parameter vector for given values of every unknown (in declaration order).
    pub(crate) fn params_of(&self, values: &[Morphism]) -> Vec<u64> {
        assert_eq!(values.len(), self.blocks.len(), "one value per unknown");
        let mut out = vec![0; self.params.len()];
        for (blk, h) in self.blocks.iter().zip(values) {
            let k = blk.source.rank();
            for i in 0..blk.target.rank() {
                for j in 0..k {
                    let step = param_step(&blk.source, &blk.target, i, j);
                    out[blk.offset + i * k + j] = h.entry(i, j) / step;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(Ring::new(4).unwrap(), f.to_vec()).unwrap()
    }

    #[test]
    fn factor_through_inclusion() {
        // find h: (2) -> (4)? with i ∘ h = g where i: (2) -> (4) is 1 -> 2
        let a = md(&[2]);
        let b = md(&[4]);
        let i = Morphism::new(&a, &b, &[vec![2]]).unwrap();
        let g = Morphism::new(&a, &b, &[vec![2]]).unwrap();
        let mut sys = LinSys::new(a.ring());
        let h = sys.var(&a, &a);
        sys.equation(&a, &b, &[Term::var(h).left(&i)], Some(&g));
        let sol = sys.finish().particular().unwrap();
        assert_eq!(i.after(&sol.get(h)), g);
    }

    #[test]
    fn inconsistent_system() {
        // no h: (4) -> (2) with i ∘ h = id on (4), i: (2) -> (4)
        let a = md(&[2]);
        let b = md(&[4]);
        let i = Morphism::new(&a, &b, &[vec![2]]).unwrap();
        let mut sys = LinSys::new(a.ring());
        let h = sys.var(&b, &a);
        sys.equation(&b, &b, &[Term::var(h).left(&i)], Some(&Morphism::identity(&b)));
        assert!(sys.finish().particular().is_none());
    }

    #[test]
    fn solution_space_counts_endomorphisms() {
        let a = md(&[2, 4]);
        let mut sys = LinSys::new(a.ring());
        let _ = sys.var(&a, &a);
        let space = sys.finish().space();
        assert_eq!(space.module().order(), 2 * 2 * 2 * 4);
    }
}
