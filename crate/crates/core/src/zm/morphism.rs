use std::fmt;

use super::arith::{add_mod, mul_mod, neg_mod, reduce_i128};
use super::matrix::ZMat;
use super::module::FinModule;
use super::subquotient::Subquotient;
use crate::error::{Error, Result};

/// A homomorphism `source -> target` of finite Z/m-modules.
///
/// Entry `(i, j)` is the image of the `j`-th source generator in the `i`-th
/// target coordinate, stored reduced mod the `i`-th target factor. It must
/// satisfy `d_j * h_ij = 0 (mod e_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: FinModule,
    target: FinModule,
    matrix: ZMat,
}

impl Morphism {
    /// Checked constructor from integer entries (rows indexed by target factors).
    pub fn new(source: &FinModule, target: &FinModule, rows: &[Vec<i128>]) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.modulus(), target.modulus()));
        }
        let (r, c) = (target.rank(), source.rank());
        let got_cols = rows.first().map_or(c, Vec::len);
        if rows.len() != r || rows.iter().any(|row| row.len() != got_cols) || got_cols != c {
            return Err(Error::Shape {
                rows: rows.len(),
                cols: got_cols,
                want_rows: r,
                want_cols: c,
            });
        }
        let m = source.modulus();
        let mut matrix = ZMat::zeros(r, c);
        for i in 0..r {
            let e = target.factors()[i];
            for j in 0..c {
                let d = source.factors()[j];
                let v = rows[i][j];
                let reduced = reduce_i128(v, e);
                if (d as u128 * reduced as u128) % e as u128 != 0 {
                    return Err(Error::IllDefinedEntry {
                        row: i,
                        col: j,
                        value: v,
                        source_order: d,
                        target_order: e,
                    });
                }
                matrix.set(i, j, reduced % m);
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// Builds from a Z/m matrix whose well-definedness the caller guarantees.
    pub(crate) fn from_zmat(source: &FinModule, target: &FinModule, matrix: ZMat) -> Self {
        let mut matrix = matrix;
        for i in 0..matrix.rows() {
            let e = target.factors()[i];
            for j in 0..matrix.cols() {
                let v = matrix.get(i, j) % e;
                matrix.set(i, j, v);
            }
        }
        let out = Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        };
        debug_assert!(out.is_well_defined(), "ill-defined morphism {out:?}");
        out
    }

    /// Morphism whose `j`-th column is the image of the `j`-th source generator.
    pub(crate) fn from_columns(source: &FinModule, target: &FinModule, cols: &[Vec<u64>]) -> Self {
        let m = source.modulus();
        Self::from_zmat(source, target, ZMat::from_cols(cols, target.rank(), m))
    }

    pub fn zero(source: &FinModule, target: &FinModule) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: ZMat::zeros(target.rank(), source.rank()),
        }
    }

    pub fn identity(module: &FinModule) -> Self {
        Self {
            source: module.clone(),
            target: module.clone(),
            matrix: ZMat::identity(module.rank()),
        }
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix.get(i, j)
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.matrix.rows()).map(|i| self.matrix.row(i).to_vec()).collect()
    }

    fn modulus(&self) -> u64 {
        self.source.modulus()
    }

    fn is_well_defined(&self) -> bool {
        (0..self.matrix.rows()).all(|i| {
            let e = self.target.factors()[i];
            (0..self.matrix.cols()).all(|j| {
                let d = self.source.factors()[j] as u128;
                (d * self.matrix.get(i, j) as u128) % e as u128 == 0
            })
        })
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.source.rank(), "element has wrong length");
        let y = self.matrix.mul_vec(x, self.modulus());
        self.target.reduce(&y)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::Compose(format!(
                "{} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        let mat = self.matrix.mul(&first.matrix, self.modulus());
        Ok(Self::from_zmat(&first.source, &self.target, mat))
    }

    /// `self ∘ first`, panicking on a shape mismatch.
    pub fn after(&self, first: &Morphism) -> Morphism {
        self.compose(first).expect("morphisms compose")
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target, "hom-set mismatch");
        let m = self.modulus();
        let mut mat = self.matrix.clone();
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                mat.set(i, j, add_mod(mat.get(i, j), other.matrix.get(i, j), m));
            }
        }
        Self::from_zmat(&self.source, &self.target, mat)
    }

    pub fn neg(&self) -> Morphism {
        self.scale(neg_mod(1, self.modulus()))
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Morphism {
        let m = self.modulus();
        let mut mat = self.matrix.clone();
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                mat.set(i, j, mul_mod(mat.get(i, j), k % m, m));
            }
        }
        Self::from_zmat(&self.source, &self.target, mat)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn source_relations(&self) -> Vec<Vec<u64>> {
        relation_gens(&self.source)
    }

    fn target_relations(&self) -> Vec<Vec<u64>> {
        relation_gens(&self.target)
    }

    pub fn kernel(&self) -> Kernel {
        let ring = self.source.ring();
        let m = ring.modulus();
        let (r, k) = (self.target.rank(), self.source.rank());
        // x with H x ∈ span(e_i * unit_i)
        let mut aug = ZMat::zeros(r, k + r);
        for i in 0..r {
            for j in 0..k {
                aug.set(i, j, self.matrix.get(i, j));
            }
            aug.set(i, k + i, self.target.factors()[i] % m);
        }
        let gens: Vec<Vec<u64>> = super::modsnf::ModSnf::new(&aug, m)
            .kernel()
            .into_iter()
            .map(|v| v[..k].to_vec())
            .collect();
        let sq = Subquotient::new(ring, k, &gens, &self.source_relations());
        let inclusion = Morphism::from_columns(&sq.module, &self.source, &sq.reps);
        Kernel {
            module: sq.module.clone(),
            inclusion,
            sq,
        }
    }

    pub fn image(&self) -> Image {
        let ring = self.source.ring();
        let r = self.target.rank();
        let rels = self.target_relations();
        let mut gens: Vec<Vec<u64>> = (0..self.source.rank()).map(|j| self.matrix.col(j)).collect();
        gens.extend(rels.iter().cloned());
        let sq = Subquotient::new(ring, r, &gens, &rels);
        let inclusion = Morphism::from_columns(&sq.module, &self.target, &sq.reps);
        Image {
            module: sq.module.clone(),
            inclusion,
            sq,
        }
    }

    pub fn cokernel(&self) -> Cokernel {
        let ring = self.source.ring();
        let r = self.target.rank();
        let mut rels: Vec<Vec<u64>> = (0..self.source.rank()).map(|j| self.matrix.col(j)).collect();
        rels.extend(self.target_relations());
        let sq = Subquotient::new(ring, r, &unit_vectors(r), &rels);
        let cols: Vec<Vec<u64>> = unit_vectors(r)
            .iter()
            .map(|e| sq.coords(e).expect("unit vector lies in the ambient"))
            .collect();
        let projection = Morphism::from_columns(&self.target, &sq.module, &cols);
        Cokernel {
            module: sq.module.clone(),
            projection,
            sq,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().module.order() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.matrix)
    }
}

pub(crate) fn unit_vectors(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

/// Generators `d_j e_j` of the relation submodule of a module's free cover.
pub(crate) fn relation_gens(module: &FinModule) -> Vec<Vec<u64>> {
    let m = module.modulus();
    let k = module.rank();
    module
        .factors()
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != m)
        .map(|(j, &d)| {
            let mut v = vec![0; k];
            v[j] = d;
            v
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FinModule,
    pub inclusion: Morphism,
    sq: Subquotient,
}

impl Kernel {
    /// Coordinates in the kernel of an element of the source lying in the kernel.
    pub fn lift(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.sq.coords(x)?;
        (self.inclusion.apply(&c) == self.inclusion.target().reduce(x)).then_some(c)
    }

    /// Factors `g` through the inclusion, if its image lies in the kernel.
    pub fn lift_morphism(&self, g: &Morphism) -> Option<Morphism> {
        lift_columns(g, &self.module, |x| self.lift(x))
    }
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: FinModule,
    pub inclusion: Morphism,
    sq: Subquotient,
}

impl Image {
    pub fn lift(&self, y: &[u64]) -> Option<Vec<u64>> {
        let c = self.sq.coords(y)?;
        (self.inclusion.apply(&c) == self.inclusion.target().reduce(y)).then_some(c)
    }

    pub fn lift_morphism(&self, g: &Morphism) -> Option<Morphism> {
        lift_columns(g, &self.module, |x| self.lift(x))
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FinModule,
    pub projection: Morphism,
    sq: Subquotient,
}

impl Cokernel {
    /// Induced map out of the cokernel for `g` vanishing on the image.
    pub fn descend(&self, g: &Morphism) -> Option<Morphism> {
        if g.source() != self.projection.source() {
            return None;
        }
        let cols: Vec<Vec<u64>> = self.sq.reps.iter().map(|r| g.apply(&g.source().reduce(r))).collect();
        let out = Morphism::from_columns(&self.module, g.target(), &cols);
        (out.after(&self.projection) == *g).then_some(out)
    }

    /// A preimage of a cokernel element.
    pub fn section(&self, c: &[u64]) -> Vec<u64> {
        self.projection.source().reduce(&self.sq.lift(c))
    }
}

fn lift_columns(
    g: &Morphism,
    module: &FinModule,
    lift: impl Fn(&[u64]) -> Option<Vec<u64>>,
) -> Option<Morphism> {
    let cols = unit_vectors(g.source().rank())
        .iter()
        .map(|e| lift(&g.apply(e)))
        .collect::<Option<Vec<_>>>()?;
    Some(Morphism::from_columns(g.source(), module, &cols))
}

/// A normalized direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FinModule,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

impl DirectSum {
    pub fn new(ring: super::module::Ring, summands: &[FinModule]) -> Self {
        let dim: usize = summands.iter().map(FinModule::rank).sum();
        let mut rels = Vec::new();
        let mut offset = 0;
        for s in summands {
            for r in relation_gens(s) {
                let mut v = vec![0; dim];
                v[offset..offset + s.rank()].copy_from_slice(&r);
                rels.push(v);
            }
            offset += s.rank();
        }
        let sq = Subquotient::new(ring, dim, &unit_vectors(dim), &rels);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for s in summands {
            let cols: Vec<Vec<u64>> = (0..s.rank())
                .map(|j| {
                    let mut v = vec![0; dim];
                    v[offset + j] = 1;
                    sq.coords(&v).expect("ambient vector")
                })
                .collect();
            injections.push(Morphism::from_columns(s, &sq.module, &cols));
            let pcols: Vec<Vec<u64>> = sq
                .reps
                .iter()
                .map(|r| s.reduce(&r[offset..offset + s.rank()]))
                .collect();
            projections.push(Morphism::from_columns(&sq.module, s, &pcols));
            offset += s.rank();
        }
        Self {
            module: sq.module,
            injections,
            projections,
        }
    }

    /// `Σ inj_i ∘ parts_i` for maps into the summands.
    pub fn into_sum(&self, parts: &[Morphism]) -> Morphism {
        let src = parts[0].source().clone();
        parts
            .iter()
            .zip(&self.injections)
            .fold(Morphism::zero(&src, &self.module), |acc, (p, i)| acc.add(&i.after(p)))
    }

    /// `Σ parts_i ∘ proj_i` for maps out of the summands.
    pub fn out_of_sum(&self, parts: &[Morphism]) -> Morphism {
        let tgt = parts[0].target().clone();
        parts
            .iter()
            .zip(&self.projections)
            .fold(Morphism::zero(&self.module, &tgt), |acc, (p, q)| acc.add(&p.after(q)))
    }
}

/// Block-diagonal map between two direct sums.
pub fn sum_map(src: &DirectSum, tgt: &DirectSum, blocks: &[Vec<Option<&Morphism>>]) -> Morphism {
    let mut acc = Morphism::zero(&src.module, &tgt.module);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if let Some(b) = b {
                acc = acc.add(&tgt.injections[i].after(b).after(&src.projections[j]));
            }
        }
    }
    acc
}

/// Pushout of `f: S -> N1` and `g: S -> N2`: `(N1 ⊕ N2) / {(f s, -g s)}`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: FinModule,
    pub first: Morphism,
    pub second: Morphism,
    sum: DirectSum,
    coker: Cokernel,
}

impl Pushout {
    pub fn new(f: &Morphism, g: &Morphism) -> Result<Self> {
        if f.source() != g.source() {
            return Err(Error::Compose("pushout legs have different sources".into()));
        }
        let ring = f.source().ring();
        let sum = DirectSum::new(ring, &[f.target().clone(), g.target().clone()]);
        let diff = sum.injections[0].after(f).sub(&sum.injections[1].after(g));
        let coker = diff.cokernel();
        let first = coker.projection.after(&sum.injections[0]);
        let second = coker.projection.after(&sum.injections[1]);
        Ok(Self {
            module: coker.module.clone(),
            first,
            second,
            sum,
            coker,
        })
    }

    /// The unique `u: P -> T` with `u ∘ first = h1`, `u ∘ second = h2`,
    /// provided `h1 ∘ f = h2 ∘ g`.
    pub fn factor(&self, h1: &Morphism, h2: &Morphism) -> Option<Morphism> {
        let joint = self.sum.out_of_sum(&[h1.clone(), h2.clone()]);
        self.coker.descend(&joint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zm::module::Ring;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    #[test]
    fn ill_defined_entry_is_rejected() {
        let err = Morphism::new(&md(&[2]), &md(&[4]), &[vec![1]]).unwrap_err();
        assert!(matches!(err, Error::IllDefinedEntry { row: 0, col: 0, .. }));
        assert!(Morphism::new(&md(&[2]), &md(&[4]), &[vec![2]]).is_ok());
    }

    #[test]
    fn multiplication_by_two() {
        let f = Morphism::new(&md(&[4]), &md(&[4]), &[vec![2]]).unwrap();
        assert_eq!(f.kernel().module, md(&[2]));
        assert_eq!(f.image().module, md(&[2]));
        assert_eq!(f.cokernel().module, md(&[2]));
        assert!(f.after(&f.kernel().inclusion).is_zero());
        assert!(f.cokernel().projection.after(&f).is_zero());
    }

    #[test]
    fn identity_and_zero_maps() {
        let m = md(&[2, 4]);
        let id = Morphism::identity(&m);
        assert!(id.kernel().module.is_zero());
        assert!(id.cokernel().module.is_zero());
        let z = Morphism::zero(&md(&[2]), &md(&[4]));
        assert_eq!(z.kernel().module, md(&[2]));
        assert!(z.image().module.is_zero());
        assert_eq!(z.cokernel().module, md(&[4]));
    }

    #[test]
    fn direct_sum_reorders_factors() {
        let s = DirectSum::new(z4(), &[md(&[4]), md(&[2])]);
        assert_eq!(s.module, md(&[2, 4]));
        for (i, p) in s.injections.iter().zip(&s.projections) {
            assert_eq!(p.after(i), Morphism::identity(i.source()));
        }
        assert!(s.projections[1].after(&s.injections[0]).is_zero());
    }

    #[test]
    fn pushout_of_inclusion_along_identity() {
        let f = Morphism::new(&md(&[2]), &md(&[4]), &[vec![2]]).unwrap();
        let g = Morphism::identity(&md(&[2]));
        let p = Pushout::new(&f, &g).unwrap();
        assert_eq!(p.module, md(&[4]));
        assert_eq!(p.first.after(&f), p.second.after(&g));
    }
}
