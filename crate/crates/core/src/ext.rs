//! Ext¹ for modules and for bounded complexes, with extension witnesses.

use crate::complexes::{
    chain_maps, complex_pushout, find_retraction, ChainMap, Complex, ComplexSum,
};
use crate::error::{Error, Result};
use crate::zm::{Cokernel, FinModule, HomSpace, LinSys, Morphism, Pushout, Term};

/// A short exact sequence `0 -> A -> B -> C -> 0` of complexes. Module
/// sequences are the case where all three are concentrated in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExact {
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl ShortExact {
    /// Checks degreewise exactness.
    pub fn new(inclusion: ChainMap, projection: ChainMap) -> Result<Self> {
        if inclusion.target() != projection.source() {
            return Err(Error::Compose("sequence maps do not meet".into()));
        }
        let b = inclusion.target();
        for n in b.lo()..=b.hi() {
            let (i, p) = (inclusion.component(n), projection.component(n));
            if !i.is_injective() || !p.is_surjective() {
                return Err(Error::Construction {
                    degree: n,
                    reason: "sequence is not degreewise short exact".into(),
                });
            }
            if !p.after(&i).is_zero() || i.image().module.order() != p.kernel().module.order() {
                return Err(Error::Construction {
                    degree: n,
                    reason: "sequence is not exact in the middle".into(),
                });
            }
        }
        let (a, c) = (inclusion.source(), projection.target());
        for n in a.lo()..=a.hi() {
            if !inclusion.component(n).is_injective() {
                return Err(Error::Construction {
                    degree: n,
                    reason: "first map is not monic".into(),
                });
            }
        }
        for n in c.lo()..=c.hi() {
            if !projection.component(n).is_surjective() {
                return Err(Error::Construction {
                    degree: n,
                    reason: "second map is not epic".into(),
                });
            }
        }
        Ok(Self {
            inclusion,
            projection,
        })
    }

    pub fn sub(&self) -> &Complex {
        self.inclusion.source()
    }

    pub fn middle(&self) -> &Complex {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &Complex {
        self.projection.target()
    }

    /// The degree-0 module maps `A -> B -> C`.
    pub fn module_maps(&self) -> (Morphism, Morphism) {
        (self.inclusion.component(0), self.projection.component(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// A retraction `r` of the inclusion.
    Split(ChainMap),
    NonSplit,
}

impl Splitting {
    pub fn is_split(&self) -> bool {
        matches!(self, Splitting::Split(_))
    }
}

/// Decides whether the inclusion of `seq` admits a retraction chain map.
pub fn split_check(seq: &ShortExact) -> Splitting {
    match find_retraction(&seq.inclusion) {
        Some(r) => Splitting::Split(r),
        None => Splitting::NonSplit,
    }
}

/// A computed Ext¹ group, presented as the cokernel of restriction
/// `Hom(P, B) -> Hom(K, B)` along a syzygy `K -> P` of the first argument.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub group: FinModule,
    /// `Hom(P, B)`.
    pub hom_cover: FinModule,
    /// `Hom(K, B)`.
    pub hom_syzygy: FinModule,
    /// The restriction map between them.
    pub connecting: Morphism,
    coker: Cokernel,
    source: Presentation,
}

#[derive(Clone, Debug)]
enum Presentation {
    Module {
        cover: Morphism,
        syzygy: Morphism,
        target: FinModule,
        homs: HomSpace,
    },
    Complex {
        cover: ChainMap,
        syzygy: ChainMap,
        target: Complex,
        homs: crate::complexes::ChainMapSpace,
    },
}

impl ExtGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_zero()
    }

    /// The extension representing a class given by coordinates in `group`.
    pub fn extension(&self, coords: &[u64]) -> ShortExact {
        let cocycle = self.coker.section(coords);
        match &self.source {
            Presentation::Module {
                cover,
                syzygy,
                target,
                homs,
            } => {
                let c = homs.morphism(&cocycle);
                let po = Pushout::new(syzygy, &c).expect("common source");
                let proj = po
                    .factor(cover, &Morphism::zero(target, cover.target()))
                    .expect("cover kills the syzygy");
                let sa = Complex::sphere(target, 0);
                let se = Complex::sphere(&po.module, 0);
                let sc = Complex::sphere(cover.target(), 0);
                ShortExact::new(
                    ChainMap::new(&sa, &se, [(0, po.second.clone())]).expect("degree-0 map"),
                    ChainMap::new(&se, &sc, [(0, proj)]).expect("degree-0 map"),
                )
                .expect("pushout extension is exact")
            }
            Presentation::Complex {
                cover,
                syzygy,
                target,
                homs,
            } => {
                let c = homs.element(&cocycle);
                let po = complex_pushout(syzygy, &c).expect("common source");
                let proj = po
                    .factor(cover, &ChainMap::zero(target, cover.target()))
                    .expect("cover kills the syzygy");
                ShortExact::new(po.second.clone(), proj).expect("pushout extension is exact")
            }
        }
    }

    /// A non-split extension for the first nonzero class, verified before return.
    pub fn witness(&self) -> Option<ShortExact> {
        if self.is_zero() {
            return None;
        }
        let mut e = vec![0; self.group.rank()];
        e[0] = 1;
        let seq = self.extension(&e);
        assert!(!split_check(&seq).is_split(), "nonzero class gave a split extension");
        Some(seq)
    }
}

/// `Z/m`-linear embedding of `M` into a free module, `1 -> m / e_i` on each factor.
pub fn free_embedding(module: &FinModule) -> Morphism {
    let m = module.modulus();
    let free = FinModule::free(module.ring(), module.rank());
    let rows: Vec<Vec<i128>> = (0..module.rank())
        .map(|i| {
            (0..module.rank())
                .map(|j| if i == j { (m / module.factors()[i]) as i128 } else { 0 })
                .collect()
        })
        .collect();
    Morphism::new(module, &free, &rows).expect("scaled embedding is well defined")
}

/// The canonical surjection from a free module of minimal rank.
pub fn free_cover(module: &FinModule) -> Morphism {
    let free = FinModule::free(module.ring(), module.rank());
    let rows: Vec<Vec<i128>> = (0..module.rank())
        .map(|i| (0..module.rank()).map(|j| i128::from(i == j)).collect())
        .collect();
    Morphism::new(&free, module, &rows).expect("generators map to generators")
}

/// `Ext¹(A, B)` from `0 -> K -> F -> A -> 0` with `F` free.
pub fn ext1_module(a: &FinModule, b: &FinModule) -> ExtGroup {
    let cover = free_cover(a);
    let ker = cover.kernel();
    let syzygy = ker.inclusion;
    let hom_f = HomSpace::new(cover.source(), b);
    let hom_k = HomSpace::new(&ker.module, b);
    let cols: Vec<Vec<u64>> = hom_f
        .basis()
        .iter()
        .map(|phi| hom_k.coords(&phi.after(&syzygy)))
        .collect();
    let connecting = Morphism::from_columns(hom_f.module(), hom_k.module(), &cols);
    let coker = connecting.cokernel();
    ExtGroup {
        group: coker.module.clone(),
        hom_cover: hom_f.module().clone(),
        hom_syzygy: hom_k.module().clone(),
        connecting,
        coker,
        source: Presentation::Module {
            cover,
            syzygy,
            target: b.clone(),
            homs: hom_k,
        },
    }
}

/// `⊕_n D(F_n) -> X` with `D(F_n)` the disk on a free cover of `X^n` in degrees `n, n+1`.
pub fn projective_cover(x: &Complex) -> (ComplexSum, ChainMap) {
    let ring = x.ring();
    let degrees: Vec<i64> = (x.lo()..=x.hi()).collect();
    let disks: Vec<Complex> = degrees
        .iter()
        .map(|&n| Complex::disk(&FinModule::free(ring, x.module(n).rank()), n))
        .collect();
    let sum = Complex::direct_sum(ring, &disks);
    let mut total = ChainMap::zero(&sum.complex, x);
    for (k, &n) in degrees.iter().enumerate() {
        let pi = free_cover(&x.module(n));
        let d = &disks[k];
        let comps = [(n, pi.clone()), (n + 1, x.diff(n).after(&pi))];
        let to_x = ChainMap::new(d, x, comps).expect("disk maps are chain maps");
        total = total.add(&to_x.after(&sum.projections[k]));
    }
    (sum, total)
}

/// `Y -> ⊕_n D(E_n)` with `D(E_n)` the disk on a free module containing `Y^n`,
/// in degrees `n-1, n`.
pub fn injective_envelope(y: &Complex) -> (ComplexSum, ChainMap) {
    let ring = y.ring();
    let degrees: Vec<i64> = (y.lo()..=y.hi()).collect();
    let disks: Vec<Complex> = degrees
        .iter()
        .map(|&n| Complex::disk(&FinModule::free(ring, y.module(n).rank()), n - 1))
        .collect();
    let sum = Complex::direct_sum(ring, &disks);
    let mut total = ChainMap::zero(y, &sum.complex);
    for (k, &n) in degrees.iter().enumerate() {
        let j = free_embedding(&y.module(n));
        let d = &disks[k];
        let comps = [(n, j.clone()), (n - 1, j.after(&y.diff(n - 1)))];
        let from_y = ChainMap::new(y, d, comps).expect("disk maps are chain maps");
        total = total.add(&sum.injections[k].after(&from_y));
    }
    (sum, total)
}

/// `Ext¹(X, Y)` in the category of complexes, via a projective presentation of `X`.
pub fn ext1_complex(x: &Complex, y: &Complex) -> ExtGroup {
    let (sum, cover) = projective_cover(x);
    let p = sum.complex;
    let (k, syzygy) = cover.kernel();
    let hom_p = chain_maps(&p, y);
    let hom_k = chain_maps(&k, y);
    let cols: Vec<Vec<u64>> = hom_p
        .generators()
        .iter()
        .map(|phi| hom_k.coords(&phi.after(&syzygy)))
        .collect();
    let connecting = Morphism::from_columns(hom_p.module(), hom_k.module(), &cols);
    let coker = connecting.cokernel();
    ExtGroup {
        group: coker.module.clone(),
        hom_cover: hom_p.module().clone(),
        hom_syzygy: hom_k.module().clone(),
        connecting,
        coker,
        source: Presentation::Complex {
            cover,
            syzygy,
            target: y.clone(),
            homs: hom_k,
        },
    }
}

/// `|Ext¹(X, Y)|` via an injective co-presentation `0 -> Y -> I -> C -> 0`:
/// the cokernel of `Hom(X, I) -> Hom(X, C)`.
pub fn ext1_complex_order_dual(x: &Complex, y: &Complex) -> u128 {
    let (_, env) = injective_envelope(y);
    let (c, proj) = env.cokernel();
    let hom_i = chain_maps(x, env.target());
    let hom_c = chain_maps(x, &c);
    let cols: Vec<Vec<u64>> = hom_i
        .generators()
        .iter()
        .map(|phi| hom_c.coords(&proj.after(phi)))
        .collect();
    let map = Morphism::from_columns(hom_i.module(), hom_c.module(), &cols);
    map.cokernel().module.order()
}

/// Whether a module extension `0 -> B -> E -> A -> 0` splits, by solving for a
/// retraction of `B -> E`.
pub fn module_sequence_splits(inclusion: &Morphism) -> bool {
    let (b, e) = (inclusion.source(), inclusion.target());
    let mut sys = LinSys::new(b.ring());
    let r = sys.var(e, b);
    sys.equation(b, b, &[Term::var(r).right(inclusion)], Some(&Morphism::identity(b)));
    sys.finish().particular().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zm::Ring;

    fn z(m: u64) -> Ring {
        Ring::new(m).unwrap()
    }

    fn md(m: u64, f: &[u64]) -> FinModule {
        FinModule::new(z(m), f.to_vec()).unwrap()
    }

    #[test]
    fn ext_of_two_by_two_over_z4() {
        let e = ext1_module(&md(4, &[2]), &md(4, &[2]));
        assert_eq!(e.order(), 2);
        let w = e.witness().unwrap();
        assert_eq!(w.middle().module(0), md(4, &[4]));
    }

    #[test]
    fn free_arguments_kill_ext() {
        for m in [4, 6, 8, 12] {
            let f = FinModule::free(z(m), 2);
            for d in crate::zm::arith::divisors(m).into_iter().filter(|&d| d > 1) {
                let b = md(m, &[d]);
                assert!(ext1_module(&f, &b).is_zero());
                assert!(ext1_module(&b, &f).is_zero());
            }
        }
    }

    #[test]
    fn complex_ext_of_spheres() {
        let a = md(4, &[2]);
        let e = ext1_complex(&Complex::sphere(&a, 0), &Complex::sphere(&a, 1));
        assert!(!e.is_zero());
        let w = e.witness().unwrap();
        assert!(w.middle().is_exact());
        assert_eq!(e.order(), ext1_complex_order_dual(&Complex::sphere(&a, 0), &Complex::sphere(&a, 1)));
        let same = ext1_complex(&Complex::sphere(&a, 0), &Complex::sphere(&a, 0));
        assert_eq!(same.order(), 2);
    }

    #[test]
    fn disks_on_free_modules_are_projective() {
        let d = Complex::disk(&FinModule::free(z(4), 1), 0);
        let y = crate::complexes::tests::short_exact();
        assert!(ext1_complex(&d, &y).is_zero());
        assert!(ext1_complex(&d, &Complex::sphere(&md(4, &[2]), 1)).is_zero());
    }

    #[test]
    fn splitting_of_module_sequences() {
        let (a, b) = (md(4, &[2]), md(4, &[4]));
        let i = Morphism::new(&a, &b, &[vec![2]]).unwrap();
        assert!(!module_sequence_splits(&i));
        let s = crate::zm::DirectSum::new(z(4), &[a.clone(), a.clone()]);
        assert!(module_sequence_splits(&s.injections[0]));
    }
}
