//! Bounded cochain complexes of finite modules, chain maps and homotopies.
//!
//! Indexing is cohomological: `d^n: C^n -> C^{n+1}`. Shifts follow
//! `C[n]^k = C^{k+n}` with differential `(-1)^n d`.

mod cone;
mod homcx;
mod pushout;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::zm::{DirectSum, FinModule, Morphism, Ring};

pub use cone::{mapping_cone, ConeTriple};
pub use homcx::{hom_complex, HomComplex};
pub use pushout::{complex_pushout, ComplexPushout};
pub use solve::{
    chain_maps, factor_left, factor_right, find_retraction, find_section, is_null_homotopic,
    ChainMapSpace,
};

/// A bounded cochain complex. Zero modules at either end are trimmed, so two
/// complexes are equal exactly when they agree in every degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    ring: Ring,
    start: i64,
    modules: Vec<FinModule>,
    diffs: Vec<Morphism>,
}

impl Complex {
    /// `modules[i]` sits in degree `start + i`; `diffs[i]` maps it to the next one.
    pub fn new(ring: Ring, start: i64, modules: Vec<FinModule>, diffs: Vec<Morphism>) -> Result<Self> {
        if modules.iter().any(|m| m.ring() != ring) {
            return Err(Error::Invalid("complex mixes rings".into()));
        }
        if diffs.len() != modules.len().saturating_sub(1) {
            return Err(Error::Invalid(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &modules[i] || d.target() != &modules[i + 1] {
                return Err(Error::Construction {
                    degree: start + i as i64,
                    reason: "differential does not match its modules".into(),
                });
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].after(&diffs[i - 1]).is_zero() {
                return Err(Error::NotAComplex {
                    degree: start + i as i64,
                });
            }
        }
        Ok(Self::assemble(ring, start, modules, diffs))
    }

    fn assemble(ring: Ring, start: i64, mut modules: Vec<FinModule>, mut diffs: Vec<Morphism>) -> Self {
        let mut start = start;
        while modules.first().is_some_and(FinModule::is_zero) {
            modules.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            start += 1;
        }
        while modules.last().is_some_and(FinModule::is_zero) {
            modules.pop();
            diffs.pop();
        }
        if modules.is_empty() {
            start = 0;
        }
        Self {
            ring,
            start,
            modules,
            diffs,
        }
    }

    /// Builds from per-degree data over `[lo, hi]`, checking `d ∘ d = 0`.
    pub(crate) fn from_fn(
        ring: Ring,
        lo: i64,
        hi: i64,
        module: impl Fn(i64) -> FinModule,
        diff: impl Fn(i64, &FinModule, &FinModule) -> Morphism,
    ) -> Result<Self> {
        if hi < lo {
            return Ok(Self::zero(ring));
        }
        let modules: Vec<FinModule> = (lo..=hi).map(&module).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let (a, b) = (&modules[(n - lo) as usize], &modules[(n - lo + 1) as usize]);
                diff(n, a, b)
            })
            .collect();
        Self::new(ring, lo, modules, diffs)
    }

    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            start: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `M` concentrated in degree `n`.
    pub fn sphere(module: &FinModule, n: i64) -> Self {
        Self::assemble(module.ring(), n, vec![module.clone()], Vec::new())
    }

    /// `M --id--> M` in degrees `n, n+1`.
    pub fn disk(module: &FinModule, n: i64) -> Self {
        Self::assemble(
            module.ring(),
            n,
            vec![module.clone(), module.clone()],
            vec![Morphism::identity(module)],
        )
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.start
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.start + self.modules.len() as i64 - 1
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.lo(), self.hi()))
    }

    /// Number of nonzero-bounded degrees.
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn module(&self, n: i64) -> FinModule {
        self.module_ref(n)
            .cloned()
            .unwrap_or_else(|| FinModule::zero(self.ring))
    }

    fn module_ref(&self, n: i64) -> Option<&FinModule> {
        let i = n - self.start;
        (i >= 0).then(|| self.modules.get(i as usize)).flatten()
    }

    /// `d^n: C^n -> C^{n+1}`.
    pub fn diff(&self, n: i64) -> Morphism {
        let i = n - self.start;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Morphism::zero(&self.module(n), &self.module(n + 1))
        }
    }

    pub fn modules(&self) -> &[FinModule] {
        &self.modules
    }

    pub fn diffs(&self) -> &[Morphism] {
        &self.diffs
    }

    /// Checks `d ∘ d = 0`, reporting the middle degree of the first failure.
    pub fn validate(&self) -> Result<()> {
        for n in self.lo()..self.hi() {
            if !self.diff(n + 1).after(&self.diff(n)).is_zero() {
                return Err(Error::NotAComplex { degree: n + 1 });
            }
        }
        Ok(())
    }

    /// `C[n]`.
    pub fn shift(&self, n: i64) -> Self {
        let diffs = if n.rem_euclid(2) == 1 {
            self.diffs.iter().map(Morphism::neg).collect()
        } else {
            self.diffs.clone()
        };
        Self::assemble(self.ring, self.start - n, self.modules.clone(), diffs)
    }

    pub fn exactness(&self) -> Exactness {
        let mut kernels = Vec::new();
        let mut first_failure = None;
        for n in self.lo()..=self.hi() {
            let ker = self.diff(n).kernel().module;
            let im = self.diff(n - 1).image().module;
            if ker.order() != im.order() && first_failure.is_none() {
                first_failure = Some(n);
            }
            kernels.push((n, ker));
        }
        Exactness {
            first_failure,
            kernels,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().first_failure.is_none()
    }

    /// Degreewise direct sum with its structure maps.
    pub fn direct_sum(ring: Ring, parts: &[Complex]) -> ComplexSum {
        let lo = parts.iter().filter(|c| !c.is_zero()).map(Complex::lo).min().unwrap_or(0);
        let hi = parts.iter().filter(|c| !c.is_zero()).map(Complex::hi).max().unwrap_or(-1);
        let sums: BTreeMap<i64, DirectSum> = (lo..=hi)
            .map(|n| {
                let mods: Vec<FinModule> = parts.iter().map(|c| c.module(n)).collect();
                (n, DirectSum::new(ring, &mods))
            })
            .collect();
        let complex = Self::from_fn(
            ring,
            lo,
            hi,
            |n| sums[&n].module.clone(),
            |n, _, _| {
                let d: Vec<Morphism> = parts.iter().map(|c| c.diff(n)).collect();
                let blocks: Vec<Vec<Option<&Morphism>>> = (0..parts.len())
                    .map(|i| (0..parts.len()).map(|j| (i == j).then_some(&d[i])).collect())
                    .collect();
                crate::zm::sum_map(&sums[&n], &sums[&(n + 1)], &blocks)
            },
        )
        .expect("sum of complexes is a complex");
        let injections = (0..parts.len())
            .map(|i| {
                ChainMap::from_components(
                    &parts[i],
                    &complex,
                    (lo..=hi).map(|n| (n, sums[&n].injections[i].clone())),
                )
            })
            .collect();
        let projections = (0..parts.len())
            .map(|i| {
                ChainMap::from_components(
                    &complex,
                    &parts[i],
                    (lo..=hi).map(|n| (n, sums[&n].projections[i].clone())),
                )
            })
            .collect();
        ComplexSum {
            complex,
            injections,
            projections,
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "[{}] ", self.start)?;
        for (i, m) in self.modules.iter().enumerate() {
            if i > 0 {
                write!(f, " -{:?}-> ", self.diffs[i - 1].to_rows())?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Degreewise direct sum of complexes.
pub fn direct_sum(ring: Ring, parts: &[Complex]) -> Complex {
    Complex::direct_sum(ring, parts).complex
}

#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: Complex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

/// Result of an exactness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub first_failure: Option<i64>,
    /// `ker d^n` for every degree in the support.
    pub kernels: Vec<(i64, FinModule)>,
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// A chain map; only nonzero components are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    comps: BTreeMap<i64, Morphism>,
}

impl ChainMap {
    /// Checked constructor; missing degrees are zero.
    pub fn new(
        source: &Complex,
        target: &Complex,
        comps: impl IntoIterator<Item = (i64, Morphism)>,
    ) -> Result<Self> {
        let mut stored = BTreeMap::new();
        for (n, f) in comps {
            if f.source() != &source.module(n) || f.target() != &target.module(n) {
                return Err(Error::Construction {
                    degree: n,
                    reason: "component does not match the complexes".into(),
                });
            }
            if !f.is_zero() {
                stored.insert(n, f);
            }
        }
        let map = Self {
            source: source.clone(),
            target: target.clone(),
            comps: stored,
        };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn from_components(
        source: &Complex,
        target: &Complex,
        comps: impl IntoIterator<Item = (i64, Morphism)>,
    ) -> Self {
        Self::new(source, target, comps).expect("components form a chain map")
    }

    fn check(&self) -> Result<()> {
        let (lo, hi) = span(&self.source, &self.target);
        for n in lo - 1..=hi {
            let lhs = self.target.diff(n).after(&self.component(n));
            let rhs = self.component(n + 1).after(&self.source.diff(n));
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(c: &Complex) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            comps: c
                .modules
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(i, m)| (c.start + i as i64, Morphism::identity(m)))
                .collect(),
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i64) -> Morphism {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Morphism::zero(&self.source.module(n), &self.target.module(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Morphism> {
        &self.comps
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        assert_eq!(first.target, self.source, "chain maps do not compose");
        let comps = first
            .comps
            .iter()
            .filter_map(|(n, f)| self.comps.get(n).map(|g| (*n, g.after(f))))
            .filter(|(_, h)| !h.is_zero())
            .collect();
        Self {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    fn zip_with(&self, other: &ChainMap, op: impl Fn(&Morphism, &Morphism) -> Morphism) -> ChainMap {
        assert!(
            self.source == other.source && self.target == other.target,
            "chain maps have different ends"
        );
        let degrees: std::collections::BTreeSet<i64> =
            self.comps.keys().chain(other.comps.keys()).copied().collect();
        let comps = degrees
            .into_iter()
            .map(|n| (n, op(&self.component(n), &other.component(n))))
            .filter(|(_, h)| !h.is_zero())
            .collect();
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.zip_with(other, Morphism::add)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.zip_with(other, Morphism::sub)
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(self.source.ring().modulus() - 1)
    }

    pub fn scale(&self, k: u64) -> ChainMap {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self
                .comps
                .iter()
                .map(|(n, f)| (*n, f.scale(k)))
                .filter(|(_, h)| !h.is_zero())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Morphism::is_zero)
    }

    /// `f[n]: X[n] -> Y[n]`, with components `f^{k+n}`.
    pub fn shift(&self, n: i64) -> ChainMap {
        Self {
            source: self.source.shift(n),
            target: self.target.shift(n),
            comps: self.comps.iter().map(|(k, f)| (k - n, f.clone())).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        (self.source.lo()..=self.source.hi()).all(|n| self.component(n).is_injective())
    }

    pub fn is_surjective(&self) -> bool {
        (self.target.lo()..=self.target.hi()).all(|n| self.component(n).is_surjective())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Degreewise kernel with its inclusion.
    pub fn kernel(&self) -> (Complex, ChainMap) {
        let p = &self.source;
        let kers: BTreeMap<i64, crate::zm::Kernel> =
            (p.lo()..=p.hi() + 1).map(|n| (n, self.component(n).kernel())).collect();
        let k = Complex::from_fn(
            p.ring(),
            p.lo(),
            p.hi(),
            |n| kers[&n].module.clone(),
            |n, _, _| {
                let g = p.diff(n).after(&kers[&n].inclusion);
                kers[&(n + 1)].lift_morphism(&g).expect("differential preserves kernels")
            },
        )
        .expect("kernel of a chain map is a complex");
        let incl = ChainMap::from_components(&k, p, (p.lo()..=p.hi()).map(|n| (n, kers[&n].inclusion.clone())));
        (k, incl)
    }

    /// Degreewise cokernel with its projection.
    pub fn cokernel(&self) -> (Complex, ChainMap) {
        let t = &self.target;
        let cokers: BTreeMap<i64, crate::zm::Cokernel> =
            (t.lo()..=t.hi() + 1).map(|n| (n, self.component(n).cokernel())).collect();
        let c = Complex::from_fn(
            t.ring(),
            t.lo(),
            t.hi(),
            |n| cokers[&n].module.clone(),
            |n, _, _| {
                let g = cokers[&(n + 1)].projection.after(&t.diff(n));
                cokers[&n].descend(&g).expect("differential preserves images")
            },
        )
        .expect("cokernel of a chain map is a complex");
        let proj = ChainMap::from_components(t, &c, (t.lo()..=t.hi()).map(|n| (n, cokers[&n].projection.clone())));
        (c, proj)
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("comps", &self.comps)
            .finish()
    }
}

/// Degrees `s^n: X^n -> Y^{n-1}` with `f^n = s^{n+1} d_X^n + d_Y^{n-1} s^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: Complex,
    target: Complex,
    comps: BTreeMap<i64, Morphism>,
}

impl Homotopy {
    pub fn new(
        source: &Complex,
        target: &Complex,
        comps: impl IntoIterator<Item = (i64, Morphism)>,
    ) -> Result<Self> {
        let mut stored = BTreeMap::new();
        for (n, s) in comps {
            if s.source() != &source.module(n) || s.target() != &target.module(n - 1) {
                return Err(Error::Construction {
                    degree: n,
                    reason: "homotopy component does not match the complexes".into(),
                });
            }
            if !s.is_zero() {
                stored.insert(n, s);
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            comps: stored,
        })
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn component(&self, n: i64) -> Morphism {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Morphism::zero(&self.source.module(n), &self.target.module(n - 1)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Morphism> {
        &self.comps
    }

    /// The null-homotopic map `s d + d s`.
    pub fn boundary(&self) -> ChainMap {
        let (lo, hi) = span(&self.source, &self.target);
        ChainMap::from_components(
            &self.source,
            &self.target,
            (lo..=hi).map(|n| {
                let a = self.component(n + 1).after(&self.source.diff(n));
                let b = self.target.diff(n - 1).after(&self.component(n));
                (n, a.add(&b))
            }),
        )
    }

    /// Whether this is a homotopy from `f` to zero.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        f.source() == &self.source && f.target() == &self.target && self.boundary() == *f
    }
}

/// Smallest degree range covering both supports.
pub(crate) fn span(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.support(), b.support()) {
        (None, None) => (0, -1),
        (Some(s), None) | (None, Some(s)) => s,
        (Some((l1, h1)), Some((l2, h2))) => (l1.min(l2), h1.max(h2)),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    fn mor(a: &FinModule, b: &FinModule, rows: &[&[i128]]) -> Morphism {
        Morphism::new(a, b, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub(crate) fn short_exact() -> Complex {
        // 0 -> (2) -> (4) -> (2) -> 0
        let (a, b) = (md(&[2]), md(&[4]));
        Complex::new(z4(), 0, vec![a.clone(), b.clone(), a.clone()], vec![
            mor(&a, &b, &[&[2]]),
            mor(&b, &a, &[&[1]]),
        ])
        .unwrap()
    }

    #[test]
    fn disk_is_valid_and_exact() {
        let d = Complex::disk(&md(&[2, 4]), 0);
        assert!(d.validate().is_ok());
        let ex = d.exactness();
        assert!(ex.is_exact());
        assert_eq!(ex.kernels[1].1, md(&[2, 4]));
    }

    #[test]
    fn square_of_identity_is_reported() {
        let f = md(&[4]);
        let id = Morphism::identity(&f);
        let err = Complex::new(z4(), 0, vec![f.clone(), f.clone(), f], vec![id.clone(), id]).unwrap_err();
        assert_eq!(err, Error::NotAComplex { degree: 1 });
    }

    #[test]
    fn example_two_ten_complex() {
        // 0 -> R -> R ⊕ R -> 0, a -> (0, a)
        let r = FinModule::free(z4(), 1);
        let rr = FinModule::free(z4(), 2);
        let c = Complex::new(z4(), 0, vec![r.clone(), rr.clone()], vec![mor(&r, &rr, &[&[0], &[1]])]).unwrap();
        assert!(c.validate().is_ok());
        assert!(!c.is_exact());
    }

    #[test]
    fn shift_signs_and_round_trip() {
        let c = short_exact();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        assert_eq!(c.shift(1).diff(-1), c.diff(0).neg());
        assert_eq!(Complex::disk(&md(&[2]), 0).shift(1).lo(), -1);
    }

    #[test]
    fn exactness_of_sphere_and_short_exact() {
        assert_eq!(Complex::sphere(&md(&[2]), 0).exactness().first_failure, Some(0));
        let ex = short_exact().exactness();
        assert!(ex.is_exact());
        let ks: Vec<_> = ex.kernels.iter().map(|(_, k)| k.clone()).collect();
        assert_eq!(ks, vec![FinModule::zero(z4()), md(&[2]), md(&[2])]);
    }

    #[test]
    fn trimming_makes_equality_canonical() {
        let z = FinModule::zero(z4());
        let a = md(&[2]);
        let c = Complex::new(z4(), -1, vec![z.clone(), a.clone(), z.clone()], vec![
            Morphism::zero(&z, &a),
            Morphism::zero(&a, &z),
        ])
        .unwrap();
        assert_eq!(c, Complex::sphere(&a, 0));
    }

    #[test]
    fn sums_of_complexes() {
        assert!(direct_sum(z4(), &[Complex::zero(z4()), Complex::zero(z4())]).is_zero());
        let s = Complex::direct_sum(z4(), &[short_exact(), Complex::disk(&md(&[4]), 1)]);
        assert_eq!(s.complex.module(1), md(&[4, 4]));
        assert!(s.complex.is_exact());
        let back = s.projections[0].after(&s.injections[0]);
        assert_eq!(back, ChainMap::identity(&short_exact()));
    }

    #[test]
    fn chain_map_checks_squares() {
        let c = short_exact();
        let bad = ChainMap::new(&c, &c, [(1, Morphism::identity(&md(&[4])))]);
        assert!(matches!(bad, Err(Error::NotAChainMap { .. })));
        let id = ChainMap::identity(&c);
        assert!(id.add(&id).add(&id).add(&id).is_zero());
    }
}
