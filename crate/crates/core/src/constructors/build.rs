//! Inductive preenvelopes (top degree downwards) and precovers (bottom upwards).

use super::providers::{ModulePrecovers, ModulePreenvelopes};
use crate::classes::ModuleClass;
use crate::complexes::{chain_maps, factor_left, factor_right, is_null_homotopic, ChainMap, Complex, Homotopy};
use crate::error::{Error, Result};
use crate::zm::{DirectSum, LinSys, Morphism, Term};

/// Where one degree of a built complex came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// Degree of the input complex that was added.
    pub degree: i64,
    pub provider: String,
    /// The module-level preenvelope `Y^n -> P^n` (or precover `P^n -> Y^n`).
    pub module_map: Morphism,
    /// The solved comparison map (`s_{n+1}` or `s^2` in the gluing formulas);
    /// absent for the base step.
    pub comparison: Option<Morphism>,
}

/// A monic map `Y -> E` into an exact complex of relatively injective modules.
#[derive(Clone, Debug)]
pub struct PreenvelopeResult {
    pub env: Complex,
    pub embedding: ChainMap,
    pub cokernel: Complex,
    pub certificate: Vec<StepRecord>,
}

/// An epic map `P -> Y` from an exact complex of relatively projective modules.
#[derive(Clone, Debug)]
pub struct PrecoverResult {
    pub cover: Complex,
    pub projection: ChainMap,
    pub kernel: Complex,
    pub certificate: Vec<StepRecord>,
}

fn step_error(degree: i64, e: Error) -> Error {
    match e {
        Error::Construction { .. } => e,
        other => Error::Construction {
            degree,
            reason: other.to_string(),
        },
    }
}

impl PreenvelopeResult {
    fn base(map: Morphism, degree: i64, provider: String) -> Result<Self> {
        let y = Complex::sphere(map.source(), degree);
        let env = Complex::disk(map.target(), degree - 1);
        let embedding = ChainMap::new(&y, &env, [(degree, map.clone())])?;
        Ok(Self::finish(
            embedding,
            vec![StepRecord {
                degree,
                provider,
                module_map: map,
                comparison: None,
            }],
        ))
    }

    fn finish(embedding: ChainMap, certificate: Vec<StepRecord>) -> Self {
        let (cokernel, _) = embedding.cokernel();
        Self {
            env: embedding.target().clone(),
            embedding,
            cokernel,
            certificate,
        }
    }

    /// The input complex `Y`.
    pub fn input(&self) -> &Complex {
        self.embedding.source()
    }

    /// Lowest degree of `Y` processed so far.
    pub fn low(&self) -> i64 {
        self.certificate.last().map_or(0, |r| r.degree)
    }

    /// Monic in every degree, exact, and cokernel componentwise in `x`.
    pub fn check_invariants(&self, x: &ModuleClass) -> Result<()> {
        if !self.embedding.is_injective() {
            return Err(Error::Invalid("embedding is not monic".into()));
        }
        if let Some(n) = self.env.exactness().first_failure {
            return Err(Error::Invalid(format!("preenvelope is not exact at degree {n}")));
        }
        for n in self.cokernel.lo()..=self.cokernel.hi() {
            let c = self.cokernel.module(n);
            if !x.contains(&c) {
                return Err(Error::Invalid(format!("cokernel component {c} in degree {n} is outside the class")));
            }
        }
        Ok(())
    }
}

impl PrecoverResult {
    fn base(map: Morphism, degree: i64, provider: String) -> Result<Self> {
        let y = Complex::sphere(map.target(), degree);
        let cover = Complex::disk(map.source(), degree);
        let projection = ChainMap::new(&cover, &y, [(degree, map.clone())])?;
        Ok(Self::finish(
            projection,
            vec![StepRecord {
                degree,
                provider,
                module_map: map,
                comparison: None,
            }],
        ))
    }

    fn finish(projection: ChainMap, certificate: Vec<StepRecord>) -> Self {
        let (kernel, _) = projection.kernel();
        Self {
            cover: projection.source().clone(),
            projection,
            kernel,
            certificate,
        }
    }

    pub fn input(&self) -> &Complex {
        self.projection.target()
    }

    /// Highest degree of `Y` processed so far.
    pub fn high(&self) -> i64 {
        self.certificate.last().map_or(-1, |r| r.degree)
    }

    /// Epic in every degree, exact, and kernel componentwise in `x`.
    pub fn check_invariants(&self, x: &ModuleClass) -> Result<()> {
        if !self.projection.is_surjective() {
            return Err(Error::Invalid("projection is not epic".into()));
        }
        if let Some(n) = self.cover.exactness().first_failure {
            return Err(Error::Invalid(format!("precover is not exact at degree {n}")));
        }
        for n in self.kernel.lo()..=self.kernel.hi() {
            let k = self.kernel.module(n);
            if !x.contains(&k) {
                return Err(Error::Invalid(format!("kernel component {k} in degree {n} is outside the class")));
            }
        }
        Ok(())
    }
}

/// Extends a preenvelope of `Y^{>=c}` to `Y^{>=c-1}`, where `a: Y^{c-1} -> Y^c`
/// is the new differential and `f: Y^{c-1} -> P` its module preenvelope.
///
/// Solves `σ: P -> E^{c-1}` with `d_E σ f = ι^c a` and glues
/// `E'^{c-2} = P`, `E'^{c-1} = P ⊕ E^{c-1}` using
/// `λ¹(x) = (x, -σ(x))` and `λ(x, y) = d_E σ(x) + d_E(y)`.
pub fn build_preenvelope_step(
    prev: &PreenvelopeResult,
    a: &Morphism,
    f: &Morphism,
    provider: &str,
) -> Result<PreenvelopeResult> {
    let c = prev.low();
    let deg = c - 1;
    let ring = prev.env.ring();
    let (y, e, iota) = (prev.input(), &prev.env, &prev.embedding);
    if a.target() != &y.module(c) || a.source() != f.source() {
        return Err(Error::Construction {
            degree: deg,
            reason: "new differential does not match the complex".into(),
        });
    }
    if !y.diff(c).after(a).is_zero() {
        return Err(Error::NotAComplex { degree: c });
    }
    let (e_top, d_top) = (e.module(deg), e.diff(deg));
    let rhs = iota.component(c).after(a);
    let mut sys = LinSys::new(ring);
    let v = sys.var(f.target(), &e_top);
    sys.equation(f.source(), &e.module(c), &[Term::var(v).left(&d_top).right(f)], Some(&rhs));
    let sigma = sys.finish().particular().ok_or_else(|| Error::Construction {
        degree: deg,
        reason: "no comparison map into the previous preenvelope: its top module is not injective \
                 relative to the new cokernel"
            .into(),
    })?;
    let sigma = sigma.get(v);
    let p = f.target().clone();
    let sum = DirectSum::new(ring, &[p.clone(), e_top.clone()]);
    let (i1, i2) = (&sum.injections[0], &sum.injections[1]);
    let (p1, p2) = (&sum.projections[0], &sum.projections[1]);
    let lambda1 = i1.sub(&i2.after(&sigma));
    let lambda = d_top.after(&sigma).after(p1).add(&d_top.after(p2));
    let hi = e.hi().max(c);
    let mut modules = vec![p, sum.module.clone()];
    let mut diffs = vec![lambda1, lambda];
    for n in c..=hi {
        modules.push(e.module(n));
        if n < hi {
            diffs.push(e.diff(n));
        }
    }
    let env = Complex::new(ring, deg - 1, modules, diffs).map_err(|err| step_error(deg, err))?;
    let y_hi = y.hi().max(c);
    let mut ymods = vec![a.source().clone()];
    let mut ydiffs = vec![a.clone()];
    for n in c..=y_hi {
        ymods.push(y.module(n));
        if n < y_hi {
            ydiffs.push(y.diff(n));
        }
    }
    let y_new = Complex::new(ring, deg, ymods, ydiffs)?;
    let mut comps: Vec<(i64, Morphism)> = iota.components().iter().map(|(n, m)| (*n, m.clone())).collect();
    comps.push((deg, i1.after(f)));
    let embedding = ChainMap::new(&y_new, &env, comps).map_err(|err| step_error(deg, err))?;
    let mut certificate = prev.certificate.clone();
    certificate.push(StepRecord {
        degree: deg,
        provider: provider.to_string(),
        module_map: f.clone(),
        comparison: Some(sigma),
    });
    let out = PreenvelopeResult::finish(embedding, certificate);
    if !out.env.is_exact() {
        return Err(Error::Construction {
            degree: deg,
            reason: "glued complex is not exact".into(),
        });
    }
    Ok(out)
}

/// Extends a precover of `Y^{<=b}` to `Y^{<=b+1}`, where `a: Y^b -> Y^{b+1}`
/// is the new differential and `f: P -> Y^{b+1}` its module precover.
///
/// Solves `s²: D^{b+1} -> P` with `f s² d_D = a π^b`, sets `s¹ = s² d_D`,
/// and glues `D'^{b+1} = D^{b+1} ⊕ P`, `D'^{b+2} = P` using
/// `λ(x) = (d_D(x), s¹(x))` and `λ₁(x, y) = s²(x) - y`.
pub fn build_precover_step(prev: &PrecoverResult, a: &Morphism, f: &Morphism, provider: &str) -> Result<PrecoverResult> {
    let b = prev.high();
    let deg = b + 1;
    let ring = prev.cover.ring();
    let (y, d, pi) = (prev.input(), &prev.cover, &prev.projection);
    if a.source() != &y.module(b) || a.target() != f.target() {
        return Err(Error::Construction {
            degree: deg,
            reason: "new differential does not match the complex".into(),
        });
    }
    if !a.after(&y.diff(b - 1)).is_zero() {
        return Err(Error::NotAComplex { degree: b });
    }
    let (d_top, d_in) = (d.module(deg), d.diff(b));
    let rhs = a.after(&pi.component(b));
    let mut sys = LinSys::new(ring);
    let v = sys.var(&d_top, f.source());
    sys.equation(&d.module(b), f.target(), &[Term::var(v).left(f).right(&d_in)], Some(&rhs));
    let s2 = sys.finish().particular().ok_or_else(|| Error::Construction {
        degree: deg,
        reason: "no comparison map out of the previous precover: its top module is not projective \
                 relative to the new kernel"
            .into(),
    })?;
    let s2 = s2.get(v);
    let s1 = s2.after(&d_in);
    let p = f.source().clone();
    let sum = DirectSum::new(ring, &[d_top.clone(), p.clone()]);
    let (i1, i2) = (&sum.injections[0], &sum.injections[1]);
    let (p1, p2) = (&sum.projections[0], &sum.projections[1]);
    let lambda = i1.after(&d_in).add(&i2.after(&s1));
    let lambda1 = s2.after(p1).sub(p2);
    let lo = d.lo().min(b);
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=b {
        modules.push(d.module(n));
        if n < b {
            diffs.push(d.diff(n));
        }
    }
    modules.push(sum.module.clone());
    modules.push(p);
    diffs.push(lambda);
    diffs.push(lambda1);
    let cover = Complex::new(ring, lo, modules, diffs).map_err(|err| step_error(deg, err))?;
    let y_lo = y.lo().min(b);
    let mut ymods = Vec::new();
    let mut ydiffs = Vec::new();
    for n in y_lo..=b {
        ymods.push(y.module(n));
        ydiffs.push(if n < b { y.diff(n) } else { a.clone() });
    }
    ymods.push(a.target().clone());
    let y_new = Complex::new(ring, y_lo, ymods, ydiffs)?;
    let mut comps: Vec<(i64, Morphism)> = pi.components().iter().map(|(n, m)| (*n, m.clone())).collect();
    comps.push((deg, f.after(p2)));
    let projection = ChainMap::new(&cover, &y_new, comps).map_err(|err| step_error(deg, err))?;
    let mut certificate = prev.certificate.clone();
    certificate.push(StepRecord {
        degree: deg,
        provider: provider.to_string(),
        module_map: f.clone(),
        comparison: Some(s2),
    });
    let out = PrecoverResult::finish(projection, certificate);
    if !out.cover.is_exact() {
        return Err(Error::Construction {
            degree: deg,
            reason: "glued complex is not exact".into(),
        });
    }
    Ok(out)
}

fn checked_preenvelope(provider: &dyn ModulePreenvelopes, x: &ModuleClass, y: &Complex, n: i64) -> Result<Morphism> {
    let m = y.module(n);
    let f = provider.preenvelope(&m).map_err(|e| step_error(n, e))?;
    if f.source() != &m || !f.is_injective() {
        return Err(Error::Construction {
            degree: n,
            reason: format!("{} returned a map that is not monic out of {m}", provider.name()),
        });
    }
    let c = f.cokernel().module;
    if !x.contains(&c) {
        return Err(Error::Construction {
            degree: n,
            reason: format!("{}: cokernel {c} of the preenvelope of {m} is outside the class", provider.name()),
        });
    }
    Ok(f)
}

fn checked_precover(provider: &dyn ModulePrecovers, x: &ModuleClass, y: &Complex, n: i64) -> Result<Morphism> {
    let m = y.module(n);
    let f = provider.precover(&m).map_err(|e| step_error(n, e))?;
    if f.target() != &m || !f.is_surjective() {
        return Err(Error::Construction {
            degree: n,
            reason: format!("{} returned a map that is not epic onto {m}", provider.name()),
        });
    }
    let k = f.kernel().module;
    if !x.contains(&k) {
        return Err(Error::Construction {
            degree: n,
            reason: format!("{}: kernel {k} of the precover of {m} is outside the class", provider.name()),
        });
    }
    Ok(f)
}

/// Folds [`build_preenvelope_step`] from the top degree of a bounded `Y` down.
pub fn build_preenvelope(y: &Complex, x: &ModuleClass, provider: &dyn ModulePreenvelopes) -> Result<PreenvelopeResult> {
    if y.is_zero() {
        let z = Complex::zero(y.ring());
        return Ok(PreenvelopeResult::finish(ChainMap::zero(&z, &z), Vec::new()));
    }
    for n in y.lo()..=y.hi() {
        let m = y.module(n);
        if !x.contains(&m) {
            return Err(Error::Hypothesis(format!("component {m} in degree {n} is outside the class")));
        }
    }
    let top = checked_preenvelope(provider, x, y, y.hi())?;
    let mut res = PreenvelopeResult::base(top, y.hi(), provider.name())?;
    for n in (y.lo()..y.hi()).rev() {
        let f = checked_preenvelope(provider, x, y, n)?;
        res = build_preenvelope_step(&res, &y.diff(n), &f, &provider.name())?;
    }
    debug_assert_eq!(res.input(), y);
    Ok(res)
}

/// Folds [`build_precover_step`] from the bottom degree of a bounded `Y` up.
pub fn build_precover(y: &Complex, x: &ModuleClass, provider: &dyn ModulePrecovers) -> Result<PrecoverResult> {
    if y.is_zero() {
        let z = Complex::zero(y.ring());
        return Ok(PrecoverResult::finish(ChainMap::zero(&z, &z), Vec::new()));
    }
    for n in y.lo()..=y.hi() {
        let m = y.module(n);
        if !x.contains(&m) {
            return Err(Error::Hypothesis(format!("component {m} in degree {n} is outside the class")));
        }
    }
    let bottom = checked_precover(provider, x, y, y.lo())?;
    let mut res = PrecoverResult::base(bottom, y.lo(), provider.name())?;
    for n in y.lo() + 1..=y.hi() {
        let f = checked_precover(provider, x, y, n)?;
        res = build_precover_step(&res, &y.diff(n - 1), &f, &provider.name())?;
    }
    debug_assert_eq!(res.input(), y);
    Ok(res)
}

/// Outcome of testing the factorization property against a candidate pool.
#[derive(Clone, Debug)]
pub enum Certification {
    /// Every map into (out of) every pool complex factors.
    Certified { pool: usize, maps: usize },
    /// `map` (a generator of the Hom group for pool entry `index`) does not factor.
    Counterexample { index: usize, map: ChainMap },
    /// Only the first `checked` of `pool` complexes were examined.
    Partial { checked: usize, pool: usize, maps: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }
}

/// Factorable maps form a subgroup, so testing Hom-group generators suffices.
/// At most `cap` pool entries are examined.
pub fn certify_preenvelope(res: &PreenvelopeResult, pool: &[Complex], cap: usize) -> Certification {
    let mut maps = 0;
    for (index, c) in pool.iter().enumerate().take(cap) {
        for g in chain_maps(res.input(), c).generators() {
            maps += 1;
            if factor_right(&res.embedding, &g).is_none() {
                return Certification::Counterexample { index, map: g };
            }
        }
    }
    if pool.len() > cap {
        return Certification::Partial {
            checked: cap,
            pool: pool.len(),
            maps,
        };
    }
    Certification::Certified { pool: pool.len(), maps }
}

pub fn certify_precover(res: &PrecoverResult, pool: &[Complex], cap: usize) -> Certification {
    let mut maps = 0;
    for (index, c) in pool.iter().enumerate().take(cap) {
        for g in chain_maps(c, res.input()).generators() {
            maps += 1;
            if factor_left(&res.projection, &g).is_none() {
                return Certification::Counterexample { index, map: g };
            }
        }
    }
    if pool.len() > cap {
        return Certification::Partial {
            checked: cap,
            pool: pool.len(),
            maps,
        };
    }
    Certification::Certified { pool: pool.len(), maps }
}

/// Comparison maps between two constructions on the same input, with
/// homotopies `v u ~ 1` and `u v ~ 1`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub forward: ChainMap,
    pub backward: ChainMap,
    pub first_round_trip: Homotopy,
    pub second_round_trip: Homotopy,
}

fn round_trips(u: ChainMap, v: ChainMap) -> Option<Comparison> {
    let vu = v.after(&u).sub(&ChainMap::identity(u.source()));
    let uv = u.after(&v).sub(&ChainMap::identity(v.source()));
    Some(Comparison {
        first_round_trip: is_null_homotopic(&vu)?,
        second_round_trip: is_null_homotopic(&uv)?,
        forward: u,
        backward: v,
    })
}

/// `u: E -> E'` and `v: E' -> E` over the embeddings; `None` if either does
/// not exist or a round trip is not homotopic to the identity.
pub fn compare_preenvelopes(a: &PreenvelopeResult, b: &PreenvelopeResult) -> Option<Comparison> {
    let u = factor_right(&a.embedding, &b.embedding)?;
    let v = factor_right(&b.embedding, &a.embedding)?;
    round_trips(u, v)
}

/// `u: P -> P'` and `v: P' -> P` over the projections.
pub fn compare_precovers(a: &PrecoverResult, b: &PrecoverResult) -> Option<Comparison> {
    let u = factor_left(&b.projection, &a.projection)?;
    let v = factor_left(&a.projection, &b.projection)?;
    round_trips(u, v)
}

#[cfg(test)]
mod tests {
    use super::super::{FreeCover, FreeHull, PaddedCover, PaddedHull};
    use super::*;
    use crate::classes::Bounds;
    use crate::zm::{FinModule, Ring};

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    fn all() -> ModuleClass {
        ModuleClass::all(z4(), Bounds { length: 2, factors: 1 })
    }

    fn identity_pair() -> Complex {
        let two = md(&[2]);
        Complex::new(z4(), 0, vec![two.clone(), two.clone()], vec![Morphism::identity(&two)]).unwrap()
    }

    #[test]
    fn base_case_is_a_disk() {
        let y = Complex::sphere(&md(&[2]), 3);
        let r = build_preenvelope(&y, &all(), &FreeHull).unwrap();
        assert_eq!(r.env, Complex::disk(&FinModule::free(z4(), 1), 2));
        r.check_invariants(&all()).unwrap();
        let p = build_precover(&y, &all(), &FreeCover).unwrap();
        assert_eq!(p.cover, Complex::disk(&FinModule::free(z4(), 1), 3));
        p.check_invariants(&all()).unwrap();
    }

    #[test]
    fn identity_pair_preenvelope() {
        let y = identity_pair();
        let r = build_preenvelope(&y, &all(), &FreeHull).unwrap();
        r.check_invariants(&all()).unwrap();
        assert_eq!((r.env.lo(), r.env.hi()), (-1, 1));
        assert_eq!(r.env.module(0), FinModule::free(z4(), 2));
        assert!(certify_preenvelope(&r, std::slice::from_ref(&r.env), 10).is_certified());
    }

    #[test]
    fn identity_pair_precover() {
        let y = identity_pair();
        let r = build_precover(&y, &all(), &FreeCover).unwrap();
        r.check_invariants(&all()).unwrap();
        assert_eq!((r.cover.lo(), r.cover.hi()), (0, 2));
        assert!(certify_precover(&r, std::slice::from_ref(&r.cover), 10).is_certified());
    }

    #[test]
    fn padded_constructions_are_homotopy_equivalent() {
        let y = crate::complexes::tests::short_exact();
        let a = build_preenvelope(&y, &all(), &FreeHull).unwrap();
        let b = build_preenvelope(&y, &all(), &PaddedHull { extra: 1 }).unwrap();
        b.check_invariants(&all()).unwrap();
        assert!(compare_preenvelopes(&a, &b).is_some());
        let p = build_precover(&y, &all(), &FreeCover).unwrap();
        let q = build_precover(&y, &all(), &PaddedCover { extra: 1 }).unwrap();
        assert!(compare_precovers(&p, &q).is_some());
    }

    #[test]
    fn components_outside_class_are_rejected() {
        let x = ModuleClass::finite(z4(), vec![md(&[4])], Bounds::default());
        let y = Complex::sphere(&md(&[2]), 0);
        assert!(matches!(build_preenvelope(&y, &x, &FreeHull), Err(Error::Hypothesis(_))));
    }
}
