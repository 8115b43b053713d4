//! Linear systems whose unknowns are graded maps between complexes.

use std::collections::BTreeMap;

use rand::Rng;

use super::{ChainMap, Complex, Homotopy};
use crate::zm::{Assignment, FinModule, LinSys, Morphism, Ring, Solved, SolutionSpace, Term, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Uid(usize);

#[derive(Clone, Debug)]
struct Unknown {
    source: Complex,
    target: Complex,
    /// Component `n` maps `source^n -> target^{n + shift}`.
    shift: i64,
    vars: BTreeMap<i64, VarId>,
}

/// One summand `± left ∘ u ∘ right` of a chain-level equation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CxTerm<'a> {
    pub negate: bool,
    pub left: Option<&'a ChainMap>,
    pub u: Uid,
    pub right: Option<&'a ChainMap>,
}

impl<'a> CxTerm<'a> {
    pub fn of(u: Uid) -> Self {
        Self {
            negate: false,
            left: None,
            u,
            right: None,
        }
    }

    pub fn left(mut self, p: &'a ChainMap) -> Self {
        self.left = Some(p);
        self
    }

    pub fn right(mut self, q: &'a ChainMap) -> Self {
        self.right = Some(q);
        self
    }

}

#[derive(Clone, Debug)]
pub(crate) struct CxSys {
    sys: LinSys,
    unknowns: Vec<Unknown>,
}

impl CxSys {
    pub fn new(ring: Ring) -> Self {
        Self {
            sys: LinSys::new(ring),
            unknowns: Vec::new(),
        }
    }

    /// A family of module maps `x^n -> y^{n + shift}` with no constraints yet.
    pub fn graded(&mut self, x: &Complex, y: &Complex, shift: i64) -> Uid {
        let mut vars = BTreeMap::new();
        for n in x.lo()..=x.hi() {
            let (a, b) = (x.module(n), y.module(n + shift));
            if !a.is_zero() && !b.is_zero() {
                vars.insert(n, self.sys.var(&a, &b));
            }
        }
        self.unknowns.push(Unknown {
            source: x.clone(),
            target: y.clone(),
            shift,
            vars,
        });
        Uid(self.unknowns.len() - 1)
    }

    /// An unknown chain map `x -> y`.
    pub fn chain_map(&mut self, x: &Complex, y: &Complex) -> Uid {
        let u = self.graded(x, y, 0);
        for n in x.lo() - 1..=x.hi() {
            let (a, b) = (x.module(n), y.module(n + 1));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (dy, dx) = (y.diff(n), x.diff(n));
            let mut terms = Vec::new();
            if let Some(v) = self.var(u, n) {
                terms.push(Term::var(v).left(&dy));
            }
            if let Some(v) = self.var(u, n + 1) {
                terms.push(Term::var(v).right(&dx).neg());
            }
            self.sys.equation(&a, &b, &terms, None);
        }
        u
    }

    pub fn var(&self, u: Uid, n: i64) -> Option<VarId> {
        self.unknowns[u.0].vars.get(&n).copied()
    }

    /// `Σ terms = rhs` as chain-level maps `x -> y`, imposed in every degree.
    pub fn equation(&mut self, x: &Complex, y: &Complex, terms: &[CxTerm<'_>], rhs: Option<&ChainMap>) {
        for n in x.lo()..=x.hi() {
            let (a, b) = (x.module(n), y.module(n));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let mut owned: Vec<(bool, Option<Morphism>, VarId, Option<Morphism>)> = Vec::new();
            for t in terms {
                let unk = &self.unknowns[t.u.0];
                assert_eq!(unk.shift, 0, "only degree-zero unknowns enter chain-level equations");
                if let Some(v) = unk.vars.get(&n) {
                    owned.push((
                        t.negate,
                        t.left.map(|p| p.component(n)),
                        *v,
                        t.right.map(|q| q.component(n)),
                    ));
                }
            }
            let lin: Vec<Term<'_>> = owned
                .iter()
                .map(|(neg, l, v, r)| Term {
                    negate: *neg,
                    left: l.as_ref(),
                    var: *v,
                    right: r.as_ref(),
                })
                .collect();
            let r = rhs.map(|f| f.component(n));
            self.sys.equation(&a, &b, &lin, r.as_ref());
        }
    }

    /// `s d_X + d_Y s = f` for a degree `-1` unknown `s: X -> Y`.
    pub fn homotopy_equation(&mut self, s: Uid, f: Option<&ChainMap>) {
        let (x, y) = {
            let unk = &self.unknowns[s.0];
            assert_eq!(unk.shift, -1, "homotopies lower degree by one");
            (unk.source.clone(), unk.target.clone())
        };
        for n in x.lo()..=x.hi() {
            let (a, b) = (x.module(n), y.module(n));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (dx, dy) = (x.diff(n), y.diff(n - 1));
            let mut terms = Vec::new();
            if let Some(v) = self.var(s, n + 1) {
                terms.push(Term::var(v).right(&dx));
            }
            if let Some(v) = self.var(s, n) {
                terms.push(Term::var(v).left(&dy));
            }
            let r = f.map(|f| f.component(n));
            self.sys.equation(&a, &b, &terms, r.as_ref());
        }
    }

    pub fn finish(self) -> CxSolved {
        CxSolved {
            solved: self.sys.finish(),
            unknowns: self.unknowns,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct CxSolved {
    solved: Solved,
    unknowns: Vec<Unknown>,
}

impl CxSolved {
    pub fn particular(&self) -> Option<CxAssignment> {
        self.solved.particular().map(|a| self.wrap(a))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> CxAssignment {
        self.wrap(self.solved.random(rng))
    }

    pub fn space(&self) -> SolutionSpace {
        self.solved.space()
    }

    pub fn wrap(&self, a: Assignment) -> CxAssignment {
        CxAssignment {
            a,
            unknowns: self.unknowns.clone(),
        }
    }

    /// Values for every module-level unknown, in declaration order.
    pub fn flatten(&self, values: &[(Uid, &BTreeMap<i64, Morphism>)]) -> Vec<Morphism> {
        let mut out = Vec::new();
        for (i, unk) in self.unknowns.iter().enumerate() {
            let given = values.iter().find(|(u, _)| u.0 == i).map(|(_, v)| *v);
            for n in unk.vars.keys() {
                let (a, b) = (unk.source.module(*n), unk.target.module(*n + unk.shift));
                out.push(
                    given
                        .and_then(|g| g.get(n).cloned())
                        .unwrap_or_else(|| Morphism::zero(&a, &b)),
                );
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub(crate) struct CxAssignment {
    a: Assignment,
    unknowns: Vec<Unknown>,
}

impl CxAssignment {
    pub fn graded(&self, u: Uid) -> BTreeMap<i64, Morphism> {
        self.unknowns[u.0]
            .vars
            .iter()
            .map(|(n, v)| (*n, self.a.get(*v)))
            .collect()
    }

    pub fn chain_map(&self, u: Uid) -> ChainMap {
        let unk = &self.unknowns[u.0];
        ChainMap::from_components(&unk.source, &unk.target, self.graded(u))
    }

    pub fn homotopy(&self, u: Uid) -> Homotopy {
        let unk = &self.unknowns[u.0];
        Homotopy::new(&unk.source, &unk.target, self.graded(u)).expect("homotopy components fit")
    }
}

/// `Hom_Ch(X, Y)` as a finite module.
#[derive(Clone, Debug)]
pub struct ChainMapSpace {
    source: Complex,
    target: Complex,
    solved: CxSolved,
    space: SolutionSpace,
    u: Uid,
}

impl ChainMapSpace {
    pub fn module(&self) -> &FinModule {
        self.space.module()
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn generators(&self) -> Vec<ChainMap> {
        self.space
            .generators()
            .into_iter()
            .map(|a| self.solved.wrap(a).chain_map(self.u))
            .collect()
    }

    pub fn element(&self, coords: &[u64]) -> ChainMap {
        self.solved.wrap(self.space.element(coords)).chain_map(self.u)
    }

    pub fn coords(&self, f: &ChainMap) -> Vec<u64> {
        assert!(f.source() == &self.source && f.target() == &self.target, "chain map ends differ");
        let values = self.solved.flatten(&[(self.u, f.components())]);
        self.space.coords_of(&values).expect("chain maps lie in the solution space")
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> ChainMap {
        self.solved.random(rng).chain_map(self.u)
    }
}

pub fn chain_maps(x: &Complex, y: &Complex) -> ChainMapSpace {
    let mut sys = CxSys::new(x.ring());
    let u = sys.chain_map(x, y);
    let solved = sys.finish();
    let space = solved.space();
    ChainMapSpace {
        source: x.clone(),
        target: y.clone(),
        solved,
        space,
        u,
    }
}

/// A homotopy `s` with `f = s d + d s`, if one exists.
pub fn is_null_homotopic(f: &ChainMap) -> Option<Homotopy> {
    let mut sys = CxSys::new(f.source().ring());
    let s = sys.graded(f.source(), f.target(), -1);
    sys.homotopy_equation(s, Some(f));
    let sol = sys.finish().particular()?;
    let h = sol.homotopy(s);
    debug_assert!(h.witnesses(f));
    Some(h)
}

/// `r` with `r ∘ i = id`.
pub fn find_retraction(i: &ChainMap) -> Option<ChainMap> {
    let (a, b) = (i.source(), i.target());
    let mut sys = CxSys::new(a.ring());
    let r = sys.chain_map(b, a);
    sys.equation(a, a, &[CxTerm::of(r).right(i)], Some(&ChainMap::identity(a)));
    Some(sys.finish().particular()?.chain_map(r))
}

/// `s` with `p ∘ s = id`.
pub fn find_section(p: &ChainMap) -> Option<ChainMap> {
    let (b, c) = (p.source(), p.target());
    let mut sys = CxSys::new(b.ring());
    let s = sys.chain_map(c, b);
    sys.equation(c, c, &[CxTerm::of(s).left(p)], Some(&ChainMap::identity(c)));
    Some(sys.finish().particular()?.chain_map(s))
}

/// `h` with `p ∘ h = g`, for `p: B -> C` and `g: A -> C`.
pub fn factor_left(p: &ChainMap, g: &ChainMap) -> Option<ChainMap> {
    let (a, c) = (g.source(), g.target());
    assert_eq!(p.target(), c, "maps must share their target");
    let mut sys = CxSys::new(a.ring());
    let h = sys.chain_map(a, p.source());
    sys.equation(a, c, &[CxTerm::of(h).left(p)], Some(g));
    Some(sys.finish().particular()?.chain_map(h))
}

/// `h` with `h ∘ q = g`, for `q: A -> B` and `g: A -> C`.
pub fn factor_right(q: &ChainMap, g: &ChainMap) -> Option<ChainMap> {
    let (a, c) = (g.source(), g.target());
    assert_eq!(q.source(), a, "maps must share their source");
    let mut sys = CxSys::new(a.ring());
    let h = sys.chain_map(q.target(), c);
    sys.equation(a, c, &[CxTerm::of(h).right(q)], Some(g));
    Some(sys.finish().particular()?.chain_map(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::mapping_cone;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    fn mor(a: &FinModule, b: &FinModule, rows: &[&[i128]]) -> Morphism {
        Morphism::new(a, b, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn zero_map_has_zero_homotopy() {
        let c = crate::complexes::tests::short_exact();
        let h = is_null_homotopic(&ChainMap::zero(&c, &c)).unwrap();
        assert!(h.components().is_empty());
    }

    #[test]
    fn contractible_free_complex() {
        // 0 -> (4) -> (4,4) -> (4) -> 0, split exact
        let f1 = md(&[4]);
        let f2 = md(&[4, 4]);
        let c = Complex::new(z4(), 0, vec![f1.clone(), f2.clone(), f1.clone()], vec![
            mor(&f1, &f2, &[&[1], &[0]]),
            mor(&f2, &f1, &[&[0, 1]]),
        ])
        .unwrap();
        let id = ChainMap::identity(&c);
        let h = is_null_homotopic(&id).unwrap();
        assert!(h.witnesses(&id));
        let t = mapping_cone(&id);
        assert!(find_retraction(&t.inclusion).is_some());
    }

    #[test]
    fn identity_on_short_exact_is_not_null_homotopic() {
        let c = crate::complexes::tests::short_exact();
        assert!(is_null_homotopic(&ChainMap::identity(&c)).is_none());
        let t = mapping_cone(&ChainMap::identity(&c));
        assert!(find_retraction(&t.inclusion).is_none());
    }

    #[test]
    fn chain_maps_between_spheres() {
        let (a, b) = (md(&[2]), md(&[4]));
        let sp = chain_maps(&Complex::sphere(&a, 0), &Complex::sphere(&b, 0));
        assert_eq!(sp.module(), &md(&[2]));
        for g in sp.generators() {
            assert_eq!(sp.element(&sp.coords(&g)), g);
        }
    }

    #[test]
    fn factorization_through_inclusion() {
        let (a, b) = (md(&[2]), md(&[4]));
        let (sa, sb) = (Complex::sphere(&a, 0), Complex::sphere(&b, 0));
        let i = ChainMap::new(&sa, &sb, [(0, mor(&a, &b, &[&[2]]))]).unwrap();
        assert!(factor_left(&i, &i).is_some());
        assert!(find_retraction(&i).is_none());
        let p = ChainMap::new(&sb, &sa, [(0, mor(&b, &a, &[&[1]]))]).unwrap();
        assert!(find_section(&p).is_none());
        assert!(factor_right(&i, &ChainMap::zero(&sa, &sa)).is_some());
    }
}
