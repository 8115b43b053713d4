//! The Hom complex `Hom(X, Y)^n = ∏_p Hom(X^p, Y^{p+n})`.

use std::collections::BTreeMap;

use super::{ChainMap, Complex, Homotopy};
use crate::zm::{DirectSum, FinModule, HomSpace, Morphism};

#[derive(Clone, Debug)]
struct HomDegree {
    ps: Vec<i64>,
    spaces: Vec<HomSpace>,
    sum: DirectSum,
}

/// `Hom(X, Y)` with differential `δφ = d_Y φ - (-1)^n φ d_X`. Degree-0
/// cycles are chain maps and degree-0 boundaries are null-homotopic maps.
#[derive(Clone, Debug)]
pub struct HomComplex {
    x: Complex,
    y: Complex,
    complex: Complex,
    degrees: BTreeMap<i64, HomDegree>,
}

pub fn hom_complex(x: &Complex, y: &Complex) -> HomComplex {
    let ring = x.ring();
    let (lo, hi) = if x.is_zero() || y.is_zero() {
        (0, -1)
    } else {
        (y.lo() - x.hi(), y.hi() - x.lo())
    };
    let mut degrees = BTreeMap::new();
    for n in lo - 1..=hi + 1 {
        let ps: Vec<i64> = (x.lo()..=x.hi())
            .filter(|&p| !x.module(p).is_zero() && !y.module(p + n).is_zero())
            .collect();
        let spaces: Vec<HomSpace> = ps.iter().map(|&p| HomSpace::new(&x.module(p), &y.module(p + n))).collect();
        let mods: Vec<FinModule> = spaces.iter().map(|s| s.module().clone()).collect();
        let sum = DirectSum::new(ring, &mods);
        degrees.insert(n, HomDegree { ps, spaces, sum });
    }
    let mut hc = HomComplex {
        x: x.clone(),
        y: y.clone(),
        complex: Complex::zero(ring),
        degrees,
    };
    let complex = Complex::from_fn(
        ring,
        lo,
        hi,
        |n| hc.degrees[&n].sum.module.clone(),
        |n, a, b| {
            let cols: Vec<Vec<u64>> = (0..a.rank())
                .map(|j| {
                    let mut e = vec![0; a.rank()];
                    e[j] = 1;
                    let fam = hc.family(n, &e);
                    hc.element(n + 1, &hc.delta(n, &fam))
                })
                .collect();
            Morphism::from_columns(a, b, &cols)
        },
    )
    .expect("Hom complex squares to zero");
    hc.complex = complex;
    hc
}

impl HomComplex {
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn source(&self) -> &Complex {
        &self.x
    }

    pub fn target(&self) -> &Complex {
        &self.y
    }

    fn degree(&self, n: i64) -> Option<&HomDegree> {
        self.degrees.get(&n).filter(|d| !d.ps.is_empty())
    }

    /// The graded map `p -> (X^p -> Y^{p+n})` with the given coordinates.
    pub fn family(&self, n: i64, coords: &[u64]) -> BTreeMap<i64, Morphism> {
        let Some(d) = self.degree(n) else {
            return BTreeMap::new();
        };
        d.ps.iter()
            .zip(&d.spaces)
            .zip(&d.sum.projections)
            .map(|((p, sp), pr)| (*p, sp.morphism(&pr.apply(coords))))
            .collect()
    }

    /// Coordinates in `Hom(X, Y)^n` of a graded map (missing degrees are zero).
    pub fn element(&self, n: i64, family: &BTreeMap<i64, Morphism>) -> Vec<u64> {
        let Some(d) = self.degree(n) else {
            return Vec::new();
        };
        let m = self.x.ring().modulus();
        let mut out = vec![0u64; d.sum.module.rank()];
        for ((p, sp), inj) in d.ps.iter().zip(&d.spaces).zip(&d.sum.injections) {
            if let Some(phi) = family.get(p) {
                let v = inj.apply(&sp.coords(phi));
                for (o, x) in out.iter_mut().zip(v) {
                    *o = (*o + x) % m;
                }
            }
        }
        d.sum.module.reduce(&out)
    }

    /// `δφ` for a degree-`n` graded map, as a degree-`n+1` graded map.
    pub fn delta(&self, n: i64, phi: &BTreeMap<i64, Morphism>) -> BTreeMap<i64, Morphism> {
        let get = |p: i64| {
            phi.get(&p)
                .cloned()
                .unwrap_or_else(|| Morphism::zero(&self.x.module(p), &self.y.module(p + n)))
        };
        let odd = n.rem_euclid(2) == 1;
        let mut out = BTreeMap::new();
        for p in self.x.lo()..=self.x.hi() {
            let a = self.y.diff(p + n).after(&get(p));
            let b = get(p + 1).after(&self.x.diff(p));
            let v = if odd { a.add(&b) } else { a.sub(&b) };
            if !v.source().is_zero() && !v.target().is_zero() {
                out.insert(p, v);
            }
        }
        out
    }

    pub fn cycle_of(&self, f: &ChainMap) -> Vec<u64> {
        self.element(0, f.components())
    }

    /// The chain map of a degree-0 cycle.
    pub fn chain_map_of(&self, coords: &[u64]) -> crate::Result<ChainMap> {
        ChainMap::new(&self.x, &self.y, self.family(0, coords))
    }

    pub fn homotopy_element(&self, h: &Homotopy) -> Vec<u64> {
        self.element(-1, h.components())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{chain_maps, is_null_homotopic};
    use crate::zm::Ring;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    #[test]
    fn spheres_give_plain_hom() {
        let (a, b) = (md(&[2, 4]), md(&[4]));
        let h = hom_complex(&Complex::sphere(&a, 0), &Complex::sphere(&b, 0));
        assert_eq!(h.complex().len(), 1);
        assert_eq!(h.complex().module(0), crate::zm::hom_group(&a, &b).0);
    }

    #[test]
    fn cycles_are_chain_maps_and_boundaries_are_null_homotopic() {
        let c = crate::complexes::tests::short_exact();
        let h = hom_complex(&c, &c);
        let hc = h.complex();
        let z0 = hc.diff(0).kernel();
        let b0 = hc.diff(-1).image();
        let maps = chain_maps(&c, &c);
        assert_eq!(z0.module.order(), maps.module().order());
        for g in maps.generators() {
            let e = h.cycle_of(&g);
            assert!(hc.diff(0).apply(&e).iter().all(|&v| v == 0));
            assert_eq!(h.chain_map_of(&e).unwrap(), g);
            let is_boundary = b0.lift(&e).is_some();
            assert_eq!(is_boundary, is_null_homotopic(&g).is_some());
        }
    }
}
