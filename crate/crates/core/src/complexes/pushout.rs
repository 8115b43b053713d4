//! Degreewise pushouts of chain maps.

use std::collections::BTreeMap;

use super::{span, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::zm::Pushout;

/// Pushout of `f: A -> B` and `g: A -> C`, with `first: B -> P`, `second: C -> P`.
#[derive(Clone, Debug)]
pub struct ComplexPushout {
    pub complex: Complex,
    pub first: ChainMap,
    pub second: ChainMap,
    squares: BTreeMap<i64, Pushout>,
}

pub fn complex_pushout(f: &ChainMap, g: &ChainMap) -> Result<ComplexPushout> {
    if f.source() != g.source() {
        return Err(Error::Compose("pushout legs have different sources".into()));
    }
    let (b, c) = (f.target(), g.target());
    let ring = b.ring();
    let (lo, hi) = span(b, c);
    let squares: BTreeMap<i64, Pushout> = (lo..=hi + 1)
        .map(|n| Ok((n, Pushout::new(&f.component(n), &g.component(n))?)))
        .collect::<Result<_>>()?;
    let complex = Complex::from_fn(
        ring,
        lo,
        hi,
        |n| squares[&n].module.clone(),
        |n, _, _| {
            let next = &squares[&(n + 1)];
            let h1 = next.first.after(&b.diff(n));
            let h2 = next.second.after(&c.diff(n));
            squares[&n].factor(&h1, &h2).expect("differentials respect the relations")
        },
    )?;
    let first = ChainMap::new(b, &complex, (lo..=hi).map(|n| (n, squares[&n].first.clone())))?;
    let second = ChainMap::new(c, &complex, (lo..=hi).map(|n| (n, squares[&n].second.clone())))?;
    Ok(ComplexPushout {
        complex,
        first,
        second,
        squares,
    })
}

impl ComplexPushout {
    /// The chain map `u: P -> T` with `u ∘ first = h1` and `u ∘ second = h2`.
    pub fn factor(&self, h1: &ChainMap, h2: &ChainMap) -> Option<ChainMap> {
        let t = h1.target();
        let comps: Option<Vec<_>> = (self.complex.lo()..=self.complex.hi())
            .map(|n| {
                let sq = &self.squares[&n];
                sq.factor(&h1.component(n), &h2.component(n)).map(|u| (n, u))
            })
            .collect();
        ChainMap::new(&self.complex, t, comps?).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zm::{FinModule, Morphism, Ring};

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    #[test]
    fn pushout_along_identities() {
        let c = crate::complexes::tests::short_exact();
        let id = ChainMap::identity(&c);
        let p = complex_pushout(&id, &id).unwrap();
        assert_eq!(p.complex, c);
        assert!(p.first.is_isomorphism());
    }

    #[test]
    fn pushout_of_inclusion_into_disk() {
        // (2) in degree 0 includes into the disk on (4); push out along the identity
        let a = FinModule::new(z4(), vec![2]).unwrap();
        let b = FinModule::new(z4(), vec![4]).unwrap();
        let sa = Complex::sphere(&a, 0);
        let sb = Complex::sphere(&b, 0);
        let i = ChainMap::new(&sa, &sb, [(0, Morphism::new(&a, &b, &[vec![2]]).unwrap())]).unwrap();
        let p = complex_pushout(&i, &ChainMap::identity(&sa)).unwrap();
        assert_eq!(p.complex, sb);
        let u = p.factor(&ChainMap::identity(&sb), &i).unwrap();
        assert!(u.is_isomorphism());
    }
}
