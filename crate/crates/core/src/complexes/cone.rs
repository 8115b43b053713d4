//! Mapping cones.

use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::zm::DirectSum;

/// `M(f)` with `M(f)^n = X^{n+1} ⊕ Y^n`, `d(x, y) = (-d_X x, f x + d_Y y)`,
/// and the degreewise split exact triple `0 -> Y -> M(f) -> X[1] -> 0`.
#[derive(Clone, Debug)]
pub struct ConeTriple {
    pub cone: Complex,
    /// `y -> (0, y)`.
    pub inclusion: ChainMap,
    /// `(x, y) -> x`.
    pub projection: ChainMap,
    sums: BTreeMap<i64, DirectSum>,
}

impl ConeTriple {
    /// `X^{n+1} ⊕ Y^n` with its structure maps (summand 0 is `X^{n+1}`).
    pub fn summands(&self, n: i64) -> DirectSum {
        self.sums.get(&n).cloned().unwrap_or_else(|| {
            let ring = self.cone.ring();
            let x = self.projection.target().module(n);
            let y = self.inclusion.source().module(n);
            DirectSum::new(ring, &[x, y])
        })
    }
}

pub fn mapping_cone(f: &ChainMap) -> ConeTriple {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let sums: BTreeMap<i64, DirectSum> = (lo..=hi + 1)
        .map(|n| (n, DirectSum::new(ring, &[x.module(n + 1), y.module(n)])))
        .collect();
    let cone = Complex::from_fn(
        ring,
        lo,
        hi,
        |n| sums[&n].module.clone(),
        |n, _, _| {
            let dx = x.diff(n + 1).neg();
            let fx = f.component(n + 1);
            let dy = y.diff(n);
            crate::zm::sum_map(&sums[&n], &sums[&(n + 1)], &[
                vec![Some(&dx), None],
                vec![Some(&fx), Some(&dy)],
            ])
        },
    )
    .expect("mapping cone is a complex");
    let xs = x.shift(1);
    let inclusion = ChainMap::from_components(
        y,
        &cone,
        (lo..=hi).map(|n| (n, sums[&n].injections[1].clone())),
    );
    let projection = ChainMap::from_components(
        &cone,
        &xs,
        (lo..=hi).map(|n| (n, sums[&n].projections[0].clone())),
    );
    ConeTriple {
        cone,
        inclusion,
        projection,
        sums,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zm::{FinModule, Ring};

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let c = super::super::tests::short_exact();
        let t = mapping_cone(&ChainMap::identity(&c));
        assert!(t.cone.is_exact());
        let s = Complex::sphere(&FinModule::new(z4(), vec![2]).unwrap(), 0);
        let t = mapping_cone(&ChainMap::identity(&s));
        assert_eq!(t.cone.lo(), -1);
        assert_eq!(t.cone.len(), 2);
        assert!(t.cone.is_exact());
    }

    #[test]
    fn cone_of_zero_map_is_a_sum() {
        let c = super::super::tests::short_exact();
        let t = mapping_cone(&ChainMap::zero(&c, &c));
        let sum = super::super::direct_sum(z4(), &[c.shift(1), c.clone()]);
        for n in -2..4 {
            assert_eq!(t.cone.module(n), sum.module(n));
        }
        assert!(t.projection.after(&t.inclusion).is_zero());
    }
}
