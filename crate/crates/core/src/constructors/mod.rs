//! Null-homotopies, inductive preenvelope and precover builders, and towers.

mod build;
mod providers;
mod tower;

pub use build::{
    build_precover, build_precover_step, build_preenvelope, build_preenvelope_step, certify_precover,
    certify_preenvelope, compare_precovers, compare_preenvelopes, Certification, Comparison, PrecoverResult,
    PreenvelopeResult, StepRecord,
};
pub use providers::{
    BoundedSearch, FreeCover, FreeHull, ModulePrecovers, ModulePreenvelopes, PaddedCover, PaddedHull,
};
pub use tower::{tower_extend, truncations, Link, Stabilization, TowerReport, TowerResult, TowerStage};

use crate::complexes::{factor_left, factor_right, mapping_cone, ChainMap, Homotopy};
use crate::error::{Error, Result};

/// A homotopy `s` with `f = s d + d s`, for `f: X -> Y` with `X` built from
/// members of the class and `Y` injective relative to it.
///
/// Factors `f = g ∘ i` through the cone of the identity of `X`, then reads off
/// `s^n = g^{n-1} ∘ i_1^{n-1}` where `i_1^{n-1}: X^n -> X^n ⊕ X^{n-1}`.
pub fn null_homotopy_into_x_injective(f: &ChainMap) -> Result<Homotopy> {
    let x = f.source();
    let cone = mapping_cone(&ChainMap::identity(x));
    let g = factor_right(&cone.inclusion, f).ok_or_else(|| {
        Error::Hypothesis(
            "f does not extend over the cone of the identity: Ext^1(X[1], Y) is nonzero, \
             so the target is not injective relative to the source's components"
                .into(),
        )
    })?;
    let comps = (x.lo()..=x.hi() + 1).map(|n| {
        let i1 = cone.summands(n - 1).injections[0].clone();
        (n, g.component(n - 1).after(&i1))
    });
    let s = Homotopy::new(x, f.target(), comps)?;
    debug_assert!(s.witnesses(f));
    Ok(s)
}

/// A homotopy `s` with `f = s d + d s`, for `f: X -> Y` with `X` projective
/// relative to the class and `Y` built from its members.
///
/// Lifts `f = π ∘ g` along `π: M(1_Y)[-1] -> Y`, then `s^n = -π_1^n ∘ g^n`
/// where `π_1^n: Y^n ⊕ Y^{n-1} -> Y^{n-1}`.
pub fn null_homotopy_from_x_projective(f: &ChainMap) -> Result<Homotopy> {
    let y = f.target();
    let cone = mapping_cone(&ChainMap::identity(y));
    let pi = cone.projection.shift(-1);
    let g = factor_left(&pi, f).ok_or_else(|| {
        Error::Hypothesis(
            "f does not lift to the shifted cone of the identity: Ext^1(X, Y[-1]) is nonzero, \
             so the source is not projective relative to the target's components"
                .into(),
        )
    })?;
    let x = f.source();
    let comps = (x.lo()..=x.hi()).map(|n| {
        let pi1 = cone.summands(n - 1).projections[1].clone();
        (n, pi1.after(&g.component(n)).neg())
    });
    let s = Homotopy::new(x, y, comps)?;
    debug_assert!(s.witnesses(f));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{chain_maps, Complex};
    use crate::zm::{FinModule, Ring};

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    #[test]
    fn zero_map_gives_zero_homotopy() {
        let x = Complex::sphere(&md(&[2]), 0);
        let y = Complex::disk(&md(&[4]), -1);
        let s = null_homotopy_into_x_injective(&ChainMap::zero(&x, &y)).unwrap();
        assert!(s.components().values().all(|m| m.is_zero()));
    }

    #[test]
    fn every_map_from_sphere_into_free_disk_is_null() {
        let x = Complex::sphere(&md(&[2]), 0);
        for n in [-1, 0] {
            let y = Complex::disk(&md(&[4]), n);
            for f in chain_maps(&x, &y).generators() {
                let s = null_homotopy_into_x_injective(&f).unwrap();
                assert!(s.witnesses(&f));
            }
        }
    }

    #[test]
    fn sphere_into_sphere_is_not_null() {
        let x = Complex::sphere(&md(&[4]), 0);
        let f = ChainMap::identity(&x);
        assert!(matches!(null_homotopy_into_x_injective(&f), Err(Error::Hypothesis(_))));
        assert!(matches!(null_homotopy_from_x_projective(&f), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn every_map_from_free_disk_to_sphere_is_null() {
        let y = Complex::sphere(&md(&[2]), 0);
        for n in [-1, 0] {
            let x = Complex::disk(&md(&[4]), n);
            for f in chain_maps(&x, &y).generators() {
                let s = null_homotopy_from_x_projective(&f).unwrap();
                assert!(s.witnesses(&f));
            }
        }
    }
}
