//! Module-level preenvelopes and precovers feeding the complex builders.

use crate::brute::{homs, modules_up_to};
use crate::classes::{is_x_injective_module, is_x_projective_module, ModuleClass};
use crate::error::{Error, Result};
use crate::ext::{free_cover, free_embedding};
use crate::zm::{DirectSum, FinModule, Morphism};

/// Supplies a monic map `M -> E` with `E` injective relative to the class.
pub trait ModulePreenvelopes {
    fn name(&self) -> String;
    fn preenvelope(&self, m: &FinModule) -> Result<Morphism>;
}

/// Supplies an epic map `P -> M` with `P` projective relative to the class.
pub trait ModulePrecovers {
    fn name(&self) -> String;
    fn precover(&self, m: &FinModule) -> Result<Morphism>;
}

/// Embedding into a free module of the same rank (`1 -> m/e_i`).
///
/// Free modules over `Z/m` are injective, so this works for every class. It
/// is the injective hull when `m` is a prime power.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeHull;

impl ModulePreenvelopes for FreeHull {
    fn name(&self) -> String {
        "free-embedding".into()
    }

    fn preenvelope(&self, m: &FinModule) -> Result<Morphism> {
        Ok(free_embedding(m))
    }
}

/// Surjection from a free module of the same rank.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeCover;

impl ModulePrecovers for FreeCover {
    fn name(&self) -> String {
        "free-cover".into()
    }

    fn precover(&self, m: &FinModule) -> Result<Morphism> {
        Ok(free_cover(m))
    }
}

/// [`FreeHull`] followed by the inclusion into `E ⊕ R^extra`.
#[derive(Clone, Copy, Debug)]
pub struct PaddedHull {
    pub extra: usize,
}

impl ModulePreenvelopes for PaddedHull {
    fn name(&self) -> String {
        format!("free-embedding+R^{}", self.extra)
    }

    fn preenvelope(&self, m: &FinModule) -> Result<Morphism> {
        let f = free_embedding(m);
        let pad = FinModule::free(m.ring(), self.extra);
        let sum = DirectSum::new(m.ring(), &[f.target().clone(), pad]);
        Ok(sum.injections[0].after(&f))
    }
}

/// [`FreeCover`] precomposed with the projection from `P ⊕ R^extra`.
#[derive(Clone, Copy, Debug)]
pub struct PaddedCover {
    pub extra: usize,
}

impl ModulePrecovers for PaddedCover {
    fn name(&self) -> String {
        format!("free-cover+R^{}", self.extra)
    }

    fn precover(&self, m: &FinModule) -> Result<Morphism> {
        let f = free_cover(m);
        let pad = FinModule::free(m.ring(), self.extra);
        let sum = DirectSum::new(m.ring(), &[f.source().clone(), pad]);
        Ok(f.after(&sum.projections[0]))
    }
}

/// Searches candidate modules with at most `max_factors` invariant factors,
/// smallest first, for a relatively injective (projective) member `E` of the
/// class and a monic (epic) map whose cokernel (kernel) lies in the class.
#[derive(Clone, Debug)]
pub struct BoundedSearch {
    pub class: ModuleClass,
    pub max_factors: usize,
}

impl BoundedSearch {
    fn candidates(&self) -> Vec<FinModule> {
        let mut c = modules_up_to(self.class.ring(), self.max_factors);
        c.sort_by_key(|m| (m.order(), m.factors().to_vec()));
        c.into_iter().filter(|m| self.class.contains(m)).collect()
    }

    fn failure(&self, m: &FinModule, what: &str) -> Error {
        Error::Hypothesis(format!(
            "no {what} of {m} with at most {} factors in {}",
            self.max_factors, self.class
        ))
    }
}

impl ModulePreenvelopes for BoundedSearch {
    fn name(&self) -> String {
        format!("search(k<={})", self.max_factors)
    }

    fn preenvelope(&self, m: &FinModule) -> Result<Morphism> {
        for e in self.candidates() {
            if e.order() < m.order() || !is_x_injective_module(&e, &self.class).holds {
                continue;
            }
            for f in homs(m, &e, self.class.cap())? {
                if f.is_injective() && self.class.contains(&f.cokernel().module) {
                    return Ok(f);
                }
            }
        }
        Err(self.failure(m, "monic relatively injective preenvelope"))
    }
}

impl ModulePrecovers for BoundedSearch {
    fn name(&self) -> String {
        format!("search(k<={})", self.max_factors)
    }

    fn precover(&self, m: &FinModule) -> Result<Morphism> {
        for p in self.candidates() {
            if p.order() < m.order() || !is_x_projective_module(&p, &self.class).holds {
                continue;
            }
            for f in homs(&p, m, self.class.cap())? {
                if f.is_surjective() && self.class.contains(&f.kernel().module) {
                    return Ok(f);
                }
            }
        }
        Err(self.failure(m, "epic relatively projective precover"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::Bounds;
    use crate::zm::Ring;

    #[test]
    fn search_finds_hull_of_two_over_z4() {
        let r = Ring::new(4).unwrap();
        let b = Bounds { length: 1, factors: 1 };
        let s = BoundedSearch {
            class: ModuleClass::all(r, b),
            max_factors: 1,
        };
        let two = FinModule::new(r, vec![2]).unwrap();
        let f = s.preenvelope(&two).unwrap();
        assert_eq!(f.target(), &FinModule::free(r, 1));
        let p = s.precover(&two).unwrap();
        assert_eq!(p.source(), &FinModule::free(r, 1));
    }

    #[test]
    fn search_over_z6_finds_smaller_hull_than_free() {
        let r = Ring::new(6).unwrap();
        let s = BoundedSearch {
            class: ModuleClass::all(r, Bounds { length: 1, factors: 1 }),
            max_factors: 1,
        };
        let two = FinModule::new(r, vec![2]).unwrap();
        assert_eq!(s.preenvelope(&two).unwrap().target(), &two);
        assert_eq!(FreeHull.preenvelope(&two).unwrap().target().order(), 6);
    }

    #[test]
    fn padding_keeps_maps_monic_and_epic() {
        let r = Ring::new(4).unwrap();
        let m = FinModule::new(r, vec![2, 4]).unwrap();
        let f = PaddedHull { extra: 1 }.preenvelope(&m).unwrap();
        assert!(f.is_injective());
        assert_eq!(f.target().rank(), 3);
        let p = PaddedCover { extra: 2 }.precover(&m).unwrap();
        assert!(p.is_surjective());
    }
}
