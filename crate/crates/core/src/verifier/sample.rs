//! Seeded random objects.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::classes::{is_x_injective_module, is_x_projective_module, ModuleClass};
use crate::complexes::{chain_maps, direct_sum, ChainMap, Complex};
use crate::zm::arith::divisors;
use crate::zm::{DirectSum, FinModule, HomSpace, LinSys, Morphism, Ring, Term};

/// A module with at most `max_factors` cyclic summands of random order.
pub fn module<R: Rng>(rng: &mut R, ring: Ring, max_factors: usize) -> FinModule {
    let ds: Vec<u64> = divisors(ring.modulus()).into_iter().filter(|&d| d > 1).collect();
    let rank = rng.gen_range(0..=max_factors);
    let cyclics: Vec<FinModule> = (0..rank)
        .map(|_| FinModule::cyclic(ring, *ds.choose(rng).expect("m > 1")).expect("divisor"))
        .collect();
    DirectSum::new(ring, &cyclics).module
}

/// A nonzero member of `x` (or zero if it has none within `max_factors`).
pub fn member<R: Rng>(rng: &mut R, x: &ModuleClass, max_factors: usize) -> FinModule {
    let list = x.listed(max_factors);
    list.choose(rng).cloned().unwrap_or_else(|| FinModule::zero(x.ring()))
}

/// A member of `x` or zero, each with equal weight.
pub fn member_or_zero<R: Rng>(rng: &mut R, x: &ModuleClass, max_factors: usize) -> FinModule {
    let list = x.listed(max_factors);
    let i = rng.gen_range(0..=list.len());
    list.get(i).cloned().unwrap_or_else(|| FinModule::zero(x.ring()))
}

pub fn morphism<R: Rng>(rng: &mut R, source: &FinModule, target: &FinModule) -> Morphism {
    let h = HomSpace::new(source, target);
    let coords: Vec<u64> = h.module().factors().iter().map(|&d| rng.gen_range(0..d)).collect();
    h.morphism(&coords)
}

/// A random complex on the given modules (starting in degree `start`) with
/// each differential drawn uniformly from those composing to zero with the last.
pub fn complex_on<R: Rng>(rng: &mut R, ring: Ring, start: i64, modules: Vec<FinModule>) -> Complex {
    let mut diffs: Vec<Morphism> = Vec::new();
    for i in 0..modules.len().saturating_sub(1) {
        let (a, b) = (&modules[i], &modules[i + 1]);
        let d = match diffs.last() {
            None => morphism(rng, a, b),
            Some(prev) => {
                let mut sys = LinSys::new(ring);
                let v = sys.var(a, b);
                sys.equation(prev.source(), b, &[Term::var(v).right(prev)], None);
                sys.finish().random(rng).get(v)
            }
        };
        diffs.push(d);
    }
    Complex::new(ring, start, modules, diffs).expect("d ∘ d = 0 by construction")
}

/// A random complex of length at most `max_len` with components of at most
/// `max_factors` summands, starting in a degree from `starts`.
pub fn complex<R: Rng>(rng: &mut R, ring: Ring, max_len: usize, max_factors: usize, starts: (i64, i64)) -> Complex {
    let len = rng.gen_range(1..=max_len.max(1));
    let modules = (0..len).map(|_| module(rng, ring, max_factors)).collect();
    let start = rng.gen_range(starts.0..=starts.1);
    complex_on(rng, ring, start, modules)
}

/// A random complex with components in `x` (or zero).
pub fn xstar_complex<R: Rng>(rng: &mut R, x: &ModuleClass, max_len: usize, max_factors: usize, starts: (i64, i64)) -> Complex {
    let len = rng.gen_range(1..=max_len.max(1));
    let modules = (0..len).map(|_| member_or_zero(rng, x, max_factors)).collect();
    let start = rng.gen_range(starts.0..=starts.1);
    complex_on(rng, x.ring(), start, modules)
}

/// A random module passing the relative injectivity test, by rejection;
/// falls back to a free module.
pub fn x_injective_module<R: Rng>(rng: &mut R, x: &ModuleClass, max_factors: usize) -> FinModule {
    for _ in 0..16 {
        let m = module(rng, x.ring(), max_factors);
        if !m.is_zero() && is_x_injective_module(&m, x).holds {
            return m;
        }
    }
    FinModule::free(x.ring(), rng.gen_range(1..=max_factors.max(1)))
}

pub fn x_projective_module<R: Rng>(rng: &mut R, x: &ModuleClass, max_factors: usize) -> FinModule {
    for _ in 0..16 {
        let m = module(rng, x.ring(), max_factors);
        if !m.is_zero() && is_x_projective_module(&m, x).holds {
            return m;
        }
    }
    FinModule::free(x.ring(), rng.gen_range(1..=max_factors.max(1)))
}

/// A direct sum of `1..=parts` disks on modules from `pick`, in degrees from `starts`.
pub fn disk_sum<R: Rng>(
    rng: &mut R,
    ring: Ring,
    parts: usize,
    starts: (i64, i64),
    mut pick: impl FnMut(&mut R) -> FinModule,
) -> Complex {
    let n = rng.gen_range(1..=parts.max(1));
    let disks: Vec<Complex> = (0..n)
        .map(|_| {
            let m = pick(rng);
            Complex::disk(&m, rng.gen_range(starts.0..=starts.1))
        })
        .collect();
    direct_sum(ring, &disks)
}

pub fn chain_map<R: Rng>(rng: &mut R, x: &Complex, y: &Complex) -> ChainMap {
    chain_maps(x, y).random(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_are_seeded() {
        let r = Ring::new(4).unwrap();
        let a: Vec<Complex> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..5).map(|_| complex(&mut rng, r, 4, 3, (-1, 1))).collect()
        };
        let b: Vec<Complex> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..5).map(|_| complex(&mut rng, r, 4, 3, (-1, 1))).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.validate().is_ok()));
    }

    #[test]
    fn random_chain_maps_are_chain_maps() {
        let r = Ring::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = complex(&mut rng, r, 3, 2, (0, 1));
            let y = complex(&mut rng, r, 3, 2, (0, 1));
            let f = chain_map(&mut rng, &x, &y);
            assert!(ChainMap::new(&x, &y, f.components().clone()).is_ok());
        }
    }
}
