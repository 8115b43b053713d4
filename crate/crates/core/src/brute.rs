//! Enumeration oracles. Everything here works element by element and shares
//! no linear algebra with the rest of the crate beyond applying matrices.

use std::collections::HashSet;

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::zm::{FinModule, Morphism, Ring};

fn add(m: &FinModule, x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).zip(m.factors()).map(|((a, b), d)| (a + b) % d).collect()
}

fn scale(m: &FinModule, k: u64, x: &[u64]) -> Vec<u64> {
    x.iter().zip(m.factors()).map(|(a, d)| (a * (k % d)) % d).collect()
}

fn is_zero(x: &[u64]) -> bool {
    x.iter().all(|&v| v == 0)
}

fn guard(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// Every module over `ring` with at most `max_factors` invariant factors, zero first.
pub fn modules_up_to(ring: Ring, max_factors: usize) -> Vec<FinModule> {
    let divs: Vec<u64> = crate::zm::arith::divisors(ring.modulus()).into_iter().filter(|&d| d > 1).collect();
    let mut out = vec![FinModule::zero(ring)];
    let mut frontier: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for chain in &frontier {
            for &d in &divs {
                if chain.last().is_none_or(|&l| d % l == 0) {
                    let mut c = chain.clone();
                    c.push(d);
                    out.push(FinModule::new(ring, c.clone()).expect("divisor chain"));
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    out
}

/// `#{x : d x = 0}` for every divisor `d` of the modulus, by enumeration.
/// Two finite abelian groups are isomorphic iff these counts agree.
pub fn torsion_profile(m: &FinModule, cap: u128) -> Result<Vec<(u64, u128)>> {
    let els: Vec<Vec<u64>> = m.elements(cap)?.collect();
    Ok(crate::zm::arith::divisors(m.modulus())
        .into_iter()
        .map(|d| (d, els.iter().filter(|x| is_zero(&scale(m, d, x))).count() as u128))
        .collect())
}

/// All homomorphisms `M -> N`, as choices of generator images `y_j` with `d_j y_j = 0`.
pub fn homs(source: &FinModule, target: &FinModule, cap: u128) -> Result<Vec<Morphism>> {
    let els: Vec<Vec<u64>> = target.elements(cap)?.collect();
    let cands: Vec<Vec<&Vec<u64>>> = source
        .factors()
        .iter()
        .map(|&d| els.iter().filter(|y| is_zero(&scale(target, d, y))).collect())
        .collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    guard(total, cap)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; cands.len()];
    loop {
        let cols: Vec<Vec<u64>> = idx.iter().zip(&cands).map(|(&i, c)| c[i].clone()).collect();
        out.push(Morphism::from_columns(source, target, &cols));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `|Hom(M, N)|` by testing every set map `M -> N` for additivity.
pub fn hom_count_by_set_maps(source: &FinModule, target: &FinModule, cap: u128) -> Result<u128> {
    let xs: Vec<Vec<u64>> = source.elements(cap)?.collect();
    let ys: Vec<Vec<u64>> = target.elements(cap)?.collect();
    let total = (ys.len() as u128).checked_pow(xs.len() as u32).unwrap_or(u128::MAX);
    guard(total, cap.saturating_mul(64))?;
    let index = |x: &[u64]| xs.iter().position(|e| e == x).expect("element");
    let mut assign = vec![0usize; xs.len()];
    let mut count = 0u128;
    loop {
        let additive = (0..xs.len()).all(|a| {
            (0..xs.len()).all(|b| {
                let s = index(&add(source, &xs[a], &xs[b]));
                ys[assign[s]] == add(target, &ys[assign[a]], &ys[assign[b]])
            })
        });
        if additive {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == assign.len() {
                return Ok(count);
            }
            assign[k] += 1;
            if assign[k] < ys.len() {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

/// `(|ker f|, |im f|)` by applying `f` to every element.
pub fn kernel_image_orders(f: &Morphism, cap: u128) -> Result<(u128, u128)> {
    let mut ker = 0u128;
    let mut im = HashSet::new();
    for x in f.source().elements(cap)? {
        let y = f.apply(&x);
        if is_zero(&y) {
            ker += 1;
        }
        im.insert(y);
    }
    Ok((ker, im.len() as u128))
}

/// Torsion profile of `target / im f`: `|Q[d]| = #{y : d y ∈ im f} / |im f|`.
pub fn cokernel_profile(f: &Morphism, cap: u128) -> Result<Vec<(u64, u128)>> {
    let im: HashSet<Vec<u64>> = f.source().elements(cap)?.map(|x| f.apply(&x)).collect();
    let n = f.target();
    let els: Vec<Vec<u64>> = n.elements(cap)?.collect();
    Ok(crate::zm::arith::divisors(n.modulus())
        .into_iter()
        .map(|d| {
            let c = els.iter().filter(|y| im.contains(&scale(n, d, y))).count() as u128;
            (d, c / im.len() as u128)
        })
        .collect())
}

/// `|Ext¹(A, B)|` as `∏_j |B[m / a_j]| / |a_j B|`, counted element by element
/// from the periodic resolution `... -> R --a--> R --m/a--> R --a--> R -> Z/a`.
pub fn ext_order_by_enumeration(a: &FinModule, b: &FinModule, cap: u128) -> Result<u128> {
    let m = a.modulus();
    let els: Vec<Vec<u64>> = b.elements(cap)?.collect();
    let mut total = 1u128;
    for &aj in a.factors() {
        let cycles = els.iter().filter(|y| is_zero(&scale(b, m / aj, y))).count() as u128;
        let bounds: HashSet<Vec<u64>> = els.iter().map(|y| scale(b, aj, y)).collect();
        total *= cycles / bounds.len() as u128;
    }
    Ok(total)
}

fn injective_by_elements(f: &Morphism, cap: u128) -> Result<bool> {
    Ok(kernel_image_orders(f, cap)?.0 == 1)
}

fn surjective_by_elements(f: &Morphism, cap: u128) -> Result<bool> {
    Ok(kernel_image_orders(f, cap)?.1 == f.target().order())
}

/// Number of equivalence classes of extensions `0 -> B -> E -> A -> 0`:
/// `Σ_E #{exact (i, p)} · |Hom(A, B)| / |Aut E|` over middle terms `E` of
/// order `|A| |B|` (orbit counting; stabilizers are `1 + i Hom(A, B) p`).
pub fn yoneda_ext_count(a: &FinModule, b: &FinModule, cap: u128) -> Result<u128> {
    let ring = a.ring();
    let order = a.order() * b.order();
    guard(order, cap)?;
    let hom_ab = homs(a, b, cap)?.len() as u128;
    let mut total_num = 0u128;
    let mut denom_lcm = 1u128;
    let mut terms = Vec::new();
    for e in modules_up_to(ring, a.rank() + b.rank()) {
        if e.order() != order {
            continue;
        }
        let ins: Vec<Morphism> = homs(b, &e, cap)?
            .into_iter()
            .filter(|i| injective_by_elements(i, cap).unwrap_or(false))
            .collect();
        let outs: Vec<Morphism> = homs(&e, a, cap)?
            .into_iter()
            .filter(|p| surjective_by_elements(p, cap).unwrap_or(false))
            .collect();
        let kers: Vec<HashSet<Vec<u64>>> = outs
            .iter()
            .map(|p| Ok(e.elements(cap)?.filter(|x| is_zero(&p.apply(x))).collect()))
            .collect::<Result<_>>()?;
        let mut pairs = 0u128;
        for i in &ins {
            let im: HashSet<Vec<u64>> = b.elements(cap)?.map(|x| i.apply(&x)).collect();
            pairs += kers.iter().filter(|k| **k == im).count() as u128;
        }
        if pairs == 0 {
            continue;
        }
        let aut = homs(&e, &e, cap)?
            .into_iter()
            .filter(|g| injective_by_elements(g, cap).unwrap_or(false))
            .count() as u128;
        terms.push((pairs * hom_ab, aut));
        denom_lcm = lcm128(denom_lcm, aut);
    }
    for (num, aut) in terms {
        total_num += num * (denom_lcm / aut);
    }
    Ok(total_num / denom_lcm)
}

/// `|Ext¹(A, B)|` from [`yoneda_ext_count`] on each pair of cyclic summands,
/// multiplied together.
pub fn yoneda_ext_count_by_summands(a: &FinModule, b: &FinModule, cap: u128) -> Result<u128> {
    let ring = a.ring();
    let mut total = 1u128;
    for &x in a.factors() {
        for &y in b.factors() {
            total *= yoneda_ext_count(&FinModule::cyclic(ring, x)?, &FinModule::cyclic(ring, y)?, cap)?;
        }
    }
    Ok(total)
}

fn lcm128(a: u128, b: u128) -> u128 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Whether some homomorphism `r` has `r ∘ i = id`, by trying them all.
pub fn retraction_exists(i: &Morphism, cap: u128) -> Result<bool> {
    let id = Morphism::identity(i.source());
    Ok(homs(i.target(), i.source(), cap)?.iter().any(|r| r.after(i) == id))
}

/// Every chain map `X -> Y`, by filtering all degreewise families.
pub fn all_chain_maps(x: &Complex, y: &Complex, cap: u128) -> Result<Vec<ChainMap>> {
    let degrees: Vec<i64> = (x.lo()..=x.hi()).collect();
    let per: Vec<Vec<Morphism>> = degrees
        .iter()
        .map(|&n| homs(&x.module(n), &y.module(n), cap))
        .collect::<Result<_>>()?;
    let total: u128 = per.iter().map(|v| v.len() as u128).product();
    guard(total, cap)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; per.len()];
    loop {
        let comps = degrees.iter().zip(&idx).zip(&per).map(|((&n, &i), v)| (n, v[i].clone()));
        if let Ok(f) = ChainMap::new(x, y, comps) {
            out.push(f);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Whether the chain map `i` has a retraction, by exhaustive search.
pub fn chain_retraction_exists(i: &ChainMap, cap: u128) -> Result<bool> {
    let id = ChainMap::identity(i.source());
    Ok(all_chain_maps(i.target(), i.source(), cap)?.iter().any(|r| r.after(i) == id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zm::{hom_group, DEFAULT_ENUMERATION_CAP as CAP};

    fn z(m: u64) -> Ring {
        Ring::new(m).unwrap()
    }

    fn md(m: u64, f: &[u64]) -> FinModule {
        FinModule::new(z(m), f.to_vec()).unwrap()
    }

    #[test]
    fn module_lists() {
        let all = modules_up_to(z(4), 2);
        assert_eq!(all.len(), 1 + 2 + 3);
        assert!(modules_up_to(z(6), 1).contains(&md(6, &[3])));
    }

    #[test]
    fn set_map_count_matches_generator_count() {
        assert_eq!(hom_count_by_set_maps(&md(4, &[2]), &md(4, &[4]), CAP).unwrap(), 2);
        assert_eq!(hom_count_by_set_maps(&md(4, &[2, 2]), &md(4, &[2]), CAP).unwrap(), 4);
        assert_eq!(homs(&md(4, &[2, 4]), &md(4, &[4]), CAP).unwrap().len(), 8);
        assert_eq!(hom_group(&md(4, &[2, 4]), &md(4, &[4])).0.order(), 8);
    }

    #[test]
    fn ext_oracles_agree_on_small_cases() {
        let a = md(4, &[2]);
        assert_eq!(ext_order_by_enumeration(&a, &a, CAP).unwrap(), 2);
        assert_eq!(yoneda_ext_count(&a, &a, CAP).unwrap(), 2);
        let f = FinModule::free(z(4), 1);
        assert_eq!(yoneda_ext_count(&a, &f, CAP).unwrap(), 1);
        assert_eq!(yoneda_ext_count(&f, &a, CAP).unwrap(), 1);
        let aa = md(4, &[2, 2]);
        assert_eq!(yoneda_ext_count(&aa, &a, CAP).unwrap(), 4);
        assert_eq!(yoneda_ext_count_by_summands(&aa, &a, CAP).unwrap(), 4);
    }

    #[test]
    fn torsion_profiles_separate_groups() {
        let p1 = torsion_profile(&md(8, &[2, 4]), CAP).unwrap();
        let p2 = torsion_profile(&md(8, &[8]), CAP).unwrap();
        assert_ne!(p1, p2);
        assert_eq!(p1.last().unwrap().1, 8);
    }
}
