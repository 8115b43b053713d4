//! Finite towers of bounded complexes standing in for one-sided unbounded ones.

use super::build::{PrecoverResult, PreenvelopeResult};
use crate::complexes::{factor_left, factor_right, ChainMap, Complex};
use crate::error::Result;
use crate::zm::Morphism;

/// A compatibility map between consecutive stages.
#[derive(Clone, Debug)]
pub enum Link {
    /// From stage `n` to stage `n + 1`.
    Forward(ChainMap),
    /// From stage `n + 1` to stage `n`.
    Backward(ChainMap),
    Unrelated,
}

/// A stage result with an underlying complex and maps to its successor.
pub trait TowerResult {
    fn output(&self) -> &Complex;

    /// Whether input links should run from stage `n + 1` back to stage `n`.
    fn backward() -> bool {
        false
    }

    /// Compatibility map given the link between the inputs.
    fn compatibility(&self, next: &Self, _input: &Link) -> Link {
        link(self.output(), next.output(), Self::backward())
    }
}

impl TowerResult for Complex {
    fn output(&self) -> &Complex {
        self
    }
}

impl TowerResult for PreenvelopeResult {
    fn output(&self) -> &Complex {
        &self.env
    }

    /// `u: E(n) -> E(n+1)` with `u ι_n = ι_{n+1} j` for an input inclusion `j`.
    fn compatibility(&self, next: &Self, input: &Link) -> Link {
        match input {
            Link::Forward(j) => factor_right(&self.embedding, &next.embedding.after(j)).map_or(Link::Unrelated, Link::Forward),
            _ => Link::Unrelated,
        }
    }
}

impl TowerResult for PrecoverResult {
    fn output(&self) -> &Complex {
        &self.cover
    }

    fn backward() -> bool {
        true
    }

    /// `u: P(n+1) -> P(n)` with `π_n u = q π_{n+1}` for an input projection `q`.
    fn compatibility(&self, next: &Self, input: &Link) -> Link {
        match input {
            Link::Backward(q) => factor_left(&self.projection, &q.after(&next.projection)).map_or(Link::Unrelated, Link::Backward),
            _ => Link::Unrelated,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TowerStage<R> {
    pub input: Complex,
    pub result: R,
    /// Link from this stage's input to the next one's.
    pub input_link: Option<Link>,
    /// Link from this stage's output complex to the next one's.
    pub output_link: Option<Link>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// Inputs and outputs are constant from stage `from` to the end, across
    /// at least `window` consecutive transitions.
    Stable { from: usize },
    /// No constant run of the required length at the end of the tower.
    Inconclusive { window: usize, stages: usize },
}

#[derive(Clone, Debug)]
pub struct TowerReport<R> {
    pub stages: Vec<TowerStage<R>>,
    pub stabilization: Stabilization,
}

impl<R> TowerReport<R> {
    /// The stabilized result, if any.
    pub fn limit(&self) -> Option<&R> {
        match self.stabilization {
            Stabilization::Stable { .. } => self.stages.last().map(|s| &s.result),
            Stabilization::Inconclusive { .. } => None,
        }
    }
}

/// Identity components on every degree where both modules agree, tried in
/// the preferred direction first.
fn link(a: &Complex, b: &Complex, backward: bool) -> Link {
    let (lo, hi) = (a.lo().min(b.lo()), a.hi().max(b.hi()));
    let comps: Vec<(i64, Morphism)> = (lo..=hi)
        .filter(|&n| !a.module(n).is_zero() && a.module(n) == b.module(n))
        .map(|n| (n, Morphism::identity(&a.module(n))))
        .collect();
    let forward = || {
        ChainMap::new(a, b, comps.clone())
            .ok()
            .filter(ChainMap::is_injective)
            .map(Link::Forward)
    };
    let back = || {
        ChainMap::new(b, a, comps.clone())
            .ok()
            .filter(ChainMap::is_surjective)
            .map(Link::Backward)
    };
    let found = if backward { back().or_else(forward) } else { forward().or_else(back) };
    found.unwrap_or(Link::Unrelated)
}

/// Brutal truncations `Y(n)` of `y` to `[lo, lo + n]` (`upward`) or
/// `[hi - n, hi]`, for `n = 0..stages`.
pub fn truncations(y: &Complex, stages: usize, upward: bool) -> Vec<Complex> {
    let (lo, hi) = (y.lo(), y.hi());
    (0..stages as i64)
        .map(|n| {
            let (a, b) = if upward { (lo, (lo + n).min(hi)) } else { ((hi - n).max(lo), hi) };
            let modules = (a..=b).map(|k| y.module(k)).collect();
            let diffs = (a..b).map(|k| y.diff(k)).collect();
            Complex::new(y.ring(), a, modules, diffs).expect("truncation of a complex")
        })
        .collect()
}

/// Runs `build` on every stage of the tower and reports whether the last
/// `window` transitions leave both input and output unchanged.
pub fn tower_extend<R, F>(tower: &[Complex], window: usize, mut build: F) -> Result<TowerReport<R>>
where
    R: TowerResult,
    F: FnMut(&Complex) -> Result<R>,
{
    let mut stages: Vec<TowerStage<R>> = Vec::with_capacity(tower.len());
    for y in tower {
        let result = build(y)?;
        if let Some(prev) = stages.last_mut() {
            let l = link(&prev.input, y, R::backward());
            prev.output_link = Some(prev.result.compatibility(&result, &l));
            prev.input_link = Some(l);
        }
        stages.push(TowerStage {
            input: y.clone(),
            result,
            input_link: None,
            output_link: None,
        });
    }
    let mut from = stages.len().saturating_sub(1);
    while from > 0
        && stages[from - 1].input == stages[from].input
        && stages[from - 1].result.output() == stages[from].result.output()
    {
        from -= 1;
    }
    let constant_transitions = stages.len().saturating_sub(1) - from;
    let stabilization = if !stages.is_empty() && constant_transitions >= window.max(1) {
        Stabilization::Stable { from }
    } else {
        Stabilization::Inconclusive {
            window,
            stages: stages.len(),
        }
    };
    Ok(TowerReport { stages, stabilization })
}

#[cfg(test)]
mod tests {
    use super::super::{build_preenvelope, FreeHull};
    use super::*;
    use crate::classes::{Bounds, ModuleClass};
    use crate::zm::{FinModule, Ring};

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    #[test]
    fn truncation_tower_of_bounded_complex_stabilizes() {
        let y = crate::complexes::tests::short_exact();
        let x = ModuleClass::all(z4(), Bounds::default());
        let tower = truncations(&y, 6, false);
        let rep = tower_extend(&tower, 2, |c| build_preenvelope(c, &x, &FreeHull)).unwrap();
        assert_eq!(rep.stabilization, Stabilization::Stable { from: 2 });
        let direct = build_preenvelope(&y, &x, &FreeHull).unwrap();
        assert_eq!(rep.limit().unwrap().env, direct.env);
        assert!(matches!(rep.stages[0].input_link, Some(Link::Forward(_))));
        assert!(matches!(rep.stages[0].output_link, Some(Link::Forward(_))));
    }

    #[test]
    fn growing_tower_is_inconclusive() {
        let two = FinModule::new(z4(), vec![2]).unwrap();
        let tower: Vec<Complex> = (0..4).map(|n| Complex::sphere(&two, -n)).collect();
        let sums: Vec<Complex> = (1..=tower.len())
            .map(|k| crate::complexes::direct_sum(z4(), &tower[..k]))
            .collect();
        let rep = tower_extend(&sums, 2, |c| Ok(c.clone())).unwrap();
        assert_eq!(
            rep.stabilization,
            Stabilization::Inconclusive { window: 2, stages: 4 }
        );
        assert!(rep.limit().is_none());
    }
}
