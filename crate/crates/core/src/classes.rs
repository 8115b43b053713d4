//! Finite module classes and the orthogonality predicates built on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::brute::{homs, modules_up_to};
use crate::complexes::{hom_complex, Complex};
use crate::error::{Error, Result};
use crate::ext::{ext1_complex, ext1_module, ShortExact};
use crate::zm::arith::prime_powers;
use crate::zm::{FinModule, Morphism, Ring, DEFAULT_ENUMERATION_CAP};

/// Generation bounds: complexes span at most `length + 1` consecutive
/// degrees and every component has at most `factors` invariant factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub length: usize,
    pub factors: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            length: 2,
            factors: 2,
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} k={}", self.length, self.factors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClosureFlag {
    Extensions,
    Summands,
    KernelsOfEpics,
    Quotients,
    DirectSums,
}

impl ClosureFlag {
    pub const ALL: [ClosureFlag; 5] = [
        ClosureFlag::Extensions,
        ClosureFlag::Summands,
        ClosureFlag::KernelsOfEpics,
        ClosureFlag::Quotients,
        ClosureFlag::DirectSums,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosureFlag::Extensions => "extensions",
            ClosureFlag::Summands => "summands",
            ClosureFlag::KernelsOfEpics => "kernels_of_epics",
            ClosureFlag::Quotients => "quotients",
            ClosureFlag::DirectSums => "direct_sums",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Members {
    /// Every module (within the bounds of whatever is being generated).
    All,
    Finite(Vec<FinModule>),
}

/// Outcome of checking one closure property inside the universe of modules
/// with at most `k` invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCheck {
    pub flag: ClosureFlag,
    pub closed: bool,
    pub checked: usize,
    /// Results with more than `k` factors, which lie outside the universe.
    pub outside_universe: usize,
    pub counterexample: Option<String>,
}

/// A finite description of a class of modules. The zero module always belongs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleClass {
    ring: Ring,
    members: Members,
    closed: BTreeSet<ClosureFlag>,
    bounds: Bounds,
    cap: u128,
}

impl ModuleClass {
    /// Verifies every declared closure flag within the universe.
    pub fn new(ring: Ring, members: Members, closed: &[ClosureFlag], bounds: Bounds) -> Result<Self> {
        let members = match members {
            Members::All => Members::All,
            Members::Finite(list) => {
                let mut seen = BTreeSet::new();
                for m in &list {
                    if m.ring() != ring {
                        return Err(Error::RingMismatch(ring.modulus(), m.modulus()));
                    }
                    if !m.is_zero() {
                        seen.insert(m.clone());
                    }
                }
                Members::Finite(seen.into_iter().collect())
            }
        };
        let class = Self {
            ring,
            members,
            closed: closed.iter().copied().collect(),
            bounds,
            cap: DEFAULT_ENUMERATION_CAP,
        };
        for &flag in closed {
            let report = class.check_closure(flag);
            if !report.closed {
                return Err(Error::NotClosed(format!(
                    "not closed under {} within declared universe: {}",
                    flag.name(),
                    report.counterexample.unwrap_or_default()
                )));
            }
        }
        Ok(class)
    }

    pub fn all(ring: Ring, bounds: Bounds) -> Self {
        Self {
            ring,
            members: Members::All,
            closed: ClosureFlag::ALL.into_iter().collect(),
            bounds,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// A class with the given members and no declared closure.
    pub fn finite(ring: Ring, members: Vec<FinModule>, bounds: Bounds) -> Self {
        Self::new(ring, Members::Finite(members), &[], bounds).expect("no closure declared")
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn declared_closure(&self) -> impl Iterator<Item = ClosureFlag> + '_ {
        self.closed.iter().copied()
    }

    pub fn contains(&self, m: &FinModule) -> bool {
        match &self.members {
            Members::All => true,
            Members::Finite(list) => m.is_zero() || list.contains(m),
        }
    }

    /// Nonzero members with at most `k` invariant factors, in a fixed order.
    pub fn listed(&self, k: usize) -> Vec<FinModule> {
        match &self.members {
            Members::All => modules_up_to(self.ring, k).into_iter().filter(|m| !m.is_zero()).collect(),
            Members::Finite(list) => list.iter().filter(|m| m.rank() <= k).cloned().collect(),
        }
    }

    /// Nonzero members within the class bounds.
    pub fn universe(&self) -> Vec<FinModule> {
        self.listed(self.bounds.factors)
    }

    pub fn check_closure(&self, flag: ClosureFlag) -> ClosureCheck {
        let k = self.bounds.factors;
        let mut report = ClosureCheck {
            flag,
            closed: true,
            checked: 0,
            outside_universe: 0,
            counterexample: None,
        };
        if matches!(self.members, Members::All) {
            return report;
        }
        let mems = self.universe();
        let mut judge = |m: FinModule, how: &dyn Fn() -> String| {
            if m.rank() > k {
                report.outside_universe += 1;
                return;
            }
            report.checked += 1;
            if !self.contains(&m) && report.closed {
                report.closed = false;
                report.counterexample = Some(format!("{} ({})", m, how()));
            }
        };
        match flag {
            ClosureFlag::Extensions => {
                for a in &mems {
                    for c in &mems {
                        let e = ext1_module(c, a);
                        let Ok(classes) = e.group.elements(self.cap) else {
                            continue;
                        };
                        for coords in classes {
                            let mid = e.extension(&coords).middle().module(0);
                            judge(mid, &|| format!("extension of {c} by {a}"));
                        }
                    }
                }
            }
            ClosureFlag::Summands => {
                for m in &mems {
                    for s in summands(m) {
                        judge(s, &|| format!("summand of {m}"));
                    }
                }
            }
            ClosureFlag::DirectSums => {
                for a in &mems {
                    for b in &mems {
                        let s = crate::zm::DirectSum::new(self.ring, &[a.clone(), b.clone()]).module;
                        judge(s, &|| format!("{a} + {b}"));
                    }
                }
            }
            ClosureFlag::KernelsOfEpics => {
                for a in &mems {
                    for b in &mems {
                        let Ok(maps) = homs(a, b, self.cap) else { continue };
                        for f in maps.iter().filter(|f| f.is_surjective()) {
                            judge(f.kernel().module, &|| format!("kernel of an epimorphism {a} -> {b}"));
                        }
                    }
                }
            }
            ClosureFlag::Quotients => {
                for m in &mems {
                    let free = FinModule::free(self.ring, 1);
                    if let Ok(els) = m.elements(self.cap) {
                        for x in els {
                            let g = Morphism::from_columns(&free, m, &[x]);
                            judge(g.cokernel().module, &|| format!("cyclic quotient of {m}"));
                        }
                    }
                    for n in &mems {
                        let Ok(maps) = homs(n, m, self.cap) else { continue };
                        for f in maps {
                            judge(f.cokernel().module, &|| format!("quotient of {m} by an image of {n}"));
                        }
                    }
                }
            }
        }
        report
    }

    /// Every closure property, declared or not.
    pub fn closure_report(&self) -> Vec<ClosureCheck> {
        ClosureFlag::ALL.into_iter().map(|f| self.check_closure(f)).collect()
    }
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.members {
            Members::All => write!(f, "all")?,
            Members::Finite(list) if list.is_empty() => write!(f, "{{0}}")?,
            Members::Finite(list) => {
                let names: Vec<String> = list.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", names.join(", "))?
            }
        }
        write!(f, " over {} with {}", self.ring, self.bounds)
    }
}

/// Rebuilds invariant factors from prime-power elementary divisors.
fn from_elementary(ring: Ring, powers: &[(u64, u64)]) -> FinModule {
    let mut primes: Vec<u64> = powers.iter().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let cols: Vec<Vec<u64>> = primes
        .iter()
        .map(|&p| {
            let mut qs: Vec<u64> = powers.iter().filter(|&&(r, _)| r == p).map(|&(_, q)| q).collect();
            qs.sort_unstable_by(|a, b| b.cmp(a));
            qs
        })
        .collect();
    let rank = cols.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..rank)
        .map(|i| cols.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    factors.reverse();
    FinModule::new(ring, factors).expect("elementary divisors assemble to a chain")
}

/// Every direct summand up to isomorphism (sub-multisets of elementary divisors).
pub fn summands(m: &FinModule) -> Vec<FinModule> {
    let elems: Vec<(u64, u64)> = m.factors().iter().flat_map(|&d| prime_powers(d)).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << elems.len()) {
        let pick: Vec<(u64, u64)> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        out.insert(from_elementary(m.ring(), &pick));
    }
    out.into_iter().collect()
}

/// Verdict of a module-level orthogonality test.
#[derive(Clone, Debug)]
pub struct ModuleVerdict {
    pub holds: bool,
    pub failing: Option<FinModule>,
    pub witness: Option<ShortExact>,
    pub tested: usize,
}

/// `Ext¹(W, E) = 0` for every member `W`.
pub fn is_x_injective_module(e: &FinModule, x: &ModuleClass) -> ModuleVerdict {
    orthogonal_module(x, |w| ext1_module(w, e))
}

/// `Ext¹(P, W) = 0` for every member `W`.
pub fn is_x_projective_module(p: &FinModule, x: &ModuleClass) -> ModuleVerdict {
    orthogonal_module(x, |w| ext1_module(p, w))
}

fn orthogonal_module(x: &ModuleClass, ext: impl Fn(&FinModule) -> crate::ext::ExtGroup) -> ModuleVerdict {
    let mems = x.universe();
    for (i, w) in mems.iter().enumerate() {
        let g = ext(w);
        if !g.is_zero() {
            return ModuleVerdict {
                holds: false,
                failing: Some(w.clone()),
                witness: g.witness(),
                tested: i + 1,
            };
        }
    }
    ModuleVerdict {
        holds: true,
        failing: None,
        witness: None,
        tested: mems.len(),
    }
}

/// A deterministic finite family of complexes with a truncation flag.
#[derive(Clone, Debug, Default)]
pub struct Generated {
    pub complexes: Vec<Complex>,
    pub truncated: bool,
}

/// Every complex with components in `X` (at most `k` factors each), spanning
/// at most `L + 1` degrees starting at 0 with nonzero ends, in a fixed order.
/// Stops and sets `truncated` after `cap` complexes.
pub fn generate_xstar_complexes(x: &ModuleClass, bounds: &Bounds, cap: usize) -> Generated {
    let mems = x.listed(bounds.factors);
    let mut out = Generated::default();
    if mems.is_empty() {
        return out;
    }
    let mut slots = mems.clone();
    slots.push(FinModule::zero(x.ring()));
    for len in 1..=bounds.length + 1 {
        let mut seq = vec![0usize; len];
        loop {
            let ends_ok = seq[0] < mems.len() && seq[len - 1] < mems.len();
            if ends_ok {
                let mods: Vec<FinModule> = seq.iter().map(|&i| slots[i].clone()).collect();
                if !extend_differentials(x, &mods, &mut Vec::new(), &mut out, cap) {
                    out.truncated = true;
                    return out;
                }
            }
            let mut k = len;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                seq[k] += 1;
                if seq[k] < slots.len() {
                    break;
                }
                seq[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Depth-first choice of differentials with `d ∘ d = 0`; false once `cap` is hit.
fn extend_differentials(
    x: &ModuleClass,
    mods: &[FinModule],
    chosen: &mut Vec<Morphism>,
    out: &mut Generated,
    cap: usize,
) -> bool {
    let i = chosen.len();
    if i + 1 == mods.len() {
        if out.complexes.len() >= cap {
            return false;
        }
        let c = Complex::new(x.ring(), 0, mods.to_vec(), chosen.clone()).expect("valid by construction");
        out.complexes.push(c);
        return true;
    }
    let Ok(maps) = homs(&mods[i], &mods[i + 1], x.cap()) else {
        return true;
    };
    for d in maps {
        if i > 0 && !d.after(&chosen[i - 1]).is_zero() {
            continue;
        }
        chosen.push(d);
        let go_on = extend_differentials(x, mods, chosen, out, cap);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Verdict of a complex-level test, relative to the recorded bounds.
#[derive(Clone, Debug)]
pub struct ComplexVerdict {
    pub holds: bool,
    /// The test complex (already shifted) on which the test failed.
    pub failing: Option<Complex>,
    pub witness: Option<ShortExact>,
    pub tested: usize,
    pub bounds: Bounds,
    pub truncated: bool,
}

/// Shifts `t` for which `W[-t]` (support `[t, t + len - 1]`) can carry a
/// nonzero `Ext¹(W[-t], C)`: some degree of `W` must meet `[lo_C - 1, hi_C]`.
fn injective_window(c: &Complex, w: &Complex) -> std::ops::RangeInclusive<i64> {
    (c.lo() - w.len() as i64)..=c.hi()
}

/// Same for `Ext¹(C, W[-t])`: some degree of `W` must meet `[lo_C, hi_C + 1]`.
fn projective_window(c: &Complex, w: &Complex) -> std::ops::RangeInclusive<i64> {
    (c.lo() - w.len() as i64 + 1)..=(c.hi() + 1)
}

/// `Ext¹(W, C) = 0` for every generated `X*`-complex `W` and every shift of it.
pub fn is_x_injective_complex(c: &Complex, x: &ModuleClass, bounds: &Bounds) -> ComplexVerdict {
    orthogonal_complex(c, x, bounds, true)
}

/// `Ext¹(C, W) = 0` for every generated `X*`-complex `W` and every shift of it.
pub fn is_x_projective_complex(c: &Complex, x: &ModuleClass, bounds: &Bounds) -> ComplexVerdict {
    orthogonal_complex(c, x, bounds, false)
}

fn orthogonal_complex(c: &Complex, x: &ModuleClass, bounds: &Bounds, injective: bool) -> ComplexVerdict {
    let gen = generate_xstar_complexes(x, bounds, x.cap() as usize);
    let mut v = orthogonal_to(c, &gen.complexes, injective);
    v.bounds = *bounds;
    v.truncated = gen.truncated;
    v
}

/// `Ext¹(W, C) = 0` for every `W` in `tests` and every shift of it that can
/// interact with `C`.
pub fn is_right_orthogonal(c: &Complex, tests: &[Complex]) -> ComplexVerdict {
    orthogonal_to(c, tests, true)
}

/// `Ext¹(C, W) = 0` for every `W` in `tests` and every relevant shift.
pub fn is_left_orthogonal(c: &Complex, tests: &[Complex]) -> ComplexVerdict {
    orthogonal_to(c, tests, false)
}

fn orthogonal_to(c: &Complex, tests: &[Complex], injective: bool) -> ComplexVerdict {
    let mut tested = 0;
    if !c.is_zero() {
        for w in tests.iter().filter(|w| !w.is_zero()) {
            let base = w.shift(w.lo());
            let window = if injective {
                injective_window(c, &base)
            } else {
                projective_window(c, &base)
            };
            for t in window {
                let ws = base.shift(-t);
                let e = if injective {
                    ext1_complex(&ws, c)
                } else {
                    ext1_complex(c, &ws)
                };
                tested += 1;
                if !e.is_zero() {
                    return ComplexVerdict {
                        holds: false,
                        failing: Some(ws),
                        witness: e.witness(),
                        tested,
                        bounds: Bounds { length: 0, factors: 0 },
                        truncated: false,
                    };
                }
            }
        }
    }
    ComplexVerdict {
        holds: true,
        failing: None,
        witness: None,
        tested,
        bounds: Bounds { length: 0, factors: 0 },
        truncated: false,
    }
}

/// Membership data for the class of exact complexes with kernels in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonXWitness {
    pub complex: Complex,
    pub exact: bool,
    pub first_failure: Option<i64>,
    /// `(n, ker d^n, ker d^n ∈ X)`.
    pub kernels: Vec<(i64, FinModule, bool)>,
}

impl EpsilonXWitness {
    pub fn member(&self) -> bool {
        self.exact && self.kernels.iter().all(|k| k.2)
    }
}

pub fn in_epsilon_x(c: &Complex, x: &ModuleClass) -> EpsilonXWitness {
    let ex = c.exactness();
    EpsilonXWitness {
        complex: c.clone(),
        exact: ex.is_exact(),
        first_failure: ex.first_failure,
        kernels: ex
            .kernels
            .into_iter()
            .map(|(n, k)| {
                let inside = x.contains(&k);
                (n, k, inside)
            })
            .collect(),
    }
}

/// Exact complexes `0 -> E^0 -> ... -> E^j -> 0` (`1 <= j <= L`) starting in
/// degree 0 whose kernels `K_1..K_j` run over nonzero members and whose
/// middle terms run over every extension class of `K_{n+1}` by `K_n`.
pub fn generate_epsilon_x(x: &ModuleClass, bounds: &Bounds, cap: usize) -> Generated {
    let mems = x.listed(bounds.factors);
    let mut out = Generated::default();
    if mems.is_empty() {
        return out;
    }
    for j in 1..=bounds.length {
        let mut ks = vec![0usize; j];
        loop {
            let kernels: Vec<FinModule> = ks.iter().map(|&i| mems[i].clone()).collect();
            if !splice(x, &kernels, &mut Vec::new(), &mut out, cap) {
                out.truncated = true;
                return out;
            }
            let mut k = j;
            let mut done = true;
            while k > 0 {
                k -= 1;
                ks[k] += 1;
                if ks[k] < mems.len() {
                    done = false;
                    break;
                }
                ks[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

/// Chooses extension classes for the middle terms one at a time.
fn splice(x: &ModuleClass, ks: &[FinModule], seqs: &mut Vec<ShortExact>, out: &mut Generated, cap: usize) -> bool {
    let j = ks.len();
    let need = j.saturating_sub(1);
    if seqs.len() == need {
        if out.complexes.len() >= cap {
            return false;
        }
        out.complexes.push(assemble_exact(x.ring(), ks, seqs));
        return true;
    }
    let n = seqs.len();
    let e = ext1_module(&ks[n + 1], &ks[n]);
    let Ok(classes) = e.group.elements(x.cap()) else {
        return true;
    };
    for coords in classes {
        seqs.push(e.extension(&coords));
        let go_on = splice(x, ks, seqs, out, cap);
        seqs.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Splices `0 -> K_n -> E^n -> K_{n+1} -> 0` into `E^0 = K_1 -> E^1 -> ... -> E^j = K_j`.
fn assemble_exact(ring: Ring, ks: &[FinModule], seqs: &[ShortExact]) -> Complex {
    let j = ks.len();
    if j == 1 {
        return Complex::disk(&ks[0], 0);
    }
    // E^0 = K_1, E^n = middle of seqs[n-1] for 1 <= n < j, E^j = K_j
    let mut modules = vec![ks[0].clone()];
    let mut ins: Vec<Morphism> = Vec::new();
    let mut outs: Vec<Morphism> = Vec::new();
    for s in seqs {
        let (i, p) = s.module_maps();
        modules.push(i.target().clone());
        ins.push(i);
        outs.push(p);
    }
    modules.push(ks[j - 1].clone());
    let mut diffs = Vec::new();
    // E^0 = K_1 -> E^1 is the inclusion of K_1
    diffs.push(ins[0].clone());
    for n in 1..j - 1 {
        // E^n ->> K_{n+1} -> E^{n+1}
        diffs.push(ins[n].after(&outs[n - 1]));
    }
    diffs.push(outs[j - 2].clone());
    Complex::new(ring, 0, modules, diffs).expect("spliced sequences form a complex")
}

/// Verdict of a DG test: components first, then exactness of Hom complexes.
#[derive(Clone, Debug)]
pub struct DgVerdict {
    pub holds: bool,
    /// A component failing the module test, with its degree.
    pub component_failure: Option<(i64, ModuleVerdict)>,
    /// A sampled `E` for which the Hom complex is not exact.
    pub hom_failure: Option<Complex>,
    pub sampled: usize,
}

/// Each `I^n` is `X`-injective and `Hom(E, I)` is exact for every sampled `E`.
pub fn is_dg_x_injective(i: &Complex, x: &ModuleClass, sample: &[Complex]) -> DgVerdict {
    dg_check(i, x, sample, true)
}

/// Each `P^n` is `X`-projective and `Hom(P, E)` is exact for every sampled `E`.
pub fn is_dg_x_projective(p: &Complex, x: &ModuleClass, sample: &[Complex]) -> DgVerdict {
    dg_check(p, x, sample, false)
}

fn dg_check(c: &Complex, x: &ModuleClass, sample: &[Complex], injective: bool) -> DgVerdict {
    for n in c.lo()..=c.hi() {
        let v = if injective {
            is_x_injective_module(&c.module(n), x)
        } else {
            is_x_projective_module(&c.module(n), x)
        };
        if !v.holds {
            return DgVerdict {
                holds: false,
                component_failure: Some((n, v)),
                hom_failure: None,
                sampled: 0,
            };
        }
    }
    for (k, e) in sample.iter().enumerate() {
        let h = if injective { hom_complex(e, c) } else { hom_complex(c, e) };
        if !h.complex().is_exact() {
            return DgVerdict {
                holds: false,
                component_failure: None,
                hom_failure: Some(e.clone()),
                sampled: k + 1,
            };
        }
    }
    DgVerdict {
        holds: true,
        component_failure: None,
        hom_failure: None,
        sampled: sample.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    fn md(f: &[u64]) -> FinModule {
        FinModule::new(z4(), f.to_vec()).unwrap()
    }

    fn one(members: &[&[u64]], k: usize) -> ModuleClass {
        ModuleClass::finite(z4(), members.iter().map(|f| md(f)).collect(), Bounds { length: 2, factors: k })
    }

    #[test]
    fn two_and_four_are_extension_closed_in_rank_one() {
        let c = ModuleClass::new(
            z4(),
            Members::Finite(vec![md(&[2]), md(&[4])]),
            &[ClosureFlag::Extensions],
            Bounds { length: 2, factors: 1 },
        );
        assert!(c.is_ok());
        let c = ModuleClass::new(
            z4(),
            Members::Finite(vec![md(&[2])]),
            &[ClosureFlag::Extensions],
            Bounds { length: 2, factors: 1 },
        );
        assert!(matches!(c, Err(Error::NotClosed(_))));
    }

    #[test]
    fn summands_by_elementary_divisors() {
        let r = Ring::new(12).unwrap();
        let m = FinModule::new(r, vec![6]).unwrap();
        let s: Vec<String> = summands(&m).iter().map(ToString::to_string).collect();
        assert_eq!(s, vec!["0", "(2)", "(3)", "(6)"]);
    }

    #[test]
    fn module_injectivity() {
        let x = one(&[&[2]], 1);
        assert!(is_x_injective_module(&md(&[4]), &x).holds);
        let v = is_x_injective_module(&md(&[2]), &x);
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().middle().module(0), md(&[4]));
        let free = one(&[&[4]], 1);
        assert!(is_x_injective_module(&md(&[2]), &free).holds);
        let zero = ModuleClass::finite(z4(), vec![], Bounds::default());
        assert!(is_x_injective_module(&md(&[2]), &zero).holds);
    }

    #[test]
    fn generated_complexes() {
        let x = one(&[&[2]], 1);
        let g = generate_xstar_complexes(&x, &Bounds { length: 1, factors: 1 }, 1000);
        let two: Vec<_> = g.complexes.iter().filter(|c| c.len() == 2).collect();
        assert_eq!(two.len(), 2);
        let g0 = generate_xstar_complexes(&x, &Bounds { length: 0, factors: 1 }, 1000);
        assert_eq!(g0.complexes, vec![Complex::sphere(&md(&[2]), 0)]);
        assert!(generate_xstar_complexes(&x, &Bounds { length: 2, factors: 0 }, 1000).complexes.is_empty());
        let capped = generate_xstar_complexes(&x, &Bounds { length: 3, factors: 1 }, 3);
        assert!(capped.truncated);
    }

    #[test]
    fn epsilon_membership() {
        let x = one(&[&[2]], 1);
        let c = crate::complexes::tests::short_exact();
        let w = in_epsilon_x(&c, &x);
        assert!(w.member());
        assert!(!in_epsilon_x(&Complex::sphere(&md(&[2]), 0), &x).member());
        let g = generate_epsilon_x(&x, &Bounds { length: 2, factors: 1 }, 100);
        assert!(g.complexes.iter().all(|e| in_epsilon_x(e, &x).member()));
        assert!(g.complexes.contains(&c));
    }

    #[test]
    fn complex_injectivity() {
        let all = ModuleClass::all(z4(), Bounds { length: 1, factors: 1 });
        let b = Bounds { length: 1, factors: 1 };
        let free_disk = Complex::disk(&FinModule::free(z4(), 1), 0);
        assert!(is_x_injective_complex(&free_disk, &all, &b).holds);
        assert!(is_x_injective_complex(&Complex::zero(z4()), &all, &b).holds);
        assert!(!is_x_injective_complex(&Complex::sphere(&md(&[4]), 0), &all, &b).holds);
    }

    #[test]
    fn dg_injectivity_of_free_sphere() {
        let x = one(&[&[2], &[4]], 1);
        let b = Bounds { length: 2, factors: 1 };
        let sample = generate_epsilon_x(&x, &b, 200).complexes;
        let i = Complex::sphere(&FinModule::free(z4(), 1), 0);
        assert!(is_dg_x_injective(&i, &x, &sample).holds);
        let bad = Complex::sphere(&md(&[2]), 0);
        assert!(is_dg_x_injective(&bad, &x, &sample).component_failure.is_some());
    }
}
