//! Samplers and checks for each suite.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample;
use super::witness::{module_data, module_from, ChainMapData, ComplexData, MorphismData};
use super::{sample_rng, OracleKind, OracleReport, Outcome, SuiteConfig, Verdict};
use crate::brute;
use crate::classes::{
    generate_epsilon_x, in_epsilon_x, is_dg_x_injective, is_dg_x_projective, is_right_orthogonal,
    is_x_injective_complex, is_x_injective_module, is_x_projective_complex, is_x_projective_module, Bounds,
    ClosureFlag, Members, ModuleClass,
};
use crate::complexes::{
    chain_maps, direct_sum, factor_right, hom_complex, is_null_homotopic, mapping_cone, ChainMap, Complex, Homotopy,
};
use crate::constructors::{
    build_precover, build_preenvelope, certify_precover, certify_preenvelope, compare_precovers,
    compare_preenvelopes, null_homotopy_from_x_projective, null_homotopy_into_x_injective, tower_extend,
    truncations, BoundedSearch, FreeCover, FreeHull, Link, ModulePrecovers, ModulePreenvelopes, PaddedCover,
    PaddedHull, Stabilization,
};
use crate::error::{Error, Result};
use crate::ext::{ext1_complex, ext1_complex_order_dual, ext1_module, split_check, ShortExact};
use crate::zm::{DirectSum, FinModule, Morphism, Ring};

/// Enumeration cap for brute-force checks.
const CAP: u128 = 1 << 16;
/// Cap on generated members of the exact-complex class.
const EPS_CAP: usize = 500;
/// Minimum pool size for certifying constructions.
const POOL_MIN: usize = 10;
/// Stabilization window for towers.
const WINDOW: usize = 2;

/// The input of one sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SampleData {
    Map { map: ChainMapData },
    Complex { complex: ComplexData },
    Complexes { first: ComplexData, second: ComplexData },
    ModuleMap { beta: MorphismData, test: Vec<u64> },
    Modules { injective: Vec<u64>, projective: Vec<u64>, degree: i64 },
    Morphism { phi: MorphismData },
    Fixed,
}

impl SampleData {
    /// Rebuilds every object, reporting the first ill-formed one.
    pub fn build(&self, ring: Ring) -> Result<()> {
        match self {
            SampleData::Map { map } => map.build(ring).map(drop),
            SampleData::Complex { complex } => complex.build(ring).map(drop),
            SampleData::Complexes { first, second } => {
                first.build(ring)?;
                second.build(ring).map(drop)
            }
            SampleData::ModuleMap { beta, test } => {
                beta.build(ring)?;
                module_from(ring, test).map(drop)
            }
            SampleData::Modules {
                injective, projective, ..
            } => {
                module_from(ring, injective)?;
                module_from(ring, projective).map(drop)
            }
            SampleData::Morphism { phi } => phi.build(ring).map(drop),
            SampleData::Fixed => Ok(()),
        }
    }
}

pub(crate) struct Ctx {
    pub x: ModuleClass,
    pub bounds: Bounds,
    pub retries: usize,
    pub index: usize,
}

impl Ctx {
    fn ring(&self) -> Ring {
        self.x.ring()
    }

    fn max_len(&self) -> usize {
        self.bounds.length + 1
    }

    fn k(&self) -> usize {
        self.bounds.factors.max(1)
    }

    /// Bounds for orthogonality tests; narrowed for the class of all modules,
    /// whose generated test complexes grow too fast otherwise.
    fn test_bounds(&self) -> Bounds {
        match self.x.members() {
            Members::All => Bounds {
                length: self.bounds.length.min(1),
                factors: 1,
            },
            Members::Finite(_) => self.bounds,
        }
    }

    fn epsilon(&self) -> Vec<Complex> {
        generate_epsilon_x(&self.x, &self.bounds, EPS_CAP).complexes
    }
}

const STARTS: (i64, i64) = (-1, 1);

pub(crate) fn draw(id: &str, ctx: &Ctx, rng: &mut ChaCha8Rng) -> Option<SampleData> {
    let (r, x, l, k) = (ctx.ring(), &ctx.x, ctx.max_len(), ctx.k());
    match id {
        "lemma-2.13" => {
            let a = sample::complex(rng, r, l, k, STARTS);
            let b = sample::complex(rng, r, l, k, STARTS);
            let f = if rng.gen_bool(0.4) {
                random_homotopy(rng, &a, &b).boundary()
            } else {
                sample::chain_map(rng, &a, &b)
            };
            Some(SampleData::Map {
                map: ChainMapData::of(&f),
            })
        }
        "lemma-2.8" | "lemma-2.12" => {
            let eps = (id == "lemma-2.12").then(|| ctx.epsilon());
            let accepted = (0..=ctx.retries).find_map(|_| {
                let c = if rng.gen_bool(0.6) {
                    sample::disk_sum(rng, r, 2, STARTS, |g| sample::x_injective_module(g, x, k))
                } else {
                    sample::complex(rng, r, l, k, STARTS)
                };
                let ok = match &eps {
                    Some(e) => is_right_orthogonal(&c, e).holds,
                    None => is_x_injective_complex(&c, x, &ctx.bounds).holds,
                };
                ok.then_some(c)
            })?;
            let raw = sample::complex(rng, r, l, k, STARTS);
            Some(SampleData::Complexes {
                first: ComplexData::of(&accepted),
                second: ComplexData::of(&raw),
            })
        }
        "lemma-2.14" => {
            let beta = (0..=ctx.retries).find_map(|_| {
                let a = sample::module(rng, r, k);
                let b = sample::module(rng, r, k);
                let beta = sample::morphism(rng, &a, &b);
                x.contains(&beta.kernel().module).then_some(beta)
            })?;
            let i = sample::x_projective_module(rng, x, k);
            Some(SampleData::ModuleMap {
                beta: MorphismData::of(&beta),
                test: module_data(&i),
            })
        }
        "lemma-2.15" => {
            let a = sample::complex(rng, r, l, k, STARTS);
            let i = (0..=ctx.retries).find_map(|_| {
                let i = match rng.gen_range(0..3) {
                    0 => sample::disk_sum(rng, r, 2, STARTS, |g| FinModule::free(r, g.gen_range(1..=k))),
                    1 => mapping_cone(&ChainMap::identity(&sample::complex(rng, r, l, k, STARTS))).cone,
                    _ => sample::complex(rng, r, l, k, STARTS),
                };
                ext_vanishes_on_window(&a, &i).then_some(i)
            })?;
            Some(SampleData::Complexes {
                first: ComplexData::of(&a),
                second: ComplexData::of(&i),
            })
        }
        "theorem-2.16" => {
            let i = sample::disk_sum(rng, r, 2, STARTS, |g| sample::x_injective_module(g, x, k));
            let j = if rng.gen_bool(0.5) {
                sample::complex(rng, r, l, k, STARTS)
            } else {
                sample::disk_sum(rng, r, 2, STARTS, |g| sample::module(g, r, k))
            };
            Some(SampleData::Complexes {
                first: ComplexData::of(&i),
                second: ComplexData::of(&j),
            })
        }
        "example-2.7" => Some(SampleData::Modules {
            injective: module_data(&sample::x_injective_module(rng, x, k)),
            projective: module_data(&sample::x_projective_module(rng, x, k)),
            degree: rng.gen_range(STARTS.0..=STARTS.1),
        }),
        "example-2.10" => Some(SampleData::Fixed),
        "lemma-3.1" => {
            let a = sample::xstar_complex(rng, x, l, k, STARTS);
            let y = if rng.gen_bool(0.5) {
                let z = sample::xstar_complex(rng, x, l, k, STARTS);
                build_preenvelope(&z, x, &FreeHull).ok().map(|p| p.env)
            } else {
                None
            }
            .unwrap_or_else(|| sample::disk_sum(rng, r, 2, STARTS, |g| sample::x_injective_module(g, x, k)));
            let f = sample::chain_map(rng, &a, &y);
            Some(SampleData::Map {
                map: ChainMapData::of(&f),
            })
        }
        "lemma-3.2" => {
            let y = sample::xstar_complex(rng, x, l, k, STARTS);
            let p = if rng.gen_bool(0.5) {
                let z = sample::xstar_complex(rng, x, l, k, STARTS);
                build_precover(&z, x, &FreeCover).ok().map(|p| p.cover)
            } else {
                None
            }
            .unwrap_or_else(|| sample::disk_sum(rng, r, 2, STARTS, |g| sample::x_projective_module(g, x, k)));
            let f = sample::chain_map(rng, &p, &y);
            Some(SampleData::Map {
                map: ChainMapData::of(&f),
            })
        }
        "lemma-3.3" | "lemma-3.5" | "tower-3.7" | "tower-3.10" => {
            let y = (0..=ctx.retries)
                .map(|_| sample::xstar_complex(rng, x, l, k, STARTS))
                .find(|y| !y.is_zero())?;
            Some(SampleData::Complex {
                complex: ComplexData::of(&y),
            })
        }
        "example-3.12" => {
            let a = sample::member(rng, x, k);
            let b = sample::member(rng, x, k);
            if a.is_zero() || b.is_zero() {
                return None;
            }
            Some(SampleData::Morphism {
                phi: MorphismData::of(&sample::morphism(rng, &a, &b)),
            })
        }
        _ => None,
    }
}

/// A homotopy with uniformly random components.
fn random_homotopy<R: Rng>(rng: &mut R, a: &Complex, b: &Complex) -> Homotopy {
    let comps: Vec<(i64, Morphism)> = (a.lo()..=a.hi())
        .map(|n| (n, sample::morphism(rng, &a.module(n), &b.module(n - 1))))
        .collect();
    Homotopy::new(a, b, comps).expect("components have matching shapes")
}

/// `Ext¹(A, I[n]) = 0` for every shift where the two can interact.
fn ext_vanishes_on_window(a: &Complex, i: &Complex) -> bool {
    if a.is_zero() || i.is_zero() {
        return true;
    }
    (i.lo() - a.hi() - 1..=i.hi() - a.lo() + 1).all(|n| ext1_complex(a, &i.shift(n)).is_zero())
}

/// Closure under extensions and sums, judged among modules no larger in rank
/// than the largest listed member.
fn closed_for_constructions(x: &ModuleClass) -> std::result::Result<(), String> {
    let rank = match x.members() {
        Members::All => x.bounds().factors,
        Members::Finite(list) => list.iter().map(FinModule::rank).max().unwrap_or(0),
    };
    let x = x.clone().with_bounds(Bounds {
        length: x.bounds().length,
        factors: rank,
    });
    for flag in [ClosureFlag::Extensions, ClosureFlag::DirectSums] {
        let c = x.check_closure(flag);
        if !c.closed {
            return Err(format!(
                "class is not closed under {}: {}",
                flag.name(),
                c.counterexample.unwrap_or_default()
            ));
        }
    }
    Ok(())
}

/// Disks on relatively injective (or projective) modules around the support
/// of `y`, topped up with sums of neighbouring disks.
pub fn disk_pool(x: &ModuleClass, y: &Complex, injective: bool, k: usize) -> Vec<Complex> {
    let mods: Vec<FinModule> = brute::modules_up_to(x.ring(), k)
        .into_iter()
        .filter(|m| {
            !m.is_zero()
                && if injective {
                    is_x_injective_module(m, x).holds
                } else {
                    is_x_projective_module(m, x).holds
                }
        })
        .collect();
    let mut pool = Vec::new();
    for m in &mods {
        for n in y.lo() - 2..=y.hi() + 1 {
            pool.push(Complex::disk(m, n));
        }
    }
    let base = pool.clone();
    for w in base.windows(2) {
        if pool.len() >= POOL_MIN {
            break;
        }
        pool.push(direct_sum(x.ring(), w));
    }
    pool
}

fn fail_decode(e: Error) -> Vec<Outcome> {
    vec![Outcome::new("decode", Verdict::Fail).with(e.to_string())]
}

pub(crate) fn evaluate(id: &str, ctx: &Ctx, data: &SampleData) -> Vec<Outcome> {
    match evaluate_inner(id, ctx, data) {
        Ok(out) => out,
        Err(e) => fail_decode(e),
    }
}

fn evaluate_inner(id: &str, ctx: &Ctx, data: &SampleData) -> Result<Vec<Outcome>> {
    let r = ctx.ring();
    let x = &ctx.x;
    let shape = || Error::Invalid(format!("sample kind does not fit suite {id}"));
    Ok(match (id, data) {
        ("lemma-2.13", SampleData::Map { map }) => cone_splitting(&map.build(r)?)?,
        ("lemma-2.8", SampleData::Complexes { first, second }) => {
            let (c, raw) = (first.build(r)?, second.build(r)?);
            let hyp = is_x_injective_complex(&c, x, &ctx.bounds);
            let mut out = vec![components_injective(&c, x, hyp.holds)];
            let raw_test = is_x_injective_complex(&raw, x, &ctx.bounds);
            out.push(component_obstruction(&raw, x, !raw_test.holds, false));
            out
        }
        ("lemma-2.12", SampleData::Complexes { first, second }) => {
            let (c, raw) = (first.build(r)?, second.build(r)?);
            let eps = ctx.epsilon();
            let mut out = vec![components_injective(&c, x, is_right_orthogonal(&c, &eps).holds)];
            let raw_test = is_right_orthogonal(&raw, &eps);
            out.push(component_obstruction(&raw, x, !raw_test.holds, true));
            out
        }
        ("lemma-2.14", SampleData::ModuleMap { beta, test }) => {
            let (beta, i) = (beta.build(r)?, module_from(r, test)?);
            vec![hom_exactness(&beta, &i, x)]
        }
        ("lemma-2.15", SampleData::Complexes { first, second }) => {
            let (a, i) = (first.build(r)?, second.build(r)?);
            let check = "ext-vanishing-gives-exact-hom";
            if !ext_vanishes_on_window(&a, &i) {
                vec![Outcome::vacuous(check, "some Ext¹(X, I[n]) is nonzero")]
            } else {
                let h = hom_complex(&a, &i);
                let ex = h.complex().exactness();
                let o = Outcome::holds(check, ex.is_exact());
                vec![match ex.first_failure {
                    Some(n) => o.with(format!("Hom complex not exact in degree {n}")),
                    None => o,
                }]
            }
        }
        ("theorem-2.16", SampleData::Complexes { first, second }) => {
            let (i, j) = (first.build(r)?, second.build(r)?);
            dg_orthogonality(ctx, &i, &j)
        }
        ("example-2.7", SampleData::Modules {
            injective,
            projective,
            degree,
        }) => {
            let (e, p) = (module_from(r, injective)?, module_from(r, projective)?);
            let eps = ctx.epsilon();
            let mut out = Vec::new();
            let check = "sphere-on-injective-is-dg-injective";
            out.push(if is_x_injective_module(&e, x).holds {
                let v = is_dg_x_injective(&Complex::sphere(&e, *degree), x, &eps);
                Outcome::holds(check, v.holds).with(format!("{} sampled", v.sampled))
            } else {
                Outcome::vacuous(check, format!("{e} is not injective relative to the class"))
            });
            let check = "sphere-on-projective-is-dg-projective";
            out.push(if is_x_projective_module(&p, x).holds {
                let v = is_dg_x_projective(&Complex::sphere(&p, *degree), x, &eps);
                Outcome::holds(check, v.holds).with(format!("{} sampled", v.sampled))
            } else {
                Outcome::vacuous(check, format!("{p} is not projective relative to the class"))
            });
            out
        }
        ("example-2.10", SampleData::Fixed) => non_example(ctx)?,
        ("lemma-3.1", SampleData::Map { map }) => {
            let f = map.build(r)?;
            null_homotopy_suite(ctx, &f, true)
        }
        ("lemma-3.2", SampleData::Map { map }) => {
            let f = map.build(r)?;
            null_homotopy_suite(ctx, &f, false)
        }
        ("lemma-3.3", SampleData::Complex { complex }) => construction(ctx, &complex.build(r)?, false),
        ("lemma-3.5", SampleData::Complex { complex }) => construction(ctx, &complex.build(r)?, true),
        ("example-3.12", SampleData::Morphism { phi }) => two_term(ctx, &phi.build(r)?)?,
        ("tower-3.7", SampleData::Complex { complex }) => towers(ctx, &complex.build(r)?)?,
        ("tower-3.10", SampleData::Complex { complex }) => injective_tower(ctx, &complex.build(r)?)?,
        _ => return Err(shape()),
    })
}

fn cone_splitting(f: &ChainMap) -> Result<Vec<Outcome>> {
    let t = mapping_cone(f);
    let seq = ShortExact::new(t.inclusion, t.projection)?;
    let split = split_check(&seq).is_split();
    let nh = is_null_homotopic(f);
    let mut out = vec![Outcome::holds("cone-splits-iff-null-homotopic", split == nh.is_some())
        .with(format!("split={split} null-homotopic={}", nh.is_some()))];
    out.push(match nh {
        Some(s) => Outcome::holds("homotopy-witnesses-map", s.witnesses(f)),
        None => Outcome::vacuous("homotopy-witnesses-map", "map is not null-homotopic"),
    });
    Ok(out)
}

fn components_injective(c: &Complex, x: &ModuleClass, hypothesis: bool) -> Outcome {
    let check = "components-x-injective";
    if !hypothesis {
        return Outcome::vacuous(check, "complex fails the test");
    }
    match (c.lo()..=c.hi()).find(|&n| !is_x_injective_module(&c.module(n), x).holds) {
        None => Outcome::new(check, Verdict::Pass),
        Some(n) => Outcome::new(check, Verdict::Fail).with(format!("component {} in degree {n}", c.module(n))),
    }
}

/// Every failing component `C^n` with witness `W` gives `Ext¹(D^n(W), C) ≠ 0`,
/// and the complex test itself must reject `C`.
fn component_obstruction(c: &Complex, x: &ModuleClass, rejected: bool, exact_disk: bool) -> Outcome {
    let check = "failing-component-obstructs";
    let mut found = 0;
    if c.is_zero() {
        return Outcome::vacuous(check, "zero complex");
    }
    for n in c.lo()..=c.hi() {
        let v = is_x_injective_module(&c.module(n), x);
        if v.holds {
            continue;
        }
        found += 1;
        let w = v.failing.expect("failing verdict names a module");
        let disk = Complex::disk(&w, n);
        if exact_disk && !in_epsilon_x(&disk, x).member() {
            return Outcome::new(check, Verdict::Fail).with(format!("disk on {w} not in the exact class"));
        }
        if ext1_complex(&disk, c).is_zero() {
            return Outcome::new(check, Verdict::Fail).with(format!("Ext¹ of disk on {w} in degree {n} vanishes"));
        }
    }
    if found == 0 {
        return Outcome::vacuous(check, "all components pass");
    }
    Outcome::holds(check, rejected).with(format!("{found} failing components"))
}

fn hom_exactness(beta: &Morphism, i: &FinModule, x: &ModuleClass) -> Outcome {
    let check = "hom-sequence-exact";
    let ker = beta.kernel().module;
    if !x.contains(&ker) {
        return Outcome::vacuous(check, format!("kernel {ker} outside the class"));
    }
    if !is_x_projective_module(i, x).holds {
        return Outcome::vacuous(check, format!("{i} is not projective relative to the class"));
    }
    let theta = beta.cokernel().projection;
    let (ha, hb) = match (brute::homs(i, beta.source(), CAP), brute::homs(i, beta.target(), CAP)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Outcome::vacuous(check, "Hom groups exceed the enumeration cap"),
    };
    let image: BTreeSet<Vec<Vec<u64>>> = ha.iter().map(|h| beta.after(h).to_rows()).collect();
    let kernel: BTreeSet<Vec<Vec<u64>>> = hb
        .iter()
        .filter(|g| theta.after(g).is_zero())
        .map(Morphism::to_rows)
        .collect();
    Outcome::holds(check, image == kernel).with(format!("|image| = {}, |kernel| = {}", image.len(), kernel.len()))
}

fn dg_orthogonality(ctx: &Ctx, i: &Complex, j: &Complex) -> Vec<Outcome> {
    let x = &ctx.x;
    let names = ["disk-sums-dg-and-orthogonal", "orthogonal-implies-dg", "dg-implies-orthogonal"];
    if let Err(why) = closed_for_constructions(x) {
        return names.iter().map(|n| Outcome::vacuous(n, why.clone())).collect();
    }
    let eps = ctx.epsilon();
    let size = format!("{} exact complexes", eps.len());
    let dg_i = is_dg_x_injective(i, x, &eps).holds;
    let orth_i = is_right_orthogonal(i, &eps).holds;
    let mut out = vec![Outcome::holds(names[0], dg_i && orth_i).with(format!("dg={dg_i} orthogonal={orth_i}"))];
    let orth = is_right_orthogonal(j, &eps);
    let dg = is_dg_x_injective(j, x, &eps);
    out.push(match (orth.holds, dg.holds) {
        (true, true) => Outcome::new(names[1], Verdict::Corroborated).with(size.clone()),
        (true, false) => Outcome::new(names[1], Verdict::Fail).with(size.clone()),
        (false, _) => Outcome::vacuous(names[1], "not orthogonal"),
    });
    out.push(if dg.holds {
        Outcome::holds(names[2], orth.holds).with(size)
    } else {
        Outcome::vacuous(names[2], "not DG-injective on the sample")
    });
    out
}

/// `0 -> R -> R ⊕ R -> 0` with `a ↦ (0, a)` fails the relative injectivity test.
fn non_example(ctx: &Ctx) -> Result<Vec<Outcome>> {
    let x = &ctx.x;
    let r = ctx.ring();
    let one = FinModule::free(r, 1);
    let names = ["complex-fails-test", "cokernel-obstructs", "map-does-not-extend"];
    if !x.contains(&one) || !is_x_injective_module(&one, x).holds {
        return Ok(names
            .iter()
            .map(|n| Outcome::vacuous(n, "R must be in the class and injective relative to it"))
            .collect());
    }
    let two = FinModule::free(r, 2);
    let f = Morphism::new(&one, &two, &[vec![0], vec![1]])?;
    let y = Complex::new(r, 0, vec![one.clone(), two.clone()], vec![f.clone()])?;
    let v = is_x_injective_complex(&y, x, &ctx.test_bounds());
    let mut out = vec![Outcome::holds(names[0], !v.holds).with(format!("{} test complexes", v.tested))];
    let disk = Complex::disk(&two, 0);
    let iota = ChainMap::new(&y, &disk, [(0, f), (1, Morphism::identity(&two))])?;
    let (coker, _) = iota.cokernel();
    let obstructs = !ext1_complex(&coker, &y).is_zero();
    out.push(Outcome::holds(names[1], obstructs).with(format!(
        "first failing test {}, cokernel {coker}",
        v.failing.as_ref().map_or("none".to_string(), |c| c.to_string())
    )));
    let g = ChainMap::new(&y, &Complex::sphere(&one, 1), [(1, Morphism::new(&two, &one, &[vec![1, 0]])?)])?;
    out.push(Outcome::holds(names[2], factor_right(&iota, &g).is_none()));
    Ok(out)
}

fn null_homotopy_suite(ctx: &Ctx, f: &ChainMap, injective: bool) -> Vec<Outcome> {
    let x = &ctx.x;
    let tb = ctx.test_bounds();
    let (a, b) = (f.source(), f.target());
    let mut out = Vec::new();
    let check = "map-is-null-homotopic";
    let (star, other) = if injective { (a, b) } else { (b, a) };
    let star_ok = (star.lo()..=star.hi()).all(|n| x.contains(&star.module(n)));
    let other_ok = if injective {
        is_x_injective_complex(other, x, &tb).holds
    } else {
        is_x_projective_complex(other, x, &tb).holds
    };
    out.push(if !star_ok || !other_ok {
        Outcome::vacuous(check, "hypotheses do not hold")
    } else {
        let s = if injective {
            null_homotopy_into_x_injective(f)
        } else {
            null_homotopy_from_x_projective(f)
        };
        match s {
            Ok(s) => Outcome::holds(check, s.witnesses(f)),
            Err(e) => Outcome::new(check, Verdict::Fail).with(e.to_string()),
        }
    });
    let extra = 1 + ctx.index % 2;
    out.push(if injective {
        compare_two(
            "preenvelopes-homotopy-equivalent",
            build_preenvelope(star, x, &FreeHull),
            build_preenvelope(star, x, &PaddedHull { extra }),
            |p, q| compare_preenvelopes(p, q).is_some(),
        )
    } else {
        compare_two(
            "precovers-homotopy-equivalent",
            build_precover(star, x, &FreeCover),
            build_precover(star, x, &PaddedCover { extra }),
            |p, q| compare_precovers(p, q).is_some(),
        )
    });
    out
}

fn compare_two<T>(check: &'static str, a: Result<T>, b: Result<T>, same: impl Fn(&T, &T) -> bool) -> Outcome {
    match (a, b) {
        (Ok(a), Ok(b)) => Outcome::holds(check, same(&a, &b)),
        (Err(Error::Hypothesis(why)), _) | (_, Err(Error::Hypothesis(why))) => Outcome::vacuous(check, why),
        (Err(e), _) | (_, Err(e)) => Outcome::vacuous(check, format!("no module-level provider: {e}")),
    }
}

/// The first provider whose output satisfies the builder.
fn preenvelope_with_fallback(y: &Complex, x: &ModuleClass, k: usize) -> Result<crate::constructors::PreenvelopeResult> {
    let search = BoundedSearch {
        class: x.clone(),
        max_factors: k,
    };
    let providers: [&dyn ModulePreenvelopes; 2] = [&FreeHull, &search];
    let mut last = None;
    for p in providers {
        match build_preenvelope(y, x, p) {
            Ok(res) => return Ok(res),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one provider"))
}

fn precover_with_fallback(y: &Complex, x: &ModuleClass, k: usize) -> Result<crate::constructors::PrecoverResult> {
    let search = BoundedSearch {
        class: x.clone(),
        max_factors: k,
    };
    let providers: [&dyn ModulePrecovers; 2] = [&FreeCover, &search];
    let mut last = None;
    for p in providers {
        match build_precover(y, x, p) {
            Ok(res) => return Ok(res),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one provider"))
}

fn construction(ctx: &Ctx, y: &Complex, injective: bool) -> Vec<Outcome> {
    let x = &ctx.x;
    let names = ["invariants", "certified-against-pool"];
    if let Err(why) = closed_for_constructions(x) {
        return names.iter().map(|n| Outcome::vacuous(n, why.clone())).collect();
    }
    let k = ctx.k();
    let pool = disk_pool(x, y, injective, k);
    let (inv, cert) = if injective {
        match preenvelope_with_fallback(y, x, 2 * k) {
            Ok(res) => (res.check_invariants(x), certify_preenvelope(&res, &pool, usize::MAX)),
            Err(e) => return names.iter().map(|n| Outcome::vacuous(n, e.to_string())).collect(),
        }
    } else {
        match precover_with_fallback(y, x, 2 * k) {
            Ok(res) => (res.check_invariants(x), certify_precover(&res, &pool, usize::MAX)),
            Err(e) => return names.iter().map(|n| Outcome::vacuous(n, e.to_string())).collect(),
        }
    };
    let mut out = vec![match inv {
        Ok(()) => Outcome::new(names[0], Verdict::Pass),
        Err(e) => Outcome::new(names[0], Verdict::Fail).with(e.to_string()),
    }];
    out.push(if pool.len() < POOL_MIN {
        Outcome::vacuous(names[1], format!("pool of {} is below {POOL_MIN}", pool.len()))
    } else {
        Outcome::holds(names[1], cert.is_certified()).with(format!("{cert:?}"))
    });
    out
}

/// The two-term complex `A -> B` and its glued preenvelope
/// `E_A -> E_A ⊕ E_B -> E_B`.
fn two_term(ctx: &Ctx, phi: &Morphism) -> Result<Vec<Outcome>> {
    let x = &ctx.x;
    let r = ctx.ring();
    let names = ["shape", "differentials", "comparison"];
    if let Err(why) = closed_for_constructions(x) {
        return Ok(names.iter().map(|n| Outcome::vacuous(n, why.clone())).collect());
    }
    let (a, b) = (phi.source().clone(), phi.target().clone());
    let y = Complex::new(r, 0, vec![a, b], vec![phi.clone()])?;
    let res = match build_preenvelope(&y, x, &FreeHull) {
        Ok(res) => res,
        Err(e) => return Ok(names.iter().map(|n| Outcome::vacuous(n, e.to_string())).collect()),
    };
    let g = res.certificate[0].module_map.clone();
    let f = res.certificate[1].module_map.clone();
    let s = res.certificate[1].comparison.clone().expect("glued step records its comparison map");
    let (ea, eb) = (f.target().clone(), g.target().clone());
    let sum = DirectSum::new(r, &[ea.clone(), eb.clone()]);
    let e = &res.env;
    let shape = e.lo() == -1 && e.hi() == 1 && e.module(-1) == ea && e.module(0) == sum.module && e.module(1) == eb;
    let mut out = vec![Outcome::holds(names[0], shape).with(format!("{e}"))];
    if !shape {
        return Ok(out);
    }
    let (alpha, beta) = (e.diff(-1), e.diff(0));
    let mut ok = true;
    for v in ea.elements(CAP)? {
        let expect = sum.injections[0].apply(&v);
        let expect = sum.module.reduce(
            &expect
                .iter()
                .zip(sum.injections[1].apply(&s.apply(&v)))
                .map(|(p, q)| (*p + r.modulus() - q) % r.modulus())
                .collect::<Vec<_>>(),
        );
        ok &= alpha.apply(&v) == expect;
    }
    for w in sum.module.elements(CAP)? {
        let (u, v) = (sum.projections[0].apply(&w), sum.projections[1].apply(&w));
        let expect = eb.reduce(
            &s.apply(&u)
                .iter()
                .zip(v)
                .map(|(p, q)| p + q)
                .collect::<Vec<_>>(),
        );
        ok &= beta.apply(&w) == expect;
    }
    out.push(Outcome::holds(names[1], ok));
    out.push(Outcome::holds(names[2], g.after(phi) == s.after(&f)));
    Ok(out)
}

fn towers(ctx: &Ctx, y: &Complex) -> Result<Vec<Outcome>> {
    let x = &ctx.x;
    let names = [
        "preenvelope-tower-stabilizes",
        "precover-tower-stabilizes",
        "growing-tower-inconclusive",
    ];
    if let Err(why) = closed_for_constructions(x) {
        return Ok(names.iter().map(|n| Outcome::vacuous(n, why.clone())).collect());
    }
    let k = ctx.k();
    let stages = y.len() + WINDOW + 1;
    let mut out = Vec::new();
    out.push(
        match (
            tower_extend(&truncations(y, stages, false), WINDOW, |c| preenvelope_with_fallback(c, x, 2 * k)),
            preenvelope_with_fallback(y, x, 2 * k),
        ) {
            (Ok(rep), Ok(direct)) => {
                let links = rep.stages[..rep.stages.len() - 1]
                    .iter()
                    .all(|s| matches!(s.output_link, Some(Link::Forward(_))));
                let same = rep.limit().is_some_and(|l| l.env == direct.env);
                Outcome::holds(names[0], links && same).with(format!("{:?}", rep.stabilization))
            }
            (Err(e), _) | (_, Err(e)) => Outcome::vacuous(names[0], e.to_string()),
        },
    );
    out.push(
        match (
            tower_extend(&truncations(y, stages, true), WINDOW, |c| precover_with_fallback(c, x, 2 * k)),
            precover_with_fallback(y, x, 2 * k),
        ) {
            (Ok(rep), Ok(direct)) => {
                let links = rep.stages[..rep.stages.len() - 1]
                    .iter()
                    .all(|s| matches!(s.output_link, Some(Link::Backward(_))));
                let same = rep.limit().is_some_and(|l| l.cover == direct.cover);
                Outcome::holds(names[1], links && same).with(format!("{:?}", rep.stabilization))
            }
            (Err(e), _) | (_, Err(e)) => Outcome::vacuous(names[1], e.to_string()),
        },
    );
    out.push(growing_control(ctx)?);
    Ok(out)
}

/// A complex with nonzero modules in every degree changes at every stage, so
/// no window of constant stages exists.
fn growing_control(ctx: &Ctx) -> Result<Outcome> {
    let check = "growing-tower-inconclusive";
    let mut rng = sample_rng(ctx.index as u64, 0);
    let mods: Vec<FinModule> = (0..WINDOW + 2).map(|_| sample::member(&mut rng, &ctx.x, ctx.k())).collect();
    if mods.iter().any(FinModule::is_zero) {
        return Ok(Outcome::vacuous(check, "class has no nonzero member"));
    }
    let long = sample::complex_on(&mut rng, ctx.ring(), 0, mods);
    let rep = tower_extend(&truncations(&long, long.len(), false), WINDOW, |c| Ok(c.clone()))?;
    Ok(Outcome::holds(
        check,
        matches!(rep.stabilization, Stabilization::Inconclusive { .. }) && rep.limit().is_none(),
    ))
}

fn injective_tower(ctx: &Ctx, y: &Complex) -> Result<Vec<Outcome>> {
    let x = &ctx.x;
    let names = ["stages-x-injective", "compatible-embeddings", "limit-monic-exact"];
    if let Err(why) = closed_for_constructions(x) {
        return Ok(names.iter().map(|n| Outcome::vacuous(n, why.clone())).collect());
    }
    let k = ctx.k();
    let tb = ctx.test_bounds();
    let stages = y.len() + WINDOW + 1;
    let rep = match tower_extend(&truncations(y, stages, false), WINDOW, |c| preenvelope_with_fallback(c, x, 2 * k)) {
        Ok(rep) => rep,
        Err(e) => return Ok(names.iter().map(|n| Outcome::vacuous(n, e.to_string())).collect()),
    };
    let bad = rep
        .stages
        .iter()
        .position(|s| !is_x_injective_complex(&s.result.env, x, &tb).holds);
    let mut out = vec![match bad {
        None => Outcome::new(names[0], Verdict::Pass).with(format!("test bounds {tb}")),
        Some(i) => Outcome::new(names[0], Verdict::Fail).with(format!("stage {i}")),
    }];
    let compatible = rep.stages[..rep.stages.len() - 1].iter().all(|s| match &s.output_link {
        Some(Link::Forward(u)) => match &s.input_link {
            Some(Link::Forward(j)) => u.after(&s.result.embedding) == rep_next(&rep, s).after(j),
            _ => false,
        },
        _ => false,
    });
    out.push(Outcome::holds(names[1], compatible));
    out.push(match rep.limit() {
        Some(l) => Outcome::holds(names[2], l.embedding.is_injective() && l.env.is_exact() && l.check_invariants(x).is_ok()),
        None => Outcome::new(names[2], Verdict::Fail).with(format!("{:?}", rep.stabilization)),
    });
    Ok(out)
}

/// The embedding of the stage following `s`.
fn rep_next<'a>(
    rep: &'a crate::constructors::TowerReport<crate::constructors::PreenvelopeResult>,
    s: &crate::constructors::TowerStage<crate::constructors::PreenvelopeResult>,
) -> &'a ChainMap {
    let i = rep
        .stages
        .iter()
        .position(|t| std::ptr::eq(t, s))
        .expect("stage belongs to the report");
    &rep.stages[i + 1].result.embedding
}

pub(crate) fn cross_oracle(id: &str, kind: OracleKind, config: &SuiteConfig) -> Result<OracleReport> {
    let mut rep = OracleReport {
        suite: id.to_string(),
        kind,
        compared: 0,
        skipped: 0,
        disagreements: Vec::new(),
    };
    let r = config.ring;
    let (l, k) = (config.bounds.length + 1, config.bounds.factors.max(1));
    let x = config.classes_for(id).remove(0);
    let mut record = |ok: Option<bool>, what: String| match ok {
        None => rep.skipped += 1,
        Some(true) => rep.compared += 1,
        Some(false) => {
            rep.compared += 1;
            rep.disagreements.push(what);
        }
    };
    match kind {
        OracleKind::ModuleExt => {
            let mods: Vec<FinModule> = brute::modules_up_to(r, 4)
                .into_iter()
                .filter(|m| m.order() <= 16)
                .collect();
            for a in &mods {
                for b in &mods {
                    let fast = ext1_module(a, b).order();
                    let slow = brute::yoneda_ext_count_by_summands(a, b, CAP).ok();
                    record(slow.map(|s| s == fast), format!("Ext¹({a}, {b}): {fast} vs {slow:?}"));
                }
            }
        }
        OracleKind::Splitting => {
            for i in 0..config.samples {
                let mut rng = sample_rng(config.seed, i);
                let a = sample::complex(&mut rng, r, l, k, STARTS);
                let b = sample::complex(&mut rng, r, l, k, STARTS);
                let f = if rng.gen_bool(0.4) {
                    random_homotopy(&mut rng, &a, &b).boundary()
                } else {
                    sample::chain_map(&mut rng, &a, &b)
                };
                let t = mapping_cone(&f);
                let fast = find_split(&t.inclusion, &t.projection)?;
                let slow = brute::chain_retraction_exists(&t.inclusion, CAP).ok();
                record(slow.map(|s| s == fast), format!("sample {i}: split {fast} vs {slow:?}"));
            }
        }
        OracleKind::ComplexExtDual => {
            for i in 0..config.samples {
                let mut rng = sample_rng(config.seed, i);
                let a = sample::complex(&mut rng, r, l, k, STARTS);
                let b = sample::complex(&mut rng, r, l, k, STARTS);
                let (p, q) = (ext1_complex(&a, &b).order(), ext1_complex_order_dual(&a, &b));
                record(Some(p == q), format!("sample {i}: {p} vs {q}"));
                let free = Complex::disk(&FinModule::free(r, rng.gen_range(1..=k)), rng.gen_range(STARTS.0..=STARTS.1));
                let e = ext1_complex(&free, &b).order();
                record(Some(e == 1), format!("sample {i}: Ext¹ from {free} has order {e}"));
            }
        }
        OracleKind::ChainMapCount => {
            for i in 0..config.samples {
                let mut rng = sample_rng(config.seed, i);
                let a = sample::xstar_complex(&mut rng, &x, l, k, STARTS);
                let b = sample::xstar_complex(&mut rng, &x, l, k, STARTS);
                let fast = chain_maps(&a, &b).module().order();
                let slow = brute::all_chain_maps(&a, &b, CAP).ok().map(|v| v.len() as u128);
                record(slow.map(|s| s == fast), format!("sample {i}: {fast} vs {slow:?}"));
            }
        }
    }
    Ok(rep)
}

fn find_split(inclusion: &ChainMap, projection: &ChainMap) -> Result<bool> {
    Ok(split_check(&ShortExact::new(inclusion.clone(), projection.clone())?).is_split())
}

#[cfg(test)]
mod tests {
    use super::super::{run_suite, SuiteConfig};
    use super::*;

    fn z4() -> Ring {
        Ring::new(4).unwrap()
    }

    #[test]
    fn example_2_10_reproduces() {
        let x = ModuleClass::finite(z4(), vec![FinModule::free(z4(), 1)], Bounds::default());
        let c = SuiteConfig::new(z4()).with_classes(vec![x]).with_samples(1).with_min_samples(1);
        let s = run_suite("example-2.10", &c).unwrap();
        assert!(s.passed(), "{s}");
    }

    #[test]
    fn pool_has_enough_entries() {
        let x = ModuleClass::all(z4(), Bounds::default());
        let y = Complex::sphere(&FinModule::cyclic(z4(), 2).unwrap(), 0);
        assert!(disk_pool(&x, &y, true, 2).len() >= POOL_MIN);
        assert!(disk_pool(&x, &y, false, 2).len() >= POOL_MIN);
    }
}
