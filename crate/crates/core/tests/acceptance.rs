//! One line per acceptance criterion. Every tolerance is an exact count.

use std::path::PathBuf;

use relhom::classes::{Bounds, ModuleClass};
use relhom::constructors::{build_preenvelope, FreeHull};
use relhom::corpus::parse;
use relhom::ext::ext1_module;
use relhom::verifier::{cross_oracle, run_suite, CheckSuite, SuiteConfig, Verdict, SUITE_IDS};
use relhom::zm::{FinModule, Ring};

const LEMMA_2_13_SAMPLES: usize = 200;
const LEMMA_2_13_SEED: u64 = 7;
const DUAL_PAIRS: usize = 100;
const IMPLICATION_SAMPLES: usize = 100;
const BUILDER_INPUTS: usize = 50;
const UNIQUENESS_INPUTS: usize = 20;
const CORROBORATION_SAMPLES: usize = 50;
const DETERMINISM_SAMPLES: usize = 8;

struct Line {
    id: usize,
    ok: bool,
    what: &'static str,
    detail: String,
}

fn z(m: u64) -> Ring {
    Ring::new(m).unwrap()
}

fn module(r: Ring, f: &[u64]) -> FinModule {
    FinModule::new(r, f.to_vec()).unwrap()
}

fn count(s: &CheckSuite, check: &str, v: Verdict) -> usize {
    s.records.iter().filter(|r| r.check == check && r.verdict == v).count()
}

fn fails(s: &CheckSuite) -> usize {
    s.count(Verdict::Fail)
}

fn lemma_2_13() -> Line {
    let cfg = SuiteConfig::new(z(4))
        .with_bounds(Bounds { length: 3, factors: 3 })
        .with_samples(LEMMA_2_13_SAMPLES)
        .with_seed(LEMMA_2_13_SEED)
        .with_min_samples(LEMMA_2_13_SAMPLES);
    let s = run_suite("lemma-2.13", &cfg).unwrap();
    let agree = count(&s, "cone-splits-iff-null-homotopic", Verdict::Pass);
    let witnessed = fails(&s) == 0;
    Line {
        id: 1,
        ok: agree == LEMMA_2_13_SAMPLES && witnessed && s.passed(),
        what: "cone splits iff null-homotopic",
        detail: format!("{agree}/{LEMMA_2_13_SAMPLES} agreements, {} failures", fails(&s)),
    }
}

fn module_ext() -> Line {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in [4, 8] {
        let rep = cross_oracle("lemma-2.14", &SuiteConfig::new(z(m))).unwrap();
        ok &= rep.agrees() && rep.skipped == 0;
        detail.push(format!("Z/{m}: {} pairs, {} disagreements", rep.compared, rep.disagreements.len()));
    }
    let two = module(z(4), &[2]);
    let order = ext1_module(&two, &two).order();
    ok &= order == 2;
    detail.push(format!("|Ext^1((2),(2))| = {order}"));
    Line { id: 2, ok, what: "module Ext agrees with extension enumeration", detail: detail.join("; ") }
}

fn complex_ext_dual() -> Line {
    let cfg = SuiteConfig::new(z(4)).with_samples(DUAL_PAIRS).with_seed(3);
    let rep = cross_oracle("lemma-2.15", &cfg).unwrap();
    Line {
        id: 3,
        ok: rep.agrees() && rep.compared >= DUAL_PAIRS,
        what: "complex Ext by presentation and co-presentation",
        detail: format!("{} comparisons, {} disagreements", rep.compared, rep.disagreements.len()),
    }
}

fn lemma_2_15() -> Line {
    let cfg = SuiteConfig::new(z(4)).with_samples(IMPLICATION_SAMPLES).with_seed(4);
    let s = run_suite("lemma-2.15", &cfg).unwrap();
    Line {
        id: 4,
        ok: s.passed() && fails(&s) == 0,
        what: "Ext vanishing gives an exact Hom complex",
        detail: format!("{} informative samples, {} counterexamples", s.informative_samples(), fails(&s)),
    }
}

fn lemmas_2_8_2_12() -> Line {
    let cfg = SuiteConfig::new(z(4)).with_samples(IMPLICATION_SAMPLES).with_seed(5);
    let a = run_suite("lemma-2.8", &cfg).unwrap();
    let b = run_suite("lemma-2.12", &cfg).unwrap();
    Line {
        id: 5,
        ok: a.passed() && b.passed(),
        what: "relatively injective complexes have relatively injective components",
        detail: format!(
            "injective: {} informative, {} counterexamples; orthogonal: {} informative, {} counterexamples",
            a.informative_samples(),
            fails(&a),
            b.informative_samples(),
            fails(&b)
        ),
    }
}

fn example_2_10() -> Line {
    let r = z(4);
    let x = ModuleClass::finite(r, vec![FinModule::free(r, 1)], Bounds::default());
    let cfg = SuiteConfig::new(r).with_classes(vec![x]).with_samples(1).with_min_samples(1);
    let s = run_suite("example-2.10", &cfg).unwrap();
    let checks = ["complex-fails-test", "cokernel-obstructs", "map-does-not-extend"];
    let held: Vec<bool> = checks.iter().map(|c| count(&s, c, Verdict::Pass) == 1).collect();
    Line {
        id: 6,
        ok: held.iter().all(|&h| h) && s.passed(),
        what: "0 -> R -> R+R -> 0 is not relatively injective",
        detail: checks.iter().zip(&held).map(|(c, h)| format!("{c}: {h}")).collect::<Vec<_>>().join(", "),
    }
}

fn builders() -> Line {
    let cfg = SuiteConfig::new(z(4))
        .with_samples(BUILDER_INPUTS)
        .with_seed(6)
        .with_min_samples(BUILDER_INPUTS);
    let mut ok = true;
    let mut detail = Vec::new();
    for id in ["lemma-3.5", "lemma-3.3"] {
        let s = run_suite(id, &cfg).unwrap();
        let inv = count(&s, "invariants", Verdict::Pass);
        let cert = count(&s, "certified-against-pool", Verdict::Pass);
        ok &= inv == BUILDER_INPUTS && cert == BUILDER_INPUTS && s.passed();
        detail.push(format!("{id}: invariants {inv}/{BUILDER_INPUTS}, certified {cert}/{BUILDER_INPUTS}"));
    }
    Line { id: 7, ok, what: "preenvelope and precover builders", detail: detail.join("; ") }
}

fn golden() -> Line {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/ex312.corpus");
    let doc = parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let y = doc.complex(Some("Y")).unwrap();
    let r = doc.ring;
    let m = r.modulus();
    let e = build_preenvelope(y, &ModuleClass::all(r, Bounds::default()), &FreeHull).unwrap();
    let s = e.certificate[1].comparison.as_ref().unwrap().to_rows()[0][0];
    let shape = e.env.lo() == -1 && e.env.modules().iter().map(FinModule::rank).collect::<Vec<_>>() == [1, 2, 1];
    let alpha = e.env.diff(-1).to_rows() == vec![vec![1], vec![(m - s) % m]];
    let beta = e.env.diff(0).to_rows() == vec![vec![s, 1]];
    Line {
        id: 8,
        ok: shape && alpha && beta,
        what: "glued two-term preenvelope",
        detail: format!("s = {s}, shape {shape}, alpha {alpha}, beta {beta}"),
    }
}

fn uniqueness() -> Line {
    let cfg = SuiteConfig::new(z(4))
        .with_samples(UNIQUENESS_INPUTS)
        .with_seed(8)
        .with_min_samples(UNIQUENESS_INPUTS);
    let mut ok = true;
    let mut detail = Vec::new();
    for (id, check) in [("lemma-3.1", "map-is-null-homotopic"), ("lemma-3.2", "map-is-null-homotopic")] {
        let s = run_suite(id, &cfg).unwrap();
        let n = count(&s, check, Verdict::Pass);
        ok &= n == UNIQUENESS_INPUTS && s.passed();
        detail.push(format!("{id}: {n}/{UNIQUENESS_INPUTS}"));
    }
    Line { id: 9, ok, what: "comparison maps are unique up to homotopy", detail: detail.join("; ") }
}

fn theorem_2_16() -> Line {
    let r = z(4);
    let x = ModuleClass::finite(r, vec![module(r, &[2]), module(r, &[4])], Bounds::default());
    let cfg = SuiteConfig::new(r)
        .with_classes(vec![x])
        .with_samples(CORROBORATION_SAMPLES)
        .with_seed(9);
    let s = run_suite("theorem-2.16", &cfg).unwrap();
    let disks = count(&s, "disk-sums-dg-and-orthogonal", Verdict::Pass);
    let conv = count(&s, "orthogonal-implies-dg", Verdict::Corroborated);
    Line {
        id: 10,
        ok: s.passed() && fails(&s) == 0 && disks > 0,
        what: "disk sums are orthogonal to the exact class",
        detail: format!("{disks} disk sums, {conv} corroborated, {} failures", fails(&s)),
    }
}

fn determinism() -> Line {
    let cfg = SuiteConfig::new(z(4)).with_samples(DETERMINISM_SAMPLES).with_seed(11);
    let differ: Vec<&str> = SUITE_IDS
        .iter()
        .copied()
        .filter(|id| {
            let a = run_suite(id, &cfg).unwrap();
            let b = run_suite(id, &cfg).unwrap();
            a.to_records() != b.to_records() || a.to_string() != b.to_string()
        })
        .collect();
    Line {
        id: 11,
        ok: differ.is_empty(),
        what: "reruns are byte-identical",
        detail: format!("{} suites, differing: {differ:?}", SUITE_IDS.len()),
    }
}

fn main() {
    let criteria: [fn() -> Line; 11] = [
        lemma_2_13,
        module_ext,
        complex_ext_dual,
        lemma_2_15,
        lemmas_2_8_2_12,
        example_2_10,
        builders,
        golden,
        uniqueness,
        theorem_2_16,
        determinism,
    ];
    let mut failed = Vec::new();
    for c in criteria {
        let t = std::time::Instant::now();
        let l = c();
        println!(
            "criterion {:>2} {} {}: {} ({:.1?})",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.what,
            l.detail,
            t.elapsed()
        );
        if !l.ok {
            failed.push(l.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
