//! Command-line front end: argument parsing, dispatch and report emission.
//!
//! Exit status is 0 on success, 1 when a verdict or predicate fails, 2 on a
//! usage error and 3 when an input cannot be read or built.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classes::{
    generate_epsilon_x, in_epsilon_x, is_dg_x_injective, is_dg_x_projective, is_x_injective_complex,
    is_x_injective_module, is_x_projective_complex, is_x_projective_module, Bounds, ModuleClass,
};
use crate::complexes::Complex;
use crate::constructors::{
    build_precover, build_preenvelope, certify_precover, certify_preenvelope, BoundedSearch, FreeCover, FreeHull,
    PrecoverResult, PreenvelopeResult, StepRecord,
};
use crate::corpus::{self, complex_text, matrix_text, module_text, CorpusDocument};
use crate::error::{Error, Result};
use crate::ext::{ext1_complex, ext1_complex_order_dual, ext1_module};
use crate::verifier::witness::{ChainMapData, ComplexData, MorphismData};
use crate::verifier::{cross_oracle, disk_pool, run_suite, SuiteConfig};
use crate::zm::{snf, IntMatrix, Morphism, Ring};

/// Cap on generated exact complexes sampled by the DG predicates.
const DG_SAMPLE_CAP: usize = 500;

#[derive(Debug, Parser)]
#[command(name = "relhom", version, about = "Relative homological algebra over Z/m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, clap::Args)]
pub struct Opts {
    /// Modulus m of the ring Z/m; an input file's `ring` takes precedence.
    #[arg(long, global = true)]
    pub ring: Option<u64>,
    /// `all`, `default`, a member list such as `[(2)], [(4)]`, or a class name from the input.
    #[arg(long, global = true)]
    pub class: Option<String>,
    /// Generation bounds as `L,k`.
    #[arg(long, global = true, value_parser = parse_bounds)]
    pub bounds: Option<Bounds>,
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one verification suite.
    Verify {
        suite: String,
        /// Also compare the suite's core computation with an independent one.
        #[arg(long)]
        oracle: bool,
    },
    /// Build a preenvelope or precover of a complex from the input.
    Construct {
        kind: ConstructKind,
        /// Name of the complex; defaults to the only one, or the two-term
        /// complex on the only morphism.
        #[arg(long)]
        complex: Option<String>,
    },
    /// Compute Ext¹ between the first two modules or complexes of the input.
    Ext {
        kind: ExtKind,
        names: Vec<String>,
    },
    /// Evaluate a predicate on every applicable object of the input.
    Check { predicate: Predicate },
    /// Smith normal form of every morphism and differential in the input.
    Snf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Preenvelope,
    Precover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtKind {
    Modules,
    Complexes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    XInjective,
    XProjective,
    EpsilonX,
    DgXInjective,
    DgXProjective,
    Closure,
}

fn parse_bounds(s: &str) -> std::result::Result<Bounds, String> {
    let (l, k) = s.split_once(',').ok_or("expected L,k")?;
    Ok(Bounds {
        length: l.trim().parse().map_err(|_| format!("bad length `{l}`"))?,
        factors: k.trim().parse().map_err(|_| format!("bad factor count `{k}`"))?,
    })
}

/// A rendered report and whether everything it checked held.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

/// Parses `args` and runs the command, writing the report. Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            let written = match &cli.opts.output {
                Some(path) => std::fs::write(path, &report.text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", report.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) if report.ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    3
                }
            }
        }
        Err(e @ Error::UnknownSuite(_)) => {
            eprintln!("error: {e}; known suites: {}", crate::verifier::SUITE_IDS.join(", "));
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

struct Env {
    doc: Option<CorpusDocument>,
    ring: Ring,
    bounds: Bounds,
    /// Whether `--bounds` was given, overriding bounds declared in the input.
    bounds_given: bool,
}

impl Env {
    fn load(opts: &Opts) -> Result<Self> {
        let doc = match &opts.input {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
                Some(corpus::parse(&text)?)
            }
            None => None,
        };
        let ring = match (&doc, opts.ring) {
            (Some(d), Some(m)) if d.ring.modulus() != m => {
                return Err(Error::Invalid(format!("--ring {m} conflicts with the input's {}", d.ring)))
            }
            (Some(d), _) => d.ring,
            (None, m) => Ring::new(m.unwrap_or(4))?,
        };
        Ok(Self {
            doc,
            ring,
            bounds: opts.bounds.unwrap_or_default(),
            bounds_given: opts.bounds.is_some(),
        })
    }

    fn doc(&self) -> Result<&CorpusDocument> {
        self.doc.as_ref().ok_or_else(|| Error::Invalid("this command needs --input".into()))
    }

    /// `None` when no class was requested and the input declares none.
    fn class(&self, spec: Option<&str>) -> Result<Option<ModuleClass>> {
        let from_doc = |name: Option<&str>| -> Option<ModuleClass> {
            let x = self.doc.as_ref()?.class(name).ok()?.clone();
            Some(if self.bounds_given { x.with_bounds(self.bounds) } else { x })
        };
        Ok(match spec {
            None => from_doc(None),
            Some("default") => None,
            Some("all") => Some(ModuleClass::all(self.ring, self.bounds)),
            Some(s) if s.trim_start().starts_with('[') => {
                let text = format!("ring {}; class X {{ members: {s} }}", self.ring.modulus());
                Some(corpus::parse(&text)?.classes[0].clone().with_bounds(self.bounds))
            }
            Some(name) => Some(from_doc(Some(name)).ok_or_else(|| Error::Invalid(format!("no class named `{name}`")))?),
        })
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let env = Env::load(&cli.opts)?;
    let records = cli.opts.format == Format::Records;
    match &cli.command {
        Command::Verify { suite, oracle } => verify(&env, &cli.opts, suite, *oracle),
        Command::Construct { kind, complex } => construct(&env, &cli.opts, *kind, complex.as_deref(), records),
        Command::Ext { kind, names } => ext(&env, *kind, names, records),
        Command::Check { predicate } => check(&env, &cli.opts, *predicate, records),
        Command::Snf => snf_report(&env, records),
    }
}

fn verify(env: &Env, opts: &Opts, id: &str, oracle: bool) -> Result<Report> {
    let mut config = SuiteConfig::new(env.ring)
        .with_bounds(env.bounds)
        .with_samples(opts.samples)
        .with_seed(opts.seed);
    if let Some(x) = env.class(opts.class.as_deref())? {
        config = config.with_classes(vec![x]);
    }
    let suite = run_suite(id, &config)?;
    let mut ok = suite.passed();
    let mut text = match opts.format {
        Format::Text => format!("{suite}\n"),
        Format::Records => {
            let mut s = suite.to_records();
            s.push('\n');
            s
        }
    };
    if oracle {
        let rep = cross_oracle(id, &config)?;
        ok &= rep.agrees();
        match opts.format {
            Format::Text => {
                let _ = writeln!(
                    text,
                    "oracle {:?}: {} compared, {} skipped, {} disagreements",
                    rep.kind,
                    rep.compared,
                    rep.skipped,
                    rep.disagreements.len()
                );
                for d in &rep.disagreements {
                    let _ = writeln!(text, "  {d}");
                }
            }
            Format::Records => {
                let _ = writeln!(text, "{}", serde_json::to_string(&rep).expect("oracle report serializes"));
            }
        }
    }
    Ok(Report { text, ok })
}

/// The named complex, the only complex, or the two-term complex on the only morphism.
fn input_complex(doc: &CorpusDocument, name: Option<&str>) -> Result<Complex> {
    if name.is_some() || !doc.complexes.is_empty() {
        return doc.complex(name).cloned();
    }
    let f = doc.morphism(None)?;
    Complex::new(doc.ring, 0, vec![f.source().clone(), f.target().clone()], vec![f.clone()])
}

#[derive(Serialize)]
struct StepData {
    degree: i64,
    provider: String,
    module_map: MorphismData,
    comparison: Option<MorphismData>,
}

#[derive(Serialize)]
struct ConstructData {
    kind: &'static str,
    class: String,
    input: ComplexData,
    output: ComplexData,
    map: ChainMapData,
    complement: ComplexData,
    steps: Vec<StepData>,
    invariants: std::result::Result<(), String>,
    certification: String,
}

fn steps_data(steps: &[StepRecord]) -> Vec<StepData> {
    steps
        .iter()
        .map(|s| StepData {
            degree: s.degree,
            provider: s.provider.clone(),
            module_map: MorphismData::of(&s.module_map),
            comparison: s.comparison.as_ref().map(MorphismData::of),
        })
        .collect()
}

fn construct(env: &Env, opts: &Opts, kind: ConstructKind, name: Option<&str>, records: bool) -> Result<Report> {
    let doc = env.doc()?;
    let y = input_complex(doc, name)?;
    let x = env
        .class(opts.class.as_deref())?
        .unwrap_or_else(|| ModuleClass::all(env.ring, env.bounds));
    let k = env.bounds.factors.max(1);
    let search = BoundedSearch {
        class: x.clone(),
        max_factors: 2 * k,
    };
    let data = match kind {
        ConstructKind::Preenvelope => {
            let res: PreenvelopeResult = build_preenvelope(&y, &x, &FreeHull).or_else(|_| build_preenvelope(&y, &x, &search))?;
            let pool = disk_pool(&x, &y, true, k);
            ConstructData {
                kind: "preenvelope",
                class: x.to_string(),
                input: ComplexData::of(&y),
                output: ComplexData::of(&res.env),
                map: ChainMapData::of(&res.embedding),
                complement: ComplexData::of(&res.cokernel),
                steps: steps_data(&res.certificate),
                invariants: res.check_invariants(&x).map_err(|e| e.to_string()),
                certification: format!("{:?}", certify_preenvelope(&res, &pool, usize::MAX)),
            }
        }
        ConstructKind::Precover => {
            let res: PrecoverResult = build_precover(&y, &x, &FreeCover).or_else(|_| build_precover(&y, &x, &search))?;
            let pool = disk_pool(&x, &y, false, k);
            ConstructData {
                kind: "precover",
                class: x.to_string(),
                input: ComplexData::of(&y),
                output: ComplexData::of(&res.cover),
                map: ChainMapData::of(&res.projection),
                complement: ComplexData::of(&res.kernel),
                steps: steps_data(&res.certificate),
                invariants: res.check_invariants(&x).map_err(|e| e.to_string()),
                certification: format!("{:?}", certify_precover(&res, &pool, usize::MAX)),
            }
        }
    };
    let ok = data.invariants.is_ok() && data.certification.starts_with("Certified");
    if records {
        return Ok(Report {
            text: format!("{}\n", serde_json::to_string(&data).expect("construction serializes")),
            ok,
        });
    }
    let ring = env.ring;
    let (out, map, comp) = (data.output.build(ring)?, data.map.build(ring)?, data.complement.build(ring)?);
    let mut t = String::new();
    let _ = writeln!(t, "# {} of the input over {} in class {}", data.kind, ring, data.class);
    let _ = writeln!(t, "{}", complex_text("Y", &y));
    let _ = writeln!(t, "{}", complex_text("E", &out));
    let (label, other) = if kind == ConstructKind::Preenvelope { ("cokernel", "C") } else { ("kernel", "K") };
    let _ = writeln!(t, "{}", complex_text(other, &comp));
    let _ = writeln!(t, "# map components");
    for (n, f) in map.components() {
        let _ = writeln!(t, "#   degree {n}: {} -> {} = {}", module_text(f.source()), module_text(f.target()), matrix_text(f));
    }
    let _ = writeln!(t, "# steps");
    for s in &data.steps {
        let _ = write!(t, "#   degree {} via {}: {}", s.degree, s.provider, matrix_text(&s.module_map.build(ring)?));
        if let Some(c) = &s.comparison {
            let _ = write!(t, ", comparison {}", matrix_text(&c.build(ring)?));
        }
        let _ = writeln!(t);
    }
    let _ = writeln!(
        t,
        "# invariants: {}",
        match &data.invariants {
            Ok(()) => format!("ok (monic or epic, exact, {label} in class)"),
            Err(e) => e.clone(),
        }
    );
    let _ = writeln!(t, "# certification: {}", data.certification);
    Ok(Report { text: t, ok })
}

#[derive(Serialize)]
struct ExtData {
    first: String,
    second: String,
    group: Vec<u64>,
    order: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_order: Option<u128>,
}

fn two_names<'a, T>(map: &'a indexmap::IndexMap<String, T>, names: &[String], what: &str) -> Result<[(&'a String, &'a T); 2]> {
    let get = |i: usize| -> Result<(&'a String, &'a T)> {
        match names.get(i) {
            Some(n) => map
                .get_key_value(n)
                .ok_or_else(|| Error::Invalid(format!("no {what} named `{n}`"))),
            None => map
                .get_index(i)
                .ok_or_else(|| Error::Invalid(format!("the input needs two {what}s"))),
        }
    };
    Ok([get(0)?, get(1)?])
}

fn ext(env: &Env, kind: ExtKind, names: &[String], records: bool) -> Result<Report> {
    let doc = env.doc()?;
    let data = match kind {
        ExtKind::Modules => {
            let [(a, ma), (b, mb)] = two_names(&doc.modules, names, "module")?;
            let e = ext1_module(ma, mb);
            ExtData {
                first: a.clone(),
                second: b.clone(),
                group: e.group.factors().to_vec(),
                order: e.order(),
                dual_order: None,
            }
        }
        ExtKind::Complexes => {
            let [(a, ca), (b, cb)] = two_names(&doc.complexes, names, "complex")?;
            let e = ext1_complex(ca, cb);
            ExtData {
                first: a.clone(),
                second: b.clone(),
                group: e.group.factors().to_vec(),
                order: e.order(),
                dual_order: Some(ext1_complex_order_dual(ca, cb)),
            }
        }
    };
    let ok = data.dual_order.is_none_or(|d| d == data.order);
    let text = if records {
        format!("{}\n", serde_json::to_string(&data).expect("ext report serializes"))
    } else {
        let g = crate::zm::FinModule::new(env.ring, data.group.clone())?;
        let mut s = format!("Ext^1({}, {}) = {}, order {}", data.first, data.second, module_text(&g), data.order);
        if let Some(d) = data.dual_order {
            let _ = write!(s, "; dual computation order {d}");
        }
        s.push('\n');
        s
    };
    Ok(Report { text, ok })
}

#[derive(Serialize)]
struct CheckLine {
    object: String,
    holds: bool,
    detail: String,
}

fn check(env: &Env, opts: &Opts, predicate: Predicate, records: bool) -> Result<Report> {
    let doc = env.doc()?;
    let x = env
        .class(opts.class.as_deref())?
        .ok_or_else(|| Error::Invalid("this predicate needs --class or a class in the input".into()))?;
    let mut lines = Vec::new();
    let eps = || generate_epsilon_x(&x, &env.bounds, DG_SAMPLE_CAP).complexes;
    match predicate {
        Predicate::XInjective | Predicate::XProjective => {
            let inj = predicate == Predicate::XInjective;
            for (n, m) in &doc.modules {
                let v = if inj { is_x_injective_module(m, &x) } else { is_x_projective_module(m, &x) };
                lines.push(CheckLine {
                    object: format!("module {n}"),
                    holds: v.holds,
                    detail: match v.failing {
                        Some(w) => format!("Ext^1 nonzero against {w}"),
                        None => format!("tested against {} members", v.tested),
                    },
                });
            }
            for (n, c) in &doc.complexes {
                let v = if inj {
                    is_x_injective_complex(c, &x, &env.bounds)
                } else {
                    is_x_projective_complex(c, &x, &env.bounds)
                };
                lines.push(CheckLine {
                    object: format!("complex {n}"),
                    holds: v.holds,
                    detail: match v.failing {
                        Some(w) => format!("Ext^1 nonzero against {w}"),
                        None => format!("{} test complexes, {}{}", v.tested, v.bounds, if v.truncated { ", truncated" } else { "" }),
                    },
                });
            }
        }
        Predicate::EpsilonX => {
            for (n, c) in &doc.complexes {
                let w = in_epsilon_x(c, &x);
                lines.push(CheckLine {
                    object: format!("complex {n}"),
                    holds: w.member(),
                    detail: match w.first_failure {
                        Some(d) => format!("not exact in degree {d}"),
                        None => format!("exact; kernels {}", w.kernels.iter().map(|(d, k, ok)| format!("{d}:{k}{}", if *ok { "" } else { "!" })).collect::<Vec<_>>().join(" ")),
                    },
                });
            }
        }
        Predicate::DgXInjective | Predicate::DgXProjective => {
            let sample = eps();
            for (n, c) in &doc.complexes {
                let v = if predicate == Predicate::DgXInjective {
                    is_dg_x_injective(c, &x, &sample)
                } else {
                    is_dg_x_projective(c, &x, &sample)
                };
                lines.push(CheckLine {
                    object: format!("complex {n}"),
                    holds: v.holds,
                    detail: match (&v.component_failure, &v.hom_failure) {
                        (Some((d, _)), _) => format!("component in degree {d} fails"),
                        (None, Some(e)) => format!("Hom complex not exact against {e}"),
                        (None, None) => format!("{} exact complexes sampled", v.sampled),
                    },
                });
            }
        }
        Predicate::Closure => {
            for c in x.closure_report() {
                lines.push(CheckLine {
                    object: c.flag.name().to_string(),
                    holds: c.closed,
                    detail: match &c.counterexample {
                        Some(w) => format!("counterexample {w}"),
                        None => format!("{} checked, {} outside the universe", c.checked, c.outside_universe),
                    },
                });
            }
        }
    }
    let ok = lines.iter().all(|l| l.holds);
    let mut text = String::new();
    for l in &lines {
        if records {
            let _ = writeln!(text, "{}", serde_json::to_string(l).expect("check line serializes"));
        } else {
            let _ = writeln!(text, "{}: {} ({})", l.object, if l.holds { "yes" } else { "no" }, l.detail);
        }
    }
    Ok(Report { text, ok })
}

#[derive(Serialize)]
struct SnfLine {
    name: String,
    diagonal: Vec<i128>,
    kernel: Vec<u64>,
    image: Vec<u64>,
    cokernel: Vec<u64>,
}

fn snf_line(name: String, f: &Morphism) -> SnfLine {
    let rows: Vec<Vec<i128>> = f.to_rows().iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let d = snf(&IntMatrix::from_rows_with_cols(&rows, f.source().rank())).diagonal();
    SnfLine {
        name,
        diagonal: d,
        kernel: f.kernel().module.factors().to_vec(),
        image: f.image().module.factors().to_vec(),
        cokernel: f.cokernel().module.factors().to_vec(),
    }
}

fn snf_report(env: &Env, records: bool) -> Result<Report> {
    let doc = env.doc()?;
    let mut lines = Vec::new();
    for (n, f) in &doc.morphisms {
        lines.push(snf_line(n.clone(), f));
    }
    for (n, c) in &doc.complexes {
        for (i, d) in c.diffs().iter().enumerate() {
            lines.push(snf_line(format!("{n}.d{}", c.lo() + i as i64), d));
        }
    }
    let mut text = String::new();
    for l in &lines {
        if records {
            let _ = writeln!(text, "{}", serde_json::to_string(l).expect("snf line serializes"));
        } else {
            let m = |f: &[u64]| module_text(&crate::zm::FinModule::new(env.ring, f.to_vec()).expect("computed module"));
            let _ = writeln!(
                text,
                "{}: integer diagonal {:?}; kernel {}, image {}, cokernel {}",
                l.name,
                l.diagonal,
                m(&l.kernel),
                m(&l.image),
                m(&l.cokernel)
            );
        }
    }
    Ok(Report { text, ok: true })
}
