use std::path::PathBuf;

use relhom::classes::{Bounds, ModuleClass};
use relhom::constructors::{build_preenvelope, FreeHull};
use relhom::corpus::{parse, serialize};
use relhom::zm::FinModule;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

#[test]
fn corpus_file_round_trips() {
    let doc = parse(&read("ex312.corpus")).unwrap();
    assert_eq!(doc.ring.modulus(), 4);
    assert_eq!(doc.complex(Some("Y")).unwrap().len(), 2);
    assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
}

#[test]
fn cli_output_matches_golden() {
    let out = std::env::temp_dir().join(format!("relhom-golden-{}.txt", std::process::id()));
    let args = [
        "relhom".to_string(),
        "construct".into(),
        "preenvelope".into(),
        "--input".into(),
        data("ex312.corpus").display().to_string(),
        "--output".into(),
        out.display().to_string(),
    ];
    assert_eq!(relhom::cli::main_with(args), 0);
    let got = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(got, read("ex312.golden"));
}

#[test]
fn glued_differentials_have_the_expected_form() {
    let doc = parse(&read("ex312.corpus")).unwrap();
    let y = doc.complex(Some("Y")).unwrap();
    let r = doc.ring;
    let m = r.modulus();
    let x = ModuleClass::all(r, Bounds::default());
    let e = build_preenvelope(y, &x, &FreeHull).unwrap();

    let g = &e.certificate[0].module_map;
    let f = &e.certificate[1].module_map;
    let sigma = e.certificate[1].comparison.as_ref().unwrap();
    assert_eq!(g.to_rows(), vec![vec![1]]);
    assert_eq!(f.to_rows(), vec![vec![2]]);
    // g φ = σ f
    assert_eq!(g.after(&y.diff(0)), sigma.after(f));

    let s = sigma.to_rows()[0][0];
    let four = FinModule::free(r, 1);
    assert_eq!(e.env.lo(), -1);
    assert_eq!(e.env.modules(), &[four.clone(), FinModule::free(r, 2), four][..]);
    // α(x) = (x, -σx), β = σ p1 + p2
    assert_eq!(e.env.diff(-1).to_rows(), vec![vec![1], vec![(m - s) % m]]);
    assert_eq!(e.env.diff(0).to_rows(), vec![vec![s, 1]]);
    assert!(e.env.is_exact());
    assert!(e.embedding.is_injective());
}
