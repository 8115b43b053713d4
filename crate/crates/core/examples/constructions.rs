//! Preenvelopes and precovers of a two-term complex read from a corpus file.

use relhom::classes::{Bounds, ModuleClass};
use relhom::constructors::{
    build_precover, build_preenvelope, certify_preenvelope, compare_preenvelopes, FreeCover, FreeHull, PaddedHull,
};
use relhom::verifier::disk_pool;

fn main() -> relhom::Result<()> {
    let doc = relhom::corpus::parse(include_str!("data/ex312.corpus"))?;
    let y = doc.complex(Some("Y"))?;
    let x = ModuleClass::all(doc.ring, Bounds::default());

    let e = build_preenvelope(y, &x, &FreeHull)?;
    println!("Y = {y}");
    println!("E = {}", e.env);
    println!("cokernel = {}", e.cokernel);
    for s in &e.certificate {
        println!("  degree {} via {}: comparison {:?}", s.degree, s.provider, s.comparison.as_ref().map(|m| m.to_rows()));
    }
    e.check_invariants(&x)?;
    let pool = disk_pool(&x, y, true, 2);
    println!("certified against {} disks: {:?}", pool.len(), certify_preenvelope(&e, &pool, usize::MAX));

    let padded = build_preenvelope(y, &x, &PaddedHull { extra: 1 })?;
    println!("padded E = {}", padded.env);
    println!("homotopy equivalent: {}", compare_preenvelopes(&e, &padded).is_some());

    let p = build_precover(y, &x, &FreeCover)?;
    println!("P = {}", p.cover);
    println!("kernel = {}", p.kernel);
    Ok(())
}
