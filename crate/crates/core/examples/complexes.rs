//! Complexes, mapping cones and null-homotopies.
//!
//! A map is null-homotopic exactly when the cone sequence `Y -> M(f) -> X[1]` splits.

use relhom::complexes::{chain_maps, is_null_homotopic, mapping_cone, ChainMap, Complex};
use relhom::ext::{split_check, ShortExact};
use relhom::zm::{FinModule, Ring};

fn main() -> relhom::Result<()> {
    let r = Ring::new(4)?;
    let two = FinModule::new(r, vec![2])?;
    let four = FinModule::new(r, vec![4])?;

    let x = Complex::sphere(&two, 0);
    let disk = Complex::disk(&four, -1);
    let sphere = Complex::sphere(&four, 0);
    println!("X = {x}\nD = {disk}\nS = {sphere}");

    for (name, y) in [("D", &disk), ("S", &sphere)] {
        for f in chain_maps(&x, y).generators() {
            let cone = mapping_cone(&f);
            let seq = ShortExact::new(cone.inclusion.clone(), cone.projection.clone())?;
            let split = split_check(&seq).is_split();
            let null = is_null_homotopic(&f);
            println!("X -> {name}: cone {}, map {}", if split { "splits" } else { "does not split" }, match &null {
                Some(_) => "null-homotopic",
                None => "not null-homotopic",
            });
            if let Some(s) = null {
                assert!(s.witnesses(&f));
            }
        }
    }

    let id = ChainMap::identity(&disk);
    println!("identity of a disk is null-homotopic: {}", is_null_homotopic(&id).is_some());
    println!("shifted disk D[1] = {}", disk.shift(1));
    Ok(())
}
