//! Ext¹ of modules and of complexes, with an explicit nonsplit extension.

use relhom::complexes::Complex;
use relhom::ext::{ext1_complex, ext1_complex_order_dual, ext1_module};
use relhom::zm::{FinModule, Ring};

fn main() -> relhom::Result<()> {
    let r = Ring::new(4)?;
    let two = FinModule::new(r, vec![2])?;
    let four = FinModule::new(r, vec![4])?;

    let e = ext1_module(&two, &two);
    println!("Ext^1((2), (2)) = {} of order {}", e.group, e.order());
    if let Some(w) = e.witness() {
        let (i, p) = w.module_maps();
        println!("  nonsplit: {} -> {} -> {}", i.source(), i.target(), p.target());
    }
    println!("Ext^1((2), (4)) has order {}", ext1_module(&two, &four).order());

    let x = Complex::sphere(&two, 0);
    let y = Complex::sphere(&two, 1);
    let z = ext1_complex(&x, &y);
    println!("Ext^1(S^0(2), S^1(2)) has order {} (dual computation: {})", z.order(), ext1_complex_order_dual(&x, &y));
    let d = Complex::disk(&two, 0);
    println!("Ext^1(D^0(2), S^0(2)) has order {}", ext1_complex(&d, &Complex::sphere(&two, 0)).order());
    Ok(())
}
