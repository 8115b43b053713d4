//! Classes of modules, closure checks and relative injectivity.

use relhom::classes::{
    generate_epsilon_x, in_epsilon_x, is_x_injective_complex, is_x_injective_module, Bounds, ModuleClass,
};
use relhom::complexes::Complex;
use relhom::zm::{FinModule, Morphism, Ring};

fn main() -> relhom::Result<()> {
    let r = Ring::new(4)?;
    let two = FinModule::new(r, vec![2])?;
    let four = FinModule::new(r, vec![4])?;
    let bounds = Bounds { length: 2, factors: 1 };
    let x = ModuleClass::finite(r, vec![two.clone(), four.clone()], bounds);
    println!("X = {x}");
    for c in x.closure_report() {
        println!("  closed under {:<16} {}", c.flag.name(), c.closed);
    }

    for m in [&two, &four] {
        let v = is_x_injective_module(m, &x);
        println!("{m} is X-injective: {}", v.holds);
    }

    // 0 -> R -> R ⊕ R -> 0 with a ↦ (0, a)
    let free2 = FinModule::free(r, 2);
    let f = Morphism::new(&four, &free2, &[vec![0], vec![1]])?;
    let y = Complex::new(r, 0, vec![four.clone(), free2], vec![f])?;
    let v = is_x_injective_complex(&y, &x, &bounds);
    println!("{y} is X-injective: {} (first failing test {:?})", v.holds, v.failing);

    let eps = generate_epsilon_x(&x, &bounds, 500);
    println!("{} bounded exact complexes with kernels in X", eps.complexes.len());
    println!("D^0(2) in the exact class: {}", in_epsilon_x(&Complex::disk(&two, 0), &x).member());
    Ok(())
}
