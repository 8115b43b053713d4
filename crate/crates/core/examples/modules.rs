//! Finite Z/m-modules, morphisms between them and their kernels, images and cokernels.
//!
//! ```bash
//! cargo run --example modules
//! ```

use relhom::zm::{snf, FinModule, HomSpace, IntMatrix, Morphism, Ring};

fn main() -> relhom::Result<()> {
    let r = Ring::new(12)?;
    let a = FinModule::new(r, vec![2, 6])?;
    let b = FinModule::new(r, vec![12])?;
    println!("A = {a}, order {}", a.order());
    println!("B = {b}, order {}", b.order());

    // one row per invariant factor of the target
    let f = Morphism::new(&a, &b, &[vec![6, 2]])?;
    println!("f: A -> B = {:?}", f.to_rows());
    println!("  kernel   {}", f.kernel().module);
    println!("  image    {}", f.image().module);
    println!("  cokernel {}", f.cokernel().module);

    match Morphism::new(&a, &b, &[vec![1, 0]]) {
        Ok(_) => println!("unexpectedly well defined"),
        Err(e) => println!("rejected: {e}"),
    }

    let h = HomSpace::new(&a, &b);
    println!("Hom(A, B) = {} with {} generators", h.module(), h.basis().len());

    let m = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("Smith form diagonal of a 3x3 integer matrix: {:?}", snf(&m).diagonal());
    Ok(())
}
