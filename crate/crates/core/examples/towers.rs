//! Towers of truncations and their stabilization.

use relhom::classes::{Bounds, ModuleClass};
use relhom::constructors::{build_preenvelope, tower_extend, truncations, FreeHull, Link};
use relhom::complexes::Complex;
use relhom::zm::{FinModule, Morphism, Ring};

fn main() -> relhom::Result<()> {
    let r = Ring::new(4)?;
    let two = FinModule::new(r, vec![2])?;
    let four = FinModule::new(r, vec![4])?;
    let f = Morphism::new(&two, &four, &[vec![2]])?;
    let g = Morphism::new(&four, &two, &[vec![0]])?;
    let y = Complex::new(r, 0, vec![two.clone(), four, two], vec![f, g])?;
    let x = ModuleClass::all(r, Bounds::default());

    let tower = truncations(&y, y.len() + 2, false);
    let rep = tower_extend(&tower, 2, |c| build_preenvelope(c, &x, &FreeHull))?;
    for (i, s) in rep.stages.iter().enumerate() {
        let link = match &s.output_link {
            Some(Link::Forward(_)) => "forward",
            Some(Link::Backward(_)) => "backward",
            Some(Link::Unrelated) => "unrelated",
            None => "-",
        };
        println!("stage {i}: {} => {} [{link}]", s.input, s.result.env);
    }
    println!("{:?}", rep.stabilization);
    Ok(())
}
