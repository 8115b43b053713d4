//! Parsing and writing the corpus text format.

use relhom::corpus::{parse, serialize};

fn main() {
    let text = "\
ring 4;
module A = (2);
module B = (4);
morphism phi : A -> B = [[2]];
complex Y { start: 0; modules: A, B; diffs: phi }
class X { members: [(2)], [(4)]; bounds: L=2 k=1 }
";
    let doc = parse(text).expect("valid corpus");
    print!("{}", serialize(&doc));
    assert_eq!(parse(&serialize(&doc)).expect("round trip"), doc);

    for bad in ["ring 4; module A = (3);", "ring 4;\nmodule A = (2);\nmorphism f : A -> (4) = [[1]];"] {
        match parse(bad) {
            Ok(_) => println!("accepted"),
            Err(e) => println!("error at {e}"),
        }
    }
}
