//! Finite modules over Z/m and the linear algebra behind them.

pub mod arith;
mod hom;
mod linsys;
mod matrix;
mod modsnf;
mod module;
mod morphism;
mod snf;
mod subquotient;

pub use hom::{hom_group, normalize_module, HomSpace};
pub use linsys::{Assignment, LinSys, Solved, SolutionSpace, Term, VarId};
pub use matrix::ZMat;
pub use modsnf::ModSnf;
pub use module::{Elements, FinModule, Ring, DEFAULT_ENUMERATION_CAP};
pub use morphism::{sum_map, Cokernel, DirectSum, Image, Kernel, Morphism, Pushout};
pub use snf::{snf, IntMatrix, SnfResult};

