//! Finite-operation kernel: carriers, operation tables, terms and evaluation.

mod algebra;
mod table;
mod term;

pub use algebra::Algebra;
pub(crate) use table::checked_power;
pub use table::{decode_index, tuple_index, Carrier, Elem, OpTable, Points, MAX_CARRIER};
pub use term::Term;
