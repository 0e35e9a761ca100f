//! Finite universal-algebra workbench: operation tables and terms, central
//! and diagonal relations, compatible-function enumeration, polynomial clone
//! closure with witness terms, and the strict-join algebra `R` over a
//! lattice with its term synthesis.
//!
//! ```
//! use polyclone::{audit::default_r_algebra, clone::generate_clone_level, EnumerationCaps};
//!
//! let r3 = default_r_algebra(3).unwrap();
//! let unary = generate_clone_level(&r3, 1, &EnumerationCaps::default()).unwrap();
//! assert_eq!(unary.len(), 11);
//! ```

pub mod audit;
mod caps;
pub mod central_algebra;
pub mod clone;
mod error;
pub mod kernel;
pub mod pol;
pub mod relations;

pub use caps::{CapHit, EnumerationCaps, SearchStatus};
pub use error::{Error, Result};
pub use kernel::{Algebra, Elem, OpTable, Term};

// The guide's chapters, compiled as doc-tests so their snippets stay in sync
// with the API. One module per chapter keeps failures attributable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tables-and-terms.md")]
    mod tables_and_terms {}
    #[doc = include_str!("../../../book/src/central-relations.md")]
    mod central_relations {}
    #[doc = include_str!("../../../book/src/compatibility.md")]
    mod compatibility {}
    #[doc = include_str!("../../../book/src/polynomial-clones.md")]
    mod polynomial_clones {}
    #[doc = include_str!("../../../book/src/r-algebra.md")]
    mod r_algebra {}
    #[doc = include_str!("../../../book/src/audits.md")]
    mod audits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
