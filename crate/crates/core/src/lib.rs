//! Discrete integrals over exact rationals, an axiom auditor, and the
//! canonical decompositions of comonotonically modular functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`]: exact rational arithmetic and its text form.
//! - [`setfunc`]: subsets, intervals and set functions (signed capacities,
//!   capacities, interval-valued capacities) with duals and validation.
//! - [`comono`]: tuples, sorting permutations, comonotonicity and the
//!   lattice/cut operations the axioms quantify over.
//! - [`integrals`]: Choquet, symmetric Choquet, Sugeno, their quasi-variants
//!   and the Shilkret integral.
//! - [`axioms`]: black-box checking of functional identities on grids.
//! - [`decompose`]: additive and max-min normal forms, and fitting of
//!   capacities and transforms from sampled values.
//! - [`gen`]: seeded random set functions.
//!
//! ```
//! use comodular::prelude::*;
//!
//! let v = SetFunction::from_table(2, vec![int(0), rat(3, 10), rat(1, 2), int(1)]).unwrap();
//! let x = Tuple::new(vec![rat(1, 5), rat(7, 10)]);
//! assert_eq!(choquet(&v, &x).unwrap(), rat(9, 20));
//! ```

pub mod axioms;
pub mod cli;
pub mod comono;
pub mod decompose;
pub mod error;
pub mod gen;
pub mod integrals;
pub mod scalar;
pub mod selftest;
pub mod setfunc;

pub use error::{Error, Result};

/// The commonly used items in one import.
pub mod prelude {
    pub use crate::axioms::{Audit, Auditor, Axiom, AxiomReport, BlackBox, GridSpec, Operands, Verdict, Witness};
    pub use crate::comono::{is_comonotonic, sorted_view, SortedView, Tuple};
    pub use crate::decompose::{Fit, Refusal};
    pub use crate::error::{Error, Result};
    pub use crate::integrals::{
        choquet, choquet_via_dual, quasi_choquet, quasi_sugeno, shilkret, sugeno, symmetric_choquet,
        symmetric_quasi_choquet, IValuedCapacity, Integral, Property, TransformFn,
    };
    pub use crate::scalar::{int, rat, Scalar};
    pub use crate::setfunc::{CapacityFile, Interval, Role, SetFunction, Subset};
}
