//! Denniston maximal arcs in PG(2, 2^h) with a cyclic automorphism group fixing
//! the nucleus, and the extended cyclic two-weight codes attached to them.
//!
//! Every count claimed for these objects (arc sizes, group orders, weight
//! enumerators, dual distances, design parameters) can be recomputed here by
//! exhaustive search; see [`suite`] for the certificate runner.

pub mod arcs;
pub mod codes;
pub mod combinatorics;
pub mod designs;
pub mod error;
pub mod field;
pub mod io;
pub mod plane;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec, FieldTower};
pub use plane::{Collineation, Plane, ProjLine, ProjPoint};
