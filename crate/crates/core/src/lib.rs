//! Exact computation in small finite rings: constructions, element
//! classification, nil-clean style decompositions and ring-level property
//! deciders.

pub mod classify;
pub mod decompose;
pub mod expr;
pub mod properties;
pub mod report;
pub mod ring;

pub use classify::{classify_element, ClassReport, ElemSet, ElementClass};
pub use decompose::{decompose, Decomposition, Kind, Scope};
pub use expr::{build_str, parse_ring_expr, RingExpr};
pub use properties::{check_property, theorem_suite, Property, PropertyVerdict, SuiteReport};
pub use ring::{Construction, Elem, FiniteRing, RingError, RingFactory};
