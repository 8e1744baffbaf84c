//! Local contact algebras, their clusters and delta-ideals, and the
//! multi-valued morphism category dual to locally compact Hausdorff spaces,
//! checked exhaustively on finite carriers and by sampling on a symbolic
//! infinite carrier.

pub mod algebra;
pub mod axioms;
pub mod category;
pub mod clusters;
pub mod contact;
pub mod duality;
pub mod error;
pub mod ideals;
pub mod report;

pub use algebra::{
    AtomSet, BooleanAlgebra, Carrier, Element, ElementSet, FiniteCarrier, Part, TailCarrier,
    TailElem, MAX_ATOMS,
};
pub use category::MdhlcMorphism;
pub use clusters::{Cluster, TailFamily};
pub use contact::{
    Bounded, ContactMode, ContactSpec, FiniteLca, LcaStructure, Structure, TailLca,
    DEFAULT_TAIL_SAMPLE,
};
pub use duality::{ContinuousMap, DualSpace, FiniteSpace, LcaIso};
pub use error::{Error, Result};
pub use ideals::DeltaIdeal;
pub use report::{Check, Report, Status};
