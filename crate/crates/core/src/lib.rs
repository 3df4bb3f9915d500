//! Finite-model laboratory for precontact algebras and their dual
//! 2-precontact spaces.
//!
//! Every Boolean algebra here is finite and atomic, so elements are stored as
//! atom bitmasks and every precontact relation is stored by its restriction
//! to atoms (its *kernel*). Topological spaces are finite, hence determined by
//! the closures of their points. On top of that the crate builds the dual
//! objects and morphisms in both directions and checks every correspondence
//! of the duality on concrete instances.
//!
//! Module map:
//!
//! * [`boolean`]: algebras, elements, homomorphisms, filters, ultrafilters, grills.
//! * [`precontact`]: relation kernels, axiom reports, `C#`, non-tangential
//!   inclusion, clans, PCA-morphisms, isomorphism tests.
//! * [`topology`]: finite spaces, regular closed algebras, topological and
//!   mereotopological pairs, u-points.
//! * [`adjacency`]: adjacency spaces and the Stone adjacency representation.
//! * [`structures`]: 2-precontact spaces, 2-contact spaces, Stone 2-spaces,
//!   canonical constructions, mereocompactness.
//! * [`duality`]: the functors on objects and morphisms, the natural
//!   isomorphisms, and the specialisation suites.
//! * [`io`], [`random`], [`dot`], [`suite`]: instance files, seeded
//!   generators, Graphviz export, and the parallel property suite.

pub mod adjacency;
pub mod boolean;
pub mod dot;
pub mod duality;
mod error;
pub mod fixtures;
pub mod io;
mod limits;
pub mod mask;
pub mod precontact;
pub mod random;
pub mod report;
pub mod structures;
pub mod suite;
pub mod topology;

pub use adjacency::{AdjacencySpace, CanonicalAdjacency};
pub use boolean::{BooleanAlgebra, BooleanHom, Element, ElementFamily, FamilyKind};
pub use duality::{Iso, PcsMorphism};
pub use error::{Error, Result};
pub use io::{Instance, Model};
pub use limits::{limits, Limits};
pub use mask::Mask;
pub use precontact::{AxiomReport, Clan, PcaMorphism, PrecontactAlgebra, RelationKernel};
pub use random::{Constraint, RandomSpec};
pub use report::{Check, DualityReport};
pub use structures::{CanonicalAlgebra, CanonicalSpace, TwoContactSpace, TwoPrecontactSpace};
pub use topology::{FiniteSpace, MereotopologicalPair, RegionAlgebra, TopologicalPair};
