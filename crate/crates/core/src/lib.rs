//! Davis complexes of Coxeter systems as chamber systems, wall hierarchies
//! with Mayer–Vietoris certificates, and exact Euler-characteristic invariants.

pub mod coxeter;
pub mod davis;
pub mod error;
pub mod euler;
pub mod hierarchy;
pub mod limits;
pub mod nerve;
pub mod simplicial;
pub mod trick;

pub use coxeter::{CayleyBall, CoxeterSystem, Element, FiniteType, Gen, Order, Word};
pub use error::{Error, Result};
pub use simplicial::{HomologyProfile, SimplicialComplex};
pub use davis::{basic_construction, ChamberComplex, FiniteQuotient, Realization, Wall};
pub use euler::{chi_orb, charney_davis, euler_of_complex, Rational};
pub use hierarchy::{check_tidy, induced_hierarchy, run_hierarchy, HierarchyTrace, WallFamily};
pub use nerve::{build_chamber, MirroredComplex, Nerve};
pub use trick::{prepare_mirrored_manifold, run_trick, MirroredManifold, TrickOutput};
