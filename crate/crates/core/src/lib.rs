//! Exact computation of singularity invariants of isolated hypersurface
//! singularities and of projective hypersurfaces with isolated singular
//! points: Milnor and Tjurina numbers, spectra of quasi-homogeneous germs,
//! Hodge numbers of the Milnor fibre, Jacobian-ring dimensions and the
//! dimension bookkeeping that compares both sides.

pub mod corpus;
pub mod criteria;
pub mod jacglobal;
pub mod linalg;
pub mod local;
pub mod poly;
pub mod spectrum;

pub use criteria::{Catalog, ClassVerdict, SpectralSource, SurfaceResolutionData};
pub use jacglobal::{HypersurfaceRecord, SequenceDims};
pub use linalg::RationalMatrix;
pub use local::{LocalError, LocalGerm, MilnorAlgebraBasis, StandardBasis};
pub use poly::{ExponentVector, MonomialOrder, Polynomial, Rational};
pub use spectrum::{HodgeNumbers, Spectrum, WeightVector};
