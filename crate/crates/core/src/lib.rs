//! Finite projective geometry over GF(q^2): Hermitian varieties,
//! degree-(q+1) hypersurfaces and their intersection censuses.

pub mod gf;
pub mod projgeom;
pub mod hermitian;
pub mod polyhyp;
pub mod census;
pub mod bounds;
pub mod cli;
