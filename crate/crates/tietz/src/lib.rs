//! Bound-state spectra and radial wavefunctions for the improved Tietz
//! diatomic-molecule potential, with an independent finite-difference
//! Schrödinger oracle for verification.

pub mod grid;
pub mod oracle;
pub mod potential;
pub mod specfun;
pub mod spectrum;
pub mod wavefn;
