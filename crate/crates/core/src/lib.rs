//! Exact computations for the symplectic topology of rational ruled surfaces:
//! localization characters of Hirzebruch surfaces, Euler classes of isotropy
//! representations, and graded cohomology rings of classifying spaces.

pub mod algebra;
pub mod catalog;
pub mod graded;
pub mod localization;
pub mod torus;
pub mod verify;
