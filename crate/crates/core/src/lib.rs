//! Exact algebra for webs of quadrics in projective 7-space.

pub mod exactnum;
pub mod groebner;
pub mod multipoly;
pub mod polymatrix;
pub mod webquadrics;
