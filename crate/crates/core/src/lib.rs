pub mod cli;
pub mod complex;
pub mod homology;
pub mod newton;
pub mod snc;
pub mod transforms;
