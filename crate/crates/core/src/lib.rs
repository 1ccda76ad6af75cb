//! Finite crossed modules, their bispaces, and Čech bibundles over finite
//! nerves.

pub mod bispace;
pub mod cech;
pub mod cli;
pub mod crossed;
pub mod doc;
pub mod fixtures;
pub mod group;
