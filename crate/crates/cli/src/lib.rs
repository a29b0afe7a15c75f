//! Library side of the germlab CLI: germ-file I/O, the fixture corpus,
//! report assembly and the reproduction suites.

pub mod fixtures;
pub mod germfile;
pub mod report;
pub mod reproduce;

pub use germfile::GermFile;
