//! Support library for the `krlip` binary: space generators and report
//! emission. The command definitions live in the binary itself.

pub mod gen;
pub mod report;
