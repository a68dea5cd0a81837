//! Verification drivers: geometry files, random campaigns, reports and
//! self-test suites.

pub mod random;
pub mod report;
pub mod selftest;
pub mod spec_file;
