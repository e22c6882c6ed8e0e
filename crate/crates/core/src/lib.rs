pub mod catalog;
pub mod error;
pub mod exact;
pub mod foliation;
pub mod liealg;
pub mod realforms;
pub mod rootsys;
pub mod suites;

pub use error::{Error, Result};
