#![allow(dead_code)]

pub mod fixture;
pub mod instances;
pub mod oracle;

#[allow(unused_imports)]
pub use fixture::*;
