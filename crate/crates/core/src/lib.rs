// Licensed under the Apache-2.0 license

pub mod catalog;
pub mod cli;
pub mod compat;
pub mod der_x509;
pub mod report;
pub mod scanner;
pub mod sim;
pub mod synth;
