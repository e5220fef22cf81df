// Negated comparisons deliberately reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod medium;
pub mod mobius;
pub mod monodromy;
pub mod resolvent;
pub mod scattering;
