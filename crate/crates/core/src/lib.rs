//! Spectral analysis of one-dimensional Schrodinger operators with point interactions.

pub mod criteria;
mod dense;
pub mod error;
pub mod golden;
pub mod jacobi;
pub mod seqmodel;
pub mod spectral;
pub mod string;
pub mod weyl;

pub use error::{Error, Result, SeqError};
