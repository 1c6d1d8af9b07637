//! Single parity-check product codes viewed as multi-kernel polar codes.

pub mod bec_analysis;
pub mod channels;
pub mod codes;
pub mod crc;
pub mod density_evolution;
pub mod enumerators;
pub mod error;
pub mod sc;
pub mod scl;
pub mod sim;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/erasure-analysis.md")]
    mod erasure_analysis {}
    #[doc = include_str!("../../../book/src/density-evolution.md")]
    mod density_evolution {}
    #[doc = include_str!("../../../book/src/enumerators.md")]
    mod enumerators {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
}
