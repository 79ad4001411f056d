//! Milnor's link invariants computed through the Magnus expansion, and the
//! Dwyer number of null-homologous knots in connected sums of `S^1 x S^2`
//! given by surgery on an unlink.
//!
//! The pipeline runs bottom-up:
//!
//! * [`freegroup`] words and [`magnus`] truncated series,
//! * [`diagram`] PD codes, linking numbers and Wirtinger presentations,
//! * [`chen_milnor`] rewriting edge generators in terms of meridians,
//! * [`milnor`] tables of mu-bar invariants with their indeterminacy,
//! * [`dwyer`] surgery presentations and the resulting Dwyer numbers.
//!
//! [`oracle`] holds slow independent reimplementations used by the tests.

pub mod chen_milnor;
pub mod diagram;
pub mod dwyer;
pub mod error;
pub mod freegroup;
pub mod magnus;
pub mod milnor;
pub mod oracle;
pub mod scalar;

use num_bigint::BigInt;

pub use diagram::{parse_pd, LinkDiagram, LongitudeWord, PdCode, WirtingerPresentation};
pub use dwyer::{
    band_sum_bound, dwyer_number, family_k, knotification_bound, validate_surgery, DwyerReport,
    SurgeryPresentation,
};
pub use error::{Error, Result};
pub use freegroup::{format_word, parse_word, Generator, Letter, Word};
pub use magnus::{
    in_lcs_term, lcs_min_weight, magnus_expand, LcsDepthReport, MinWeight, MultiIndex,
    TruncatedSeries,
};
pub use milnor::{first_nonvanishing, milnor_table, mu_bar, MilnorTable, MilnorValue};
pub use scalar::Coefficient;

/// Series with arbitrary-precision coefficients.
pub type Series = TruncatedSeries<BigInt>;
/// Series with checked 64-bit coefficients.
pub type SeriesI64 = TruncatedSeries<i64>;

/// Limits that turn runaway computations into [`Error::Resource`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Longest word allowed during free-group substitution.
    pub max_letters: usize,
    /// Most terms allowed in any single truncated series.
    pub max_terms: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_letters: 1_000_000,
            max_terms: 5_000_000,
        }
    }
}

/// Default weight cap for invariant tables.
pub const DEFAULT_CAP: usize = 8;
