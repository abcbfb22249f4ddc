//! Independent evidence for a classification: witness-word lower bounds,
//! t-shuffle upper-bound ledgers, and a brute-force area oracle for small
//! words.

mod oracle;
mod shuffle;
mod witness;

pub use oracle::{area_oracle, OracleOptions, OracleResult, OracleStatus, Presentation};
pub use shuffle::{fit_shuffle_constant, t_shuffle, LedgerLine, ShuffleCertificate};
pub use witness::{
    bg_lower_bound, cyclic_length_series, select_probe, witness_lower_bound, BgBound, WitnessFamily,
};

use num_bigint::BigUint;
use serde::Serializer;

pub(crate) fn ser_big_vec<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
