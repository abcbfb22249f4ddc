//! Dehn functions of mapping tori `G x|_Phi Z` for automorphisms of small
//! right-angled Artin groups: `Z^k`, `F_2`, `F_2 x Z`, `Z^2 * Z`, `F_k x F_l`
//! and (partially) `F_k x Z`.
//!
//! Conventions: `x^h = h^-1 x h`, `[x, y] = x^-1 y^-1 x y`, and the stable
//! letter acts by `t^-1 x t = Phi(x)`.

pub mod autos;
pub mod certify;
pub mod classify;
pub mod corridors;
pub mod error;
pub mod group;
pub mod growth;
pub mod intmat;
pub mod normalize;
pub mod report;
pub mod specfile;
pub mod words;

pub use certify::{
    area_oracle, t_shuffle, witness_lower_bound, OracleOptions, OracleResult, OracleStatus, Presentation,
    ShuffleCertificate, WitnessFamily,
};
pub use classify::{classify, ClassifyOptions, DehnClass, DehnKind};
pub use autos::{Automorphism, AutomorphismSpec, InducedMaps, OuterWitness};
pub use error::{Error, Result};
pub use group::GroupKind;
pub use growth::{GrowthClass, GrowthKind, GrowthOptions, GrowthTable, Exactness};
pub use normalize::{F2xZCase, FactorDecomposition, NormalFormF2xZ, NormalFormZ2astZ, Z2Case};
pub use intmat::{IntMatrix, MatrixClass, MatrixVerdict, ParabolicForm};
pub use report::{run_report, OracleMode, ReportBundle, ReportOptions};
pub use specfile::{parse_spec, print_spec, AutBlock, RunDirective, SpecFile};
pub use words::{Alphabet, AlternatingWord, CyclicWord, FreeWord, Generator, Letter, ProductWord};
