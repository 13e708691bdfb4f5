//! Exact spectra, Jordan-frame idempotents and generalized Krein parameters
//! of strongly regular graph parameter sets `(n, p; a, c)`.
//!
//! * [`quad_field`]: exact arithmetic in Q(√d).
//! * [`srg_core`]: parameter validation, spectrum, idempotent and `|A|^x`
//!   coordinates.
//! * [`krein_engine`]: Hadamard algebra on basis coordinates and projection
//!   onto the Jordan frame.
//! * [`feasibility`]: necessary conditions for existence with exact witnesses.
//! * [`jordan_oracle`]: dense-matrix ground truth built from real graphs.
//! * [`cli`]: the `srg-krein` command line.

pub mod cli;
pub mod error;
pub mod feasibility;
pub mod jordan_oracle;
pub mod krein_engine;
pub mod quad_field;
pub mod srg_core;

pub use error::{Result, SrgError};
pub use krein_engine::{
    eigen_project, generalized_krein, hadamard_combine, hadamard_power, krein_classical,
    KreinEngine, KreinTriple, ProductSpec,
};
pub use quad_field::{QuadNum, Sign};
pub use srg_core::{
    abs_power_coords, enumerate_range_valid, enumerate_valid, idempotent_coords, multiplicities,
    power_coords, spectrum, sum_idempotent_coords, validate_params, validate_range,
    AbsPowerCoords, BasisCoords, Multiplicities, Spectrum, SrgParams,
};
