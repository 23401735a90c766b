//! Matrices, Bloch spectra, random ensembles and cross-checks.

mod bloch;
mod build;
mod checks;
mod cloud;
pub mod geometry;
mod sample;

pub use bloch::{
    all_words, alpha_grid, bloch_points, bloch_spectrum, bloch_tridiagonal, pi_union, pi_union_with, unit_root, BlochPoint,
    PeriodCount, PiUnion, PiUnionOptions, DEFAULT_ALPHA_COUNT, DEFAULT_PI_CEILING,
};
pub use build::{build_finite, build_periodic, build_periodic_tridiagonal, periodic_matrix};
pub use checks::{
    closed_form_spectrum, cloud_to_polyline, curve_check, denseness_check, floquet_witness_distance, square_spectrum_check,
    symmetry_check, ue_bound_check, unit_star_distance, CurveReport, DensenessReport, SquareReport, SymmetryReport,
    UeReport,
};
pub use cloud::{CloudPoint, HoleReport, InclusionReport, SpectrumCloud};
pub use sample::{
    random_finite_pair, random_finite_sample, random_periodic_sample, FinitePair, FiniteSampleConfig,
    PeriodicSampleConfig,
};
