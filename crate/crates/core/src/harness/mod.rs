//! Experiment orchestration: distances, the birthday estimator, built-in
//! examples and reports.

mod birthday;
mod builtins;
mod distance;
mod experiment;

pub use birthday::{birthday_probability, birthday_probability_exact, BirthdayMethod};
pub use builtins::{builtin_example, er_regime, BUILTIN_NAMES};
pub use distance::{tv_distance, tv_distance_exact};
pub use experiment::{
    run_experiment, run_experiment_with, ColorRule, Comparison, ErrorKind, ExperimentSpec, MomentRow, NamedLaw,
    ReferenceResult, Report, ReportError, RunOptions, Rounding, Status, DEFAULT_LIMIT_TOLERANCE,
    DEFAULT_ORACLE_TOLERANCE,
};
