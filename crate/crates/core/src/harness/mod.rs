//! Experiment harness: configs, the operations behind each CLI subcommand,
//! and CSV/SVG output.

mod commands;
mod config;
pub mod csv;
pub mod svg;

pub use commands::{
    cmd_compare, cmd_contour_check, cmd_count, cmd_phenomenon, cmd_phi, cmd_predict, cmd_special,
    cmd_sum, prediction_table, rel_error, ContourCheck, ContourRow, Evaluator, PhenomenonReport,
    PhenomenonRow, PredictionReport, ReportRow, SpecialDump, SpecialFn, SpecialParams,
    DEFAULT_PHENOMENON_C,
};
pub use config::{
    parse_count, parse_count_list, parse_k_range, parse_predictors, parse_real,
    resolve_cache_dir, DerivedY, ExperimentConfig, YRule, CACHE_ENV, DEFAULT_CACHE_DIR,
};
