//! Input parsing, analysis requests and the report document.

mod parse;
mod request;

pub use parse::{
    matrix_format_for, parse_matrix, parse_matrix_str, parse_points, parse_points_str, parse_poly_str, parse_sample,
    parse_sample_str, point_format_for, write_matrix_market_array, MatrixFormat, PointFormat,
};
pub use request::{
    digest, error_exit_code, run, run_batch, AnalysisRequest, Input, Kind, Options, Quantity, ReportDocument,
    VerificationBlock, TOOL,
};
