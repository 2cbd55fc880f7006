//! File formats: plan files, result tables and SVG plots.

mod planfile;
mod plot;
mod results;

pub use planfile::{parse_plan, plan_to_text, topology_from_params, topology_params, PLAN_SCHEMA_VERSION};
pub use plot::{render_plot, PlotSpec, XAxis, YAxis};
pub use results::{
    read_metrics_csv, read_results_csv, read_trace_csv, results_csv_string, results_from_json, results_to_json,
    write_metrics_csv, write_results_csv, write_trace_csv, MetricsRow, METRICS_COLUMNS, RESULT_COLUMNS,
    TRACE_COLUMNS,
};
