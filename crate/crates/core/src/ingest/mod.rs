//! Loading, validation and calendar alignment of input series, plus
//! descriptive statistics.

mod csv;
mod panel;
mod series;
mod stats;

pub(crate) use self::csv::{parse_float, read_rows, sort_unique};
pub(crate) use series::fmt_f64;

pub use panel::{align_panel, interaction_label, lagged_label, AlignedPanel, PanelRequest};
pub use series::{
    load_count_csv, load_return_csv, log_growth, weekdays_from, CountSeries, DatedSeries,
    GrowthSeries, ReturnSeries, ZeroPolicy,
};
pub use stats::{
    descriptive_stats, descriptive_stats_with, welch_t_test, DescriptiveStats, SkewnessEstimator,
    WelchTest,
};
