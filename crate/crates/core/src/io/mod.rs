//! Branch files (JSON lines) and CSV exports.

mod branch_file;
mod csv;

pub use branch_file::{append_branch, load_branch, store_branch, BranchRecord};
pub use csv::{
    export_plot_data, read_profile_csv, write_atomic, write_fit_csv, write_profile_csv,
    write_surface_csv, ExportSummary,
};
