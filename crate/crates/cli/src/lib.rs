//! Batch runs over the stable module category: a small config language,
//! built-in presets and a JSON results file.

pub mod config;
pub mod run;

pub use config::{parse_config, ConfigError, RunConfig};
pub use run::{interval_status, run, Report, ReportRow, RunOptions, Status};

/// Built-in configurations by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("paper-table", include_str!("presets/paper-table.cfg")),
    ("gaps-p3", include_str!("presets/gaps-p3.cfg")),
];

#[must_use]
pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Overrides applied on top of a parsed config.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub window: Option<u32>,
    pub nmax: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        if self.window.is_some() {
            cfg.window = self.window;
        }
        if self.nmax.is_some() {
            cfg.nmax = self.nmax;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
    }
}

/// Exit status for a finished run: 1 iff some row is a mismatch.
#[must_use]
pub fn exit_code(report: &Report) -> i32 {
    i32::from(report.has_mismatch())
}

pub const EXIT_CONFIG: i32 = 2;
