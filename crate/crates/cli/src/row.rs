//! Result rows and their fixed-format rendering.
//!
//! All floating-point cells print with 9 significant digits (`{:.8e}`), so a
//! sweep re-run with any thread count is byte-identical except for `wall_ms`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::args::FormatArg;
use crate::error::CliError;

pub const CSV_HEADER: &str =
    "gamma0,omega_over_t,N,M,F_analytic,F_sim,F_anticlone,p_postselect,n_max,tail_mass,method,wall_ms";

/// One evaluated grid point. `gamma0` is absent for the early scenario, the
/// simulation diagnostics are absent for purely analytic rows, and
/// `F_analytic` is absent when no closed form covers the point.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub gamma0: Option<f64>,
    pub omega_over_t: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "F_analytic")]
    pub f_analytic: Option<f64>,
    #[serde(rename = "F_sim")]
    pub f_sim: Option<f64>,
    #[serde(rename = "F_anticlone")]
    pub f_anticlone: Option<f64>,
    pub p_postselect: Option<f64>,
    pub n_max: Option<usize>,
    pub tail_mass: Option<f64>,
    pub method: &'static str,
    pub wall_ms: u64,
}

fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn opt_sig9(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

impl ResultRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            opt_sig9(self.gamma0),
            sig9(self.omega_over_t),
            self.n,
            self.m,
            opt_sig9(self.f_analytic),
            opt_sig9(self.f_sim),
            opt_sig9(self.f_anticlone),
            opt_sig9(self.p_postselect),
            self.n_max.map(|v| v.to_string()).unwrap_or_default(),
            opt_sig9(self.tail_mass),
            self.method,
            self.wall_ms,
        )
    }
}

pub fn render(rows: &[ResultRow], format: FormatArg) -> Result<String, CliError> {
    match format {
        FormatArg::Csv => {
            let mut out = String::with_capacity(64 * (rows.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                out.push_str(&row.csv_line());
                out.push('\n');
            }
            Ok(out)
        }
        FormatArg::Json => {
            let mut out = serde_json::to_string_pretty(rows)
                .map_err(|e| CliError::Config(format!("serializing rows: {e}")))?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// Stdout, or an atomically replaced file: the content lands in `<name>.tmp`
/// first and is renamed over the target only once fully written.
pub fn emit(rows: &[ResultRow], out: Option<&Path>, format: FormatArg) -> Result<(), CliError> {
    let text = render(rows, format)?;
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let tmp = temp_sibling(path)?;
            let write = (|| -> std::io::Result<()> {
                let mut f = std::fs::File::create(&tmp)?;
                f.write_all(text.as_bytes())?;
                f.sync_all()?;
                std::fs::rename(&tmp, path)
            })();
            if write.is_err() {
                let _ = std::fs::remove_file(&tmp);
            }
            write.map_err(CliError::Io)
        }
    }
}

fn temp_sibling(path: &Path) -> Result<std::path::PathBuf, CliError> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Config(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(".tmp");
    Ok(path.with_file_name(tmp_name))
}
