use std::fs;
use std::path::PathBuf;

use moment_spectra::experiments::{ExperimentReport, Table, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::svg;

/// Significant digits a CSV mantissa may carry at `digits` working precision.
fn mantissa_digits(digits: u32) -> usize {
    digits.clamp(1, 17) as usize
}

pub fn format_value(v: &Value, digits: u32) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) if f.is_nan() => "NaN".into(),
        Value::Float(f) if f.is_infinite() => if *f > 0.0 { "inf" } else { "-inf" }.into(),
        Value::Float(f) => format!("{:.*e}", mantissa_digits(digits) - 1, f),
        Value::Text(s) => s.clone(),
    }
}

pub fn table_csv(table: &Table, digits: u32) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| format_value(v, digits)))?;
    }
    w.into_inner().map_err(|e| csv::Error::from(e.into_error()))
}

/// Removes what was written so far when dropped without `keep`.
struct Cleanup {
    dir: PathBuf,
    created_dir: bool,
    files: Vec<PathBuf>,
    keep: bool,
}

impl Drop for Cleanup {
    fn drop(&mut self) {
        if self.keep {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if self.created_dir {
            let _ = fs::remove_dir(&self.dir);
        }
    }
}

fn write(cleanup: &mut Cleanup, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    let path = cleanup.dir.join(name);
    cleanup.files.push(path.clone());
    fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes `table_<k>.csv`, optionally `plot.svg`, and `summary.json` under
/// `<out_dir>/<report name>/`. On failure the files of this call are removed.
pub fn emit_artifacts(report: &mut ExperimentReport, cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = cfg.out_dir.join(&report.name);
    let created_dir = !dir.exists();
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut cleanup = Cleanup { dir: dir.clone(), created_dir, files: Vec::new(), keep: false };
    let digits = report
        .parameters
        .get("digits")
        .and_then(Value::as_f64)
        .map_or(cfg.digits, |d| d as u32);

    let mut names = Vec::new();
    for (k, table) in report.tables.iter().enumerate() {
        let name = format!("table_{}.csv", k + 1);
        let bytes = table_csv(table, digits).map_err(|e| CliError::Io(format!("{name}: {e}")))?;
        write(&mut cleanup, &name, &bytes)?;
        names.push(name);
    }
    if cfg.emit_svg {
        if let Some(plot) = svg::render(&report.name, &report.series) {
            write(&mut cleanup, "plot.svg", plot.as_bytes())?;
            names.push("plot.svg".into());
        }
    }
    names.push("summary.json".into());
    report.artifacts = names;
    let json_err = |e: serde_json::Error| CliError::Io(format!("summary.json: {e}"));
    let value = serde_json::to_value(&*report).map_err(json_err)?;
    let mut json = serde_json::to_string_pretty(&value).map_err(json_err)?;
    json.push('\n');
    write(&mut cleanup, "summary.json", json.as_bytes())?;
    cleanup.keep = true;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_value(&Value::Float(0.47769), 15), "4.77690000000000e-1");
        assert_eq!(format_value(&Value::Float(1.5), 3), "1.50e0");
        assert_eq!(format_value(&Value::Float(1.0 / 3.0), 100), "3.3333333333333331e-1");
        assert_eq!(format_value(&Value::Float(f64::NAN), 15), "NaN");
        assert_eq!(format_value(&Value::Int(-4), 15), "-4");
        assert_eq!(format_value(&Value::Bool(true), 15), "true");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("t", &["i", "label"]);
        t.push(vec![1usize.into(), "a,b".into()]);
        let s = String::from_utf8(table_csv(&t, 15).unwrap()).unwrap();
        assert_eq!(s, "i,label\n1,\"a,b\"\n");
    }
}
