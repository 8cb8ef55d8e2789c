use std::fs;
use std::io;
use std::path::Path;

use serde_json::json;

use crate::args::Format;
use crate::commands::Outcome;

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::new(io::ErrorKind::Other, e)
}

/// Write the structured report; an error message replaces the results when the command failed.
pub fn write_report(path: &Path, format: Format, command: &str, result: &Result<Outcome, String>) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    match format {
        Format::Json => {
            let value = match result {
                Ok(o) => json!({
                    "command": command,
                    "all_pass": o.all_pass(),
                    "checks": o.checks,
                    "data": o.data,
                }),
                Err(e) => json!({ "command": command, "all_pass": false, "error": e }),
            };
            let mut text = serde_json::to_string_pretty(&value).map_err(io::Error::from)?;
            text.push('\n');
            fs::write(path, text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
            match result {
                Ok(Outcome { table: Some(rows), .. }) => {
                    for r in rows {
                        w.serialize(r).map_err(csv_error)?;
                    }
                }
                Ok(o) => {
                    w.write_record(["name", "status", "metric", "bound", "anchor", "tolerance_related", "detail"])
                        .map_err(csv_error)?;
                    for c in &o.checks {
                        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                        w.write_record([
                            c.name.clone(),
                            c.status.to_string().to_lowercase(),
                            opt(c.metric),
                            opt(c.bound),
                            c.anchor.clone(),
                            c.tolerance_related.to_string(),
                            c.detail.clone(),
                        ])
                        .map_err(csv_error)?;
                    }
                }
                Err(e) => {
                    w.write_record(["error"]).map_err(csv_error)?;
                    w.write_record([e.as_str()]).map_err(csv_error)?;
                }
            }
            w.flush()
        }
    }
}
