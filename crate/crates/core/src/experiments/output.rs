//! CSV tables with a `# key=value` preamble, trajectory and field export,
//! and plotting scripts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::dynamics::{Picture, Trajectory};
use crate::error::{Error, Result};
use crate::model::PolaritonModel;
use crate::pulse_design::PulseDesign;

/// Column-oriented numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub comments: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            comments: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn comment(&mut self, key: impl Into<String>, value: impl ToString) {
        self.comments.push((key.into(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        for (k, v) in &self.comments {
            writeln!(w, "# {k}={v}")?;
        }
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(&self.columns)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(|x| format_value(*x)))?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.csv", self.name));
        self.write_to(BufWriter::new(File::create(&path)?))?;
        Ok(path)
    }

    /// Reads a table written by [`Table::write`].
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut comments = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(c) => {
                    let (k, v) = c.split_once('=').unwrap_or((c, ""));
                    comments.push((k.to_string(), v.to_string()));
                }
                None => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        let columns = rdr.headers()?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Config(format!("bad number `{s}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
        Ok(Table {
            name,
            comments,
            columns,
            rows,
        })
    }
}

fn format_value(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.12e}")
    }
}

/// Time, Re/Im of the three lowest-polariton interaction-picture
/// amplitudes, their populations and the field.
pub fn trajectory_table(model: &PolaritonModel, traj: &Trajectory) -> Result<Table> {
    let mut t = Table::new(
        "trajectory",
        &["time", "re_c00", "im_c00", "re_cm", "im_cm", "re_cp", "im_cp", "p00", "pm", "pp", "field"],
    );
    let energies = model.eigensystem.diagonal();
    for (s, e) in traj.states.iter().zip(&traj.field) {
        let c = s.to_picture(Picture::Interaction, &energies).lowest_three()?;
        let mut row = vec![s.time];
        for z in c {
            row.push(z.re);
            row.push(z.im);
        }
        row.extend(c.map(|z| z.norm_sqr()));
        row.push(*e);
        t.push(row);
    }
    t.comment("dt", traj.dt);
    t.comment("steps", traj.steps);
    t.comment("max_norm_drift", traj.max_norm_drift);
    Ok(t)
}

/// Field samples on [t0, t1] with spacing at most `dt`.
pub fn field_table(design: &PulseDesign, t0: f64, t1: f64, dt: f64) -> Table {
    let f = design.sample(t0, t1, dt);
    let mut t = Table::new("field", &["time", "field"]);
    for (k, v) in f.values.iter().enumerate() {
        t.push(vec![f.time(k), *v]);
    }
    for (name, p) in [("minus", &design.minus), ("plus", &design.plus)] {
        t.comment(format!("{name}.amplitude"), p.amplitude);
        t.comment(format!("{name}.carrier"), p.carrier);
        t.comment(format!("{name}.phase"), p.phase);
        t.comment(format!("{name}.center"), p.center);
        t.comment(format!("{name}.bandwidth"), p.bandwidth);
        t.comment(format!("{name}.area"), p.area);
        t.comment(format!("{name}.area_phase"), p.area_phase);
    }
    t
}

/// Matplotlib script that plots `y` columns against `x`.
pub fn plot_script(csv_name: &str, x: &str, ys: &[&str], xlabel: &str) -> String {
    let cols = ys.iter().map(|y| format!("\"{y}\"")).collect::<Vec<_>>().join(", ");
    format!(
        r##"import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
src = here / "{csv_name}.csv"
with src.open() as fh:
    rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))

x = [float(r["{x}"]) for r in rows]
fig, ax = plt.subplots(figsize=(6, 4))
for col in [{cols}]:
    ax.plot(x, [float(r[col]) for r in rows], label=col)
ax.set_xlabel("{xlabel}")
ax.legend()
fig.tight_layout()
out = Path(sys.argv[1]) if len(sys.argv) > 1 else here / "{csv_name}.png"
fig.savefig(out, dpi=150)
"##
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new("demo", &["a", "b"]);
        t.comment("model.g", 0.1);
        t.push(vec![1.0, -2.5e-7]);
        t.push(vec![f64::NAN, 3.0]);
        let p = t.write(dir.path()).unwrap();
        let back = Table::read(&p).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.comments, vec![("model.g".to_string(), "0.1".to_string())]);
        assert_eq!(back.rows[0], t.rows[0]);
        assert!(back.rows[1][0].is_nan());
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("# model.g=0.1\na,b\n"));
    }
}
