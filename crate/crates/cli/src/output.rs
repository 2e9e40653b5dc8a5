use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;

/// Rendered artifact, written in one piece once assembly is finished.
pub struct Artifact {
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn json(v: &Value) -> Self {
        let mut bytes = serde_json::to_vec_pretty(v).expect("json values always serialize");
        bytes.push(b'\n');
        Artifact { bytes }
    }

    pub fn json_lines<'a>(rows: impl IntoIterator<Item = &'a Value>) -> Self {
        let mut bytes = Vec::new();
        for r in rows {
            serde_json::to_writer(&mut bytes, r).expect("json values always serialize");
            bytes.push(b'\n');
        }
        Artifact { bytes }
    }

    pub fn csv(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        Ok(Artifact {
            bytes: w.into_inner().context("flushing csv")?,
        })
    }

    pub fn write(&self, out: Option<&Path>) -> anyhow::Result<()> {
        match out {
            Some(p) => {
                std::fs::write(p, &self.bytes).with_context(|| format!("writing {}", p.display()))
            }
            None => {
                let mut s = std::io::stdout().lock();
                s.write_all(&self.bytes)?;
                s.flush()?;
                Ok(())
            }
        }
    }
}

/// `[2, 1, 1]` as `2 1 1` for CSV cells.
pub fn parts_cell(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
