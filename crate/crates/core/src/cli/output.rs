//! Output directory handling and text formats.

use super::RunConfig;
use crate::error::Result;
use crate::maps::C64;
use serde::Serialize;
use std::path::PathBuf;

/// Result of one verb.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    /// Files written, in order.
    pub files: Vec<PathBuf>,
    /// False when a property was violated.
    pub pass: bool,
    /// Human-readable summary.
    pub summary: String,
}

pub(crate) struct Outputs {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Outputs {
    pub(crate) fn new(cfg: &RunConfig) -> Result<Self> {
        std::fs::create_dir_all(&cfg.out_dir)?;
        Ok(Self { dir: cfg.out_dir.clone(), files: Vec::new() })
    }

    pub(crate) fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub(crate) fn record(&mut self, p: PathBuf) {
        self.files.push(p);
    }

    pub(crate) fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let p = self.path(name);
        std::fs::write(&p, body)?;
        self.record(p);
        Ok(())
    }

    pub(crate) fn json<T: Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.text(name, &s)
    }

    pub(crate) fn report(&self) {
        for f in &self.files {
            println!("wrote {}", f.display());
        }
    }

    pub(crate) fn finish(self, pass: bool, summary: String) -> CommandOutput {
        CommandOutput { files: self.files, pass, summary }
    }
}

/// `# config_hash=…`, `# seed=…` and extra `# key=value` lines.
pub(crate) fn csv_header(cfg: &RunConfig, extra: &[(&str, String)]) -> String {
    let mut s = format!("# config_hash={}\n# seed={}\n", cfg.hash(), cfg.seed);
    for (k, v) in extra {
        s.push_str(&format!("# {k}={v}\n"));
    }
    s
}

pub(crate) fn fmt_c(z: C64) -> String {
    format!("{:.17e},{:.17e}", z.re, z.im)
}

fn real(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `a,b` or `(a,b)`; `j` is accepted for `i`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s).trim();
    if s.is_empty() {
        return None;
    }
    if let Some((a, b)) = s.split_once(',') {
        return Some(C64::new(real(a.trim())?, real(b.trim())?));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Some(C64::new(real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    Some(C64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |a, b| Some(C64::new(a, b));
        assert_eq!(parse_complex("0.5"), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.5i"), c(0.0, -0.5));
        assert_eq!(parse_complex("0.3-0.2i"), c(0.3, -0.2));
        assert_eq!(parse_complex("1e-3+2E-2j"), c(1e-3, 2e-2));
        assert_eq!(parse_complex("(0.1, -0.2)"), c(0.1, -0.2));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("0.2+i"), c(0.2, 1.0));
        for bad in ["", "x", "1+", "nan", "1+2k", "(1,)"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }
}
