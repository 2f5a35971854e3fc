//! CSV and JSON artifacts. Every file carries the producing config hash;
//! nothing time-dependent is written, so a fixed config reproduces the
//! files byte for byte.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::delaunay::{homoclinic_u0, homoclinic_u0_derivative, PeriodicOrbit};
use crate::numerics::Tolerance;
use crate::Result;

pub const TOOL: &str = "delaunay-lab";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub tolerance: Tolerance,
    pub seed: u64,
}

impl Provenance {
    pub fn from_config(config: &RunConfig) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash: config.hash(),
            tolerance: config.tolerance,
            seed: config.seed,
        }
    }

    /// Provenance whose hash also covers the command and its options.
    pub fn for_command<T: Serialize>(config: &RunConfig, command: &str, options: &T) -> Result<Self> {
        let mut p = Self::from_config(config);
        let bytes = serde_json::to_vec(&(command, config.hash(), options))?;
        p.config_hash = crate::config::config_hash(&bytes);
        Ok(p)
    }

    fn comment(&self) -> String {
        format!(
            "# {} {} config={} abs_tol={:e} rel_tol={:e} seed={}",
            self.tool,
            self.version,
            self.config_hash,
            self.tolerance.abs(),
            self.tolerance.rel(),
            self.seed
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document<T> {
    pub provenance: Provenance,
    pub data: T,
}

/// Collects the paths written by one command.
#[derive(Debug)]
pub struct Artifacts {
    dir: PathBuf,
    provenance: Provenance,
    written: Vec<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: impl Into<PathBuf>, provenance: Provenance) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, provenance, written: Vec::new() })
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn json<T: Serialize>(&mut self, name: &str, data: &T) -> Result<PathBuf> {
        let path = self.dir.join(name);
        write_json(&path, &Document { provenance: self.provenance.clone(), data })?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn csv<R, I>(&mut self, name: &str, header: &[&str], rows: I) -> Result<PathBuf>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let path = self.dir.join(name);
        write_csv(&path, &self.provenance, header, rows)?;
        self.written.push(path.clone());
        Ok(path)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// CSV with a leading `#` comment line holding the provenance.
pub fn write_csv<R, I>(path: &Path, provenance: &Provenance, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut file = BufWriter::new(File::create(path)?);
    writeln!(file, "{}", provenance.comment())?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reader that skips the provenance comment.
pub fn csv_reader(path: &Path) -> Result<csv::Reader<File>> {
    Ok(csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?)
}

/// Shortest round-trip representation, so CSV values parse back exactly.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Rows `(t, u, v, r)` at `count` points of `[0, T]`.
pub fn orbit_rows(orbit: &PeriodicOrbit, count: usize) -> Vec<[String; 4]> {
    orbit
        .samples(count)
        .into_iter()
        .map(|s| [num(s.t), num(s.u), num(s.v), num(s.r)])
        .collect()
}

/// Phase-plane curves `(curve, H, u, v)`: the homoclinic loop, the closed
/// level sets of the given orbits, and the equilibrium.
pub fn phase_portrait_rows(n: usize, orbits: &[&PeriodicOrbit], count: usize) -> Vec<[String; 4]> {
    let mut rows = Vec::new();
    let count = count.max(3);
    let span = 12.0;
    for k in 0..count {
        let t = -span + 2.0 * span * k as f64 / (count - 1) as f64;
        rows.push(["homoclinic".to_string(), num(0.0), num(homoclinic_u0(n, t)), num(homoclinic_u0_derivative(n, t))]);
    }
    for o in orbits {
        let label = format!("eps={}", o.eps());
        for s in o.samples(count) {
            rows.push([label.clone(), num(o.energy()), num(s.u), num(s.v)]);
        }
    }
    if let Some(o) = orbits.first() {
        rows.push(["equilibrium".into(), num(crate::delaunay::hamiltonian(n, o.ubar(), 0.0)), num(o.ubar()), num(0.0)]);
    }
    rows
}
