//! Ensemble experiments: generate (or load) MAGs, compute a centrality in two
//! modes, compare the rankings with RBO, and summarise.
//!
//! ```toml
//! name = "tvg"
//! aspects = [1000, 10]
//! edges = 42586
//! instances = 30
//! seed = 1
//! zeta = "1,0"
//! measures = ["betweenness", "closeness"]
//! ```

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use mag_core::centrality::{compute, CentralityRequest, Measure, Mode};
use mag_core::generate::{child_seed, random_mag, GenSpec};
use mag_core::ranking::TieMode;
use mag_core::subdet::retained_aspects;
use mag_core::{ClosenessMode, DistanceMode, MagGraph, SubDetSpec};
use rayon::prelude::*;
use serde::Deserialize;

use crate::compare::{compare_scores, RboSettings};
use crate::scores::{format_score, write_scores_file};
use crate::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    #[serde(default)]
    aspects: Vec<usize>,
    #[serde(default)]
    edges: usize,
    #[serde(default)]
    reciprocal: bool,
    input: Option<PathBuf>,
    #[serde(default = "one")]
    instances: usize,
    #[serde(default)]
    seed: u64,
    zeta: String,
    #[serde(default = "default_measures")]
    measures: Vec<String>,
    #[serde(default = "default_modes")]
    modes: [String; 2],
    #[serde(default)]
    distance: Option<String>,
    #[serde(default)]
    closeness: Option<String>,
    #[serde(default = "default_weight")]
    rbo_weight: f64,
    #[serde(default = "default_depth")]
    rbo_depth: f64,
    #[serde(default)]
    ties: Option<String>,
    truncate: Option<usize>,
    output_dir: Option<PathBuf>,
    #[serde(default)]
    keep_scores: bool,
}

fn one() -> usize {
    1
}
fn default_measures() -> Vec<String> {
    vec!["betweenness".into()]
}
fn default_modes() -> [String; 2] {
    ["naive-aggregate".into(), "subdet".into()]
}
fn default_weight() -> f64 {
    0.85
}
fn default_depth() -> f64 {
    0.10
}

/// Where the instances come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Generate {
        aspect_sizes: Vec<usize>,
        edges: usize,
        reciprocal: bool,
    },
    File(PathBuf),
}

/// A validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub name: String,
    pub source: Source,
    pub instances: usize,
    pub seed: u64,
    pub zeta: SubDetSpec,
    pub measures: Vec<Measure>,
    pub modes: [Mode; 2],
    pub distance: DistanceMode,
    pub closeness: ClosenessMode,
    pub rbo: RboSettings,
    pub output_dir: Option<PathBuf>,
    pub keep_scores: bool,
}

fn keyword<T: std::str::FromStr>(field: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Manifest(format!("{field}: unknown value {value:?}")))
}

impl Manifest {
    /// Parses manifest text; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: RawManifest = toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        let source = match (&raw.input, raw.aspects.is_empty()) {
            (Some(path), true) => Source::File(base.join(path)),
            (None, false) => Source::Generate {
                aspect_sizes: raw.aspects.clone(),
                edges: raw.edges,
                reciprocal: raw.reciprocal,
            },
            _ => return Err(Error::Manifest("give either input or aspects, not both".into())),
        };
        if raw.instances == 0 {
            return Err(Error::Manifest("instances must be positive".into()));
        }
        if matches!(source, Source::File(_)) && raw.instances != 1 {
            return Err(Error::Manifest("a loaded MAG is a single instance".into()));
        }
        if raw.measures.is_empty() {
            return Err(Error::Manifest("measures is empty".into()));
        }
        if !(raw.rbo_weight > 0.0 && raw.rbo_weight < 1.0) {
            return Err(Error::Manifest("rbo_weight must lie in (0, 1)".into()));
        }
        if !(raw.rbo_depth > 0.0 && raw.rbo_depth <= 1.0) {
            return Err(Error::Manifest("rbo_depth must lie in (0, 1]".into()));
        }
        let modes = [keyword("modes", &raw.modes[0])?, keyword("modes", &raw.modes[1])?];
        let measures = raw
            .measures
            .iter()
            .map(|m| keyword("measures", m))
            .collect::<Result<Vec<Measure>>>()?;
        Ok(Manifest {
            name: raw.name,
            source,
            instances: raw.instances,
            seed: raw.seed,
            zeta: keyword("zeta", &raw.zeta)?,
            measures,
            modes,
            distance: raw.distance.as_deref().map_or(Ok(DistanceMode::default()), |d| keyword("distance", d))?,
            closeness: raw.closeness.as_deref().map_or(Ok(ClosenessMode::default()), |c| keyword("closeness", c))?,
            rbo: RboSettings {
                weight: raw.rbo_weight,
                depth_fraction: raw.rbo_depth,
                depth: None,
                ties: raw.ties.as_deref().map_or(Ok(TieMode::default()), |t| keyword::<TieMode>("ties", t))?,
                truncate: raw.truncate,
            },
            output_dir: raw.output_dir.map(|d| base.join(d)),
            keep_scores: raw.keep_scores,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    pub fn instance_seed(&self, index: usize) -> u64 {
        child_seed(self.seed, index as u64)
    }

    fn instance(&self, index: usize) -> Result<MagGraph> {
        match &self.source {
            Source::Generate {
                aspect_sizes,
                edges,
                reciprocal,
            } => Ok(random_mag(
                &GenSpec::new(aspect_sizes.clone(), *edges, self.instance_seed(index)).reciprocal(*reciprocal),
            )?),
            Source::File(path) => crate::format::read_mag(path),
        }
    }
}

/// RBO and RBD of one instance and measure, or why it failed.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRow {
    pub instance: usize,
    pub seed: u64,
    pub measure: Measure,
    pub outcome: std::result::Result<(f64, f64), String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Some(Stats {
            count: values.len(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            std: var.sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSummary {
    pub measure: Measure,
    pub rbo: Option<Stats>,
    pub rbd: Option<Stats>,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub name: String,
    pub rows: Vec<InstanceRow>,
    pub summary: Vec<MeasureSummary>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.summary.iter().map(|s| s.failed).sum()
    }

    pub fn measure(&self, measure: Measure) -> Option<&MeasureSummary> {
        self.summary.iter().find(|s| s.measure == measure)
    }
}

fn run_instance(manifest: &Manifest, index: usize) -> Vec<InstanceRow> {
    let seed = manifest.instance_seed(index);
    let row = |measure, outcome| InstanceRow {
        instance: index,
        seed,
        measure,
        outcome,
    };
    let mag = match manifest.instance(index) {
        Ok(mag) => mag,
        Err(e) => return manifest.measures.iter().map(|&m| row(m, Err(e.to_string()))).collect(),
    };
    manifest
        .measures
        .iter()
        .map(|&measure| row(measure, compare_instance(manifest, &mag, index, measure).map_err(|e| e.to_string())))
        .collect()
}

fn compare_instance(manifest: &Manifest, mag: &MagGraph, index: usize, measure: Measure) -> Result<(f64, f64)> {
    let mut vectors = Vec::with_capacity(2);
    for mode in manifest.modes {
        let request = CentralityRequest {
            measure,
            mode,
            zeta: Some(manifest.zeta.clone()),
            distance: manifest.distance,
            closeness: manifest.closeness,
        };
        vectors.push(compute(mag, &request)?);
    }
    if vectors[0].domain() != vectors[1].domain() {
        return Err(Error::Data("the two modes score different vertex sets".into()));
    }
    if manifest.keep_scores {
        if let Some(dir) = &manifest.output_dir {
            let aspects = match manifest.modes[0] {
                Mode::Composite => mag.aspects().to_vec(),
                _ => retained_aspects(mag, &manifest.zeta)?,
            };
            for (mode, v) in manifest.modes.iter().zip(&vectors) {
                let path = dir.join(format!("instance-{index:04}-{measure}-{mode}.csv"));
                write_scores_file(v, &aspects, &path)?;
            }
        }
    }
    let cmp = compare_scores(vectors[0].scores(), vectors[1].scores(), &manifest.rbo)?;
    Ok((cmp.rbo, cmp.rbd))
}

/// Runs every instance (concurrently), then summarises in instance order.
/// Failed instances are reported in the rows and left out of the statistics.
pub fn run_experiment(manifest: &Manifest) -> Result<Report> {
    if let Some(dir) = &manifest.output_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let rows: Vec<InstanceRow> = (0..manifest.instances)
        .into_par_iter()
        .flat_map_iter(|i| run_instance(manifest, i))
        .collect();
    let summary = manifest
        .measures
        .iter()
        .map(|&measure| {
            let ok: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.measure == measure)
                .filter_map(|r| r.outcome.clone().ok())
                .collect();
            let failed = rows
                .iter()
                .filter(|r| r.measure == measure && r.outcome.is_err())
                .count();
            let rbo: Vec<f64> = ok.iter().map(|x| x.0).collect();
            let rbd: Vec<f64> = ok.iter().map(|x| x.1).collect();
            MeasureSummary {
                measure,
                rbo: Stats::of(&rbo),
                rbd: Stats::of(&rbd),
                failed,
            }
        })
        .collect();
    let report = Report {
        name: manifest.name.clone(),
        rows,
        summary,
    };
    if let Some(dir) = &manifest.output_dir {
        write_outputs(&report, dir)?;
    }
    Ok(report)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

fn write_outputs(report: &Report, dir: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(&dir.join("instances.csv"))?);
    w.write_record(["instance", "seed", "measure", "rbo", "rbd", "status"])?;
    for row in &report.rows {
        let (rbo, rbd, status) = match &row.outcome {
            Ok((rbo, rbd)) => (format_score(*rbo), format_score(*rbd), "ok".to_string()),
            Err(e) => (String::new(), String::new(), format!("failed: {e}")),
        };
        w.write_record([row.instance.to_string(), row.seed.to_string(), row.measure.to_string(), rbo, rbd, status])?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_writer(create(&dir.join("summary.csv"))?);
    w.write_record(["measure", "statistic", "rbo", "rbd"])?;
    for s in &report.summary {
        for (label, pick) in STATISTICS {
            let cell = |x: Option<Stats>| x.map(|x| format_score(pick(&x))).unwrap_or_default();
            w.write_record([s.measure.to_string(), label.to_string(), cell(s.rbo), cell(s.rbd)])?;
        }
    }
    w.flush()?;

    let mut f = create(&dir.join("summary.txt"))?;
    f.write_all(render_summary(report).as_bytes())?;
    Ok(())
}

type Pick = fn(&Stats) -> f64;

const STATISTICS: [(&str, Pick); 4] = [
    ("Minimum", |s| s.min),
    ("Maximum", |s| s.max),
    ("Mean", |s| s.mean),
    ("Standard Deviation", |s| s.std),
];

/// The summary as text: per measure, one row per statistic with RBO and RBD.
pub fn render_summary(report: &Report) -> String {
    let mut out = String::new();
    for s in &report.summary {
        let title = match s.measure {
            Measure::Betweenness => "Betweenness",
            Measure::Closeness => "Closeness",
        };
        let _ = writeln!(out, "{} - {}", report.name, title);
        let _ = writeln!(out, "{:<20} {:>10} {:>10}", "", "RBO", "RBD");
        for (label, pick) in STATISTICS {
            let cell = |x: Option<Stats>| x.map_or("n/a".to_string(), |x| format!("{:.3}", pick(&x)));
            let _ = writeln!(out, "{:<20} {:>10} {:>10}", label, cell(s.rbo), cell(s.rbd));
        }
        if s.failed > 0 {
            let _ = writeln!(out, "failed instances: {}", s.failed);
        }
        let _ = writeln!(out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_statistics() {
        let s = Stats::of(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean), (1.0, 4.0, 2.5));
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(Stats::of(&[2.0]).unwrap().std, 0.0);
        assert!(Stats::of(&[]).is_none());
    }

    #[test]
    fn manifest_checks_fields() {
        let base = Path::new(".");
        let ok = "name = \"x\"\naspects = [4, 2]\nedges = 5\nzeta = \"1,0\"\n";
        let m = Manifest::parse(ok, base).unwrap();
        assert_eq!(m.modes, [Mode::NaiveAggregate, Mode::SubDet]);
        assert_eq!(m.rbo.weight, 0.85);
        assert!(Manifest::parse(&format!("{ok}measures = [\"degree\"]\n"), base).is_err());
        assert!(Manifest::parse(&format!("{ok}colour = 1\n"), base).is_err());
        assert!(Manifest::parse(&format!("{ok}input = \"a.mag\"\n"), base).is_err());
        assert!(Manifest::parse(&ok.replace("1,0", "1,1"), base).is_err());
    }
}
