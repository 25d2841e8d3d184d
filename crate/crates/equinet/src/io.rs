//! File formats: records and aggregates CSV, sweep config files, run
//! manifests, edge lists, and per-figure plot series.
//!
//! Format rules, chosen so files are stable enough to diff byte-for-byte:
//!
//! * CSV files have a fixed header and column order and never need quoting.
//! * Metric reals are written with 12 significant digits in scientific
//!   notation, so a read-back value matches the original to half an ulp of
//!   the 12th digit (relative error at most 5e-12).
//! * Parameter reals (`alpha`, `p`) are written in shortest form that
//!   round-trips exactly.
//! * Spec fields that do not apply to a model are empty strings.
//! * Config files and manifests are plain `key = value` lines, with lists
//!   comma-separated; `#` starts a comment line.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::generators::{Model, ModelSpec};
use crate::graph::Graph;
use crate::metrics::MetricRecord;
use crate::sweep::{AggregateRecord, Manifest, SweepConfig, SweepResult};

/// Column order of the records CSV.
pub const RECORDS_HEADER: [&str; 13] = [
    "model",
    "n",
    "m",
    "s",
    "nei",
    "alpha",
    "p",
    "sample_index",
    "seed",
    "mean_closeness",
    "mean_betweenness",
    "avg_shortest_path",
    "global_clustering",
];

/// Column order of the aggregates CSV.
pub const AGGREGATES_HEADER: [&str; 16] = [
    "model",
    "n",
    "m",
    "s",
    "nei",
    "alpha",
    "p",
    "samples",
    "mean_closeness_mean",
    "mean_closeness_sd",
    "mean_betweenness_mean",
    "mean_betweenness_sd",
    "avg_shortest_path_mean",
    "avg_shortest_path_sd",
    "global_clustering_mean",
    "global_clustering_sd",
];

/// File reading and writing failures.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("{path}: unsupported schema, expected header `{expected}`")]
    Version { path: String, expected: String },

    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },

    #[error("nothing to plot for figure `{figure}`: {missing}")]
    EmptySelection { figure: String, missing: String },
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path_str(path),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> IoError + '_ {
    move |source| IoError::Csv {
        path: path_str(path),
        source,
    }
}

/// Formats a metric value with 12 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// Formats a parameter value (`alpha`, `p`) in shortest exact form.
fn fmt_param(x: f64) -> String {
    format!("{x}")
}

fn opt_param(x: Option<f64>) -> String {
    x.map(fmt_param).unwrap_or_default()
}

/// Writes the records CSV. Rows keep the order of `records`.
pub fn write_records(records: &[MetricRecord], path: &Path) -> Result<(), IoError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(RECORDS_HEADER).map_err(csv_err(path))?;
    for r in records {
        let spec = &r.spec;
        w.write_record([
            spec.model.tag().to_string(),
            r.n.to_string(),
            r.m.to_string(),
            spec.s.to_string(),
            spec.nei.map(|v| v.to_string()).unwrap_or_default(),
            opt_param(spec.alpha),
            opt_param(spec.p),
            r.sample_index.to_string(),
            r.seed.to_string(),
            fmt_real(r.mean_closeness),
            fmt_real(r.mean_betweenness),
            fmt_real(r.avg_shortest_path),
            fmt_real(r.global_clustering),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

// Per-row parsing context; keeps line numbers attached to every complaint.
struct RowCx<'a> {
    path: &'a Path,
    line: usize,
}

impl RowCx<'_> {
    fn fail(&self, reason: String) -> IoError {
        IoError::Parse {
            path: path_str(self.path),
            line: self.line,
            reason,
        }
    }

    fn parse<T: FromStr>(&self, field: &str, name: &str) -> Result<T, IoError> {
        field
            .parse()
            .map_err(|_| self.fail(format!("invalid {name}: `{field}`")))
    }

    fn parse_opt<T: FromStr>(&self, field: &str, name: &str) -> Result<Option<T>, IoError> {
        if field.is_empty() {
            Ok(None)
        } else {
            self.parse(field, name).map(Some)
        }
    }

    fn require_empty(&self, field: &str, name: &str, model: Model) -> Result<(), IoError> {
        if field.is_empty() {
            Ok(())
        } else {
            Err(self.fail(format!("column {name} does not apply to model {model}")))
        }
    }
}

/// Reads a records CSV written by [`write_records`].
///
/// The header must match [`RECORDS_HEADER`] exactly; each row must describe
/// a valid spec whose implied edge total matches its `m` column.
pub fn read_records(path: &Path) -> Result<Vec<MetricRecord>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(csv_err(path))?;
    let expected = RECORDS_HEADER.join(",");
    let mut rows = reader.records();
    let header = match rows.next() {
        Some(row) => row.map_err(csv_err(path))?,
        None => {
            return Err(IoError::Version {
                path: path_str(path),
                expected,
            })
        }
    };
    if !header.iter().eq(RECORDS_HEADER) {
        return Err(IoError::Version {
            path: path_str(path),
            expected,
        });
    }

    let mut records = Vec::new();
    for (index, row) in rows.enumerate() {
        let cx = RowCx {
            path,
            line: index + 2,
        };
        let row = row.map_err(|e| cx.fail(e.to_string()))?;
        if row.len() != RECORDS_HEADER.len() {
            return Err(cx.fail(format!(
                "expected {} fields, found {}",
                RECORDS_HEADER.len(),
                row.len()
            )));
        }

        let model = Model::from_tag(&row[0])
            .ok_or_else(|| cx.fail(format!("unknown model `{}`", &row[0])))?;
        let n: usize = cx.parse(&row[1], "n")?;
        let m: usize = cx.parse(&row[2], "m")?;
        let s: usize = cx.parse(&row[3], "s")?;
        let nei: Option<usize> = cx.parse_opt(&row[4], "nei")?;
        let alpha: Option<f64> = cx.parse_opt(&row[5], "alpha")?;
        let p: Option<f64> = cx.parse_opt(&row[6], "p")?;

        let spec = match model {
            Model::Random => {
                cx.require_empty(&row[4], "nei", model)?;
                cx.require_empty(&row[5], "alpha", model)?;
                cx.require_empty(&row[6], "p", model)?;
                ModelSpec::random(n, s)
            }
            Model::ScaleFree => {
                cx.require_empty(&row[4], "nei", model)?;
                cx.require_empty(&row[6], "p", model)?;
                let alpha =
                    alpha.ok_or_else(|| cx.fail("scale_free rows need alpha".to_string()))?;
                ModelSpec::scale_free(n, s, alpha)
            }
            Model::SmallWorld => {
                cx.require_empty(&row[5], "alpha", model)?;
                let p = p.ok_or_else(|| cx.fail("small_world rows need p".to_string()))?;
                let nei = nei.ok_or_else(|| cx.fail("small_world rows need nei".to_string()))?;
                if nei != s {
                    return Err(cx.fail(format!("nei = {nei} does not match s = {s}")));
                }
                ModelSpec::small_world(n, s, p)
            }
        }
        .map_err(|e| cx.fail(e.to_string()))?;

        if spec.m != m {
            return Err(cx.fail(format!(
                "m = {m} does not match the edge total {} implied by (n = {n}, s = {s})",
                spec.m
            )));
        }

        records.push(MetricRecord {
            spec,
            seed: cx.parse(&row[8], "seed")?,
            sample_index: cx.parse(&row[7], "sample_index")?,
            n,
            m,
            mean_closeness: cx.parse(&row[9], "mean_closeness")?,
            mean_betweenness: cx.parse(&row[10], "mean_betweenness")?,
            avg_shortest_path: cx.parse(&row[11], "avg_shortest_path")?,
            global_clustering: cx.parse(&row[12], "global_clustering")?,
        });
    }
    Ok(records)
}

/// Writes the aggregates CSV. Rows keep the order of `aggregates`.
pub fn write_aggregates(aggregates: &[AggregateRecord], path: &Path) -> Result<(), IoError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(AGGREGATES_HEADER).map_err(csv_err(path))?;
    for a in aggregates {
        let spec = &a.spec;
        w.write_record([
            spec.model.tag().to_string(),
            spec.n.to_string(),
            spec.m.to_string(),
            spec.s.to_string(),
            spec.nei.map(|v| v.to_string()).unwrap_or_default(),
            opt_param(spec.alpha),
            opt_param(spec.p),
            a.samples.to_string(),
            fmt_real(a.mean_closeness.mean),
            fmt_real(a.mean_closeness.sd),
            fmt_real(a.mean_betweenness.mean),
            fmt_real(a.mean_betweenness.sd),
            fmt_real(a.avg_shortest_path.mean),
            fmt_real(a.avg_shortest_path.sd),
            fmt_real(a.global_clustering.mean),
            fmt_real(a.global_clustering.sd),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_f64(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| fmt_param(*v))
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes the run manifest: artifact version, record count, and the config
/// echo (including base seed) as `key=value` lines.
pub fn write_manifest(manifest: &Manifest, path: &Path) -> Result<(), IoError> {
    let config = &manifest.config;
    let models = config
        .models
        .iter()
        .map(|m| m.tag())
        .collect::<Vec<_>>()
        .join(",");
    let text = format!(
        "artifact_version={}\nbase_seed={}\nrecord_count={}\nmodels={}\nn_values={}\ns_values={}\nalpha_values={}\np_values={}\nsamples={}\n",
        manifest.artifact_version,
        config.base_seed,
        manifest.record_count,
        models,
        join_usize(&config.n_values),
        join_usize(&config.s_values),
        join_f64(&config.alpha_values),
        join_f64(&config.p_values),
        config.samples,
    );
    fs::write(path, text).map_err(io_err(path))
}

fn parse_list<T: FromStr>(
    value: &str,
    name: &str,
    path: &Path,
    line: usize,
) -> Result<Vec<T>, IoError> {
    let value = value.trim();
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse().map_err(|_| IoError::Parse {
                path: path_str(path),
                line,
                reason: format!("invalid {name} entry: `{item}`"),
            })
        })
        .collect()
}

/// Reads a sweep config file.
///
/// Recognized keys: `models`, `n_values`, `s_values`, `alpha_values`,
/// `p_values`, `samples`, `base_seed`. All but the two parameter lists are
/// required. Value lists are comma-separated.
pub fn read_sweep_config(path: &Path) -> Result<SweepConfig, IoError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut models: Option<Vec<Model>> = None;
    let mut n_values: Option<Vec<usize>> = None;
    let mut s_values: Option<Vec<usize>> = None;
    let mut alpha_values: Option<Vec<f64>> = None;
    let mut p_values: Option<Vec<f64>> = None;
    let mut samples: Option<usize> = None;
    let mut base_seed: Option<u64> = None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let fail = |reason: String| IoError::Parse {
            path: path_str(path),
            line,
            reason,
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| fail("expected `key = value`".to_string()))?;
        let key = key.trim();
        let value = value.trim();

        fn set<T>(slot: &mut Option<T>, value: T, key: &str) -> Result<(), String> {
            if slot.is_some() {
                return Err(format!("duplicate key `{key}`"));
            }
            *slot = Some(value);
            Ok(())
        }

        let result = match key {
            "models" => {
                let parsed: Result<Vec<Model>, IoError> = value
                    .split(',')
                    .map(|item| {
                        let item = item.trim();
                        Model::from_tag(item).ok_or_else(|| fail(format!("unknown model `{item}`")))
                    })
                    .collect();
                set(&mut models, parsed?, key)
            }
            "n_values" => set(&mut n_values, parse_list(value, "n", path, line)?, key),
            "s_values" => set(&mut s_values, parse_list(value, "s", path, line)?, key),
            "alpha_values" => set(
                &mut alpha_values,
                parse_list(value, "alpha", path, line)?,
                key,
            ),
            "p_values" => set(&mut p_values, parse_list(value, "p", path, line)?, key),
            "samples" => set(
                &mut samples,
                value
                    .parse()
                    .map_err(|_| fail(format!("invalid samples: `{value}`")))?,
                key,
            ),
            "base_seed" => set(
                &mut base_seed,
                value
                    .parse()
                    .map_err(|_| fail(format!("invalid base_seed: `{value}`")))?,
                key,
            ),
            _ => Err(format!("unknown key `{key}`")),
        };
        result.map_err(fail)?;
    }

    let missing = |key: &str| IoError::Invalid {
        path: path_str(path),
        reason: format!("missing key `{key}`"),
    };
    Ok(SweepConfig {
        models: models.ok_or_else(|| missing("models"))?,
        n_values: n_values.ok_or_else(|| missing("n_values"))?,
        s_values: s_values.ok_or_else(|| missing("s_values"))?,
        alpha_values: alpha_values.unwrap_or_default(),
        p_values: p_values.unwrap_or_default(),
        samples: samples.ok_or_else(|| missing("samples"))?,
        base_seed: base_seed.ok_or_else(|| missing("base_seed"))?,
    })
}

/// Writes a graph as an edge list: one `u v` line per edge with `u < v`,
/// lines in ascending order, newline-terminated.
pub fn write_edge_list(g: &Graph, path: &Path) -> Result<(), IoError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// The figures the sweep data projects onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Edge count against vertex count; every model draws the same curve.
    EdgesVertices,
    Closeness,
    Betweenness,
    Asp,
    Clustering,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::EdgesVertices,
        FigureId::Closeness,
        FigureId::Betweenness,
        FigureId::Asp,
        FigureId::Clustering,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FigureId::EdgesVertices => "edges_vertices",
            FigureId::Closeness => "closeness",
            FigureId::Betweenness => "betweenness",
            FigureId::Asp => "asp",
            FigureId::Clustering => "clustering",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<FigureId, String> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = FigureId::ALL.iter().map(|f| f.tag()).collect();
                format!(
                    "unknown figure `{s}`, expected one of: {}",
                    valid.join(", ")
                )
            })
    }
}

/// One plotted line: a figure, the panel it belongs to (one panel per `s`),
/// a legend key, and its points sorted ascending by x.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub figure: FigureId,
    pub panel_s: usize,
    pub series_key: String,
    pub points: Vec<(f64, f64)>,
}

impl PlotSeries {
    /// Filesystem-safe name: figure, panel, and legend key.
    pub fn file_stem(&self) -> String {
        let key = self.series_key.replace([' ', '='], "_");
        format!("{}_s{}_{}", self.figure.tag(), self.panel_s, key)
    }
}

/// Projects aggregates onto one figure: a panel per `s` value, a series per
/// `(model, parameter)` within the panel.
///
/// For metric figures a point is `(m, metric mean)`; for the edge-count
/// figure it is `(n, m)`, where `m` is the shared total implied by `(n, s)`.
pub fn plot_series_from_aggregates(
    aggregates: &[AggregateRecord],
    figure: FigureId,
) -> Result<Vec<PlotSeries>, IoError> {
    if aggregates.is_empty() {
        return Err(IoError::EmptySelection {
            figure: figure.to_string(),
            missing: "no aggregates in the input".to_string(),
        });
    }
    let mut sorted: Vec<&AggregateRecord> = aggregates.iter().collect();
    sorted.sort_by_key(|a| {
        let spec = &a.spec;
        (
            spec.s,
            spec.model as u8,
            spec.alpha.map_or(0, f64::to_bits),
            spec.p.map_or(0, f64::to_bits),
            spec.n,
        )
    });

    let mut series: Vec<PlotSeries> = Vec::new();
    for a in sorted {
        let spec = &a.spec;
        let point = match figure {
            FigureId::EdgesVertices => (spec.n as f64, spec.m as f64),
            FigureId::Closeness => (spec.m as f64, a.mean_closeness.mean),
            FigureId::Betweenness => (spec.m as f64, a.mean_betweenness.mean),
            FigureId::Asp => (spec.m as f64, a.avg_shortest_path.mean),
            FigureId::Clustering => (spec.m as f64, a.global_clustering.mean),
        };
        let key = spec.series_key();
        match series.last_mut() {
            Some(last) if last.panel_s == spec.s && last.series_key == key => {
                last.points.push(point);
            }
            _ => series.push(PlotSeries {
                figure,
                panel_s: spec.s,
                series_key: key,
                points: vec![point],
            }),
        }
    }
    for s in &mut series {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(series)
}

/// Projects a sweep result onto one figure. See
/// [`plot_series_from_aggregates`].
pub fn emit_plot_series(
    result: &SweepResult,
    figure: FigureId,
) -> Result<Vec<PlotSeries>, IoError> {
    plot_series_from_aggregates(&result.aggregates, figure)
}

/// Writes one CSV per series (`x,y` columns) plus a figure manifest CSV
/// listing every series file. Returns the written paths, manifest last.
pub fn write_plot_series(series: &[PlotSeries], dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    let figure = match series.first() {
        Some(first) => first.figure,
        None => {
            return Err(IoError::Invalid {
                path: path_str(dir),
                reason: "no series to write".to_string(),
            })
        }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::with_capacity(series.len() + 1);
    for s in series {
        let path = dir.join(format!("{}.csv", s.file_stem()));
        let mut w = csv::Writer::from_path(&path).map_err(csv_err(&path))?;
        w.write_record(["x", "y"]).map_err(csv_err(&path))?;
        for (x, y) in &s.points {
            w.write_record([fmt_real(*x), fmt_real(*y)])
                .map_err(csv_err(&path))?;
        }
        w.flush().map_err(io_err(&path))?;
        written.push(path);
    }

    let manifest_path = dir.join(format!("{}_manifest.csv", figure.tag()));
    let mut w = csv::Writer::from_path(&manifest_path).map_err(csv_err(&manifest_path))?;
    w.write_record(["figure", "panel_s", "series_key", "points", "file"])
        .map_err(csv_err(&manifest_path))?;
    for (s, path) in series.iter().zip(&written) {
        w.write_record([
            s.figure.tag().to_string(),
            s.panel_s.to_string(),
            s.series_key.clone(),
            s.points.len().to_string(),
            path.file_name()
                .expect("series files have names")
                .to_string_lossy()
                .into_owned(),
        ])
        .map_err(csv_err(&manifest_path))?;
    }
    w.flush().map_err(io_err(&manifest_path))?;
    written.push(manifest_path);
    Ok(written)
}
