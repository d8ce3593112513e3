//! Flat-file exchange: curve CSV with a JSON sidecar, sausage profiles,
//! one-column sequences.
//!
//! Curve CSV layout:
//!
//! ```text
//! coord_system,polar2
//! r,phi
//! 0.5,1
//! ...
//! ```
//!
//! The sidecar sits next to the CSV as `<stem>.meta.json`.
//!
//! Numbers are written in Rust's shortest round-trip form, so output is
//! byte-identical across runs and parses back exactly.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::fractal::{Method, SausageProfile};
use crate::geometry::{CoordSystem, GeometryError, Point2, Point3, Polar, Region, SampledCurve, Vertices};

/// Version tag embedded in every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn open(path: &Path) -> Result<BufReader<File>, IoError> {
    File::open(path).map(BufReader::new).map_err(|source| IoError::File { path: path.into(), source })
}

fn create(path: &Path) -> Result<BufWriter<File>, IoError> {
    File::create(path).map(BufWriter::new).map_err(|source| IoError::File { path: path.into(), source })
}

fn columns(cs: CoordSystem) -> &'static [&'static str] {
    match cs {
        CoordSystem::Cartesian2 => &["x", "y"],
        CoordSystem::Polar2 => &["r", "phi"],
        CoordSystem::Cartesian3 => &["x", "y", "z"],
    }
}

pub fn write_curve_csv<W: Write>(curve: &SampledCurve, w: W) -> Result<(), IoError> {
    let mut wr = csv::WriterBuilder::new().flexible(true).from_writer(w);
    let cs = curve.coord_system();
    wr.write_record(["coord_system", cs.as_str()])?;
    wr.write_record(columns(cs))?;
    match curve.vertices() {
        Vertices::Cartesian2(v) => {
            for p in v {
                wr.write_record([p.x.to_string(), p.y.to_string()])?;
            }
        }
        Vertices::Polar2(v) => {
            for p in v {
                wr.write_record([p.r.to_string(), p.phi.to_string()])?;
            }
        }
        Vertices::Cartesian3(v) => {
            for p in v {
                wr.write_record([p.x.to_string(), p.y.to_string(), p.z.to_string()])?;
            }
        }
    }
    wr.flush()?;
    Ok(())
}

/// Parses the curve CSV layout. A file without the `coord_system` line is
/// read as Cartesian `x,y` (or `x,y,z` with three columns).
pub fn read_curve_csv<R: Read>(r: R, source: &str) -> Result<SampledCurve, IoError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(r);
    let mut cs = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 1;
        let first = rec.get(0).unwrap_or("");
        if first.is_empty() || first.starts_with('#') {
            continue;
        }
        if first == "coord_system" {
            let name = rec.get(1).unwrap_or("");
            cs = Some(CoordSystem::parse(name).ok_or_else(|| IoError::Parse {
                line,
                msg: format!("unknown coord_system {name:?}; expected cartesian2, polar2 or cartesian3"),
            })?);
            continue;
        }
        if first.parse::<f64>().is_err() && rows.is_empty() {
            // column header
            continue;
        }
        let vals = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Parse { line, msg: e.to_string() })?;
        rows.push(vals);
    }
    let width = rows.first().map_or(2, |r| r.len());
    let cs = cs.unwrap_or(if width == 3 { CoordSystem::Cartesian3 } else { CoordSystem::Cartesian2 });
    let want = columns(cs).len();
    if let Some(i) = rows.iter().position(|r| r.len() != want) {
        return Err(IoError::Parse { line: i + 1, msg: format!("expected {want} columns for {}", cs.as_str()) });
    }
    let vertices = match cs {
        CoordSystem::Cartesian2 => Vertices::Cartesian2(rows.iter().map(|r| Point2::new(r[0], r[1])).collect()),
        CoordSystem::Polar2 => Vertices::Polar2(rows.iter().map(|r| Polar::new(r[0], r[1])).collect()),
        CoordSystem::Cartesian3 => Vertices::Cartesian3(rows.iter().map(|r| Point3::new(r[0], r[1], r[2])).collect()),
    };
    Ok(SampledCurve::new(vertices, source)?)
}

/// JSON sidecar written next to a curve CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub schema_version: u32,
    pub coord_system: CoordSystem,
    pub points: usize,
    pub closed: bool,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Region>,
}

impl CurveMeta {
    pub fn of(curve: &SampledCurve) -> Self {
        CurveMeta {
            schema_version: SCHEMA_VERSION,
            coord_system: curve.coord_system(),
            points: curve.len(),
            closed: curve.closed,
            source: curve.source.clone(),
            tail: curve.tail,
        }
    }
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("meta.json")
}

/// Writes `path` (CSV) and its `.json` sidecar.
pub fn save_curve(curve: &SampledCurve, path: &Path) -> Result<(), IoError> {
    write_curve_csv(curve, create(path)?)?;
    save_json(&CurveMeta::of(curve), &sidecar_path(path))
}

/// Reads a curve CSV and, when present, restores `closed`, `source` and
/// `tail` from its sidecar.
pub fn load_curve(path: &Path) -> Result<SampledCurve, IoError> {
    let mut c = read_curve_csv(open(path)?, &path.display().to_string())?;
    let side = sidecar_path(path);
    if side.exists() {
        let meta: CurveMeta = serde_json::from_reader(open(&side)?)?;
        c.closed = meta.closed;
        c.source = meta.source;
        c.tail = meta.tail;
    }
    Ok(c)
}

pub fn write_profile_csv<W: Write>(p: &SausageProfile, w: W) -> Result<(), IoError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["eps", "area"])?;
    for &(e, a) in &p.samples {
        wr.write_record([e.to_string(), a.to_string()])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_profile_csv<R: Read>(r: R, method: Method) -> Result<SausageProfile, IoError> {
    #[derive(Deserialize)]
    struct Row {
        eps: f64,
        area: f64,
    }
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let samples = rd.deserialize::<Row>().map(|r| r.map(|r| (r.eps, r.area))).collect::<Result<Vec<_>, _>>()?;
    SausageProfile::new(samples, method).map_err(|e| IoError::Parse { line: 0, msg: e.to_string() })
}

/// One number per line; a non-numeric first line is taken as a header.
pub fn read_sequence_csv<R: Read>(r: R) -> Result<Vec<f64>, IoError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(r);
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let s = rec.get(0).unwrap_or("");
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        match s.parse::<f64>() {
            Ok(v) => out.push(v),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(IoError::Parse { line: i + 1, msg: e.to_string() }),
        }
    }
    Ok(out)
}

pub fn write_sequence_csv<W: Write>(a: &[f64], w: W) -> Result<(), IoError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["a"])?;
    for v in a {
        wr.write_record([v.to_string()])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn load_sequence(path: &Path) -> Result<Vec<f64>, IoError> {
    read_sequence_csv(open(path)?)
}

pub fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<(), IoError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    Ok(serde_json::from_reader(open(path)?)?)
}

pub fn save_profile(p: &SausageProfile, path: &Path) -> Result<(), IoError> {
    write_profile_csv(p, create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip_is_exact() {
        let pts: Vec<Polar> = (1..50).map(|k| Polar::new(1.0 / k as f64, 0.1 * k as f64 + 1e-17)).collect();
        let c = SampledCurve::polar(pts, "t").unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("coord_system,polar2\nr,phi\n"));
        let back = read_curve_csv(&buf[..], "t").unwrap();
        assert_eq!(back.vertices(), c.vertices());
    }

    #[test]
    fn bare_xy_csv() {
        let c = read_curve_csv("x,y\n0,0\n1,0.5\n".as_bytes(), "s").unwrap();
        assert_eq!(c.coord_system(), CoordSystem::Cartesian2);
        assert_eq!(c.len(), 2);
        assert!(read_curve_csv("coord_system,spherical\n".as_bytes(), "s").is_err());
        assert!(read_curve_csv("coord_system,polar2\n1,2,3\n".as_bytes(), "s").is_err());
    }

    #[test]
    fn sidecar_restores_tail() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        let c = SampledCurve::cartesian(vec![Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)], "src")
            .unwrap()
            .with_tail(Some(Region::disc(Point2::ORIGIN, 0.25)));
        save_curve(&c, &p).unwrap();
        let back = load_curve(&p).unwrap();
        assert_eq!(back.tail, c.tail);
        assert_eq!(back.source, "src");
        let meta: serde_json::Value = load_json(&sidecar_path(&p)).unwrap();
        assert_eq!(meta["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn profile_and_sequence() {
        let p = SausageProfile::new(vec![(0.1, 0.5), (0.05, 0.3)], Method::SausageGrid).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&p, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "eps,area\n0.1,0.5\n0.05,0.3\n");
        assert_eq!(read_profile_csv(&buf[..], Method::SausageGrid).unwrap(), p);
        assert_eq!(read_sequence_csv("a\n1\n2.5\n\n4\n".as_bytes()).unwrap(), vec![1.0, 2.5, 4.0]);
        assert!(read_sequence_csv("1\nx\n".as_bytes()).is_err());
    }
}
