//! Sample files, CSV tables and SVG scenes.
//!
//! A sample file is a header naming the generator, seed, order, count, model
//! and crate version, followed by the samples in one of the five model
//! encodings. JSON files round-trip exactly; CSV files carry the header as
//! `# key: value` comment lines and round-trip as well.

pub mod svg;

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bijections::{
    lozenges_to_matching, matching_to_lozenges, matching_to_particles, particles_to_matching,
    particles_to_st, paths_to_lozenges, st_to_particles, BijectionError, HalfHexMatching,
    LatticePathFamily, Lozenge, LozengeKind, LozengeTiling, ParticleSystem, Path,
};
use crate::bits::GENERATOR_NAME;
use crate::limit_shape::{site_to_trapezoid, DensityField};
use crate::shuffle::sample_many;
use crate::tableau::StaircaseTableau;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error("malformed sample file: {0}")]
    Malformed(String),
    #[error("malformed svg: {0}")]
    Svg(String),
}

/// The five equivalent encodings of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Tableau,
    Particles,
    Matching,
    Lozenges,
    Paths,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::Tableau,
        Model::Particles,
        Model::Matching,
        Model::Lozenges,
        Model::Paths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Tableau => "tableau",
            Model::Particles => "particles",
            Model::Matching => "matching",
            Model::Lozenges => "lozenges",
            Model::Paths => "paths",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| IoError::Malformed(format!("unknown model {s:?}")))
    }
}

/// One state in a chosen encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Sample {
    Tableau(StaircaseTableau),
    Particles(ParticleSystem),
    Matching(HalfHexMatching),
    Lozenges(LozengeTiling),
    Paths(LatticePathFamily),
}

impl Sample {
    pub fn encode(model: Model, t: &StaircaseTableau) -> Result<Sample, BijectionError> {
        let p = st_to_particles(t);
        Ok(match model {
            Model::Tableau => Sample::Tableau(t.clone()),
            Model::Particles => Sample::Particles(p),
            Model::Matching => Sample::Matching(particles_to_matching(&p)),
            Model::Lozenges => Sample::Lozenges(matching_to_lozenges(&particles_to_matching(&p))?),
            Model::Paths => Sample::Paths(crate::bijections::st_to_paths(t)?),
        })
    }

    pub fn model(&self) -> Model {
        match self {
            Sample::Tableau(_) => Model::Tableau,
            Sample::Particles(_) => Model::Particles,
            Sample::Matching(_) => Model::Matching,
            Sample::Lozenges(_) => Model::Lozenges,
            Sample::Paths(_) => Model::Paths,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Sample::Tableau(t) => t.order(),
            Sample::Particles(p) => p.order(),
            Sample::Matching(m) => m.order,
            Sample::Lozenges(l) => l.order(),
            Sample::Paths(f) => f.order,
        }
    }

    pub fn decode(&self) -> Result<StaircaseTableau, BijectionError> {
        match self {
            Sample::Tableau(t) => Ok(t.clone()),
            Sample::Particles(p) => particles_to_st(p),
            Sample::Matching(m) => particles_to_st(&matching_to_particles(m)?),
            Sample::Lozenges(l) => particles_to_st(&matching_to_particles(&lozenges_to_matching(l)?)?),
            Sample::Paths(f) => {
                let m = lozenges_to_matching(&paths_to_lozenges(f)?)?;
                particles_to_st(&matching_to_particles(&m)?)
            }
        }
    }

    fn from_value(model: Model, v: Value) -> Result<Sample, serde_json::Error> {
        Ok(match model {
            Model::Tableau => Sample::Tableau(serde_json::from_value(v)?),
            Model::Particles => Sample::Particles(serde_json::from_value(v)?),
            Model::Matching => Sample::Matching(serde_json::from_value(v)?),
            Model::Lozenges => Sample::Lozenges(serde_json::from_value(v)?),
            Model::Paths => Sample::Paths(serde_json::from_value(v)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleHeader {
    pub generator: String,
    pub seed: u64,
    pub order: usize,
    pub count: usize,
    pub model: Model,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleFile {
    pub header: SampleHeader,
    pub samples: Vec<Sample>,
}

#[derive(Deserialize)]
struct RawSampleFile {
    header: SampleHeader,
    samples: Vec<Value>,
}

impl SampleFile {
    /// `count` uniform samples of the given order; sample `k` uses trajectory
    /// `k` of `seed`.
    pub fn generate(model: Model, order: usize, count: usize, seed: u64) -> Result<Self, IoError> {
        let samples = sample_many(order, count, seed)
            .par_iter()
            .map(|t| Sample::encode(model, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SampleFile {
            header: SampleHeader {
                generator: GENERATOR_NAME.to_string(),
                seed,
                order,
                count,
                model,
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            samples,
        })
    }

    fn check(&self) -> Result<(), IoError> {
        let h = &self.header;
        if self.samples.len() != h.count {
            return Err(IoError::Malformed(format!(
                "header count {} but {} samples",
                h.count,
                self.samples.len()
            )));
        }
        if let Some(s) = self.samples.iter().find(|s| s.order() != h.order) {
            return Err(IoError::Malformed(format!(
                "sample of order {} in a file of order {}",
                s.order(),
                h.order
            )));
        }
        Ok(())
    }

    /// Pretty header, one compact line per sample.
    pub fn to_json(&self) -> Result<String, IoError> {
        let header = serde_json::to_string_pretty(&self.header)?.replace('\n', "\n  ");
        let mut s = format!("{{\n  \"header\": {header},\n  \"samples\": [");
        for (k, sample) in self.samples.iter().enumerate() {
            s.push_str(if k == 0 { "\n    " } else { ",\n    " });
            s.push_str(&serde_json::to_string(sample)?);
        }
        s.push_str(if self.samples.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        let raw: RawSampleFile = serde_json::from_str(s)?;
        let model = raw.header.model;
        let samples = raw
            .samples
            .into_iter()
            .map(|v| Sample::from_value(model, v))
            .collect::<Result<Vec<_>, _>>()?;
        let f = SampleFile {
            header: raw.header,
            samples,
        };
        f.check()?;
        Ok(f)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), IoError> {
        let h = &self.header;
        writeln!(w, "# generator: {}", h.generator)?;
        writeln!(w, "# seed: {}", h.seed)?;
        writeln!(w, "# order: {}", h.order)?;
        writeln!(w, "# count: {}", h.count)?;
        writeln!(w, "# model: {}", h.model)?;
        writeln!(w, "# version: {}", h.version)?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(csv_columns(h.model))?;
        for (k, s) in self.samples.iter().enumerate() {
            let k = k.to_string();
            match s {
                Sample::Tableau(t) => {
                    for (r, row) in t.rows().enumerate() {
                        for (j, g) in row.iter().enumerate() {
                            out.write_record([&k, &r.to_string(), &j.to_string(), &g.to_string()])?;
                        }
                    }
                }
                Sample::Particles(p) => {
                    for (r, pos) in p.particles() {
                        out.write_record([&k, &r.to_string(), &pos.to_string()])?;
                    }
                }
                Sample::Matching(m) => {
                    for (r, pos) in &m.vertical_edges {
                        out.write_record([&k, &r.to_string(), &pos.to_string()])?;
                    }
                }
                Sample::Lozenges(l) => {
                    for z in &l.tiles {
                        out.write_record([&k, kind_name(z.kind), &z.a.to_string(), &z.b.to_string()])?;
                    }
                }
                Sample::Paths(f) => {
                    for (i, p) in f.paths.iter().enumerate() {
                        out.write_record([&k, &(i + 1).to_string(), &p.to_string()])?;
                    }
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(mut r: R) -> Result<Self, IoError> {
        let mut fields = std::collections::BTreeMap::new();
        let mut body = String::new();
        let mut line = String::new();
        while r.read_line(&mut line)? > 0 {
            if let Some(rest) = line.strip_prefix('#') {
                let (key, value) = rest
                    .split_once(':')
                    .ok_or_else(|| IoError::Malformed(format!("bad header line {line:?}")))?;
                fields.insert(key.trim().to_string(), value.trim().to_string());
            } else {
                body.push_str(&line);
            }
            line.clear();
        }
        let get = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| IoError::Malformed(format!("missing header field {key}")))
        };
        let num = |key: &str| -> Result<u64, IoError> {
            get(key)?
                .parse()
                .map_err(|_| IoError::Malformed(format!("header field {key} is not a number")))
        };
        let header = SampleHeader {
            generator: get("generator")?,
            seed: num("seed")?,
            order: num("order")? as usize,
            count: num("count")? as usize,
            model: get("model")?.parse()?,
            version: get("version")?,
        };

        let mut groups: Vec<Vec<csv::StringRecord>> = vec![Vec::new(); header.count];
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        for rec in reader.records() {
            let rec = rec?;
            let k: usize = parse_field(&rec, 0)?;
            groups
                .get_mut(k)
                .ok_or_else(|| IoError::Malformed(format!("sample index {k} out of range")))?
                .push(rec);
        }
        let n = header.order;
        let samples = groups
            .into_iter()
            .map(|recs| sample_from_records(header.model, n, &recs))
            .collect::<Result<Vec<_>, _>>()?;
        let f = SampleFile { header, samples };
        f.check()?;
        Ok(f)
    }
}

fn csv_columns(model: Model) -> &'static [&'static str] {
    match model {
        Model::Tableau => &["sample", "row", "index", "value"],
        Model::Particles | Model::Matching => &["sample", "row", "position"],
        Model::Lozenges => &["sample", "kind", "a", "b"],
        Model::Paths => &["sample", "path", "steps"],
    }
}

fn kind_name(k: LozengeKind) -> &'static str {
    match k {
        LozengeKind::Vertical => "vertical",
        LozengeKind::Left => "left",
        LozengeKind::Right => "right",
    }
}

fn parse_field<T: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T, IoError> {
    rec.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IoError::Malformed(format!("bad field {i} in record {rec:?}")))
}

fn sample_from_records(model: Model, n: usize, recs: &[csv::StringRecord]) -> Result<Sample, IoError> {
    let pairs = || {
        recs.iter()
            .map(|r| Ok((parse_field(r, 1)?, parse_field(r, 2)?)))
            .collect::<Result<Vec<(usize, u32)>, IoError>>()
    };
    Ok(match model {
        Model::Tableau => {
            let mut rows = vec![Vec::new(); n + 1];
            for r in recs {
                let (row, j, g): (usize, usize, u32) =
                    (parse_field(r, 1)?, parse_field(r, 2)?, parse_field(r, 3)?);
                let target = rows
                    .get_mut(row)
                    .ok_or_else(|| IoError::Malformed(format!("row {row} out of range")))?;
                if target.len() != j {
                    return Err(IoError::Malformed(format!("entry ({row}, {j}) out of sequence")));
                }
                target.push(g);
            }
            Sample::Tableau(StaircaseTableau::from_rows(&rows).map_err(BijectionError::from)?)
        }
        Model::Particles => Sample::Particles(ParticleSystem::from_particles(n, &pairs()?)?),
        Model::Matching => {
            let m = HalfHexMatching {
                order: n,
                vertical_edges: pairs()?,
            };
            matching_to_particles(&m)?;
            Sample::Matching(m)
        }
        Model::Lozenges => {
            let tiles = recs
                .iter()
                .map(|r| {
                    let kind = match r.get(1) {
                        Some("vertical") => LozengeKind::Vertical,
                        Some("left") => LozengeKind::Left,
                        Some("right") => LozengeKind::Right,
                        other => return Err(IoError::Malformed(format!("bad lozenge kind {other:?}"))),
                    };
                    Ok(Lozenge::new(kind, parse_field(r, 2)?, parse_field(r, 3)?))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Sample::Lozenges(LozengeTiling::new(n, tiles)?)
        }
        Model::Paths => {
            let paths = recs
                .iter()
                .map(|r| {
                    r.get(2)
                        .unwrap_or_default()
                        .parse::<Path>()
                        .map_err(IoError::Malformed)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let f = LatticePathFamily { order: n, paths };
            f.validate()?;
            Sample::Paths(f)
        }
    })
}

/// Writes `row,position,x,y,frequency` for every site, with `(x, y)` in the
/// rescaled trapezoid.
pub fn write_density_csv<W: Write>(w: W, d: &DensityField) -> Result<(), IoError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["row", "position", "x", "y", "frequency"])?;
    for r in 0..d.order {
        for p in 1..=d.row_len(r) as u32 {
            let (x, y) = site_to_trapezoid(d.order, r, p);
            out.write_record([
                r.to_string(),
                p.to_string(),
                format!("{x:.6}"),
                format!("{y:.6}"),
                format!("{:.6}", d.frequency(r, p)),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_every_model() {
        for model in Model::ALL {
            let f = SampleFile::generate(model, 4, 3, 11).unwrap();
            let back = SampleFile::from_json(&f.to_json().unwrap()).unwrap();
            assert_eq!(back, f, "{model}");
            for s in &back.samples {
                assert_eq!(s.model(), model);
            }
        }
    }

    #[test]
    fn csv_round_trip_every_model() {
        for model in Model::ALL {
            let f = SampleFile::generate(model, 3, 2, 5).unwrap();
            let mut buf = Vec::new();
            f.write_csv(&mut buf).unwrap();
            let back = SampleFile::read_csv(buf.as_slice()).unwrap();
            assert_eq!(back, f, "{model}");
        }
    }

    #[test]
    fn encodings_decode_to_the_same_state() {
        let t = crate::shuffle::sample(6, 3);
        for model in Model::ALL {
            assert_eq!(Sample::encode(model, &t).unwrap().decode().unwrap(), t);
        }
    }

    #[test]
    fn json_is_valid_for_empty_and_many() {
        for count in [0, 1, 4] {
            let f = SampleFile::generate(Model::Paths, 2, count, 9).unwrap();
            let text = f.to_json().unwrap();
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["samples"].as_array().unwrap().len(), count);
            assert_eq!(text.lines().filter(|l| l.starts_with("    {")).count(), count);
        }
    }

    #[test]
    fn header_is_checked() {
        let f = SampleFile::generate(Model::Tableau, 2, 2, 1).unwrap();
        let text = f.to_json().unwrap().replace("\"count\": 2", "\"count\": 3");
        assert!(matches!(SampleFile::from_json(&text), Err(IoError::Malformed(_))));
    }

    #[test]
    fn order_zero_file() {
        let f = SampleFile::generate(Model::Tableau, 0, 1, 0).unwrap();
        assert!(f.to_json().unwrap().contains("\"samples\": [\n    [[1]]\n  ]"));
    }

    #[test]
    fn tableau_json_is_row_major() {
        let f = SampleFile::generate(Model::Tableau, 1, 1, 0).unwrap();
        let v: Value = serde_json::from_str(&f.to_json().unwrap()).unwrap();
        let rows = v["samples"][0].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], serde_json::json!([1, 3]));
        assert_eq!(v["header"]["generator"], GENERATOR_NAME);
    }
}
