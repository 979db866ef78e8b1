//! JSON and CSV formats.
//!
//! * grid function: `{"n": 8, "values": [..]}` or `{"values_complex": [[re, im], ..]}`;
//!   CSV with one sample per row (`value` or `re,im`)
//! * Fourier series: `{"coeffs": {"-1": [re, im], "0": [re, im], ..}}`, with an
//!   optional `"degree"` giving the bandwidth
//! * spectral factor: `{"a": [[re, im], ..]}`
//! * N-function: `{"kind": "power", "q": 2.0}` or `{"kind": "density", "u_grid": [[t, u], ..]}`

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circle::{GridFunction, Samples};
use crate::error::{Error, Result};
use crate::fourier::{FourierSeries, SpectralFactor};
use crate::orlicz::NFunction;
use crate::scalar::Real;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn pair<T: Real>(c: &Complex<T>) -> [T; 2] {
    [c.re, c.im]
}

fn unpair<T: Real>(p: &[T; 2]) -> Complex<T> {
    Complex::new(p[0], p[1])
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Real"))]
struct GridJson<T> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values_complex: Option<Vec<[T; 2]>>,
}

pub fn grid_from_json<T: Real>(text: &str) -> Result<GridFunction<T>> {
    let raw: GridJson<T> = serde_json::from_str(text).map_err(parse_err)?;
    let f = match (raw.values, raw.values_complex) {
        (Some(v), None) => GridFunction::from_real(v)?,
        (None, Some(v)) => GridFunction::from_complex(v.iter().map(unpair).collect())?,
        _ => {
            return Err(Error::Parse(
                "grid function needs exactly one of \"values\" and \"values_complex\"".into(),
            ))
        }
    };
    if let Some(n) = raw.n {
        if n != f.len() {
            return Err(Error::Parse(format!("\"n\" is {n} but {} samples given", f.len())));
        }
    }
    Ok(f)
}

pub fn grid_to_json<T: Real>(f: &GridFunction<T>) -> String {
    let raw = match f.samples() {
        Samples::Real(v) => GridJson {
            n: Some(v.len()),
            values: Some(v.clone()),
            values_complex: None,
        },
        Samples::Complex(v) => GridJson {
            n: Some(v.len()),
            values: None,
            values_complex: Some(v.iter().map(pair).collect()),
        },
    };
    serde_json::to_string(&raw).expect("finite samples serialize")
}

/// One sample per row; a row is `value` or `re,im`. Blank rows, `#` comments
/// and a non-numeric header row are skipped.
pub fn grid_from_csv<T: Real>(text: &str) -> Result<GridFunction<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(parse_err)?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let fields: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match fields {
            Ok(v) => rows.push(v.into_iter().map(T::lit).collect()),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("record {}: {e}", i + 1))),
        }
    }
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("rows have differing numbers of fields".into()));
    }
    match width {
        1 => GridFunction::from_real(rows.into_iter().map(|r| r[0]).collect()),
        2 => GridFunction::from_complex(rows.into_iter().map(|r| Complex::new(r[0], r[1])).collect()),
        0 => Err(Error::Parse("no samples".into())),
        w => Err(Error::Parse(format!("rows must have 1 or 2 fields, got {w}"))),
    }
}

pub fn grid_to_csv<T: Real>(f: &GridFunction<T>) -> String {
    let mut out = String::new();
    match f.samples() {
        Samples::Real(v) => v.iter().for_each(|x| out.push_str(&format!("{x}\n"))),
        Samples::Complex(v) => v.iter().for_each(|z| out.push_str(&format!("{},{}\n", z.re, z.im))),
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Real"))]
struct SeriesJson<T> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    coeffs: BTreeMap<String, [T; 2]>,
}

pub fn series_from_json<T: Real>(text: &str) -> Result<FourierSeries<T>> {
    let raw: SeriesJson<T> = serde_json::from_str(text).map_err(parse_err)?;
    let mut entries = Vec::with_capacity(raw.coeffs.len());
    for (k, c) in &raw.coeffs {
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("frequency key '{k}' is not an integer")))?;
        entries.push((k, unpair(c)));
    }
    let s = FourierSeries::from_entries(entries)?;
    match raw.degree {
        Some(d) if d < s.bandwidth() => Err(Error::Parse(format!(
            "\"degree\" {d} is below the largest frequency {}",
            s.bandwidth()
        ))),
        Some(d) => {
            let d = d as i64;
            FourierSeries::from_entries((-d..=d).map(|k| (k, s.get(k))))
        }
        None => Ok(s),
    }
}

pub fn series_to_json<T: Real>(s: &FourierSeries<T>) -> String {
    let raw = SeriesJson {
        degree: Some(s.bandwidth()),
        coeffs: s.entries().map(|(k, c)| (k.to_string(), pair(&c))).collect(),
    };
    serde_json::to_string(&raw).expect("finite coefficients serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "T: Real"))]
struct FactorJson<T> {
    a: Vec<[T; 2]>,
}

pub fn factor_to_json<T: Real>(a: &SpectralFactor<T>) -> String {
    let raw = FactorJson {
        a: a.coeffs().iter().map(pair).collect(),
    };
    serde_json::to_string(&raw).expect("finite coefficients serialize")
}

pub fn factor_from_json<T: Real>(text: &str) -> Result<SpectralFactor<T>> {
    let raw: FactorJson<T> = serde_json::from_str(text).map_err(parse_err)?;
    SpectralFactor::new(raw.a.iter().map(unpair).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields, bound(deserialize = "T: Real"))]
enum NFunctionJson<T> {
    Power { q: T },
    Density { u_grid: Vec<[T; 2]> },
}

pub fn nfunction_from_json<T: Real>(text: &str) -> Result<NFunction<T>> {
    let raw: NFunctionJson<T> = serde_json::from_str(text).map_err(parse_err)?;
    match raw {
        NFunctionJson::Power { q } => NFunction::power(q),
        NFunctionJson::Density { u_grid } => {
            let nodes: Vec<(T, T)> = u_grid.iter().map(|p| (p[0], p[1])).collect();
            NFunction::from_density(&nodes)
        }
    }
}

pub fn nfunction_to_json<T: Real>(phi: &NFunction<T>) -> String {
    let raw = match phi {
        NFunction::Power { q } => NFunctionJson::Power { q: *q },
        NFunction::Density(table) => NFunctionJson::Density {
            u_grid: table.nodes().map(|(t, u)| [t, u]).collect(),
        },
    };
    serde_json::to_string(&raw).expect("finite nodes serialize")
}

/// Input accepted where either samples or coefficients make sense.
#[derive(Debug, Clone, PartialEq)]
pub enum Input<T> {
    Grid(GridFunction<T>),
    Series(FourierSeries<T>),
}

/// JSON grid function, JSON Fourier series, or CSV samples.
pub fn parse_input<T: Real>(text: &str) -> Result<Input<T>> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return grid_from_csv(text).map(Input::Grid);
    }
    let value: serde_json::Value = serde_json::from_str(trimmed).map_err(parse_err)?;
    if value.get("coeffs").is_some() {
        series_from_json(trimmed).map(Input::Series)
    } else {
        grid_from_json(trimmed).map(Input::Grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_json_round_trip() {
        let f = GridFunction::<f64>::from_fn(8, |t| t.cos()).unwrap();
        let back: GridFunction<f64> = grid_from_json(&grid_to_json(&f)).unwrap();
        assert_eq!(f, back);
        let z = GridFunction::<f64>::from_complex_fn(8, |t| Complex::new(t.cos(), t.sin())).unwrap();
        assert_eq!(z, grid_from_json::<f64>(&grid_to_json(&z)).unwrap());
    }

    #[test]
    fn grid_json_errors() {
        assert!(matches!(grid_from_json::<f64>("{\"values\": [1, 2"), Err(Error::Parse(_))));
        assert!(matches!(grid_from_json::<f64>("{\"n\": 16, \"values\": [1,1,1,1,1,1,1,1]}"), Err(Error::Parse(_))));
        assert!(matches!(grid_from_json::<f64>("{}"), Err(Error::Parse(_))));
        assert!(matches!(grid_from_json::<f64>("{\"values\": [1,1,1]}"), Err(Error::Parameter(_))));
    }

    #[test]
    fn csv_round_trip_and_header() {
        let f = GridFunction::<f64>::from_fn(16, |t| 2.0 + t.sin()).unwrap();
        assert_eq!(f, grid_from_csv::<f64>(&grid_to_csv(&f)).unwrap());
        let text = "value\n1\n2\n3\n4\n5\n6\n7\n8\n";
        assert_eq!(grid_from_csv::<f64>(text).unwrap().len(), 8);
        assert!(grid_from_csv::<f64>("1\n2\nx\n").is_err());
        assert!(grid_from_csv::<f64>("1\n2,3\n").is_err());
    }

    #[test]
    fn series_json() {
        let text = r#"{"degree": 1, "coeffs": {"-1": [-0.5, 0], "0": [1.25, 0], "1": [-0.5, 0]}}"#;
        let s: FourierSeries<f64> = series_from_json(text).unwrap();
        assert_eq!(s.bandwidth(), 1);
        assert_eq!(s.get(0), Complex::new(1.25, 0.0));
        assert_eq!(s, series_from_json::<f64>(&series_to_json(&s)).unwrap());
        let padded: FourierSeries<f64> = series_from_json(r#"{"degree": 3, "coeffs": {"0": [9, 0]}}"#).unwrap();
        assert_eq!(padded.bandwidth(), 3);
        assert!(series_from_json::<f64>(r#"{"degree": 0, "coeffs": {"2": [1, 0]}}"#).is_err());
        assert!(series_from_json::<f64>(r#"{"coeffs": {"x": [1, 0]}}"#).is_err());
    }

    #[test]
    fn factor_and_nfunction_json() {
        let a = SpectralFactor::new(vec![Complex::new(1.0, 0.0), Complex::new(-0.5, 0.0)]).unwrap();
        let text = factor_to_json(&a);
        assert_eq!(text, r#"{"a":[[1.0,0.0],[-0.5,0.0]]}"#);
        assert_eq!(a, factor_from_json::<f64>(&text).unwrap());

        let p: NFunction<f64> = nfunction_from_json(r#"{"kind":"power","q":2.0}"#).unwrap();
        assert_eq!(p, NFunction::power(2.0).unwrap());
        assert_eq!(p, nfunction_from_json::<f64>(&nfunction_to_json(&p)).unwrap());
        let d: NFunction<f64> =
            nfunction_from_json(r#"{"kind":"density","u_grid":[[0,0],[1,1],[2,4]]}"#).unwrap();
        assert_eq!(d, nfunction_from_json::<f64>(&nfunction_to_json(&d)).unwrap());
        assert!(matches!(nfunction_from_json::<f64>(r#"{"kind":"cubic"}"#), Err(Error::Parse(_))));
        assert!(matches!(nfunction_from_json::<f64>(r#"{"kind":"power","q":0.5}"#), Err(Error::Parameter(_))));
    }

    #[test]
    fn input_detection() {
        assert!(matches!(parse_input::<f64>("{\"values\": [1,1,1,1,1,1,1,1]}"), Ok(Input::Grid(_))));
        assert!(matches!(parse_input::<f64>("{\"coeffs\": {\"0\": [9, 0]}}"), Ok(Input::Series(_))));
        assert!(matches!(parse_input::<f64>("1\n1\n1\n1\n1\n1\n1\n1\n"), Ok(Input::Grid(_))));
        assert!(matches!(parse_input::<f64>("{oops"), Err(Error::Parse(_))));
    }
}
