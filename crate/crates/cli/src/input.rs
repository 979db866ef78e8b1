use std::io::Read;
use std::path::Path;

use spectral_factor::io::{nfunction_from_json, parse_input, Input};
use spectral_factor::{fourier_synthesize, Error, GridFunction, NFunction, Result};

/// Contents of `path`, or standard input for `-` or no path.
pub fn read_source(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

pub fn read_input(path: Option<&Path>) -> Result<Input<f64>> {
    parse_input(&read_source(path)?)
}

/// Grid samples of an input; series are synthesized on `n` points.
pub fn to_grid(input: Input<f64>, n: Option<usize>) -> Result<GridFunction<f64>> {
    match input {
        Input::Grid(f) => match n {
            Some(n) if n != f.len() => Err(Error::Parameter(format!(
                "--n {n} does not match the {} input samples",
                f.len()
            ))),
            _ => Ok(f),
        },
        Input::Series(s) => fourier_synthesize(&s, n.unwrap_or(spectral_factor::DEFAULT_GRID)),
    }
}

pub fn read_grid(path: Option<&Path>, n: Option<usize>) -> Result<GridFunction<f64>> {
    to_grid(read_input(path)?, n)
}

/// `--phi` is inline JSON when it starts with `{`, a file path otherwise.
pub fn read_phi(spec: Option<&str>) -> Result<NFunction<f64>> {
    match spec {
        None => NFunction::power(2.0),
        Some(s) if s.trim_start().starts_with('{') => nfunction_from_json(s),
        Some(path) => nfunction_from_json(&read_source(Some(Path::new(path)))?),
    }
}
