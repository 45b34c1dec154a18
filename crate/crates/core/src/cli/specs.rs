//! One-line specifiers for frame pairs and vectors.
//!
//! Pairs: `identity:d`, `dft:n`, `random:d:seed[:m]`, `file:PATH`.
//! Vectors: `comb:n:spacing[:offset]`, `spike:n:index`, `ones:n`,
//! `random:n:seed`, `values:v1;v2;...` (real entries).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix_file;
use crate::constructions::{
    dft_pair, dirac_comb, identity_pair, random_biorthogonal_pair, random_complex_vector,
    DEFAULT_COND_CAP,
};
use crate::frames::FramePair;
use crate::{CVector, Complex64, Error, Result};

fn bad(spec: &str, why: &str) -> Error {
    Error::InvalidInput(format!("bad specifier {spec:?}: {why}"))
}

fn number<T: std::str::FromStr>(spec: &str, field: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| bad(spec, &format!("{field:?} is not a valid number")))
}

pub fn parse_pair(spec: &str) -> Result<FramePair> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {path}: {e}")))?;
        return matrix_file::read_pair(&text);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["identity", d] => identity_pair(number(spec, d)?),
        ["dft", n] => dft_pair(number(spec, n)?),
        ["random", d, seed] => {
            let d = number(spec, d)?;
            random_biorthogonal_pair(d, d, number(spec, seed)?, DEFAULT_COND_CAP)
        }
        ["random", d, seed, m] => random_biorthogonal_pair(
            number(spec, d)?,
            number(spec, m)?,
            number(spec, seed)?,
            DEFAULT_COND_CAP,
        ),
        _ => Err(bad(
            spec,
            "expected identity:d, dft:n, random:d:seed[:m] or file:PATH",
        )),
    }
}

pub fn parse_vector(spec: &str) -> Result<CVector> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["comb", n, s] => dirac_comb(number(spec, n)?, number(spec, s)?, 0),
        ["comb", n, s, o] => dirac_comb(number(spec, n)?, number(spec, s)?, number(spec, o)?),
        ["spike", n, i] => {
            let (n, i): (usize, usize) = (number(spec, n)?, number(spec, i)?);
            if i >= n {
                return Err(bad(spec, "spike index out of range"));
            }
            Ok(CVector::from_fn(n, |r, _| {
                Complex64::new(if r == i { 1.0 } else { 0.0 }, 0.0)
            }))
        }
        ["ones", n] => {
            let n: usize = number(spec, n)?;
            if n == 0 {
                return Err(bad(spec, "length must be positive"));
            }
            Ok(CVector::from_element(n, Complex64::new(1.0, 0.0)))
        }
        ["random", n, seed] => {
            let n: usize = number(spec, n)?;
            if n == 0 {
                return Err(bad(spec, "length must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(number(spec, seed)?);
            Ok(random_complex_vector(n, &mut rng))
        }
        ["values", list] => {
            let values = list
                .split(';')
                .map(|v| number::<f64>(spec, v.trim()))
                .collect::<Result<Vec<_>>>()?;
            if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
                return Err(bad(spec, "values must be finite"));
            }
            Ok(CVector::from_iterator(
                values.len(),
                values.into_iter().map(|v| Complex64::new(v, 0.0)),
            ))
        }
        _ => Err(bad(
            spec,
            "expected comb:n:s[:o], spike:n:i, ones:n, random:n:seed or values:a;b;...",
        )),
    }
}
