//! Bit-exact text format for frame pairs.
//!
//! ```text
//! d,m
//! <m rows of the analysis matrix, d cells each>
//! <d rows of the synthesis matrix, m cells each>
//! ```
//!
//! Each cell is a complex number `re+imi` (or `re-imi`) with both parts in
//! hexadecimal float notation, e.g. `0x1.8p+0-0x1p-2i` for `1.5 - 0.25i`.

use std::fmt::Write as _;

use crate::frames::FramePair;
use crate::{CMatrix, Complex64, Error, Result};

/// Hexadecimal float rendering of a finite `f64` (`-0x1.8p+1` for `-3.0`).
pub fn format_hex_float(x: f64) -> String {
    assert!(x.is_finite(), "hex float of non-finite value {x}");
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 && mantissa == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if exp_bits == 0 {
        (0, -1022)
    } else {
        (1, exp_bits - 1023)
    };
    let mut out = format!("{sign}0x{lead}");
    if mantissa != 0 {
        let digits = format!("{mantissa:013x}");
        out.push('.');
        out.push_str(digits.trim_end_matches('0'));
    }
    let _ = write!(out, "p{exp:+}");
    out
}

/// Parses the notation produced by [`format_hex_float`] (and the general
/// `[-+]0x<hex>[.<hex>]p[-+]<dec>` form when the significand fits 53 bits).
pub fn parse_hex_float(s: &str) -> Option<f64> {
    let (negative, rest) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let rest = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X"))?;
    let (significand, exponent) = rest.split_once(['p', 'P'])?;
    let exponent: i64 = exponent.parse().ok()?;
    let (int_part, frac_part) = significand.split_once('.').unwrap_or((significand, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let mut m: u64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        let digit = c.to_digit(16)? as u64;
        if m >> 60 != 0 {
            return None;
        }
        m = (m << 4) | digit;
    }
    if m > (1u64 << 53) {
        return None;
    }
    let shift = exponent.checked_sub(4 * frac_part.len() as i64)?;
    let value = scale_by_power_of_two(m as f64, shift);
    Some(if negative { -value } else { value })
}

fn scale_by_power_of_two(mut v: f64, mut k: i64) -> f64 {
    // Steps of 2^±600 keep every intermediate normal for in-range results.
    while k > 600 {
        v *= 2f64.powi(600);
        k -= 600;
    }
    while k < -600 {
        v *= 2f64.powi(-600);
        k += 600;
    }
    v * 2f64.powi(k as i32)
}

pub fn format_complex(z: Complex64) -> String {
    let im = format_hex_float(z.im);
    if let Some(abs) = im.strip_prefix('-') {
        format!("{}-{abs}i", format_hex_float(z.re))
    } else {
        format!("{}+{im}i", format_hex_float(z.re))
    }
}

pub fn parse_complex(cell: &str) -> Option<Complex64> {
    let body = cell.trim().strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).find(|&i| {
        matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'p' | b'P')
    })?;
    let re = parse_hex_float(&body[..split])?;
    let im_str = &body[split..];
    let im = parse_hex_float(im_str)?;
    Some(Complex64::new(re, im))
}

pub fn write_pair(pair: &FramePair) -> String {
    let (d, m) = (pair.ambient_dim(), pair.count());
    let mut out = format!("{d},{m}\n");
    for matrix in [pair.analysis(), pair.synthesis()] {
        for r in 0..matrix.nrows() {
            let row: Vec<String> = (0..matrix.ncols())
                .map(|c| format_complex(matrix[(r, c)]))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

fn parse_err(row: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        row,
        message: message.into(),
    }
}

/// Reads a pair; error rows are 1-based line numbers (the header is row 1).
pub fn read_pair(text: &str) -> Result<FramePair> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected header \"d,m\""))?;
    let dims: Vec<&str> = header.split(',').map(str::trim).collect();
    let (d, m) = match dims.as_slice() {
        [d, m] => (
            d.parse::<usize>().map_err(|_| parse_err(1, format!("bad dimension {d:?}")))?,
            m.parse::<usize>().map_err(|_| parse_err(1, format!("bad count {m:?}")))?,
        ),
        _ => return Err(parse_err(1, format!("expected header \"d,m\", got {header:?}"))),
    };
    if d == 0 || m < d {
        return Err(parse_err(1, format!("need 1 ≤ d ≤ m, got d={d}, m={m}")));
    }

    let mut read_matrix = |first_row: usize, rows: usize, cols: usize, what: &str| -> Result<CMatrix> {
        let mut matrix = CMatrix::zeros(rows, cols);
        for r in 0..rows {
            let (line_no, line) = lines.next().ok_or_else(|| {
                parse_err(
                    first_row + r,
                    format!("file ended before row {} of the {what} matrix", r + 1),
                )
            })?;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != cols {
                return Err(parse_err(
                    line_no,
                    format!("{what} row has {} cells, expected {cols}", cells.len()),
                ));
            }
            for (c, cell) in cells.iter().enumerate() {
                matrix[(r, c)] = parse_complex(cell).ok_or_else(|| {
                    parse_err(line_no, format!("cell {} is not a hex complex: {cell:?}", c + 1))
                })?;
            }
        }
        Ok(matrix)
    };
    let analysis = read_matrix(2, m, d, "analysis")?;
    let synthesis = read_matrix(2 + m, d, m, "synthesis")?;
    if let Some((line_no, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(line_no, format!("unexpected trailing content {extra:?}")));
    }
    FramePair::new(analysis, synthesis)
}
