//! Flat-file formats: coefficient files (`n,re,im`) for functions of Σ and
//! weight files (`n,weight`) for radius queries.
//!
//! Lines starting with `#` are comments. Every index 1…N must appear exactly
//! once; the principal part of a coefficient file is implicitly 1.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input)
}

fn format_err(line: u64, reason: impl Into<String>) -> Error {
    Error::Format {
        line,
        reason: reason.into(),
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    format_err(line, e.to_string())
}

/// Parses rows `n,v_1,…,v_k` after checking the header. Returns values indexed by n − 1.
fn read_indexed<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = reader(input);
    let found = rdr.headers().map_err(csv_err)?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(format_err(
            1,
            format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut rows: Vec<Option<Vec<f64>>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != header.len() {
            return Err(format_err(
                line,
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        let n: usize = rec[0].parse().map_err(|_| {
            format_err(
                line,
                format!("index `{}` is not a positive integer", &rec[0]),
            )
        })?;
        if n == 0 {
            return Err(format_err(line, "indices start at n = 1"));
        }
        let values = rec
            .iter()
            .skip(1)
            .map(|field| {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format_err(line, format!("`{field}` is not a finite number")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() < n {
            rows.resize(n, None);
        }
        if rows[n - 1].replace(values).is_some() {
            return Err(format_err(line, format!("index {n} appears twice")));
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| format_err(0, format!("index {} is missing", i + 1))))
        .collect()
}

/// Reads a coefficient file into the normalized series `1/z + Σ a_n z^n`.
pub fn read_coefficients<R: Read>(input: R) -> Result<LaurentSeries> {
    let rows = read_indexed(input, &["n", "re", "im"])?;
    LaurentSeries::normalized(
        rows.into_iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect(),
    )
}

/// Writes the tail of `f` as a coefficient file, preceded by `comment` lines.
pub fn write_coefficients<W: Write>(
    mut out: W,
    f: &LaurentSeries,
    comment: &[String],
) -> std::io::Result<()> {
    for line in comment {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "n,re,im")?;
    for (i, a) in f.coeffs().iter().enumerate() {
        writeln!(out, "{},{},{}", i + 1, a.re, a.im)?;
    }
    Ok(())
}

/// Reads a weight file `n,weight`; weights must be nonnegative.
pub fn read_weights<R: Read>(input: R) -> Result<Vec<f64>> {
    let rows = read_indexed(input, &["n", "weight"])?;
    rows.into_iter()
        .enumerate()
        .map(|(i, v)| {
            if v[0] < 0.0 {
                Err(format_err(
                    0,
                    format!("weight at n = {} is negative", i + 1),
                ))
            } else {
                Ok(v[0])
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_coefficients_in_any_order() {
        let text = "# test\nn,re,im\n2,0.5,-1\n1,4,0\n";
        let f = read_coefficients(text.as_bytes()).unwrap();
        assert_eq!(f.truncation(), 2);
        assert_eq!(f.coeff(1), Some(Complex64::new(4.0, 0.0)));
        assert_eq!(f.coeff(2), Some(Complex64::new(0.5, -1.0)));
        assert!(f.is_normalized());
    }

    #[test]
    fn header_only_is_the_pole() {
        let f = read_coefficients("n,re,im\n".as_bytes()).unwrap();
        assert_eq!(f, LaurentSeries::pole());
    }

    #[test]
    fn bad_rows_report_their_line() {
        let err = read_coefficients("n,re,im\n1,1,0\n2,abc,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err:?}");
        let err = read_coefficients("n,re,im\n1,1,0\n1,2,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err:?}");
        let err = read_coefficients("n,re\n1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }), "{err:?}");
        let err = read_coefficients("n,re,im\n0,1,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn gaps_are_rejected() {
        assert!(read_coefficients("n,re,im\n1,1,0\n3,2,0\n".as_bytes()).is_err());
    }

    #[test]
    fn coefficients_round_trip() {
        let f = LaurentSeries::new(
            Complex64::new(1.0, 0.0),
            vec![Complex64::new(0.1, -2.5e-7), Complex64::new(-3.0, 1e12)],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_coefficients(&mut buf, &f, &["params: none".to_string()]).unwrap();
        assert_eq!(read_coefficients(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn weights() {
        assert_eq!(
            read_weights("n,weight\n1,1\n2,0.5\n".as_bytes()).unwrap(),
            vec![1.0, 0.5]
        );
        assert!(read_weights("n,weight\n1,-1\n".as_bytes()).is_err());
    }
}
