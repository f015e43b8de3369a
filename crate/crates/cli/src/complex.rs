use num_complex::Complex64;

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also `i`, `-i`, `a+i`).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a complex number of the form a+bi");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .ok()
            .filter(|re| re.is_finite())
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(bad);
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Comma-separated list of complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

/// Shortest round-trip form; exponent notation outside [1e-4, 1e15).
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `a+bi` form that [`parse_complex`] reads back exactly.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", fmt_real(z.re), fmt_real(-z.im))
    } else {
        format!("{}+{}i", fmt_real(z.re), fmt_real(z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("1+0i").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(
            parse_complex("-0.5-2i").unwrap(),
            Complex64::new(-0.5, -2.0)
        );
        assert_eq!(parse_complex("2.5i").unwrap(), Complex64::new(0.0, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("3+i").unwrap(), Complex64::new(3.0, 1.0));
        assert_eq!(
            parse_complex("1e-3-2E+1i").unwrap(),
            Complex64::new(1e-3, -20.0)
        );
        assert_eq!(
            parse_complex(" 0.25 + 0.5i ").unwrap(),
            Complex64::new(0.25, 0.5)
        );
    }

    #[test]
    fn rejects() {
        for s in ["", "i1", "1+2j", "abc", "1++2i", "inf", "nan+1i"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn round_trip() {
        for z in [Complex64::new(0.1, -1e-300), Complex64::new(-3.0, 2.5e10)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(3.0), "3");
        assert_eq!(fmt_real(0.5773502684944074), "0.5773502684944074");
        assert_eq!(fmt_real(1.2e-17), "1.2e-17");
        assert_eq!(fmt_real(-2.5e20), "-2.5e20");
        assert_eq!(fmt_real(1e-9).parse::<f64>().unwrap(), 1e-9);
    }

    #[test]
    fn lists() {
        let v = parse_complex_list("0,0.5,0.1-0.2i").unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_complex_list("0.5,,1").is_err());
    }
}
