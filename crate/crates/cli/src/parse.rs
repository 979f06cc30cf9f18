//! Parsing of point arguments in the forms "re", "re+imi", "imi", "inf".

use punct_metrics::ComplexPoint;

pub fn parse_point(text: &str) -> Result<ComplexPoint, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty point".into());
    }
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(ComplexPoint::Infinity);
    }
    if let Some(imag) = s.strip_suffix(['i', 'I']) {
        // split into real part and imaginary coefficient at the last sign
        // that is not a leading sign and not part of an exponent
        let bytes = imag.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&imag[..idx], &imag[idx..]),
            None => ("0", imag),
        };
        let re: f64 = re_str
            .parse()
            .map_err(|_| format!("bad real part {re_str:?}"))?;
        let im: f64 = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse()
                .map_err(|_| format!("bad imaginary part {other:?}"))?,
        };
        if !re.is_finite() || !im.is_finite() {
            return Err(format!("non-finite point {text:?}"));
        }
        Ok(ComplexPoint::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(|_| format!("bad number {text:?}"))?;
        if !re.is_finite() {
            return Err(format!("non-finite point {text:?}"));
        }
        Ok(ComplexPoint::new(re, 0.0))
    }
}

/// Format a value with 12 significant digits, plain decimal notation when
/// the magnitude allows it.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}
