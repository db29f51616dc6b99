//! Shell-friendly complex literals: an optional real part followed by an
//! optional signed imaginary part with a trailing `i`, scientific notation
//! allowed. Examples: `5`, `5i`, `-1+1.7320508i`, `i`, `-i`, `2.5e+1-3e-2i`.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

pub fn parse_complex(input: &str) -> Result<Complex64> {
    let s = input.trim();
    if s.is_empty() {
        bail!("empty complex literal");
    }
    let Some(body) = s.strip_suffix('i') else {
        let re: f64 = s
            .parse()
            .with_context(|| format!("cannot parse '{input}' as a real number"))?;
        return Ok(Complex64::new(re, 0.0));
    };
    // Split at the last sign that starts the imaginary part (not a leading
    // sign, not an exponent sign).
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let ch = bytes[k];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re: f64 = if re_part.is_empty() {
        0.0
    } else {
        re_part
            .parse()
            .with_context(|| format!("cannot parse real part of '{input}'"))?
    };
    let im: f64 = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_part
            .parse()
            .with_context(|| format!("cannot parse imaginary part of '{input}'"))?,
    };
    Ok(Complex64::new(re, im))
}
