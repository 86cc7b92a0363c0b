//! Value parsers for amplitudes, angles and β values.

use std::f64::consts::PI;

use num_complex::Complex64;

/// A real number, optionally written as a fraction `a/b`.
pub fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `re,im` (or just `re`).
pub fn amplitude(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(number(re)?, number(im)?)),
        None => Ok(Complex64::new(number(s)?, 0.0)),
    }
}

/// Radians, or a multiple of π such as `pi/4`, `3pi/8`, `3*pi/8`, `-pi`.
pub fn angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let Some((head, tail)) = t.split_once("pi") else {
        return number(&t);
    };
    let head = head.trim().trim_end_matches('*').trim();
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => number(h).map_err(|_| format!("bad angle `{s}`"))?,
    };
    let tail = tail.trim();
    let divisor = if tail.is_empty() {
        1.0
    } else {
        let d = tail.strip_prefix('/').ok_or_else(|| format!("bad angle `{s}`"))?;
        number(d).map_err(|_| format!("bad angle `{s}`"))?
    };
    if divisor == 0.0 {
        return Err(format!("zero divisor in angle `{s}`"));
    }
    Ok(factor * PI / divisor)
}

/// Values of a `start:stop:step` range.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaRange(pub Vec<f64>);

/// `start:stop:step`, inclusive of `stop` when it lies on the lattice.
pub fn range(s: &str) -> Result<BetaRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(format!("range `{s}` must look like start:stop:step"));
    };
    let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
    if step <= 0.0 || stop < start {
        return Err(format!("range `{s}` needs step > 0 and stop >= start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok(BetaRange(
        (0..count)
            .map(|i| {
                let v = start + i as f64 * step;
                if (v - stop).abs() < 1e-9 {
                    stop
                } else {
                    v
                }
            })
            .collect(),
    ))
}
