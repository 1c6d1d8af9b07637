//! `start:stop:step` grids.

use anyhow::{bail, Context, Result};

/// Parses a single value or an inclusive `start:stop:step` range.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.trim().parse::<f64>().with_context(|| format!("bad number {p:?} in {s:?}"));
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [a, b, c] => {
            let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
            if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
                bail!("range {s:?} needs start <= stop and a positive step");
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                bail!("range {s:?} has {count} points");
            }
            // trims float noise such as 0.07500000000000001
            Ok((0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
        }
        _ => bail!("expected a value or start:stop:step, got {s:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1.5").unwrap(), vec![1.5]);
        assert_eq!(parse_grid("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("0.05:0.5:0.01").unwrap().len(), 46);
        assert_eq!(parse_grid("1:2.9:1").unwrap(), vec![1.0, 2.0]);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a").is_err());
    }
}
