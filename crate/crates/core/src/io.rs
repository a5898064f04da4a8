//! Plain-text inputs: table traps and sampled interaction kernels.

use crate::error::{Error, Result};
use crate::interactions::Kernel;
use crate::spectra::SingleParticleSpectrum;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body.split_whitespace().collect()))
    })
}

fn number(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| Error::Parse { line, msg: format!("not a number: '{tok}'") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, msg: format!("not finite: '{tok}'") });
    }
    Ok(v)
}

/// Parses `n energy [parity]` lines. States must be numbered `0, 1, 2, ...`;
/// the parity column is either present on every line or on none.
pub fn parse_table_trap(text: &str) -> Result<SingleParticleSpectrum> {
    let mut energies = Vec::new();
    let mut parities = Vec::new();
    let mut with_parity = None;
    for (line, toks) in data_lines(text) {
        if toks.len() < 2 || toks.len() > 3 {
            return Err(Error::Parse { line, msg: "expected 'n energy [parity]'".into() });
        }
        let n: usize = toks[0].parse().map_err(|_| Error::Parse { line, msg: format!("bad state index '{}'", toks[0]) })?;
        if n != energies.len() {
            return Err(Error::Parse { line, msg: format!("expected state {} but found {n}", energies.len()) });
        }
        energies.push(number(toks[1], line)?);
        let has = toks.len() == 3;
        if *with_parity.get_or_insert(has) != has {
            return Err(Error::Parse { line, msg: "parity column must be given for all states or none".into() });
        }
        if has {
            parities.push(match toks[2] {
                "+" | "+1" | "1" => 1,
                "-" | "-1" => -1,
                other => return Err(Error::Parse { line, msg: format!("bad parity '{other}'") }),
            });
        }
    }
    if energies.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no states".into() });
    }
    SingleParticleSpectrum::table(energies, with_parity.unwrap_or(false).then_some(parities))
}

/// Parses `r value` lines with strictly increasing `r >= 0`.
pub fn parse_kernel(text: &str) -> Result<Kernel> {
    let mut r = Vec::new();
    let mut v = Vec::new();
    for (line, toks) in data_lines(text) {
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: "expected 'r value'".into() });
        }
        let x = number(toks[0], line)?;
        if x < 0.0 || r.last().is_some_and(|&last| x <= last) {
            return Err(Error::Parse { line, msg: "r must be non-negative and strictly increasing".into() });
        }
        r.push(x);
        v.push(number(toks[1], line)?);
    }
    if r.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no samples".into() });
    }
    Kernel::new(r, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_roundtrip() {
        let s = parse_table_trap("# demo\n0 0.5 +\n1 1.7 -1\n2 2.1 1 # note\n").unwrap();
        assert_eq!(s.len(), Some(3));
        assert_eq!(s.parity(1), Some(-1));
        assert!(parse_table_trap("0 1.0 +\n1 2.0\n").is_err());
        assert!(parse_table_trap("0 1.0\n2 2.0\n").is_err());
        assert!(parse_table_trap("0 1.0\n1 1.0\n").is_err());
        assert!(parse_table_trap("").is_err());
    }

    #[test]
    fn kernel_parse() {
        let k = parse_kernel("0 1\n0.5 0.5\n1 0\n").unwrap();
        assert_eq!(k.grid().len(), 3);
        assert!(parse_kernel("0 1\n0 2\n").is_err());
        assert!(parse_kernel("0 nan\n").is_err());
    }
}
