use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Formats `x` with `digits` significant digits, dropping trailing zeros.
pub fn fmt_num(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_fraction(&s).to_string()
    } else {
        let s = format!("{x:.prec$e}", prec = digits - 1);
        let (mant, e) = s.split_once('e').expect("exponent form");
        format!("{}e{e}", trim_fraction(mant))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> String {
    fmt_num(x, 12)
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A sink for `--out` or stdout.
pub fn open_sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// CSV writer whose output starts with `#` lines recording the version and
/// the resolved configuration.
pub fn csv_writer(out: Option<&Path>, config: &[(&str, String)]) -> Result<csv::Writer<Box<dyn Write>>> {
    let mut sink = open_sink(out)?;
    writeln!(sink, "# ftqm {}", ftqm::VERSION)?;
    for (k, v) in config {
        writeln!(sink, "# {k}={v}")?;
    }
    Ok(csv::Writer::from_writer(sink))
}
