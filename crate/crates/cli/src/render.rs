use confign_core::numeric::fmt_sig;
use serde::Serialize;

use crate::CliResult;

/// Significant digits of every float written by the CLI.
pub const FLOAT_DIGITS: usize = 15;

pub(crate) fn float(x: f64) -> String {
    fmt_sig(x, FLOAT_DIGITS)
}

/// CSV text with `# ` comment lines before the header.
pub fn csv_table<R, F>(comments: &[String], header: &[&str], rows: R) -> CliResult<String>
where
    R: IntoIterator<Item = Vec<F>>,
    F: AsRef<[u8]>,
{
    let mut text = String::new();
    for c in comments {
        text.push_str("# ");
        text.push_str(c);
        text.push('\n');
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    text.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(text)
}

pub(crate) fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
