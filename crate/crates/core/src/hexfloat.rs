//! Hexadecimal floating-point literals for bit-exact text I/O.

use std::path::Path;

use crate::error::{Error, Result};

/// Formats `x` as a lowercase C99 hexadecimal literal, e.g. `-0x1.8p+1`.
///
/// Zero prints as `0x0p+0`. Subnormals are printed normalized
/// (`0x1p-1074`). Non-finite values print as `inf`, `-inf` and `nan`.
pub fn format_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    if x == 0.0 {
        return format!("{sign}0x0p+0");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let mut frac = bits & ((1u64 << 52) - 1);
    let mut exp = biased - 1023;
    if biased == 0 {
        // shift the leading one of the subnormal into the implicit position
        let shift = frac.leading_zeros() as i32 - 11;
        frac = (frac << shift) & ((1u64 << 52) - 1);
        exp = -1022 - shift;
    }
    let exp_sign = if exp < 0 { '-' } else { '+' };
    if frac == 0 {
        return format!("{sign}0x1p{exp_sign}{}", exp.abs());
    }
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    format!("{sign}0x1.{digits}p{exp_sign}{}", exp.abs())
}

/// Parses a hexadecimal floating-point literal. The value must be exactly
/// representable in binary64.
pub fn parse_hex(s: &str) -> Result<f64> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let v = hexf_parse::parse_hexf64(body, false)
        .map_err(|e| Error::InvalidInput(format!("bad hex float {s:?}: {e}")))?;
    Ok(if neg { -v } else { v })
}

/// Renders `values` one hex literal per line after a `# <header>` line.
pub(crate) fn render_lines(header: &str, values: &[f64]) -> String {
    let mut out = String::with_capacity(24 * (values.len() + 1));
    out.push_str("# ");
    out.push_str(header);
    out.push('\n');
    for &v in values {
        out.push_str(&format_hex(v));
        out.push('\n');
    }
    out
}

/// Parsed `# <magic> v1 key=value ...` header plus the values below it.
pub(crate) struct HexFile {
    pub fields: Vec<(String, String)>,
    pub values: Vec<f64>,
}

impl HexFile {
    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub(crate) fn parse_lines(text: &str, path: &Path, magic: &str) -> Result<HexFile> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file".into()))?;
    let mut tokens = header
        .strip_prefix('#')
        .ok_or_else(|| bad(1, "missing header line".into()))?
        .split_whitespace();
    if tokens.next() != Some(magic) || tokens.next() != Some("v1") {
        return Err(bad(1, format!("expected header `# {magic} v1 ...`")));
    }
    let mut fields = Vec::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| bad(1, format!("malformed header field {tok:?}")))?;
        fields.push((k.to_string(), v.to_string()));
    }
    let mut values = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let v = parse_hex(line).map_err(|e| bad(i + 1, e.to_string()))?;
        values.push(v);
    }
    Ok(HexFile { fields, values })
}
