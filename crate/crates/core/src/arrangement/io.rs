//! Arrangement files.
//!
//! JSON (format version 1):
//!
//! ```json
//! {"format_version": 1, "variables": ["x", "y", "z"], "forms": [[1, 0, 0], [1, -1, 0]]}
//! ```
//!
//! `format_version` is optional. Coefficients are integers, or strings
//! holding a rational `p/q`; each row is scaled to its canonical integer
//! form.
//!
//! Text: one linear form per line (commas also separate forms), `#` starts
//! a comment, and an optional header line `variables: x, y, z` fixes the
//! ring. Without a header the variables are `x, y, z, t, w` (or `x1, x2,
//! ...`), as many as the highest one used.
//!
//! ```text
//! variables: x, y, z, t
//! x
//! x - y
//! y - z
//! ```

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Arrangement, LinearForm};
use crate::algebra::{default_var_names, parse_poly, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Rat;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format_version: Option<u32>,
    pub variables: Vec<String>,
    pub forms: Vec<Vec<serde_json::Value>>,
}

fn coefficient(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Rat::integer)
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not a 64-bit integer"))),
        serde_json::Value::String(s) => s
            .trim()
            .parse::<Rat>()
            .map_err(|_| Error::Parse(format!("bad rational coefficient `{s}`"))),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn from_json_str(s: &str) -> Result<Arrangement> {
    let file: ArrangementFile =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("arrangement JSON: {e}")))?;
    if let Some(v) = file.format_version {
        if v != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {v}")));
        }
    }
    let l = file.variables.len();
    let mut forms = Vec::with_capacity(file.forms.len());
    for (i, row) in file.forms.iter().enumerate() {
        if row.len() != l {
            return Err(Error::Parse(format!(
                "form {i} has {} coefficients for {l} variables",
                row.len()
            )));
        }
        let c = row.iter().map(coefficient).collect::<Result<Vec<_>>>()?;
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroForm(i));
        }
        forms.push(LinearForm::from_rationals(&c)?);
    }
    Arrangement::new(file.variables, forms)
}

pub fn to_json(a: &Arrangement) -> serde_json::Value {
    serde_json::json!({
        "format_version": FORMAT_VERSION,
        "variables": a.names(),
        "forms": a.forms().iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>(),
    })
}

/// Splits text input into the variable list and the form strings.
fn split_text(s: &str) -> Result<(Vec<String>, Vec<String>)> {
    let mut header: Option<Vec<String>> = None;
    let mut items = Vec::new();
    for line in s.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("variables:") {
            if header.is_some() || !items.is_empty() {
                return Err(Error::Parse("the variables line must come first".into()));
            }
            header = Some(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect(),
            );
            continue;
        }
        items.extend(
            line.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from),
        );
    }
    let names = match header {
        Some(h) => h,
        None => infer_names(&items)?,
    };
    Ok((names, items))
}

fn infer_names(items: &[String]) -> Result<Vec<String>> {
    let mut idents: Vec<String> = Vec::new();
    for item in items {
        let chars: Vec<char> = item.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_alphabetic() || chars[i] == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                idents.push(chars[start..i].iter().collect());
            } else {
                i += 1;
            }
        }
    }
    let short = default_var_names(5);
    if idents.iter().all(|w| short.contains(w)) {
        let l = idents
            .iter()
            .map(|w| short.iter().position(|s| s == w).unwrap() + 1)
            .max()
            .unwrap_or(0);
        return Ok(default_var_names(l));
    }
    let mut l = 0;
    for w in &idents {
        match w.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if i >= 1 => l = l.max(i),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown variable `{w}`; add a `variables:` header line"
                )))
            }
        }
    }
    Ok((1..=l).map(|i| format!("x{i}")).collect())
}

/// Parses one linear form, allowing a constant term. Returns the linear
/// coefficients and the constant.
fn parse_affine(s: &str, names: &[String]) -> Result<(Vec<Rat>, Rat)> {
    let p: Polynomial<Rat> = parse_poly(s, names)?;
    if p.degree().unwrap_or(0) > 1 {
        return Err(Error::Parse(format!("`{s}` is not linear")));
    }
    let l = names.len();
    let lin = (0..l).map(|i| p.coeff(&Monomial::var(i))).collect();
    Ok((lin, p.coeff(&Monomial::one())))
}

/// Parses the text format; affine forms are rejected with a hint to cone.
pub fn from_text(s: &str) -> Result<Arrangement> {
    let (names, items) = split_text(s)?;
    let mut forms = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let (lin, c) = parse_affine(item, &names)?;
        if !c.is_zero() {
            return Err(Error::NotCentral {
                index: i,
                constant: c.to_string(),
            });
        }
        if lin.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroForm(i));
        }
        forms.push(LinearForm::from_rationals(&lin)?);
    }
    Arrangement::new(names, forms)
}

/// Parses affine forms in the text format and cones them.
pub fn cone_from_text(s: &str) -> Result<Arrangement> {
    let (names, items) = split_text(s)?;
    let affine = items
        .iter()
        .map(|item| parse_affine(item, &names))
        .collect::<Result<Vec<_>>>()?;
    Arrangement::cone(names, &affine)
}

pub fn to_text(a: &Arrangement) -> String {
    let mut out = format!("variables: {}\n", a.names().join(", "));
    for f in a.rendered_forms() {
        out.push_str(&f);
        out.push('\n');
    }
    out
}

/// Parses JSON or text, decided by the first non-blank character.
pub fn from_str_auto(s: &str) -> Result<Arrangement> {
    if s.trim_start().starts_with('{') {
        from_json_str(s)
    } else {
        from_text(s)
    }
}

pub fn read_file(path: &Path) -> Result<Arrangement> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_str_auto(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let a = from_text("x, y, z, t").unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.nvars(), 4);
        let b = from_text(&to_text(&a)).unwrap();
        assert_eq!(a, b);
        let c = from_text("variables: a, b\n# comment\na - 2b\nb\n").unwrap();
        assert_eq!(c.rendered_forms(), vec!["a - 2*b", "b"]);
    }

    #[test]
    fn text_errors() {
        assert!(matches!(from_text("x, 2x"), Err(Error::DuplicateHyperplane { .. })));
        assert!(matches!(from_text("x - y - 1"), Err(Error::NotCentral { .. })));
        assert!(matches!(from_text("x*y"), Err(Error::Parse(_))));
        assert!(matches!(from_text("x - x, y"), Err(Error::ZeroForm(0))));
        assert!(matches!(from_text("q"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = from_text("x - y, 2y + 3z, x").unwrap();
        let j = to_json(&a).to_string();
        assert_eq!(from_json_str(&j).unwrap(), a);
        let r = from_json_str(r#"{"variables":["x","y"],"forms":[["1/2", "-1/3"]]}"#).unwrap();
        assert_eq!(r.form(0).coeffs(), &[3, -2]);
        assert!(from_json_str(r#"{"variables":["x"],"forms":[[1, 2]]}"#).is_err());
    }

    #[test]
    fn cone_text() {
        let c = cone_from_text("x, x - 1").unwrap();
        assert_eq!(c.rendered_forms(), vec!["x", "x - z", "z"]);
        assert_eq!(c.nvars(), 2);
    }

    #[test]
    fn indexed_names() {
        let a = from_text("x1 - x3, x2").unwrap();
        assert_eq!(a.nvars(), 3);
    }
}
