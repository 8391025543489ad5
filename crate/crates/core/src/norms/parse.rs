//! Text grammar for norm specs:
//!
//! ```text
//! spec := "l1" | "l2" | "linf" | "lp:" FLOAT
//!       | "scale:" FLOAT "*" spec
//!       | "lin:" PATH "*" spec
//! ```
//!
//! `PATH` names a JSON matrix file and may not contain `*`.

use std::fs;
use std::path::Path;

use super::{Exponent, NormSpec, Transform, MAX_DEPTH};
use crate::error::{Error, Result};
use crate::numerics::{Matrix, C64};

/// Parses a spec, reading `lin:` matrices from the filesystem.
pub fn parse_norm_spec(text: &str) -> Result<NormSpec> {
    parse_norm_spec_with(text, &mut |path: &str| load_matrix(path))
}

/// Parses a spec with a caller-supplied loader for `lin:` paths.
pub fn parse_norm_spec_with(
    text: &str,
    loader: &mut dyn FnMut(&str) -> Result<Matrix>,
) -> Result<NormSpec> {
    if text.is_empty() {
        return Err(parse_error(0, "empty norm spec"));
    }
    parse_at(text, 0, 0, loader)
}

/// Reads a matrix in the `{"rows", "cols", "data"}` JSON format.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MatrixFile(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::MatrixFile(format!("{}: {e}", path.display())))
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        position,
        message: message.into(),
    }
}

fn parse_at(
    text: &str,
    offset: usize,
    depth: usize,
    loader: &mut dyn FnMut(&str) -> Result<Matrix>,
) -> Result<NormSpec> {
    if depth > MAX_DEPTH {
        return Err(Error::NestingTooDeep(MAX_DEPTH));
    }
    match text {
        "l1" => return Ok(NormSpec::l1()),
        "l2" => return Ok(NormSpec::l2()),
        "linf" => return Ok(NormSpec::linf()),
        "" => return Err(parse_error(offset, "expected a norm spec")),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("lp:") {
        let p = parse_float(rest, offset + 3)?;
        return Ok(NormSpec::Lp(Exponent::new(p)?));
    }
    if let Some(rest) = text.strip_prefix("scale:") {
        let (head, tail, tail_at) = split_star(rest, offset + 6)?;
        let c = parse_float(head, offset + 6)?;
        let base = parse_at(tail, tail_at, depth + 1, loader)?;
        return NormSpec::transformed(Transform::scale(C64::new(c, 0.0))?, base);
    }
    if let Some(rest) = text.strip_prefix("lin:") {
        let (path, tail, tail_at) = split_star(rest, offset + 4)?;
        if path.is_empty() {
            return Err(parse_error(offset + 4, "expected a matrix file path"));
        }
        let k = loader(path)?;
        let base = parse_at(tail, tail_at, depth + 1, loader)?;
        return NormSpec::transformed(Transform::linear(k)?, base);
    }
    let known = ["l1", "l2", "linf"];
    let at = known
        .iter()
        .filter(|k| text.starts_with(*k))
        .map(|k| offset + k.len())
        .max()
        .unwrap_or(offset);
    Err(parse_error(
        at,
        format!("unexpected input {:?}", &text[at - offset..]),
    ))
}

fn split_star(text: &str, offset: usize) -> Result<(&str, &str, usize)> {
    match text.find('*') {
        Some(i) => Ok((&text[..i], &text[i + 1..], offset + i + 1)),
        None => Err(parse_error(offset + text.len(), "expected '*'")),
    }
}

fn parse_float(text: &str, offset: usize) -> Result<f64> {
    let value: f64 = text
        .parse()
        .map_err(|_| parse_error(offset, format!("invalid number {text:?}")))?;
    if value.is_nan() {
        return Err(parse_error(offset, "NaN is not a number here"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(path: &str) -> Result<Matrix> {
        Err(Error::MatrixFile(format!("{path}: not found")))
    }

    fn parse(text: &str) -> Result<NormSpec> {
        parse_norm_spec_with(text, &mut no_files)
    }

    #[test]
    fn parses_basic_specs() {
        assert_eq!(parse("l2").unwrap(), NormSpec::l2());
        assert_eq!(parse("l1").unwrap(), NormSpec::l1());
        assert_eq!(parse("linf").unwrap(), NormSpec::linf());
        assert_eq!(parse("lp:3").unwrap(), NormSpec::lp(3.0).unwrap());
        assert_eq!(parse("lp:inf").unwrap(), NormSpec::linf());
    }

    #[test]
    fn scale_compiles_to_scalar_transform() {
        assert_eq!(
            parse("scale:2*l2").unwrap(),
            NormSpec::Transformed {
                transform: Transform::Scale(C64::new(2.0, 0.0)),
                base: Box::new(NormSpec::l2()),
            }
        );
        assert_eq!(
            parse("scale:2*scale:0.5*lp:3").unwrap().to_string(),
            "scale:2*scale:0.5*lp:3"
        );
    }

    #[test]
    fn rejects_small_exponent() {
        assert_eq!(parse("lp:0.5"), Err(Error::InvalidExponent(0.5)));
    }

    #[test]
    fn reports_positions() {
        assert!(matches!(parse(""), Err(Error::ParseError { position: 0, .. })));
        assert!(matches!(parse("l3"), Err(Error::ParseError { position: 0, .. })));
        assert!(matches!(parse("l2x"), Err(Error::ParseError { position: 2, .. })));
        assert!(matches!(parse("scale:2"), Err(Error::ParseError { position: 7, .. })));
        assert!(matches!(parse("scale:x*l2"), Err(Error::ParseError { position: 6, .. })));
        assert!(matches!(parse("scale:2*"), Err(Error::ParseError { position: 8, .. })));
        assert!(matches!(parse("scale:0*l2"), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn lin_uses_loader() {
        let mut calls = Vec::new();
        let spec = parse_norm_spec_with("lin:k.json*l1", &mut |p: &str| {
            calls.push(p.to_string());
            Ok(Matrix::diag_real(&[1.0, 2.0]))
        })
        .unwrap();
        assert_eq!(calls, ["k.json"]);
        assert_eq!(spec.dim(), Some(2));
        assert!(matches!(parse("lin:k.json*l1"), Err(Error::MatrixFile(_))));
    }

    #[test]
    fn lin_reads_matrix_files() {
        let dir = std::env::temp_dir().join(format!("gind-parse-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("k.json");
        fs::write(&path, r#"{"rows":2,"cols":2,"data":[[1,0],[0,[2,0]]]}"#).unwrap();
        let spec = parse_norm_spec(&format!("lin:{}*l1", path.display())).unwrap();
        let x = crate::numerics::Vector::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(spec.eval(&x).unwrap(), 3.0);
        assert!(matches!(
            parse_norm_spec(&format!("lin:{}*l1", dir.join("missing.json").display())),
            Err(Error::MatrixFile(_))
        ));
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn nesting_is_bounded() {
        let deep = "scale:1*".repeat(MAX_DEPTH + 1) + "l2";
        assert_eq!(parse(&deep), Err(Error::NestingTooDeep(MAX_DEPTH)));
        let ok = "scale:1*".repeat(MAX_DEPTH) + "l2";
        assert!(parse(&ok).is_ok());
    }
}
