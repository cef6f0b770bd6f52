//! Line-oriented text formats for algebras and certificates.
//!
//! Algebra files hold one declaration per line; `#` starts a comment:
//!
//! ```text
//! field Q
//! group cyclic 2
//! dim 2
//! deg 1 1
//! unit 1 0
//! sc 0 0 0 1
//! sc 0 1 1 1
//! sc 1 0 1 1
//! sc 1 1 0 1
//! ```
//!
//! `deg` lines may be omitted (degree `e`). `field` and `group` must come
//! before `dim`, and `dim` before the other lines.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::frobenius::{Certificate, CertificateKind};
use crate::group::GroupSpec;
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldDecl};

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn at(line: usize, message: impl Into<String>) -> Error {
    Error::ParseAt {
        line,
        message: message.into(),
    }
}

/// The `field` declaration of an algebra or certificate file.
pub fn field_declaration(text: &str) -> Result<FieldDecl> {
    for (n, raw) in text.lines().enumerate() {
        let line = strip(raw);
        if let Some(rest) = line.strip_prefix("field") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                return rest.trim().parse().map_err(|e: Error| at(n + 1, e.to_string()));
            }
        }
    }
    Err(Error::Parse("missing `field` line".into()))
}

fn index(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| at(line, format!("expected {what}, found `{token}`")))
}

/// Parses and validates an algebra file over `field`, which must match the
/// file's `field` line.
pub fn parse_algebra<F: Field>(text: &str, field: &F) -> Result<GradedAlgebra<F>> {
    let mut group = None;
    let mut dim: Option<usize> = None;
    let mut deg: Vec<usize> = Vec::new();
    let mut unit = None;
    let mut entries = Vec::new();
    let mut seen_field = false;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let need_dim = || dim.ok_or_else(|| at(line_no, format!("`{key}` before `dim`")));
        match key {
            "field" => {
                let decl: FieldDecl = rest.trim().parse().map_err(|e: Error| at(line_no, e.to_string()))?;
                if decl != field.decl() {
                    return Err(at(line_no, format!("file declares {decl}, expected {}", field.decl())));
                }
                seen_field = true;
            }
            "group" => {
                let spec = GroupSpec::parse(rest).map_err(|e| at(line_no, e.to_string()))?;
                group = Some(Arc::new(spec.build().map_err(|e| at(line_no, e.to_string()))?));
            }
            "dim" => {
                if dim.is_some() {
                    return Err(at(line_no, "duplicate `dim`"));
                }
                let [d] = tokens[..] else {
                    return Err(at(line_no, "expected `dim <d>`"));
                };
                let d = index(line_no, d, "a dimension")?;
                let g = group.as_ref().ok_or_else(|| at(line_no, "`dim` before `group`"))?;
                dim = Some(d);
                deg = vec![g.neutral(); d];
            }
            "deg" => {
                let d = need_dim()?;
                let [i, g] = tokens[..] else {
                    return Err(at(line_no, "expected `deg <i> <element>`"));
                };
                let i = index(line_no, i, "a basis index")?;
                let g = index(line_no, g, "a group element")?;
                let order = group.as_ref().expect("dim implies group").order();
                if i >= d {
                    return Err(at(line_no, format!("basis index {i} out of range for dim {d}")));
                }
                if g >= order {
                    return Err(at(line_no, format!("group element {g} out of range for order {order}")));
                }
                deg[i] = g;
            }
            "unit" => {
                let d = need_dim()?;
                if tokens.len() != d {
                    return Err(at(line_no, format!("unit needs {d} scalars, found {}", tokens.len())));
                }
                let u = tokens
                    .iter()
                    .map(|t| field.parse(t).map_err(|e| at(line_no, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                unit = Some(u);
            }
            "sc" => {
                let d = need_dim()?;
                let [i, j, k, c] = tokens[..] else {
                    return Err(at(line_no, "expected `sc <i> <j> <k> <scalar>`"));
                };
                let (i, j, k) = (
                    index(line_no, i, "a basis index")?,
                    index(line_no, j, "a basis index")?,
                    index(line_no, k, "a basis index")?,
                );
                if let Some(bad) = [i, j, k].into_iter().find(|&x| x >= d) {
                    return Err(at(line_no, format!("basis index {bad} out of range for dim {d}")));
                }
                let c = field.parse(c).map_err(|e| at(line_no, e.to_string()))?;
                entries.push((i, j, k, c));
            }
            other => return Err(at(line_no, format!("unknown declaration `{other}`"))),
        }
    }
    if !seen_field {
        return Err(Error::Parse("missing `field` line".into()));
    }
    let group = group.ok_or_else(|| Error::Parse("missing `group` line".into()))?;
    if dim.is_none() {
        return Err(Error::Parse("missing `dim` line".into()));
    }
    let unit = unit.ok_or_else(|| Error::Parse("missing `unit` line".into()))?;
    GradedAlgebra::new(field.clone(), group, deg, entries, unit)
}

/// Renders an algebra in the file format; [`parse_algebra`] inverts it.
pub fn render_algebra<F: Field>(a: &GradedAlgebra<F>) -> String {
    let mut s = String::new();
    let e = a.group().neutral();
    writeln!(s, "field {}", a.field().decl()).unwrap();
    writeln!(s, "group {}", a.group().spec()).unwrap();
    writeln!(s, "dim {}", a.dim()).unwrap();
    for (i, &g) in a.degrees().iter().enumerate() {
        if g != e {
            writeln!(s, "deg {i} {g}").unwrap();
        }
    }
    let unit: Vec<String> = a.unit().iter().map(ToString::to_string).collect();
    writeln!(s, "unit {}", unit.join(" ")).unwrap();
    for (i, j, k, c) in a.structure_constants() {
        writeln!(s, "sc {i} {j} {k} {c}").unwrap();
    }
    s
}

/// Serializes a certificate: `kind`, `sigma`, `field`, `payload r c`, then
/// one `row` line per payload row.
pub fn render_certificate<F: Field>(field: &F, cert: &Certificate<F::Elem>) -> String {
    let mut s = String::new();
    let p = &cert.payload;
    writeln!(s, "kind {}", cert.kind).unwrap();
    writeln!(s, "sigma {}", cert.sigma).unwrap();
    writeln!(s, "field {}", field.decl()).unwrap();
    writeln!(s, "payload {} {}", p.rows(), p.cols()).unwrap();
    for r in 0..p.rows() {
        let row: Vec<String> = p.row(r).iter().map(ToString::to_string).collect();
        if row.is_empty() {
            writeln!(s, "row").unwrap();
        } else {
            writeln!(s, "row {}", row.join(" ")).unwrap();
        }
    }
    s
}

pub fn parse_certificate<F: Field>(text: &str, field: &F) -> Result<Certificate<F::Elem>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, strip(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.into_iter();
    let mut header = |key: &str| -> Result<(usize, String)> {
        let (n, l) = it.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
        match l.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok((n, v.trim().to_string())),
            _ => Err(at(n, format!("expected `{key}`"))),
        }
    };
    let (n, kind) = header("kind")?;
    let kind: CertificateKind = kind.parse().map_err(|e: Error| at(n, e.to_string()))?;
    let (n, sigma) = header("sigma")?;
    let sigma = index(n, &sigma, "a group element")?;
    let (n, decl) = header("field")?;
    let decl: FieldDecl = decl.parse().map_err(|e: Error| at(n, e.to_string()))?;
    if decl != field.decl() {
        return Err(at(n, format!("certificate over {decl}, algebra over {}", field.decl())));
    }
    let (n, shape) = header("payload")?;
    let dims: Vec<&str> = shape.split_whitespace().collect();
    let [r, c] = dims[..] else {
        return Err(at(n, "expected `payload <rows> <cols>`"));
    };
    let (r, c) = (index(n, r, "a row count")?, index(n, c, "a column count")?);
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (n, l) = it
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {r} payload rows")))?;
        let mut tokens = l.split_whitespace();
        if tokens.next() != Some("row") {
            return Err(at(n, "expected `row`"));
        }
        let row = tokens
            .map(|t| field.parse(t).map_err(|e| at(n, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != c {
            return Err(at(n, format!("row has {} entries, expected {c}", row.len())));
        }
        rows.push(row);
    }
    if let Some((n, _)) = it.next() {
        return Err(at(n, "unexpected content after the payload"));
    }
    Ok(Certificate {
        kind,
        sigma,
        payload: Matrix::from_rows(c, rows)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};

    const KZ2: &str = "field Q\ngroup cyclic 2\ndim 2\ndeg 0 0\ndeg 1 1\nunit 1 0\n\
                       sc 0 0 0 1\nsc 0 1 1 1\nsc 1 0 1 1\nsc 1 1 0 1\n";

    #[test]
    fn parses_group_algebra_file() {
        assert_eq!(field_declaration(KZ2).unwrap(), FieldDecl::Rationals);
        let a = parse_algebra(KZ2, &Rationals).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.degrees(), &[0, 1]);
        let again = parse_algebra(&render_algebra(&a), &Rationals).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn missing_unit_is_an_error() {
        let text = KZ2.replace("unit 1 0\n", "");
        assert!(matches!(parse_algebra(&text, &Rationals), Err(Error::Parse(m)) if m.contains("unit")));
    }

    #[test]
    fn index_out_of_range_reports_line() {
        let text = KZ2.replace("sc 1 1 0 1", "sc 1 1 2 1");
        assert!(matches!(
            parse_algebra(&text, &Rationals),
            Err(Error::ParseAt { line: 10, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# the group algebra of Z2\n\n{}", KZ2.replace("dim 2", "dim 2   # two"));
        assert!(parse_algebra(&text, &Rationals).is_ok());
    }

    #[test]
    fn field_mismatch_is_rejected() {
        assert!(parse_algebra(KZ2, &PrimeField::new(7).unwrap()).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let q = Rationals;
        let cert = Certificate {
            kind: CertificateKind::BilinearForm,
            sigma: 1,
            payload: Matrix::from_rows(
                2,
                vec![vec![q.zero(), q.parse("1/2").unwrap()], vec![q.one(), q.zero()]],
            )
            .unwrap(),
        };
        let text = render_certificate(&q, &cert);
        assert!(text.starts_with("kind bilinear_form\nsigma 1\nfield Q\npayload 2 2\nrow 0 1/2\n"));
        assert_eq!(parse_certificate(&text, &q).unwrap(), cert);
        assert!(parse_certificate(&text.replace("row 1 0", "row 1"), &q).is_err());
    }
}
