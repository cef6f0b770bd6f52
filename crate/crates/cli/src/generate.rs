//! The `gen` command: builds algebras from named constructions.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use grfrob::constructions::*;
use grfrob::format::{parse_algebra, render_algebra};
use grfrob::group::GroupSpec;
use grfrob::{Field, FieldDecl, FiniteGroup, GradedAlgebra, Matrix, PrimeField, Rationals};
use serde_json::json;

use crate::{exit, parse_params, read, Cli, Failure, Report};

const HELP: &str = "\
constructions (all accept field=Q|F<p>, default Q):
  ground-field              [group=SPEC]
  polynomial                coeffs=c0,...,c(n-1)        k[x]/(x^n + ... + c0)
  truncated                 n=N [group=SPEC degree=G]    k[x]/(x^n), x in degree G
  nakayama-nesbitt          [u=U v=V]                    Z4-graded, default u=1 v=2
  trivial-extension         [algebra=FILE | coeffs=...] [group=SPEC degree=G]
                                                          default R = k[x]/(x^2), Z2, degree 1
  trivial-extension-split   [r1=FILE r2=FILE] [group=SPEC u=G v=H]
                                                          default R1 = R2 = k, Z3, u=1 v=2
  good-grading              group=SPEC degrees=g1,...,gn
  fine-grading              n=N                          Z_n x Z_n grading of M_n
  group-algebra             group=SPEC
  skew-group-algebra        algebra=FILE group=SPEC action=M;M;...
                                                          one matrix per group element, rows
                                                          separated by '/', entries by ','
  direct-product            a=FILE b=FILE
  tensor                    a=FILE b=FILE
  matrix-over               algebra=FILE n=N
  random                    seed=S [max-dim=8 max-group=6]
SPEC is a group declaration such as `cyclic 4`, `product cyclic 2 x cyclic 2`,
`table n ...`, or `s3`.";

struct Params {
    map: BTreeMap<String, String>,
}

impl Params {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<String, Failure> {
        self.take(key)
            .ok_or_else(|| Failure::usage(format!("missing parameter `{key}`")))
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T, Failure> {
        match self.take(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Failure::usage(format!("`{key}`: expected a number, got `{v}`"))),
            None => default.ok_or_else(|| Failure::usage(format!("missing parameter `{key}`"))),
        }
    }

    fn group(&mut self, default: Option<&str>) -> Result<Arc<FiniteGroup>, Failure> {
        let text = match self.take("group") {
            Some(t) => t,
            None => default
                .ok_or_else(|| Failure::usage("missing parameter `group`"))?
                .to_string(),
        };
        if text.eq_ignore_ascii_case("s3") {
            return Ok(Arc::new(FiniteGroup::symmetric3()));
        }
        Ok(Arc::new(GroupSpec::parse(&text)?.build()?))
    }

    fn scalars<F: Field>(&mut self, field: &F, key: &str) -> Result<Option<Vec<F::Elem>>, Failure> {
        let Some(v) = self.take(key) else { return Ok(None) };
        let out = v
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| field.parse(t.trim()))
            .collect::<grfrob::Result<Vec<_>>>()?;
        Ok(Some(out))
    }

    fn indices(&mut self, key: &str) -> Result<Vec<usize>, Failure> {
        let v = self.require(key)?;
        v.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("`{key}`: bad index `{t}`")))
            })
            .collect()
    }

    fn algebra<F: Field>(&mut self, field: &F, key: &str) -> Result<Option<GradedAlgebra<F>>, Failure> {
        let Some(path) = self.take(key) else { return Ok(None) };
        Ok(Some(parse_algebra(&read(Path::new(&path))?, field)?))
    }

    fn finish(self) -> Result<(), Failure> {
        match self.map.keys().next() {
            Some(k) => Err(Failure::usage(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

pub(crate) fn run(cli: &Cli, name: &str, params: &[String]) -> Result<Report, Failure> {
    if name == "help" {
        return Ok(Report::text_only(exit::YES, format!("{HELP}\n")));
    }
    let mut p = Params {
        map: parse_params(params)?,
    };
    let decl: FieldDecl = p.take("field").as_deref().unwrap_or("Q").parse()?;
    let text = match decl {
        FieldDecl::Rationals => build(&Rationals, name, &mut p)?,
        FieldDecl::Prime(q) => build(&PrimeField::new(q)?, name, &mut p)?,
    };
    p.finish()?;
    let json = json!({ "command": "gen", "construction": name, "algebra_text": text });
    Ok(Report::new(exit::YES, text, json, cli.json))
}

fn build<F: Field>(field: &F, name: &str, p: &mut Params) -> Result<String, Failure> {
    let a = match name {
        "ground-field" => ground_field(field, p.group(Some("cyclic 1"))?),
        "polynomial" => {
            let c = p
                .scalars(field, "coeffs")?
                .ok_or_else(|| Failure::usage("missing parameter `coeffs`"))?;
            polynomial_quotient(field, &c)?
        }
        "truncated" => {
            let n = p.number("n", None)?;
            let group = p.group(Some("cyclic 1"))?;
            let g = p.number("degree", Some(group.neutral()))?;
            truncated_polynomial(field, group, n, g)?
        }
        "nakayama-nesbitt" => {
            let u = p
                .take("u")
                .map(|t| field.parse(&t))
                .transpose()?
                .unwrap_or_else(|| field.one());
            let v = p
                .take("v")
                .map(|t| field.parse(&t))
                .transpose()?
                .unwrap_or_else(|| field.from_i64(2));
            nakayama_nesbitt(field, u, v)?
        }
        "trivial-extension" => {
            let r = match (p.algebra(field, "algebra")?, p.scalars(field, "coeffs")?) {
                (Some(_), Some(_)) => return Err(Failure::usage("give `algebra` or `coeffs`, not both")),
                (Some(r), None) => r,
                (None, Some(c)) => polynomial_quotient(field, &c)?,
                (None, None) => polynomial_quotient(field, &[field.zero(), field.zero()])?,
            };
            let group = p.group(Some("cyclic 2"))?;
            let g = p.number("degree", Some(1))?;
            trivial_extension_in(&r, group, g)?
        }
        "trivial-extension-split" => {
            let k = || ground_field(field, Arc::new(FiniteGroup::trivial()));
            let r1 = p.algebra(field, "r1")?.unwrap_or_else(k);
            let r2 = p.algebra(field, "r2")?.unwrap_or_else(k);
            let group = p.group(Some("cyclic 3"))?;
            let u = p.number("u", Some(1))?;
            let v = p.number("v", Some(2))?;
            trivial_extension_split_in(&r1, &r2, group, u, v)?
        }
        "good-grading" => {
            let group = p.group(None)?;
            let degrees = p.indices("degrees")?;
            matrix_good_grading(field, group, &degrees)?
        }
        "fine-grading" => matrix_fine_grading(field, p.number("n", None)?)?,
        "group-algebra" => group_algebra(field, p.group(None)?)?,
        "skew-group-algebra" => {
            let r = p
                .algebra(field, "algebra")?
                .ok_or_else(|| Failure::usage("missing parameter `algebra`"))?;
            let group = p.group(None)?;
            let action = parse_matrices(field, &p.require("action")?)?;
            skew_group_algebra(&r, group, &action)?
        }
        "direct-product" | "tensor" => {
            let a = p
                .algebra(field, "a")?
                .ok_or_else(|| Failure::usage("missing parameter `a`"))?;
            let b = p
                .algebra(field, "b")?
                .ok_or_else(|| Failure::usage("missing parameter `b`"))?;
            if name == "tensor" {
                a.tensor_product(&b)?
            } else {
                direct_product(&a, &b)?
            }
        }
        "matrix-over" => {
            let a = p
                .algebra(field, "algebra")?
                .ok_or_else(|| Failure::usage("missing parameter `algebra`"))?;
            matrix_over(&a, p.number("n", None)?)?
        }
        "random" => {
            let seed = p.number("seed", None)?;
            let limits = RandomLimits {
                max_dim: p.number("max-dim", Some(RandomLimits::default().max_dim))?,
                max_group_order: p.number("max-group", Some(RandomLimits::default().max_group_order))?,
            };
            let (desc, a) = random_graded_algebra(field, seed, limits)?;
            return Ok(format!("# {desc}\n{}", render_algebra(&a)));
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown construction `{other}`; see `grfrob gen help`"
            )))
        }
    };
    Ok(render_algebra(&a))
}

fn parse_matrices<F: Field>(field: &F, text: &str) -> Result<Vec<Matrix<F::Elem>>, Failure> {
    text.split(';')
        .map(|m| {
            let rows = m
                .split('/')
                .map(|r| {
                    r.split(',')
                        .map(|x| field.parse(x.trim()))
                        .collect::<grfrob::Result<Vec<_>>>()
                })
                .collect::<grfrob::Result<Vec<_>>>()?;
            let cols = rows.first().map_or(0, Vec::len);
            Ok(Matrix::from_rows(cols, rows)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_parse_rows_and_entries() {
        let f5 = PrimeField::new(5).unwrap();
        let ms = parse_matrices(&f5, "1,0/0,1;0,1/1,0").unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1][(0, 1)], f5.one());
        assert!(parse_matrices(&f5, "1,0/0").is_err());
    }

    #[test]
    fn unknown_and_missing_parameters() {
        let mut p = Params {
            map: parse_params(&["n=2".into(), "extra=1".into()]).unwrap(),
        };
        assert_eq!(p.number::<usize>("n", None).unwrap(), 2);
        assert!(p.number::<usize>("m", None).is_err());
        assert_eq!(p.finish().unwrap_err().code, exit::USAGE);
        assert!(parse_params(&["novalue".into()]).is_err());
    }

    #[test]
    fn group_aliases() {
        let mut p = Params {
            map: parse_params(&["group=S3".into()]).unwrap(),
        };
        assert_eq!(p.group(None).unwrap().order(), 6);
        let mut p = Params { map: BTreeMap::new() };
        assert_eq!(p.group(Some("product cyclic 2 x cyclic 3")).unwrap().order(), 6);
    }
}
