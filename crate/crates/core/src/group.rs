//! Finite grading groups given by explicit multiplication tables.
//!
//! Elements are indices `0..order`. Product groups index the pair
//! `(g, h)` as `g * order(H) + h`.

use std::fmt;

use crate::error::{Error, Result};

/// Index of an element in a [`FiniteGroup`].
pub type GroupElement = usize;

/// How a group was declared; used to render it back.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(usize, Vec<usize>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic {n}"),
            GroupSpec::Product(a, b) => write!(f, "product {a} x {b}"),
            GroupSpec::Table(n, t) => {
                write!(f, "table {n}")?;
                for x in t {
                    write!(f, " {x}")?;
                }
                Ok(())
            }
        }
    }
}

impl GroupSpec {
    /// Parses `cyclic n`, `product <spec> x <spec>` or `table n <n^2 ints>`.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let (spec, used) = Self::parse_tokens(&tokens)?;
        if used != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing tokens in group declaration: `{}`",
                tokens[used..].join(" ")
            )));
        }
        Ok(spec)
    }

    fn parse_tokens(tokens: &[&str]) -> Result<(GroupSpec, usize)> {
        let num = |i: usize| -> Result<usize> {
            let t = tokens
                .get(i)
                .ok_or_else(|| Error::Parse("truncated group declaration".into()))?;
            t.parse()
                .map_err(|_| Error::Parse(format!("expected a nonnegative integer, found `{t}`")))
        };
        match tokens.first().copied() {
            Some("cyclic") => Ok((GroupSpec::Cyclic(num(1)?), 2)),
            Some("table") => {
                let n = num(1)?;
                let table = (0..n * n).map(|i| num(2 + i)).collect::<Result<Vec<_>>>()?;
                Ok((GroupSpec::Table(n, table), 2 + n * n))
            }
            Some("product") => {
                let (a, used_a) = Self::parse_tokens(&tokens[1..])?;
                if tokens.get(1 + used_a) != Some(&"x") {
                    return Err(Error::Parse("expected `x` between product factors".into()));
                }
                let (b, used_b) = Self::parse_tokens(&tokens[2 + used_a..])?;
                Ok((GroupSpec::Product(Box::new(a), Box::new(b)), 2 + used_a + used_b))
            }
            Some(other) => Err(Error::Parse(format!("unknown group kind `{other}`"))),
            None => Err(Error::Parse("empty group declaration".into())),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Product(a, b) => Ok(FiniteGroup::product(&a.build()?, &b.build()?)),
            GroupSpec::Table(n, t) => FiniteGroup::from_table(*n, t.clone(), None),
        }
    }
}

/// A validated finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    neutral: GroupElement,
    inverse: Vec<GroupElement>,
    spec: GroupSpec,
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        Self::cyclic(1).expect("order 1")
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Group(vec!["cyclic group of order 0".into()]));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            neutral: 0,
            inverse,
            spec: GroupSpec::Cyclic(n),
        })
    }

    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = g.mul(a / n, b / n) * n + h.mul(a % n, b % n);
            }
        }
        let inverse = (0..order).map(|a| g.inv(a / n) * n + h.inv(a % n)).collect();
        FiniteGroup {
            order,
            table,
            neutral: g.neutral * n + h.neutral,
            inverse,
            spec: GroupSpec::Product(Box::new(g.spec.clone()), Box::new(h.spec.clone())),
        }
    }

    /// Validates an `n x n` table (row-major, `table[a * n + b] = a b`).
    /// When `neutral` is `None` the identity is located automatically.
    pub fn from_table(n: usize, table: Vec<usize>, neutral: Option<usize>) -> Result<FiniteGroup> {
        let mut problems = Vec::new();
        if n == 0 {
            return Err(Error::Group(vec!["empty group".into()]));
        }
        if table.len() != n * n {
            return Err(Error::Group(vec![format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )]));
        }
        if let Some(x) = table.iter().find(|&&x| x >= n) {
            return Err(Error::Group(vec![format!("entry {x} out of range 0..{n}")]));
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row[at(a, b)], true) {
                    problems.push(format!("not a Latin square: row {a} repeats {}", at(a, b)));
                    break;
                }
            }
            for b in 0..n {
                if std::mem::replace(&mut col[at(b, a)], true) {
                    problems.push(format!("not a Latin square: column {a} repeats {}", at(b, a)));
                    break;
                }
            }
        }
        let is_identity = |e: usize| (0..n).all(|x| at(e, x) == x && at(x, e) == x);
        let neutral = match neutral {
            Some(e) if e < n && is_identity(e) => Some(e),
            Some(e) => {
                problems.push(format!("{e} is not a two-sided identity"));
                None
            }
            None => (0..n).find(|&e| is_identity(e)),
        };
        let Some(neutral) = neutral else {
            problems.push("no identity element".into());
            return Err(Error::Group(problems));
        };
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        problems.push(format!("not associative at ({a}, {b}, {c})"));
                        break 'assoc;
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            match (0..n).find(|&b| at(a, b) == neutral && at(b, a) == neutral) {
                Some(b) => *inv = b,
                None => problems.push(format!("{a} has no two-sided inverse")),
            }
        }
        if !problems.is_empty() {
            return Err(Error::Group(problems));
        }
        let spec = GroupSpec::Table(n, table.clone());
        Ok(FiniteGroup {
            order: n,
            table,
            neutral,
            inverse,
            spec,
        })
    }

    /// The symmetric group on three letters, elements listed as
    /// permutations in lexicographic order.
    pub fn symmetric3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mut table = Vec::with_capacity(36);
        for a in &perms {
            for b in &perms {
                // (a b)(i) = a(b(i))
                table.push(index([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        Self::from_table(6, table, Some(0)).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn neutral(&self) -> GroupElement {
        self.neutral
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> std::ops::Range<GroupElement> {
        0..self.order
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inverse[a]
    }

    pub fn commute(&self, a: GroupElement, b: GroupElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
    }

    /// The subgroup generated by `generators`, sorted.
    pub fn subgroup_closure(&self, generators: &[GroupElement]) -> Result<Vec<GroupElement>> {
        if let Some(g) = generators.iter().find(|&&g| g >= self.order) {
            return Err(Error::Invalid(format!("element {g} out of range")));
        }
        let mut member = vec![false; self.order];
        member[self.neutral] = true;
        let mut frontier = vec![self.neutral];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok(self.elements().filter(|&x| member[x]).collect())
    }

    pub fn is_subgroup(&self, subset: &[GroupElement]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subset {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[self.neutral]
            && subset
                .iter()
                .all(|&a| subset.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, subgroup: &[GroupElement]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subgroup {
            member[x] = true;
        }
        self.is_subgroup(subgroup)
            && self
                .elements()
                .all(|g| subgroup.iter().all(|&n| member[self.mul(self.mul(g, n), self.inv(g))]))
    }

    /// The subgroup as a group in its own right. Element `i` of the result
    /// is `subgroup[i]` (after sorting).
    pub fn restrict(&self, subgroup: &[GroupElement]) -> Result<(FiniteGroup, Vec<GroupElement>)> {
        let mut elems = subgroup.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(Error::Invalid(format!("{elems:?} is not a subgroup")));
        }
        let pos = |x: usize| elems.binary_search(&x).expect("closed");
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &elems {
            for &b in &elems {
                table.push(pos(self.mul(a, b)));
            }
        }
        let group = Self::from_table(n, table, Some(pos(self.neutral)))?;
        Ok((group, elems))
    }

    /// The quotient by a normal subgroup, with the map sending each element
    /// to its coset. Cosets are numbered by their smallest element.
    pub fn quotient(&self, normal: &[GroupElement]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::Invalid(format!("{normal:?} is not a normal subgroup")));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &n in normal {
                coset_of[self.mul(g, n)] = c;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        let group = Self::from_table(k, table, Some(coset_of[self.neutral]))?;
        Ok((group, coset_of))
    }

    /// `true` when `subset` is a left coset `x H` of the subgroup `h`.
    pub fn is_left_coset(&self, subset: &[GroupElement], h: &[GroupElement]) -> bool {
        let Some(&x) = subset.first() else {
            return false;
        };
        let mut coset: Vec<usize> = h.iter().map(|&y| self.mul(x, y)).collect();
        coset.sort_unstable();
        let mut s = subset.to_vec();
        s.sort_unstable();
        coset == s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.mul(1, 3), 0);
        let z1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.neutral(), 0);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z2.mul(1, 1), 0);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn product_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k4 = FiniteGroup::product(&z2, &z2);
        // (1,0) = 2, (0,1) = 1, (1,1) = 3
        assert_eq!(k4.mul(2, 1), 3);
        assert!(k4.elements().all(|g| k4.mul(g, g) == k4.neutral()));
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let same = FiniteGroup::product(&z3, &FiniteGroup::trivial());
        assert_eq!(same.table, z3.table);
        let g = FiniteGroup::product(&z3, &z2);
        assert_eq!(g.order(), 6);
        // projections are homomorphisms
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.mul(a, b) / 2, z3.mul(a / 2, b / 2));
                assert_eq!(g.mul(a, b) % 2, z2.mul(a % 2, b % 2));
            }
        }
    }

    #[test]
    fn table_validation() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(FiniteGroup::from_table(3, z3.table.clone(), Some(0)).is_ok());
        let bad = vec![0, 1, 2, 1, 1, 0, 2, 0, 1];
        let err = FiniteGroup::from_table(3, bad, None).unwrap_err();
        assert!(err.to_string().contains("Latin square"), "{err}");
        // a Latin square with no identity: x*y = 2x - y mod 3
        let nonassoc: Vec<usize> = (0..9).map(|k| (2 * (k / 3) + 3 - k % 3) % 3).collect();
        assert!(FiniteGroup::from_table(3, nonassoc, None).is_err());
    }

    #[test]
    fn s3_is_nonabelian_group() {
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        // all 216 triples
        for a in s3.elements() {
            for b in s3.elements() {
                for c in s3.elements() {
                    assert_eq!(s3.mul(s3.mul(a, b), c), s3.mul(a, s3.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn closure_and_normality() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.subgroup_closure(&[2]).unwrap(), vec![0, 2]);
        assert_eq!(z4.subgroup_closure(&[]).unwrap(), vec![0]);
        assert!(z4.is_normal(&[0, 2]));
        let s3 = FiniteGroup::symmetric3();
        // element 1 swaps the last two letters
        let h = s3.subgroup_closure(&[1]).unwrap();
        assert_eq!(h.len(), 2);
        assert!(!s3.is_normal(&h));
        let a3 = s3.subgroup_closure(&[3]).unwrap();
        assert_eq!(a3.len(), 3);
        assert!(s3.is_normal(&a3));
    }

    #[test]
    fn quotient_and_restrict() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let (q, map) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(map, vec![0, 1, 0, 1]);
        let (h, elems) = z4.restrict(&[0, 2]).unwrap();
        assert_eq!(elems, vec![0, 2]);
        assert_eq!(h.mul(1, 1), 0);
        assert!(z4.quotient(&[0, 1]).is_err());
    }

    #[test]
    fn inverses() {
        for g in [FiniteGroup::symmetric3(), FiniteGroup::cyclic(5).unwrap()] {
            for a in g.elements() {
                assert_eq!(g.mul(a, g.inv(a)), g.neutral());
                assert_eq!(g.inv(g.inv(a)), a);
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        let text = "product cyclic 2 x product cyclic 3 x cyclic 2";
        let spec = GroupSpec::parse(text).unwrap();
        assert_eq!(spec.to_string(), text);
        assert_eq!(spec.build().unwrap().order(), 12);
        let s3 = FiniteGroup::symmetric3();
        let again = GroupSpec::parse(&s3.spec().to_string()).unwrap().build().unwrap();
        assert_eq!(again, s3);
        assert!(GroupSpec::parse("cyclic").is_err());
        assert!(GroupSpec::parse("product cyclic 2 cyclic 2").is_err());
    }
}
