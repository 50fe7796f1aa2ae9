//! The `.qdo` presentation format.
//!
//! ```text
//! file      := (comment | blank | section)*
//! comment   := '#' anything
//! section   := '[' name ']' line*
//!
//! [field]        conductor = INT            (default: group exponent)
//!                params = IDENT (',' IDENT)*
//! [instantiate]  IDENT = scalar             (constant values for linear algebra)
//! [group]        orders = '[' INT (',' INT)* ']'
//! [action]       vK = INT*                  (exponents of chi_K, one line per generator)
//! [q]            I J = scalar               (q_JI is the inverse; unspecified entries are 1)
//! [kappa]        I J -> R '(' INT* ')' scalar
//!
//! [generic-lie]  free_rank = INT
//!                torsion = '[' INT* ']'
//!                epsilon S T = scalar       (generators a_1..a_r, g_1..g_k; default 1)
//!                basis NAME = INT*          (degree coordinates)
//!                bracket X Y = linear combination of basis names
//! ```
//!
//! Sections may appear in any order. `[field]` may accompany either an
//! algebra presentation or a `[generic-lie]` section, not both.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::algebra::{AlgebraSpec, NCElement, RawSpec, RewriteSystem};
use crate::colorlie::{Bicharacter, ColorLieRing, LieVec, RingOrigin};
use crate::error::{Error, Result};
use crate::expr::{self, Expr, ExprKind};
use crate::group::{AbelianGroup, GradingGroup};
use crate::scalar::{Cyclotomic, Scalar, ScalarContext};

#[derive(Debug, Clone)]
pub enum SpecFile {
    Algebra(AlgebraSpec),
    Generic(ColorLieRing),
}

impl SpecFile {
    pub fn into_spec(self) -> Result<AlgebraSpec> {
        match self {
            SpecFile::Algebra(s) => Ok(s),
            SpecFile::Generic(_) => Err(Error::spec("expected an algebra presentation, found a [generic-lie] section")),
        }
    }

    pub fn into_ring(self) -> Result<ColorLieRing> {
        match self {
            SpecFile::Generic(l) => Ok(l),
            SpecFile::Algebra(_) => Err(Error::spec("expected a [generic-lie] section")),
        }
    }
}

/// One non-blank line of a section, with its position in the file.
#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn loc(&self) -> String {
        format!("line {}", self.number)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::spec_at(self.loc(), message)
    }

    /// Splits at the first occurrence of `sep`; returns both sides trimmed,
    /// with the 0-based character offset of the right side.
    fn split(&self, sep: &str) -> Result<(&'a str, &'a str, usize)> {
        let pos = self
            .text
            .find(sep)
            .ok_or_else(|| Error::parse(self.number, 1, format!("expected `{sep}`")))?;
        let right = &self.text[pos + sep.len()..];
        let lead = right.len() - right.trim_start().len();
        let offset = self.text[..pos + sep.len() + lead].chars().count();
        Ok((self.text[..pos].trim(), right.trim(), offset))
    }

    /// Character offset of a sub-slice of this line.
    fn offset_of(&self, sub: &str) -> usize {
        let start = sub.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..start].chars().count()
    }

    fn parse_expr(&self, text: &str, offset: usize) -> Result<Expr> {
        expr::parse(text).map_err(|e| e.relocate(self.number, offset))
    }

    fn scalar(&self, text: &str, offset: usize, ctx: &Arc<ScalarContext>) -> Result<Scalar> {
        let e = self.parse_expr(text, offset)?;
        Scalar::from_expr(&e, ctx).map_err(|e| e.relocate(self.number, offset))
    }

    fn int<T: std::str::FromStr>(&self, text: &str) -> Result<T> {
        text.trim()
            .parse()
            .map_err(|_| self.err(format!("expected an integer, found `{}`", text.trim())))
    }

    fn ints(&self, text: &str) -> Result<Vec<i64>> {
        let inner = text.trim();
        let inner = inner.strip_prefix('[').map_or(inner, |s| s.strip_suffix(']').unwrap_or(s));
        let inner = inner.strip_prefix('(').map_or(inner, |s| s.strip_suffix(')').unwrap_or(s));
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| self.int(s))
            .collect()
    }
}

const SECTIONS: [&str; 7] = ["field", "instantiate", "group", "action", "q", "kappa", "generic-lie"];

fn split_sections(text: &str) -> Result<BTreeMap<&'static str, (usize, Vec<Line<'_>>)>> {
    let mut out: BTreeMap<&'static str, (usize, Vec<Line<'_>>)> = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            let Some(&known) = SECTIONS.iter().find(|s| **s == name) else {
                return Err(Error::spec_at(format!("line {number}"), format!("unknown section [{name}]")));
            };
            if out.contains_key(known) {
                return Err(Error::spec_at(format!("line {number}"), format!("duplicate section [{name}]")));
            }
            out.insert(known, (number, vec![]));
            current = Some(known);
            continue;
        }
        match current {
            Some(s) => out.get_mut(s).expect("section").1.push(Line { number, text: raw }),
            None => return Err(Error::spec_at(format!("line {number}"), "content outside a section")),
        }
    }
    Ok(out)
}

fn valid_param(name: &str) -> bool {
    let mut chars = name.chars();
    let first_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    first_ok
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && expr::generator_index(name).is_none()
        && name != "zeta"
        && name != "g"
}

struct FieldData {
    conductor: Option<u32>,
    params: Vec<String>,
}

fn parse_field(lines: &[Line<'_>]) -> Result<FieldData> {
    let mut out = FieldData {
        conductor: None,
        params: vec![],
    };
    for l in lines {
        let (key, value, _) = l.split("=")?;
        match key {
            "conductor" => {
                let m: u32 = l.int(value)?;
                if m == 0 {
                    return Err(l.err("conductor must be positive"));
                }
                out.conductor = Some(m);
            }
            "params" => {
                for p in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    if !valid_param(p) {
                        return Err(l.err(format!("`{p}` cannot be used as a parameter name")));
                    }
                    if out.params.iter().any(|q| q == p) {
                        return Err(l.err(format!("parameter `{p}` declared twice")));
                    }
                    out.params.push(p.to_string());
                }
            }
            other => return Err(l.err(format!("unknown key `{other}` in [field]"))),
        }
    }
    Ok(out)
}

fn parse_orders(l: &Line<'_>, value: &str) -> Result<Vec<u32>> {
    l.ints(value)?
        .into_iter()
        .map(|m| u32::try_from(m).ok().filter(|&m| m > 0).ok_or_else(|| l.err("orders must be positive")))
        .collect()
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let sections = split_sections(text)?;
    let empty: (usize, Vec<Line<'_>>) = (0, vec![]);
    let field = parse_field(&sections.get("field").unwrap_or(&empty).1)?;
    if let Some((_, lines)) = sections.get("generic-lie") {
        if let Some(other) = ["instantiate", "group", "action", "q", "kappa"].iter().find(|s| sections.contains_key(**s)) {
            return Err(Error::spec(format!("[generic-lie] cannot be combined with [{other}]")));
        }
        return parse_generic(&field, lines).map(SpecFile::Generic);
    }
    let section = |name: &str| sections.get(name).map(|s| s.1.as_slice()).unwrap_or(&[]);
    if !sections.contains_key("group") {
        return Err(Error::spec("missing [group] section"));
    }
    let mut orders = None;
    for l in section("group") {
        let (key, value, _) = l.split("=")?;
        match key {
            "orders" => orders = Some(parse_orders(l, value)?),
            other => return Err(l.err(format!("unknown key `{other}` in [group]"))),
        }
    }
    let orders = orders.ok_or_else(|| Error::spec_at("[group]", "missing `orders`"))?;
    let group = AbelianGroup::new(orders.clone())?;
    let conductor = field.conductor.unwrap_or(group.exponent());
    let ctx = ScalarContext::new(conductor, field.params.clone());

    let mut raw = RawSpec {
        orders,
        ..RawSpec::default()
    };
    let mut chars: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for l in section("action") {
        let (key, value, _) = l.split("=")?;
        let i = expr::generator_index(key).ok_or_else(|| l.err(format!("expected `vK`, found `{key}`")))?;
        if chars.insert(i, l.ints(value)?).is_some() {
            return Err(l.err(format!("action of v{} given twice", i + 1)));
        }
    }
    raw.n = chars.len();
    if let Some((&last, _)) = chars.last_key_value() {
        if last + 1 != chars.len() {
            return Err(Error::spec_at("[action]", "generators must be numbered v1..vn without gaps"));
        }
    }
    raw.chars = chars.into_values().collect();

    for l in section("q") {
        let (key, value, offset) = l.split("=")?;
        let idx = l.ints(key)?;
        let [i, j] = idx.as_slice() else {
            return Err(l.err("expected `I J = value`"));
        };
        let (i, j) = (index(l, *i)?, index(l, *j)?);
        raw.q.push((i, j, l.scalar(value, offset, &ctx)?, l.loc()));
    }

    // lines for the same written pair form one entry
    let mut kappa: Vec<(usize, usize, Vec<(usize, Vec<i64>, Scalar)>, String)> = Vec::new();
    for l in section("kappa") {
        let (key, rest, _) = l.split("->")?;
        let idx = l.ints(key)?;
        let [i, j] = idx.as_slice() else {
            return Err(l.err("expected `I J -> R (g) value`"));
        };
        let (i, j) = (index(l, *i)?, index(l, *j)?);
        let open = rest.find('(').ok_or_else(|| l.err("expected `(group exponents)`"))?;
        let close = rest.find(')').ok_or_else(|| l.err("expected `)`"))?;
        if close < open {
            return Err(l.err("expected `(group exponents)`"));
        }
        let r = index(l, l.int(&rest[..open])?)?;
        let gexps = l.ints(&rest[open + 1..close])?;
        let value = rest[close + 1..].trim();
        let c = l.scalar(value, l.offset_of(value), &ctx)?;
        match kappa.iter_mut().find(|e| e.0 == i && e.1 == j) {
            Some(e) => e.2.push((r, gexps, c)),
            None => kappa.push((i, j, vec![(r, gexps, c)], l.loc())),
        }
    }
    raw.kappa = kappa;

    let mut instantiate = BTreeMap::new();
    for l in section("instantiate") {
        let (key, value, offset) = l.split("=")?;
        if ctx.param_index(key).is_none() {
            return Err(l.err(format!("`{key}` is not a declared parameter")));
        }
        let v = l.scalar(value, offset, &ctx)?;
        let c: Cyclotomic = v
            .as_constant()
            .ok_or_else(|| l.err(format!("instantiation of `{key}` must be a constant")))?;
        instantiate.insert(key.to_string(), c);
    }
    AlgebraSpec::validate(&ctx, &raw, instantiate).map(SpecFile::Algebra)
}

fn index(l: &Line<'_>, k: i64) -> Result<usize> {
    if k < 1 {
        return Err(l.err(format!("indices are 1-based, found {k}")));
    }
    Ok(k as usize - 1)
}

fn contains_generator(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Generator(_) => true,
        ExprKind::Rational(_) | ExprKind::Ident(_) | ExprKind::Call(_, _) => false,
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => contains_generator(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => contains_generator(a) || contains_generator(b),
    }
}

fn parse_generic(field: &FieldData, lines: &[Line<'_>]) -> Result<ColorLieRing> {
    let mut free_rank = 0usize;
    let mut torsion: Vec<u32> = vec![];
    let mut eps_lines = vec![];
    let mut basis_lines = vec![];
    let mut bracket_lines = vec![];
    for l in lines {
        let t = l.text.trim_start();
        if t.starts_with("epsilon ") {
            eps_lines.push(l);
        } else if t.starts_with("basis ") {
            basis_lines.push(l);
        } else if t.starts_with("bracket ") {
            bracket_lines.push(l);
        } else {
            let (key, value, _) = l.split("=")?;
            match key {
                "free_rank" => free_rank = l.int(value)?,
                "torsion" => torsion = parse_orders(l, value)?,
                other => return Err(l.err(format!("unknown key `{other}` in [generic-lie]"))),
            }
        }
    }
    let group = AbelianGroup::new(torsion)?;
    let grading = GradingGroup::new(free_rank, group.clone());
    let conductor = field.conductor.unwrap_or(group.exponent());
    let ctx = ScalarContext::new(conductor, field.params.clone());
    let size = grading.generator_count();
    if size == 0 {
        return Err(Error::spec("the grading group must have at least one generator"));
    }

    let mut table: Vec<Vec<Option<Scalar>>> = vec![vec![None; size]; size];
    for l in eps_lines {
        let (key, value, offset) = l.split("=")?;
        let idx = l.ints(&key["epsilon".len()..])?;
        let [s, t] = idx.as_slice() else {
            return Err(l.err("expected `epsilon S T = value`"));
        };
        let (s, t) = (index(l, *s)?, index(l, *t)?);
        if s >= size || t >= size {
            return Err(l.err(format!("A has {size} generators")));
        }
        let v = l.scalar(value, offset, &ctx)?;
        let back = v.inv().map_err(|_| Error::NonUnitEpsilon(format!("{} ({v})", l.loc())))?;
        for (a, b, x) in [(s, t, v.clone()), (t, s, back)] {
            match &table[a][b] {
                Some(prev) if *prev != x => {
                    return Err(l.err(format!("epsilon({}, {}) conflicts with an earlier entry", a + 1, b + 1)))
                }
                _ => table[a][b] = Some(x),
            }
        }
    }
    let table = table
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.unwrap_or_else(|| Scalar::one(&ctx))).collect())
        .collect();
    let eps = Bicharacter::from_table(grading.clone(), table)?;

    let mut names: Vec<String> = vec![];
    let mut degrees = vec![];
    for l in basis_lines {
        let (key, value, _) = l.split("=")?;
        let name = key["basis".len()..].trim();
        if !valid_param(name) || field.params.iter().any(|p| p == name) {
            return Err(l.err(format!("`{name}` cannot be used as a basis name")));
        }
        if names.iter().any(|n| n == name) {
            return Err(l.err(format!("basis element `{name}` declared twice")));
        }
        let coords = l.ints(value)?;
        let d = grading.from_coordinates(&coords).map_err(|e| l.err(e.to_string()))?;
        names.push(name.to_string());
        degrees.push(d);
    }
    let dim = names.len();
    let sys = RewriteSystem {
        ctx: ctx.clone(),
        n: dim,
        group: AbelianGroup::trivial(),
        action: vec![vec![Scalar::one(&ctx)]; dim],
        swap: vec![],
        tail: vec![],
        square: vec![None; dim],
    };
    let lookup = |name: &str| names.iter().position(|n| n == name);
    let mut brackets = vec![vec![LieVec::new(); dim]; dim];
    let mut given = vec![vec![false; dim]; dim];
    for l in bracket_lines {
        let (key, value, offset) = l.split("=")?;
        let pair: Vec<&str> = key["bracket".len()..].split_whitespace().collect();
        let [x, y] = pair.as_slice() else {
            return Err(l.err("expected `bracket X Y = value`"));
        };
        let (a, b) = match (lookup(x), lookup(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(l.err(format!("unknown basis element in `{x} {y}`"))),
        };
        if given[a][b] {
            return Err(l.err(format!("bracket [{x}, {y}] given twice")));
        }
        given[a][b] = true;
        let e = l.parse_expr(value, offset)?;
        if contains_generator(&e) {
            return Err(l.err("`vK` names are not basis elements of this ring"));
        }
        let elem: NCElement = sys.eval_expr(&e, &lookup).map_err(|e| e.relocate(l.number, offset))?;
        let mut v = LieVec::new();
        for (m, c) in elem.into_terms() {
            if m.degree() != 1 {
                return Err(l.err("bracket values must be linear combinations of basis elements"));
            }
            v.insert(m.word[0] as usize, c);
        }
        brackets[a][b] = v;
    }
    ColorLieRing::generic(ctx, eps, names, degrees, brackets)
}

pub fn read_spec(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::spec(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

fn ints_text(v: impl IntoIterator<Item = impl ToString>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn field_text(out: &mut String, ctx: &ScalarContext) {
    out.push_str("[field]\n");
    let _ = writeln!(out, "conductor = {}", ctx.conductor());
    if !ctx.params().is_empty() {
        let _ = writeln!(out, "params = {}", ctx.params().join(", "));
    }
}

/// Canonical text of a presentation.
pub fn format_spec(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    field_text(&mut out, &spec.ctx);
    if !spec.instantiate.is_empty() {
        out.push_str("\n[instantiate]\n");
        for p in spec.ctx.params() {
            if let Some(v) = spec.instantiate.get(p) {
                let _ = writeln!(out, "{p} = {v}");
            }
        }
    }
    let orders: Vec<String> = spec.group.orders().iter().map(u32::to_string).collect();
    let _ = write!(out, "\n[group]\norders = [{}]\n\n[action]\n", orders.join(", "));
    for (i, c) in spec.chars.iter().enumerate() {
        let _ = writeln!(out, "v{} = {}", i + 1, ints_text(&c.exps));
    }
    out.push_str("\n[q]\n");
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            if !spec.q(i, j).is_one() {
                let _ = writeln!(out, "{} {} = {}", i + 1, j + 1, spec.q(i, j));
            }
        }
    }
    out.push_str("\n[kappa]\n");
    for (&(i, j), table) in &spec.kappa {
        for (&(r, g), c) in table {
            let _ = writeln!(
                out,
                "{} {} -> {} ({}) {c}",
                i + 1,
                j + 1,
                r + 1,
                ints_text(&spec.group.element(g).exps)
            );
        }
    }
    // keep trailing whitespace stable
    out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
}

/// Canonical text of a generic color Lie ring.
pub fn format_ring(l: &ColorLieRing) -> Result<String> {
    if !matches!(l.origin, RingOrigin::Generic) {
        return Err(Error::spec("only generic rings have a [generic-lie] form"));
    }
    let mut out = String::new();
    field_text(&mut out, &l.ctx);
    let gr = &l.eps.grading;
    let orders: Vec<String> = gr.torsion.orders().iter().map(u32::to_string).collect();
    let _ = write!(out, "\n[generic-lie]\nfree_rank = {}\ntorsion = [{}]\n", gr.free_rank, orders.join(", "));
    for s in 0..gr.generator_count() {
        for t in s..gr.generator_count() {
            let v = l.eps.generator_value(s, t);
            if !v.is_one() {
                let _ = writeln!(out, "epsilon {} {} = {v}", s + 1, t + 1);
            }
        }
    }
    for (name, d) in l.names.iter().zip(&l.degrees) {
        let _ = writeln!(out, "basis {name} = {}", ints_text(gr.coordinates(d)));
    }
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let v = l.bracket(a, b);
            if !v.is_empty() {
                let _ = writeln!(out, "bracket {} {} = {}", l.names[a], l.names[b], l.render(v));
            }
        }
    }
    Ok(out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n")
}

pub fn format_file(f: &SpecFile) -> Result<String> {
    match f {
        SpecFile::Algebra(s) => Ok(format_spec(s)),
        SpecFile::Generic(l) => format_ring(l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn second_example_fields() {
        let spec = fixtures::spec("ex2");
        let q = Scalar::parse("q", &spec.ctx).unwrap();
        assert_eq!(spec.n, 3);
        assert_eq!(spec.q(0, 1), &q.inv().unwrap());
        assert_eq!(spec.q(1, 0), &q);
        assert_eq!(spec.q(0, 2), &q.inv().unwrap().negated());
        assert_eq!(spec.q(1, 2), &q.negated());
        let lambda = Scalar::parse("lambda", &spec.ctx).unwrap();
        assert_eq!(spec.c(0, 1, 2, 1), lambda);
    }

    #[test]
    fn round_trip_every_fixture() {
        for (name, file) in fixtures::corpus() {
            let text = format_file(&file).unwrap();
            let again = parse_spec(&text).unwrap();
            assert_eq!(format_file(&again).unwrap(), text, "{name}");
            match (file, again) {
                (SpecFile::Algebra(a), SpecFile::Algebra(b)) => assert_eq!(a, b),
                (SpecFile::Generic(a), SpecFile::Generic(b)) => assert_eq!(a, b),
                _ => panic!("{name}: kind changed"),
            }
        }
    }

    #[test]
    fn empty_kappa_section() {
        let spec = fixtures::spec("zero");
        assert!(spec.kappa_is_zero());
    }

    #[test]
    fn parse_error_position() {
        let src = fixtures::source("ex2").replace("1 2 = q^-1", "1 2 = q^");
        let line = src.lines().position(|l| l == "1 2 = q^").unwrap() + 1;
        match parse_spec(&src) {
            Err(Error::Parse { line: l, column, .. }) => {
                assert_eq!(l, line);
                assert_eq!(column, 9);
            }
            other => panic!("{other:?}"),
        }
        let src = fixtures::source("ex2").replace("1 2 -> 3 (1) lambda", "1 2 -> 3 (1) lambda +");
        match parse_spec(&src) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 22),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(parse_spec("[group]\norders = [2]\n[bogus]\n"), Err(Error::Spec { .. })));
        assert!(matches!(parse_spec("[action]\nv1 = 0\n"), Err(Error::Spec { .. })));
        let bad_param = "[field]\nparams = v1\n[group]\norders = [2]\n[action]\nv1 = 1\n";
        assert!(parse_spec(bad_param).is_err());
        let gap = "[group]\norders = [2]\n[action]\nv1 = 1\nv3 = 0\n";
        assert!(parse_spec(gap).is_err());
        let unknown = "[group]\norders = [2]\n[action]\nv1 = 1\nv2 = 1\n[q]\n1 2 = mu\n";
        assert!(matches!(parse_spec(unknown), Err(Error::Parse { line: 7, column: 7, .. })));
    }

    #[test]
    fn conductor_defaults_to_exponent() {
        let spec = parse_spec("[group]\norders = [2, 3]\n[action]\nv1 = 1 1\n").unwrap().into_spec().unwrap();
        assert_eq!(spec.ctx.conductor(), 6);
        assert_eq!(spec.q(0, 0), &spec.one());
    }

    #[test]
    fn generic_ring_parse() {
        let l = fixtures::generic("gl11");
        assert_eq!(l.names, vec!["E11", "E22", "E12", "E21"]);
        let sum = l.bracket(2, 3);
        assert_eq!(sum.len(), 2);
        let bad = fixtures::source("gl11").replace("epsilon 1 1 = -1", "epsilon 1 1 = 2");
        assert!(parse_spec(&bad).is_err());
    }
}
