//! Elements of `T(V) x| G`, presentations `H_{q,kappa}`, and the rewriting
//! system producing normal forms `v_1^{m_1} ... v_n^{m_n} g`.
//!
//! Elements are always stored as combinations of `word * g` with group
//! letters already moved to the right, so the skew group relations are
//! built into the representation.
//!
//! Termination of [`RewriteSystem::normal_form`]: every rule replaces a
//! monomial by monomials that are strictly smaller in the degree-lexicographic
//! order (length first, then the word). A descent `v_j v_i` (`j > i`) becomes
//! `v_i v_j` of the same length but lexicographically smaller, and every
//! correction term has smaller length. The pending set is processed from the
//! largest monomial down, so no monomial is visited twice.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{Expr, ExprKind};
use crate::group::{AbelianGroup, Character, GroupElement};
use crate::scalar::{Cyclotomic, Scalar, ScalarContext};

/// `v_{w_1} ... v_{w_l} g` with 0-based generator indices and `g` an index
/// into the group's element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub word: Vec<u8>,
    pub g: usize,
}

impl Mono {
    pub fn new(word: Vec<u8>, g: usize) -> Self {
        Mono { word, g }
    }

    pub fn unit() -> Self {
        Mono { word: vec![], g: 0 }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// Exponent vector when the word is non-decreasing.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &w in &self.word {
            e[w as usize] += 1;
        }
        e
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.g.cmp(&other.g))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A PBW monomial `v_1^{m_1} ... v_n^{m_n} g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub exps: Vec<u32>,
    pub g: GroupElement,
}

impl PbwMonomial {
    pub fn to_mono(&self, group: &AbelianGroup) -> Mono {
        let mut word = Vec::new();
        for (i, &m) in self.exps.iter().enumerate() {
            word.extend(std::iter::repeat_n(i as u8, m as usize));
        }
        Mono::new(word, group.index_of(&self.g).expect("element of the group"))
    }
}

/// A finite linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCElement {
    terms: BTreeMap<Mono, Scalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn term(mono: Mono, coeff: Scalar) -> Self {
        let mut x = NCElement::zero();
        x.add_term(mono, coeff);
        x
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Mono::unit(), c)
    }

    pub fn generator(i: usize, ctx: &Arc<ScalarContext>) -> Self {
        Self::term(Mono::new(vec![i as u8], 0), Scalar::one(ctx))
    }

    pub fn group_element(g: usize, ctx: &Arc<ScalarContext>) -> Self {
        Self::term(Mono::new(vec![], g), Scalar::one(ctx))
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Highest word length occurring, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Scalar) {
        add_into(&mut self.terms, mono, coeff);
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> NCElement {
        let mut out = NCElement::zero();
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> NCElement {
        NCElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    /// Multiplies every group part on the right by `h` (no action involved).
    pub fn right_group(&self, h: usize, group: &AbelianGroup) -> NCElement {
        NCElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.word.clone(), group.mul_idx(m.g, h)), c.clone()))
                .collect(),
        }
    }

    /// Human-readable form; `name(i)` renders generator `i`.
    pub fn render(&self, group: &AbelianGroup, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors: Vec<String> = m.word.iter().map(|&w| name(w as usize)).collect();
            if m.g != 0 {
                factors.push(group.element(m.g).to_string());
            }
            let mono = factors.join("*");
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.negated().is_one() {
                format!("-{mono}")
            } else if c.is_unit() && c.terms().values().all(|z| z.weight() == 1) {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            };
            parts.push(s);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

fn add_into(map: &mut BTreeMap<Mono, Scalar>, mono: Mono, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match map.get_mut(&mono) {
        Some(existing) => {
            let sum = &*existing + &coeff;
            if sum.is_zero() {
                map.remove(&mono);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(mono, coeff);
        }
    }
}

/// Which redex a rewriting step picks.
pub enum Strategy<'a> {
    /// Leftmost descent; deterministic.
    Leftmost,
    /// A uniformly random redex, for cross-checking confluence.
    Random(&'a mut dyn rand::RngCore),
}

/// Ordering rules `v_j v_i -> s_{ji} v_i v_j + t_{ji}` (`j > i`), optional
/// square rules `v_i v_i -> t_i`, and the diagonal group action.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub ctx: Arc<ScalarContext>,
    pub n: usize,
    pub group: Arc<AbelianGroup>,
    /// `action[i][g]`: `g v_i = action[i][g] v_i g`.
    pub action: Vec<Vec<Scalar>>,
    /// `swap[j][i]` for `j > i`.
    pub swap: Vec<Vec<Scalar>>,
    /// `tail[j][i]` for `j > i`; elements of word length at most 1.
    pub tail: Vec<Vec<NCElement>>,
    pub square: Vec<Option<NCElement>>,
}

impl RewriteSystem {
    /// `chi_w(g)`, the scalar picked up when `g` passes the word `w`.
    pub fn word_action(&self, word: &[u8], g: usize) -> Scalar {
        let mut s = Scalar::one(&self.ctx);
        if g == 0 {
            return s;
        }
        for &w in word {
            s = &s * &self.action[w as usize][g];
        }
        s
    }

    /// Product in `T(V) x| G`: `(u g)(w h) = chi_w(g) u w gh`.
    pub fn mul(&self, a: &NCElement, b: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut word = ma.word.clone();
                word.extend_from_slice(&mb.word);
                let c = &(ca * cb) * &self.word_action(&mb.word, ma.g);
                out.add_term(Mono::new(word, self.group.mul_idx(ma.g, mb.g)), c);
            }
        }
        out
    }

    /// `g x`, moving `g` to the right of every word.
    pub fn left_group(&self, g: usize, x: &NCElement) -> NCElement {
        self.mul(&NCElement::group_element(g, &self.ctx), x)
    }

    pub fn monomial_element(&self, word: &[u8], g: usize) -> NCElement {
        NCElement::term(Mono::new(word.to_vec(), g), Scalar::one(&self.ctx))
    }

    fn redexes(&self, word: &[u8]) -> impl Iterator<Item = usize> + '_ {
        let word = word.to_vec();
        (0..word.len().saturating_sub(1)).filter(move |&p| {
            let (a, b) = (word[p], word[p + 1]);
            a > b || (a == b && self.square[a as usize].is_some())
        })
    }

    pub fn is_normal(&self, m: &Mono) -> bool {
        self.redexes(&m.word).next().is_none()
    }

    /// One rewriting step of `coeff * m` at position `p`.
    fn rewrite_at(&self, m: &Mono, coeff: &Scalar, p: usize, out: &mut BTreeMap<Mono, Scalar>) {
        let (a, b) = (m.word[p] as usize, m.word[p + 1] as usize);
        let prefix = &m.word[..p];
        let suffix = &m.word[p + 2..];
        let tail = if a > b {
            let mut word = prefix.to_vec();
            word.push(b as u8);
            word.push(a as u8);
            word.extend_from_slice(suffix);
            add_into(out, Mono::new(word, m.g), coeff * &self.swap[a][b]);
            &self.tail[a][b]
        } else {
            self.square[a].as_ref().expect("square rule exists")
        };
        for (tm, tc) in &tail.terms {
            // u (w_t h_t) s g = chi_s(h_t) u w_t s (h_t g)
            let mut word = prefix.to_vec();
            word.extend_from_slice(&tm.word);
            word.extend_from_slice(suffix);
            let c = &(coeff * tc) * &self.word_action(suffix, tm.g);
            add_into(out, Mono::new(word, self.group.mul_idx(tm.g, m.g)), c);
        }
    }

    pub fn normal_form(&self, x: &NCElement) -> NCElement {
        self.normal_form_with(x, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, x: &NCElement, mut strategy: Strategy<'_>) -> NCElement {
        let mut pending = x.terms.clone();
        let mut done = BTreeMap::new();
        while let Some((m, c)) = pending.pop_last() {
            let choice = match &mut strategy {
                Strategy::Leftmost => self.redexes(&m.word).next(),
                Strategy::Random(rng) => {
                    let all: Vec<usize> = self.redexes(&m.word).collect();
                    if all.is_empty() {
                        None
                    } else {
                        Some(all[rng.gen_range(0..all.len())])
                    }
                }
            };
            match choice {
                None => {
                    done.insert(m, c);
                }
                Some(p) => self.rewrite_at(&m, &c, p, &mut pending),
            }
        }
        NCElement { terms: done }
    }

    /// Product followed by normal form.
    pub fn multiply(&self, a: &NCElement, b: &NCElement) -> NCElement {
        self.normal_form(&self.mul(a, b))
    }

    /// Evaluates an expression built from scalars, generators and group
    /// elements. `resolve` maps identifiers that are not parameters to
    /// generator indices.
    pub fn eval_expr(&self, e: &Expr, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<NCElement> {
        let perr = |msg: String| Error::parse(1, e.column, msg);
        Ok(match &e.kind {
            ExprKind::Call(name, args) if name == "g" => {
                let g = self.group.reduce(args).map_err(|err| perr(err.to_string()))?;
                NCElement::group_element(self.group.index_of(&g)?, &self.ctx)
            }
            ExprKind::Rational(_) | ExprKind::Call(_, _) => NCElement::scalar(Scalar::from_expr(e, &self.ctx)?),
            ExprKind::Ident(name) => {
                if self.ctx.param_index(name).is_some() {
                    NCElement::scalar(Scalar::from_expr(e, &self.ctx)?)
                } else if let Some(i) = resolve(name) {
                    NCElement::generator(i, &self.ctx)
                } else {
                    return Err(perr(format!("unknown identifier `{name}`")));
                }
            }
            ExprKind::Generator(i) => {
                if *i >= self.n {
                    return Err(perr(format!("generator v{} out of range (n = {})", i + 1, self.n)));
                }
                NCElement::generator(*i, &self.ctx)
            }
            ExprKind::Neg(a) => self.eval_expr(a, resolve)?.neg(),
            ExprKind::Add(a, b) => self.eval_expr(a, resolve)?.add(&self.eval_expr(b, resolve)?),
            ExprKind::Sub(a, b) => self.eval_expr(a, resolve)?.sub(&self.eval_expr(b, resolve)?),
            ExprKind::Mul(a, b) => self.mul(&self.eval_expr(a, resolve)?, &self.eval_expr(b, resolve)?),
            ExprKind::Pow(a, k) => {
                let base = self.eval_expr(a, resolve)?;
                if *k < 0 {
                    let only_scalar = base.terms.len() == 1 && base.terms.keys().all(|m| *m == Mono::unit());
                    if !only_scalar {
                        return Err(perr("negative powers are only allowed for scalars".into()));
                    }
                    let c = base.terms.values().next().unwrap();
                    NCElement::scalar(c.pow(*k).map_err(|err| perr(err.to_string()))?)
                } else {
                    let mut acc = NCElement::scalar(Scalar::one(&self.ctx));
                    for _ in 0..*k {
                        acc = self.mul(&acc, &base);
                    }
                    acc
                }
            }
        })
    }
}

/// One stored coefficient `c_r^{ijg}` of `kappa(v_i, v_j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaEntry {
    pub i: usize,
    pub j: usize,
    pub r: usize,
    pub g: usize,
    pub c: Scalar,
}

/// A validated presentation of `H_{q,kappa}`. Indices are 0-based.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub ctx: Arc<ScalarContext>,
    /// Values substituted for parameters in exact linear algebra.
    pub instantiate: BTreeMap<String, Cyclotomic>,
    pub n: usize,
    pub group: Arc<AbelianGroup>,
    pub chars: Vec<Character>,
    pub q: Vec<Vec<Scalar>>,
    /// `(i, j)` with `i < j` mapped to `(r, g) -> c_r^{ijg}`, nonzero only.
    pub kappa: BTreeMap<(usize, usize), BTreeMap<(usize, usize), Scalar>>,
    chi: Vec<Vec<Scalar>>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.group == other.group
            && self.chars == other.chars
            && self.q == other.q
            && self.kappa == other.kappa
            && self.ctx.params() == other.ctx.params()
            && self.ctx.conductor() == other.ctx.conductor()
    }
}

/// Unvalidated presentation data; `loc` strings are used in error messages.
#[derive(Debug, Clone, Default)]
pub struct RawSpec {
    pub n: usize,
    pub orders: Vec<u32>,
    pub chars: Vec<Vec<i64>>,
    /// `(i, j, value, loc)`, 0-based.
    pub q: Vec<(usize, usize, Scalar, String)>,
    /// `(i, j, [(r, gexps, c)], loc)`, 0-based.
    pub kappa: Vec<(usize, usize, Vec<(usize, Vec<i64>, Scalar)>, String)>,
}

impl AlgebraSpec {
    /// Checks the presentation invariants and fills derived entries.
    pub fn validate(
        ctx: &Arc<ScalarContext>,
        raw: &RawSpec,
        instantiate: BTreeMap<String, Cyclotomic>,
    ) -> Result<AlgebraSpec> {
        let n = raw.n;
        if n == 0 || n > 64 {
            return Err(Error::spec("dimension n must be between 1 and 64"));
        }
        let group = AbelianGroup::new(raw.orders.clone())?;
        if !ctx.conductor().is_multiple_of(group.exponent()) {
            return Err(Error::spec(format!(
                "conductor {} is not a multiple of the group exponent {}",
                ctx.conductor(),
                group.exponent()
            )));
        }
        if raw.chars.len() != n {
            return Err(Error::spec_at(
                "action",
                format!("expected {n} characters, found {}", raw.chars.len()),
            ));
        }
        let chars = raw
            .chars
            .iter()
            .enumerate()
            .map(|(i, e)| Character::new(&group, e).map_err(|err| Error::spec_at(format!("action v{}", i + 1), err.to_string())))
            .collect::<Result<Vec<_>>>()?;

        let one = Scalar::one(ctx);
        let mut q: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]; n];
        for (i, j, value, loc) in &raw.q {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::spec_at(loc.clone(), "index out of range"));
            }
            if !value.is_unit() {
                return Err(Error::spec_at(loc.clone(), format!("q_{}{} = {value} is not a unit", i + 1, j + 1)));
            }
            if i == j {
                if *value != one {
                    return Err(Error::spec_at(loc.clone(), format!("q_{}{} must be 1, found {value}", i + 1, i + 1)));
                }
                continue;
            }
            let inverse = value.inv()?;
            for (a, b, v) in [(i, j, value.clone()), (j, i, inverse)] {
                match &q[a][b] {
                    Some(existing) if *existing != v => {
                        return Err(Error::spec_at(
                            loc.clone(),
                            format!("q_{}{} conflicts with an earlier entry ({existing} vs {v})", a + 1, b + 1),
                        ))
                    }
                    _ => q[a][b] = Some(v),
                }
            }
        }
        let q: Vec<Vec<Scalar>> = q
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.unwrap_or_else(|| one.clone())).collect())
            .collect();

        let mut kappa: BTreeMap<(usize, usize), BTreeMap<(usize, usize), Scalar>> = BTreeMap::new();
        let mut seen: BTreeMap<(usize, usize), String> = BTreeMap::new();
        for (i, j, entries, loc) in &raw.kappa {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::spec_at(loc.clone(), "index out of range"));
            }
            let mut table: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (r, gexps, c) in entries {
                if *r >= n {
                    return Err(Error::spec_at(loc.clone(), format!("v{} out of range", r + 1)));
                }
                let g = group.reduce(gexps).map_err(|e| Error::spec_at(loc.clone(), e.to_string()))?;
                let gi = group.index_of(&g)?;
                let slot = table.entry((*r, gi)).or_insert_with(|| Scalar::zero(ctx));
                *slot = &*slot + c;
            }
            table.retain(|_, c| !c.is_zero());
            if i == j {
                if !table.is_empty() {
                    return Err(Error::spec_at(loc.clone(), format!("kappa(v{0}, v{0}) must vanish", i + 1)));
                }
                continue;
            }
            // normalise to i < j
            let (a, b, table) = if i < j {
                (i, j, table)
            } else {
                // kappa(v_j, v_i) = -q_ji kappa(v_i, v_j)
                let f = q[j][i].negated();
                (j, i, table.into_iter().map(|(k, c)| (k, &c * &f)).collect())
            };
            if let Some(prev) = seen.get(&(a, b)) {
                let existing = kappa.get(&(a, b)).cloned().unwrap_or_default();
                if existing != table {
                    return Err(Error::spec_at(
                        loc.clone(),
                        format!(
                            "kappa(v{}, v{}) conflicts with the entry at {prev} under quantum antisymmetry",
                            a + 1,
                            b + 1
                        ),
                    ));
                }
                continue;
            }
            seen.insert((a, b), loc.clone());
            if !table.is_empty() {
                kappa.insert((a, b), table);
            }
        }
        Ok(Self::assemble(ctx.clone(), instantiate, n, group, chars, q, kappa))
    }

    /// Builds a spec from already consistent data.
    pub fn assemble(
        ctx: Arc<ScalarContext>,
        instantiate: BTreeMap<String, Cyclotomic>,
        n: usize,
        group: Arc<AbelianGroup>,
        chars: Vec<Character>,
        q: Vec<Vec<Scalar>>,
        kappa: BTreeMap<(usize, usize), BTreeMap<(usize, usize), Scalar>>,
    ) -> AlgebraSpec {
        let chi = chars
            .iter()
            .map(|c| group.elements().iter().map(|g| c.eval(&group, g, &ctx)).collect())
            .collect();
        AlgebraSpec {
            ctx,
            instantiate,
            n,
            group,
            chars,
            q,
            kappa,
            chi,
        }
    }

    /// `chi_i(g)` for a group element index.
    pub fn chi(&self, i: usize, g: usize) -> &Scalar {
        &self.chi[i][g]
    }

    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        &self.q[i][j]
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(&self.ctx)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.ctx)
    }

    /// `c_r^{ijg}` for any ordered pair, derived by quantum antisymmetry.
    pub fn c(&self, i: usize, j: usize, r: usize, g: usize) -> Scalar {
        match i.cmp(&j) {
            Ordering::Equal => self.zero(),
            Ordering::Less => self
                .kappa
                .get(&(i, j))
                .and_then(|t| t.get(&(r, g)))
                .cloned()
                .unwrap_or_else(|| self.zero()),
            Ordering::Greater => {
                let base = self.c(j, i, r, g);
                if base.is_zero() {
                    base
                } else {
                    (&base * &self.q[i][j]).negated()
                }
            }
        }
    }

    /// Stored nonzero coefficients, `i < j`.
    pub fn support(&self) -> Vec<KappaEntry> {
        let mut out = Vec::new();
        for (&(i, j), table) in &self.kappa {
            for (&(r, g), c) in table {
                out.push(KappaEntry { i, j, r, g, c: c.clone() });
            }
        }
        out
    }

    /// Nonzero coefficients for every ordered pair `i != j`.
    pub fn ordered_support(&self) -> Vec<KappaEntry> {
        let mut out = Vec::new();
        for e in self.support() {
            let back = (&e.c * &self.q[e.j][e.i]).negated();
            out.push(KappaEntry { i: e.j, j: e.i, r: e.r, g: e.g, c: back });
            out.push(e);
        }
        out
    }

    pub fn kappa_is_zero(&self) -> bool {
        self.kappa.is_empty()
    }

    /// `kappa(v_i, v_j)` as a degree-one element.
    pub fn kappa_elem(&self, i: usize, j: usize) -> NCElement {
        let mut out = NCElement::zero();
        if i == j {
            return out;
        }
        let (a, b) = (i.min(j), i.max(j));
        if let Some(t) = self.kappa.get(&(a, b)) {
            let f = if i < j { self.one() } else { self.q[i][j].negated() };
            for (&(r, g), c) in t {
                out.add_term(Mono::new(vec![r as u8], g), c * &f);
            }
        }
        out
    }

    /// `kappa_g(v_i, v_j)`: the coefficients `c_r^{ijg}` over `r`.
    pub fn kappa_g(&self, i: usize, j: usize, g: usize) -> Vec<(usize, Scalar)> {
        (0..self.n)
            .map(|r| (r, self.c(i, j, r, g)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `kappa(v_i g, v_j h) = chi_j(g) kappa(v_i, v_j) gh`.
    pub fn extended_kappa(&self, i: usize, g: usize, j: usize, h: usize) -> NCElement {
        self.kappa_elem(i, j)
            .scale(self.chi(j, g))
            .right_group(self.group.mul_idx(g, h), &self.group)
    }

    /// Bilinear extension of `kappa` to elements of `V (x) kG`.
    pub fn kappa_on(&self, x: &NCElement, y: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                assert!(mx.degree() == 1 && my.degree() == 1, "kappa is defined on V (x) kG");
                let term = self.extended_kappa(mx.word[0] as usize, mx.g, my.word[0] as usize, my.g);
                out = out.add(&term.scale(&(cx * cy)));
            }
        }
        out
    }

    /// `v_i v_j - q_ij v_j v_i - kappa(v_i, v_j)`.
    pub fn relation(&self, i: usize, j: usize) -> NCElement {
        let mut out = NCElement::zero();
        out.add_term(Mono::new(vec![i as u8, j as u8], 0), self.one());
        out.add_term(Mono::new(vec![j as u8, i as u8], 0), self.q[i][j].negated());
        out.sub(&self.kappa_elem(i, j))
    }

    pub fn rewrite_system(&self) -> RewriteSystem {
        let n = self.n;
        let mut swap = vec![vec![self.zero(); n]; n];
        let mut tail = vec![vec![NCElement::zero(); n]; n];
        for j in 0..n {
            for i in 0..j {
                // v_j v_i = q_ji v_i v_j + kappa(v_j, v_i)
                swap[j][i] = self.q[j][i].clone();
                tail[j][i] = self.kappa_elem(j, i);
            }
        }
        RewriteSystem {
            ctx: self.ctx.clone(),
            n,
            group: self.group.clone(),
            action: self.chi.clone(),
            swap,
            tail,
            square: vec![None; n],
        }
    }

    pub fn generator_name(i: usize) -> String {
        format!("v{}", i + 1)
    }

    pub fn render(&self, x: &NCElement) -> String {
        x.render(&self.group, &Self::generator_name)
    }

    /// Parses an element of `T(V) x| G` written with `v1..vn`, `g(..)` and
    /// scalars.
    pub fn parse_element(&self, text: &str) -> Result<NCElement> {
        let e = crate::expr::parse(text)?;
        self.rewrite_system().eval_expr(&e, &|_| None)
    }

    /// Group elements of a given index enumerated as their exponent vectors.
    pub fn group_element(&self, g: usize) -> &GroupElement {
        self.group.element(g)
    }
}

/// PBW monomials of word degree at most `d` (group parts excluded).
pub fn pbw_words(n: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for i in start..n as u8 {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All words of length at most `d`.
pub fn all_words(n: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..n as u8 {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
