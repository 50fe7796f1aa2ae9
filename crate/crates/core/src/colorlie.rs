//! Bicharacters on `A = Z^a x G`, color Lie rings (either `L = V (x) kG`
//! built from a presentation, or given by an explicit table) and their axiom
//! checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{ADegree, AbelianGroup, Character, GradingGroup, SubgroupN};
use crate::pbw;
use crate::scalar::{Cyclotomic, Scalar, ScalarContext};

/// A sparse vector in the basis of a color Lie ring.
pub type LieVec = BTreeMap<usize, Scalar>;

fn add_to(v: &mut LieVec, idx: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&idx) {
        Some(x) => {
            let s = &*x + &c;
            if s.is_zero() {
                v.remove(&idx);
            } else {
                *x = s;
            }
        }
        None => {
            v.insert(idx, c);
        }
    }
}

fn vec_add(a: &LieVec, b: &LieVec, scale_b: &Scalar) -> LieVec {
    let mut out = a.clone();
    for (k, c) in b {
        add_to(&mut out, *k, c * scale_b);
    }
    out
}

/// An antisymmetric bicharacter, stored by its values on pairs of
/// generators `a_1..a_r, g_1..g_k` of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bicharacter {
    pub grading: GradingGroup,
    table: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    /// `eps((a,g),(b,h)) = prod q_ij^{a_i b_j} prod chi_j(g)^{b_j} prod chi_i(h)^{-a_i}`,
    /// with `eps(|g|,|h|) = 1` on `G`.
    pub fn from_spec(spec: &AlgebraSpec) -> Bicharacter {
        let grading = GradingGroup::new(spec.n, spec.group.clone());
        let k = spec.group.rank();
        let size = spec.n + k;
        let one = spec.one();
        let mut table = vec![vec![one.clone(); size]; size];
        let gens: Vec<usize> = (0..k)
            .map(|t| {
                let mut e = vec![0i64; k];
                e[t] = 1;
                let g = spec.group.reduce(&e).expect("generator");
                spec.group.index_of(&g).expect("generator")
            })
            .collect();
        for i in 0..spec.n {
            for j in 0..spec.n {
                table[i][j] = spec.q(i, j).clone();
            }
            for (t, &g) in gens.iter().enumerate() {
                table[spec.n + t][i] = spec.chi(i, g).clone();
                table[i][spec.n + t] = spec.chi(i, g).inv().expect("character values are units");
            }
        }
        Bicharacter { grading, table }
    }

    /// Validates an explicit generator table: unit entries, antisymmetry,
    /// and compatibility with the orders of the torsion generators.
    pub fn from_table(grading: GradingGroup, table: Vec<Vec<Scalar>>) -> Result<Bicharacter> {
        let size = grading.generator_count();
        if table.len() != size || table.iter().any(|r| r.len() != size) {
            return Err(Error::spec(format!("epsilon table must be {size} x {size}")));
        }
        for s in 0..size {
            for t in 0..size {
                let v = &table[s][t];
                if !v.is_unit() {
                    return Err(Error::NonUnitEpsilon(format!("epsilon({}, {}) = {v}", s + 1, t + 1)));
                }
                if !(v * &table[t][s]).is_one() {
                    return Err(Error::spec(format!(
                        "epsilon is not antisymmetric on generators {} and {}",
                        s + 1,
                        t + 1
                    )));
                }
                for u in [s, t] {
                    if u >= grading.free_rank {
                        let m = grading.torsion.orders()[u - grading.free_rank] as i64;
                        if !v.pow(m)?.is_one() {
                            return Err(Error::spec(format!(
                                "epsilon({}, {}) is not an {m}-th root of unity although generator {} has order {m}",
                                s + 1,
                                t + 1,
                                u + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(Bicharacter { grading, table })
    }

    pub fn generator_value(&self, s: usize, t: usize) -> &Scalar {
        &self.table[s][t]
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        self.table
            .first()
            .and_then(|r| r.first())
            .map(|s| s.ctx())
            .expect("nonempty grading group")
    }

    pub fn eval(&self, a: &ADegree, b: &ADegree) -> Scalar {
        let ca = self.grading.coordinates(a);
        let cb = self.grading.coordinates(b);
        let mut acc: Option<Scalar> = None;
        for (s, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (t, &y) in cb.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let f = self.table[s][t].pow(x * y).expect("units");
                acc = Some(match acc {
                    None => f,
                    Some(a) => &a * &f,
                });
            }
        }
        acc.unwrap_or_else(|| self.table_one())
    }

    fn table_one(&self) -> Scalar {
        match self.table.first().and_then(|r| r.first()) {
            Some(s) => Scalar::one(s.ctx()),
            None => panic!("bicharacter on the trivial group needs an explicit context"),
        }
    }
}

/// How `L = V (x) kG` is attached to a presentation: dimension, group and
/// the diagonal characters giving the bimodule structure.
#[derive(Debug, Clone)]
pub struct VkGShape {
    pub n: usize,
    pub group: Arc<AbelianGroup>,
    pub chars: Vec<Character>,
    pub instantiate: BTreeMap<String, Cyclotomic>,
}

#[derive(Debug, Clone)]
pub enum RingOrigin {
    /// Basis `v_i (x) g` indexed by `i * |G| + g`.
    FromSpec(VkGShape),
    Generic,
}

#[derive(Debug, Clone)]
pub struct ColorLieRing {
    pub ctx: Arc<ScalarContext>,
    pub origin: RingOrigin,
    pub eps: Bicharacter,
    pub names: Vec<String>,
    pub degrees: Vec<ADegree>,
    brackets: Vec<Vec<LieVec>>,
    eps_cache: Vec<Vec<Scalar>>,
    /// Set when the ring was built from a presentation that fails the
    /// hypotheses under which it is a color Lie ring.
    pub exploratory: Option<String>,
}

impl PartialEq for ColorLieRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.degrees == other.degrees
            && self.brackets == other.brackets
            && self.eps == other.eps
    }
}

impl ColorLieRing {
    pub fn generic(
        ctx: Arc<ScalarContext>,
        eps: Bicharacter,
        names: Vec<String>,
        degrees: Vec<ADegree>,
        brackets: Vec<Vec<LieVec>>,
    ) -> Result<ColorLieRing> {
        let d = names.len();
        if degrees.len() != d || brackets.len() != d || brackets.iter().any(|r| r.len() != d) {
            return Err(Error::spec("bracket table does not match the basis"));
        }
        if brackets.iter().flatten().flat_map(|v| v.keys()).any(|&k| k >= d) {
            return Err(Error::spec("bracket value outside the basis"));
        }
        Ok(Self::assemble(ctx, RingOrigin::Generic, eps, names, degrees, brackets, None))
    }

    fn assemble(
        ctx: Arc<ScalarContext>,
        origin: RingOrigin,
        eps: Bicharacter,
        names: Vec<String>,
        degrees: Vec<ADegree>,
        brackets: Vec<Vec<LieVec>>,
        exploratory: Option<String>,
    ) -> ColorLieRing {
        let eps_cache = degrees
            .iter()
            .map(|a| degrees.iter().map(|b| eps.eval(a, b)).collect())
            .collect();
        ColorLieRing {
            ctx,
            origin,
            eps,
            names,
            degrees,
            brackets,
            eps_cache,
            exploratory,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn shape(&self) -> Option<&VkGShape> {
        match &self.origin {
            RingOrigin::FromSpec(s) => Some(s),
            RingOrigin::Generic => None,
        }
    }

    /// Basis index of `v_i (x) g`.
    pub fn index(&self, i: usize, g: usize) -> usize {
        let shape = self.shape().expect("ring of the form V (x) kG");
        i * shape.group.order() + g
    }

    /// `(i, g)` for a basis index.
    pub fn split_index(&self, b: usize) -> (usize, usize) {
        let shape = self.shape().expect("ring of the form V (x) kG");
        (b / shape.group.order(), b % shape.group.order())
    }

    pub fn bracket(&self, a: usize, b: usize) -> &LieVec {
        &self.brackets[a][b]
    }

    /// `eps(|x|, |y|)` for basis elements.
    pub fn eps_basis(&self, a: usize, b: usize) -> &Scalar {
        &self.eps_cache[a][b]
    }

    pub fn basis_vec(&self, a: usize) -> LieVec {
        let mut v = LieVec::new();
        v.insert(a, Scalar::one(&self.ctx));
        v
    }

    pub fn bracket_vec(&self, x: &LieVec, y: &LieVec) -> LieVec {
        let mut out = LieVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                out = vec_add(&out, &self.brackets[*a][*b], &(ca * cb));
            }
        }
        out
    }

    /// A copy with one ordered bracket entry replaced.
    pub fn with_bracket(&self, a: usize, b: usize, value: LieVec) -> ColorLieRing {
        let mut out = self.clone();
        out.brackets[a][b] = value;
        out
    }

    /// `g . x` for `x` in `V (x) kG`.
    pub fn act_left(&self, g: usize, x: &LieVec) -> LieVec {
        let shape = self.shape().expect("ring of the form V (x) kG");
        let mut out = LieVec::new();
        for (b, c) in x {
            let (i, h) = self.split_index(*b);
            let chi = shape.chars[i].eval(&shape.group, shape.group.element(g), &self.ctx);
            add_to(&mut out, self.index(i, shape.group.mul_idx(g, h)), c * &chi);
        }
        out
    }

    /// `x . g` for `x` in `V (x) kG`.
    pub fn act_right(&self, x: &LieVec, g: usize) -> LieVec {
        let shape = self.shape().expect("ring of the form V (x) kG");
        let mut out = LieVec::new();
        for (b, c) in x {
            let (i, h) = self.split_index(*b);
            add_to(&mut out, self.index(i, shape.group.mul_idx(h, g)), c.clone());
        }
        out
    }

    pub fn render(&self, x: &LieVec) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .iter()
            .map(|(b, c)| {
                if c.is_one() {
                    self.names[*b].clone()
                } else {
                    format!("({c})*{}", self.names[*b])
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The hypotheses under which `L = V (x) kG` is a color Lie ring:
/// PBW conditions (1)-(3) and the vanishing condition. `None` when all hold.
fn hypothesis_failure(spec: &AlgebraSpec) -> Option<String> {
    let mut failed = Vec::new();
    if !pbw::check_invariance(spec).holds {
        failed.push("condition (1)");
    }
    if !pbw::check_condition2(spec).holds {
        failed.push("condition (2)");
    }
    if !pbw::check_condition3(spec).holds {
        failed.push("condition (3)");
    }
    if !pbw::check_vanishing(spec, false).holds {
        failed.push("the vanishing condition");
    }
    (!failed.is_empty()).then(|| format!("presentation fails {}", failed.join(", ")))
}

/// `L = V (x) kG` with `[v_i g, v_j h] = chi_j(g) kappa(v_i, v_j) gh`.
///
/// Fails with `HypothesisNotMet` when the presentation is not PBW or not
/// vanishing, unless `exploratory` is set, in which case the ring is built
/// and flagged.
pub fn build_color_lie_ring(spec: &AlgebraSpec, exploratory: bool) -> Result<ColorLieRing> {
    let failure = hypothesis_failure(spec);
    if let (Some(f), false) = (&failure, exploratory) {
        return Err(Error::HypothesisNotMet(f.clone()));
    }
    let order = spec.group.order();
    let grading = GradingGroup::new(spec.n, spec.group.clone());
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..spec.n {
        for g in 0..order {
            names.push(if g == 0 {
                AlgebraSpec::generator_name(i)
            } else {
                format!("{}*{}", AlgebraSpec::generator_name(i), spec.group.element(g))
            });
            let d = grading.mul(&grading.free_generator(i), &grading.torsion_degree(spec.group.element(g)));
            degrees.push(d);
        }
    }
    let dim = spec.n * order;
    let mut brackets = vec![vec![LieVec::new(); dim]; dim];
    for i in 0..spec.n {
        for g in 0..order {
            for j in 0..spec.n {
                for h in 0..order {
                    let value = spec.extended_kappa(i, g, j, h);
                    let mut v = LieVec::new();
                    for (m, c) in value.terms() {
                        add_to(&mut v, m.word[0] as usize * order + m.g, c.clone());
                    }
                    brackets[i * order + g][j * order + h] = v;
                }
            }
        }
    }
    let shape = VkGShape {
        n: spec.n,
        group: spec.group.clone(),
        chars: spec.chars.clone(),
        instantiate: spec.instantiate.clone(),
    };
    Ok(ColorLieRing::assemble(
        spec.ctx.clone(),
        RingOrigin::FromSpec(shape),
        Bicharacter::from_spec(spec),
        names,
        degrees,
        brackets,
        failure,
    ))
}

/// Which grading the bracket is checked against.
#[derive(Debug, Clone, Copy)]
pub enum GradingMode<'a> {
    /// No grading condition (the "ungraded" rings of presentations).
    Ungraded,
    /// `[L_a, L_b]` in `L_{ab}` modulo a subgroup.
    Quotient(&'a SubgroupN),
    /// `[L_a, L_b]` in `L_{ab}` exactly.
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub antisymmetry: Check,
    pub jacobi: Check,
    /// `g [x, y] = [g x, y]`.
    pub balanced_left: Check,
    /// `[x g, y] = [x, g y]`.
    pub balanced_middle: Check,
    /// `[x, y g] = [x, y] g`.
    pub balanced_right: Check,
    pub grading: Check,
    /// `g x g^-1 = eps(|g|, |x|) x`.
    pub yetter_drinfeld: Check,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        [
            &self.antisymmetry,
            &self.jacobi,
            &self.balanced_left,
            &self.balanced_middle,
            &self.balanced_right,
            &self.grading,
            &self.yetter_drinfeld,
        ]
        .iter()
        .all(|c| c.ok())
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let all = [
            ("antisymmetry", &self.antisymmetry),
            ("jacobi", &self.jacobi),
            ("balanced_left", &self.balanced_left),
            ("balanced_middle", &self.balanced_middle),
            ("balanced_right", &self.balanced_right),
            ("grading", &self.grading),
            ("yetter_drinfeld", &self.yetter_drinfeld),
        ];
        all.iter().filter(|(_, c)| c.failed()).map(|(n, _)| *n).collect()
    }
}

pub fn check_antisymmetry(l: &ColorLieRing) -> Check {
    let mut c = Check::pass();
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let sum = vec_add(l.bracket(a, b), l.bracket(b, a), l.eps_basis(a, b));
            if !sum.is_empty() {
                c.record(format!(
                    "[{x},{y}] + eps(|{x}|,|{y}|) [{y},{x}] = {}",
                    l.render(&sum),
                    x = l.names[a],
                    y = l.names[b]
                ));
            }
        }
    }
    c
}

/// `eps(|z|,|x|)[x,[y,z]] + eps(|x|,|y|)[y,[z,x]] + eps(|y|,|z|)[z,[x,y]] = 0`.
pub fn check_jacobi(l: &ColorLieRing) -> Check {
    let mut c = Check::pass();
    let d = l.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let mut sum = LieVec::new();
                for (a, b, cc) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = l.bracket(b, cc);
                    if inner.is_empty() {
                        continue;
                    }
                    let outer = l.bracket_vec(&l.basis_vec(a), inner);
                    sum = vec_add(&sum, &outer, l.eps_basis(cc, a));
                }
                if !sum.is_empty() {
                    c.record(format!(
                        "jacobi({}, {}, {}) = {}",
                        l.names[x],
                        l.names[y],
                        l.names[z],
                        l.render(&sum)
                    ));
                }
            }
        }
    }
    c
}

fn check_balanced(l: &ColorLieRing) -> [Check; 3] {
    let Some(shape) = l.shape() else {
        let note = "generic ring over the ground field";
        return [Check::skipped(note), Check::skipped(note), Check::skipped(note)];
    };
    let mut out = [Check::pass(), Check::pass(), Check::pass()];
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let xa = l.basis_vec(a);
            let xb = l.basis_vec(b);
            let br = l.bracket(a, b);
            for g in 0..shape.group.order() {
                let gname = shape.group.element(g);
                let left = l.act_left(g, br);
                let right = l.bracket_vec(&l.act_left(g, &xa), &xb);
                if left != right {
                    out[0].record(format!("g={gname}: g[{},{}] = {} but [g x, y] = {}", l.names[a], l.names[b], l.render(&left), l.render(&right)));
                }
                let left = l.bracket_vec(&l.act_right(&xa, g), &xb);
                let right = l.bracket_vec(&xa, &l.act_left(g, &xb));
                if left != right {
                    out[1].record(format!("g={gname}: [x g, y] = {} but [x, g y] = {} for x={}, y={}", l.render(&left), l.render(&right), l.names[a], l.names[b]));
                }
                let left = l.bracket_vec(&xa, &l.act_right(&xb, g));
                let right = l.act_right(br, g);
                if left != right {
                    out[2].record(format!("g={gname}: [x, y g] = {} but [x, y] g = {} for x={}, y={}", l.render(&left), l.render(&right), l.names[a], l.names[b]));
                }
            }
        }
    }
    out
}

pub fn check_grading(l: &ColorLieRing, mode: GradingMode<'_>) -> Check {
    let grading = &l.eps.grading;
    let same = |a: &ADegree, b: &ADegree| match mode {
        GradingMode::Ungraded => true,
        GradingMode::Quotient(n) => n.congruent(a, b),
        GradingMode::Full => a == b,
    };
    if let GradingMode::Ungraded = mode {
        return Check::skipped("ungraded");
    }
    let mut c = Check::pass();
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let target = grading.mul(&l.degrees[a], &l.degrees[b]);
            for k in l.bracket(a, b).keys() {
                if !same(&l.degrees[*k], &target) {
                    c.record(format!(
                        "[{},{}] has component {} of degree {} instead of {}",
                        l.names[a], l.names[b], l.names[*k], l.degrees[*k], target
                    ));
                }
            }
        }
    }
    c
}

/// `g x g^-1 = eps(|g|, |x|) x` for every basis `x` and `g` in `G`.
pub fn check_yetter_drinfeld(l: &ColorLieRing) -> Check {
    let Some(shape) = l.shape() else {
        return Check::skipped("generic ring over the ground field");
    };
    let grading = &l.eps.grading;
    let mut c = Check::pass();
    for a in 0..l.dim() {
        for g in 0..shape.group.order() {
            let conj = l.act_right(&l.act_left(g, &l.basis_vec(a)), shape.group.inv_idx(g));
            let e = l.eps.eval(&grading.torsion_degree(shape.group.element(g)), &l.degrees[a]);
            let mut expect = LieVec::new();
            add_to(&mut expect, a, e);
            if conj != expect {
                c.record(format!("g={}: g {} g^-1 = {}", shape.group.element(g), l.names[a], l.render(&conj)));
            }
        }
    }
    c
}

pub fn check_color_axioms(l: &ColorLieRing, mode: GradingMode<'_>) -> AxiomReport {
    let [balanced_left, balanced_middle, balanced_right] = check_balanced(l);
    AxiomReport {
        antisymmetry: check_antisymmetry(l),
        jacobi: check_jacobi(l),
        balanced_left,
        balanced_middle,
        balanced_right,
        grading: check_grading(l, mode),
        yetter_drinfeld: check_yetter_drinfeld(l),
    }
}

#[derive(Debug, Clone)]
pub struct QuotientData {
    pub n: SubgroupN,
    /// `eps(n, x) = eps(x, n) = 1` for generators `n` of `N` and `x` of `A`.
    pub well_defined: Check,
}

/// `N = < |v_i||v_j||v_r|^-1 |g|^-1 : c_r^{ijg} != 0 >` and whether `eps`
/// descends to `A/N`.
pub fn build_n_and_quotient(spec: &AlgebraSpec) -> QuotientData {
    let eps = Bicharacter::from_spec(spec);
    let grading = eps.grading.clone();
    let mut gens = Vec::new();
    for e in spec.support() {
        let top = grading.mul(&grading.free_generator(e.i), &grading.free_generator(e.j));
        let low = grading.mul(&grading.free_generator(e.r), &grading.torsion_degree(spec.group.element(e.g)));
        let d = grading.mul(&top, &grading.inv(&low));
        if !gens.contains(&d) {
            gens.push(d);
        }
    }
    let mut well_defined = Check::pass();
    for n in &gens {
        for s in 0..grading.generator_count() {
            let x = grading.generator(s);
            for (label, v) in [("eps(n, x)", eps.eval(n, &x)), ("eps(x, n)", eps.eval(&x, n))] {
                if !v.is_one() {
                    well_defined.record(format!("{label} = {v} for n = {n}, x = {x}"));
                }
            }
        }
    }
    QuotientData {
        n: SubgroupN::new(&grading, gens),
        well_defined,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDecomposition {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl GradedDecomposition {
    pub fn purely_positive(&self) -> bool {
        self.negative.is_empty()
    }
}

pub fn split_parts(l: &ColorLieRing) -> Result<GradedDecomposition> {
    let mut out = GradedDecomposition {
        positive: vec![],
        negative: vec![],
    };
    let minus_one = Scalar::from_integer(&l.ctx, -1);
    for a in 0..l.dim() {
        let e = l.eps_basis(a, a);
        if e.is_one() {
            out.positive.push(a);
        } else if *e == minus_one {
            out.negative.push(a);
        } else {
            return Err(Error::ValueNotSign(format!("{} (value {e})", l.names[a])));
        }
    }
    Ok(out)
}

/// `[v_i (x) 1, v_i (x) g] = 0` for all `i, g`; skipped unless `L` is a
/// purely positive ring of the form `V (x) kG`.
pub fn check_prop_positive(l: &ColorLieRing) -> Check {
    let Some(shape) = l.shape() else {
        return Check::skipped("not of the form V (x) kG");
    };
    match split_parts(l) {
        Ok(p) if p.purely_positive() => {}
        _ => return Check::skipped("not purely positive"),
    }
    let mut c = Check::pass();
    for i in 0..shape.n {
        for g in 0..shape.group.order() {
            let v = l.bracket(l.index(i, 0), l.index(i, g));
            if !v.is_empty() {
                c.record(format!("[{}, {}] = {}", l.names[l.index(i, 0)], l.names[l.index(i, g)], l.render(v)));
            }
        }
    }
    c
}

/// `eps(|v_k|, |v_r g|) = eps(|v_k|, |v_i|) eps(|v_k|, |v_j|)` for every
/// nonzero `c_r^{ijg}` and every `k`, evaluated through the bicharacter.
pub fn check_braiding_compatibility(spec: &AlgebraSpec) -> Check {
    let eps = Bicharacter::from_spec(spec);
    let gr = &eps.grading;
    let mut c = Check::pass();
    for e in spec.support() {
        let target = gr.mul(&gr.free_generator(e.r), &gr.torsion_degree(spec.group.element(e.g)));
        for k in 0..spec.n {
            let vk = gr.free_generator(k);
            let left = eps.eval(&vk, &target);
            let right = &eps.eval(&vk, &gr.free_generator(e.i)) * &eps.eval(&vk, &gr.free_generator(e.j));
            if left != right {
                c.record(format!(
                    "k={} i={} j={} r={} g={}: {left} != {right}",
                    k + 1,
                    e.i + 1,
                    e.j + 1,
                    e.r + 1,
                    spec.group.element(e.g)
                ));
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ring(name: &str) -> ColorLieRing {
        build_color_lie_ring(&fixtures::spec(name), false).unwrap()
    }

    #[test]
    fn bicharacter_formula() {
        let spec = fixtures::spec("ex2");
        let eps = Bicharacter::from_spec(&spec);
        let gr = &eps.grading;
        let v = |i| gr.free_generator(i);
        let g = gr.torsion_degree(spec.group.element(1));
        assert_eq!(eps.eval(&v(0), &v(1)), spec.q(0, 1).clone());
        // eps(|v1 g|, |v2 g|) = q12 chi_1(g)^-1 chi_2(g)
        let left = gr.mul(&v(0), &g);
        let right = gr.mul(&v(1), &g);
        let expect = &(spec.q(0, 1) * &spec.chi(0, 1).inv().unwrap()) * spec.chi(1, 1);
        assert_eq!(eps.eval(&left, &right), expect);
        assert!(eps.eval(&left, &gr.identity()).is_one());
    }

    #[test]
    fn second_example_brackets() {
        let spec = fixtures::spec("ex2");
        let l = ring("ex2");
        let lambda = Scalar::parse("lambda", &spec.ctx).unwrap();
        let v3g = l.index(2, 1);
        assert_eq!(l.bracket(l.index(0, 0), l.index(1, 0)), &LieVec::from([(v3g, lambda.clone())]));
        assert_eq!(l.bracket(l.index(0, 1), l.index(1, 1)), &LieVec::from([(v3g, lambda.negated())]));
        for i in 0..3 {
            assert!(l.bracket(l.index(i, 0), l.index(i, 0)).is_empty());
        }
    }

    #[test]
    fn fixture_rings_satisfy_axioms() {
        for name in fixtures::SPEC_NAMES {
            let l = ring(name);
            let report = check_color_axioms(&l, GradingMode::Ungraded);
            assert!(report.passed(), "{name}: {:?}", report.failures());
            assert!(report.balanced_left.passed() && report.yetter_drinfeld.passed());
        }
    }

    #[test]
    fn gl11_axioms_and_parts() {
        let l = fixtures::generic("gl11");
        let report = check_color_axioms(&l, GradingMode::Full);
        assert!(report.passed(), "{:?}", report.failures());
        let parts = split_parts(&l).unwrap();
        assert_eq!(parts.positive, vec![0, 1]);
        assert_eq!(parts.negative, vec![2, 3]);
        assert_eq!(check_prop_positive(&l).status, crate::check::Status::Skipped);
    }

    #[test]
    fn perturbed_bracket_is_caught() {
        let spec = fixtures::spec("ex2");
        let l = ring("ex2");
        let lambda = Scalar::parse("lambda", &spec.ctx).unwrap();
        let bad = l.with_bracket(l.index(0, 0), l.index(1, 0), LieVec::from([(l.index(1, 1), lambda)]));
        let report = check_color_axioms(&bad, GradingMode::Ungraded);
        assert!(report.antisymmetry.failed());
        assert!(!report.antisymmetry.certificates.is_empty());
    }

    #[test]
    fn quotient_data() {
        let q2 = build_n_and_quotient(&fixtures::spec("ex2"));
        assert!(q2.well_defined.passed());
        let gr = q2.n.grading().clone();
        let spec = fixtures::spec("ex2");
        let gen = gr.from_coordinates(&[1, 1, -1, 1]).unwrap();
        assert_eq!(q2.n.generators(), &[gen]);
        assert!(q2.n.contains(&gr.from_coordinates(&[2, 2, -2, 0]).unwrap()));
        assert!(!q2.n.contains(&gr.free_generator(0)));
        let l = ring("ex2");
        assert!(check_grading(&l, GradingMode::Quotient(&q2.n)).passed());
        assert!(check_grading(&l, GradingMode::Full).failed());
        assert!(build_n_and_quotient(&fixtures::spec("zero")).n.generators().is_empty());
        assert!(build_n_and_quotient(&fixtures::spec("ex1")).well_defined.failed());
        let _ = spec;
    }

    #[test]
    fn braiding_matches_strong_vanishing() {
        for name in fixtures::SPEC_NAMES {
            let spec = fixtures::spec(name);
            assert_eq!(
                check_braiding_compatibility(&spec).passed(),
                pbw::check_vanishing(&spec, true).holds,
                "{name}"
            );
        }
    }

    #[test]
    fn positive_prop() {
        for name in ["ex3", "ex4", "ex2"] {
            assert!(check_prop_positive(&ring(name)).passed(), "{name}");
        }
    }

    #[test]
    fn generic_table_validation() {
        let ctx = ScalarContext::new(4, vec![]);
        let grading = GradingGroup::new(0, AbelianGroup::new(vec![2]).unwrap());
        let bad = vec![vec![Scalar::root_of_unity(&ctx, 1)]];
        assert!(Bicharacter::from_table(grading.clone(), bad).is_err());
        let z = GradingGroup::new(1, AbelianGroup::trivial());
        let eps = Bicharacter::from_table(z.clone(), vec![vec![Scalar::from_integer(&ctx, -1)]]).unwrap();
        let l = ColorLieRing::generic(ctx, eps, vec!["x".into()], vec![z.free_generator(0)], vec![vec![LieVec::new()]]).unwrap();
        assert_eq!(split_parts(&l).unwrap().negative, vec![0]);
    }
}
