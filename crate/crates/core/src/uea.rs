//! Enveloping algebras of color Lie rings, the isomorphism with `H_{q,kappa}`,
//! a rank-based dimension oracle and the converse construction.
//!
//! For `L = V (x) kG` the enveloping algebra over `kG` is presented on the
//! generators `v_i (x) 1` with the group acting by `eps(|g|, |v_i|)`; every
//! basis element `v_i (x) g` is then the product `(v_i (x) 1) g`. Generic
//! rings are enveloped over the ground field.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{all_words, AlgebraSpec, Mono, NCElement, RewriteSystem};
use crate::check::Check;
use crate::colorlie::{check_color_axioms, check_yetter_drinfeld, split_parts, ColorLieRing, GradingMode, LieVec, RingOrigin};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character};
use crate::linalg::{Echelon, SparseRow};
use crate::pbw::{self, ConditionResult};
use crate::scalar::{Cyclotomic, Scalar};

/// `U(L)` as a rewriting system.
#[derive(Debug, Clone)]
pub struct Uea {
    pub system: RewriteSystem,
    pub names: Vec<String>,
}

impl Uea {
    pub fn generator(&self, i: usize) -> NCElement {
        NCElement::generator(i, &self.system.ctx)
    }

    pub fn normal_form(&self, x: &NCElement) -> NCElement {
        self.system.normal_form(x)
    }

    pub fn render(&self, x: &NCElement) -> String {
        x.render(&self.system.group, &|i| self.names[i].clone())
    }
}

/// A basis vector of `L` as an element of the tensor algebra.
fn lie_to_element(l: &ColorLieRing, v: &LieVec) -> NCElement {
    let mut out = NCElement::zero();
    for (b, c) in v {
        let m = match l.origin {
            RingOrigin::FromSpec(_) => {
                let (i, g) = l.split_index(*b);
                Mono::new(vec![i as u8], g)
            }
            RingOrigin::Generic => Mono::new(vec![*b as u8], 0),
        };
        out.add_term(m, c.clone());
    }
    out
}

fn axiom_mode(l: &ColorLieRing) -> GradingMode<'static> {
    match l.origin {
        RingOrigin::FromSpec(_) => GradingMode::Ungraded,
        RingOrigin::Generic => GradingMode::Full,
    }
}

/// The rewriting system of `U(L)` without checking the axioms of `L`.
fn uea_unchecked(l: &ColorLieRing) -> Uea {
    let one = Scalar::one(&l.ctx);
    match &l.origin {
        RingOrigin::FromSpec(shape) => {
            let n = shape.n;
            let gr = &l.eps.grading;
            let action = (0..n)
                .map(|i| {
                    (0..shape.group.order())
                        .map(|g| l.eps.eval(&gr.torsion_degree(shape.group.element(g)), &gr.free_generator(i)))
                        .collect()
                })
                .collect();
            let mut swap = vec![vec![Scalar::zero(&l.ctx); n]; n];
            let mut tail = vec![vec![NCElement::zero(); n]; n];
            for j in 0..n {
                for i in 0..j {
                    let (bj, bi) = (l.index(j, 0), l.index(i, 0));
                    swap[j][i] = l.eps_basis(bj, bi).clone();
                    tail[j][i] = lie_to_element(l, l.bracket(bj, bi));
                }
            }
            Uea {
                system: RewriteSystem {
                    ctx: l.ctx.clone(),
                    n,
                    group: shape.group.clone(),
                    action,
                    swap,
                    tail,
                    square: vec![None; n],
                },
                names: (0..n).map(AlgebraSpec::generator_name).collect(),
            }
        }
        RingOrigin::Generic => {
            let d = l.dim();
            let half = Scalar::from_rational(&l.ctx, BigRational::new(1.into(), 2.into()));
            let minus_one = Scalar::from_integer(&l.ctx, -1);
            let mut swap = vec![vec![Scalar::zero(&l.ctx); d]; d];
            let mut tail = vec![vec![NCElement::zero(); d]; d];
            for j in 0..d {
                for i in 0..j {
                    swap[j][i] = l.eps_basis(j, i).clone();
                    tail[j][i] = lie_to_element(l, l.bracket(j, i));
                }
            }
            // v v -> 1/2 [v, v] for negative generators
            let square = (0..d)
                .map(|i| (*l.eps_basis(i, i) == minus_one).then(|| lie_to_element(l, l.bracket(i, i)).scale(&half)))
                .collect();
            Uea {
                system: RewriteSystem {
                    ctx: l.ctx.clone(),
                    n: d,
                    group: AbelianGroup::trivial(),
                    action: vec![vec![one]; d],
                    swap,
                    tail,
                    square,
                },
                names: l.names.clone(),
            }
        }
    }
}

/// `U(L)`, refusing rings that fail the color Lie axioms.
pub fn build_uea(l: &ColorLieRing) -> Result<Uea> {
    let report = check_color_axioms(l, axiom_mode(l));
    if !report.passed() {
        return Err(Error::AxiomsFailed(report.failures().join(", ")));
    }
    Ok(uea_unchecked(l))
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    /// Images of `x (x) y - eps(|x|,|y|) y (x) x - [x,y]` reduce to 0 in `H`.
    pub ideal_maps_to_zero: Check,
    /// Relations of `H` reduce to 0 in `U(L)`.
    pub relations_map_to_zero: Check,
    /// The same generators reduce to 0 in `U(L)` itself.
    pub uea_ideal_vanishes: Check,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.ideal_maps_to_zero.passed() && self.relations_map_to_zero.passed() && self.uea_ideal_vanishes.passed()
    }
}

/// `x (x) y - eps(|x|,|y|) y (x) x - [x,y]` mapped into `T(V) x| G` through
/// `v_i g (x) v_j h -> v_i (g v_j) gh`, using `sys` for the products.
fn ideal_generator(l: &ColorLieRing, sys: &RewriteSystem, a: usize, b: usize) -> NCElement {
    let x = lie_to_element(l, &l.basis_vec(a));
    let y = lie_to_element(l, &l.basis_vec(b));
    sys.mul(&x, &y)
        .sub(&sys.mul(&y, &x).scale(l.eps_basis(a, b)))
        .sub(&lie_to_element(l, l.bracket(a, b)))
}

pub fn iso_check(spec: &AlgebraSpec, l: &ColorLieRing) -> IsoReport {
    let h = spec.rewrite_system();
    let u = uea_unchecked(l);
    let mut report = IsoReport {
        ideal_maps_to_zero: Check::pass(),
        relations_map_to_zero: Check::pass(),
        uea_ideal_vanishes: Check::pass(),
    };
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let residue = h.normal_form(&ideal_generator(l, &h, a, b));
            if !residue.is_zero() {
                report
                    .ideal_maps_to_zero
                    .record(format!("({}, {}) -> {}", l.names[a], l.names[b], spec.render(&residue)));
            }
            let residue = u.normal_form(&ideal_generator(l, &u.system, a, b));
            if !residue.is_zero() {
                report
                    .uea_ideal_vanishes
                    .record(format!("({}, {}) -> {}", l.names[a], l.names[b], u.render(&residue)));
            }
        }
    }
    for i in 0..spec.n {
        for j in 0..spec.n {
            let residue = u.normal_form(&spec.relation(i, j));
            if !residue.is_zero() {
                report
                    .relations_map_to_zero
                    .record(format!("relation ({}, {}) -> {}", i + 1, j + 1, u.render(&residue)));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub degree: usize,
    pub pbw_count: usize,
    pub quotient_dim: usize,
    pub columns: usize,
    pub rows: usize,
    pub rank: usize,
}

impl DimensionReport {
    pub fn matches(&self) -> bool {
        self.pbw_count == self.quotient_dim
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the filtration piece of degree `d` of `T(V) x| G` modulo
/// the span of `w1 g rel w2 h` (total word length at most `d`), computed by
/// exact elimination after substituting parameter values.
pub fn dimension_oracle(spec: &AlgebraSpec, d: usize, overrides: &BTreeMap<String, Cyclotomic>) -> Result<DimensionReport> {
    let mut values = spec.instantiate.clone();
    values.extend(overrides.iter().map(|(k, v)| (k.clone(), v.clone())));
    let sys = spec.rewrite_system();
    let order = spec.group.order();
    let words = all_words(spec.n, d);
    let mut column: HashMap<Mono, usize> = HashMap::new();
    for w in &words {
        for g in 0..order {
            let next = column.len();
            column.insert(Mono::new(w.clone(), g), next);
        }
    }
    let mut relations = Vec::new();
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            relations.push(spec.relation(i, j));
        }
    }
    let short = if d >= 2 { all_words(spec.n, d - 2) } else { vec![] };
    let mut echelon = Echelon::new();
    let mut rows = 0;
    for rel in &relations {
        for w1 in &short {
            for g in 0..order {
                let left = sys.mul(&sys.monomial_element(w1, g), rel);
                for w2 in short.iter().filter(|w2| w1.len() + w2.len() + 2 <= d) {
                    for h in 0..order {
                        let x = sys.mul(&left, &sys.monomial_element(w2, h));
                        let mut row = SparseRow::new();
                        for (m, c) in x.terms() {
                            row.insert(column[m], c.evaluate(&values)?);
                        }
                        rows += 1;
                        echelon.insert(row);
                    }
                }
            }
        }
    }
    let total = column.len();
    Ok(DimensionReport {
        degree: d,
        pbw_count: order * binomial(spec.n + d, spec.n),
        quotient_dim: total - echelon.rank(),
        columns: total,
        rows,
        rank: echelon.rank(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConverseReport {
    #[serde(skip)]
    pub spec: AlgebraSpec,
    pub text: String,
    pub invariance: ConditionResult,
    pub vanishing: ConditionResult,
    pub cond3_prime: ConditionResult,
}

impl ConverseReport {
    /// Whether the conditions implied by the color axioms hold.
    pub fn conditions_hold(&self) -> bool {
        self.invariance.holds && self.vanishing.holds && self.cond3_prime.holds
    }
}

/// Reads `q_ij = eps(|v_i|, |v_j|)`, `chi_i(g) = eps(|g|, |v_i|)` and
/// `kappa(v_i, v_j) = [v_i (x) 1, v_j (x) 1]` off a Yetter-Drinfeld ring
/// with purely positive part.
pub fn converse_construct(l: &ColorLieRing) -> Result<ConverseReport> {
    let parts = split_parts(l)?;
    if !parts.purely_positive() {
        let names: Vec<&str> = parts.negative.iter().map(|&b| l.names[b].as_str()).collect();
        return Err(Error::NotPurelyPositive(names.join(", ")));
    }
    let Some(shape) = l.shape() else {
        return Err(Error::HypothesisNotMet("the ring is not of the form V (x) kG".into()));
    };
    let axioms = check_color_axioms(l, GradingMode::Ungraded);
    if !axioms.passed() {
        return Err(Error::AxiomsFailed(axioms.failures().join(", ")));
    }
    if check_yetter_drinfeld(l).failed() {
        return Err(Error::HypothesisNotMet("the grading is not Yetter-Drinfeld".into()));
    }
    let n = shape.n;
    let group = &shape.group;
    let gr = &l.eps.grading;
    let m = l.ctx.conductor();

    let mut q = vec![vec![Scalar::one(&l.ctx); n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let e = l.eps_basis(l.index(i, 0), l.index(j, 0));
            if !e.is_unit() {
                return Err(Error::NonUnitEpsilon(format!("eps(|v{}|, |v{}|) = {e}", i + 1, j + 1)));
            }
            *x = e.clone();
        }
    }

    let mut chars = Vec::new();
    for i in 0..n {
        let mut exps = Vec::new();
        for (t, &mt) in group.orders().iter().enumerate() {
            let g = gr.generator(gr.free_rank + t);
            let value = l.eps.eval(&g, &gr.free_generator(i));
            let k = value
                .as_constant()
                .and_then(|c| c.root_exponent())
                .ok_or_else(|| Error::HypothesisNotMet(format!("eps(|g{}|, |v{}|) = {value} is not a root of unity", t + 1, i + 1)))?;
            let step = m / mt;
            if k % step != 0 {
                return Err(Error::HypothesisNotMet(format!(
                    "eps(|g{}|, |v{}|) = {value} has order not dividing {mt}",
                    t + 1,
                    i + 1
                )));
            }
            exps.push((k / step) as i64);
        }
        chars.push(Character::new(group, &exps)?);
    }

    let mut kappa = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let table: BTreeMap<(usize, usize), Scalar> = l
                .bracket(l.index(i, 0), l.index(j, 0))
                .iter()
                .map(|(b, c)| (l.split_index(*b), c.clone()))
                .collect();
            if !table.is_empty() {
                kappa.insert((i, j), table);
            }
        }
    }
    let spec = AlgebraSpec::assemble(l.ctx.clone(), shape.instantiate.clone(), n, group.clone(), chars, q, kappa);
    Ok(ConverseReport {
        text: crate::specfile::format_spec(&spec),
        invariance: pbw::check_invariance(&spec),
        vanishing: pbw::check_vanishing(&spec, false),
        cond3_prime: pbw::check_condition3_prime(&spec),
        spec,
    })
}

/// PBW property of `U(L)` via the converse construction.
pub fn pbw_for_uea(l: &ColorLieRing) -> Result<bool> {
    let c = converse_construct(l)?;
    Ok(pbw::check_pbw(&c.spec).verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorlie::build_color_lie_ring;
    use crate::fixtures;
    use crate::specfile::format_spec;

    fn ring(name: &str) -> ColorLieRing {
        build_color_lie_ring(&fixtures::spec(name), false).unwrap()
    }

    #[test]
    fn second_example_rules_are_the_relations() {
        let spec = fixtures::spec("ex2");
        let u = build_uea(&ring("ex2")).unwrap();
        let h = spec.rewrite_system();
        assert_eq!(u.system.swap, h.swap);
        assert_eq!(u.system.tail, h.tail);
        assert_eq!(u.system.action, h.action);
    }

    #[test]
    fn iso_on_fixtures() {
        for name in fixtures::SPEC_NAMES {
            let r = iso_check(&fixtures::spec(name), &ring(name));
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn iso_detects_perturbation() {
        let spec = fixtures::spec("ex2");
        let l = ring("ex2");
        let bad = l.with_bracket(l.index(0, 0), l.index(1, 0), LieVec::new());
        let r = iso_check(&spec, &bad);
        assert!(r.ideal_maps_to_zero.failed());
        assert!(r.ideal_maps_to_zero.certificates[0].contains("v3"));
        assert!(matches!(build_uea(&bad), Err(Error::AxiomsFailed(_))));
    }

    #[test]
    fn gl11_nilpotent() {
        let l = fixtures::generic("gl11");
        let u = build_uea(&l).unwrap();
        let m = u.generator(3);
        assert!(!u.normal_form(&m).is_zero());
        assert!(u.normal_form(&u.system.mul(&m, &m)).is_zero());
        let e = u.generator(2);
        // E21 E12 = -E12 E21 + E11 + E22
        let nf = u.normal_form(&u.system.mul(&m, &e));
        assert_eq!(nf.len(), 3);
    }

    #[test]
    fn abelian_ring_gives_polynomials() {
        let spec = crate::specfile::parse_spec("[group]\norders = [1]\n[action]\nv1 = 0\nv2 = 0\n")
            .unwrap()
            .into_spec()
            .unwrap();
        let u = build_uea(&build_color_lie_ring(&spec, false).unwrap()).unwrap();
        assert!(u.system.swap[1][0].is_one());
        assert!(u.system.tail[1][0].is_zero());
        let c = converse_construct(&build_color_lie_ring(&spec, false).unwrap()).unwrap();
        assert!(c.spec.kappa_is_zero());
        assert!(pbw::check_pbw(&c.spec).verdict);
    }

    #[test]
    fn dimension_counts() {
        let r = dimension_oracle(&fixtures::spec("ex2"), 3, &BTreeMap::new()).unwrap();
        assert_eq!(r.pbw_count, 40);
        assert_eq!(r.quotient_dim, 40);
        let r = dimension_oracle(&fixtures::spec("ex1"), 2, &BTreeMap::new()).unwrap();
        assert_eq!(r.pbw_count, 90);
        assert_eq!(r.quotient_dim, 90);
    }

    #[test]
    fn missing_instantiation() {
        let mut spec = fixtures::spec("ex2");
        spec.instantiate.clear();
        assert!(matches!(
            dimension_oracle(&spec, 2, &BTreeMap::new()),
            Err(Error::SymbolicParameter(_))
        ));
    }

    #[test]
    fn converse_round_trip() {
        for name in ["ex2", "ex3", "ex4", "zero", "ex1"] {
            let spec = fixtures::spec(name);
            let c = converse_construct(&ring(name)).unwrap();
            assert_eq!(c.spec, spec, "{name}");
            assert_eq!(c.text, format_spec(&spec));
            assert!(c.conditions_hold(), "{name}");
        }
        assert!(pbw_for_uea(&ring("ex4")).unwrap());
    }

    #[test]
    fn converse_refuses_negative_parts() {
        assert!(matches!(
            converse_construct(&fixtures::generic("gl11")),
            Err(Error::NotPurelyPositive(_))
        ));
    }
}
