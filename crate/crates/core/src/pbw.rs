//! The PBW property: closed-form conditions on `(q, kappa)`, their
//! alternative cyclic-sum forms, the (strong) vanishing conditions, and an
//! independent overlap-resolution oracle.

use serde::Serialize;

use crate::algebra::{AlgebraSpec, Mono, NCElement, RewriteSystem};
use crate::group::GroupElement;
use crate::scalar::Scalar;

/// Violations kept per condition.
const VIOLATION_LIMIT: usize = 64;

/// A failed scalar or vector identity. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub g: GroupElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i={} j={}", self.i, self.j)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        write!(f, " g={}", self.g)?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub holds: bool,
    /// Total number of violations, including those not listed.
    pub count: usize,
    pub violations: Vec<Violation>,
}

impl ConditionResult {
    fn new() -> Self {
        ConditionResult {
            holds: true,
            count: 0,
            violations: vec![],
        }
    }

    fn push(&mut self, v: Violation) {
        self.holds = false;
        self.count += 1;
        if self.violations.len() < VIOLATION_LIMIT {
            self.violations.push(v);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub cond1: ConditionResult,
    pub cond2: ConditionResult,
    pub cond3: ConditionResult,
    /// Cyclic-sum form of condition (2), evaluated in `S_q(V)`.
    pub alt_cond2: ConditionResult,
    /// Cyclic-sum form of condition (3), evaluated in `V (x) kG`.
    pub alt_cond3: ConditionResult,
    /// Whether `cond1 && alt_cond2 && alt_cond3` equals the verdict.
    pub alt_agrees: bool,
    pub vanishing: ConditionResult,
    pub strong_vanishing: ConditionResult,
    /// `sum q_jk kappa(v_k, kappa(v_i, v_j)) = 0` over distinct triples.
    pub cond3_prime: ConditionResult,
    pub fixed_point_free: bool,
    pub oracle_confluent: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub oracle_certificates: Vec<String>,
    pub verdict: bool,
}

fn distinct_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| {
            (0..n)
                .filter(move |&k| i != j && j != k && i != k)
                .map(move |k| (i, j, k))
        })
    })
}

fn cyclic(i: usize, j: usize, k: usize) -> [(usize, usize, usize); 3] {
    [(i, j, k), (j, k, i), (k, i, j)]
}

fn violation(spec: &AlgebraSpec, i: usize, j: usize, k: Option<usize>, g: usize, r: Option<usize>, lhs: String, rhs: String) -> Violation {
    Violation {
        i: i + 1,
        j: j + 1,
        k: k.map(|k| k + 1),
        g: spec.group.element(g).clone(),
        r: r.map(|r| r + 1),
        lhs,
        rhs,
    }
}

/// Condition (1): `chi_i chi_j = chi_r` on every stored coefficient.
pub fn check_invariance(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    for e in spec.support() {
        let prod = spec.chars[e.i].mul(&spec.chars[e.j], &spec.group);
        if prod != spec.chars[e.r] {
            out.push(violation(
                spec,
                e.i,
                e.j,
                None,
                e.g,
                Some(e.r),
                format!("chi_{}*chi_{} = {:?}", e.i + 1, e.j + 1, prod.exps),
                format!("chi_{} = {:?}", e.r + 1, spec.chars[e.r].exps),
            ));
        }
    }
    out
}

/// Condition (2). The first family is taken for `r` outside `{i, j}`;
/// the cases `r = i, j` are governed by the second family.
pub fn check_condition2(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    let one = spec.one();
    for g in 0..spec.group.order() {
        for (i, j, k) in distinct_triples(spec.n) {
            let chi_k = spec.chi(k, g);
            for r in (0..spec.n).filter(|&r| r != i && r != j) {
                let c = spec.c(i, j, r, g);
                if c.is_zero() {
                    continue;
                }
                let lhs = &(chi_k - &(&(spec.q(j, k) * spec.q(i, k)) * spec.q(k, r))) * &c;
                if !lhs.is_zero() {
                    out.push(violation(spec, i, j, Some(k), g, Some(r), lhs.to_string(), "0".into()));
                }
            }
            let first = &(&one - &(spec.q(i, j) * spec.chi(i, g))) * &spec.c(j, k, k, g);
            let second = &(spec.q(j, k) - chi_k) * &spec.c(i, j, i, g);
            let lhs = &first + &second;
            if !lhs.is_zero() {
                out.push(violation(spec, i, j, Some(k), g, None, lhs.to_string(), "0".into()));
            }
        }
    }
    out
}

/// `kappa(v_k, w)` for `w` a combination of basis vectors of `V`.
fn kappa_left(spec: &AlgebraSpec, k: usize, w: &[(usize, Scalar)]) -> NCElement {
    let mut out = NCElement::zero();
    for (r, c) in w {
        out = out.add(&spec.kappa_elem(k, *r).scale(c));
    }
    out
}

/// `kappa(w, v_k)` for `w` in `V`.
fn kappa_right(spec: &AlgebraSpec, w: &[(usize, Scalar)], k: usize) -> NCElement {
    let mut out = NCElement::zero();
    for (r, c) in w {
        out = out.add(&spec.kappa_elem(*r, k).scale(c));
    }
    out
}

/// Condition (3), per group element and distinct triple.
pub fn check_condition3(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    for g in 0..spec.group.order() {
        for (i, j, k) in distinct_triples(spec.n) {
            let mut sum = NCElement::zero();
            for (a, b, c) in cyclic(i, j, k) {
                let coeff = &(spec.chi(c, g) - spec.q(b, c)) * &spec.c(a, b, a, g);
                sum = sum.add(&spec.kappa_elem(c, a).scale(&coeff));
                let kg = spec.kappa_g(a, b, g);
                sum = sum.add(&kappa_left(spec, c, &kg).scale(spec.q(b, c)));
            }
            if !sum.is_zero() {
                out.push(violation(spec, i, j, Some(k), g, None, spec.render(&sum), "0".into()));
            }
        }
    }
    out
}

/// Rewriting system of `S_q(V) x| G`, i.e. the same `q` with `kappa = 0`.
fn quantum_symmetric_system(spec: &AlgebraSpec) -> RewriteSystem {
    let mut sys = spec.rewrite_system();
    for row in sys.tail.iter_mut() {
        for t in row.iter_mut() {
            *t = NCElement::zero();
        }
    }
    sys
}

/// Alternative form of (2):
/// `sum q_jk v_k kappa_g(v_i,v_j) - q_ki chi_k(g) kappa_g(v_i,v_j) v_k = 0` in `S_q(V)`.
pub fn check_alt_condition2(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    let sys = quantum_symmetric_system(spec);
    for g in 0..spec.group.order() {
        for (i, j, k) in distinct_triples(spec.n) {
            let mut sum = NCElement::zero();
            for (a, b, c) in cyclic(i, j, k) {
                for (r, coeff) in spec.kappa_g(a, b, g) {
                    sum.add_term(Mono::new(vec![c as u8, r as u8], 0), spec.q(b, c) * &coeff);
                    let back = &(spec.q(c, a) * spec.chi(c, g)) * &coeff;
                    sum.add_term(Mono::new(vec![r as u8, c as u8], 0), back.negated());
                }
            }
            let nf = sys.normal_form(&sum);
            if !nf.is_zero() {
                out.push(violation(spec, i, j, Some(k), g, None, spec.render(&nf), "0".into()));
            }
        }
    }
    out
}

/// Alternative form of (3):
/// `sum q_ki chi_k(g) kappa(kappa_g(v_i,v_j), v_k) - q_jk kappa(v_k, kappa_g(v_i,v_j)) = 0`.
pub fn check_alt_condition3(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    for g in 0..spec.group.order() {
        for (i, j, k) in distinct_triples(spec.n) {
            let mut sum = NCElement::zero();
            for (a, b, c) in cyclic(i, j, k) {
                let kg = spec.kappa_g(a, b, g);
                let f = spec.q(c, a) * spec.chi(c, g);
                sum = sum.add(&kappa_right(spec, &kg, c).scale(&f));
                sum = sum.sub(&kappa_left(spec, c, &kg).scale(spec.q(b, c)));
            }
            if !sum.is_zero() {
                out.push(violation(spec, i, j, Some(k), g, None, spec.render(&sum), "0".into()));
            }
        }
    }
    out
}

/// `chi_k(g) = q_ik q_jk q_kr` whenever `c_r^{ijg} != 0`; `k` ranges over
/// indices distinct from `i, j` unless `strong`.
pub fn check_vanishing(spec: &AlgebraSpec, strong: bool) -> ConditionResult {
    let mut out = ConditionResult::new();
    for e in spec.ordered_support() {
        for k in 0..spec.n {
            if !strong && (k == e.i || k == e.j) {
                continue;
            }
            let rhs = &(spec.q(e.i, k) * spec.q(e.j, k)) * spec.q(k, e.r);
            let lhs = spec.chi(k, e.g);
            if *lhs != rhs {
                out.push(violation(spec, e.i, e.j, Some(k), e.g, Some(e.r), format!("chi_{}(g) = {lhs}", k + 1), rhs.to_string()));
            }
        }
    }
    out
}

/// `sum q_jk kappa(v_k, kappa(v_i, v_j)) = 0` with `kappa` extended to
/// `V (x) kG` in its second argument.
pub fn check_condition3_prime(spec: &AlgebraSpec) -> ConditionResult {
    let mut out = ConditionResult::new();
    for (i, j, k) in distinct_triples(spec.n) {
        let mut sum = NCElement::zero();
        for (a, b, c) in cyclic(i, j, k) {
            let vc = NCElement::generator(c, &spec.ctx);
            sum = sum.add(&spec.kappa_on(&vc, &spec.kappa_elem(a, b)).scale(spec.q(b, c)));
        }
        if !sum.is_zero() {
            out.push(violation(spec, i, j, Some(k), 0, None, spec.render(&sum), "0".into()));
        }
    }
    out
}

/// No basis vector is fixed by all of `G`.
pub fn fixed_point_free(spec: &AlgebraSpec) -> bool {
    spec.chars.iter().all(|c| !c.is_trivial())
}

/// Resolves every overlap ambiguity of the rewriting system and compares
/// normal forms: `(v_k v_j) v_i` against `v_k (v_j v_i)` for `k > j > i`,
/// `(gh) v_i` against `g (h v_i)`, and `g (v_j v_i)` reduced before and
/// after moving `g`.
pub fn overlap_oracle(spec: &AlgebraSpec) -> (bool, Vec<String>) {
    let sys = spec.rewrite_system();
    let mut certs = Vec::new();
    let v = |i: usize| NCElement::generator(i, &spec.ctx);
    let word = |w: &[usize]| sys.monomial_element(&w.iter().map(|&x| x as u8).collect::<Vec<_>>(), 0);
    for k in 0..spec.n {
        for j in 0..k {
            let kj = sys.normal_form(&word(&[k, j]));
            for i in 0..j {
                let ji = sys.normal_form(&word(&[j, i]));
                let left = sys.normal_form(&sys.mul(&kj, &v(i)));
                let right = sys.normal_form(&sys.mul(&v(k), &ji));
                if left != right {
                    certs.push(format!(
                        "(v{k1} v{j1}) v{i1} -> {} but v{k1} (v{j1} v{i1}) -> {}",
                        spec.render(&left),
                        spec.render(&right),
                        k1 = k + 1,
                        j1 = j + 1,
                        i1 = i + 1
                    ));
                }
            }
        }
    }
    for g in 0..spec.group.order() {
        let ge = NCElement::group_element(g, &spec.ctx);
        for h in 0..spec.group.order() {
            let he = NCElement::group_element(h, &spec.ctx);
            for i in 0..spec.n {
                let left = sys.mul(&sys.mul(&ge, &he), &v(i));
                let right = sys.mul(&ge, &sys.mul(&he, &v(i)));
                if left != right {
                    certs.push(format!("(gh) v{} differs from g (h v{}) for g={}, h={}", i + 1, i + 1, spec.group.element(g), spec.group.element(h)));
                }
            }
        }
        for j in 0..spec.n {
            for i in 0..j {
                let reduced_first = sys.normal_form(&sys.mul(&ge, &sys.normal_form(&word(&[j, i]))));
                let moved_first = sys.normal_form(&sys.mul(&ge, &word(&[j, i])));
                if reduced_first != moved_first {
                    certs.push(format!(
                        "g (v{j1} v{i1}) with g={}: {} vs {}",
                        spec.group.element(g),
                        spec.render(&reduced_first),
                        spec.render(&moved_first),
                        j1 = j + 1,
                        i1 = i + 1
                    ));
                }
            }
        }
    }
    (certs.is_empty(), certs)
}

pub fn check_pbw(spec: &AlgebraSpec) -> PbwReport {
    let cond1 = check_invariance(spec);
    let cond2 = check_condition2(spec);
    let cond3 = check_condition3(spec);
    let alt_cond2 = check_alt_condition2(spec);
    let alt_cond3 = check_alt_condition3(spec);
    let verdict = cond1.holds && cond2.holds && cond3.holds;
    let alt_agrees = (cond1.holds && alt_cond2.holds && alt_cond3.holds) == verdict;
    let (oracle_confluent, oracle_certificates) = overlap_oracle(spec);
    PbwReport {
        vanishing: check_vanishing(spec, false),
        strong_vanishing: check_vanishing(spec, true),
        cond3_prime: check_condition3_prime(spec),
        fixed_point_free: fixed_point_free(spec),
        cond1,
        cond2,
        cond3,
        alt_cond2,
        alt_cond3,
        alt_agrees,
        oracle_confluent,
        oracle_certificates,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::specfile;

    #[test]
    fn fixtures_satisfy_pbw() {
        for name in fixtures::SPEC_NAMES {
            let r = check_pbw(&fixtures::spec(name));
            assert!(r.verdict, "{name}: {r:?}");
            assert!(r.oracle_confluent, "{name}");
            assert!(r.vanishing.holds, "{name}");
        }
    }

    #[test]
    fn strong_vanishing_per_fixture() {
        let sv = |n: &str| check_vanishing(&fixtures::spec(n), true).holds;
        assert!(sv("ex2"));
        assert!(sv("ex3"));
        assert!(!sv("ex1"));
        assert!(sv("zero"));
        // ex4: every k satisfies chi_k(g_i) = q_{i,k} q_{2+i,k} q_{k,i}
        assert!(sv("ex4"));
    }

    #[test]
    fn first_example_strong_vanishing_certificate() {
        let r = check_vanishing(&fixtures::spec("ex1"), true);
        assert!(r.violations.iter().any(|v| v.k == Some(1) && v.r == Some(3)));
        assert!(r.violations.iter().all(|v| v.k == Some(v.i) || v.k == Some(v.j)));
    }

    #[test]
    fn invariance_failure() {
        let src = fixtures::source("ex2").replace("v3 = 0", "v3 = 1");
        let spec = specfile::parse_spec(&src).unwrap().into_spec().unwrap();
        let r = check_invariance(&spec);
        assert!(!r.holds);
        assert_eq!(r.violations[0].r, Some(3));
        assert!(!check_pbw(&spec).verdict);
    }

    #[test]
    fn changed_q_breaks_condition2() {
        let src = fixtures::source("ex2").replace("2 3 = -q", "2 3 = q");
        let spec = specfile::parse_spec(&src).unwrap().into_spec().unwrap();
        assert!(!check_condition2(&spec).holds);
        let (confluent, certs) = overlap_oracle(&spec);
        assert!(!confluent);
        assert!(!certs.is_empty());
    }

    #[test]
    fn extra_kappa_breaks_confluence() {
        let src = fixtures::source("ex2").replace("[kappa]", "[kappa]\n1 3 -> 2 (1) 1");
        let spec = specfile::parse_spec(&src).unwrap().into_spec().unwrap();
        let (confluent, certs) = overlap_oracle(&spec);
        assert!(!confluent);
        assert!(certs.iter().any(|c| c.starts_with("(v3 v2) v1")));
        assert!(!check_pbw(&spec).verdict);
    }

    #[test]
    fn two_generators_have_no_triples() {
        let src = "[field]\nconductor = 2\n[group]\norders = [2]\n[action]\nv1 = 1\nv2 = 0\n[q]\n1 2 = -1\n[kappa]\n1 2 -> 1 (1) 1\n";
        let spec = specfile::parse_spec(src).unwrap().into_spec().unwrap();
        assert!(check_condition3(&spec).holds);
        assert!(check_condition2(&spec).holds);
    }
}
