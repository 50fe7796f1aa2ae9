//! Braided tensor powers of `H_{q,kappa}`, the coproduct, counit and
//! antipode, and degree-bounded checks of the braided Hopf axioms.
//!
//! Tensors are balanced over `kG`: a term `a_1 (x) ... (x) a_k` is stored
//! with every group letter moved into the last factor, using
//! `u g (x) w = u (x) chi_w(g) w g`. Products follow the braided rule
//! `(a_1 (x) .. (x) a_k)(b_1 (x) .. (x) b_k) = prod_{p > q} eps(|a_p|, |b_q|) a_1 b_1 (x) .. (x) a_k b_k`.
//! Axioms are checked on PBW monomials, which span `H`; all maps involved
//! are linear, so this covers every element of bounded degree.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{pbw_words, AlgebraSpec, Mono, NCElement, RewriteSystem};
use crate::check::Check;
use crate::colorlie::Bicharacter;
use crate::group::ADegree;
use crate::pbw;
use crate::scalar::Scalar;

/// A sum of `coeff * (m_1 (x) ... (x) m_k)` in canonical form.
pub type Tensor = BTreeMap<Vec<Mono>, Scalar>;

fn add_term(t: &mut Tensor, key: Vec<Mono>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(x) => {
            let s = &*x + &c;
            if s.is_zero() {
                t.remove(&key);
            } else {
                *x = s;
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

pub struct Hopf<'a> {
    pub spec: &'a AlgebraSpec,
    pub sys: RewriteSystem,
    eps: Bicharacter,
    eps_cache: RefCell<HashMap<(Mono, Mono), Scalar>>,
}

impl<'a> Hopf<'a> {
    pub fn new(spec: &'a AlgebraSpec) -> Self {
        Hopf {
            spec,
            sys: spec.rewrite_system(),
            eps: Bicharacter::from_spec(spec),
            eps_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn degree(&self, m: &Mono) -> ADegree {
        let gr = &self.eps.grading;
        let mut d = gr.torsion_degree(self.spec.group.element(m.g));
        for &w in &m.word {
            d.free[w as usize] += 1;
        }
        d
    }

    /// `eps(|a|, |b|)` for monomials.
    pub fn eps(&self, a: &Mono, b: &Mono) -> Scalar {
        if (a.word.is_empty() && a.g == 0) || (b.word.is_empty() && b.g == 0) {
            return self.spec.one();
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.eps_cache.borrow().get(&key) {
            return v.clone();
        }
        let v = self.eps.eval(&self.degree(a), &self.degree(b));
        self.eps_cache.borrow_mut().insert(key, v.clone());
        v
    }

    pub fn one(&self, k: usize) -> Tensor {
        Tensor::from([(vec![Mono::unit(); k], self.spec.one())])
    }

    /// Adds `c * (factors)` after moving group letters into the last factor.
    fn push_canonical(&self, out: &mut Tensor, mut factors: Vec<Mono>, mut c: Scalar) {
        let k = factors.len();
        for p in 0..k.saturating_sub(1) {
            let g = factors[p].g;
            if g == 0 {
                continue;
            }
            factors[p].g = 0;
            for f in factors.iter().skip(p + 1) {
                c = &c * &self.sys.word_action(&f.word, g);
            }
            let last = &mut factors[k - 1];
            last.g = self.spec.group.mul_idx(g, last.g);
        }
        add_term(out, factors, c);
    }

    /// Braided product with factors multiplied in `T(V) x| G`, unreduced.
    pub fn product_free(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let mut sign = ca * cb;
                for p in 0..a.len() {
                    for q in 0..p {
                        sign = &sign * &self.eps(&a[p], &b[q]);
                    }
                }
                // each factor product is a single monomial
                let mut factors = Vec::with_capacity(a.len());
                for (ap, bp) in a.iter().zip(b) {
                    let prod = self.sys.mul(&NCElement::term(ap.clone(), self.spec.one()), &NCElement::term(bp.clone(), self.spec.one()));
                    let (m, c) = prod.into_terms().into_iter().next().expect("monomial product");
                    sign = &sign * &c;
                    factors.push(m);
                }
                self.push_canonical(&mut out, factors, sign);
            }
        }
        out
    }

    /// Normal form in every factor, then canonical form again.
    pub fn reduce(&self, x: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (factors, c) in x {
            let mut partial: Vec<(Vec<Mono>, Scalar)> = vec![(vec![], c.clone())];
            for f in factors {
                let nf = self.sys.normal_form(&NCElement::term(f.clone(), self.spec.one()));
                let mut next = Vec::new();
                for (prefix, pc) in &partial {
                    for (m, mc) in nf.terms() {
                        let mut p = prefix.clone();
                        p.push(m.clone());
                        next.push((p, pc * mc));
                    }
                }
                partial = next;
            }
            for (fs, pc) in partial {
                self.push_canonical(&mut out, fs, pc);
            }
        }
        out
    }

    pub fn braided_product(&self, x: &Tensor, y: &Tensor) -> Tensor {
        self.reduce(&self.product_free(x, y))
    }

    fn generator_coproduct(&self, i: usize) -> Tensor {
        let v = Mono::new(vec![i as u8], 0);
        Tensor::from([
            (vec![v.clone(), Mono::unit()], self.spec.one()),
            (vec![Mono::unit(), v], self.spec.one()),
        ])
    }

    /// `Delta` on `T(V) x| G` without reducing factors:
    /// `Delta(v) = v (x) 1 + 1 (x) v`, `Delta(g) = 1 (x) g`.
    pub fn coproduct_free(&self, x: &NCElement) -> Tensor {
        let mut out = Tensor::new();
        for (m, c) in x.terms() {
            let mut t = self.one(2);
            for &w in &m.word {
                t = self.product_free(&t, &self.generator_coproduct(w as usize));
            }
            let g = Tensor::from([(vec![Mono::unit(), Mono::new(vec![], m.g)], self.spec.one())]);
            t = self.product_free(&t, &g);
            for (k, v) in t {
                add_term(&mut out, k, &v * c);
            }
        }
        out
    }

    pub fn coproduct(&self, x: &NCElement) -> Tensor {
        self.reduce(&self.coproduct_free(x))
    }

    /// Kills every monomial of positive word length.
    pub fn counit(&self, x: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (m, c) in x.terms() {
            if m.word.is_empty() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `S(u g) = S(u) g` with
    /// `S(v_{u_1} ... v_{u_l}) = (-1)^l prod_{s<t} eps(|v_{u_s}|, |v_{u_t}|) v_{u_l} ... v_{u_1}`.
    pub fn antipode(&self, x: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (m, c) in x.terms() {
            let mut coeff = if m.word.len() % 2 == 0 { c.clone() } else { c.negated() };
            for s in 0..m.word.len() {
                for t in s + 1..m.word.len() {
                    coeff = &coeff * self.spec.q(m.word[s] as usize, m.word[t] as usize);
                }
            }
            let mut rev = m.word.clone();
            rev.reverse();
            out.add_term(Mono::new(rev, m.g), coeff);
        }
        self.sys.normal_form(&out)
    }

    fn render(&self, t: &Tensor) -> String {
        if t.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = t
            .iter()
            .map(|(fs, c)| {
                let f: Vec<String> = fs
                    .iter()
                    .map(|m| {
                        let e = NCElement::term(m.clone(), self.spec.one());
                        format!("({})", self.spec.render(&e))
                    })
                    .collect();
                format!("({c}) {}", f.join(" (x) "))
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub degree: usize,
    /// Set when strong vanishing fails; the structure is then not expected
    /// to exist and the checks are exploratory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exploratory: Option<String>,
    pub well_defined: Check,
    pub coassociativity: Check,
    pub counit: Check,
    pub antipode: Check,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.well_defined.passed() && self.coassociativity.passed() && self.counit.passed() && self.antipode.passed()
    }
}

fn monomials(spec: &AlgebraSpec, d: usize) -> Vec<NCElement> {
    let mut out = Vec::new();
    for w in pbw_words(spec.n, d) {
        for g in 0..spec.group.order() {
            out.push(NCElement::term(Mono::new(w.clone(), g), spec.one()));
        }
    }
    out
}

/// Applies `Delta` to factor `pos` of a reduced 2-tensor.
fn expand(h: &Hopf<'_>, t: &Tensor, pos: usize) -> Tensor {
    let mut out = Tensor::new();
    for (fs, c) in t {
        let d = h.coproduct(&NCElement::term(fs[pos].clone(), h.spec.one()));
        for (parts, dc) in d {
            let mut factors = fs[..pos].to_vec();
            factors.extend(parts);
            factors.extend(fs[pos + 1..].iter().cloned());
            h.push_canonical(&mut out, factors, c * &dc);
        }
    }
    out
}

/// (a) `Delta(m) Delta(rel)` and `Delta(rel) Delta(m)` vanish in `H (x) H` for
/// every relation and PBW monomial `m` of word degree below `d`;
/// (b) coassociativity, (c) counit and (d) antipode laws on PBW monomials of
/// word degree at most `d`.
pub fn check_hopf_axioms(spec: &AlgebraSpec, d: usize) -> HopfReport {
    let h = Hopf::new(spec);
    let strong = pbw::check_vanishing(spec, true);
    let exploratory = (!strong.holds).then(|| format!("strong vanishing fails ({} violations)", strong.count));

    let mut well_defined = Check::pass();
    let rels: Vec<(usize, usize, Tensor)> = (0..spec.n)
        .flat_map(|i| (i + 1..spec.n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, h.coproduct_free(&spec.relation(i, j))))
        .collect();
    for m in monomials(spec, d.saturating_sub(1)) {
        let dm = h.coproduct_free(&m);
        for (i, j, dr) in &rels {
            for (label, x, y) in [("left", &dm, dr), ("right", dr, &dm)] {
                let r = h.braided_product(x, y);
                if !r.is_empty() {
                    well_defined.record(format!(
                        "{label} product of Delta({}) with Delta(relation {} {}) = {}",
                        spec.render(&m),
                        i + 1,
                        j + 1,
                        h.render(&r)
                    ));
                }
            }
        }
    }

    let mut coassociativity = Check::pass();
    let mut counit = Check::pass();
    let mut antipode = Check::pass();
    for x in monomials(spec, d) {
        let dx = h.coproduct(&x);
        let left = expand(&h, &dx, 0);
        let right = expand(&h, &dx, 1);
        if left != right {
            coassociativity.record(format!(
                "{}: (Delta (x) 1) Delta = {} but (1 (x) Delta) Delta = {}",
                spec.render(&x),
                h.render(&left),
                h.render(&right)
            ));
        }

        let mut via_left = NCElement::zero();
        let mut via_right = NCElement::zero();
        let mut s_left = NCElement::zero();
        let mut s_right = NCElement::zero();
        for (fs, c) in &dx {
            let (a, b) = (&fs[0], &fs[1]);
            let ea = NCElement::term(a.clone(), c.clone());
            let eb = NCElement::term(b.clone(), spec.one());
            if a.word.is_empty() {
                via_left = via_left.add(&eb.scale(c));
            }
            if b.word.is_empty() {
                via_right = via_right.add(&NCElement::term(Mono::new(a.word.clone(), b.g), c.clone()));
            }
            s_left = s_left.add(&h.sys.mul(&h.antipode(&ea), &eb));
            s_right = s_right.add(&h.sys.mul(&ea, &h.antipode(&eb)));
        }
        for (label, got) in [("(counit (x) 1) Delta", via_left), ("(1 (x) counit) Delta", via_right)] {
            let got = h.sys.normal_form(&got);
            if got != x {
                counit.record(format!("{label} {} = {}", spec.render(&x), spec.render(&got)));
            }
        }
        let unit = h.counit(&x);
        for (label, got) in [("m(S (x) 1) Delta", s_left), ("m(1 (x) S) Delta", s_right)] {
            let got = h.sys.normal_form(&got);
            if got != unit {
                antipode.record(format!("{label} {} = {} instead of {}", spec.render(&x), spec.render(&got), spec.render(&unit)));
            }
        }
    }

    HopfReport {
        degree: d,
        exploratory,
        well_defined,
        coassociativity,
        counit,
        antipode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn elem(spec: &AlgebraSpec, s: &str) -> NCElement {
        spec.parse_element(s).unwrap()
    }

    fn tensor(spec: &AlgebraSpec, terms: &[(&str, &str, &str)]) -> Tensor {
        let mut t = Tensor::new();
        for (c, a, b) in terms {
            let a = elem(spec, a).into_terms().into_keys().next().unwrap();
            let b = elem(spec, b).into_terms().into_keys().next().unwrap();
            add_term(&mut t, vec![a, b], Scalar::parse(c, &spec.ctx).unwrap());
        }
        t
    }

    #[test]
    fn braided_products_of_generators() {
        let spec = fixtures::spec("ex2");
        let h = Hopf::new(&spec);
        let x = tensor(&spec, &[("1", "1", "v1")]);
        let y = tensor(&spec, &[("1", "v2", "1")]);
        assert_eq!(h.braided_product(&x, &y), tensor(&spec, &[("q^-1", "v2", "v1")]));
        let a = tensor(&spec, &[("1", "v3", "1")]);
        let g = tensor(&spec, &[("1", "1", "g(1)")]);
        assert_eq!(h.braided_product(&a, &g), tensor(&spec, &[("1", "v3", "g(1)")]));
        assert_eq!(h.braided_product(&h.one(2), &x), x);
    }

    #[test]
    fn coproduct_of_v1v2() {
        let spec = fixtures::spec("ex2");
        let h = Hopf::new(&spec);
        let got = h.coproduct(&elem(&spec, "v1*v2"));
        let want = tensor(
            &spec,
            &[("1", "v1*v2", "1"), ("1", "v1", "v2"), ("q^-1", "v2", "v1"), ("1", "1", "v1*v2")],
        );
        assert_eq!(got, want);
        assert_eq!(h.coproduct(&elem(&spec, "g(1)")), tensor(&spec, &[("1", "1", "g(1)")]));
    }

    #[test]
    fn counit_and_antipode_values() {
        let spec = fixtures::spec("ex2");
        let h = Hopf::new(&spec);
        assert!(h.counit(&elem(&spec, "v1")).is_zero());
        assert_eq!(h.counit(&elem(&spec, "v1*v2*g(1) + 3*g(1)")), elem(&spec, "3*g(1)"));
        assert_eq!(h.antipode(&elem(&spec, "v1")), elem(&spec, "-v1"));
        assert_eq!(h.antipode(&elem(&spec, "1")), elem(&spec, "1"));
        // q^-1 v2 v1 = v1 v2 - lambda q^-1 ... reduced
        let expect = h.sys.normal_form(&elem(&spec, "q^-1*v2*v1"));
        assert_eq!(h.antipode(&elem(&spec, "v1*v2")), expect);
    }

    #[test]
    fn strong_vanishing_fixtures_are_hopf() {
        for name in ["ex2", "ex3"] {
            let r = check_hopf_axioms(&fixtures::spec(name), 3);
            assert!(r.passed(), "{name}: {r:?}");
            assert!(r.exploratory.is_none());
        }
    }

    #[test]
    fn first_example_is_not_well_defined() {
        let r = check_hopf_axioms(&fixtures::spec("ex1"), 2);
        assert!(r.exploratory.is_some());
        assert!(r.well_defined.failed());
        assert!(!r.well_defined.certificates.is_empty());
    }
}
