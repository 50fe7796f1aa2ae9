use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdrinfeld::algebra::{pbw_words, AlgebraSpec, Mono, NCElement, Strategy as Reduction};
use qdrinfeld::colorlie::{build_n_and_quotient, Bicharacter};
use qdrinfeld::fixtures;
use qdrinfeld::group::ADegree;
use qdrinfeld::hopf::{Hopf, Tensor};
use qdrinfeld::scalar::Scalar;

const PBW_FIXTURES: [&str; 5] = ["ex1", "ex2", "ex3", "ex4", "zero"];
/// Presentations whose relations are homogeneous for the bicharacter grading.
const GRADED_FIXTURES: [&str; 3] = ["ex2", "ex3", "zero"];

fn word_strategy(n: usize, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..n as u8, 0..=max)
}

fn element(spec: &AlgebraSpec, terms: &[(Vec<u8>, usize, i64)]) -> NCElement {
    let mut x = NCElement::zero();
    for (w, g, c) in terms {
        let w: Vec<u8> = w.iter().map(|&v| v % spec.n as u8).collect();
        x.add_term(Mono::new(w, g % spec.group.order()), Scalar::from_integer(&spec.ctx, *c));
    }
    x
}

fn pbw_monomial(spec: &AlgebraSpec, pick: usize, g: usize, d: usize) -> NCElement {
    let words = pbw_words(spec.n, d);
    let w = words[pick % words.len()].clone();
    NCElement::term(Mono::new(w, g % spec.group.order()), spec.one())
}

fn degree(bi: &Bicharacter, coords: &[i64]) -> ADegree {
    let count = bi.grading.generator_count();
    let c: Vec<i64> = coords.iter().cycle().take(count).copied().collect();
    bi.grading.from_coordinates(&c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_a_projection(
        f in 0..PBW_FIXTURES.len(),
        terms in prop::collection::vec((word_strategy(4, 4), 0usize..9, -3i64..=3), 1..4),
        seed in any::<u64>(),
    ) {
        let spec = fixtures::spec(PBW_FIXTURES[f]);
        let sys = spec.rewrite_system();
        let x = element(&spec, &terms);
        let nf = sys.normal_form(&x);
        prop_assert_eq!(sys.normal_form(&nf), nf.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(sys.normal_form_with(&x, Reduction::Random(&mut rng)), nf);
    }

    #[test]
    fn multiplication_is_associative(
        f in 0..PBW_FIXTURES.len(),
        picks in prop::array::uniform3((0usize..1000, 0usize..9)),
    ) {
        let spec = fixtures::spec(PBW_FIXTURES[f]);
        let sys = spec.rewrite_system();
        let [a, b, c] = picks.map(|(p, g)| pbw_monomial(&spec, p, g, 3));
        let left = sys.multiply(&sys.multiply(&a, &b), &c);
        let right = sys.multiply(&a, &sys.multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bicharacter_laws(
        f in 0..PBW_FIXTURES.len(),
        a in prop::collection::vec(-4i64..=4, 6),
        b in prop::collection::vec(-4i64..=4, 6),
        c in prop::collection::vec(-4i64..=4, 6),
    ) {
        let spec = fixtures::spec(PBW_FIXTURES[f]);
        let bi = Bicharacter::from_spec(&spec);
        let gr = &bi.grading;
        let (a, b, c) = (degree(&bi, &a), degree(&bi, &b), degree(&bi, &c));
        prop_assert_eq!(bi.eval(&gr.mul(&a, &b), &c), &bi.eval(&a, &c) * &bi.eval(&b, &c));
        prop_assert_eq!(bi.eval(&a, &gr.mul(&b, &c)), &bi.eval(&a, &b) * &bi.eval(&a, &c));
        prop_assert_eq!(bi.eval(&b, &a), bi.eval(&a, &b).inv().unwrap());
        prop_assert!(bi.eval(&a, &gr.identity()).is_one());
    }

    #[test]
    fn subgroup_is_closed(
        f in 0..PBW_FIXTURES.len(),
        coeffs in prop::collection::vec(-3i64..=3, 4),
        other in prop::collection::vec(-3i64..=3, 4),
    ) {
        let spec = fixtures::spec(PBW_FIXTURES[f]);
        let q = build_n_and_quotient(&spec);
        let gr = q.n.grading().clone();
        let combo = |cs: &[i64]| {
            q.n.generators().iter().zip(cs).fold(gr.identity(), |acc, (g, &k)| gr.mul(&acc, &gr.pow(g, k)))
        };
        let (x, y) = (combo(&coeffs), combo(&other));
        prop_assert!(q.n.contains(&x));
        prop_assert!(q.n.contains(&gr.mul(&x, &y)));
        prop_assert!(q.n.contains(&gr.inv(&x)));
    }

    #[test]
    fn braided_product_is_associative(
        f in 0..GRADED_FIXTURES.len(),
        picks in prop::array::uniform6((0usize..1000, 0usize..9)),
    ) {
        let spec = fixtures::spec(GRADED_FIXTURES[f]);
        let h = Hopf::new(&spec);
        let mono = |(p, g): (usize, usize)| {
            pbw_monomial(&spec, p, g, 2).into_terms().into_keys().next().unwrap()
        };
        let t = |x: Mono, y: Mono| Tensor::from([(vec![x, y], spec.one())]);
        let [a0, a1, b0, b1, c0, c1] = picks.map(mono);
        let (x, y, z) = (h.reduce(&t(a0, a1)), h.reduce(&t(b0, b1)), h.reduce(&t(c0, c1)));
        let left = h.braided_product(&h.braided_product(&x, &y), &z);
        let right = h.braided_product(&x, &h.braided_product(&y, &z));
        prop_assert_eq!(left, right);
        prop_assert_eq!(h.braided_product(&h.one(2), &x), x.clone());
        prop_assert_eq!(h.braided_product(&x, &h.one(2)), x);
    }
}
