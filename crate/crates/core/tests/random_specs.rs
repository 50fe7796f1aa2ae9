use qdrinfeld::colorlie::check_braiding_compatibility;
use qdrinfeld::hopf::check_hopf_axioms;
use qdrinfeld::pbw::{self, check_pbw};
use qdrinfeld::random::random_specs;

#[test]
fn verdict_matches_overlap_oracle() {
    let specs = random_specs(2024, 150);
    let mut counts = [0usize; 2];
    for (idx, s) in specs.iter().enumerate() {
        let r = check_pbw(s);
        let (confluent, certs) = pbw::overlap_oracle(s);
        assert_eq!(r.verdict, confluent, "spec #{idx}: {certs:?}");
        counts[r.verdict as usize] += 1;
    }
    println!("pbw false: {}, true: {}", counts[0], counts[1]);
    assert!(counts[0] > 10 && counts[1] > 10);
}

#[test]
fn alternative_conditions_agree() {
    for s in random_specs(11, 120) {
        assert!(check_pbw(&s).alt_agrees);
    }
}

#[test]
fn sufficient_conditions_imply_pbw() {
    let mut hit = 0;
    for s in random_specs(5, 150) {
        let r = check_pbw(&s);
        if r.cond1.holds && r.vanishing.holds && r.cond3_prime.holds {
            assert!(r.verdict);
            hit += 1;
        }
    }
    assert!(hit > 0);
}

#[test]
fn vanishing_is_necessary_without_fixed_points() {
    let mut hit = 0;
    for s in random_specs(9, 200) {
        let r = check_pbw(&s);
        if r.fixed_point_free && r.verdict {
            assert!(r.vanishing.holds);
            hit += 1;
        }
    }
    assert!(hit > 0);
}

#[test]
fn braiding_compatibility_is_strong_vanishing() {
    for s in random_specs(3, 150) {
        assert_eq!(check_braiding_compatibility(&s).passed(), pbw::check_vanishing(&s, true).holds);
    }
}

#[test]
fn coproduct_well_defined_iff_strong_vanishing() {
    let mut seen = [0usize; 2];
    for s in random_specs(17, 80).into_iter().filter(|s| check_pbw(s).verdict) {
        let strong = pbw::check_vanishing(&s, true).holds;
        let r = check_hopf_axioms(&s, 2);
        assert_eq!(r.well_defined.passed(), strong);
        seen[strong as usize] += 1;
        if strong {
            assert!(r.passed(), "{r:?}");
        }
    }
    println!("strong vanishing false: {}, true: {}", seen[0], seen[1]);
}
