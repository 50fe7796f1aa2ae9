use std::collections::BTreeMap;

use qdrinfeld::colorlie::{build_color_lie_ring, check_braiding_compatibility, check_color_axioms, GradingMode};
use qdrinfeld::fixtures::{self, SPEC_NAMES};
use qdrinfeld::pbw::{self, check_pbw};
use qdrinfeld::specfile::{format_spec, parse_spec};
use qdrinfeld::uea::{converse_construct, dimension_oracle, pbw_for_uea};

#[test]
fn corpus_contents() {
    let names: Vec<&str> = fixtures::corpus().iter().map(|(n, _)| *n).collect();
    assert_eq!(names, ["ex1", "ex2", "ex3", "ex4", "zero", "gl11"]);
}

#[test]
fn sufficient_conditions_imply_pbw() {
    for name in SPEC_NAMES {
        let r = check_pbw(&fixtures::spec(name));
        if r.cond1.holds && r.vanishing.holds && r.cond3_prime.holds {
            assert!(r.verdict, "{name}");
        }
    }
}

#[test]
fn alternative_conditions_agree_on_fixtures() {
    for name in SPEC_NAMES {
        let r = check_pbw(&fixtures::spec(name));
        assert!(r.alt_agrees, "{name}");
        assert!(r.alt_cond2.holds && r.alt_cond3.holds, "{name}");
    }
}

#[test]
fn vanishing_on_fixed_point_free_fixtures() {
    for name in SPEC_NAMES {
        let r = check_pbw(&fixtures::spec(name));
        if r.fixed_point_free && r.verdict {
            assert!(r.vanishing.holds, "{name}");
        }
    }
}

#[test]
fn braiding_compatibility_on_fixtures() {
    for name in SPEC_NAMES {
        let spec = fixtures::spec(name);
        assert_eq!(check_braiding_compatibility(&spec).passed(), pbw::check_vanishing(&spec, true).holds, "{name}");
    }
}

#[test]
fn converse_recovers_pbw_presentations() {
    for name in SPEC_NAMES {
        let spec = fixtures::spec(name);
        let l = build_color_lie_ring(&spec, false).unwrap();
        assert!(check_color_axioms(&l, GradingMode::Ungraded).passed(), "{name}");
        let c = converse_construct(&l).unwrap();
        assert_eq!(c.text, format_spec(&spec), "{name}");
        assert!(c.conditions_hold(), "{name}");
        assert!(pbw_for_uea(&l).unwrap(), "{name}");
    }
}

#[test]
fn dimension_matches_on_small_fixtures() {
    for name in ["ex2", "ex3", "ex4", "zero"] {
        let r = dimension_oracle(&fixtures::spec(name), 3, &BTreeMap::new()).unwrap();
        assert!(r.matches(), "{name}: {r:?}");
    }
}

#[test]
fn perturbed_presentation_loses_dimension() {
    let text = format!("{}1 3 -> 2 (1) 1\n", fixtures::source("ex2"));
    let spec = parse_spec(&text).unwrap().into_spec().unwrap();
    assert!(!check_pbw(&spec).verdict);
    let r = dimension_oracle(&spec, 3, &BTreeMap::new()).unwrap();
    assert!(r.quotient_dim < r.pbw_count, "{r:?}");
}
