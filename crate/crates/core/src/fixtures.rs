//! The bundled example presentations.

use crate::algebra::AlgebraSpec;
use crate::colorlie::ColorLieRing;
use crate::specfile::{parse_spec, SpecFile};

/// Fixtures that are algebra presentations.
pub const SPEC_NAMES: [&str; 5] = ["ex1", "ex2", "ex3", "ex4", "zero"];

/// Every fixture, presentations first.
pub const ALL_NAMES: [&str; 6] = ["ex1", "ex2", "ex3", "ex4", "zero", "gl11"];

pub fn source(name: &str) -> &'static str {
    match name {
        "ex1" => include_str!("../examples/ex1.qdo"),
        "ex2" => include_str!("../examples/ex2.qdo"),
        "ex3" => include_str!("../examples/ex3.qdo"),
        "ex4" => include_str!("../examples/ex4.qdo"),
        "zero" => include_str!("../examples/zero.qdo"),
        "gl11" => include_str!("../examples/gl11.qdo"),
        other => panic!("no fixture named `{other}`"),
    }
}

pub fn load(name: &str) -> SpecFile {
    parse_spec(source(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// A presentation fixture; panics for unknown names or generic rings.
pub fn spec(name: &str) -> AlgebraSpec {
    load(name).into_spec().expect("presentation fixture")
}

pub fn generic(name: &str) -> ColorLieRing {
    load(name).into_ring().expect("generic ring fixture")
}

pub fn corpus() -> Vec<(&'static str, SpecFile)> {
    ALL_NAMES.iter().map(|&n| (n, load(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        assert_eq!(corpus().len(), 6);
        let ex4 = spec("ex4");
        assert_eq!(ex4.n, 4);
        assert_eq!(ex4.group.orders(), &[2, 2]);
        assert_eq!(spec("ex1").group.order(), 9);
    }
}
