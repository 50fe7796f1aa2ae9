//! Seeded random presentations for property tests: `n` in {2, 3}, `|G| <= 4`,
//! root-of-unity `q`, and sparse `kappa` with root-of-unity coefficients.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, RawSpec};
use crate::scalar::{Scalar, ScalarContext};

const CONDUCTOR: u32 = 12;
const GROUPS: [&[u32]; 5] = [&[1], &[2], &[3], &[4], &[2, 2]];

fn root(rng: &mut ChaCha8Rng) -> i64 {
    // half the draws use +-1 so that coincidences among q and chi are common
    if rng.gen_bool(0.5) {
        [0, 6].choose(rng).copied().unwrap()
    } else {
        rng.gen_range(0..CONDUCTOR as i64)
    }
}

/// One random presentation. `kappa` entries are usually `G`-invariant and
/// `kappa = 0` about one time in six.
pub fn random_spec(rng: &mut ChaCha8Rng) -> AlgebraSpec {
    let ctx = ScalarContext::new(CONDUCTOR, vec![]);
    let n = rng.gen_range(2..=3);
    let orders = GROUPS.choose(rng).unwrap().to_vec();
    let chars: Vec<Vec<i64>> = (0..n)
        .map(|_| orders.iter().map(|&m| rng.gen_range(0..m as i64)).collect())
        .collect();
    let mut raw = RawSpec {
        n,
        orders: orders.clone(),
        chars: chars.clone(),
        ..RawSpec::default()
    };
    for i in 0..n {
        for j in i + 1..n {
            raw.q.push((i, j, Scalar::root_of_unity(&ctx, root(rng)), String::new()));
        }
    }

    if !rng.gen_ratio(1, 6) {
        let elements: Vec<Vec<i64>> = {
            let mut out = vec![vec![]];
            for &m in &orders {
                out = out
                    .into_iter()
                    .flat_map(|e| (0..m as i64).map(move |x| [e.clone(), vec![x]].concat()))
                    .collect();
            }
            out
        };
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let entries = rng.gen_range(1..=2);
        for _ in 0..entries {
            let &(i, j) = pairs.choose(rng).unwrap();
            let invariant: Vec<usize> = (0..n)
                .filter(|&r| {
                    orders
                        .iter()
                        .enumerate()
                        .all(|(t, &m)| (chars[i][t] + chars[j][t] - chars[r][t]).rem_euclid(m as i64) == 0)
                })
                .collect();
            let r = if !invariant.is_empty() && rng.gen_ratio(9, 10) {
                *invariant.choose(rng).unwrap()
            } else {
                rng.gen_range(0..n)
            };
            let g = elements.choose(rng).unwrap().clone();
            let c = Scalar::root_of_unity(&ctx, root(rng));
            raw.kappa.push((i, j, vec![(r, g, c)], String::new()));
        }
        // keep one line per pair
        let mut merged: BTreeMap<(usize, usize), Vec<_>> = BTreeMap::new();
        for (i, j, e, _) in raw.kappa.drain(..) {
            merged.entry((i, j)).or_default().extend(e);
        }
        raw.kappa = merged.into_iter().map(|((i, j), e)| (i, j, e, String::new())).collect();
    }
    AlgebraSpec::validate(&ctx, &raw, BTreeMap::new()).expect("random data is consistent")
}

/// `count` presentations from a fixed seed.
pub fn random_specs(seed: u64, count: usize) -> Vec<AlgebraSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw;

    #[test]
    fn deterministic_and_in_range() {
        let a = random_specs(7, 40);
        assert_eq!(a, random_specs(7, 40));
        for s in &a {
            assert!((2..=3).contains(&s.n));
            assert!(s.group.order() <= 4);
        }
    }

    #[test]
    fn both_verdicts_occur() {
        let verdicts: Vec<bool> = random_specs(1, 60).iter().map(|s| pbw::check_pbw(s).verdict).collect();
        let nontrivial_true = random_specs(1, 60)
            .iter()
            .filter(|s| !s.kappa_is_zero() && pbw::check_pbw(s).verdict)
            .count();
        assert!(verdicts.contains(&false));
        assert!(nontrivial_true > 0);
    }
}
