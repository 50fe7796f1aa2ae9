//! Sparse row echelon form over `Q(zeta_m)`, filled one row at a time.

use std::collections::BTreeMap;

use crate::scalar::Cyclotomic;

pub type SparseRow = BTreeMap<usize, Cyclotomic>;

/// Rows kept with leading coefficient 1, keyed by their pivot column.
#[derive(Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots and keeps the remainder.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, c| !c.is_zero());
        while let Some((&lead, c)) = row.first_key_value() {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let f = c.clone();
                    for (col, pc) in pivot {
                        let updated = match row.get(col) {
                            Some(x) => x.sub(&f.mul(pc)),
                            None => f.mul(pc).neg(),
                        };
                        if updated.is_zero() {
                            row.remove(col);
                        } else {
                            row.insert(*col, updated);
                        }
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero field element");
                    for x in row.values_mut() {
                        *x = x.mul(&inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloField;

    #[test]
    fn rank_of_small_matrix() {
        let f = CycloField::new(3);
        let z = |k| Cyclotomic::root_of_unity(&f, k);
        let one = Cyclotomic::one(&f);
        let mut e = Echelon::new();
        assert!(e.insert(SparseRow::from([(0, one.clone()), (1, z(1))])));
        assert!(e.insert(SparseRow::from([(1, one.clone()), (2, one.clone())])));
        // zeta * row0 + row1
        let combo = SparseRow::from([(0, z(1)), (1, z(2).add(&one)), (2, one.clone())]);
        assert!(!e.insert(combo));
        assert!(!e.insert(SparseRow::new()));
        assert_eq!(e.rank(), 2);
    }
}
