//! Finite abelian groups `Z/m_1 x ... x Z/m_k`, diagonal characters, and the
//! grading group `Z^n x G` with subgroups decided by integer lattices.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarContext};

/// An element stored as reduced exponents on the cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub exps: Vec<u32>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(u32::to_string).collect();
        write!(f, "g({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct AbelianGroup {
    orders: Vec<u32>,
    exponent: u32,
    elements: Vec<GroupElement>,
    mul_table: Vec<Vec<usize>>,
    inv_table: Vec<usize>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for AbelianGroup {}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Arc<Self>> {
        if orders.contains(&0) {
            return Err(Error::spec("cyclic factor orders must be positive"));
        }
        let size: u64 = orders.iter().map(|&m| m as u64).product();
        if size > 4096 {
            return Err(Error::spec(format!("group of order {size} is too large")));
        }
        let exponent = orders.iter().fold(1u32, |acc, &m| acc.lcm(&m));
        // enumerate with the last coordinate varying fastest
        let mut elements = vec![GroupElement { exps: vec![] }];
        for &m in &orders {
            let mut next = Vec::with_capacity(elements.len() * m as usize);
            for e in &elements {
                for x in 0..m {
                    let mut exps = e.exps.clone();
                    exps.push(x);
                    next.push(GroupElement { exps });
                }
            }
            elements = next;
        }
        let index = |e: &GroupElement, orders: &[u32]| -> usize {
            e.exps
                .iter()
                .zip(orders)
                .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
        };
        let n = elements.len();
        let mut mul_table = vec![vec![0; n]; n];
        let mut inv_table = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                let exps = elements[a]
                    .exps
                    .iter()
                    .zip(&elements[b].exps)
                    .zip(&orders)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                mul_table[a][b] = index(&GroupElement { exps }, &orders);
            }
            let exps = elements[a]
                .exps
                .iter()
                .zip(&orders)
                .map(|(x, m)| (m - x) % m)
                .collect();
            inv_table[a] = index(&GroupElement { exps }, &orders);
        }
        Ok(Arc::new(AbelianGroup {
            orders,
            exponent,
            elements,
            mul_table,
            inv_table,
        }))
    }

    pub fn trivial() -> Arc<Self> {
        Self::new(vec![]).expect("trivial group")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &GroupElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exps: vec![0; self.orders.len()],
        }
    }

    /// Reduces arbitrary integer exponents.
    pub fn reduce(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.orders.len() {
            return Err(Error::spec(format!(
                "group element has {} exponents, group has {} cyclic factors",
                exps.len(),
                self.orders.len()
            )));
        }
        Ok(GroupElement {
            exps: exps
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| x.mod_floor(&(m as i64)) as u32)
                .collect(),
        })
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.exps
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize))
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.exps.len() != self.orders.len() || g.exps.iter().zip(&self.orders).any(|(x, m)| x >= m) {
            return Err(Error::spec(format!("{g} is not an element of the group with orders {:?}", self.orders)));
        }
        Ok(())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let (a, b) = (self.index_of(g)?, self.index_of(h)?);
        Ok(self.elements[self.mul_table[a][b]].clone())
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.elements[self.inv_table[self.index_of(g)?]].clone())
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inv_table[a]
    }
}

/// A character `g -> prod_t zeta_{m_t}^{exps[t] * g_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub exps: Vec<u32>,
}

impl Character {
    pub fn new(group: &AbelianGroup, exps: &[i64]) -> Result<Self> {
        Ok(Character {
            exps: group.reduce(exps)?.exps,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    /// `chi(g)` as an exponent `k` with value `zeta_m^k`.
    pub fn exponent_at(&self, group: &AbelianGroup, g: &GroupElement, m: u32) -> u32 {
        debug_assert_eq!(m % group.exponent(), 0);
        let mut k: u64 = 0;
        for ((&e, &x), &mt) in self.exps.iter().zip(&g.exps).zip(group.orders()) {
            k += (e as u64 * x as u64 % mt as u64) * (m / mt) as u64;
        }
        (k % m as u64) as u32
    }

    /// `chi(g)` as a scalar.
    pub fn eval(&self, group: &AbelianGroup, g: &GroupElement, ctx: &Arc<ScalarContext>) -> Scalar {
        Scalar::root_of_unity(ctx, self.exponent_at(group, g, ctx.conductor()) as i64)
    }

    pub fn mul(&self, other: &Character, group: &AbelianGroup) -> Character {
        Character {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .zip(group.orders())
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        }
    }
}

/// `Z^a x G`, the group grading color Lie rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingGroup {
    pub free_rank: usize,
    pub torsion: Arc<AbelianGroup>,
}

/// An element `(free, tors)` of a grading group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ADegree {
    pub free: Vec<i64>,
    pub tors: GroupElement,
}

impl fmt::Display for ADegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.free.iter().map(i64::to_string).collect();
        write!(f, "(({}), {})", parts.join(","), self.tors)
    }
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Arc<AbelianGroup>) -> Self {
        GradingGroup { free_rank, torsion }
    }

    pub fn identity(&self) -> ADegree {
        ADegree {
            free: vec![0; self.free_rank],
            tors: self.torsion.identity(),
        }
    }

    /// The `i`-th free generator `a_i`.
    pub fn free_generator(&self, i: usize) -> ADegree {
        let mut d = self.identity();
        d.free[i] = 1;
        d
    }

    pub fn torsion_degree(&self, g: &GroupElement) -> ADegree {
        ADegree {
            free: vec![0; self.free_rank],
            tors: g.clone(),
        }
    }

    pub fn mul(&self, a: &ADegree, b: &ADegree) -> ADegree {
        ADegree {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            tors: self.torsion.mul(&a.tors, &b.tors).expect("same torsion group"),
        }
    }

    pub fn inv(&self, a: &ADegree) -> ADegree {
        ADegree {
            free: a.free.iter().map(|x| -x).collect(),
            tors: self.torsion.inv(&a.tors).expect("same torsion group"),
        }
    }

    pub fn pow(&self, a: &ADegree, k: i64) -> ADegree {
        let exps: Vec<i64> = a.tors.exps.iter().map(|&x| x as i64 * k).collect();
        ADegree {
            free: a.free.iter().map(|x| x * k).collect(),
            tors: self.torsion.reduce(&exps).expect("same torsion group"),
        }
    }

    /// Coordinates in `Z^(a+k)`: free part followed by torsion exponents.
    pub fn coordinates(&self, a: &ADegree) -> Vec<i64> {
        a.free
            .iter()
            .copied()
            .chain(a.tors.exps.iter().map(|&x| x as i64))
            .collect()
    }

    pub fn from_coordinates(&self, c: &[i64]) -> Result<ADegree> {
        if c.len() != self.free_rank + self.torsion.rank() {
            return Err(Error::spec("degree has the wrong number of coordinates"));
        }
        Ok(ADegree {
            free: c[..self.free_rank].to_vec(),
            tors: self.torsion.reduce(&c[self.free_rank..])?,
        })
    }

    /// Number of generators `a_1..a_r, g_1..g_k`.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.rank()
    }

    pub fn generator(&self, s: usize) -> ADegree {
        let mut c = vec![0; self.generator_count()];
        c[s] = 1;
        self.from_coordinates(&c).expect("valid generator index")
    }
}

/// A subgroup of `Z^a x G`, stored as the row Hermite normal form of its
/// generators together with the torsion relations `m_t e_{a+t}`.
#[derive(Debug, Clone)]
pub struct SubgroupN {
    grading: GradingGroup,
    generators: Vec<ADegree>,
    hnf: Vec<Vec<i128>>,
}

impl SubgroupN {
    pub fn new(grading: &GradingGroup, generators: Vec<ADegree>) -> Self {
        let dim = grading.generator_count();
        let mut rows: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| grading.coordinates(g).into_iter().map(i128::from).collect())
            .collect();
        for (t, &m) in grading.torsion.orders().iter().enumerate() {
            let mut r = vec![0i128; dim];
            r[grading.free_rank + t] = m as i128;
            rows.push(r);
        }
        SubgroupN {
            grading: grading.clone(),
            generators,
            hnf: hermite_normal_form(rows, dim),
        }
    }

    pub fn generators(&self) -> &[ADegree] {
        &self.generators
    }

    pub fn grading(&self) -> &GradingGroup {
        &self.grading
    }

    /// Nonzero rows of the echelon basis.
    pub fn basis(&self) -> &[Vec<i128>] {
        &self.hnf
    }

    pub fn contains(&self, a: &ADegree) -> bool {
        let mut v: Vec<i128> = self.grading.coordinates(a).into_iter().map(i128::from).collect();
        reduce_against(&self.hnf, &mut v)
    }

    /// `a == b` in the quotient by this subgroup.
    pub fn congruent(&self, a: &ADegree, b: &ADegree) -> bool {
        self.contains(&self.grading.mul(a, &self.grading.inv(b)))
    }
}

fn pivot_of(row: &[i128]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

fn reduce_against(hnf: &[Vec<i128>], v: &mut [i128]) -> bool {
    for row in hnf {
        let p = pivot_of(row).expect("hnf rows are nonzero");
        if v[..p].iter().any(|&x| x != 0) {
            return false;
        }
        if v[p] % row[p] != 0 {
            return false;
        }
        let q = v[p] / row[p];
        for (x, r) in v.iter_mut().zip(row) {
            *x -= q * r;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Row-style Hermite normal form over `Z`; zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<i128>>, dim: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &best = nonzero
                .iter()
                .min_by_key(|&&r| rows[r][col].unsigned_abs())
                .unwrap();
            let pivot = rows[best].clone();
            for &r in &nonzero {
                if r == best {
                    continue;
                }
                let q = rows[r][col].div_euclid(pivot[col]);
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x -= q * p;
                }
            }
        }
        if let Some(r) = (0..rows.len()).find(|&r| rows[r][col] != 0) {
            let mut row = rows.swap_remove(r);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        debug_assert!(rows.iter().all(|r| r[col] == 0));
    }
    // reduce entries above each pivot into [0, pivot)
    for i in 0..out.len() {
        let p = pivot_of(&out[i]).unwrap();
        for k in 0..i {
            let q = out[k][p].div_euclid(out[i][p]);
            if q != 0 {
                let row = out[i].clone();
                for (x, r) in out[k].iter_mut().zip(&row) {
                    *x -= q * r;
                }
            }
        }
    }
    out
}
