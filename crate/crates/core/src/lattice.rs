//! Integer lattices in `Z^d` kept in row-echelon (Hermite) form.
//!
//! Generators are inserted one at a time. Every basis row remembers how it is
//! written as an integer combination of the accepted generators, so a
//! successful membership query also yields the coefficients expressing the
//! query vector in terms of the generators.
//!
//! All arithmetic is arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    values: Vec<BigInt>,
    // coefficients over accepted generators; shorter vectors are zero-padded
    combo: Vec<BigInt>,
}

/// Why a vector failed to reduce to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    /// First coordinate that could not be cleared.
    pub position: usize,
    /// Value left at that coordinate.
    pub residue: BigInt,
    /// The basis pivot at that coordinate, if any.
    pub pivot: Option<BigInt>,
}

#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Row>,
    generators: usize,
}

fn axpy(target: &mut Vec<BigInt>, factor: &BigInt, source: &[BigInt]) {
    if target.len() < source.len() {
        target.resize(source.len(), BigInt::zero());
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

fn combine(x: &BigInt, a: &[BigInt], y: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            let av = a.get(k).map(|v| x * v).unwrap_or_default();
            let bv = b.get(k).map(|v| y * v).unwrap_or_default();
            av + bv
        })
        .collect()
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice {
            dim,
            rows: Vec::new(),
            generators: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of generators that changed the lattice when inserted.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Pivot entries, in pivot order. Their product is the index of the
    /// lattice in its saturation's coordinate projection.
    pub fn pivots(&self) -> Vec<(usize, BigInt)> {
        self.rows
            .iter()
            .map(|r| (r.pivot, r.values[r.pivot].clone()))
            .collect()
    }

    fn row_index(&self, pivot: usize) -> Result<usize, usize> {
        self.rows.binary_search_by_key(&pivot, |r| r.pivot)
    }

    /// Reduces `w` against the basis, accumulating the quotient coefficients
    /// into `coeffs` (over generators). Stops at the first obstruction.
    fn reduce(&self, w: &mut [BigInt], coeffs: &mut Vec<BigInt>) -> Option<Obstruction> {
        loop {
            let p = w.iter().position(|x| !x.is_zero())?;
            match self.row_index(p) {
                Ok(i) => {
                    let row = &self.rows[i];
                    let (q, r) = w[p].div_rem(&row.values[p]);
                    if !r.is_zero() {
                        return Some(Obstruction {
                            position: p,
                            residue: w[p].clone(),
                            pivot: Some(row.values[p].clone()),
                        });
                    }
                    for (t, s) in w.iter_mut().zip(&row.values).skip(p) {
                        if !s.is_zero() {
                            *t -= &q * s;
                        }
                    }
                    // coeffs accumulate +q * combo
                    axpy(coeffs, &-q, &row.combo);
                }
                Err(_) => {
                    return Some(Obstruction {
                        position: p,
                        residue: w[p].clone(),
                        pivot: None,
                    })
                }
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.express(v).is_ok()
    }

    /// Writes `v` as an integer combination of the accepted generators.
    pub fn express(&self, v: &[BigInt]) -> Result<Vec<BigInt>, Obstruction> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut w = v.to_vec();
        let mut coeffs = Vec::new();
        match self.reduce(&mut w, &mut coeffs) {
            None => {
                coeffs.resize(self.generators, BigInt::zero());
                Ok(coeffs)
            }
            Some(obstruction) => Err(obstruction),
        }
    }

    /// Inserts a generator. Returns `true` if the lattice grew; in that case
    /// the generator is assigned the next generator index. Otherwise the
    /// lattice is untouched and the vector is not counted.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        if self.contains(v) {
            return false;
        }
        let id = self.generators;
        self.generators += 1;
        let mut w = v.to_vec();
        let mut w_combo = vec![BigInt::zero(); id + 1];
        w_combo[id] = BigInt::one();

        loop {
            let Some(p) = w.iter().position(|x| !x.is_zero()) else {
                return true;
            };
            match self.row_index(p) {
                Ok(i) => {
                    let a = self.rows[i].values[p].clone();
                    let b = w[p].clone();
                    if b.is_multiple_of(&a) {
                        let q = &b / &a;
                        let row = &self.rows[i];
                        axpy(&mut w, &q, &row.values);
                        axpy(&mut w_combo, &q, &row.combo);
                        continue;
                    }
                    let ext = a.extended_gcd(&b);
                    let (mut g, mut x, mut y) = (ext.gcd, ext.x, ext.y);
                    if g.is_negative() {
                        (g, x, y) = (-g, -x, -y);
                    }
                    let row = &self.rows[i];
                    let new_values = combine(&x, &row.values, &y, &w);
                    let new_combo = combine(&x, &row.combo, &y, &w_combo);
                    let (bg, ag) = (&b / &g, -(&a / &g));
                    let rest_values = combine(&bg, &row.values, &ag, &w);
                    let rest_combo = combine(&bg, &row.combo, &ag, &w_combo);
                    debug_assert!(rest_values[p].is_zero());
                    self.rows[i].values = new_values;
                    self.rows[i].combo = new_combo;
                    self.normalize_above(i);
                    w = rest_values;
                    w_combo = rest_combo;
                }
                Err(i) => {
                    if w[p].is_negative() {
                        w.iter_mut().for_each(|x| *x = -&*x);
                        w_combo.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows.insert(
                        i,
                        Row {
                            pivot: p,
                            values: w,
                            combo: w_combo,
                        },
                    );
                    self.normalize_above(i);
                    return true;
                }
            }
        }
    }

    /// Reduces the entries above the pivot of row `i` into `[0, pivot)`.
    fn normalize_above(&mut self, i: usize) {
        let (head, tail) = self.rows.split_at_mut(i);
        let row = &tail[0];
        let p = row.pivot;
        let d = &row.values[p];
        for earlier in head.iter_mut() {
            let q = earlier.values[p].div_floor(d);
            if !q.is_zero() {
                axpy(&mut earlier.values, &q, &row.values);
                axpy(&mut earlier.combo, &q, &row.combo);
            }
        }
    }
}

pub fn to_big(values: impl IntoIterator<Item = i64>) -> Vec<BigInt> {
    values.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| to_big(r.iter().copied())).collect()
    }

    fn check_express(lattice: &Lattice, accepted: &[Vec<BigInt>], target: &[BigInt]) {
        let coeffs = lattice.express(target).expect("member");
        let mut sum = vec![BigInt::zero(); target.len()];
        for (c, g) in coeffs.iter().zip(accepted) {
            for (s, x) in sum.iter_mut().zip(g) {
                *s += c * x;
            }
        }
        assert_eq!(sum, target);
    }

    #[test]
    fn gcd_lattice_in_one_dimension() {
        let mut l = Lattice::new(1);
        let gs = gens(&[&[6], &[10], &[15]]);
        let mut accepted = Vec::new();
        for g in &gs {
            if l.insert(g) {
                accepted.push(g.clone());
            }
        }
        assert_eq!(l.pivots(), vec![(0, BigInt::from(1))]);
        check_express(&l, &accepted, &to_big([7]));
    }

    #[test]
    fn redundant_generators_are_skipped() {
        let mut l = Lattice::new(2);
        assert!(l.insert(&to_big([2, 0])));
        assert!(!l.insert(&to_big([4, 0])));
        assert!(l.insert(&to_big([1, 1])));
        assert_eq!(l.generator_count(), 2);
        assert!(l.contains(&to_big([3, 1])));
        assert!(!l.contains(&to_big([0, 1])));
    }

    #[test]
    fn obstruction_reports_position() {
        let mut l = Lattice::new(2);
        l.insert(&to_big([2, 0]));
        l.insert(&to_big([0, 3]));
        let err = l.express(&to_big([2, 1])).unwrap_err();
        assert_eq!(err.position, 1);
        assert_eq!(err.pivot, Some(BigInt::from(3)));
        let err = Lattice::new(2).express(&to_big([0, 1])).unwrap_err();
        assert_eq!(err.pivot, None);
    }

    #[test]
    fn mixed_lattice_membership() {
        let gs = gens(&[&[4, 1, 1], &[2, 1, 0], &[2, 1, 1], &[2, 1, 1], &[2, 0, 1]]);
        let mut l = Lattice::new(3);
        let mut accepted = Vec::new();
        for g in &gs {
            if l.insert(g) {
                accepted.push(g.clone());
            }
        }
        check_express(&l, &accepted, &to_big([6, 2, 2]));
        assert!(!l.contains(&to_big([3, 1, 1])));
    }
}
