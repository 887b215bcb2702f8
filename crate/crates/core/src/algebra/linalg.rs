//! Exact Gaussian elimination over ℚ(i), used for dimension counts and
//! membership tests in group algebras of finite groups.

use super::Coefficient;

/// Incrementally maintained reduced row echelon form. Each row also records
/// the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    rows: Vec<Vec<Coefficient>>,
    combos: Vec<Vec<Coefficient>>,
    pivots: Vec<usize>,
    inserted: usize,
}

impl RowEchelon {
    pub fn new(width: usize) -> RowEchelon {
        RowEchelon {
            width,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn codimension(&self) -> usize {
        self.width - self.rank()
    }

    /// Number of vectors offered to [`RowEchelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn pad(combo: &mut Vec<Coefficient>, len: usize) {
        combo.resize(len, Coefficient::zero());
    }

    /// Reduces `v` against the current rows, returning the residual and the
    /// combination of rows that was subtracted.
    fn reduce(&self, v: &[Coefficient]) -> (Vec<Coefficient>, Vec<Coefficient>) {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut r = v.to_vec();
        let mut used = vec![Coefficient::zero(); self.inserted];
        for (row, (combo, &p)) in self.rows.iter().zip(self.combos.iter().zip(&self.pivots)) {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
            for (u, c) in used.iter_mut().zip(combo) {
                if !c.is_zero() {
                    *u += &(&factor * c);
                }
            }
        }
        (r, used)
    }

    /// Adds a vector; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, v: &[Coefficient]) -> bool {
        let (mut r, used) = self.reduce(v);
        let id = self.inserted;
        self.inserted += 1;
        for combo in &mut self.combos {
            Self::pad(combo, self.inserted);
        }
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        // combination expressing r: v - Σ used_j * (inserted_j)
        let mut combo: Vec<Coefficient> = used.iter().map(|c| -c).collect();
        Self::pad(&mut combo, self.inserted);
        combo[id] = Coefficient::one();
        let inv = r[p].inv();
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for c in combo.iter_mut() {
            *c = &*c * &inv;
        }
        for (row, rc) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
            for (x, y) in rc.iter_mut().zip(&combo) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        self.rows.push(r);
        self.combos.push(combo);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Coefficient]) -> bool {
        self.reduce(v).0.iter().all(Coefficient::is_zero)
    }

    /// Coefficients `c_j` with `v = Σ c_j · inserted_j`, if `v` is in the span.
    pub fn solve(&self, v: &[Coefficient]) -> Option<Vec<Coefficient>> {
        let (r, used) = self.reduce(v);
        r.iter().all(Coefficient::is_zero).then_some(used)
    }
}

/// Rank of a family of vectors.
pub fn rank(width: usize, vectors: &[Vec<Coefficient>]) -> usize {
    let mut e = RowEchelon::new(width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
