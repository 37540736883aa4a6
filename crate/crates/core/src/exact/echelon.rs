//! Incremental exact Gaussian elimination.
//!
//! Rows are fed one at a time and reduced against the pivots seen so far.
//! Stored pivot rows are only reduced against *earlier* pivots, which is
//! enough for a left-to-right sweep: subtracting the pivot row at column `c`
//! only touches columns greater than `c`. Full back-substitution happens once,
//! in [`RowEchelon::into_rref`].

use super::matrix::{SparseVec, Vector};
use super::Rational;

#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    /// `pivot_row[c]` is the index in `rows` of the row whose leading 1 sits at `c`.
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces a dense vector in place against every pivot.
    pub fn reduce(&self, v: &mut Vector) {
        debug_assert_eq!(v.len(), self.ncols);
        if self.rows.is_empty() {
            return;
        }
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coeff = -&v[c];
                for (j, x) in self.rows[r].iter() {
                    v[*j] += &(&coeff * x);
                }
                debug_assert!(v[c].is_zero());
            }
        }
    }

    /// Inserts a dense row; returns whether it increased the rank.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].recip().expect("nonzero pivot");
        let row: SparseVec =
            v.iter().enumerate().skip(lead).filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Sparse rows are densified into a scratch buffer. Systems here have at
    /// most a few hundred unknowns, so the scratch cost is negligible next to
    /// the elimination itself.
    pub fn insert_sparse(&mut self, v: &SparseVec) -> bool {
        if self.is_full() || v.is_zero() {
            return false;
        }
        self.insert(v.to_dense(self.ncols))
    }

    /// Reduced row-echelon form: `(pivot column, row)` sorted by pivot column,
    /// each row with a 1 at its pivot and zeros at every other pivot column.
    pub fn into_rref(self) -> Vec<(usize, SparseVec)> {
        let mut order: Vec<(usize, usize)> =
            self.pivot_row.iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, r))).collect();
        order.sort();
        let mut rows = self.rows;
        let pivot_row = self.pivot_row;
        // Back-substitute from the last pivot upward; later rows are final by
        // the time they are used.
        for k in (0..order.len()).rev() {
            let (_, r) = order[k];
            let mut row = std::mem::take(&mut rows[r]);
            loop {
                let target = row.iter().skip(1).find(|(c, _)| pivot_row[*c].is_some()).map(|(c, x)| (*c, x.clone()));
                let Some((c, x)) = target else { break };
                let pr = pivot_row[c].unwrap();
                row = row.add_scaled(&-x, &rows[pr]);
            }
            rows[r] = row;
        }
        order.into_iter().map(|(c, r)| (c, std::mem::take(&mut rows[r]))).collect()
    }
}

/// Basis of the null space from an RREF, one vector per free column.
pub fn kernel_from_rref(ncols: usize, rref: &[(usize, SparseVec)]) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for (c, _) in rref {
        is_pivot[*c] = true;
    }
    (0..ncols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (c, row) in rref {
                let x = row.get(free);
                if !x.is_zero() {
                    v[*c] = -x;
                }
            }
            v
        })
        .collect()
}

/// Null space of a sparse system with `ncols` unknowns.
pub fn sparse_kernel<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Vec<Vector> {
    let mut ech = RowEchelon::new(ncols);
    for row in rows {
        if ech.is_full() {
            break;
        }
        ech.insert_sparse(row);
    }
    kernel_from_rref(ncols, &ech.into_rref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn rref_is_fully_reduced() {
        let mut e = RowEchelon::new(3);
        assert!(e.insert(ints(&[1, 2, 3])));
        assert!(e.insert(ints(&[0, 1, 4])));
        assert!(!e.insert(ints(&[1, 3, 7])));
        let rref = e.into_rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0].1.to_dense(3), ints(&[1, 0, -5]));
        assert_eq!(rref[1].1.to_dense(3), ints(&[0, 1, 4]));
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = [SparseVec::from_dense(&ints(&[1, 2])), SparseVec::from_dense(&ints(&[2, 4]))];
        let k = sparse_kernel(2, rows.iter());
        assert_eq!(k, vec![ints(&[-2, 1])]);
    }
}
