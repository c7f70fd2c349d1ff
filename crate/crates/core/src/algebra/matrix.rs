//! Square matrices over `Z[Y]` with a division-free determinant and the first
//! row of the adjugate.

use std::collections::HashMap;

use super::poly::{Poly, Var};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    var: Var,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// Build from rows. All rows must have length `rows.len()` and all entries
    /// must share one variable tag.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<PolyMatrix, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        let var = rows[0].first().map(Poly::var).unwrap_or(Var::Y);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::NotSquare);
            }
            for e in row {
                if e.var() != var {
                    return Err(AlgebraError::VarMismatch { left: var, right: e.var() });
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { n, var, entries })
    }

    pub fn identity(n: usize, var: Var) -> PolyMatrix {
        let entries = (0..n * n)
            .map(|k| Poly::constant_in(var, (k / n == k % n) as i64))
            .collect();
        PolyMatrix { n, var, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    /// Returns `(det A, [adj(A)_{0,0}, ..., adj(A)_{0,n-1}])`.
    ///
    /// Expansion by minors along columns, left to right. `minor(S)` is the
    /// determinant of the rows `S` against the last `|S|` columns, memoized on
    /// the row subset. Both the determinant and each cofactor `C_{j,0}` are
    /// single expansions along column 0 over the shared table.
    pub fn det_adjugate(&self) -> (Poly, Vec<Poly>) {
        let n = self.n;
        assert!(n <= 24, "minor expansion is exponential in the dimension");
        let full: u32 = (1u32 << n) - 1;
        let mut memo: HashMap<u32, Poly> = HashMap::new();

        let mut det = Poly::zero_in(self.var);
        let mut adj_row0 = Vec::with_capacity(n);
        for j in 0..n {
            let rest = self.minor(full & !(1 << j), &mut memo);
            let signed = if j % 2 == 0 { rest } else { -rest };
            det = &det + &(self.get(j, 0) * &signed);
            adj_row0.push(signed);
        }
        (det, adj_row0)
    }

    fn minor(&self, rows: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        let size = rows.count_ones() as usize;
        if size == 0 {
            return Poly::constant_in(self.var, 1);
        }
        if let Some(v) = memo.get(&rows) {
            return v.clone();
        }
        let col = self.n - size;
        let mut acc = Poly::zero_in(self.var);
        for (pos, i) in (0..self.n).filter(|i| rows & (1 << i) != 0).enumerate() {
            let entry = self.get(i, col);
            if entry.is_zero() {
                continue;
            }
            let sub = self.minor(rows & !(1 << i), memo);
            let term = entry * &sub;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(rows, acc.clone());
        acc
    }
}
