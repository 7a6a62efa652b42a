//! Smith normal form over arbitrary-precision integers.
//!
//! `smith_normal_form(M)` returns `U, D, V` with `U·M·V = D`, `U` and `V`
//! unimodular, `D` diagonal with nonnegative entries `d_i | d_{i+1}`. The
//! inverses of `U` and `V` are tracked alongside so callers never invert.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let x = &self.a[t][j] * q;
            self.a[i][j] -= x;
        }
        for j in 0..self.rows {
            let x = &self.u[t][j] * q;
            self.u[i][j] -= x;
        }
        for r in 0..self.rows {
            let x = &self.u_inv[r][i] * q;
            self.u_inv[r][t] += x;
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        self.u.swap(i, t);
        for row in self.u_inv.iter_mut() {
            row.swap(i, t);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    // row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let x = self.a[i][j].clone();
            self.a[t][j] += x;
        }
        for j in 0..self.rows {
            let x = self.u[i][j].clone();
            self.u[t][j] += x;
        }
        for r in 0..self.rows {
            let x = self.u_inv[r][t].clone();
            self.u_inv[r][i] -= x;
        }
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let x = &self.a[r][t] * q;
            self.a[r][j] -= x;
        }
        for r in 0..self.cols {
            let x = &self.v[r][t] * q;
            self.v[r][j] -= x;
        }
        for c in 0..self.cols {
            let x = &self.v_inv[j][c] * q;
            self.v_inv[t][c] += x;
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        for row in self.v.iter_mut() {
            row.swap(j, t);
        }
        self.v_inv.swap(j, t);
    }

    fn min_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= self.a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work {
        a: m.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.min_in_submatrix(t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let i = (t..rows)
                    .filter(|&i| !w.a[i][t].is_zero())
                    .min_by_key(|&i| w.a[i][t].abs())
                    .unwrap();
                w.row_swap(t, i);
                continue;
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let j = (t..cols)
                    .filter(|&j| !w.a[t][j].is_zero())
                    .min_by_key(|&j| w.a[t][j].abs())
                    .unwrap();
                w.col_swap(t, j);
                continue;
            }
            // divisibility of the remaining block
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.row_add(t, i),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    }
}

/// Generators (as columns) of the integer kernel `{x : M·x = 0}`.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return identity(cols);
    }
    let snf = smith_normal_form(m);
    (snf.rank..cols)
        .map(|j| (0..cols).map(|r| snf.v[r][j].clone()).collect())
        .collect()
}
