//! Smith normal form over the integers.
//!
//! Pivots are chosen as the entry of smallest nonzero absolute value in the
//! remaining block, with the current diagonal position preferred on ties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal,
/// non-negative, with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = Work::new(m, true);
    w.run();
    w.finish()
}

/// Diagonal only, without accumulating the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut w = Work::new(m, false);
    w.run();
    let n = w.rows.min(w.cols);
    (0..n).map(|i| w.a[i][i].clone()).collect()
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    // Row transform (rows x rows) and column transform stored transposed
    // (cols x cols) so both updates are row operations.
    u: Option<Vec<Vec<BigInt>>>,
    vt: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

/// `dst -= q * src`
fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn row_axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    axpy(d, s, q);
}

impl Work {
    fn new(m: &IntMatrix, track: bool) -> Self {
        let a = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Work {
            rows: m.rows(),
            cols: m.cols(),
            a,
            u: track.then(|| identity_rows(m.rows())),
            vt: track.then(|| identity_rows(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(vt) = &mut self.vt {
                vt.swap(i, j);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        row_axpy(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.u {
            row_axpy(u, dst, src, q);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(vt) = &mut self.vt {
            row_axpy(vt, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        if !self.a[t][t].is_zero() {
            best = Some((t, t));
            best_abs = self.a[t][t].abs();
            if best_abs.is_one() {
                return best;
            }
        }
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.is_none() || ax < best_abs {
                    best = Some((i, j));
                    best_abs = ax;
                    if best_abs.is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_op(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_op(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    continue;
                }

                // Row and column t are clear; enforce divisibility of the rest.
                let p = self.a[t][t].clone();
                let offender =
                    (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_op(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn finish(self) -> SmithForm {
        let s = IntMatrix::from_vec(self.rows, self.cols, self.a.into_iter().flatten().collect());
        let u = self.u.expect("transforms tracked");
        let vt = self.vt.expect("transforms tracked");
        let u = IntMatrix::from_vec(self.rows, self.rows, u.into_iter().flatten().collect());
        let v = IntMatrix::from_vec(self.cols, self.cols, vt.into_iter().flatten().collect()).transpose();
        SmithForm { s, u, v }
    }
}

/// Basis of the integer kernel `{x : m x = 0}`, one vector per column.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    snf.v.select_columns(r..m.cols())
}
