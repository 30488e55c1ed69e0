//! Revised simplex for packing LPs
//!
//! ```text
//! maximise  Σ_j x_j
//! subject to Σ_{j : i ∈ col_j} x_j ≤ 1   for every row i
//!            x ≥ 0
//! ```
//!
//! where every column is a 0/1 vector given by its support. The origin is
//! feasible, so a single phase from the slack basis suffices. Pivoting uses
//! Bland's rule (lowest-index entering variable, lowest-index leaving
//! variable on ratio ties), which cannot cycle in exact arithmetic.
//!
//! Variables are ordered structural columns first (in the order given),
//! then one slack per row.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_val(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    fn lt(&self, o: &Self) -> bool {
        o.sub(self).is_pos()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

/// Comparison tolerance for the floating-point path.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_TOLERANCE
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_TOLERANCE
    }
}

#[derive(Debug, Clone)]
pub struct PackingLp {
    rows: usize,
    cols: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    /// Values of the structural variables.
    pub x: Vec<T>,
    /// Optimal dual: `y ≥ 0` and `Σ_{i ∈ col_j} y_i ≥ 1` for every column.
    pub y: Vec<T>,
    pub objective: T,
    /// Basic variable of each row.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

struct State<T> {
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
}

impl PackingLp {
    pub fn new(rows: usize, cols: Vec<Vec<usize>>) -> Self {
        debug_assert!(cols.iter().flatten().all(|&i| i < rows));
        PackingLp { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    fn var_count(&self) -> usize {
        self.cols.len() + self.rows
    }

    fn slack_state<T: Scalar>(&self) -> State<T> {
        let m = self.cols.len();
        let binv = (0..self.rows)
            .map(|r| (0..self.rows).map(|c| if r == c { T::one() } else { T::zero() }).collect())
            .collect();
        let basis: Vec<usize> = (0..self.rows).map(|r| m + r).collect();
        let mut is_basic = vec![false; self.var_count()];
        for &b in &basis {
            is_basic[b] = true;
        }
        State {
            binv,
            xb: vec![T::one(); self.rows],
            basis,
            is_basic,
        }
    }

    /// Column of variable `var` in the constraint matrix, as a dense vector.
    fn dense_column<T: Scalar>(&self, var: usize) -> Vec<T> {
        let mut col = vec![T::zero(); self.rows];
        if var < self.cols.len() {
            for &i in &self.cols[var] {
                col[i] = T::one();
            }
        } else {
            col[var - self.cols.len()] = T::one();
        }
        col
    }

    /// Builds the state for a given basis; `None` if it is singular, of the
    /// wrong size, or not primal feasible.
    fn state_from_basis<T: Scalar>(&self, basis: &[usize]) -> Option<State<T>> {
        let r = self.rows;
        if basis.len() != r || basis.iter().any(|&b| b >= self.var_count()) {
            return None;
        }
        let mut is_basic = vec![false; self.var_count()];
        for &b in basis {
            if std::mem::replace(&mut is_basic[b], true) {
                return None;
            }
        }
        // Gauss-Jordan on [B | I]; B's column k is the column of basis[k].
        let cols: Vec<Vec<T>> = basis.iter().map(|&b| self.dense_column(b)).collect();
        let mut a: Vec<Vec<T>> = (0..r)
            .map(|i| {
                let mut row: Vec<T> = (0..r).map(|k| cols[k][i].clone()).collect();
                row.extend((0..r).map(|c| if c == i { T::one() } else { T::zero() }));
                row
            })
            .collect();
        for c in 0..r {
            let p = (c..r).find(|&i| !a[i][c].is_zero_val())?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v = v.div(&piv);
            }
            for i in 0..r {
                if i != c && !a[i][c].is_zero_val() {
                    let f = a[i][c].clone();
                    let pivot_row = a[c].clone();
                    for (v, pv) in a[i].iter_mut().zip(&pivot_row) {
                        *v = v.sub(&f.mul(pv));
                    }
                }
            }
        }
        // Row k of B^{-1} belongs to the basic variable basis[k].
        let binv: Vec<Vec<T>> = a.into_iter().map(|row| row[r..].to_vec()).collect();
        let xb: Vec<T> = binv
            .iter()
            .map(|row| row.iter().fold(T::zero(), |s, v| s.add(v)))
            .collect();
        if xb.iter().any(Scalar::is_neg) {
            return None;
        }
        Some(State {
            binv,
            xb,
            basis: basis.to_vec(),
            is_basic,
        })
    }

    fn duals<T: Scalar>(&self, st: &State<T>) -> Vec<T> {
        let mut y = vec![T::zero(); self.rows];
        for (r, &b) in st.basis.iter().enumerate() {
            if b < self.cols.len() {
                for (yi, v) in y.iter_mut().zip(&st.binv[r]) {
                    *yi = yi.add(v);
                }
            }
        }
        y
    }

    fn reduced_cost<T: Scalar>(&self, var: usize, y: &[T]) -> T {
        if var < self.cols.len() {
            self.cols[var]
                .iter()
                .fold(T::one(), |d, &i| d.sub(&y[i]))
        } else {
            T::zero().sub(&y[var - self.cols.len()])
        }
    }

    /// Solves to optimality, optionally starting from `warm_basis`. A warm
    /// basis that is singular or infeasible is ignored.
    pub fn solve<T: Scalar>(&self, warm_basis: Option<&[usize]>, max_pivots: usize) -> Result<LpSolution<T>> {
        let mut st = warm_basis
            .and_then(|b| self.state_from_basis::<T>(b))
            .unwrap_or_else(|| self.slack_state());
        let mut pivots = 0;
        loop {
            let y = self.duals(&st);
            let entering = (0..self.var_count())
                .find(|&v| !st.is_basic[v] && self.reduced_cost(v, &y).is_pos());
            let Some(q) = entering else {
                let m = self.cols.len();
                let mut x = vec![T::zero(); m];
                let mut objective = T::zero();
                for (r, &b) in st.basis.iter().enumerate() {
                    if b < m {
                        x[b] = st.xb[r].clone();
                        objective = objective.add(&st.xb[r]);
                    }
                }
                return Ok(LpSolution {
                    x,
                    y,
                    objective,
                    basis: st.basis,
                    pivots,
                });
            };
            if pivots >= max_pivots {
                return Err(Error::InvariantViolation {
                    message: "simplex pivot budget exhausted".into(),
                    witness: format!("{pivots} pivots"),
                });
            }
            // alpha = B^{-1} A_q
            let alpha: Vec<T> = if q < self.cols.len() {
                st.binv
                    .iter()
                    .map(|row| self.cols[q].iter().fold(T::zero(), |s, &i| s.add(&row[i])))
                    .collect()
            } else {
                let i = q - self.cols.len();
                st.binv.iter().map(|row| row[i].clone()).collect()
            };
            let mut leave: Option<(usize, T)> = None;
            for (r, a) in alpha.iter().enumerate() {
                if !a.is_pos() {
                    continue;
                }
                let ratio = st.xb[r].div(a);
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio.lt(best) || (!best.lt(&ratio) && st.basis[r] < st.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                // Packing LPs are bounded; this cannot happen for valid input.
                return Err(Error::InvariantViolation {
                    message: "packing LP reported unbounded".into(),
                    witness: format!("entering variable {q}"),
                });
            };
            let piv = alpha[r].clone();
            let pivot_row: Vec<T> = st.binv[r].iter().map(|v| v.div(&piv)).collect();
            let pivot_x = st.xb[r].div(&piv);
            for i in 0..self.rows {
                if i == r || alpha[i].is_zero_val() {
                    continue;
                }
                let f = alpha[i].clone();
                for (v, pv) in st.binv[i].iter_mut().zip(&pivot_row) {
                    *v = v.sub(&f.mul(pv));
                }
                st.xb[i] = st.xb[i].sub(&f.mul(&pivot_x));
            }
            st.binv[r] = pivot_row;
            st.xb[r] = pivot_x;
            st.is_basic[st.basis[r]] = false;
            st.is_basic[q] = true;
            st.basis[r] = q;
            pivots += 1;
        }
    }

    pub fn solve_exact(&self) -> Result<LpSolution<BigRational>> {
        self.solve(None, usize::MAX)
    }

    pub fn solve_float(&self) -> Result<LpSolution<f64>> {
        self.solve(None, 1_000_000)
    }

    /// Floating-point solve to locate an optimal basis, then an exact solve
    /// warm-started from it. The exact phase re-verifies the basis and keeps
    /// pivoting if rounding led the float phase astray.
    pub fn solve_exact_warm(&self) -> Result<LpSolution<BigRational>> {
        let basis = self.solve_float().ok().map(|s| s.basis);
        self.solve(basis.as_deref(), usize::MAX)
    }
}

pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}
