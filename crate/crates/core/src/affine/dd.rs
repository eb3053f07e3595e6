//! Double-double arithmetic (a value plus a rounding tail, ~32 significant
//! digits) and the small dense routines the additivity-defect pipeline
//! needs. The intermediates of cocycle powers grow like the squared
//! eigenvalue spread to the n-th power, which exhausts f64 near n = 5;
//! double-double keeps the diagonal extraction meaningful to n well past
//! the acceptance range.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on a f64 seed doubles the correct digits
        let approx = self.hi.sqrt();
        let x = Dd::from_f64(approx);
        let half = Dd::from_f64(0.5);
        (x + self / x) * half
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Dense row-major double-double matrix, sized for the small group
/// dimensions of the defect pipeline.
#[derive(Clone, Debug)]
pub struct DdMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<Dd>,
}

impl DdMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DdMatrix {
            n_rows,
            n_cols,
            data: vec![Dd::ZERO; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Dd::ONE;
        }
        m
    }

    pub fn from_f64_slice(n_rows: usize, n_cols: usize, vals: &[f64]) -> Self {
        assert_eq!(vals.len(), n_rows * n_cols);
        DdMatrix {
            n_rows,
            n_cols,
            data: vals.iter().map(|&x| Dd::from_f64(x)).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|d| d.to_f64()).collect()
    }

    pub fn matmul(&self, rhs: &DdMatrix) -> DdMatrix {
        assert_eq!(self.n_cols, rhs.n_rows);
        let mut out = DdMatrix::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                for j in 0..rhs.n_cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DdMatrix) -> DdMatrix {
        assert_eq!((self.n_rows, self.n_cols), (rhs.n_rows, rhs.n_cols));
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o = *o + *r;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Dd> {
        (0..self.n_rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Dd]) {
        for i in 0..self.n_rows {
            self[(i, j)] = col[i];
        }
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Option<DdMatrix> {
        assert!(self.n_rows == self.n_cols);
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = DdMatrix::identity(n);
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[(r, col)].abs().hi > a[(piv, col)].abs().hi {
                    piv = r;
                }
            }
            if a[(piv, col)].hi == 0.0 && a[(piv, col)].lo == 0.0 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let d = a[(col, col)];
            for j in 0..n {
                a[(col, j)] = a[(col, j)] / d;
                inv[(col, j)] = inv[(col, j)] / d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor.hi == 0.0 && factor.lo == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)] - factor * a[(col, j)];
                    inv[(r, j)] = inv[(r, j)] - factor * inv[(col, j)];
                }
            }
        }
        Some(inv)
    }

    /// Solve `self * x = b` for a single right-hand side.
    pub fn solve(&self, b: &[Dd]) -> Option<Vec<Dd>> {
        let inv = self.inverse()?;
        let mut out = vec![Dd::ZERO; self.n_rows];
        for i in 0..self.n_rows {
            let mut acc = Dd::ZERO;
            for j in 0..self.n_cols {
                acc = acc + inv[(i, j)] * b[j];
            }
            out[i] = acc;
        }
        Some(out)
    }

    /// Thin QR by modified Gram-Schmidt; returns Q with orthonormal
    /// columns (the defect pipeline only consumes column spans).
    pub fn qr_q(&self) -> DdMatrix {
        let (n, m) = (self.n_rows, self.n_cols);
        let mut q = self.clone();
        for j in 0..m {
            for i in 0..j {
                let qi = q.column(i);
                let qj = q.column(j);
                let mut dot = Dd::ZERO;
                for r in 0..n {
                    dot = dot + qi[r] * qj[r];
                }
                for r in 0..n {
                    q[(r, j)] = q[(r, j)] - dot * qi[r];
                }
            }
            let qj = q.column(j);
            let mut nrm = Dd::ZERO;
            for r in 0..n {
                nrm = nrm + qj[r] * qj[r];
            }
            let nrm = nrm.sqrt();
            for r in 0..n {
                q[(r, j)] = q[(r, j)] / nrm;
            }
        }
        q
    }
}

impl std::ops::Index<(usize, usize)> for DdMatrix {
    type Output = Dd;
    fn index(&self, (i, j): (usize, usize)) -> &Dd {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DdMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Dd {
        &mut self.data[i * self.n_cols + j]
    }
}
