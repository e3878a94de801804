//! Exact rational arithmetic for integer matrices: rank by row reduction and
//! the Drazin inverse `A^k G A^k` with `G` any inner inverse of `A^(2k+1)`.
//! Everything here is independent of the floating-point library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use ginv_core::ComplexMatrix;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| q(x, 1)))
            .collect();
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fracs(rows: &[&[(i64, i64)]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&(n, d)| q(n, d)))
            .collect();
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j) + a * o.get(t, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, p: usize) -> Self {
        (0..p).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let rows: Vec<Vec<f64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_f64().unwrap())
                    .collect()
            })
            .collect();
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        ComplexMatrix::from_real_rows(&refs)
    }
}

/// Reduced row echelon form `R = P A` together with `P` and the pivot
/// columns.
pub fn rref(a: &QMatrix) -> (QMatrix, QMatrix, Vec<usize>) {
    let (m, n) = (a.rows, a.cols);
    let mut r = a.clone();
    let mut p = QMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(piv) = (row..m).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        for mat in [&mut r, &mut p] {
            for j in 0..mat.cols {
                let (x, y) = (mat.get(row, j).clone(), mat.get(piv, j).clone());
                mat.set(row, j, y);
                mat.set(piv, j, x);
            }
        }
        let inv = Q::one() / r.get(row, col).clone();
        for mat in [&mut r, &mut p] {
            for j in 0..mat.cols {
                let v = mat.get(row, j) * &inv;
                mat.set(row, j, v);
            }
        }
        for i in 0..m {
            if i == row || r.get(i, col).is_zero() {
                continue;
            }
            let f = r.get(i, col).clone();
            for mat in [&mut r, &mut p] {
                for j in 0..mat.cols {
                    let v = mat.get(i, j) - &f * mat.get(row, j);
                    mat.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, p, pivots)
}

pub fn rank(a: &QMatrix) -> usize {
    rref(a).2.len()
}

/// An inner inverse `G` (`A G A = A`): rows of `P` placed at the pivot
/// columns. Each column of `A` is the combination of pivot columns given by
/// the matching column of `R = P A`, which is exactly `A E R = A`.
pub fn inner_inverse(a: &QMatrix) -> QMatrix {
    let (_, p, pivots) = rref(a);
    let mut g = QMatrix::zeros(a.cols, a.rows);
    for (i, &c) in pivots.iter().enumerate() {
        for j in 0..a.rows {
            g.set(c, j, p.get(i, j).clone());
        }
    }
    g
}

pub fn index(a: &QMatrix) -> usize {
    let mut k = 0;
    while rank(&a.pow(k)) != rank(&a.pow(k + 1)) {
        k += 1;
    }
    k
}

/// Exact Drazin inverse; panics unless the three defining equations hold
/// exactly.
pub fn drazin(a: &QMatrix) -> QMatrix {
    let k = index(a);
    let ak = a.pow(k);
    let x = ak.mul(&inner_inverse(&a.pow(2 * k + 1))).mul(&ak);
    assert_eq!(a.mul(&x), x.mul(a), "AX = XA");
    assert_eq!(x.mul(a).mul(&x), x, "XAX = X");
    assert_eq!(x.mul(&a.pow(k + 1)), ak, "X A^(k+1) = A^k");
    x
}

pub fn max_abs(a: &QMatrix) -> Q {
    a.data
        .iter()
        .map(|x| x.abs())
        .fold(Q::zero(), |m, x| if x > m { x } else { m })
}
