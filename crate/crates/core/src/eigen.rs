//! Dense symmetric eigensolver (cyclic Jacobi rotations).

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
}

/// Diagonalizes `a` by cyclic Jacobi sweeps until the off-diagonal Frobenius
/// norm falls below `eps · ‖a‖_F`. Only the upper triangle is read.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");

    let mut m = a.clone();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    let mut v = DMatrix::<f64>::identity(n, n);

    let scale = m.norm();
    let target = f64::EPSILON * scale;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target || scale == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNotConverged {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let mut c = v.column(i).into_owned();
        // first nonzero component positive
        if let Some(first) = c.iter().find(|x| x.abs() > f64::EPSILON).copied() {
            if first < 0.0 {
                c.neg_mut();
            }
        }
        vectors.set_column(col, &c);
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * m[(i, j)] * m[(i, j)];
        }
    }
    s.sqrt()
}

/// Annihilates `m[p][q]` with a Jacobi rotation and accumulates it into `v`.
fn rotate(m: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let (app, aqq) = (m[(p, p)], m[(q, q)]);
    let theta = (aqq - app) / (2.0 * apq);
    // signum(0.0) == 1.0, so equal diagonals rotate by π/4
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let n = m.nrows();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let (akp, akq) = (m[(k, p)], m[(k, q)]);
        let kp = c * akp - s * akq;
        let kq = s * akp + c * akq;
        m[(k, p)] = kp;
        m[(p, k)] = kp;
        m[(k, q)] = kq;
        m[(q, k)] = kq;
    }
    m[(p, p)] = app - t * apq;
    m[(q, q)] = aqq + t * apq;
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
