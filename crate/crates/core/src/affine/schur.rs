//! Real Schur decomposition with cluster reordering: splits R^d into the
//! generalized eigenspace O of eigenvalues near 1 and the complementary
//! invariant subspace W, without ever forming a Jordan basis. Adjacent
//! quasi-triangular blocks are swapped by the direct method (small
//! Sylvester solve followed by a QR similarity).

use crate::Error;
use nalgebra::{DMatrix, DVector};

/// Orthonormal bases for the eigenvalue-1 cluster's generalized
/// eigenspace O and the complementary invariant subspace W.
#[derive(Clone, Debug)]
pub struct ClusterSplit {
    pub o_dim: usize,
    /// d x o_dim orthonormal, spans O, invariant under the matrix.
    pub o_basis: DMatrix<f64>,
    /// d x (d - o_dim) orthonormal, spans W, invariant under the matrix.
    pub w_basis: DMatrix<f64>,
}

impl ClusterSplit {
    /// Coefficients (c_O, c_W) with x = O c_O + W c_W.
    pub fn decompose(&self, x: &DVector<f64>) -> Result<(DVector<f64>, DVector<f64>), Error> {
        let n = x.len();
        let k = self.o_dim;
        let mut m = DMatrix::<f64>::zeros(n, n);
        m.view_mut((0, 0), (n, k)).copy_from(&self.o_basis);
        m.view_mut((0, k), (n, n - k)).copy_from(&self.w_basis);
        let lu = m.lu();
        let c = lu
            .solve(x)
            .ok_or_else(|| Error::Numeric("O + W decomposition is singular".into()))?;
        Ok((c.rows(0, k).into_owned(), c.rows(k, n - k).into_owned()))
    }
}

#[derive(Clone, Copy, Debug)]
struct Block {
    start: usize,
    size: usize,
    in_cluster: bool,
}

/// Partitions the spectrum of `m` into the eigenvalues within `tol` of 1
/// and the rest, erroring when some eigenvalue sits in the ambiguous
/// band (tol, 2 tol], and returns invariant orthonormal bases for both
/// generalized subspaces.
pub fn one_cluster_split(m: &DMatrix<f64>, tol: f64) -> Result<ClusterSplit, Error> {
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let n = m.nrows();
    let o_basis = invariant_basis(m, tol, true)?;
    let w_basis = invariant_basis(m, tol, false)?;
    if o_basis.ncols() + w_basis.ncols() != n {
        return Err(Error::Numeric(
            "cluster split dimensions do not add up".into(),
        ));
    }
    Ok(ClusterSplit {
        o_dim: o_basis.ncols(),
        o_basis,
        w_basis,
    })
}

/// Orthonormal basis of the invariant subspace for the chosen half of
/// the spectrum (cluster or complement), by reordering the real Schur
/// form so that half leads.
fn invariant_basis(
    m: &DMatrix<f64>,
    tol: f64,
    want_cluster: bool,
) -> Result<DMatrix<f64>, Error> {
    let n = m.nrows();
    let schur = m
        .clone()
        .try_schur(1e-14, 10_000)
        .ok_or_else(|| Error::Numeric("Schur iteration failed to converge".into()))?;
    let (mut q, mut t) = schur.unpack();
    let mut blocks = classify_blocks(&t, tol)?;

    // bubble the wanted blocks to the front, preserving relative order
    loop {
        let mut swapped = false;
        for i in 0..blocks.len().saturating_sub(1) {
            let (left, right) = (blocks[i], blocks[i + 1]);
            let left_wanted = left.in_cluster == want_cluster;
            let right_wanted = right.in_cluster == want_cluster;
            if !left_wanted && right_wanted {
                swap_adjacent(&mut t, &mut q, left.start, left.size, right.size)?;
                blocks[i] = Block {
                    start: left.start,
                    size: right.size,
                    in_cluster: right.in_cluster,
                };
                blocks[i + 1] = Block {
                    start: left.start + right.size,
                    size: left.size,
                    in_cluster: left.in_cluster,
                };
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    let k: usize = blocks
        .iter()
        .filter(|b| b.in_cluster == want_cluster)
        .map(|b| b.size)
        .sum();
    let basis = q.view((0, 0), (n, k)).into_owned();
    // invariance check: m * basis must stay in the span
    if k > 0 {
        let img = m * &basis;
        let proj = &basis * (basis.transpose() * &img);
        let resid = (&img - &proj).norm();
        if resid > 1e-7 * (1.0 + m.norm()) {
            return Err(Error::Numeric(format!(
                "reordered Schur basis is not invariant (residual {resid:.3e})"
            )));
        }
    }
    Ok(basis)
}

/// Splits the quasi-triangular T into 1x1 and 2x2 blocks and classifies
/// each against the eigenvalue-1 cluster.
fn classify_blocks(t: &DMatrix<f64>, tol: f64) -> Result<Vec<Block>, Error> {
    let n = t.nrows();
    let scale = t.norm().max(1.0);
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let size = if i + 1 < n && t[(i + 1, i)].abs() > 1e-12 * scale {
            2
        } else {
            1
        };
        let dists: Vec<f64> = if size == 1 {
            vec![(t[(i, i)] - 1.0).abs()]
        } else {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let tr = a + d;
            let det = a * d - b * c;
            let disc = tr * tr / 4.0 - det;
            if disc >= 0.0 {
                let r = disc.sqrt();
                vec![(tr / 2.0 + r - 1.0).abs(), (tr / 2.0 - r - 1.0).abs()]
            } else {
                let im = (-disc).sqrt();
                let dist = ((tr / 2.0 - 1.0).powi(2) + im * im).sqrt();
                vec![dist, dist]
            }
        };
        for d in &dists {
            if *d > tol && *d <= 2.0 * tol {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalue at distance {d:.3e} from 1 falls in the ambiguous band (tol {tol:.3e})"
                )));
            }
        }
        let ins: Vec<bool> = dists.iter().map(|d| *d <= tol).collect();
        if ins.iter().any(|&x| x) && !ins.iter().all(|&x| x) {
            return Err(Error::Numeric(
                "a 2x2 Schur block straddles the cluster boundary".into(),
            ));
        }
        blocks.push(Block {
            start: i,
            size,
            in_cluster: ins[0],
        });
        i += size;
    }
    Ok(blocks)
}

/// Swaps the adjacent blocks A (p x p, at i0) and C (q x q, just after)
/// by the direct method: solve A X - X C = B, orthogonalize [-X; I], and
/// apply the similarity to T and accumulate into Q.
fn swap_adjacent(
    t: &mut DMatrix<f64>,
    q: &mut DMatrix<f64>,
    i0: usize,
    p: usize,
    qsz: usize,
) -> Result<(), Error> {
    let n = t.nrows();
    let m = p + qsz;
    let a = t.view((i0, i0), (p, p)).into_owned();
    let c = t.view((i0 + p, i0 + p), (qsz, qsz)).into_owned();
    let b = t.view((i0, i0 + p), (p, qsz)).into_owned();
    let x = solve_sylvester(&a, &c, &b)?;

    let mut z = DMatrix::<f64>::zeros(m, qsz);
    z.view_mut((0, 0), (p, qsz)).copy_from(&(-&x));
    z.view_mut((p, 0), (qsz, qsz))
        .copy_from(&DMatrix::identity(qsz, qsz));
    let qr = z.qr();

    // rows: T[w, :] <- Qz^T T[w, :]
    let mut rows = t.rows(i0, m).into_owned();
    qr.q_tr_mul(&mut rows);
    t.view_mut((i0, 0), (m, n)).copy_from(&rows);
    // columns: T[:, w] <- T[:, w] Qz  (via the transpose)
    let mut cols_t = t.columns(i0, m).transpose();
    qr.q_tr_mul(&mut cols_t);
    t.view_mut((0, i0), (n, m)).copy_from(&cols_t.transpose());
    // accumulate: Q[:, w] <- Q[:, w] Qz
    let mut qcols_t = q.columns(i0, m).transpose();
    qr.q_tr_mul(&mut qcols_t);
    q.view_mut((0, i0), (n, m)).copy_from(&qcols_t.transpose());

    // the (2,1) block of the swapped window must now vanish
    let leftover = t.view((i0 + qsz, i0), (p, qsz)).norm();
    if leftover > 1e-6 * (1.0 + t.norm()) {
        return Err(Error::Numeric(format!(
            "block swap left a residual of {leftover:.3e}"
        )));
    }
    t.view_mut((i0 + qsz, i0), (p, qsz)).fill(0.0);
    Ok(())
}

/// Solves A X - X C = B through the Kronecker system
/// (I ⊗ A - Cᵀ ⊗ I) vec(X) = vec(B); fine at block sizes <= 2.
fn solve_sylvester(
    a: &DMatrix<f64>,
    c: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<DMatrix<f64>, Error> {
    let p = a.nrows();
    let q = c.nrows();
    let mut m = DMatrix::<f64>::zeros(p * q, p * q);
    // column-major vec: entry (i, j) of X has index j*p + i
    for j in 0..q {
        for i in 0..p {
            let row = j * p + i;
            for k in 0..p {
                m[(row, j * p + k)] += a[(i, k)];
            }
            for l in 0..q {
                m[(row, l * p + i)] -= c[(l, j)];
            }
        }
    }
    let rhs = DVector::from_iterator(p * q, (0..q).flat_map(|j| (0..p).map(move |i| (i, j))).map(|(i, j)| b[(i, j)]));
    let lu = m.lu();
    let sol = lu.solve(&rhs).ok_or_else(|| {
        Error::Numeric("Sylvester system is singular (blocks share an eigenvalue)".into())
    })?;
    Ok(DMatrix::from_fn(p, q, |i, j| sol[j * p + i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn split_diagonal() {
        let m = DMatrix::from_diagonal(&dvector![2.0, 1.0, 0.5]);
        let s = one_cluster_split(&m, 0.1).unwrap();
        assert_eq!(s.o_dim, 1);
        // O is the middle axis
        let o = s.o_basis.column(0);
        assert!(o[1].abs() > 0.999);
    }

    #[test]
    fn split_with_jordan_block_at_one() {
        // non-diagonalizable at eigenvalue 1: O is 2-dimensional
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 3.0]);
        let s = one_cluster_split(&m, 0.1).unwrap();
        assert_eq!(s.o_dim, 2);
        // invariance of both bases
        for basis in [&s.o_basis, &s.w_basis] {
            let img = &m * basis;
            let proj = basis * (basis.transpose() * &img);
            assert!((img - proj).norm() < 1e-9);
        }
    }

    #[test]
    fn split_with_complex_pair() {
        // rotation-dilation pair away from 1, plus a neutral axis
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[0.0, -2.0, 0.3, 2.0, 0.0, -0.1, 0.0, 0.0, 1.0],
        );
        let s = one_cluster_split(&m, 0.1).unwrap();
        assert_eq!(s.o_dim, 1);
        let img = &m * &s.w_basis;
        let proj = &s.w_basis * (s.w_basis.transpose() * &img);
        assert!((img - proj).norm() < 1e-9);
    }

    #[test]
    fn decompose_roundtrip() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 2.0, 0.3, 0.0, 0.0, 0.4]);
        let s = one_cluster_split(&m, 0.1).unwrap();
        let x = dvector![1.0, -2.0, 0.7];
        let (co, cw) = s.decompose(&x).unwrap();
        let back = &s.o_basis * co + &s.w_basis * cw;
        assert!((back - x).norm() < 1e-12);
    }

    #[test]
    fn ambiguous_band_is_an_error() {
        let m = DMatrix::from_diagonal(&dvector![1.15, 2.0]);
        assert!(one_cluster_split(&m, 0.1).is_err());
    }

    #[test]
    fn sylvester_small() {
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 1.0, 0.0, 3.5]);
        let c = DMatrix::from_row_slice(1, 1, &[1.0]);
        let b = DMatrix::from_row_slice(2, 1, &[2.0, -1.0]);
        let x = solve_sylvester(&a, &c, &b).unwrap();
        let resid = &a * &x - &x * &c - &b;
        assert!(resid.norm() < 1e-12);
    }
}
