//! Transverse subspace calculus: projections along decompositions, the
//! multiplicative cross ratio of two line-hyperplane splittings, affine
//! flags of shape (k, k+l) and the affine ratio of four of them, computed
//! both in closed form and by the four-step parallel-translation circuit.

use crate::Error;
use nalgebra::{DMatrix, DVector};

/// Solves [U W] c = x and returns the U-component U c_U; errors when the
/// joint basis is not a direct-sum decomposition of the ambient space.
pub fn project_onto_along(
    u: &DMatrix<f64>,
    w: &DMatrix<f64>,
    x: &DVector<f64>,
) -> Result<DVector<f64>, Error> {
    let n = x.len();
    if u.nrows() != n || w.nrows() != n || u.ncols() + w.ncols() != n {
        return Err(Error::DimensionMismatch {
            lhs: (u.nrows(), u.ncols()),
            rhs: (w.nrows(), w.ncols()),
        });
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    m.view_mut((0, 0), (n, u.ncols())).copy_from(u);
    m.view_mut((0, u.ncols()), (n, w.ncols())).copy_from(w);
    let norm = m.norm();
    let lu = m.clone().lu();
    let c = lu
        .solve(x)
        .ok_or_else(|| Error::Numeric("decomposition is not transverse".into()))?;
    let resid = (&m * &c - x).norm();
    if resid > 1e-7 * (1.0 + norm) * (1.0 + c.norm()) {
        return Err(Error::Numeric(
            "projection solve unreliable (near-degenerate transversality)".into(),
        ));
    }
    Ok(u * c.rows(0, u.ncols()).into_owned())
}

/// The projector matrix onto col(U) along col(W).
pub fn projector(u: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let n = u.nrows();
    let mut p = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let e = DVector::from_fn(n, |i, _| if i == j { 1.0 } else { 0.0 });
        let col = project_onto_along(u, w, &e)?;
        p.set_column(j, &col);
    }
    Ok(p)
}

/// Multiplicative cross ratio of two transverse line-hyperplane
/// decompositions: trace(π_{ℓ,V} π_{r,W}).
pub fn cross_ratio(
    line1: &DMatrix<f64>,
    hyp1: &DMatrix<f64>,
    line2: &DMatrix<f64>,
    hyp2: &DMatrix<f64>,
) -> Result<f64, Error> {
    if line1.ncols() != 1 || line2.ncols() != 1 {
        return Err(Error::InvalidArgument("cross ratio needs lines".into()));
    }
    let p1 = projector(line1, hyp1)?;
    let p2 = projector(line2, hyp2)?;
    Ok((p1 * p2).trace())
}

/// Orthonormal basis of col(U) ∩ col(V) by the nullspace of [U, -V].
pub fn intersect_subspaces(u: &DMatrix<f64>, v: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let n = u.nrows();
    assert_eq!(v.nrows(), n);
    let cols = u.ncols() + v.ncols();
    // zero-pad to square so the SVD exposes the full right null space
    let mut m = DMatrix::<f64>::zeros(n.max(cols), cols);
    m.view_mut((0, 0), (n, u.ncols())).copy_from(u);
    m.view_mut((0, u.ncols()), (n, v.ncols())).copy_from(&(-v));
    let svd = m.clone().svd(false, true);
    let vt = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Numeric("SVD failed".into()))?;
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-10 * smax.max(1.0))
        .count();
    let null_dim = cols - rank;
    if null_dim == 0 {
        return Ok(DMatrix::zeros(n, 0));
    }
    let mut out = DMatrix::<f64>::zeros(n, null_dim);
    for (idx, row) in (rank..m.ncols()).enumerate() {
        let coeffs = vt.row(row).transpose();
        let x = u * coeffs.rows(0, u.ncols()).into_owned();
        out.set_column(idx, &x);
    }
    // orthonormalize and trim numerically dependent directions
    let qr = out.qr();
    let (q, r) = (qr.q(), qr.r());
    let keep: Vec<usize> = (0..null_dim)
        .filter(|&i| r[(i, i)].abs() > 1e-10)
        .collect();
    let mut res = DMatrix::<f64>::zeros(n, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        res.set_column(j, &q.column(i).into_owned());
    }
    Ok(res)
}

/// Unique intersection point of the affine subspaces p1 + col(U1) and
/// p2 + col(U2) (dimensions adding to the ambient dimension).
pub fn affine_intersection_point(
    p1: &DVector<f64>,
    u1: &DMatrix<f64>,
    p2: &DVector<f64>,
    u2: &DMatrix<f64>,
) -> Result<DVector<f64>, Error> {
    let n = p1.len();
    if u1.ncols() + u2.ncols() != n {
        return Err(Error::InvalidArgument(
            "affine intersection needs complementary dimensions".into(),
        ));
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    m.view_mut((0, 0), (n, u1.ncols())).copy_from(u1);
    m.view_mut((0, u1.ncols()), (n, u2.ncols())).copy_from(&(-u2));
    let rhs = p2 - p1;
    let lu = m.clone().lu();
    let c = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("affine subspaces are not transverse".into()))?;
    let resid = (&m * &c - &rhs).norm();
    if resid > 1e-7 * (1.0 + m.norm()) * (1.0 + c.norm()) {
        return Err(Error::Numeric(
            "affine intersection unreliable (near-parallel data)".into(),
        ));
    }
    Ok(p1 + u1 * c.rows(0, u1.ncols()).into_owned())
}

/// An affine flag of shape (k, k+l): a k-dimensional line part inside a
/// (k+l)-dimensional space part, both translated by `offset`.
#[derive(Clone, Debug)]
pub struct AffineFlag {
    pub line: DMatrix<f64>,
    pub space: DMatrix<f64>,
    pub offset: DVector<f64>,
}

impl AffineFlag {
    pub fn new(line: DMatrix<f64>, space: DMatrix<f64>, offset: DVector<f64>) -> Result<Self, Error> {
        let n = offset.len();
        if line.nrows() != n || space.nrows() != n || line.ncols() > space.ncols() {
            return Err(Error::InvalidArgument("malformed affine flag".into()));
        }
        // line ⊂ space
        let joint = intersect_subspaces(&line, &space)?;
        if joint.ncols() != line.ncols() {
            return Err(Error::InvalidArgument(
                "flag line part is not contained in its space part".into(),
            ));
        }
        Ok(AffineFlag { line, space, offset })
    }
}

/// Result of the affine-ratio computation: the self-map of the
/// intersection A⁰ of the two a-side space parts, in the returned basis.
#[derive(Clone, Debug)]
pub struct AffineRatio {
    /// Basis of A⁰ (columns, ambient coordinates).
    pub a0_basis: DMatrix<f64>,
    /// Linear part of the circuit map in that basis (l x l).
    pub linear: DMatrix<f64>,
    /// Translation part in that basis (length l).
    pub translation: DVector<f64>,
    /// Translation as an ambient vector in A⁰.
    pub translation_ambient: DVector<f64>,
    /// Disagreement between the closed form and the four-step circuit.
    pub oracle_gap: f64,
}

/// Affine ratio of four pairwise-transverse affine flags, a-side
/// (a⁻, a⁺) and b-side (b⁺, b⁻). The translation part is computed two
/// ways: the closed form
/// `π^{A⁰, a⁺⊕b⁻} π^{b⁺⊕a⁻, B⁰}(v - w)` with w, v the canonical base
/// points of the two sides, and the explicit four-step translation
/// circuit; disagreement beyond 1e-9 (scaled) is an error.
pub fn affine_ratio_flags(
    a_plus: &AffineFlag,
    a_minus: &AffineFlag,
    b_plus: &AffineFlag,
    b_minus: &AffineFlag,
) -> Result<AffineRatio, Error> {
    let n = a_plus.offset.len();
    let a0 = intersect_subspaces(&a_plus.space, &a_minus.space)?;
    let b0 = intersect_subspaces(&b_plus.space, &b_minus.space)?;
    let l = a0.ncols();
    if b0.ncols() != l {
        return Err(Error::InvalidArgument(
            "flag shapes disagree between the two sides".into(),
        ));
    }
    let off_a = stack(&a_plus.line, &b_minus.line); // a⁺ ⊕ b⁻
    let off_b = stack(&b_plus.line, &a_minus.line); // b⁺ ⊕ a⁻
    if off_a.ncols() + l != n || off_b.ncols() + l != n {
        return Err(Error::InvalidArgument(
            "flag dimensions do not fill the ambient space".into(),
        ));
    }

    // canonical base points: w* on the a-side, v* on the b-side
    let w_star = affine_intersection_point(&a_plus.offset, &a_plus.line, &a_minus.offset, &a_minus.space)?;
    let v_star = affine_intersection_point(&b_plus.offset, &b_plus.line, &b_minus.offset, &b_minus.space)?;

    // closed form for the translation
    let inner = project_onto_along(&off_b, &b0, &(&v_star - &w_star))?;
    let tau = project_onto_along(&a0, &off_a, &inner)?;

    // four-step circuit from the same base point
    let p1 = circuit_step(&w_star, &a_minus.line, &b_plus.space, &b_plus.offset)?;
    let p2 = circuit_step(&p1, &b_plus.line, &b_minus.space, &b_minus.offset)?;
    let p3 = circuit_step(&p2, &b_minus.line, &a_plus.space, &a_plus.offset)?;
    let p4 = circuit_step(&p3, &a_plus.line, &a_minus.space, &a_minus.offset)?;
    let tau_geo = &p4 - &w_star;

    let scale = 1.0 + tau.norm().max(tau_geo.norm());
    let gap = (&tau - &tau_geo).norm();
    if gap > 1e-9 * scale {
        return Err(Error::OracleDisagreement(format!(
            "affine ratio: closed form and translation circuit differ by {gap:.3e}"
        )));
    }

    // linear part: compose the four projections on the A0 basis
    let mut lin_cols = DMatrix::<f64>::zeros(n, l);
    for j in 0..l {
        let x0: DVector<f64> = a0.column(j).into_owned();
        let x1 = project_onto_along(&b_plus.space, &a_minus.line, &x0)?;
        let x2 = project_onto_along(&b_minus.space, &b_plus.line, &x1)?;
        let x3 = project_onto_along(&a_plus.space, &b_minus.line, &x2)?;
        let x4 = project_onto_along(&a_minus.space, &a_plus.line, &x3)?;
        lin_cols.set_column(j, &x4);
    }
    let linear = in_basis(&a0, &lin_cols)?;
    let translation = in_basis(&a0, &DMatrix::from_columns(&[tau.clone()]))?
        .column(0)
        .into_owned();
    Ok(AffineRatio {
        a0_basis: a0,
        linear,
        translation,
        translation_ambient: tau,
        oracle_gap: gap,
    })
}

/// Common-offset form: both a-side flags translated by w, both b-side
/// flags by v.
#[allow(clippy::too_many_arguments)]
pub fn affine_ratio(
    a_plus_line: &DMatrix<f64>,
    a_plus_space: &DMatrix<f64>,
    a_minus_line: &DMatrix<f64>,
    a_minus_space: &DMatrix<f64>,
    b_plus_line: &DMatrix<f64>,
    b_plus_space: &DMatrix<f64>,
    b_minus_line: &DMatrix<f64>,
    b_minus_space: &DMatrix<f64>,
    w: &DVector<f64>,
    v: &DVector<f64>,
) -> Result<AffineRatio, Error> {
    let ap = AffineFlag::new(a_plus_line.clone(), a_plus_space.clone(), w.clone())?;
    let am = AffineFlag::new(a_minus_line.clone(), a_minus_space.clone(), w.clone())?;
    let bp = AffineFlag::new(b_plus_line.clone(), b_plus_space.clone(), v.clone())?;
    let bm = AffineFlag::new(b_minus_line.clone(), b_minus_space.clone(), v.clone())?;
    affine_ratio_flags(&ap, &am, &bp, &bm)
}

/// One translation step: move from `p` parallel to `dir` until hitting
/// the affine subspace `offset + col(space)`.
fn circuit_step(
    p: &DVector<f64>,
    dir: &DMatrix<f64>,
    space: &DMatrix<f64>,
    offset: &DVector<f64>,
) -> Result<DVector<f64>, Error> {
    // p + dir t ∈ offset + space: dir t - space s = offset - p
    let n = p.len();
    let mut m = DMatrix::<f64>::zeros(n, dir.ncols() + space.ncols());
    m.view_mut((0, 0), (n, dir.ncols())).copy_from(dir);
    m.view_mut((0, dir.ncols()), (n, space.ncols())).copy_from(&(-space));
    let rhs = offset - p;
    // the system can be square or overdetermined-but-consistent
    let svd = m.clone().svd(true, true);
    let c = svd
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Numeric(format!("circuit step solve failed: {e}")))?;
    let resid = (&m * &c - &rhs).norm();
    if resid > 1e-7 * (1.0 + rhs.norm()) {
        return Err(Error::Numeric(
            "circuit step has no solution (transversality failure)".into(),
        ));
    }
    Ok(p + dir * c.rows(0, dir.ncols()).into_owned())
}

/// Coordinates of the columns of `x` in the basis `b` (least squares,
/// with a consistency check).
fn in_basis(b: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let svd = b.clone().svd(true, true);
    let mut out = DMatrix::<f64>::zeros(b.ncols(), x.ncols());
    for j in 0..x.ncols() {
        let col: DVector<f64> = x.column(j).into_owned();
        let c = svd
            .solve(&col, 1e-12)
            .map_err(|e| Error::Numeric(format!("basis solve failed: {e}")))?;
        let resid = (b * &c - &col).norm();
        if resid > 1e-6 * (1.0 + col.norm()) {
            return Err(Error::Numeric(
                "vector does not lie in the expected subspace".into(),
            ));
        }
        out.set_column(j, &c);
    }
    Ok(out)
}

fn stack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut m = DMatrix::<f64>::zeros(n, a.ncols() + b.ncols());
    m.view_mut((0, 0), (n, a.ncols())).copy_from(a);
    m.view_mut((0, a.ncols()), (n, b.ncols())).copy_from(b);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn col(v: Vec<f64>) -> DMatrix<f64> {
        DMatrix::from_vec(v.len(), 1, v)
    }

    #[test]
    fn cross_ratio_same_decomposition() {
        let l = col(vec![1.0, 0.0]);
        let v = col(vec![0.0, 1.0]);
        let r = cross_ratio(&l, &v, &l, &v).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cross_ratio_plane_example() {
        let e1 = col(vec![1.0, 0.0]);
        let e2 = col(vec![0.0, 1.0]);
        let diag = col(vec![1.0, 1.0]);
        let r = cross_ratio(&e1, &e2, &diag, &e2).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cross_ratio_gl_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let l1 = col((0..3).map(|_| rng.gen::<f64>() - 0.5).collect());
            let l2 = col((0..3).map(|_| rng.gen::<f64>() - 0.5).collect());
            let h1 = DMatrix::from_fn(3, 2, |_, _| rng.gen::<f64>() - 0.5);
            let h2 = DMatrix::from_fn(3, 2, |_, _| rng.gen::<f64>() - 0.5);
            let Ok(base) = cross_ratio(&l1, &h1, &l2, &h2) else {
                continue;
            };
            let g = DMatrix::from_fn(3, 3, |i, j| {
                if i == j {
                    1.0 + 0.3 * rng.gen::<f64>()
                } else {
                    0.3 * (rng.gen::<f64>() - 0.5)
                }
            });
            let t = cross_ratio(&(&g * &l1), &(&g * &h1), &(&g * &l2), &(&g * &h2)).unwrap();
            assert!((base - t).abs() < 1e-10 * (1.0 + base.abs()), "{base} vs {t}");
        }
    }

    #[test]
    fn projector_idempotent() {
        let u = dmatrix![1.0; 0.5];
        let w = dmatrix![0.0; 1.0];
        let p = projector(&u, &w).unwrap();
        assert!(((&p * &p) - &p).norm() < 1e-12);
        assert!((p.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_ratio_common_point_is_translation_free() {
        // all four flags through the same point p: zero translation
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = DVector::from_fn(3, |_, _| rng.gen::<f64>() - 0.5);
            let cfg = random_transverse_config(&mut rng, 1, 1);
            let r = affine_ratio(
                &cfg.0, &cfg.1, &cfg.2, &cfg.3, &cfg.4, &cfg.5, &cfg.6, &cfg.7, &p, &p,
            )
            .unwrap();
            assert!(r.translation_ambient.norm() < 1e-12, "{}", r.translation_ambient.norm());
        }
    }

    #[test]
    fn affine_ratio_closed_form_matches_circuit() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let cfg = random_transverse_config(&mut rng, 1, 1);
            let w = DVector::from_fn(3, |_, _| rng.gen::<f64>() - 0.5);
            let v = DVector::from_fn(3, |_, _| rng.gen::<f64>() - 0.5);
            match affine_ratio(&cfg.0, &cfg.1, &cfg.2, &cfg.3, &cfg.4, &cfg.5, &cfg.6, &cfg.7, &w, &v) {
                Ok(r) => assert!(r.oracle_gap < 1e-9 * (1.0 + r.translation_ambient.norm())),
                Err(Error::Numeric(_)) => {} // near-degenerate draw
                Err(e) => panic!("unexpected failure: {e}"),
            }
        }
    }

    #[test]
    fn zero_difference_gives_zero_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cfg = random_transverse_config(&mut rng, 1, 2);
        let w = DVector::zeros(4);
        let r = affine_ratio(&cfg.0, &cfg.1, &cfg.2, &cfg.3, &cfg.4, &cfg.5, &cfg.6, &cfg.7, &w, &w)
            .unwrap();
        assert!(r.translation_ambient.norm() < 1e-12);
    }

    type Config = (
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
        DMatrix<f64>,
    );

    /// Random (k,l) configuration in R^{2k+l}: four flags in general
    /// position built from four independent random frames.
    pub(crate) fn random_transverse_config(rng: &mut ChaCha8Rng, k: usize, l: usize) -> Config {
        let n = 2 * k + l;
        let frame = |rng: &mut ChaCha8Rng| -> DMatrix<f64> {
            loop {
                let m = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() - 0.5);
                if m.clone().lu().determinant().abs() > 1e-3 {
                    return m;
                }
            }
        };
        let fa = frame(rng);
        let fb = frame(rng);
        let take = |f: &DMatrix<f64>, idx: std::ops::Range<usize>| -> DMatrix<f64> {
            let mut m = DMatrix::zeros(n, idx.len());
            for (j, c) in idx.enumerate() {
                m.set_column(j, &f.column(c).into_owned());
            }
            m
        };
        // a± from frame A: line parts are complementary k-blocks, spaces
        // extend them by a shared middle block
        let a_plus_line = take(&fa, 0..k);
        let a_minus_line = take(&fa, k + l..n);
        let a_plus_space = take(&fa, 0..k + l);
        let a_minus_space = take(&fa, k..n);
        let b_plus_line = take(&fb, 0..k);
        let b_minus_line = take(&fb, k + l..n);
        let b_plus_space = take(&fb, 0..k + l);
        let b_minus_space = take(&fb, k..n);
        (
            a_plus_line,
            a_plus_space,
            a_minus_line,
            a_minus_space,
            b_plus_line,
            b_plus_space,
            b_minus_line,
            b_minus_space,
        )
    }
}
