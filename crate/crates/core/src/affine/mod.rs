//! Floating-point affine geometry at desk scale: Jordan projections,
//! Margulis invariants (unnormalized and a-part), invariant affine flags,
//! affine ratios and the additivity defect, plus Jordan-variation
//! sampling over words.

pub mod dd;
pub mod defect;
pub mod flags;
pub mod schur;
pub mod varcone;

use crate::Error;
use nalgebra::{DMatrix, DVector};

/// Relative tie tolerance for eigenvalue moduli: anything closer is
/// treated as equal and the matrix declared non-loxodromic.
pub const LOXODROMY_REL_TOL: f64 = 1e-8;

/// An affine self-map `u ↦ linear u + translation` of R^d.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl AffineMap {
    pub fn new(linear: DMatrix<f64>, translation: DVector<f64>) -> Result<Self, Error> {
        if !linear.is_square() || linear.nrows() != translation.len() {
            return Err(Error::DimensionMismatch {
                lhs: (linear.nrows(), linear.ncols()),
                rhs: (translation.len(), 1),
            });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, u: &DVector<f64>) -> DVector<f64> {
        &self.linear * u + &self.translation
    }

    /// Composition (self ∘ other): linear parts multiply, translations
    /// compose affinely.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap, Error> {
        let inv = self
            .linear
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numeric("affine map has singular linear part".into()))?;
        let t = -(&inv * &self.translation);
        Ok(AffineMap {
            linear: inv,
            translation: t,
        })
    }
}

/// Eigenvalues, moduli-sorted, with the loxodromy flag and (for the
/// real-split case) the modulus-ordered eigenbasis.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// (re, im), sorted by strictly decreasing modulus.
    pub eigenvalues: Vec<(f64, f64)>,
    /// Columns are eigenvectors matching `eigenvalues`; present only when
    /// every eigenvalue is real.
    pub eigenbasis: Option<DMatrix<f64>>,
    /// Moduli pairwise distinct beyond the relative tie tolerance.
    pub loxodromic: bool,
}

/// Complex eigenvalues sorted by non-increasing modulus.
pub fn eigenvalues_by_modulus(g: &DMatrix<f64>) -> Result<Vec<(f64, f64)>, Error> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            lhs: (g.nrows(), g.ncols()),
            rhs: (g.ncols(), g.nrows()),
        });
    }
    let eig = g.clone().complex_eigenvalues();
    let mut vals: Vec<(f64, f64)> = eig.iter().map(|c| (c.re, c.im)).collect();
    vals.sort_by(|a, b| {
        let (ma, mb) = (a.0.hypot(a.1), b.0.hypot(b.1));
        mb.partial_cmp(&ma).unwrap()
    });
    Ok(vals)
}

fn moduli_pairwise_distinct(vals: &[(f64, f64)]) -> bool {
    for w in vals.windows(2) {
        let (m0, m1) = (w[0].0.hypot(w[0].1), w[1].0.hypot(w[1].1));
        if m0 - m1 <= LOXODROMY_REL_TOL * m0.max(1e-300) {
            return false;
        }
    }
    true
}

/// Spectral data for `g`. The eigenbasis is produced only when all
/// eigenvalues are real; columns are found by shifted inverse iteration
/// seeded with the Schur eigenvalues.
pub fn spectral_data(g: &DMatrix<f64>) -> Result<SpectralData, Error> {
    let vals = eigenvalues_by_modulus(g)?;
    let loxo = moduli_pairwise_distinct(&vals);
    let scale = vals[0].0.hypot(vals[0].1).max(1.0);
    let all_real = vals.iter().all(|v| v.1.abs() <= 1e-9 * scale);
    let basis = if all_real && loxo {
        Some(real_eigenbasis(g, &vals)?)
    } else {
        None
    };
    Ok(SpectralData {
        eigenvalues: vals,
        eigenbasis: basis,
        loxodromic: loxo,
    })
}

fn real_eigenbasis(g: &DMatrix<f64>, vals: &[(f64, f64)]) -> Result<DMatrix<f64>, Error> {
    let n = g.nrows();
    let mut basis = DMatrix::<f64>::zeros(n, n);
    let norm = g.norm().max(1e-300);
    for (k, &(lam, _)) in vals.iter().enumerate() {
        let v = inverse_iterate(g, lam, norm)?;
        basis.set_column(k, &v);
    }
    Ok(basis)
}

fn inverse_iterate(g: &DMatrix<f64>, lambda: f64, scale: f64) -> Result<DVector<f64>, Error> {
    let n = g.nrows();
    // tiny shift keeps the factorization usable when lambda is exact
    let mut shift = lambda;
    for attempt in 0..3 {
        let mut m = g.clone();
        for i in 0..n {
            m[(i, i)] -= shift;
        }
        if let Some(lu) = try_lu(&m) {
            let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
            for i in 0..n {
                // deterministic asymmetric seed avoids unlucky orthogonal starts
                v[i] += 0.01 * ((i + 1) as f64).sin();
            }
            v /= v.norm();
            for _ in 0..4 {
                let w = lu.solve(&v).ok_or_else(|| {
                    Error::Numeric("inverse iteration solve failed".into())
                })?;
                let nw = w.norm();
                if !nw.is_finite() || nw == 0.0 {
                    break;
                }
                v = w / nw;
            }
            // quality check: residual small relative to |g|
            let resid = (g * &v - lambda * &v).norm();
            if resid <= 1e-8 * scale {
                return Ok(v);
            }
        }
        shift = lambda + 1e-12 * scale * (attempt + 1) as f64;
    }
    Err(Error::Numeric(format!(
        "inverse iteration failed to converge for eigenvalue {lambda}"
    )))
}

fn try_lu(m: &DMatrix<f64>) -> Option<nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    let lu = m.clone().lu();
    // nalgebra LU never fails to build; check usability by determinant
    if lu.determinant().abs() > 0.0 {
        Some(lu)
    } else {
        None
    }
}

/// Jordan projection: sorted (non-increasing) logarithms of eigenvalue
/// moduli.
pub fn jordan_projection(g: &DMatrix<f64>) -> Result<DVector<f64>, Error> {
    let vals = eigenvalues_by_modulus(g)?;
    let mut out = DVector::zeros(vals.len());
    for (i, &(re, im)) in vals.iter().enumerate() {
        let m = re.hypot(im);
        if m == 0.0 {
            return Err(Error::InvalidArgument(
                "jordan projection needs an invertible matrix".into(),
            ));
        }
        out[i] = m.ln();
    }
    Ok(out)
}

/// Matrix exponential by scaling-and-squaring with a Taylor series.
pub fn matrix_exp(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let norm = x.norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = x / 2f64.powi(s);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut acc = DMatrix::<f64>::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled / k as f64;
        acc += &term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
    }
    let mut result = acc;
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// The a-part of the Margulis invariant in the split adjoint setting:
/// with P the modulus-ordered eigenbasis of `g` (real-split loxodromic)
/// and `u` traceless, returns diag(P⁻¹ u P). Column scaling of P cancels.
pub fn margulis_a_part(g: &DMatrix<f64>, u: &DMatrix<f64>) -> Result<DVector<f64>, Error> {
    let n = g.nrows();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            lhs: (n, n),
            rhs: (u.nrows(), u.ncols()),
        });
    }
    let tr: f64 = (0..n).map(|i| u[(i, i)]).sum();
    if tr.abs() > 1e-8 * (1.0 + u.norm()) {
        return Err(Error::InvalidArgument(format!(
            "margulis a-part needs a traceless direction (trace = {tr})"
        )));
    }
    let spec = spectral_data(g)?;
    if !spec.loxodromic {
        return Err(Error::InvalidArgument(
            "matrix is not loxodromic (eigenvalue moduli tie)".into(),
        ));
    }
    let p = spec.eigenbasis.ok_or_else(|| {
        Error::InvalidArgument("matrix has complex eigenvalues; need real-split".into())
    })?;
    let lu = p.clone().lu();
    let x = lu
        .solve(&(u * &p))
        .ok_or_else(|| Error::Numeric("eigenbasis is numerically singular".into()))?;
    Ok(DVector::from_iterator(n, (0..n).map(|i| x[(i, i)])))
}

/// Central finite difference of the Jordan projection along the
/// direction `x`: (λ(exp(h x) g) - λ(exp(-h x) g)) / 2h.
pub fn jordan_variation_fd(
    g: &DMatrix<f64>,
    x: &DMatrix<f64>,
    h: f64,
) -> Result<DVector<f64>, Error> {
    if h <= 0.0 {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let fwd = matrix_exp(&(x * h)) * g;
    let bwd = matrix_exp(&(x * (-h))) * g;
    for m in [&fwd, &bwd] {
        let vals = eigenvalues_by_modulus(m)?;
        if !moduli_pairwise_distinct(&vals) {
            return Err(Error::Numeric(
                "loxodromy lost along the perturbation".into(),
            ));
        }
    }
    let lf = jordan_projection(&fwd)?;
    let lb = jordan_projection(&bwd)?;
    Ok((lf - lb) / (2.0 * h))
}

/// Projection of the translation part onto the generalized eigenspace O
/// of eigenvalues within `tol` of 1, parallel to the complementary
/// invariant subspace W (both from a reordered real Schur form).
pub fn unnormalized_margulis(f: &AffineMap, tol: f64) -> Result<DVector<f64>, Error> {
    let split = schur::one_cluster_split(&f.linear, tol)?;
    let n = f.dim();
    if split.o_dim == 0 {
        return Ok(DVector::zeros(n));
    }
    if split.o_dim == n {
        return Ok(f.translation.clone());
    }
    let coeffs = split.decompose(&f.translation)?;
    Ok(&split.o_basis * coeffs.0)
}

/// The fixed-point offset o with f(O + o) = O + o: solves
/// (ℓ(f)|W - id) y = -π_W(tra f) in the W-coordinates of the Schur
/// split and embeds back into R^d. Post-checks f(o) - o ∈ O.
pub fn fixed_point_offset(f: &AffineMap, tol: f64) -> Result<DVector<f64>, Error> {
    let split = schur::one_cluster_split(&f.linear, tol)?;
    let n = f.dim();
    if split.o_dim == n {
        // pure neutral map: the origin already works
        return Ok(DVector::zeros(n));
    }
    let (_, w_coords) = split.decompose(&f.translation)?;
    let w_dim = n - split.o_dim;
    // restriction of the linear part to W in the orthonormal W basis
    let r = split.w_basis.transpose() * &f.linear * &split.w_basis;
    let mut a = r - DMatrix::<f64>::identity(w_dim, w_dim);
    let rhs = -w_coords;
    let det_scale = a.norm();
    let lu = a.clone().lu();
    let y = lu.solve(&rhs).ok_or_else(|| {
        Error::Numeric("(linear|W - id) is numerically singular".into())
    })?;
    // guard against a nearly singular restriction
    let resid = (&a * &y - &rhs).norm();
    if resid > 1e-6 * (1.0 + det_scale) * (1.0 + y.norm()) {
        return Err(Error::Numeric(
            "(linear|W - id) solve is unreliable (near-singular)".into(),
        ));
    }
    a.fill(0.0); // a consumed; silence the unused assignment in release builds
    let o = &split.w_basis * y;
    // post-check: f(o) - o must lie in O
    let drift = f.apply(&o) - &o;
    let (_, drift_w) = split.decompose(&drift)?;
    if drift_w.norm() > 1e-8 * (1.0 + drift.norm()) {
        return Err(Error::StructureViolation(format!(
            "fixed-point offset failed its invariance check (residual {})",
            drift_w.norm()
        )));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, dvector};

    #[test]
    fn jordan_projection_diagonal() {
        let g = DMatrix::from_diagonal(&dvector![4.0, 2.0, 0.125]);
        let l = jordan_projection(&g).unwrap();
        assert!((l[0] - 4f64.ln()).abs() < 1e-14);
        assert!((l[1] - 2f64.ln()).abs() < 1e-14);
        assert!((l[2] + 8f64.ln()).abs() < 1e-14);
        assert!(jordan_projection(&DMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn jordan_projection_conjugation_invariant() {
        let g = dmatrix![3.0, 1.0; 0.5, 2.0];
        let h = dmatrix![1.0, 2.0; -1.0, 1.5];
        let conj = &h * &g * h.try_inverse().unwrap();
        let a = jordan_projection(&g).unwrap();
        let b = jordan_projection(&conj).unwrap();
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn jordan_projection_squares() {
        let g = dmatrix![5.0, 1.0, 0.0; 0.0, 2.0, 1.0; 0.0, 0.0, 0.1];
        let l1 = jordan_projection(&g).unwrap();
        let l2 = jordan_projection(&(&g * &g)).unwrap();
        assert!((l2 - 2.0 * l1).norm() < 1e-9);
    }

    #[test]
    fn margulis_a_part_diagonal_case() {
        let g = DMatrix::from_diagonal(&dvector![8.0, 2.0, 1.0 / 16.0]);
        let u = dmatrix![0.3, 1.0, -2.0; 0.5, -0.8, 0.25; 1.5, 0.75, 0.5];
        let m = margulis_a_part(&g, &u).unwrap();
        assert!((m - dvector![0.3, -0.8, 0.5]).norm() < 1e-12);
    }

    #[test]
    fn margulis_a_part_scaling_invariance() {
        // conjugate by a diagonal rescale: same diagonal extraction
        let h = dmatrix![1.0, 0.4, 0.1; 0.2, 1.0, 0.3; 0.0, 0.5, 1.0];
        let g = &h * DMatrix::from_diagonal(&dvector![6.0, 1.5, 0.2]) * h.try_inverse().unwrap();
        let u0 = dmatrix![0.2, -0.7, 0.4; 1.0, 0.1, 0.0; 0.3, 0.6, -0.3];
        let tr = (u0[(0, 0)] + u0[(1, 1)] + u0[(2, 2)]) / 3.0;
        let u = u0 - DMatrix::identity(3, 3) * tr;
        let m1 = margulis_a_part(&g, &u).unwrap();
        let m2 = margulis_a_part(&g, &u).unwrap();
        assert!((m1 - m2).norm() < 1e-14);
    }

    #[test]
    fn margulis_rejects_non_loxodromic() {
        let rot = dmatrix![0.0, -1.0; 1.0, 0.0];
        let u = dmatrix![0.1, 0.0; 0.0, -0.1];
        assert!(margulis_a_part(&rot, &u).is_err());
    }

    #[test]
    fn fd_matches_a_part() {
        let g = DMatrix::from_diagonal(&dvector![8.0, 2.0, 1.0 / 16.0]);
        let x = dmatrix![0.5, 0.3, -0.2; 0.1, -0.9, 0.7; 0.4, 0.2, 0.4];
        let fd = jordan_variation_fd(&g, &x, 1e-5).unwrap();
        let exact = margulis_a_part(&g, &x).unwrap();
        assert!((fd - exact).norm() < 1e-6);
    }

    #[test]
    fn exp_of_diagonal() {
        let x = DMatrix::from_diagonal(&dvector![1.0, -2.0, 0.5]);
        let e = matrix_exp(&x);
        assert!((e[(0, 0)] - 1f64.exp()).abs() < 1e-12);
        assert!((e[(1, 1)] - (-2f64).exp()).abs() < 1e-12);
        assert!((e[(2, 2)] - 0.5f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_margulis_identity_linear() {
        let f = AffineMap::new(DMatrix::identity(3, 3), dvector![1.0, -2.0, 0.5]).unwrap();
        let m = unnormalized_margulis(&f, 0.1).unwrap();
        assert!((m - dvector![1.0, -2.0, 0.5]).norm() < 1e-12);
    }

    #[test]
    fn unnormalized_margulis_diagonal_split() {
        let f = AffineMap::new(
            DMatrix::from_diagonal(&dvector![2.0, 1.0, 0.5]),
            dvector![3.0, 7.0, -4.0],
        )
        .unwrap();
        let m = unnormalized_margulis(&f, 0.1).unwrap();
        assert!((m - dvector![0.0, 7.0, 0.0]).norm() < 1e-10);
    }

    #[test]
    fn unnormalized_margulis_inverse_law() {
        let f = AffineMap::new(
            dmatrix![2.0, 0.3, 0.0; 0.0, 1.0, 0.4; 0.0, 0.0, 0.5],
            dvector![1.0, 2.0, 3.0],
        )
        .unwrap();
        let m = unnormalized_margulis(&f, 0.1).unwrap();
        let mi = unnormalized_margulis(&f.inverse().unwrap(), 0.1).unwrap();
        assert!((&m + &mi).norm() < 1e-8, "inverse law failed: {m} vs {mi}");
    }

    #[test]
    fn unnormalized_margulis_ambiguous_cluster() {
        let f = AffineMap::new(
            DMatrix::from_diagonal(&dvector![1.15, 1.0, 0.5]),
            dvector![1.0, 1.0, 1.0],
        )
        .unwrap();
        // 0.15 lies in (tol, 2 tol] for tol = 0.1: ambiguous
        assert!(unnormalized_margulis(&f, 0.1).is_err());
    }

    #[test]
    fn fixed_point_offset_example() {
        // f = (diag(2, 1/2), (1,1)): o = (-1, 1), f(o) - o = 0
        let f = AffineMap::new(
            DMatrix::from_diagonal(&dvector![2.0, 0.5]),
            dvector![1.0, 1.0],
        )
        .unwrap();
        let o = fixed_point_offset(&f, 0.1).unwrap();
        assert!((&o - dvector![-1.0, 2.0]).norm() < 1e-10, "o = {o}");
        assert!((f.apply(&o) - &o).norm() < 1e-10);
    }

    #[test]
    fn fixed_point_offset_pure_neutral_translation() {
        let f = AffineMap::new(DMatrix::identity(2, 2), dvector![0.3, 0.4]).unwrap();
        let o = fixed_point_offset(&f, 0.1).unwrap();
        assert!(o.norm() < 1e-12);
    }

    #[test]
    fn translation_twist_preserves_margulis() {
        // adding u - ℓ(f) u to the translation leaves the invariant alone
        let lin = DMatrix::from_diagonal(&dvector![2.0, 1.0, 0.5]);
        let f = AffineMap::new(lin.clone(), dvector![3.0, 7.0, -4.0]).unwrap();
        let u = dvector![0.9, -1.4, 2.2];
        let twisted = AffineMap::new(
            lin.clone(),
            &f.translation + &u - &lin * &u,
        )
        .unwrap();
        let a = unnormalized_margulis(&f, 0.1).unwrap();
        let b = unnormalized_margulis(&twisted, 0.1).unwrap();
        assert!((a - b).norm() < 1e-10);
    }
}
