//! Additivity defect of Margulis invariants in the split adjoint
//! setting: pairs (g, u) in SL(d) x sl(d) act affinely on sl(d) through
//! the adjoint action; the invariant of the pair is the diagonal of
//! P⁻¹ u P in the modulus-ordered eigenbasis P of g. The defect
//! m(fⁿqⁿ) - m(fⁿ) - m(qⁿ) converges, as the contraction sharpens, to
//! the translation affine ratio of the invariant affine flags of f and q.
//!
//! The word invariants are evaluated in double-double arithmetic: the
//! cocycle of fⁿqⁿ carries entries of size (eigenvalue spread)^(2n),
//! which exceeds f64 cancellation headroom long before the convergence
//! range of interest. The two word eigenbases come from forward/backward
//! subspace iteration applied one well-conditioned factor at a time, and
//! the mixed term is split exactly through
//!   diag(P⁻¹ [u(fⁿ) + Ad(g_fⁿ) u(qⁿ)] P)
//!     = diag(P⁻¹ u(fⁿ) P) + diag(P₂⁻¹ u(qⁿ) P₂),
//! with P₂ = g_f⁻ⁿ P the eigenbasis of the reversed word, which keeps the
//! largest intermediate at spread^n instead of spread^(2n).

use super::dd::{Dd, DdMatrix};
use super::flags::{affine_ratio_flags, intersect_subspaces, AffineFlag};
use super::spectral_data;
use crate::Error;
use nalgebra::{DMatrix, DVector};

/// A group element with a tangent direction: g in SL(d) (real-split
/// loxodromic for the invariants) and traceless u in sl(d).
#[derive(Clone, Debug)]
pub struct AdjointPair {
    pub g: DMatrix<f64>,
    pub u: DMatrix<f64>,
}

impl AdjointPair {
    pub fn new(g: DMatrix<f64>, u: DMatrix<f64>) -> Result<Self, Error> {
        let d = g.nrows();
        if !g.is_square() || u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch {
                lhs: (g.nrows(), g.ncols()),
                rhs: (u.nrows(), u.ncols()),
            });
        }
        let tr: f64 = (0..d).map(|i| u[(i, i)]).sum();
        if tr.abs() > 1e-8 * (1.0 + u.norm()) {
            return Err(Error::InvalidArgument(format!(
                "direction must be traceless (trace = {tr})"
            )));
        }
        Ok(AdjointPair { g, u })
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }
}

/// Coordinates on sl(d): off-diagonal matrix units first (row-major,
/// skipping the diagonal), then an orthonormal basis of the traceless
/// diagonal. Total d² - 1.
pub struct SlCoords {
    pub d: usize,
    diag_basis: Vec<DVector<f64>>,
}

impl SlCoords {
    pub fn new(d: usize) -> Self {
        let mut diag_basis = Vec::with_capacity(d - 1);
        for k in 1..d {
            let mut v = DVector::zeros(d);
            for i in 0..k {
                v[i] = 1.0;
            }
            v[k] = -(k as f64);
            v /= (k as f64 * (k as f64 + 1.0)).sqrt();
            diag_basis.push(v);
        }
        SlCoords { d, diag_basis }
    }

    pub fn dim(&self) -> usize {
        self.d * self.d - 1
    }

    /// Coordinates of a (traceless) matrix.
    pub fn vectorize(&self, m: &DMatrix<f64>) -> DVector<f64> {
        let d = self.d;
        let mut out = DVector::zeros(self.dim());
        let mut idx = 0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    out[idx] = m[(i, j)];
                    idx += 1;
                }
            }
        }
        for v in &self.diag_basis {
            let mut dot = 0.0;
            for i in 0..d {
                dot += v[i] * m[(i, i)];
            }
            out[idx] = dot;
            idx += 1;
        }
        out
    }

    /// Matrix from coordinates.
    pub fn matricize(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.d;
        let mut m = DMatrix::zeros(d, d);
        let mut idx = 0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    m[(i, j)] = x[idx];
                    idx += 1;
                }
            }
        }
        for v in &self.diag_basis {
            for i in 0..d {
                m[(i, i)] += x[idx] * v[i];
            }
            idx += 1;
        }
        m
    }

    /// Basis (columns) of the span of P E_pat P⁻¹ for the requested
    /// triangular pattern, in sl coordinates.
    pub fn pattern_basis(&self, p: &DMatrix<f64>, pattern: Pattern) -> Result<DMatrix<f64>, Error> {
        let d = self.d;
        let pinv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numeric("eigenbasis is singular".into()))?;
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let include = match pattern {
                    Pattern::Upper | Pattern::UpperDiag => i < j,
                    Pattern::Lower | Pattern::LowerDiag => i > j,
                };
                if include {
                    let m = p.column(i) * pinv.row(j);
                    cols.push(self.vectorize(&m));
                }
            }
        }
        if matches!(pattern, Pattern::UpperDiag | Pattern::LowerDiag) {
            for v in &self.diag_basis {
                let mut m = DMatrix::zeros(d, d);
                for i in 0..d {
                    m += v[i] * p.column(i) * pinv.row(i);
                }
                cols.push(self.vectorize(&m));
            }
        }
        Ok(DMatrix::from_columns(&cols))
    }
}

/// Triangular patterns relative to an eigenbasis.
#[derive(Clone, Copy, Debug)]
pub enum Pattern {
    Upper,
    UpperDiag,
    Lower,
    LowerDiag,
}

/// Margulis a-part of a pair: diag(P⁻¹ u P), f64 path.
pub fn margulis_of_pair(pair: &AdjointPair) -> Result<DVector<f64>, Error> {
    super::margulis_a_part(&pair.g, &pair.u)
}

/// Fixed-point offset of the pair as a matrix in sl(d): in eigenbasis
/// coordinates c = P⁻¹ u P, the off-diagonal solve is elementwise,
/// O_ij = -c_ij / (λ_i/λ_j - 1), and o = P O P⁻¹.
pub fn offset_matrix(pair: &AdjointPair) -> Result<DMatrix<f64>, Error> {
    let spec = spectral_data(&pair.g)?;
    if !spec.loxodromic {
        return Err(Error::InvalidArgument("pair is not loxodromic".into()));
    }
    let p = spec
        .eigenbasis
        .clone()
        .ok_or_else(|| Error::InvalidArgument("pair is not real-split".into()))?;
    let lambda: Vec<f64> = spec.eigenvalues.iter().map(|v| v.0).collect();
    let d = pair.dim();
    let lu = p.clone().lu();
    let c = lu
        .solve(&(&pair.u * &p))
        .ok_or_else(|| Error::Numeric("eigenbasis solve failed".into()))?;
    let mut o = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            if i != j {
                o[(i, j)] = -c[(i, j)] / (lambda[i] / lambda[j] - 1.0);
            }
        }
    }
    let pinv = p
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numeric("eigenbasis is singular".into()))?;
    Ok(&p * o * pinv)
}

/// Affine contraction diagnostic ς(g) = ‖Ad g|a⁻‖ ‖Ad g⁻¹|A⁺‖ e^{‖o‖},
/// evaluated through eigenvalue ratios (operator norms up to basis skew).
pub fn affine_contraction(pair: &AdjointPair) -> Result<f64, Error> {
    let spec = spectral_data(&pair.g)?;
    if !spec.loxodromic {
        return Err(Error::InvalidArgument("pair is not loxodromic".into()));
    }
    let lambda: Vec<f64> = spec.eigenvalues.iter().map(|v| v.0.abs()).collect();
    let d = lambda.len();
    let mut contraction: f64 = 0.0;
    for i in 1..d {
        contraction = contraction.max(lambda[i] / lambda[i - 1]);
    }
    // Ad g⁻¹ on the upper-diagonal space has spectral radius 1 (diagonal part)
    let o = offset_matrix(pair)?;
    Ok(contraction * o.norm().exp())
}

/// Invariant affine flags of f and q assembled for the additivity
/// theorem, and the resulting translation affine ratio projected to the
/// diagonal: the a-side pairs f's attracting flag (offset o_f) with q's
/// repelling flag (offset o_q); the b-side pairs q's attracting with f's
/// repelling. The result is read in the mixed basis spanned by
/// span(P_f[..k]) ∩ span(P_q[k-1..]).
pub fn defect_prediction(f: &AdjointPair, q: &AdjointPair) -> Result<DVector<f64>, Error> {
    let d = f.dim();
    if q.dim() != d {
        return Err(Error::DimensionMismatch {
            lhs: (f.dim(), f.dim()),
            rhs: (q.dim(), q.dim()),
        });
    }
    let coords = SlCoords::new(d);
    let pf = spectral_data(&f.g)?
        .eigenbasis
        .ok_or_else(|| Error::InvalidArgument("f is not real-split loxodromic".into()))?;
    let pq = spectral_data(&q.g)?
        .eigenbasis
        .ok_or_else(|| Error::InvalidArgument("q is not real-split loxodromic".into()))?;
    let of = coords.vectorize(&offset_matrix(f)?);
    let oq = coords.vectorize(&offset_matrix(q)?);

    let a_plus = AffineFlag::new(
        coords.pattern_basis(&pf, Pattern::Upper)?,
        coords.pattern_basis(&pf, Pattern::UpperDiag)?,
        of.clone(),
    )?;
    let a_minus = AffineFlag::new(
        coords.pattern_basis(&pq, Pattern::Lower)?,
        coords.pattern_basis(&pq, Pattern::LowerDiag)?,
        oq.clone(),
    )?;
    let b_plus = AffineFlag::new(
        coords.pattern_basis(&pq, Pattern::Upper)?,
        coords.pattern_basis(&pq, Pattern::UpperDiag)?,
        oq,
    )?;
    let b_minus = AffineFlag::new(
        coords.pattern_basis(&pf, Pattern::Lower)?,
        coords.pattern_basis(&pf, Pattern::LowerDiag)?,
        of,
    )?;
    let ratio = affine_ratio_flags(&a_plus, &a_minus, &b_plus, &b_minus)?;
    let tau = coords.matricize(&ratio.translation_ambient);

    // mixed basis: column k spans the transverse-flag intersection line
    let s = mixed_flag_basis(&pf, &pq)?;
    let sinv = s
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numeric("mixed flag basis is singular".into()))?;
    let t = sinv * tau * s;
    Ok(DVector::from_iterator(d, (0..d).map(|i| t[(i, i)])))
}

/// Basis adapted to a transverse pair of full flags: column i spans
/// span(pf[..=i]) ∩ span(pq[i..]).
pub fn mixed_flag_basis(pf: &DMatrix<f64>, pq: &DMatrix<f64>) -> Result<DMatrix<f64>, Error> {
    let d = pf.nrows();
    let mut s = DMatrix::zeros(d, d);
    for i in 0..d {
        let v: DVector<f64> = if i == 0 {
            pf.column(0).into_owned()
        } else if i == d - 1 {
            pq.column(d - 1).into_owned()
        } else {
            let u = pf.columns(0, i + 1).into_owned();
            let w = pq.columns(i, d - i).into_owned();
            let inter = intersect_subspaces(&u, &w)?;
            if inter.ncols() != 1 {
                return Err(Error::Numeric(format!(
                    "flag intersection at position {i} has dimension {}",
                    inter.ncols()
                )));
            }
            inter.column(0).into_owned()
        };
        let n = v.norm();
        s.set_column(i, &(v / n));
    }
    Ok(s)
}

// ---------------------------------------------------------------------
// double-double word pipeline
// ---------------------------------------------------------------------

fn to_dd(m: &DMatrix<f64>) -> DdMatrix {
    DdMatrix::from_f64_slice(m.nrows(), m.ncols(), m.transpose().as_slice())
}

/// Apply a word of factors (leftmost acts last) to the columns of q.
fn apply_word(factors: &[&DdMatrix], q: &DdMatrix) -> DdMatrix {
    let mut z = q.clone();
    for f in factors.iter().rev() {
        z = f.matmul(&z);
    }
    z
}

/// Orthonormal subspace-iteration flags of a word: the leading k columns
/// converge to the span of the k most expanded directions.
fn word_flags(factors: &[&DdMatrix], d: usize, iters: usize) -> DdMatrix {
    let mut q = DdMatrix::identity(d);
    for _ in 0..iters {
        let z = apply_word(factors, &q);
        q = z.qr_q();
    }
    q
}

/// Modulus-ordered eigenbasis of a word of real-split factors, from the
/// forward and backward flag filtrations intersected pairwise. Column
/// scaling is irrelevant to every consumer.
fn word_eigenbasis(factors: &[&DdMatrix], d: usize, iters: usize) -> Result<DdMatrix, Error> {
    let inverses: Vec<DdMatrix> = factors
        .iter()
        .rev()
        .map(|f| {
            f.inverse()
                .ok_or_else(|| Error::Numeric("word factor is singular".into()))
        })
        .collect::<Result<_, _>>()?;
    let inv_refs: Vec<&DdMatrix> = inverses.iter().collect();
    let qf = word_flags(factors, d, iters);
    let qb = word_flags(&inv_refs, d, iters);
    let mut p = DdMatrix::zeros(d, d);
    for k in 0..d {
        let col: Vec<Dd> = if k == 0 {
            qf.column(0)
        } else if k == d - 1 {
            qb.column(0)
        } else {
            intersect_line_dd(&qf, k + 1, &qb, d - k)?
        };
        // normalize for conditioning
        let mut nrm = Dd::ZERO;
        for x in &col {
            nrm = nrm + *x * *x;
        }
        let nrm = nrm.sqrt();
        let col: Vec<Dd> = col.into_iter().map(|x| x / nrm).collect();
        p.set_column(k, &col);
    }
    Ok(p)
}

/// One-dimensional intersection of the leading `ka` columns of `qa` with
/// the leading `kb` columns of `qb` (ka + kb = d + 1): solved by pinning
/// the first coefficient and eliminating the rest.
fn intersect_line_dd(qa: &DdMatrix, ka: usize, qb: &DdMatrix, kb: usize) -> Result<Vec<Dd>, Error> {
    let d = qa.n_rows;
    debug_assert_eq!(ka + kb, d + 1);
    // unknowns: a_1..a_{ka-1}, b_0..b_{kb-1}; equation sum a_i qa_i - sum b_j qb_j = -qa_0
    let cols = ka - 1 + kb;
    let mut m = DdMatrix::zeros(d, cols);
    let mut rhs = vec![Dd::ZERO; d];
    for r in 0..d {
        rhs[r] = -qa[(r, 0)];
        for i in 1..ka {
            m[(r, i - 1)] = qa[(r, i)];
        }
        for j in 0..kb {
            m[(r, ka - 1 + j)] = -qb[(r, j)];
        }
    }
    let sol = m
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("flag intersection system is singular".into()))?;
    let mut v = vec![Dd::ZERO; d];
    for r in 0..d {
        let mut acc = qa[(r, 0)];
        for i in 1..ka {
            acc = acc + sol[i - 1] * qa[(r, i)];
        }
        v[r] = acc;
    }
    Ok(v)
}

/// diag(P⁻¹ U P) in double-double.
fn diag_conjugated(p: &DdMatrix, u: &DdMatrix) -> Result<Vec<Dd>, Error> {
    let d = p.n_rows;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Numeric("dd eigenbasis is singular".into()))?;
    let x = pinv.matmul(&u.matmul(p));
    Ok((0..d).map(|i| x[(i, i)]).collect())
}

/// Cocycle of the n-th power: u(gⁿ) = Σ_{i<n} Ad(g)ⁱ u, accumulated as
/// U ← u + g U g⁻¹.
fn cocycle_power(g: &DdMatrix, u: &DdMatrix, n: usize) -> Result<DdMatrix, Error> {
    let gi = g
        .inverse()
        .ok_or_else(|| Error::Numeric("group element is singular".into()))?;
    let mut acc = DdMatrix::zeros(g.n_rows, g.n_cols);
    for _ in 0..n {
        acc = u.add(&g.matmul(&acc.matmul(&gi)));
    }
    Ok(acc)
}

/// Additivity defect at word length n, plus the n-independent affine
/// ratio prediction and the contraction diagnostics ς(fⁿ), ς(qⁿ).
pub struct DefectReport {
    pub n: usize,
    pub defect: DVector<f64>,
    pub prediction: DVector<f64>,
    pub error: f64,
    pub contraction_f: f64,
    pub contraction_q: f64,
}

/// defect(n) = m(fⁿqⁿ) - m(fⁿ) - m(qⁿ), evaluated in double-double with
/// the exact split of the word cocycle described in the module docs.
pub fn additivity_defect(f: &AdjointPair, q: &AdjointPair, n: usize) -> Result<DefectReport, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let d = f.dim();
    let gf = to_dd(&f.g);
    let gq = to_dd(&q.g);
    let uf = to_dd(&f.u);
    let uq = to_dd(&q.u);

    // iteration budget: single letters converge like gap^-iters
    let letter_iters = 220;
    let word_iters = 40;

    let ufn = cocycle_power(&gf, &uf, n)?;
    let uqn = cocycle_power(&gq, &uq, n)?;

    let mut fwd: Vec<&DdMatrix> = Vec::with_capacity(2 * n);
    for _ in 0..n {
        fwd.push(&gf);
    }
    for _ in 0..n {
        fwd.push(&gq);
    }
    let mut rev: Vec<&DdMatrix> = Vec::with_capacity(2 * n);
    for _ in 0..n {
        rev.push(&gq);
    }
    for _ in 0..n {
        rev.push(&gf);
    }
    let p_word = word_eigenbasis(&fwd, d, word_iters)?;
    let p_word_rev = word_eigenbasis(&rev, d, word_iters)?;
    let pf = word_eigenbasis(&[&gf], d, letter_iters)?;
    let pq = word_eigenbasis(&[&gq], d, letter_iters)?;

    let m_word_f = diag_conjugated(&p_word, &ufn)?;
    let m_word_q = diag_conjugated(&p_word_rev, &uqn)?;
    let m_f = diag_conjugated(&pf, &ufn)?;
    let m_q = diag_conjugated(&pq, &uqn)?;

    let defect = DVector::from_iterator(
        d,
        (0..d).map(|i| (m_word_f[i] + m_word_q[i] - m_f[i] - m_q[i]).to_f64()),
    );
    let prediction = defect_prediction(f, q)?;
    let error = (&defect - &prediction).norm();

    // contraction diagnostics for the n-th powers
    let pow = |pair: &AdjointPair| -> Result<f64, Error> {
        let mut gn = DMatrix::<f64>::identity(d, d);
        for _ in 0..n {
            gn = &gn * &pair.g;
        }
        let mut un = DMatrix::<f64>::zeros(d, d);
        let gi = pair
            .g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numeric("singular".into()))?;
        for _ in 0..n {
            un = &pair.u + &pair.g * un * &gi;
        }
        affine_contraction(&AdjointPair::new(gn, un)?)
    };
    let contraction_f = pow(f).unwrap_or(f64::NAN);
    let contraction_q = pow(q).unwrap_or(f64::NAN);

    Ok(DefectReport {
        n,
        defect,
        prediction,
        error,
        contraction_f,
        contraction_q,
    })
}

/// Deterministic transverse loxodromic pair generator for experiments:
/// eigenvalue gaps land in [gap_lo, gap_hi], the eigenbases are mild
/// perturbations of the identity, and the directions are unit-ish
/// traceless matrices.
pub fn seeded_pair(d: usize, seed: u64, gap_lo: f64, gap_hi: f64) -> Result<(AdjointPair, AdjointPair), Error> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let make = |rng: &mut ChaCha8Rng| -> Result<AdjointPair, Error> {
        let mut lambda = Vec::with_capacity(d);
        let mut cur = 1.0;
        for _ in 0..d {
            lambda.push(cur);
            let gap = gap_lo + (gap_hi - gap_lo) * rng.gen::<f64>();
            cur /= gap;
        }
        // normalize to determinant one
        let prod: f64 = lambda.iter().product();
        let scale = prod.powf(-1.0 / d as f64);
        for l in &mut lambda {
            *l *= scale;
        }
        let h = loop {
            let m = DMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    1.0
                } else {
                    0.3 * (rng.gen::<f64>() - 0.5)
                }
            });
            if m.clone().lu().determinant().abs() > 0.2 {
                break m;
            }
        };
        let g = &h * DMatrix::from_diagonal(&DVector::from_vec(lambda)) * h.try_inverse().unwrap();
        let mut u = DMatrix::from_fn(d, d, |_, _| rng.gen::<f64>() - 0.5);
        let tr = (0..d).map(|i| u[(i, i)]).sum::<f64>() / d as f64;
        for i in 0..d {
            u[(i, i)] -= tr;
        }
        AdjointPair::new(g, u)
    };
    Ok((make(&mut rng)?, make(&mut rng)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn sl_coords_roundtrip() {
        let c = SlCoords::new(3);
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[0.3, 1.0, -2.0, 0.5, -0.8, 0.25, 1.5, 0.75, 0.5],
        );
        let v = c.vectorize(&m);
        let back = c.matricize(&v);
        assert!((back - m).norm() < 1e-14);
        assert_eq!(c.dim(), 8);
    }

    #[test]
    fn offset_matrix_fixes_affine_flags() {
        // direct construction: Ad(g)-affine map x ↦ g x g⁻¹ + u must map
        // O + o into itself, O = eigenbasis diagonal
        let (f, _) = seeded_pair(3, 3, 4.0, 8.0).unwrap();
        let o = offset_matrix(&f).unwrap();
        let gi = f.g.clone().try_inverse().unwrap();
        let image = &f.g * &o * &gi + &f.u;
        let drift = &image - &o; // must lie in O = P diag P⁻¹
        let spec = spectral_data(&f.g).unwrap();
        let p = spec.eigenbasis.unwrap();
        let pinv = p.clone().try_inverse().unwrap();
        let in_eigen = &pinv * drift * &p;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(
                        in_eigen[(i, j)].abs() < 1e-9,
                        "off-diagonal drift at ({i},{j}): {}",
                        in_eigen[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn commuting_pair_has_zero_defect() {
        // same eigenbasis: additivity is exact for every n
        let h = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.1, 1.0, 0.3, 0.0, 0.1, 1.0]);
        let hinv = h.clone().try_inverse().unwrap();
        let gf = &h * DMatrix::from_diagonal(&dvector![6.0, 1.0, 1.0 / 6.0]) * &hinv;
        let gq = &h * DMatrix::from_diagonal(&dvector![9.0, 1.0, 1.0 / 9.0]) * &hinv;
        let u = DMatrix::from_row_slice(3, 3, &[0.1, 0.4, -0.2, 0.3, -0.3, 0.6, 0.2, 0.1, 0.2]);
        let f = AdjointPair::new(gf, u.clone()).unwrap();
        let q = AdjointPair::new(gq, u).unwrap();
        for n in [1, 3, 5] {
            let rep = additivity_defect(&f, &q, n).unwrap();
            assert!(rep.defect.norm() < 1e-9, "n={n}: {}", rep.defect.norm());
            assert!(rep.prediction.norm() < 1e-9, "n={n}: {}", rep.prediction.norm());
        }
    }

    #[test]
    fn small_n_matches_f64_reference() {
        // at n = 1 the dd pipeline must agree with a direct f64 evaluation
        let (f, q) = seeded_pair(3, 9, 5.0, 9.0).unwrap();
        let rep = additivity_defect(&f, &q, 1).unwrap();
        let gfq = &f.g * &q.g;
        let gfi = f.g.clone().try_inverse().unwrap();
        let ufq = &f.u + &f.g * &q.u * gfi;
        let m_word = super::super::margulis_a_part(&gfq, &ufq).unwrap();
        let m_f = super::super::margulis_a_part(&f.g, &f.u).unwrap();
        let m_q = super::super::margulis_a_part(&q.g, &q.u).unwrap();
        let direct = m_word - m_f - m_q;
        assert!(
            (&rep.defect - &direct).norm() < 1e-8,
            "dd {} vs f64 {}",
            rep.defect,
            direct
        );
    }

    #[test]
    fn defect_converges_to_prediction() {
        let (f, q) = seeded_pair(3, 21, 5.0, 8.0).unwrap();
        let e4 = additivity_defect(&f, &q, 4).unwrap().error;
        let e7 = additivity_defect(&f, &q, 7).unwrap().error;
        assert!(e7 < e4, "error must shrink: e4 = {e4}, e7 = {e7}");
        assert!(e7 < 1e-3, "e7 = {e7}");
    }
}
