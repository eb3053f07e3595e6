//! The compatibility functional on the diagonal Cartan of sl_d: one
//! square-root coefficient per exponent, assembled into an explicit
//! coordinate form through the orthogonal Kostant basis, with the B/C/G2
//! restrictions in embedded coordinates.
//!
//! All radicands are exact rationals; the square root is the only
//! floating-point step.

use crate::exact::{factorial, falling_factorial, rat, rational_to_f64, Rational};
use crate::liealg::{kostant_vector_closed, Subtype};
use crate::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// The functional in explicit coordinates.
///
/// `coords` has length d and acts on trace-zero diagonal vectors by
/// `a ↦ Σ coords_i a_i`; `coeffs[e-1]` is the per-exponent scalar c_e
/// (zeroed entries mark annihilated exponents for subtypes). For subtypes
/// the embedded form on the subtype Cartan is in `embedded_coords`.
#[derive(Clone, Debug)]
pub struct KahlerFunctional {
    pub d: usize,
    pub subtype: Option<Subtype>,
    pub coeffs: Vec<f64>,
    pub radicands: Vec<Rational>,
    pub coords: Vec<f64>,
    pub embedded_coords: Option<Vec<f64>>,
}

/// Exact radicand of the exponent-e coefficient:
/// `(d+e)^(e-1) / (d-1)^(e) * 3*2^e / ((2e+1)! (d-1))` in falling
/// factorials. Positive for 1 <= e <= d-1.
pub fn kahler_radicand(d: usize, e: usize) -> Result<Rational, Error> {
    if d < 2 || e < 1 || e > d - 1 {
        return Err(Error::InvalidArgument(format!(
            "kahler radicand needs 1 <= e <= d-1, got d={d} e={e}"
        )));
    }
    let (di, ei) = (d as i64, e as i64);
    let num = falling_factorial(&rat(di + ei), ei - 1)
        * Rational::from_integer(BigInt::from(3) * BigInt::from(2).pow(e as u32));
    let den = falling_factorial(&rat(di - 1), ei)
        * Rational::from_integer(factorial(2 * ei + 1) * BigInt::from(di - 1));
    let r = num / den;
    if !r.is_positive() {
        return Err(Error::StructureViolation(format!(
            "kahler radicand for d={d} e={e} is not positive"
        )));
    }
    Ok(r)
}

/// Floating coefficient `c_e = sqrt(radicand)`.
pub fn kahler_coefficient(d: usize, e: usize) -> Result<f64, Error> {
    Ok(rational_to_f64(&kahler_radicand(d, e)?).sqrt())
}

fn assemble(d: usize, keep: impl Fn(usize) -> bool) -> Result<KahlerFunctional, Error> {
    let mut coords = vec![0.0; d];
    let mut coeffs = vec![0.0; d - 1];
    let mut radicands = vec![Rational::zero(); d - 1];
    for e in 1..d {
        radicands[e - 1] = kahler_radicand(d, e)?;
        let c = rational_to_f64(&radicands[e - 1]).sqrt();
        if !keep(e) {
            continue;
        }
        coeffs[e - 1] = c;
        let k = kostant_vector_closed(d, e)?;
        // weight-1 value and exact squared norm of kappa^e
        let w1 = rational_to_f64(&Rational::from_integer(k.entries[0].clone()));
        let norm2: BigInt = k.entries.iter().map(|x| x * x).sum();
        let norm2 = rational_to_f64(&Rational::from_integer(norm2));
        let scale = c * w1 / norm2;
        for (w, x) in coords.iter_mut().zip(&k.entries) {
            *w += scale * rational_to_f64(&Rational::from_integer(x.clone()));
        }
    }
    Ok(KahlerFunctional {
        d,
        subtype: None,
        coeffs,
        radicands,
        coords,
        embedded_coords: None,
    })
}

/// The functional of type A in coordinates: the unique (up to positive
/// scale) form with `φ(κ^e) = c_e ϖ₁(κ^e)` for every exponent, expanded
/// through the orthogonal decomposition `a = Σ_e <a,κ^e>/<κ^e,κ^e> κ^e`.
pub fn kahler_in_coordinates(d: usize) -> Result<KahlerFunctional, Error> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "coordinate form needs d >= 3, got {d}"
        )));
    }
    assemble(d, |_| true)
}

/// Subtype restriction: odd-exponent coefficients kept, even ones zeroed
/// (for G2 also the exponent-3 coefficient), expressed in the embedded
/// subtype Cartan coordinates.
///
/// C_n: a = (a₁..a_n,-a_n..-a₁) in sl_{2n};
/// B_n: a = (a₁..a_n,0,-a_n..-a₁) in sl_{2n+1};
/// G2: a = (a₁,a₂,a₁-a₂) inside the B₃ coordinates of sl_7.
pub fn kahler_subtype(subtype: Subtype, d: usize) -> Result<KahlerFunctional, Error> {
    let keep: Box<dyn Fn(usize) -> bool> = match subtype {
        Subtype::B | Subtype::C => Box::new(|e: usize| e % 2 == 1),
        Subtype::G2 => Box::new(|e: usize| e % 2 == 1 && e != 3),
    };
    match subtype {
        Subtype::C if d % 2 != 0 => {
            return Err(Error::InvalidArgument("sp needs even d".into()))
        }
        Subtype::B if d % 2 != 1 || d < 3 => {
            return Err(Error::InvalidArgument("so(n,n+1) needs odd d >= 3".into()))
        }
        Subtype::G2 if d != 7 => {
            return Err(Error::InvalidArgument("G2 restriction needs d = 7".into()))
        }
        _ => {}
    }
    let mut f = assemble(d, keep)?;
    let w = &f.coords;
    let embedded = match subtype {
        Subtype::C => {
            let n = d / 2;
            (0..n).map(|i| w[i] - w[d - 1 - i]).collect::<Vec<f64>>()
        }
        Subtype::B => {
            let n = (d - 1) / 2;
            (0..n).map(|i| w[i] - w[d - 1 - i]).collect::<Vec<f64>>()
        }
        Subtype::G2 => {
            let b: Vec<f64> = (0..3).map(|i| w[i] - w[6 - i]).collect();
            // a = (a1, a2, a1 - a2): coefficients on (a1, a2)
            vec![b[0] + b[2], b[1] - b[2]]
        }
    };
    f.subtype = Some(subtype);
    f.embedded_coords = Some(embedded);
    Ok(f)
}

/// Projects coordinates onto the trace-zero dual (subtracts the mean):
/// two coordinate forms agree as functionals on trace-zero vectors iff
/// they agree after this projection.
pub fn project_tracefree(w: &[f64]) -> Vec<f64> {
    let mean = w.iter().sum::<f64>() / w.len() as f64;
    w.iter().map(|x| x - mean).collect()
}

/// Normalizes by the first coordinate of absolute value above `tol`
/// (required positive for an up-to-positive-scale comparison; returns
/// None when the leading coordinate is negative or everything is tiny).
pub fn normalize_leading(w: &[f64], tol: f64) -> Option<Vec<f64>> {
    let lead = w.iter().find(|x| x.abs() > tol)?;
    if *lead <= 0.0 {
        return None;
    }
    Some(w.iter().map(|x| x / lead).collect())
}

/// Compares two coordinate forms up to positive scaling on trace-zero
/// vectors; returns the max per-coordinate relative error.
pub fn compare_up_to_scale(got: &[f64], want: &[f64]) -> Option<f64> {
    let g = normalize_leading(&project_tracefree(got), 1e-14)?;
    let w = normalize_leading(&project_tracefree(want), 1e-14)?;
    if g.len() != w.len() {
        return None;
    }
    let mut worst = 0.0f64;
    for (a, b) in g.iter().zip(&w) {
        let scale = a.abs().max(b.abs()).max(1.0);
        worst = worst.max((a - b).abs() / scale);
    }
    Some(worst)
}

/// Published closed forms used as comparison targets.
pub mod reference {
    /// sl(3): a₁ - a₃ - (√2/2) a₂, as coordinates.
    pub fn sl3() -> Vec<f64> {
        vec![1.0, -2f64.sqrt() / 2.0, -1.0]
    }
    /// sl(4): 20φ(a) = (6+√10/15)a₁ + (4-√10/15-√30/3)a₂ + (2+2√10/15-√30/3)a₃.
    pub fn sl4() -> Vec<f64> {
        let (s10, s30) = (10f64.sqrt(), 30f64.sqrt());
        vec![
            6.0 + s10 / 15.0,
            4.0 - s10 / 15.0 - s30 / 3.0,
            2.0 + 2.0 * s10 / 15.0 - s30 / 3.0,
            0.0,
        ]
    }
    /// sp(4): (3+√10/30)a₁ + (1-√10/10)a₂.
    pub fn sp4() -> Vec<f64> {
        let s10 = 10f64.sqrt();
        vec![3.0 + s10 / 30.0, 1.0 - s10 / 10.0]
    }
    /// sp(6): 35φ(a) = (5+211√35/3780)a₁ + (3-299√35/3780)a₂ + (1-79√35/1890)a₃.
    pub fn sp6() -> Vec<f64> {
        let s35 = 35f64.sqrt();
        vec![
            5.0 + 211.0 * s35 / 3780.0,
            3.0 - 299.0 * s35 / 3780.0,
            1.0 - 79.0 * s35 / 1890.0,
        ]
    }
    /// so(3,4): 28φ(a) coefficients.
    pub fn so34() -> Vec<f64> {
        let (s42, s10) = (42f64.sqrt(), 10f64.sqrt());
        vec![
            3.0 + s42 * s10 / 90.0 + s42 / 3780.0,
            2.0 - s42 * s10 / 90.0 - s42 / 945.0,
            1.0 - s42 * s10 / 90.0 + s42 / 756.0,
        ]
    }
    /// G2: (8+√42/315)a₁ + (2-√42/210)a₂.
    pub fn g2() -> Vec<f64> {
        let s42 = 42f64.sqrt();
        vec![8.0 + s42 / 315.0, 2.0 - s42 / 210.0]
    }
}
