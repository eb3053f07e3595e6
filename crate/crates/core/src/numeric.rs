//! Shared numeric machinery: arithmetic-geometric means (real and
//! complex), adaptive Gauss–Kronrod quadrature on finite intervals, and
//! scalar bisection.

use crate::Error;
use num_complex::Complex64;

/// Real arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0);
    for _ in 0..64 {
        let (an, bn) = ((a + b) / 2.0, (a * b).sqrt());
        if (an - bn).abs() <= 1e-17 * an.abs() {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Complex AGM with the standard optimal branch: at each step the square
/// root is chosen with |a' - b'| <= |a' + b'|.
pub fn agm_complex(mut a: Complex64, mut b: Complex64) -> Complex64 {
    for _ in 0..96 {
        let an = (a + b) / 2.0;
        let mut bn = (a * b).sqrt();
        if (an - bn).norm() > (an + bn).norm() {
            bn = -bn;
        }
        if (an - bn).norm() <= 1e-16 * an.norm() {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

// Gauss-Kronrod 7-15 pair on [-1, 1].
const XGK: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];
const WGK: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];
const WG: [f64; 7] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let v = f(c + h * x);
        kron += wk * v;
        if i % 2 == 1 {
            gauss += WG[i / 2] * v;
        }
    }
    (kron * h, (kron - gauss).abs() * h.abs())
}

/// Adaptive Gauss–Kronrod integration of `f` over the finite interval
/// [a, b] to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, Error> {
    #[derive(Clone, Copy)]
    struct Seg {
        a: f64,
        b: f64,
        val: f64,
        err: f64,
    }
    let (val, err) = gk15(&f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    for _ in 0..10_000 {
        let total_err: f64 = segs.iter().map(|s| s.err).sum();
        if total_err <= tol {
            return Ok(segs.iter().map(|s| s.val).sum());
        }
        // split the worst segment
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .unwrap();
        let s = segs.swap_remove(idx);
        let m = 0.5 * (s.a + s.b);
        if m <= s.a || m >= s.b {
            // interval exhausted at machine precision; accept it
            segs.push(Seg { err: 0.0, ..s });
            continue;
        }
        let (v1, e1) = gk15(&f, s.a, m);
        let (v2, e2) = gk15(&f, m, s.b);
        segs.push(Seg { a: s.a, b: m, val: v1, err: e1 });
        segs.push(Seg { a: m, b: s.b, val: v2, err: e2 });
    }
    Err(Error::Numeric(
        "adaptive quadrature failed to converge".into(),
    ))
}

/// Bisection for a root of `f` on [lo, hi]; requires a sign change.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> Result<f64, Error> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Numeric(format!(
            "bisection endpoints do not bracket a root: f({lo}) = {flo}, f({hi}) = {fhi}"
        )));
    }
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrate_polynomial() {
        let v = integrate(|x| x * x, 0.0, 3.0, 1e-13).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
    }

    #[test]
    fn integrate_needs_adaptivity() {
        // integrable sqrt singularity after substitution-free setup
        let v = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn agm_known_value() {
        // Gauss's lemniscate constant: AGM(1, sqrt(2)) = 1.19814023...
        let m = agm(1.0, 2f64.sqrt());
        assert!((m - 1.198140234735592).abs() < 1e-14);
    }

    #[test]
    fn bisect_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!(bisect(|x| x * x + 1.0, 0.0, 1.0, 10).is_err());
    }
}
