//! Exact scalar arithmetic and the combinatorial primitives (falling
//! factorials, binomials, finite differences) behind every exact formula
//! in the crate.
//!
//! All scalars are arbitrary-precision rationals kept in lowest terms with
//! positive denominator, so equality is structural and tables can be
//! compared literally.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always normalized (lowest terms, denominator > 0).
pub type Rational = BigRational;

/// Convenience constructor from an `i64`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor `p/q` from `i64`s. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Falling factorial `z^(k) = z (z-1) ... (z-k+1)`.
///
/// By convention the empty product (`k == 0`) is 1 and a negative index
/// yields 0.
pub fn falling_factorial(z: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= z - rat(i);
    }
    acc
}

/// Integer falling factorial, exact in `BigInt`.
pub fn falling_factorial_int(z: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(z - i);
    }
    acc
}

/// Binomial coefficient by the multiplicative formula, exact in `BigInt`.
/// Zero outside the Pascal triangle.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as a `BigInt`.
pub fn factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// A deterministic map from integer arguments to exact rationals, the
/// carrier for finite-difference calculus on integer sequences.
pub trait IntSeqFunction {
    fn eval(&self, x: i64) -> Rational;
}

impl<F: Fn(i64) -> Rational> IntSeqFunction for F {
    fn eval(&self, x: i64) -> Rational {
        self(x)
    }
}

/// k-th forward difference at `x`:
/// `Δᵏ g(x) = Σ_{i=0..k} (-1)ⁱ C(k,i) g(x+k-i)`.
pub fn finite_difference<G: IntSeqFunction>(g: &G, k: i64, x: i64) -> Rational {
    assert!(k >= 0, "finite_difference: order must be non-negative");
    let mut acc = Rational::zero();
    for i in 0..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::from_integer(binomial(k, i) * BigInt::from(sign));
        acc += coeff * g.eval(x + k - i);
    }
    acc
}

/// Serialize a rational as `p/q`, or just `p` when `q == 1`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the `p/q` (or plain `p`) form produced by [`rational_to_string`].
pub fn rational_from_string(s: &str) -> Option<Rational> {
    let mut parts = s.splitn(2, '/');
    let p: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(Rational::from_integer(p)),
        Some(q) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// Best-effort conversion to `f64` (numerator/denominator as floats after
/// reducing through a common power of two when huge).
pub fn rational_to_f64(r: &Rational) -> f64 {
    let n = bigint_to_f64(r.numer());
    let d = bigint_to_f64(r.denom());
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    // fall back to digit strings with exponent balancing
    let ns = r.numer().abs().to_string();
    let ds = r.denom().to_string();
    let sign = if r.numer().is_negative() { -1.0 } else { 1.0 };
    let ne = ns.len() as i32;
    let de = ds.len() as i32;
    let nh: f64 = ns[..ns.len().min(17)].parse().unwrap_or(0.0);
    let dh: f64 = ds[..ds.len().min(17)].parse().unwrap_or(1.0);
    let exp = (ne - ns.len().min(17) as i32) - (de - ds.len().min(17) as i32);
    sign * (nh / dh) * 10f64.powi(exp)
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    // `BigInt` implements conversion via `to_string` only approximately;
    // use the built-in ToPrimitive which saturates to None on overflow.
    num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_basics() {
        assert_eq!(falling_factorial(&rat(5), 2), rat(20));
        assert_eq!(falling_factorial(&rat(9), 0), rat(1));
        assert_eq!(falling_factorial(&ratio(7, 2), 0), rat(1));
        assert_eq!(falling_factorial(&rat(7), -3), rat(0));
        assert_eq!(falling_factorial(&rat(0), 0), rat(1));
    }

    #[test]
    fn falling_factorial_recurrence() {
        for z in -6..=8 {
            for k in 1..=6 {
                let lhs = falling_factorial(&rat(z), k);
                let rhs = rat(z) * falling_factorial(&rat(z - 1), k - 1);
                assert_eq!(lhs, rhs, "z={z} k={k}");
            }
        }
    }

    #[test]
    fn finite_difference_of_falling_factorial() {
        // Δ x^(k) = k x^(k-1)
        for k in 1..=5i64 {
            for x in -4..=6 {
                let g = move |t: i64| falling_factorial(&rat(t), k);
                let lhs = finite_difference(&g, 1, x);
                let rhs = rat(k) * falling_factorial(&rat(x), k - 1);
                assert_eq!(lhs, rhs, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn finite_difference_constant_and_square() {
        let c = |_: i64| ratio(3, 7);
        assert_eq!(finite_difference(&c, 1, 12), rat(0));
        let sq = |t: i64| rat(t * t);
        assert_eq!(finite_difference(&sq, 2, 0), rat(2));
    }

    #[test]
    fn rational_round_trip() {
        for (p, q) in [(3, 4), (-10, 5), (0, 9), (22, 7)] {
            let r = ratio(p, q);
            let s = rational_to_string(&r);
            assert_eq!(rational_from_string(&s).unwrap(), r);
        }
        assert_eq!(rational_to_string(&ratio(-10, 5)), "-2");
    }
}
