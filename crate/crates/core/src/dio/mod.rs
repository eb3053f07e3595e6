//! Enumeration of simple-singular Kostant lines, the elementary families
//! that generate infinitely many of them, and the third-root Diophantine
//! analysis: quartic reduction, exact perfect-square scan, and the
//! elliptic-curve machinery in the submodules.

pub mod curve;
pub mod ellog;

use crate::liealg::simple_root_on_kostant;
use crate::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// A triple (d, e, j) with `σ_j(κ^e) = 0` exactly in sl_d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SingularTriple {
    pub d: usize,
    pub e: usize,
    pub j: usize,
}

/// Exact scan of all (d, e, j) with 3 <= d <= d_max, 1 <= e, j <= d-1,
/// returning the singular triples sorted by (d, e, j). Parallel over d
/// with a deterministic merge.
pub fn singular_scan(d_max: usize) -> Result<Vec<SingularTriple>, Error> {
    if d_max < 3 {
        return Err(Error::InvalidArgument(format!(
            "scan needs d_max >= 3, got {d_max}"
        )));
    }
    let mut out: Vec<SingularTriple> = (3..=d_max)
        .into_par_iter()
        .map(|d| {
            let mut hits = Vec::new();
            for e in 1..d {
                // kappa^e is computed once per (d,e) inside the dual-route check
                for j in 1..d {
                    let v = simple_root_on_kostant(d, e, j)?;
                    if v.is_zero() {
                        hits.push(SingularTriple { d, e, j });
                    }
                }
            }
            Ok::<_, Error>(hits)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// The five elementary families of singular triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// d = 2n, even exponent, middle root j = n.
    I,
    /// j = 2 and d = 1 + e(e+1)/2.
    II,
    /// (4m+3, 2m+1, 2m).
    III,
    /// e = 3, (d,j) along the orbit of [[4,-5],[1,-1]] from (7,2).
    IV,
    /// e = 4, orbits of [[6,-7],[1,-1]] from (11,2) and (17,3).
    V,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Family::I),
            "ii" | "2" => Ok(Family::II),
            "iii" | "3" => Ok(Family::III),
            "iv" | "4" => Ok(Family::IV),
            "v" | "5" => Ok(Family::V),
            other => Err(Error::InvalidArgument(format!("unknown family {other}"))),
        }
    }
}

/// Generates the members of a family with d below `bound`, re-verifying
/// each triple exactly through the dual-route root evaluation. A member
/// failing verification is a hard error.
pub fn family_members(family: Family, bound: usize) -> Result<Vec<SingularTriple>, Error> {
    if bound < 1 {
        return Err(Error::InvalidArgument("bound must be >= 1".into()));
    }
    let mut members = Vec::new();
    match family {
        Family::I => {
            for n in 2..=(bound / 2) {
                let d = 2 * n;
                for e in (2..d).step_by(2) {
                    members.push(SingularTriple { d, e, j: n });
                }
            }
        }
        Family::II => {
            for e in 2.. {
                let d = 1 + e * (e + 1) / 2;
                if d > bound {
                    break;
                }
                members.push(SingularTriple { d, e, j: 2 });
            }
        }
        Family::III => {
            for m in 1.. {
                let d = 4 * m + 3;
                if d > bound {
                    break;
                }
                members.push(SingularTriple { d, e: 2 * m + 1, j: 2 * m });
            }
        }
        Family::IV => {
            let (mut d, mut j) = (7i64, 2i64);
            while d <= bound as i64 {
                // the orbit stays on the conic -d^2 + 5dj - 5j^2 = 1
                if -d * d + 5 * d * j - 5 * j * j != 1 {
                    return Err(Error::StructureViolation(format!(
                        "family IV orbit left the conic at (d,j) = ({d},{j})"
                    )));
                }
                members.push(SingularTriple {
                    d: d as usize,
                    e: 3,
                    j: j as usize,
                });
                let (dn, jn) = (4 * d - 5 * j, d - j);
                d = dn;
                j = jn;
            }
        }
        Family::V => {
            for (d0, j0) in [(11i64, 2i64), (17, 3)] {
                let (mut d, mut j) = (d0, j0);
                while d <= bound as i64 {
                    members.push(SingularTriple {
                        d: d as usize,
                        e: 4,
                        j: j as usize,
                    });
                    let (dn, jn) = (6 * d - 7 * j, d - j);
                    d = dn;
                    j = jn;
                }
            }
        }
    }
    members.sort_unstable();
    members.par_iter().try_for_each(|m| {
        let v = simple_root_on_kostant(m.d, m.e, m.j)?;
        if !v.is_zero() {
            return Err(Error::StructureViolation(format!(
                "family {family:?} emitted ({}, {}, {}) but sigma_j(kappa^e) = {v} != 0",
                m.d, m.e, m.j
            )));
        }
        Ok(())
    })?;
    Ok(members)
}

/// The quartic polynomial whose zero set classifies third-root
/// singularity for 1 < e <= d-2:
/// `e⁴ - 6de² + 2e³ + 6d² - 6de + 11e² - 18d + 10e + 12`.
pub fn sigma3_poly(d: i64, e: i64) -> BigInt {
    let (d, e) = (BigInt::from(d), BigInt::from(e));
    e.pow(4) - 6 * &d * e.pow(2) + 2 * e.pow(3) + 6 * d.pow(2) - 6 * &d * &e
        + 11 * e.pow(2)
        - 18 * &d
        + 10 * &e
        + 12
}

/// One perfect-square hit of the quartic scan: `3(e⁴+2e³-e²-2e+3) = y²`
/// together with the integral d-values `(e²+e+3)/2 ± y/6` when they exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticSolution {
    pub e: u64,
    pub y: BigInt,
    pub d_plus: Option<BigInt>,
    pub d_minus: Option<BigInt>,
}

/// Exact perfect-square scan of `f(e) = 3(e⁴+2e³-e²-2e+3)` for
/// 0 <= e <= e_max using big-integer floor square roots. Parallel over
/// blocks with a deterministic merge.
pub fn quartic_solutions(e_max: u64) -> Vec<QuarticSolution> {
    let mut out: Vec<QuarticSolution> = (0..=e_max)
        .into_par_iter()
        .filter_map(|e| {
            let eb = BigInt::from(e);
            let f: BigInt = 3 * (eb.pow(4u32) + 2 * eb.pow(3u32) - eb.pow(2u32) - 2 * &eb + 3);
            debug_assert!(!f.is_negative());
            let r = f.sqrt();
            if &r * &r != f {
                return None;
            }
            let num = eb.pow(2u32) + &eb + 3; // d = num/2 ± y/6
            let branch = |sign: i64| -> Option<BigInt> {
                let v = 3 * &num + sign * &r;
                if (&v % 6) == BigInt::zero() {
                    Some(v / 6)
                } else {
                    None
                }
            };
            let d_plus = branch(1);
            let d_minus = branch(-1);
            Some(QuarticSolution { e, y: r, d_plus, d_minus })
        })
        .collect();
    out.sort_by_key(|s| s.e);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_contains_expected_triples() {
        let s = singular_scan(8).unwrap();
        assert!(s.contains(&SingularTriple { d: 4, e: 2, j: 2 }));
        assert!(s.contains(&SingularTriple { d: 6, e: 2, j: 3 }));
        assert!(s.contains(&SingularTriple { d: 7, e: 3, j: 2 }));
        // also the reflected root: kappa^e palindrome makes sigma_{d-j} vanish too
        assert!(s.contains(&SingularTriple { d: 7, e: 3, j: 5 }));
        assert!(singular_scan(2).is_err());
    }

    #[test]
    fn scan_is_sorted_and_deterministic() {
        let a = singular_scan(12).unwrap();
        let mut b = a.clone();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(a, singular_scan(12).unwrap());
    }

    #[test]
    fn families_small_members() {
        let f2 = family_members(Family::II, 20).unwrap();
        assert!(f2.contains(&SingularTriple { d: 4, e: 2, j: 2 }));
        assert!(f2.contains(&SingularTriple { d: 7, e: 3, j: 2 }));
        assert!(f2.contains(&SingularTriple { d: 11, e: 4, j: 2 }));

        let f3 = family_members(Family::III, 30).unwrap();
        assert!(f3.contains(&SingularTriple { d: 7, e: 3, j: 2 }));
        assert!(f3.contains(&SingularTriple { d: 11, e: 5, j: 4 }));

        let f4 = family_members(Family::IV, 130).unwrap();
        assert_eq!(
            f4,
            vec![
                SingularTriple { d: 7, e: 3, j: 2 },
                SingularTriple { d: 18, e: 3, j: 5 },
                SingularTriple { d: 47, e: 3, j: 13 },
                SingularTriple { d: 123, e: 3, j: 34 },
            ]
        );

        let f5 = family_members(Family::V, 90).unwrap();
        assert_eq!(
            f5,
            vec![
                SingularTriple { d: 11, e: 4, j: 2 },
                SingularTriple { d: 17, e: 4, j: 3 },
                SingularTriple { d: 52, e: 4, j: 9 },
                SingularTriple { d: 81, e: 4, j: 14 },
            ]
        );
    }

    #[test]
    fn sigma3_poly_zeros_and_involution() {
        assert!(sigma3_poly(6, 2).is_zero());
        assert!(sigma3_poly(17, 4).is_zero());
        assert!(sigma3_poly(58, 8).is_zero());
        for d in -10..=10 {
            for e in -10..=10 {
                assert_eq!(sigma3_poly(d, e), sigma3_poly(d, -e - 1));
            }
        }
    }

    #[test]
    fn quartic_small_scan() {
        let sols = quartic_solutions(1000);
        let es: Vec<u64> = sols.iter().map(|s| s.e).collect();
        assert_eq!(es, vec![0, 1, 2, 4, 8]);
        let by_e = |e: u64| sols.iter().find(|s| s.e == e).unwrap().clone();
        assert_eq!(by_e(2).y, BigInt::from(9));
        assert_eq!(by_e(2).d_plus, Some(BigInt::from(6)));
        assert_eq!(by_e(2).d_minus, Some(BigInt::from(3)));
        assert_eq!(by_e(8).y, BigInt::from(123));
        assert_eq!(by_e(8).d_plus, Some(BigInt::from(58)));
        assert_eq!(by_e(8).d_minus, Some(BigInt::from(17)));
        assert_eq!(by_e(0).y, BigInt::from(3));
        assert_eq!(by_e(0).d_plus, Some(BigInt::from(2)));
        assert_eq!(by_e(0).d_minus, Some(BigInt::from(1)));
    }
}
