//! Principal sl2 triples in sl_d, Kostant vectors through two independent
//! constructions (iterated brackets vs. the closed falling-factorial form),
//! root and weight functionals on the diagonal Cartan, exponent tables, and
//! the type-D specifics (anti-fixed line, D4 triality).

use crate::exact::{
    binomial, factorial, falling_factorial_int, rat, ratio, Rational,
};
use crate::matrix::ExactMatrix;
use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// The principal sl2 triple (E, F, H) of sl_d with
/// H = diag(d-1, d-3, ..., 1-d), E the unit superdiagonal and F the
/// subdiagonal with weights f(i) = i(d-i).
#[derive(Clone, Debug)]
pub struct PrincipalTriple {
    pub d: usize,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub h: ExactMatrix,
}

/// The structure weight `f(x) = x(d-x)` of the principal subdiagonal.
pub fn principal_weight(d: i64, x: i64) -> i64 {
    x * (d - x)
}

impl PrincipalTriple {
    /// Builds the triple and validates the sl2 relations
    /// [H,E] = 2E, [H,F] = -2F, [E,F] = H exactly.
    pub fn new(d: usize) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "principal triple needs d >= 2, got {d}"
            )));
        }
        let h = ExactMatrix::from_fn(d, d, |i, j| {
            if i == j {
                rat(d as i64 - 1 - 2 * i as i64)
            } else {
                Rational::zero()
            }
        });
        let e = ExactMatrix::from_fn(d, d, |i, j| {
            if j == i + 1 {
                rat(1)
            } else {
                Rational::zero()
            }
        });
        let f = ExactMatrix::from_fn(d, d, |i, j| {
            if i == j + 1 {
                rat(principal_weight(d as i64, i as i64))
            } else {
                Rational::zero()
            }
        });
        let t = PrincipalTriple { d, e, f, h };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), Error> {
        let he = self.h.bracket(&self.e)?;
        if he != self.e.scale(&rat(2)) {
            return Err(Error::StructureViolation("[H,E] != 2E".into()));
        }
        let hf = self.h.bracket(&self.f)?;
        if hf != self.f.scale(&rat(-2)) {
            return Err(Error::StructureViolation("[H,F] != -2F".into()));
        }
        let ef = self.e.bracket(&self.f)?;
        if ef != self.h {
            return Err(Error::StructureViolation("[E,F] != H".into()));
        }
        Ok(())
    }
}

/// The Kostant vector kappa^e of sl_d: the diagonal of
/// `(-1)^e (ad F)^e (E^e)`, carried with the canonical scaling of that
/// construction (no reduction to a primitive vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantVector {
    pub d: usize,
    pub e: usize,
    pub entries: Vec<BigInt>,
}

impl KostantVector {
    fn validate(&self) -> Result<(), Error> {
        let sum: BigInt = self.entries.iter().sum();
        if !sum.is_zero() {
            return Err(Error::StructureViolation(format!(
                "kappa^{} of sl_{} has nonzero trace {sum}",
                self.e, self.d
            )));
        }
        let sign = if self.e % 2 == 0 { 1 } else { -1 };
        for (a, b) in self.entries.iter().zip(self.entries.iter().rev()) {
            if *a != b * BigInt::from(sign) {
                return Err(Error::StructureViolation(format!(
                    "kappa^{} of sl_{} fails the palindrome law",
                    self.e, self.d
                )));
            }
        }
        Ok(())
    }

    /// Direction with content removed: entries divided by their gcd,
    /// sign fixed so the first nonzero entry is positive.
    pub fn primitive(&self) -> Vec<BigInt> {
        let mut g = BigInt::zero();
        for x in &self.entries {
            g = num_integer::Integer::gcd(&g, x);
        }
        if g.is_zero() {
            return self.entries.clone();
        }
        let mut out: Vec<BigInt> = self.entries.iter().map(|x| x / &g).collect();
        if let Some(first) = out.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut out {
                    *x = -x.clone();
                }
            }
        }
        out
    }
}

fn check_de(d: usize, e: usize) -> Result<(), Error> {
    if d < 2 || e < 1 || e > d - 1 {
        return Err(Error::InvalidArgument(format!(
            "exponent e={e} out of range for sl_{d} (need 1 <= e <= d-1)"
        )));
    }
    Ok(())
}

/// Kostant vector by the bracket construction: e iterated exact brackets
/// `(-1)^e (ad F)^e (E^e)`. The intermediate must come out exactly
/// diagonal; any off-diagonal residue aborts.
pub fn kostant_vector_bracket(d: usize, e: usize) -> Result<KostantVector, Error> {
    check_de(d, e)?;
    let triple = PrincipalTriple::new(d)?;
    let mut acc = triple.e.pow(e as u32);
    for _ in 0..e {
        acc = triple.f.bracket(&acc)?;
    }
    if e % 2 == 1 {
        acc = acc.scale(&rat(-1));
    }
    if !acc.is_diagonal() {
        return Err(Error::StructureViolation(format!(
            "(ad F)^{e}(E^{e}) in sl_{d} is not diagonal"
        )));
    }
    let entries: Vec<BigInt> = acc
        .diagonal_entries()
        .into_iter()
        .map(|r| {
            debug_assert!(num_traits::One::is_one(r.denom()));
            r.numer().clone()
        })
        .collect();
    let kv = KostantVector { d, e, entries };
    kv.validate()?;
    Ok(kv)
}

/// Falling factorials z^(0), z^(1), ..., z^(k) built incrementally.
fn falling_factorial_table(z: i64, k: i64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for i in 0..k {
        acc *= BigInt::from(z - i);
        out.push(acc.clone());
    }
    out
}

/// Single entry (1-based j) of κ^e in sl_d by the closed form
/// `(-1)^e e! Σ_{t=0..e} (-1)^t C(e,t)^2 (j-1)^(e-t) (d-j)^(t)`.
pub fn kostant_entry(d: usize, e: usize, j: usize) -> Result<BigInt, Error> {
    check_de(d, e)?;
    if j < 1 || j > d {
        return Err(Error::InvalidArgument(format!(
            "entry index j={j} out of range for sl_{d}"
        )));
    }
    let (di, ei, ji) = (d as i64, e as i64, j as i64);
    let ff_a = falling_factorial_table(ji - 1, ei); // (j-1)^(s)
    let ff_b = falling_factorial_table(di - ji, ei); // (d-j)^(t)
    let mut s = BigInt::zero();
    let mut binom = BigInt::one(); // C(e, t), updated incrementally
    for t in 0..=ei {
        if t > 0 {
            binom = binom * BigInt::from(ei - t + 1) / BigInt::from(t);
        }
        let term = &binom * &binom * &ff_a[(ei - t) as usize] * &ff_b[t as usize];
        if t % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let sign = BigInt::from(if e % 2 == 0 { 1 } else { -1 });
    Ok(sign * factorial(ei) * s)
}

/// Kostant vector by the closed form, entrywise via [`kostant_entry`].
pub fn kostant_vector_closed(d: usize, e: usize) -> Result<KostantVector, Error> {
    check_de(d, e)?;
    let entries: Vec<BigInt> = (1..=d)
        .map(|j| kostant_entry(d, e, j))
        .collect::<Result<_, _>>()?;
    let kv = KostantVector { d, e, entries };
    kv.validate()?;
    Ok(kv)
}

/// `σ_j(κ^e)` computed both as the entry difference and by the closed
/// form; the two routes must agree exactly.
pub fn simple_root_on_kostant(d: usize, e: usize, j: usize) -> Result<BigInt, Error> {
    check_de(d, e)?;
    if j < 1 || j > d - 1 {
        return Err(Error::InvalidArgument(format!(
            "root index j={j} out of range for sl_{d}"
        )));
    }
    let by_entries = kostant_entry(d, e, j)? - kostant_entry(d, e, j + 1)?;
    let by_closed = sigma_closed_form(d as i64, e as i64, j as i64);
    if by_entries != by_closed {
        return Err(Error::OracleDisagreement(format!(
            "sigma_{j}(kappa^{e}) in sl_{d}: entries give {by_entries}, closed form gives {by_closed}"
        )));
    }
    Ok(by_entries)
}

/// Closed form `(-1)^e (e+1)! Σ_{t=1..e} (-1)^t C(e,t) C(e,t-1)
/// (j-1)^(e-t) (d-1-j)^(t-1)` (falling factorials).
fn sigma_closed_form(d: i64, e: i64, j: i64) -> BigInt {
    let ff_a = falling_factorial_table(j - 1, e); // (j-1)^(s)
    let ff_b = falling_factorial_table(d - 1 - j, e); // (d-1-j)^(s)
    let mut s = BigInt::zero();
    let mut c_t = BigInt::from(e); // C(e, 1)
    let mut c_tm1 = BigInt::one(); // C(e, 0)
    for t in 1..=e {
        if t > 1 {
            c_tm1 = c_t.clone();
            c_t = &c_t * BigInt::from(e - t + 1) / BigInt::from(t);
        }
        let term = &c_t * &c_tm1 * &ff_a[(e - t) as usize] * &ff_b[(t - 1) as usize];
        if t % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let sign = BigInt::from(if e % 2 == 0 { 1 } else { -1 });
    sign * factorial(e + 1) * s
}

/// First entry of `κ^e`, validated against `e!(d-1)^(e)`.
pub fn weight1_on_kostant(d: usize, e: usize) -> Result<BigInt, Error> {
    let kv = kostant_vector_closed(d, e)?;
    let expected = factorial(e as i64) * falling_factorial_int(d as i64 - 1, e as i64);
    if kv.entries[0] != expected {
        return Err(Error::OracleDisagreement(format!(
            "weight-1 value of kappa^{e} in sl_{d}: first entry {} vs e!(d-1)^(e) = {expected}",
            kv.entries[0]
        )));
    }
    Ok(expected)
}

/// A linear functional on the diagonal Cartan of sl_d, stored by its
/// coordinates against the standard diagonal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional {
    pub d: usize,
    pub coords: Vec<Rational>,
}

impl LinearFunctional {
    /// Simple root `σ_j : a ↦ a_j - a_{j+1}` (1-based j).
    pub fn simple_root(d: usize, j: usize) -> Result<Self, Error> {
        if j < 1 || j > d - 1 {
            return Err(Error::InvalidArgument(format!(
                "simple root index j={j} out of range for sl_{d}"
            )));
        }
        let mut coords = vec![Rational::zero(); d];
        coords[j - 1] = rat(1);
        coords[j] = rat(-1);
        Ok(LinearFunctional { d, coords })
    }

    /// First fundamental weight `ϖ₁ : a ↦ a₁` (trace-zero convention).
    pub fn first_fundamental_weight(d: usize) -> Self {
        let mut coords = vec![Rational::zero(); d];
        coords[0] = rat(1);
        LinearFunctional { d, coords }
    }

    pub fn eval_int(&self, a: &[BigInt]) -> Rational {
        assert_eq!(a.len(), self.d);
        self.coords
            .iter()
            .zip(a)
            .map(|(c, x)| c * Rational::from_integer(x.clone()))
            .sum()
    }

    pub fn eval(&self, a: &[Rational]) -> Rational {
        assert_eq!(a.len(), self.d);
        self.coords.iter().zip(a).map(|(c, x)| c * x).sum()
    }
}

/// Cartan–Killing types with stored exponent tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl std::str::FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E6" => Ok(LieType::E6),
            "E7" => Ok(LieType::E7),
            "E8" => Ok(LieType::E8),
            "F4" => Ok(LieType::F4),
            "G2" => Ok(LieType::G2),
            other => Err(Error::InvalidArgument(format!("unknown Lie type {other}"))),
        }
    }
}

/// Exponent multiset of an irreducible reduced root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentTable {
    pub lie_type: LieType,
    pub rank: usize,
    pub exponents: Vec<usize>,
}

/// Exponents per type: A_d -> 1..d; B_d, C_d -> odd 1..2d-1;
/// D_d -> {1,3,...,2d-3} plus d-1 (repeated when d is even);
/// exceptional tables stored as data.
pub fn exponents(lie_type: LieType, rank: usize) -> Result<ExponentTable, Error> {
    let exps: Vec<usize> = match (lie_type, rank) {
        (LieType::A, d) if d >= 1 => (1..=d).collect(),
        (LieType::B, d) | (LieType::C, d) if d >= 2 => (0..d).map(|i| 2 * i + 1).collect(),
        (LieType::D, d) if d >= 3 => {
            let mut v: Vec<usize> = (0..d - 1).map(|i| 2 * i + 1).collect();
            v.push(d - 1);
            v.sort_unstable();
            v
        }
        (LieType::E6, 6) => vec![1, 4, 5, 7, 8, 11],
        (LieType::E7, 7) => vec![1, 5, 7, 9, 11, 13, 17],
        (LieType::E8, 8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
        (LieType::F4, 4) => vec![1, 5, 7, 11],
        (LieType::G2, 2) => vec![1, 5],
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unsupported type/rank combination {lie_type:?} rank {rank}"
            )))
        }
    };
    Ok(ExponentTable {
        lie_type,
        rank,
        exponents: exps,
    })
}

/// Verifies `[[F,E^e],E^k] ∈ R·E^{e+k-1}` and returns the proportionality
/// constant. For e = 3 and k <= d-3 the constant is -6k and must be
/// nonzero.
pub fn shifted_bracket_check(d: usize, e: usize, k: usize) -> Result<Rational, Error> {
    if e < 2 || k < 2 || e > d - 1 || k > d - 1 || e + k - 1 > d - 1 {
        return Err(Error::InvalidArgument(format!(
            "shifted bracket needs 2 <= e,k <= d-1 and e+k-1 <= d-1 (got d={d} e={e} k={k})"
        )));
    }
    let triple = PrincipalTriple::new(d)?;
    let fe = triple.f.bracket(&triple.e.pow(e as u32))?;
    let b = fe.bracket(&triple.e.pow(k as u32))?;
    let target = triple.e.pow((e + k - 1) as u32);
    let mut c: Option<Rational> = None;
    for i in 0..d {
        for j in 0..d {
            let t = &target[(i, j)];
            let v = &b[(i, j)];
            if t.is_zero() {
                if !v.is_zero() {
                    return Err(Error::StructureViolation(format!(
                        "[[F,E^{e}],E^{k}] in sl_{d} is not proportional to E^{}",
                        e + k - 1
                    )));
                }
            } else {
                let q = v / t;
                match &c {
                    None => c = Some(q),
                    Some(prev) if *prev != q => {
                        return Err(Error::StructureViolation(format!(
                            "[[F,E^{e}],E^{k}] in sl_{d} is not proportional to E^{}",
                            e + k - 1
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    let c = c.expect("E^{e+k-1} is nonzero in the allowed range");
    if e == 3 && k <= d - 3 && c.is_zero() {
        return Err(Error::StructureViolation(format!(
            "[[F,E^3],E^{k}] vanished for k <= d-3 in sl_{d}"
        )));
    }
    Ok(c)
}

/// Type-D data: the anti-fixed Kostant line direction in the R^n Cartan,
/// plus (for n = 4 only) the triality matrix and the image of the
/// anti-fixed line under it.
#[derive(Clone, Debug)]
pub struct TypeDData {
    pub n: usize,
    pub antifixed_line: Vec<Rational>,
    pub triality: Option<ExactMatrix>,
    pub triality_image: Option<Vec<Rational>>,
}

pub fn type_d_data(n: usize) -> Result<TypeDData, Error> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "type D needs rank n >= 3, got {n}"
        )));
    }
    let mut antifixed = vec![Rational::zero(); n];
    antifixed[n - 1] = rat(1);
    if n != 4 {
        return Ok(TypeDData {
            n,
            antifixed_line: antifixed,
            triality: None,
            triality_image: None,
        });
    }
    let signs: [[i64; 4]; 4] = [
        [1, 1, 1, -1],
        [1, 1, -1, 1],
        [1, -1, 1, 1],
        [1, -1, -1, -1],
    ];
    let tau = ExactMatrix::from_fn(4, 4, |i, j| ratio(signs[i][j], 2));
    // orthogonality is an exact identity of the triality matrix
    if &tau.transpose() * &tau != ExactMatrix::identity(4) {
        return Err(Error::StructureViolation("triality matrix is not orthogonal".into()));
    }
    let image: Vec<Rational> = (0..4).map(|i| tau[(i, 3)].clone()).collect();
    Ok(TypeDData {
        n,
        antifixed_line: antifixed,
        triality: Some(tau),
        triality_image: Some(image),
    })
}

/// Subtypes whose adjoint factors split the sl_d exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subtype {
    B,
    C,
    G2,
}

impl std::str::FromStr for Subtype {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "B" => Ok(Subtype::B),
            "C" => Ok(Subtype::C),
            "G2" => Ok(Subtype::G2),
            other => Err(Error::InvalidArgument(format!("unknown subtype {other}"))),
        }
    }
}

/// Partition of the sl_d exponents {1..d-1} into the adjoint factors of
/// the embedded subtype: odd vs. even for B/C, and {1,5} | {3} | {2,4,6}
/// for G2 in sl_7.
pub fn adjoint_factor_split(subtype: Subtype, d: usize) -> Result<Vec<Vec<usize>>, Error> {
    match subtype {
        Subtype::B => {
            if d < 3 || d % 2 == 0 {
                return Err(Error::InvalidArgument(format!(
                    "so(n,n+1) embeds in odd dimension; got d={d}"
                )));
            }
        }
        Subtype::C => {
            if d < 2 || d % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "sp(d) needs even d; got d={d}"
                )));
            }
        }
        Subtype::G2 => {
            if d != 7 {
                return Err(Error::InvalidArgument(format!(
                    "the G2 fundamental representation lives in d=7; got d={d}"
                )));
            }
            return Ok(vec![vec![1, 5], vec![3], vec![2, 4, 6]]);
        }
    }
    let odd: Vec<usize> = (1..d).filter(|e| e % 2 == 1).collect();
    let even: Vec<usize> = (1..d).filter(|e| e % 2 == 0).collect();
    Ok(vec![odd, even])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_triple_small() {
        let t = PrincipalTriple::new(4).unwrap();
        assert_eq!(t.h, ExactMatrix::diagonal(&[3, 1, -1, -3]));
        let t2 = PrincipalTriple::new(2).unwrap();
        assert_eq!(t2.f[(1, 0)], rat(1));
        let t5 = PrincipalTriple::new(5).unwrap();
        let sub: Vec<Rational> = (1..5).map(|i| t5.f[(i, i - 1)].clone()).collect();
        assert_eq!(sub, vec![rat(4), rat(6), rat(6), rat(4)]);
        assert!(PrincipalTriple::new(1).is_err());
    }

    #[test]
    fn kostant_table_rows() {
        let k32 = kostant_vector_bracket(3, 2).unwrap();
        assert_eq!(k32.entries, to_big(&[4, -8, 4]));
        let k43 = kostant_vector_closed(4, 3).unwrap();
        assert_eq!(k43.entries, to_big(&[36, -108, 108, -36]));
        let k73 = kostant_vector_closed(7, 3).unwrap();
        assert_eq!(k73.entries, to_big(&[720, -720, -720, 0, 720, 720, -720]));
    }

    #[test]
    fn kostant_e1_is_h_diagonal() {
        for d in 2..=9usize {
            let k = kostant_vector_bracket(d, 1).unwrap();
            let want: Vec<BigInt> = (0..d).map(|i| BigInt::from(d as i64 - 1 - 2 * i as i64)).collect();
            assert_eq!(k.entries, want, "d={d}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(simple_root_on_kostant(4, 2, 2).unwrap(), BigInt::zero());
        assert_eq!(simple_root_on_kostant(7, 3, 2).unwrap(), BigInt::zero());
        // e = d-1 is never singular
        for d in 3..=9usize {
            for j in 1..d {
                assert!(!simple_root_on_kostant(d, d - 1, j).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn weight1_examples() {
        assert_eq!(weight1_on_kostant(4, 2).unwrap(), BigInt::from(12));
        assert_eq!(weight1_on_kostant(6, 5).unwrap(), BigInt::from(14400));
        for d in 2..=9usize {
            assert_eq!(weight1_on_kostant(d, 1).unwrap(), BigInt::from(d as i64 - 1));
        }
    }

    #[test]
    fn exponent_tables() {
        assert_eq!(exponents(LieType::A, 4).unwrap().exponents, vec![1, 2, 3, 4]);
        assert_eq!(exponents(LieType::D, 4).unwrap().exponents, vec![1, 3, 3, 5]);
        assert_eq!(exponents(LieType::G2, 2).unwrap().exponents, vec![1, 5]);
        assert_eq!(exponents(LieType::B, 3).unwrap().exponents, vec![1, 3, 5]);
        assert!(exponents(LieType::G2, 3).is_err());
    }

    #[test]
    fn shifted_bracket_coefficients() {
        // e = 3: coefficient is -6k across the allowed range
        for d in 6..=9usize {
            for k in 2..=(d - 4) {
                let c = shifted_bracket_check(d, 3, k).unwrap();
                assert_eq!(c, rat(-6 * k as i64), "d={d} k={k}");
            }
            let k = d - 3;
            let c = shifted_bracket_check(d, 3, k).unwrap();
            assert_eq!(c, rat(-2 * 3 * (d as i64 - 3)), "d={d} k=d-3");
        }
        // degenerate: e+k-1 = d is out of range since E^d = 0
        assert!(shifted_bracket_check(6, 3, 4).is_err());
    }

    #[test]
    fn type_d() {
        let d5 = type_d_data(5).unwrap();
        assert_eq!(d5.antifixed_line, vec![rat(0), rat(0), rat(0), rat(0), rat(1)]);
        assert!(d5.triality.is_none());

        let d4 = type_d_data(4).unwrap();
        let tau = d4.triality.unwrap();
        assert_eq!(&tau.transpose() * &tau, ExactMatrix::identity(4));
        let img = d4.triality_image.unwrap();
        assert_eq!(img, vec![ratio(-1, 2), ratio(1, 2), ratio(1, 2), ratio(-1, 2)]);
        // direction is proportional to (-1,1,1,-1)
        let scale = &img[0] / rat(-1);
        for (x, w) in img.iter().zip([-1i64, 1, 1, -1]) {
            assert_eq!(*x, rat(w) * scale.clone());
        }
        assert!(type_d_data(2).is_err());
    }

    #[test]
    fn adjoint_split() {
        assert_eq!(
            adjoint_factor_split(Subtype::C, 4).unwrap(),
            vec![vec![1, 3], vec![2]]
        );
        assert_eq!(
            adjoint_factor_split(Subtype::G2, 7).unwrap(),
            vec![vec![1, 5], vec![3], vec![2, 4, 6]]
        );
        assert_eq!(
            adjoint_factor_split(Subtype::B, 7).unwrap(),
            vec![vec![1, 3, 5], vec![2, 4, 6]]
        );
        assert!(adjoint_factor_split(Subtype::B, 6).is_err());
        assert!(adjoint_factor_split(Subtype::C, 5).is_err());
        assert!(adjoint_factor_split(Subtype::G2, 8).is_err());
    }

    #[test]
    fn functional_evaluation() {
        let sigma2 = LinearFunctional::simple_root(4, 2).unwrap();
        let k = kostant_vector_closed(4, 2).unwrap();
        assert_eq!(sigma2.eval_int(&k.entries), rat(0));
        let w1 = LinearFunctional::first_fundamental_weight(4);
        assert_eq!(w1.eval_int(&k.entries), rat(12));
        assert!(LinearFunctional::simple_root(4, 4).is_err());
    }

    #[test]
    fn primitive_direction() {
        let k = kostant_vector_closed(8, 7).unwrap();
        assert_eq!(k.primitive(), to_big(&[1, -7, 21, -35, 35, -21, 7, -1]));
        assert_eq!(k.entries[0], BigInt::from(25401600));
    }

    fn to_big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }
}
