//! Sampling the cone of Jordan variations: enumerate reduced words in
//! the generators, push the cocycle along, and record the Jordan
//! projection and its variation (the Margulis a-part) for every
//! loxodromic word.

use super::{margulis_a_part, spectral_data};
use crate::Error;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// One generator with its tangent direction.
#[derive(Clone, Debug)]
pub struct Generator {
    pub g: DMatrix<f64>,
    pub u: DMatrix<f64>,
}

/// A sampled word: letters are ±(index+1), with negative meaning the
/// inverse generator.
#[derive(Clone, Debug)]
pub struct VariationSample {
    pub word: Vec<i32>,
    pub lambda: DVector<f64>,
    pub dlambda: DVector<f64>,
}

/// Full sampling result with skip accounting.
#[derive(Clone, Debug)]
pub struct VariationCone {
    pub samples: Vec<VariationSample>,
    pub words_visited: usize,
    pub skipped_non_loxodromic: usize,
}

/// The cocycle rule u(γh) = u(γ) + Ad(ρ(γ)) u(h); inverses get
/// u(γ⁻¹) = -Ad(ρ(γ)⁻¹) u(γ).
fn letter_data(gens: &[Generator], letter: i32) -> Result<(DMatrix<f64>, DMatrix<f64>), Error> {
    let idx = letter.unsigned_abs() as usize - 1;
    let gen = gens.get(idx).ok_or_else(|| {
        Error::InvalidArgument(format!("letter {letter} has no generator"))
    })?;
    if letter > 0 {
        Ok((gen.g.clone(), gen.u.clone()))
    } else {
        let gi = gen
            .g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numeric("generator is singular".into()))?;
        let u_inv = -(&gi * &gen.u * &gen.g);
        Ok((gi, u_inv))
    }
}

fn extend(
    gens: &[Generator],
    word_g: &DMatrix<f64>,
    word_u: &DMatrix<f64>,
    letter: i32,
) -> Result<(DMatrix<f64>, DMatrix<f64>), Error> {
    let (lg, lu) = letter_data(gens, letter)?;
    let g = word_g * &lg;
    let word_g_inv = word_g
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numeric("word image is singular".into()))?;
    let u = word_u + word_g * lu * word_g_inv;
    Ok((g, u))
}

struct Walker<'a> {
    gens: &'a [Generator],
    max_len: usize,
    samples: Vec<VariationSample>,
    visited: usize,
    skipped: usize,
}

impl Walker<'_> {
    fn visit(
        &mut self,
        word: &mut Vec<i32>,
        g: &DMatrix<f64>,
        u: &DMatrix<f64>,
    ) -> Result<(), Error> {
        self.visited += 1;
        match spectral_data(g) {
            Ok(spec) if spec.loxodromic && spec.eigenbasis.is_some() => {
                let lambda = super::jordan_projection(g)?;
                let dlambda = margulis_a_part(g, u)?;
                self.samples.push(VariationSample {
                    word: word.clone(),
                    lambda,
                    dlambda,
                });
            }
            _ => self.skipped += 1,
        }
        if word.len() == self.max_len {
            return Ok(());
        }
        let m = self.gens.len() as i32;
        for idx in 1..=m {
            for letter in [idx, -idx] {
                if let Some(&last) = word.last() {
                    if last == -letter {
                        continue; // reduced words only
                    }
                }
                let (g2, u2) = extend(self.gens, g, u, letter)?;
                word.push(letter);
                self.visit(word, &g2, &u2)?;
                word.pop();
            }
        }
        Ok(())
    }
}

/// Enumerates every reduced word of length 1..=word_len, in depth-first
/// lexicographic order, parallel over the first letter with a
/// deterministic merge. Non-loxodromic (or non-real-split) words are
/// skipped and counted.
pub fn sample_variation_cone(
    gens: &[Generator],
    word_len: usize,
) -> Result<VariationCone, Error> {
    if gens.is_empty() || word_len == 0 {
        return Err(Error::InvalidArgument(
            "need at least one generator and word_len >= 1".into(),
        ));
    }
    for g in gens {
        let d = g.g.nrows();
        if !g.g.is_square() || g.u.nrows() != d || g.u.ncols() != d {
            return Err(Error::DimensionMismatch {
                lhs: (g.g.nrows(), g.g.ncols()),
                rhs: (g.u.nrows(), g.u.ncols()),
            });
        }
    }
    let m = gens.len() as i32;
    let first_letters: Vec<i32> = (1..=m).flat_map(|i| [i, -i]).collect();
    let parts: Vec<Result<Walker, Error>> = first_letters
        .par_iter()
        .map(|&letter| {
            let (g, u) = letter_data(gens, letter)?;
            let mut w = Walker {
                gens,
                max_len: word_len,
                samples: Vec::new(),
                visited: 0,
                skipped: 0,
            };
            let mut word = vec![letter];
            w.visit(&mut word, &g, &u)?;
            Ok(w)
        })
        .collect();
    let mut samples = Vec::new();
    let mut visited = 0;
    let mut skipped = 0;
    for p in parts {
        let w = p?;
        samples.extend(w.samples);
        visited += w.visited;
        skipped += w.skipped;
    }
    Ok(VariationCone {
        samples,
        words_visited: visited,
        skipped_non_loxodromic: skipped,
    })
}

/// Coboundary cocycle over the generators: u(γ) = X - Ad(ρ(γ)) X. Its
/// Jordan variations vanish identically.
pub fn coboundary_generators(
    group_elements: &[DMatrix<f64>],
    x: &DMatrix<f64>,
) -> Result<Vec<Generator>, Error> {
    group_elements
        .iter()
        .map(|g| {
            let gi = g
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Numeric("generator is singular".into()))?;
            let u = x - g * x * gi;
            Ok(Generator { g: g.clone(), u })
        })
        .collect()
}

/// Seeded generator pairs for the command-line sampler: real-split
/// loxodromic elements with mild basis skew and random traceless
/// directions.
pub fn seeded_generators(d: usize, count: usize, seed: u64) -> Result<Vec<Generator>, Error> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut lambda = Vec::with_capacity(d);
        let mut cur = 1.0;
        for _ in 0..d {
            lambda.push(cur);
            cur /= 3.0 + 4.0 * rng.gen::<f64>();
        }
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
                    0.4 * (rng.gen::<f64>() - 0.5)
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
        out.push(Generator { g, u });
    }
    Ok(out)
}
