//! The generalized logistic mixture model.
//!
//! A model is `q` components, each a triple `(alpha_j, beta_j-row, C_j)` of
//! a stability index, nonnegative coordinate weights, and a max-stable
//! copula, with the columns of the weight matrix summing to 1. Its copula
//! has exponent
//!
//! ```text
//! l(x) = sum_j [ l_j( (beta_j1 x_1)^(1/alpha_j), ..., (beta_jd x_d)^(1/alpha_j) ) ]^alpha_j
//! ```
//!
//! which is max-stable with uniform margins forced by the column-sum
//! constraint. Weight-zero coordinates contribute exactly zero to the inner
//! vector (never `0 * inf`), and `alpha_j = 1` short-circuits the power
//! round trip so the degenerate mixture collapses bit-for-bit onto the
//! component copula.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::copula::{neg_ln, weighted, CopulaKind, MaxStableCopula};
use crate::error::{Error, Result, Violation};
use crate::stable::{sample_positive_stable, StableAlpha};
use crate::subset::{SubsetMask, MAX_DIM};

/// One mixture component: stability index, weight row, component copula.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureComponent {
    alpha: StableAlpha,
    weights: Vec<f64>,
    copula: MaxStableCopula,
}

impl MixtureComponent {
    /// Build a component; the weight row length must match the copula
    /// dimension. Range constraints are checked by model validation.
    pub fn new(alpha: StableAlpha, weights: Vec<f64>, copula: MaxStableCopula) -> Result<Self> {
        if weights.len() != copula.dim() {
            return Err(Error::DimensionMismatch {
                expected: copula.dim(),
                actual: weights.len(),
            });
        }
        Ok(MixtureComponent {
            alpha,
            weights,
            copula,
        })
    }

    pub fn alpha(&self) -> StableAlpha {
        self.alpha
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn copula(&self) -> &MaxStableCopula {
        &self.copula
    }
}

/// The full mixture model of dimension `d` with `q` components.
#[derive(Debug, Clone, PartialEq)]
pub struct MevMixModel {
    dim: usize,
    components: Vec<MixtureComponent>,
}

/// Draw count per deterministic random stream. Each chunk of draws owns an
/// independent stream indexed by chunk number, so output is identical for a
/// given seed regardless of how chunks are scheduled across threads.
const SAMPLE_CHUNK: usize = 8192;

impl MevMixModel {
    /// Assemble a model from components of equal dimension. Numeric
    /// constraints are checked by [`validate`](Self::validate), not here.
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        let dim = match components.first() {
            Some(c) => c.copula.dim(),
            None => {
                return Err(Error::Config {
                    detail: "model needs at least one component".to_string(),
                })
            }
        };
        for c in &components {
            if c.copula.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: c.copula.dim(),
                });
            }
        }
        Ok(MevMixModel { dim, components })
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of mixture components `q`.
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Check all model constraints: weight nonnegativity and column sums,
    /// stability indices in `(0, 1]`, and every component copula's own
    /// constraints. Empty report means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dim == 0 {
            out.push(Violation::ZeroDimension);
        }
        if self.dim > MAX_DIM {
            out.push(Violation::DimensionTooLarge {
                dim: self.dim,
                max: MAX_DIM,
            });
        }
        for (j, c) in self.components.iter().enumerate() {
            let a = c.alpha.get();
            if !(a > 0.0 && a <= 1.0) {
                out.push(Violation::AlphaOutOfRange {
                    component: j + 1,
                    alpha: a,
                });
            }
            for (i, &w) in c.weights.iter().enumerate() {
                if !(w >= 0.0) {
                    out.push(Violation::NegativeWeight {
                        component: j + 1,
                        coord: i + 1,
                        value: w,
                    });
                }
            }
            for v in c.copula.validate() {
                out.push(Violation::Copula {
                    component: j + 1,
                    violation: v,
                });
            }
        }
        for i in 0..self.dim {
            let sum: f64 = self.components.iter().map(|c| c.weights[i]).sum();
            if (sum - 1.0).abs() > crate::copula::COLUMN_SUM_TOL {
                out.push(Violation::WeightColumnSum { coord: i + 1, sum });
            }
        }
        out
    }

    /// Validate and wrap any violations into an error.
    pub fn require_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel { violations })
        }
    }

    /// The model exponent function (order-1 homogeneous); see the module
    /// docs for the formula.
    pub fn exponent(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        for &xi in x {
            if !(xi >= 0.0) {
                return Err(Error::Domain { what: "x", value: xi });
            }
        }
        Ok(self.exponent_unchecked(x))
    }

    pub(crate) fn exponent_unchecked(&self, x: &[f64]) -> f64 {
        let mut scratch = vec![0.0f64; self.dim];
        self.components
            .iter()
            .map(|c| component_exponent_term(c, x, &mut scratch))
            .sum()
    }

    /// Model CDF `C(u) = exp(-l(-ln u))` on `[0, 1]^d`.
    pub fn cdf(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: u.len(),
            });
        }
        let x = neg_ln(u)?;
        Ok((-self.exponent_unchecked(&x)).exp())
    }

    /// Restriction of the model to the coordinates in `mask`: weight rows
    /// keep the selected columns and component copulas become subcopulas.
    /// Column sums are preserved, so the restriction of a valid model is
    /// valid (M4 components become derived and lose only sampleability).
    pub fn submodel(&self, mask: &SubsetMask) -> Result<MevMixModel> {
        if mask.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: mask.dim(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                let weights = mask.indices().iter().map(|&i| c.weights[i]).collect();
                MixtureComponent::new(c.alpha, weights, c.copula.subcopula(mask)?)
            })
            .collect::<Result<Vec<_>>>()?;
        MevMixModel::new(components)
    }

    /// One draw of the componentwise maximum, written into `out`
    /// (unit Frechet scale).
    ///
    /// For each component, conditional on the stable draw `s_j`, the vector
    /// has copula `C_j` with Frechet margins `exp(-(x / beta_ji)^(-1/alpha_j) s_j)`;
    /// inverting that margin at a uniform `w` gives
    /// `x = beta_ji * (s_j / (-ln w))^alpha_j`, which is the map applied to
    /// each coordinate of a `C_j`-distributed uniform vector below. The
    /// Monte Carlo CDF checks in the test suite confirm the inversion.
    pub fn draw_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) -> Result<()> {
        debug_assert_eq!(out.len(), self.dim);
        out.fill(0.0);
        for c in &self.components {
            let alpha = c.alpha.get();
            let s = sample_positive_stable(c.alpha, rng);
            // probability-zero guard: redraw if the copula sampler lands on
            // an endpoint where -ln w degenerates
            let w = loop {
                let w = c.copula.sample(rng)?;
                if w.iter().all(|&wi| wi > 0.0 && wi < 1.0) {
                    break w;
                }
            };
            for (i, (yi, &beta)) in out.iter_mut().zip(&c.weights).enumerate() {
                if beta > 0.0 {
                    let x = beta * (s / -w[i].ln()).powf(alpha);
                    if x > *yi {
                        *yi = x;
                    }
                }
            }
        }
        Ok(())
    }

    /// One draw as a fresh vector (unit Frechet scale).
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.draw_into(rng, &mut out)?;
        Ok(out)
    }

    /// `n` draws with unit Frechet margins, deterministic in `seed` and
    /// independent of thread count: draws are partitioned into fixed-size
    /// chunks, and chunk `c` consumes the ChaCha stream with index `c`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Samples> {
        self.require_valid()?;
        let dim = self.dim;
        let mut data = vec![0.0f64; n * dim];
        let result: Result<Vec<()>> = data
            .par_chunks_mut(SAMPLE_CHUNK * dim)
            .enumerate()
            .map(|(chunk_idx, chunk)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk_idx as u64);
                for row in chunk.chunks_mut(dim) {
                    self.draw_into(&mut rng, row)?;
                }
                Ok(())
            })
            .collect();
        result?;
        Ok(Samples { dim, data })
    }
}

fn component_exponent_term(c: &MixtureComponent, x: &[f64], scratch: &mut [f64]) -> f64 {
    let alpha = c.alpha.get();
    if alpha == 1.0 {
        for (zi, (&beta, &xi)) in scratch.iter_mut().zip(c.weights.iter().zip(x)) {
            *zi = weighted(beta, xi);
        }
        c.copula.exponent_unchecked(scratch)
    } else {
        let inv_alpha = 1.0 / alpha;
        for (zi, (&beta, &xi)) in scratch.iter_mut().zip(c.weights.iter().zip(x)) {
            *zi = weighted(beta, xi).powf(inv_alpha);
        }
        c.copula.exponent_unchecked(scratch).powf(alpha)
    }
}

/// Row-major `n x d` sample matrix on the unit Frechet scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    dim: usize,
    data: Vec<f64>,
}

impl Samples {
    /// Wrap a row-major buffer; `data.len()` must be a multiple of `dim`.
    pub fn from_raw(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() % dim != 0 {
            return Err(Error::Config {
                detail: format!(
                    "sample buffer of length {} is not a multiple of dimension {}",
                    data.len(),
                    dim
                ),
            });
        }
        Ok(Samples { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of draws.
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim)
    }

    /// The unit Frechet probability transform `F(y) = exp(-1/y)` of one row.
    pub fn uniform_row(&self, i: usize) -> Vec<f64> {
        self.row(i).iter().map(|&y| (-1.0 / y).exp()).collect()
    }
}

/// Case II: every component copula is the product copula.
pub fn make_asymmetric_logistic(alphas: &[f64], betas: &[Vec<f64>]) -> Result<MevMixModel> {
    if alphas.len() != betas.len() {
        return Err(Error::Config {
            detail: format!(
                "{} alphas but {} weight rows",
                alphas.len(),
                betas.len()
            ),
        });
    }
    let dim = betas
        .first()
        .map(|row| row.len())
        .ok_or_else(|| Error::Config {
            detail: "model needs at least one component".to_string(),
        })?;
    let components = alphas
        .iter()
        .zip(betas)
        .map(|(&a, row)| {
            MixtureComponent::new(
                StableAlpha::new_unchecked(a),
                row.clone(),
                MaxStableCopula::independence(dim),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    MevMixModel::new(components)
}

/// One subset term of the Tawn construction: the coordinates it covers,
/// its stability index, and one weight per covered coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct TawnSubset {
    pub subset: SubsetMask,
    pub alpha: f64,
    pub weights: Vec<f64>,
}

/// Case III: one product-copula component per coordinate subset, with
/// weights supported on the subset and zero elsewhere. The column-sum
/// constraint `sum over subsets containing i of beta = 1` is checked by
/// model validation.
pub fn make_tawn_model(dim: usize, subsets: &[TawnSubset]) -> Result<MevMixModel> {
    let components = subsets
        .iter()
        .map(|s| {
            if s.subset.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: s.subset.dim(),
                });
            }
            if s.weights.len() != s.subset.len() {
                return Err(Error::DimensionMismatch {
                    expected: s.subset.len(),
                    actual: s.weights.len(),
                });
            }
            let mut row = vec![0.0; dim];
            for (&i, &w) in s.subset.indices().iter().zip(&s.weights) {
                row[i] = w;
            }
            MixtureComponent::new(
                StableAlpha::new_unchecked(s.alpha),
                row,
                MaxStableCopula::independence(dim),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    MevMixModel::new(components)
}

/// Case IV: constant weight rows `beta_ji = beta_j`, one scalar weight per
/// component; the model copula is the weighted geometric mean of the
/// component mixtures. Weights must sum to 1 (checked by validation, where
/// it coincides with the column-sum constraint).
pub fn make_geometric_mean(
    weights: &[f64],
    alphas: &[f64],
    copulas: Vec<MaxStableCopula>,
) -> Result<MevMixModel> {
    if weights.len() != alphas.len() || weights.len() != copulas.len() {
        return Err(Error::Config {
            detail: format!(
                "{} weights, {} alphas, {} copulas",
                weights.len(),
                alphas.len(),
                copulas.len()
            ),
        });
    }
    let components = weights
        .iter()
        .zip(alphas)
        .zip(copulas)
        .map(|((&b, &a), copula)| {
            let row = vec![b; copula.dim()];
            MixtureComponent::new(StableAlpha::new_unchecked(a), row, copula)
        })
        .collect::<Result<Vec<_>>>()?;
    MevMixModel::new(components)
}

/// Case I: a single component with unit weights.
pub fn make_single(alpha: f64, copula: MaxStableCopula) -> Result<MevMixModel> {
    let row = vec![1.0; copula.dim()];
    MevMixModel::new(vec![MixtureComponent::new(
        StableAlpha::new_unchecked(alpha),
        row,
        copula,
    )?])
}

/// True iff the model's components are all product copulas
/// (the Case II family).
pub fn all_components_independence(model: &MevMixModel) -> bool {
    model
        .components()
        .iter()
        .all(|c| matches!(c.copula().kind(), CopulaKind::Independence))
}
