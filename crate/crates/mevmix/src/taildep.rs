//! Orthant tail-dependence coefficients.
//!
//! For a conditioning set `J`, the coefficient `lambda_J` is the limiting
//! conditional probability that every coordinate is extreme given that the
//! coordinates in `J` are extreme. For max-stable copulas the diagonal is
//! exactly a power (`C(u, ..., u) = u^l(1)`), so the limit collapses to a
//! ratio of finite inclusion-exclusion sums over sub-exponents evaluated at
//! subset indicator vectors — no limit-taking numerics:
//!
//! ```text
//! lambda_J = mass(D) / mass(J),
//! mass(A)  = sum over nonempty B subset A of (-1)^(|B|-1) * l(1_B)
//! ```
//!
//! The alternating sum is accumulated with separate positive and negative
//! partial sums; a cancellation ratio above [`CANCELLATION_LIMIT`] flags
//! the result as ill-conditioned.
//!
//! Closed forms for product-copula components and for moving-maxima
//! components are provided as independent evaluation routes, plus an
//! empirical threshold-exceedance estimator over sample matrices.

use rayon::prelude::*;
use serde::Serialize;

use crate::copula::CopulaKind;
use crate::error::{Error, Result, Violation};
use crate::model::{all_components_independence, MevMixModel, Samples};
use crate::subset::SubsetMask;

/// Cancellation ratio (largest partial sum over net mass) beyond which an
/// inclusion-exclusion result has lost more than 6 digits and is flagged.
pub const CANCELLATION_LIMIT: f64 = 1e6;

/// Minimum sample count for the empirical estimator.
pub const EMPIRICAL_MIN_N: usize = 10_000;

/// How sample coordinates are mapped to uniform scores before thresholding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginTransform {
    /// Exact unit Frechet probability transform `F(y) = exp(-1/y)`;
    /// the right choice for model-generated samples.
    Frechet,
    /// Empirical ranks `(rank + 1) / (n + 1)`, for external data.
    Ranks,
}

/// Which evaluation route produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailDepMethod {
    AnalyticGeneric,
    AnalyticClosedForm,
    Empirical,
}

/// Detail block for empirical estimates.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalDetail {
    pub threshold: f64,
    pub n: usize,
    pub stderr: f64,
    pub numerator_count: u64,
    pub denominator_count: u64,
}

/// An orthant tail-dependence coefficient with its defining masses.
#[derive(Debug, Clone, Serialize)]
pub struct TailDepReport {
    /// Conditioning coordinates, 1-based.
    #[serde(rename = "J")]
    pub j_coords: Vec<usize>,
    pub lambda: f64,
    pub numerator_mass: f64,
    pub denominator_mass: f64,
    pub method: TailDepMethod,
    /// Set when inclusion-exclusion lost more than 6 digits to cancellation.
    pub ill_conditioned: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalDetail>,
}

impl TailDepReport {
    /// Header for the CSV rendering of reports.
    pub fn csv_header() -> &'static str {
        "J,lambda,numerator_mass,denominator_mass,method,ill_conditioned,threshold,n,stderr"
    }

    /// One CSV row; the coordinate list is joined with `;`.
    pub fn csv_row(&self) -> String {
        let coords = self
            .j_coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let method = match self.method {
            TailDepMethod::AnalyticGeneric => "analytic-generic",
            TailDepMethod::AnalyticClosedForm => "analytic-closed-form",
            TailDepMethod::Empirical => "empirical",
        };
        match &self.empirical {
            Some(e) => format!(
                "{},{},{},{},{},{},{},{},{}",
                coords,
                self.lambda,
                self.numerator_mass,
                self.denominator_mass,
                method,
                self.ill_conditioned,
                e.threshold,
                e.n,
                e.stderr
            ),
            None => format!(
                "{},{},{},{},{},{},,,",
                coords, self.lambda, self.numerator_mass, self.denominator_mass, method,
                self.ill_conditioned
            ),
        }
    }
}

/// An inclusion-exclusion mass with its positive and negative partial sums.
#[derive(Debug, Clone, Copy)]
pub struct MassBreakdown {
    pub value: f64,
    pub positive_sum: f64,
    pub negative_sum: f64,
}

impl MassBreakdown {
    /// Largest partial sum over the net value; large ratios signal digit loss.
    pub fn cancellation_ratio(&self) -> f64 {
        let scale = self.positive_sum.max(self.negative_sum);
        if scale == 0.0 {
            return 1.0;
        }
        scale / self.value.abs().max(f64::MIN_POSITIVE)
    }

    pub fn is_ill_conditioned(&self) -> bool {
        self.cancellation_ratio() > CANCELLATION_LIMIT
    }
}

fn check_mask(model: &MevMixModel, mask: &SubsetMask) -> Result<()> {
    if mask.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            actual: mask.dim(),
        });
    }
    Ok(())
}

fn mass_breakdown_unchecked(model: &MevMixModel, set: &SubsetMask) -> MassBreakdown {
    let dim = model.dim();
    let mut x = vec![0.0f64; dim];
    let mut positive = 0.0;
    let mut negative = 0.0;
    for b in set.nonempty_subsets() {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = if b.contains(i) { 1.0 } else { 0.0 };
        }
        let v = model.exponent_unchecked(&x);
        if b.len() % 2 == 1 {
            positive += v;
        } else {
            negative += v;
        }
    }
    MassBreakdown {
        value: positive - negative,
        positive_sum: positive,
        negative_sum: negative,
    }
}

/// The inclusion-exclusion orthant mass of a coordinate set:
/// `mass(A) = sum over nonempty B subset A of (-1)^(|B|-1) l(1_B)`.
///
/// Singletons have mass exactly 1 under the column-sum constraint.
pub fn orthant_mass(model: &MevMixModel, set: &SubsetMask) -> Result<f64> {
    Ok(orthant_mass_breakdown(model, set)?.value)
}

/// [`orthant_mass`] with the cancellation diagnostics attached.
pub fn orthant_mass_breakdown(model: &MevMixModel, set: &SubsetMask) -> Result<MassBreakdown> {
    model.require_valid()?;
    check_mask(model, set)?;
    Ok(mass_breakdown_unchecked(model, set))
}

/// The orthant tail-dependence coefficient `lambda_J = mass(D) / mass(J)`
/// via the generic inclusion-exclusion engine.
pub fn orthant_lambda(model: &MevMixModel, j: &SubsetMask) -> Result<TailDepReport> {
    model.require_valid()?;
    check_mask(model, j)?;
    let full = SubsetMask::full(model.dim())?;
    let num = mass_breakdown_unchecked(model, &full);
    let den = mass_breakdown_unchecked(model, j);
    if !(den.value > 0.0) {
        return Err(Error::DegenerateDenominator {
            numerator_mass: num.value,
            denominator_mass: den.value,
        });
    }
    Ok(TailDepReport {
        j_coords: j.coords_1based(),
        lambda: num.value / den.value,
        numerator_mass: num.value,
        denominator_mass: den.value,
        method: TailDepMethod::AnalyticGeneric,
        ill_conditioned: num.is_ill_conditioned() || den.is_ill_conditioned(),
        empirical: None,
    })
}

fn logistic_term(alpha: f64, betas_in_b: impl Iterator<Item = f64>) -> f64 {
    if alpha == 1.0 {
        betas_in_b.sum()
    } else {
        let inv = 1.0 / alpha;
        betas_in_b.map(|b| b.powf(inv)).sum::<f64>().powf(alpha)
    }
}

fn logistic_mass(alphas: &[f64], betas: &[Vec<f64>], set: &SubsetMask) -> MassBreakdown {
    let mut positive = 0.0;
    let mut negative = 0.0;
    for b in set.nonempty_subsets() {
        let members = b.indices();
        let v: f64 = alphas
            .iter()
            .zip(betas)
            .map(|(&a, row)| logistic_term(a, members.iter().map(|&i| row[i])))
            .sum();
        if b.len() % 2 == 1 {
            positive += v;
        } else {
            negative += v;
        }
    }
    MassBreakdown {
        value: positive - negative,
        positive_sum: positive,
        negative_sum: negative,
    }
}

fn validate_logistic_params(alphas: &[f64], betas: &[Vec<f64>]) -> Result<usize> {
    if alphas.len() != betas.len() || alphas.is_empty() {
        return Err(Error::Config {
            detail: format!("{} alphas but {} weight rows", alphas.len(), betas.len()),
        });
    }
    let dim = betas[0].len();
    let mut violations = Vec::new();
    for (j, (&a, row)) in alphas.iter().zip(betas).enumerate() {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: row.len(),
            });
        }
        if !(a > 0.0 && a <= 1.0) {
            violations.push(Violation::AlphaOutOfRange {
                component: j + 1,
                alpha: a,
            });
        }
        for (i, &w) in row.iter().enumerate() {
            if !(w >= 0.0) {
                violations.push(Violation::NegativeWeight {
                    component: j + 1,
                    coord: i + 1,
                    value: w,
                });
            }
        }
    }
    for i in 0..dim {
        let sum: f64 = betas.iter().map(|row| row[i]).sum();
        if (sum - 1.0).abs() > crate::copula::COLUMN_SUM_TOL {
            violations.push(Violation::WeightColumnSum { coord: i + 1, sum });
        }
    }
    if violations.is_empty() {
        Ok(dim)
    } else {
        Err(Error::InvalidModel { violations })
    }
}

/// Closed-form `lambda_J` for product-copula components: the masses reduce
/// to alternating sums of `(sum over i in B of beta_ji^(1/alpha_j))^alpha_j`.
/// An independent route from [`orthant_lambda`]; the two agree to 1e-12 on
/// the corresponding model.
pub fn orthant_lambda_logistic(
    alphas: &[f64],
    betas: &[Vec<f64>],
    j: &SubsetMask,
) -> Result<TailDepReport> {
    let dim = validate_logistic_params(alphas, betas)?;
    if j.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: j.dim(),
        });
    }
    let full = SubsetMask::full(dim)?;
    let num = logistic_mass(alphas, betas, &full);
    let den = logistic_mass(alphas, betas, j);
    if !(den.value > 0.0) {
        return Err(Error::DegenerateDenominator {
            numerator_mass: num.value,
            denominator_mass: den.value,
        });
    }
    Ok(TailDepReport {
        j_coords: j.coords_1based(),
        lambda: num.value / den.value,
        numerator_mass: num.value,
        denominator_mass: den.value,
        method: TailDepMethod::AnalyticClosedForm,
        ill_conditioned: num.is_ill_conditioned() || den.is_ill_conditioned(),
        empirical: None,
    })
}

/// Bivariate tail dependence `lambda_{s,t}` of the model margin pair
/// (`s`, `t` are 0-based coordinate indices).
///
/// Dispatch: product-copula models use the closed form
/// `2 - sum_j (beta_js^(1/a_j) + beta_jt^(1/a_j))^(a_j)`; single-component
/// models use `2 - (2 - lambda^(C_1))^alpha` over the component copula's own
/// pair coefficient; everything else goes through the generic engine on the
/// restricted pair model. All routes agree to 1e-12.
pub fn bivariate_lambda(model: &MevMixModel, s: usize, t: usize) -> Result<f64> {
    model.require_valid()?;
    let dim = model.dim();
    if s == t {
        return Err(Error::InvalidSubset {
            detail: format!("coordinate pair ({}, {}) is not distinct", s + 1, t + 1),
        });
    }
    if s >= dim || t >= dim {
        return Err(Error::InvalidSubset {
            detail: format!("coordinate pair ({}, {}) out of 1..={}", s + 1, t + 1, dim),
        });
    }
    if all_components_independence(model) {
        let value: f64 = model
            .components()
            .iter()
            .map(|c| {
                logistic_term(
                    c.alpha().get(),
                    [c.weights()[s], c.weights()[t]].into_iter(),
                )
            })
            .sum();
        return Ok(2.0 - value);
    }
    if model.num_components() == 1 {
        let c = &model.components()[0];
        let lambda_c = c.copula().bivariate_tail_dependence(s, t)?;
        return Ok(2.0 - (2.0 - lambda_c).powf(c.alpha().get()));
    }
    let pair = SubsetMask::from_indices(dim, &[s, t])?;
    let sub = model.submodel(&pair)?;
    let t_pos = usize::from(s < t); // position of t after restriction
    let j = SubsetMask::singleton(2, t_pos)?;
    Ok(orthant_lambda(&sub, &j)?.lambda)
}

fn m4_rows_of(model: &MevMixModel) -> Result<Vec<(f64, &crate::copula::M4Coefficients)>> {
    model
        .components()
        .iter()
        .map(|c| match c.copula().kind() {
            CopulaKind::M4(coeffs) => Ok((c.alpha().get(), coeffs)),
            other => Err(Error::Unsupported {
                detail: format!(
                    "moving-maxima closed form requires m4 components, found {:?}",
                    other
                ),
            }),
        })
        .collect()
}

/// Closed-form bivariate tail dependence for models whose components are
/// all moving-maxima copulas:
/// `2 - sum_j [ sum_{l,k} max(a_lks beta_js^(1/a_j), a_lkt beta_jt^(1/a_j)) ]^(a_j)`.
pub fn m4_bivariate_lambda(model: &MevMixModel, s: usize, t: usize) -> Result<f64> {
    model.require_valid()?;
    if s == t || s >= model.dim() || t >= model.dim() {
        return Err(Error::InvalidSubset {
            detail: format!("invalid coordinate pair ({}, {})", s + 1, t + 1),
        });
    }
    let parts = m4_rows_of(model)?;
    let mut total = 0.0;
    for (c, (alpha, coeffs)) in model.components().iter().zip(parts) {
        let (ws, wt) = if alpha == 1.0 {
            (c.weights()[s], c.weights()[t])
        } else {
            (
                c.weights()[s].powf(1.0 / alpha),
                c.weights()[t].powf(1.0 / alpha),
            )
        };
        let inner: f64 = coeffs
            .rows()
            .map(|row| (row[s] * ws).max(row[t] * wt))
            .sum();
        total += if alpha == 1.0 { inner } else { inner.powf(alpha) };
    }
    Ok(2.0 - total)
}

/// Closed-form singleton numerator for all-M4 models: the inclusion-
/// exclusion sum of `[ sum_{l,k} max over i in A of a_lki beta_ji^(1/a_j) ]^(a_j)`
/// over nonempty `A`. Equals `orthant_mass(model, D)`.
pub fn m4_singleton_numerator(model: &MevMixModel) -> Result<f64> {
    model.require_valid()?;
    let parts = m4_rows_of(model)?;
    let dim = model.dim();
    let full = SubsetMask::full(dim)?;
    // per component: weighted coefficient columns a_lki * beta_ji^(1/alpha_j)
    let weighted: Vec<(f64, Vec<Vec<f64>>)> = model
        .components()
        .iter()
        .zip(parts)
        .map(|(c, (alpha, coeffs))| {
            let scale: Vec<f64> = c
                .weights()
                .iter()
                .map(|&b| if alpha == 1.0 { b } else { b.powf(1.0 / alpha) })
                .collect();
            let rows = coeffs
                .rows()
                .map(|row| row.iter().zip(&scale).map(|(&a, &s)| a * s).collect())
                .collect();
            (alpha, rows)
        })
        .collect();
    let mut total = 0.0;
    for a in full.nonempty_subsets() {
        let sign = if a.len() % 2 == 1 { 1.0 } else { -1.0 };
        let members = a.indices();
        for (alpha, rows) in &weighted {
            let inner: f64 = rows
                .iter()
                .map(|row: &Vec<f64>| {
                    members
                        .iter()
                        .map(|&i| row[i])
                        .fold(0.0, f64::max)
                })
                .sum();
            total += sign * if *alpha == 1.0 { inner } else { inner.powf(*alpha) };
        }
    }
    Ok(total)
}

/// Threshold-exceedance estimate of `lambda_J` from a sample matrix:
/// the fraction of joint exceedances among `J`-exceedances at level `u`.
///
/// With the Frechet transform, a coordinate exceeds iff `y > -1/ln(u)`;
/// rank mode replaces values by `(rank + 1)/(n + 1)` scores per column.
/// Reported masses are the count-based estimates of the orthant masses
/// (`count / (n (1 - u))`), and the standard error is binomial.
pub fn empirical_lambda(
    samples: &Samples,
    j: &SubsetMask,
    u: f64,
    transform: MarginTransform,
) -> Result<TailDepReport> {
    let n = samples.len();
    if n < EMPIRICAL_MIN_N {
        return Err(Error::Config {
            detail: format!("need at least {} samples, got {}", EMPIRICAL_MIN_N, n),
        });
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain { what: "u", value: u });
    }
    if j.dim() != samples.dim() {
        return Err(Error::DimensionMismatch {
            expected: samples.dim(),
            actual: j.dim(),
        });
    }

    let j_indices = j.indices();
    let (num_count, den_count) = match transform {
        MarginTransform::Frechet => {
            let y_star = -1.0 / u.ln();
            count_exceedances(samples, &j_indices, move |y| y > y_star)
        }
        MarginTransform::Ranks => {
            let scores = rank_scores(samples);
            count_exceedances(&scores, &j_indices, move |v| v > u)
        }
    };

    if den_count == 0 {
        return Err(Error::DegenerateDenominator {
            numerator_mass: 0.0,
            denominator_mass: 0.0,
        });
    }
    let lambda = num_count as f64 / den_count as f64;
    let stderr = (lambda * (1.0 - lambda) / den_count as f64).sqrt();
    let mass_scale = n as f64 * (1.0 - u);
    Ok(TailDepReport {
        j_coords: j.coords_1based(),
        lambda,
        numerator_mass: num_count as f64 / mass_scale,
        denominator_mass: den_count as f64 / mass_scale,
        method: TailDepMethod::Empirical,
        ill_conditioned: false,
        empirical: Some(EmpiricalDetail {
            threshold: u,
            n,
            stderr,
            numerator_count: num_count,
            denominator_count: den_count,
        }),
    })
}

fn count_exceedances<F>(samples: &Samples, j_indices: &[usize], exceeds: F) -> (u64, u64)
where
    F: Fn(f64) -> bool + Sync,
{
    let dim = samples.dim();
    samples
        .rows()
        .collect::<Vec<_>>()
        .par_chunks(4096)
        .map(|rows| {
            let mut num = 0u64;
            let mut den = 0u64;
            for row in rows {
                if j_indices.iter().all(|&i| exceeds(row[i])) {
                    den += 1;
                    if (0..dim).all(|i| exceeds(row[i])) {
                        num += 1;
                    }
                }
            }
            (num, den)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Replace each column by its `(rank + 1)/(n + 1)` scores.
fn rank_scores(samples: &Samples) -> Samples {
    let n = samples.len();
    let dim = samples.dim();
    let mut data = vec![0.0f64; n * dim];
    for col in 0..dim {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            samples.row(a)[col]
                .partial_cmp(&samples.row(b)[col])
                .expect("sample values must be comparable")
        });
        for (rank, &row_idx) in order.iter().enumerate() {
            data[row_idx * dim + col] = (rank + 1) as f64 / (n + 1) as f64;
        }
    }
    Samples::from_raw(dim, data).expect("rank matrix has matching shape")
}
