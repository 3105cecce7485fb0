//! Max-stable component copulas.
//!
//! Every variant is evaluated through its exponent (stable tail dependence)
//! function `l(x) = -ln C(exp(-x_1), ..., exp(-x_d))`, which is homogeneous
//! of order 1 for max-stable copulas and satisfies
//! `max_i x_i <= l(x) <= sum_i x_i`. The CDF is the thin wrapper
//! `C(u) = exp(-l(-ln u))`; routing all evaluation through `-ln u` space
//! avoids underflow for small `u` and keeps compositions of `exp`/`ln`
//! out of the hot path.

use rand::distributions::Open01;
use rand::Rng;

use crate::error::{CopulaViolation, Error, Result};
use crate::stable::{sample_positive_stable, StableAlpha};
use crate::subset::{SubsetMask, MAX_DIM};

/// Absolute tolerance on coefficient column sums.
pub const COLUMN_SUM_TOL: f64 = 1e-12;

/// Moving-maxima coefficient array `a[l][k][i]`, rectangular over a finite
/// index set with `d` coordinate columns.
///
/// A top-level array must have every column sum equal to 1; arrays obtained
/// by restriction to a coordinate subset are marked *derived* and may have
/// deficient column sums. Derived arrays can be evaluated but not sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct M4Coefficients {
    a: Vec<Vec<Vec<f64>>>,
    dim: usize,
    derived: bool,
}

impl M4Coefficients {
    /// Build from a nested `[l][k][i]` array. Rejects empty or ragged input;
    /// numeric constraints (nonnegativity, column sums) are left to
    /// [`MaxStableCopula::validate`].
    pub fn new(a: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let dim = a
            .first()
            .and_then(|l| l.first())
            .map(|row| row.len())
            .ok_or_else(|| Error::Config {
                detail: "m4 coefficient array is empty".to_string(),
            })?;
        if dim == 0 {
            return Err(Error::Config {
                detail: "m4 coefficient rows are empty".to_string(),
            });
        }
        let k_len = a[0].len();
        for (l, block) in a.iter().enumerate() {
            if block.len() != k_len {
                return Err(Error::Config {
                    detail: format!(
                        "m4 block {} has {} rows, expected {}",
                        l + 1,
                        block.len(),
                        k_len
                    ),
                });
            }
            for (k, row) in block.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        actual: row.len(),
                    });
                }
                let _ = k;
            }
        }
        Ok(M4Coefficients {
            a,
            dim,
            derived: false,
        })
    }

    /// Coordinate count `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether this array came from a subcopula restriction.
    pub fn is_derived(&self) -> bool {
        self.derived
    }

    /// The nested coefficient array.
    pub fn coefficients(&self) -> &Vec<Vec<Vec<f64>>> {
        &self.a
    }

    /// All `(l, k)` rows flattened, each a slice of `d` coefficients.
    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.a.iter().flatten().map(|row| row.as_slice())
    }

    /// Sum of column `i` over the whole index set.
    pub fn column_sum(&self, i: usize) -> f64 {
        self.rows().map(|row| row[i]).sum()
    }

    fn restrict(&self, mask: &SubsetMask) -> M4Coefficients {
        let a = self
            .a
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|row| mask.indices().iter().map(|&i| row[i]).collect())
                    .collect()
            })
            .collect();
        M4Coefficients {
            a,
            dim: mask.len(),
            derived: true,
        }
    }
}

/// The copula family of one component.
#[derive(Debug, Clone, PartialEq)]
pub enum CopulaKind {
    /// Product copula: `C(u) = prod_i u_i`.
    Independence,
    /// Upper Frechet bound: `C(u) = min_i u_i`.
    Comonotone,
    /// Gumbel-Hougaard logistic with exponent `(sum_i x_i^(1/r))^r`,
    /// `r` in `(0, 1]`; `r = 1` coincides with independence.
    GumbelLogistic { r: f64 },
    /// Moving-maxima copula `C(u) = prod_{l,k} min_i u_i^(a_lki)`.
    M4(M4Coefficients),
}

/// A max-stable copula: a dimension plus a [`CopulaKind`].
#[derive(Debug, Clone, PartialEq)]
pub struct MaxStableCopula {
    dim: usize,
    kind: CopulaKind,
}

/// `w * x` with the convention `0 * inf = 0`, used wherever a zero
/// coefficient must annihilate an infinite coordinate.
#[inline]
pub(crate) fn weighted(w: f64, x: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        w * x
    }
}

impl MaxStableCopula {
    /// Product copula of dimension `d`.
    pub fn independence(dim: usize) -> Self {
        MaxStableCopula {
            dim,
            kind: CopulaKind::Independence,
        }
    }

    /// Comonotone copula of dimension `d`.
    pub fn comonotone(dim: usize) -> Self {
        MaxStableCopula {
            dim,
            kind: CopulaKind::Comonotone,
        }
    }

    /// Gumbel-Hougaard logistic copula. The parameter is range-checked by
    /// [`validate`](Self::validate), not here, so invalid values can still
    /// be constructed and reported.
    pub fn gumbel_logistic(dim: usize, r: f64) -> Self {
        MaxStableCopula {
            dim,
            kind: CopulaKind::GumbelLogistic { r },
        }
    }

    /// Moving-maxima copula from a coefficient array.
    pub fn m4(coefficients: M4Coefficients) -> Self {
        MaxStableCopula {
            dim: coefficients.dim(),
            kind: CopulaKind::M4(coefficients),
        }
    }

    /// Convenience: moving-maxima copula straight from a nested array.
    pub fn m4_from_array(a: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        Ok(Self::m4(M4Coefficients::new(a)?))
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The underlying variant.
    pub fn kind(&self) -> &CopulaKind {
        &self.kind
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: len,
            })
        } else {
            Ok(())
        }
    }

    /// The exponent function `l(x) = -ln C(exp(-x_1), ..., exp(-x_d))`.
    ///
    /// Coordinates must be nonnegative; `+inf` is allowed and stands for a
    /// zero copula argument.
    pub fn exponent(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        for &xi in x {
            if !(xi >= 0.0) {
                return Err(Error::Domain { what: "x", value: xi });
            }
        }
        Ok(self.exponent_unchecked(x))
    }

    /// Exponent without argument checks; callers guarantee `x_i >= 0`.
    pub(crate) fn exponent_unchecked(&self, x: &[f64]) -> f64 {
        match &self.kind {
            CopulaKind::Independence => x.iter().sum(),
            CopulaKind::Comonotone => x.iter().fold(0.0, |m, &v| m.max(v)),
            CopulaKind::GumbelLogistic { r } => {
                if *r == 1.0 {
                    x.iter().sum()
                } else {
                    let inv_r = 1.0 / r;
                    x.iter().map(|&v| v.powf(inv_r)).sum::<f64>().powf(*r)
                }
            }
            CopulaKind::M4(coeffs) => coeffs
                .rows()
                .map(|row| {
                    row.iter()
                        .zip(x)
                        .map(|(&a, &xi)| weighted(a, xi))
                        .fold(0.0, f64::max)
                })
                .sum(),
        }
    }

    /// `C(u) = exp(-l(-ln u))` for `u` in `[0, 1]^d`.
    pub fn cdf(&self, u: &[f64]) -> Result<f64> {
        self.check_dim(u.len())?;
        let x = neg_ln(u)?;
        Ok((-self.exponent_unchecked(&x)).exp())
    }

    /// Restriction to the coordinates in `mask`, preserving the variant.
    ///
    /// An M4 restriction keeps only the selected columns; its column sums may
    /// drop below 1, which marks the result as derived (evaluable, not
    /// sampleable).
    pub fn subcopula(&self, mask: &SubsetMask) -> Result<MaxStableCopula> {
        if mask.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: mask.dim(),
            });
        }
        let kind = match &self.kind {
            CopulaKind::Independence => CopulaKind::Independence,
            CopulaKind::Comonotone => CopulaKind::Comonotone,
            CopulaKind::GumbelLogistic { r } => CopulaKind::GumbelLogistic { r: *r },
            CopulaKind::M4(coeffs) => CopulaKind::M4(coeffs.restrict(mask)),
        };
        Ok(MaxStableCopula {
            dim: mask.len(),
            kind,
        })
    }

    /// Upper tail dependence of the `(s, t)` margin pair:
    /// `lambda = 2 - l(e_s + e_t)`.
    pub fn bivariate_tail_dependence(&self, s: usize, t: usize) -> Result<f64> {
        if s == t {
            return Err(Error::InvalidSubset {
                detail: format!("coordinate pair ({}, {}) is not distinct", s + 1, t + 1),
            });
        }
        let pair = SubsetMask::from_indices(self.dim, &[s, t])?;
        Ok(2.0 - self.exponent_unchecked(&pair.indicator()))
    }

    /// One draw with this copula's joint law and uniform margins in `(0, 1)`.
    ///
    /// The Gumbel-Hougaard draw uses the stable-frailty construction
    /// (`u_i = exp(-(e_i / s)^r)` with `s` positive `r`-stable and `e_i`
    /// i.i.d. unit exponential), which is the `q = 1` product-component
    /// mixture in disguise. The M4 draw takes componentwise maxima of
    /// weighted unit Frechet noise, so it requires full column sums:
    /// derived arrays are rejected.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        match &self.kind {
            CopulaKind::Independence => {
                Ok((0..self.dim).map(|_| rng.sample(Open01)).collect())
            }
            CopulaKind::Comonotone => {
                let u: f64 = rng.sample(Open01);
                Ok(vec![u; self.dim])
            }
            CopulaKind::GumbelLogistic { r } => {
                if !(*r > 0.0 && *r <= 1.0) {
                    return Err(Error::Domain { what: "r", value: *r });
                }
                if *r == 1.0 {
                    return Ok((0..self.dim).map(|_| rng.sample(Open01)).collect());
                }
                let alpha = StableAlpha::new(*r)?;
                let s = sample_positive_stable(alpha, rng);
                Ok((0..self.dim)
                    .map(|_| {
                        let e = -rng.sample::<f64, _>(Open01).ln();
                        (-(e / s).powf(*r)).exp()
                    })
                    .collect())
            }
            CopulaKind::M4(coeffs) => {
                if coeffs.is_derived() {
                    return Err(Error::Unsupported {
                        detail: "cannot sample a derived (column-deficient) m4 subcopula"
                            .to_string(),
                    });
                }
                let mut y = vec![0.0f64; self.dim];
                for row in coeffs.rows() {
                    let u: f64 = rng.sample(Open01);
                    let z = -1.0 / u.ln(); // unit Frechet
                    for (yi, &a) in y.iter_mut().zip(row) {
                        *yi = yi.max(weighted(a, z));
                    }
                }
                Ok(y.into_iter().map(|yi| (-1.0 / yi).exp()).collect())
            }
        }
    }

    /// Check every structural constraint; an empty report means the copula
    /// is a valid top-level component.
    pub fn validate(&self) -> Vec<CopulaViolation> {
        let mut out = Vec::new();
        if self.dim == 0 {
            out.push(CopulaViolation::ZeroDimension);
        }
        if self.dim > MAX_DIM {
            out.push(CopulaViolation::DimensionTooLarge {
                dim: self.dim,
                max: MAX_DIM,
            });
        }
        match &self.kind {
            CopulaKind::Independence | CopulaKind::Comonotone => {}
            CopulaKind::GumbelLogistic { r } => {
                if !(*r > 0.0 && *r <= 1.0) {
                    out.push(CopulaViolation::GumbelParamOutOfRange { r: *r });
                }
            }
            CopulaKind::M4(coeffs) => {
                for (l, block) in coeffs.a.iter().enumerate() {
                    for (k, row) in block.iter().enumerate() {
                        for (i, &v) in row.iter().enumerate() {
                            if !(v >= 0.0) {
                                out.push(CopulaViolation::M4NegativeCoefficient {
                                    l: l + 1,
                                    k: k + 1,
                                    coord: i + 1,
                                    value: v,
                                });
                            }
                        }
                    }
                }
                if !coeffs.is_derived() {
                    for i in 0..coeffs.dim() {
                        let sum = coeffs.column_sum(i);
                        if (sum - 1.0).abs() > COLUMN_SUM_TOL {
                            out.push(CopulaViolation::M4ColumnSum { coord: i + 1, sum });
                        }
                    }
                }
            }
        }
        out
    }
}

/// `-ln u` coordinatewise with domain check `u` in `[0, 1]^d`;
/// `u = 0` maps to `+inf`.
pub(crate) fn neg_ln(u: &[f64]) -> Result<Vec<f64>> {
    u.iter()
        .map(|&ui| {
            if !(0.0..=1.0).contains(&ui) {
                Err(Error::Domain { what: "u", value: ui })
            } else {
                Ok(-ui.ln())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// The worked d = 2 moving-maxima example used across the crate:
    /// one block, two rows, columns summing to 1.
    pub(crate) fn m4_example() -> MaxStableCopula {
        MaxStableCopula::m4_from_array(vec![vec![vec![0.6, 0.2], vec![0.4, 0.8]]]).unwrap()
    }

    #[test]
    fn exponent_examples() {
        let pi2 = MaxStableCopula::independence(2);
        assert_eq!(pi2.exponent(&[1.0, 1.0]).unwrap(), 2.0);

        let m2 = MaxStableCopula::comonotone(2);
        assert_eq!(m2.exponent(&[0.3, 0.7]).unwrap(), 0.7);

        // max(0.6, 0.2) + max(0.4, 0.8) = 1.4
        assert!(close(m4_example().exponent(&[1.0, 1.0]).unwrap(), 1.4, 1e-15));
    }

    #[test]
    fn exponent_domain_and_shape_errors() {
        let c = MaxStableCopula::independence(2);
        assert!(matches!(
            c.exponent(&[-1.0, 0.5]),
            Err(Error::Domain { what: "x", .. })
        ));
        assert!(matches!(
            c.exponent(&[f64::NAN, 0.5]),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            c.exponent(&[1.0]),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn exponent_boundary_coordinates() {
        let c = MaxStableCopula::gumbel_logistic(3, 0.5);
        // one coordinate alone: l(x e_i) = x
        assert!(close(c.exponent(&[0.0, 2.5, 0.0]).unwrap(), 2.5, 1e-12));
        // infinite coordinate propagates
        assert_eq!(c.exponent(&[1.0, f64::INFINITY, 0.0]).unwrap(), f64::INFINITY);
        // zero coefficient annihilates an infinite coordinate
        let m4 = m4_example();
        let sub = m4
            .subcopula(&SubsetMask::full(2).unwrap())
            .unwrap();
        assert_eq!(
            sub.exponent(&[f64::INFINITY, 1.0]).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn m4_zero_weight_annihilates_infinity() {
        let c =
            MaxStableCopula::m4_from_array(vec![vec![vec![0.0, 1.0], vec![1.0, 0.0]]]).unwrap();
        let v = c.exponent(&[f64::INFINITY, 1.0]).unwrap();
        assert_eq!(v, f64::INFINITY); // row (1,0) picks it up
        let d = c.cdf(&[0.0, 0.5]).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn cdf_examples() {
        let pi2 = MaxStableCopula::independence(2);
        assert!(close(pi2.cdf(&[0.5, 0.5]).unwrap(), 0.25, 1e-15));

        let m2 = MaxStableCopula::comonotone(2);
        assert!(close(m2.cdf(&[0.5, 0.9]).unwrap(), 0.5, 1e-15));

        let e1 = (-1.0f64).exp();
        let expected = (-1.4f64).exp(); // 0.24659696394160648
        assert!(close(m4_example().cdf(&[e1, e1]).unwrap(), expected, 1e-15));
    }

    #[test]
    fn cdf_boundaries_and_margins() {
        let c = MaxStableCopula::gumbel_logistic(3, 0.7);
        assert_eq!(c.cdf(&[0.0, 0.5, 0.9]).unwrap(), 0.0);
        assert!(close(c.cdf(&[1.0, 0.37, 1.0]).unwrap(), 0.37, 1e-15));
        assert!(matches!(
            c.cdf(&[1.2, 0.5, 0.5]),
            Err(Error::Domain { what: "u", .. })
        ));
        assert!(matches!(
            c.cdf(&[-0.1, 0.5, 0.5]),
            Err(Error::Domain { what: "u", .. })
        ));
    }

    #[test]
    fn subcopula_examples() {
        let d = 3;
        let pi = MaxStableCopula::independence(d);
        let s = pi
            .subcopula(&SubsetMask::singleton(d, 1).unwrap())
            .unwrap();
        assert_eq!(s.dim(), 1);
        assert!(close(s.cdf(&[0.42]).unwrap(), 0.42, 1e-15));

        let m = MaxStableCopula::comonotone(3);
        let m13 = m
            .subcopula(&SubsetMask::from_indices(3, &[0, 2]).unwrap())
            .unwrap();
        assert_eq!(m13, MaxStableCopula::comonotone(2));

        // m4 restriction to column 2: exponent(x) = (0.2 + 0.8) x = x
        let sub = m4_example()
            .subcopula(&SubsetMask::singleton(2, 1).unwrap())
            .unwrap();
        assert!(close(sub.exponent(&[3.0]).unwrap(), 3.0, 1e-12));
        match sub.kind() {
            CopulaKind::M4(c) => assert!(c.is_derived()),
            other => panic!("unexpected kind {:?}", other),
        }
    }

    #[test]
    fn subcopula_matches_cdf_with_ones() {
        let c = m4_example();
        let mask = SubsetMask::singleton(2, 0).unwrap();
        let sub = c.subcopula(&mask).unwrap();
        // coordinates outside A pinned to 1
        let full = c.cdf(&[0.3, 1.0]).unwrap();
        let restricted = sub.cdf(&[0.3]).unwrap();
        assert_eq!(full, restricted);
    }

    #[test]
    fn validate_examples() {
        let bad =
            MaxStableCopula::m4_from_array(vec![vec![vec![0.6, 0.2], vec![0.3, 0.8]]]).unwrap();
        let violations = bad.validate();
        assert_eq!(violations.len(), 1);
        match &violations[0] {
            CopulaViolation::M4ColumnSum { coord, sum } => {
                assert_eq!(*coord, 1);
                assert!(close(*sum, 0.9, 1e-15));
            }
            other => panic!("unexpected violation {:?}", other),
        }

        let bad_r = MaxStableCopula::gumbel_logistic(2, 1.5);
        assert!(matches!(
            bad_r.validate()[0],
            CopulaViolation::GumbelParamOutOfRange { r } if r == 1.5
        ));

        assert!(m4_example().validate().is_empty());
        assert!(MaxStableCopula::independence(2).validate().is_empty());
    }

    #[test]
    fn validate_structural() {
        assert!(matches!(
            MaxStableCopula::independence(0).validate()[0],
            CopulaViolation::ZeroDimension
        ));
        assert!(matches!(
            MaxStableCopula::independence(31).validate()[0],
            CopulaViolation::DimensionTooLarge { dim: 31, .. }
        ));
        let neg =
            MaxStableCopula::m4_from_array(vec![vec![vec![-0.1, 0.2], vec![1.1, 0.8]]]).unwrap();
        assert!(neg
            .validate()
            .iter()
            .any(|v| matches!(v, CopulaViolation::M4NegativeCoefficient { l: 1, k: 1, coord: 1, .. })));
    }

    #[test]
    fn m4_construction_rejects_bad_shapes() {
        assert!(MaxStableCopula::m4_from_array(vec![]).is_err());
        assert!(MaxStableCopula::m4_from_array(vec![vec![]]).is_err());
        assert!(
            MaxStableCopula::m4_from_array(vec![vec![vec![0.5, 0.5], vec![0.5]]]).is_err()
        );
    }

    #[test]
    fn comonotone_samples_are_equal() {
        let c = MaxStableCopula::comonotone(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let u = c.sample(&mut rng).unwrap();
            assert_eq!(u[0], u[1]);
            assert_eq!(u[1], u[2]);
            assert!(u[0] > 0.0 && u[0] < 1.0);
        }
    }

    #[test]
    fn independence_samples_uncorrelated() {
        let c = MaxStableCopula::independence(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 100_000;
        let (mut sx, mut sy, mut sxy, mut sx2, mut sy2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let u = c.sample(&mut rng).unwrap();
            sx += u[0];
            sy += u[1];
            sxy += u[0] * u[1];
            sx2 += u[0] * u[0];
            sy2 += u[1] * u[1];
        }
        let nf = n as f64;
        let cov = sxy / nf - (sx / nf) * (sy / nf);
        let vx = sx2 / nf - (sx / nf).powi(2);
        let vy = sy2 / nf - (sy / nf).powi(2);
        let corr = cov / (vx * vy).sqrt();
        // correlation stderr for independent uniforms is ~ 1/sqrt(n)
        assert!(corr.abs() <= 3.0 / nf.sqrt(), "corr {}", corr);
    }

    #[test]
    fn m4_sampler_matches_cdf() {
        let c = m4_example();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 1_000_000;
        let mut hits = 0u64;
        for _ in 0..n {
            let u = c.sample(&mut rng).unwrap();
            if u[0] <= 0.5 && u[1] <= 0.5 {
                hits += 1;
            }
        }
        let p_hat = hits as f64 / n as f64;
        let p = c.cdf(&[0.5, 0.5]).unwrap();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (p_hat - p).abs() <= 3.0 * se,
            "p_hat {} vs p {} (se {})",
            p_hat,
            p,
            se
        );
    }

    #[test]
    fn gumbel_sampler_matches_cdf() {
        let c = MaxStableCopula::gumbel_logistic(2, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let n = 500_000;
        let mut hits = 0u64;
        for _ in 0..n {
            let u = c.sample(&mut rng).unwrap();
            if u[0] <= 0.6 && u[1] <= 0.7 {
                hits += 1;
            }
        }
        let p_hat = hits as f64 / n as f64;
        let p = c.cdf(&[0.6, 0.7]).unwrap();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (p_hat - p).abs() <= 3.0 * se,
            "p_hat {} vs p {} (se {})",
            p_hat,
            p,
            se
        );
    }

    #[test]
    fn derived_m4_cannot_be_sampled() {
        let sub = m4_example()
            .subcopula(&SubsetMask::singleton(2, 0).unwrap())
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(sub.sample(&mut rng), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn bivariate_tail_dependence_values() {
        // independence: 2 - 2 = 0; comonotone: 2 - 1 = 1; m4 example: 2 - 1.4
        assert_eq!(
            MaxStableCopula::independence(2)
                .bivariate_tail_dependence(0, 1)
                .unwrap(),
            0.0
        );
        assert_eq!(
            MaxStableCopula::comonotone(3)
                .bivariate_tail_dependence(0, 2)
                .unwrap(),
            1.0
        );
        assert!(close(
            m4_example().bivariate_tail_dependence(0, 1).unwrap(),
            0.6,
            1e-12
        ));
        assert!(m4_example().bivariate_tail_dependence(1, 1).is_err());
    }
}
