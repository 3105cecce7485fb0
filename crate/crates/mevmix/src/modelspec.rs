//! The model-spec JSON format.
//!
//! The general form lists explicit components:
//!
//! ```json
//! {
//!   "d": 2,
//!   "components": [
//!     {"alpha": 0.5, "beta": [0.6, 0.4], "copula": {"kind": "independence"}},
//!     {"alpha": 1.0, "beta": [0.4, 0.6], "copula": {"kind": "gumbel", "r": 0.5}}
//!   ]
//! }
//! ```
//!
//! Copula kinds: `independence`, `comonotone`, `gumbel` (field `r`), and
//! `m4` (field `a` indexed `[l][k][i]`). Convenience presets expand to the
//! general form before any validation, so the general evaluator stays the
//! single source of truth:
//!
//! ```json
//! {"preset": "asymmetric_logistic", "alphas": [0.5], "betas": [[1.0, 1.0]]}
//! {"preset": "tawn", "d": 2,
//!  "subsets": [{"coords": [1, 2], "alpha": 0.5, "beta": [1.0, 1.0]}]}
//! {"preset": "geometric_mean", "d": 2, "weights": [0.3, 0.7],
//!  "alphas": [0.5, 1.0],
//!  "copulas": [{"kind": "comonotone"}, {"kind": "independence"}]}
//! ```
//!
//! Parsing performs structural checks only (shapes, known kinds); numeric
//! constraints stay with model validation so that a loaded spec can be
//! *reported on* rather than rejected outright.

use serde::{Deserialize, Serialize};

use crate::copula::{CopulaKind, MaxStableCopula};
use crate::error::{Error, Result};
use crate::model::{
    make_asymmetric_logistic, make_geometric_mean, make_tawn_model, MevMixModel,
    MixtureComponent, TawnSubset,
};
use crate::stable::StableAlpha;
use crate::subset::SubsetMask;

/// One copula in the JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CopulaSpec {
    Independence,
    Comonotone,
    Gumbel { r: f64 },
    M4 { a: Vec<Vec<Vec<f64>>> },
}

impl CopulaSpec {
    /// Materialize at the dimension fixed by the surrounding component.
    pub fn build(&self, dim: usize) -> Result<MaxStableCopula> {
        match self {
            CopulaSpec::Independence => Ok(MaxStableCopula::independence(dim)),
            CopulaSpec::Comonotone => Ok(MaxStableCopula::comonotone(dim)),
            CopulaSpec::Gumbel { r } => Ok(MaxStableCopula::gumbel_logistic(dim, *r)),
            CopulaSpec::M4 { a } => {
                let c = MaxStableCopula::m4_from_array(a.clone())?;
                if c.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        actual: c.dim(),
                    });
                }
                Ok(c)
            }
        }
    }

    /// Schema form of an in-memory copula.
    pub fn from_copula(c: &MaxStableCopula) -> CopulaSpec {
        match c.kind() {
            CopulaKind::Independence => CopulaSpec::Independence,
            CopulaKind::Comonotone => CopulaSpec::Comonotone,
            CopulaKind::GumbelLogistic { r } => CopulaSpec::Gumbel { r: *r },
            CopulaKind::M4(coeffs) => CopulaSpec::M4 {
                a: coeffs.coefficients().clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub alpha: f64,
    pub beta: Vec<f64>,
    pub copula: CopulaSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralSpec {
    pub d: usize,
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TawnSubsetSpec {
    /// 1-based coordinates of the subset.
    pub coords: Vec<usize>,
    pub alpha: f64,
    /// One weight per coordinate in `coords`.
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresetSpec {
    AsymmetricLogistic {
        alphas: Vec<f64>,
        betas: Vec<Vec<f64>>,
    },
    Tawn {
        d: usize,
        subsets: Vec<TawnSubsetSpec>,
    },
    GeometricMean {
        d: usize,
        weights: Vec<f64>,
        alphas: Vec<f64>,
        copulas: Vec<CopulaSpec>,
    },
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse {
        detail: e.to_string(),
    }
}

/// Parse a model-spec document (general form or preset) into a model.
///
/// Structural problems (bad JSON, unknown kinds, ragged arrays) fail here;
/// numeric constraint checking is the caller's next step via
/// [`MevMixModel::validate`].
pub fn parse_model_spec(text: &str) -> Result<MevMixModel> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        detail: "top-level value must be an object".to_string(),
    })?;
    if obj.contains_key("preset") {
        let preset: PresetSpec = serde_json::from_value(value.clone()).map_err(parse_err)?;
        expand_preset(preset)
    } else {
        let general: GeneralSpec = serde_json::from_value(value.clone()).map_err(parse_err)?;
        build_general(general)
    }
}

fn build_general(spec: GeneralSpec) -> Result<MevMixModel> {
    let d = spec.d;
    let components = spec
        .components
        .into_iter()
        .map(|c| {
            if c.beta.len() != d {
                return Err(Error::Parse {
                    detail: format!(
                        "component beta row has {} entries, expected d = {}",
                        c.beta.len(),
                        d
                    ),
                });
            }
            let copula = c.copula.build(d)?;
            MixtureComponent::new(StableAlpha::new_unchecked(c.alpha), c.beta, copula)
        })
        .collect::<Result<Vec<_>>>()?;
    MevMixModel::new(components)
}

fn expand_preset(preset: PresetSpec) -> Result<MevMixModel> {
    match preset {
        PresetSpec::AsymmetricLogistic { alphas, betas } => {
            make_asymmetric_logistic(&alphas, &betas)
        }
        PresetSpec::Tawn { d, subsets } => {
            let subsets = subsets
                .into_iter()
                .map(|s| {
                    let indices: Vec<usize> = s
                        .coords
                        .iter()
                        .map(|&c| {
                            if c == 0 || c > d {
                                Err(Error::Parse {
                                    detail: format!("coordinate {} out of 1..={}", c, d),
                                })
                            } else {
                                Ok(c - 1)
                            }
                        })
                        .collect::<Result<_>>()?;
                    Ok(TawnSubset {
                        subset: SubsetMask::from_indices(d, &indices)?,
                        alpha: s.alpha,
                        weights: s.beta,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            make_tawn_model(d, &subsets)
        }
        PresetSpec::GeometricMean {
            d,
            weights,
            alphas,
            copulas,
        } => {
            let copulas = copulas
                .iter()
                .map(|c| c.build(d))
                .collect::<Result<Vec<_>>>()?;
            make_geometric_mean(&weights, &alphas, copulas)
        }
    }
}

/// Render a model back into the general-form schema.
pub fn model_to_spec(model: &MevMixModel) -> GeneralSpec {
    GeneralSpec {
        d: model.dim(),
        components: model
            .components()
            .iter()
            .map(|c| ComponentSpec {
                alpha: c.alpha().get(),
                beta: c.weights().to_vec(),
                copula: CopulaSpec::from_copula(c.copula()),
            })
            .collect(),
    }
}
