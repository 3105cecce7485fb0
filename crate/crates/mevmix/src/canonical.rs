//! Reference models used by the verification suite and benchmarks:
//! one representative per construction family plus a moving-maxima mixture.

use crate::copula::MaxStableCopula;
use crate::model::{
    make_asymmetric_logistic, make_geometric_mean, make_single, make_tawn_model, MevMixModel,
    TawnSubset,
};
use crate::subset::SubsetMask;

/// Single product-copula component with `alpha = 0.5`: the plain
/// Gumbel-Hougaard logistic copula in two dimensions.
pub fn single_logistic() -> MevMixModel {
    make_single(0.5, MaxStableCopula::independence(2)).expect("valid by construction")
}

/// Two product-copula components in three dimensions with asymmetric
/// weights.
pub fn asymmetric_logistic() -> MevMixModel {
    make_asymmetric_logistic(
        &[0.4, 0.8],
        &[vec![0.25, 0.5, 0.7], vec![0.75, 0.5, 0.3]],
    )
    .expect("valid by construction")
}

/// Subset-indexed model on two coordinates: both singletons plus the pair.
pub fn tawn_pair() -> MevMixModel {
    let subsets = vec![
        TawnSubset {
            subset: SubsetMask::singleton(2, 0).expect("valid mask"),
            alpha: 1.0,
            weights: vec![0.4],
        },
        TawnSubset {
            subset: SubsetMask::singleton(2, 1).expect("valid mask"),
            alpha: 1.0,
            weights: vec![0.3],
        },
        TawnSubset {
            subset: SubsetMask::full(2).expect("valid mask"),
            alpha: 0.5,
            weights: vec![0.6, 0.7],
        },
    ];
    make_tawn_model(2, &subsets).expect("valid by construction")
}

/// The weighted geometric mean of a comonotone and an independent part:
/// `(u1 ^ u2)^0.3 (u1 u2)^0.7`.
pub fn cuadras_auge() -> MevMixModel {
    make_geometric_mean(
        &[0.3, 0.7],
        &[0.5, 1.0],
        vec![
            MaxStableCopula::comonotone(2),
            MaxStableCopula::independence(2),
        ],
    )
    .expect("valid by construction")
}

/// The worked two-row moving-maxima coefficient array.
pub fn m4_example_copula() -> MaxStableCopula {
    MaxStableCopula::m4_from_array(vec![vec![vec![0.6, 0.2], vec![0.4, 0.8]]])
        .expect("rectangular array")
}

/// Mixture of two distinct moving-maxima components.
pub fn m4_mixture() -> MevMixModel {
    let first = m4_example_copula();
    let second = MaxStableCopula::m4_from_array(vec![vec![
        vec![0.1, 0.5],
        vec![0.2, 0.2],
        vec![0.7, 0.3],
    ]])
    .expect("rectangular array");
    make_geometric_mean(&[0.5, 0.5], &[0.6, 1.0], vec![first, second])
        .expect("valid by construction")
}

/// The verification set: one model per construction family plus the
/// moving-maxima mixture.
pub fn verification_models() -> Vec<(&'static str, MevMixModel)> {
    vec![
        ("single-logistic", single_logistic()),
        ("asymmetric-logistic", asymmetric_logistic()),
        ("tawn-pair", tawn_pair()),
        ("cuadras-auge", cuadras_auge()),
        ("m4-mixture", m4_mixture()),
    ]
}
