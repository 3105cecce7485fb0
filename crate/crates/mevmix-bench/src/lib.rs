//! Deterministic model fixtures shared by the criterion benchmarks.

use mevmix::{make_asymmetric_logistic, make_single, MaxStableCopula, MevMixModel};

/// Two product-copula components with smoothly varying weights.
pub fn logistic_model(dim: usize) -> MevMixModel {
    let first: Vec<f64> = (0..dim)
        .map(|i| (i as f64 + 0.5) / (dim as f64 + 1.0))
        .collect();
    let second: Vec<f64> = first.iter().map(|c| 1.0 - c).collect();
    let model =
        make_asymmetric_logistic(&[0.4, 0.85], &[first, second]).expect("consistent shapes");
    debug_assert!(model.validate().is_empty());
    model
}

/// Single moving-maxima component with a 2 x 3 index set.
pub fn m4_model(dim: usize) -> MevMixModel {
    let l_len = 2;
    let k_len = 3;
    let mut a = vec![vec![vec![0.0f64; dim]; k_len]; l_len];
    let mut col_sums = vec![0.0f64; dim];
    for (l, block) in a.iter_mut().enumerate() {
        for (k, row) in block.iter_mut().enumerate() {
            for (i, v) in row.iter_mut().enumerate() {
                *v = 1.0 + (((l * k_len + k) * dim + i) as f64) % 7.0;
                col_sums[i] += *v;
            }
        }
    }
    for block in a.iter_mut() {
        for row in block.iter_mut() {
            for (i, v) in row.iter_mut().enumerate() {
                *v /= col_sums[i];
            }
        }
    }
    let copula = MaxStableCopula::m4_from_array(a).expect("rectangular");
    let model = make_single(0.6, copula).expect("consistent shapes");
    debug_assert!(model.validate().is_empty());
    model
}

/// An interior evaluation point away from the boundary.
pub fn grid_point(dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|i| 0.15 + 0.7 * (i as f64 + 0.5) / dim as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate_at_benchmark_dimensions() {
        for dim in [2, 4, 8, 12] {
            assert!(logistic_model(dim).validate().is_empty());
            assert!(m4_model(dim).validate().is_empty());
            let u = grid_point(dim);
            assert!(u.iter().all(|&ui| (0.0..1.0).contains(&ui)));
        }
    }
}
