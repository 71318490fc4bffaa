//! Exponential sums: weighted phase sums, derivative tests, bilinear sums,
//! Heath-Brown's identity, the case classifier and the `H` optimizer.

mod bilinear;
mod cases;
mod dd;
mod heath_brown;
mod phase;
mod srinivasan;

pub use bilinear::{
    bilinear_value, grid_to_csv, type_i_bound, type_i_sum, type_ii_bound, type_ii_sum, weyl_van_der_corput_check,
    BilinearPhase, BilinearSumSpec, CoefficientKind, Coefficients, GridRow, SumEstimate, GRID_CSV_HEADER,
};
pub use cases::{classify_factorization, FactorizationCase};
pub use heath_brown::{hb_decompose, hb_lambda, HbDecomposition, HbTerm};
pub use phase::{
    derivative_test_bound, phase_sum, reduced_phase, second_derivative_bound, third_derivative_bound,
    weighted_lambda_sum, weighted_lambda_sum_for, DerivativeOrder, PhaseSpec, Weight,
};
pub use srinivasan::{srinivasan_optimize, MonomialBound, Optimum};
