//! Chart-level tensor calculus: fields, forms, brackets, Lie derivatives,
//! coefficient parsing and adaptive ODE integration.

pub mod fields;
pub mod integrate;
pub mod ops;
pub mod parse;

pub use fields::{
    Chart, ChartMap, MatrixField, OneForm, ScalarField, StructureTable, TimeDependentField,
    TwoForm, VectorField,
};
pub use integrate::{integrate, Monitor, Sample, Trajectory, SAMPLE_DT};
pub use ops::{
    bracket_field, differential, exterior_d, exterior_d_form, lie_bracket, lie_derivative_one_form,
    lie_derivative_rank2, lie_derivative_scalar, max_abs_diff, pullback_metric, pullback_one_form,
    pullback_two_form, pushforward_at, pushforward_via_section, sample_box, solve_linear,
    verify_structure,
};
pub use parse::{parse_coeff, CoefficientExpr};
