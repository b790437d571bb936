//! Order-by-order rigidity obstructions of a second fundamental form.
//!
//! With `II` constant, the structure equations at order `k` reduce to a
//! finite linear system: a realizable space `V_k` of candidate `F_k`
//! coefficients and a gauge image of frame changes. `H_k` is their quotient.

mod maps;
mod tower;
mod verify;

pub use maps::{
    gauge_f3, gauge_f4, h_dim, h_element, sigma_map, sigma_polarized, symmetry_algebra, theta_map, FormMap,
    GaugeMap, GaugeOrder, SymmetryAlgebra,
};
pub use tower::{
    obstruction, obstruction_f4, realizable_f3, realizable_space, residual_f5, Arithmetic, ObstructionReport,
    OrderVerdict,
};
pub use verify::{default_mode, verify_model, Check, CheckResult, ModelVerdict, StageStatus, Verdict, VerifyOptions};
