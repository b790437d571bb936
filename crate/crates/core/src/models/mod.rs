//! Model quadric systems, charts of the model varieties and their
//! fundamental forms.

mod builders;
mod mvpoly;
mod octonion;
mod param;
mod spec;

pub use builders::{build_grass_ii, build_segre_ii, build_spinor_quadrics, build_veronese_ii, SPINOR_DIM};
pub use mvpoly::MvPoly;
pub use octonion::{algebra_tables, multiplication_table, AlgebraTables, JordanElement, Octonion, Ring, FANO_TRIPLES};
pub use param::{build_parameterization, fundamental_forms, FundamentalForm, Parameterization};
pub use spec::{model_ii, model_system, ModelSpec};
