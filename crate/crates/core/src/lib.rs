//! Closed-form solutions of the third-order system of rational difference
//! equations
//!
//! ```text
//! x_{n+1} = (a y_{n−2} x_{n−1} y_n + b x_{n−1} y_{n−2} + c y_{n−2} + d) / (y_{n−2} x_{n−1} y_n)
//! y_{n+1} = (a x_{n−2} y_{n−1} x_n + b y_{n−1} x_{n−2} + c x_{n−2} + d) / (x_{n−2} y_{n−1} x_n)
//! ```
//!
//! with `d ≠ 0`, expressed through the fourth-order linear sequence
//! `J_{n+4} = a J_{n+3} + b J_{n+2} + c J_{n+1} + d J_n` (`J = 0, 0, 1, a, ...`).
//!
//! * [`quartic`] classifies the characteristic roots into the nine
//!   multiplicity cases and [`binet`] evaluates the matching Binet formula.
//! * [`sequences`] generates `J_n` and the auxiliary `R_n`, `S_n` exactly.
//! * [`closed_form`] evaluates `x_n`, `y_n` and scans the forbidden set;
//!   [`linearized`] exposes the underlying linear system.
//! * [`oracle`] iterates the system directly in exact arithmetic and
//!   compares the two paths.

pub mod binet;
pub mod cli;
pub mod closed_form;
pub mod linearized;
pub mod oracle;
pub mod poly;
pub mod quartic;
pub mod sequences;
pub mod types;
pub mod verify;

pub use binet::{binet_eval, binet_vs_recurrence, BinetEvaluator};
pub use closed_form::{
    forbidden_scan, solve_single_equation, tetranacci_report, ClosedFormSolution, ForbiddenHit,
    ForbiddenReport,
};
pub use linearized::{Gauge, LinearizedSolution};
pub use oracle::{compare, iterate_single, iterate_system, Status, TrajectoryReport};
pub use quartic::{solve_characteristic, vieta_check, CaseTag, RootClassification};
pub use sequences::{
    j_seq, j_twisted, lemma_consistency_check, r_closed_form, s_closed_form, SeqJ, SeqRS,
};
pub use types::{
    rational_parse, ComplexF, Equation, InitialState, Letter, Params, ParseRationalError,
    Rational, SolverError,
};
