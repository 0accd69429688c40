//! Exact power-sum decompositions of homogeneous forms through
//! curvilinear schemes, rational-curve interpolation and the Sylvester
//! catalecticant machinery for binary forms.

pub mod binpoly;
pub mod complex;
pub mod curvilinear;
pub mod error;
pub mod factor;
pub mod forms;
pub mod mat;
pub mod pipeline;
pub mod rat;
pub mod ratcurve;
pub mod roots;
pub mod sylvester;
pub mod ternary;
pub mod unipoly;

pub use binpoly::{squarefree_check, BinaryPoly};
pub use complex::BigComplex;
pub use error::{Error, Result};
pub use forms::{
    catalecticant_binary, expand_powersum, veronese_point, verify_decomposition,
    BinaryFormDivided, DecompTerm, Decomposition, ExpandedForm, Form, LinearForm, MonomialOrder,
    NumericForm, Residual, Scalar,
};
pub use curvilinear::{
    form_in_span, jet_matrix, minimality_reduce, span_contains, veronese_jet_matrix,
    CurvilinearScheme, JetMatrix, SchemeComponent,
};
pub use mat::{mat_kernel, Mat};
pub use pipeline::{
    decompose_via_curvilinear, fit_rational_curve, generate_instance, lift_projection,
    solve_preimage, BoundReport, FittedCurve,
};
pub use rat::Rat;
pub use ratcurve::{standard_rnc, veronese_curve, RationalCurveParam};
pub use roots::{binary_roots, BinaryRoot};
pub use sylvester::{binary_decompose, binary_rank, border_rank_binary, Branch, RankCertificate};
pub use ternary::{
    claim_checks, conic_dichotomy, curve_through_scheme, h0_ideal, line_containment,
    span_bound_report, ClaimReport, ConicVerdict, CurveReport, LinearSystemReport,
    PlaneComponent, PlaneScheme, PropReport,
};
