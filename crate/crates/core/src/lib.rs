//! Symmetric approximation of finite frames by normalized tight frames and
//! symmetric (Löwdin) orthogonalization of vector systems, both obtained
//! from the polar decomposition of the synthesis operator.
//!
//! ```
//! use framekit_core::{symmetric_approximation, Frame, Tolerance};
//!
//! // two copies of the vector 1 in C^1
//! let frame = Frame::from_real(1, &[vec![1.0], vec![1.0]], "two-ones").unwrap();
//! let approx = symmetric_approximation(&frame, &Tolerance::default()).unwrap();
//! assert!((approx.distance - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);
//! ```

pub mod error;
pub mod families;
pub mod frame;
pub mod linalg;
pub mod symmetric;
pub mod verify;

pub use error::{FrameError, Result};
pub use families::{
    diagnostics, kernel_witness_check, truncate, unboundedness_probe, AlphaRule, FamilySpec,
    TruncationDiagnostics,
};
pub use frame::{
    classify, frame_bounds, quadratic_distance, synthesis_matrix, weakly_similar, Frame,
    FrameBounds, FrameClass,
};
pub use linalg::{ComplexMatrix, Tolerance};
pub use num_complex::Complex64;
pub use symmetric::{
    approximation_distance_formulas, extend_orthogonalization, hs_norm_via_tight_frame,
    loewdin_orthogonalization, polar_decompose, symmetric_approximation, ApproximationResult,
    CokernelChoice, OrthogonalizationResult, PolarDecomposition,
};
pub use verify::{
    random_orthonormal_system, random_weakly_similar_tight, verify_equality_case,
    verify_lemma_frame_independence, verify_orthonormal_minimality, verify_tight_minimality,
    EqualityReport, MinimalityReport,
};
