//! Analysis engine for one-dimensional discrete-time phase retrieval.
//!
//! Given a Fourier intensity (as an autocorrelation sequence), this crate
//! enumerates every real finitely supported signal producing it, groups the
//! solutions modulo shifts and reflections, decides which of them are
//! non-negative, and builds instances with a prescribed number of
//! non-negative solutions.
//!
//! The module layout follows the pipeline:
//!
//! * [`signal`]: signals, trivial transforms, autocorrelation, intensity.
//! * [`roots`]: associated polynomial, root finding, reflection pairing.
//! * [`ambiguity`]: reconstruction from zero sets and solution enumeration.
//! * [`nonneg`]: non-negativity conditions on a free conjugate zero pair.
//! * [`generate`]: constructive instance generators and perturbation studies.
//! * [`io`]: JSON/CSV formats shared with the command line front end.

pub mod ambiguity;
pub mod error;
pub mod exec;
pub mod generate;
pub mod io;
pub mod nonneg;
pub mod poly;
pub mod roots;
pub mod signal;
pub mod tol;

pub use ambiguity::{
    enumerate_solutions, enumerate_solutions_with, reconstruct_from_zeros,
    reconstruct_from_zeros_with, verify_solution, verify_solution_with, AmbiguityReport,
    SolutionClass,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use generate::{
    gen_max_ambiguous, gen_unique, perturb_study, GenMode, GenSpec, PerturbStudy, TrialResult,
};
pub use nonneg::{
    elementary_symmetric, feasible_region, last_pair_nonneg, left_halfplane_sufficient,
    FeasibleRegion, SymmetricSeq,
};
pub use roots::{
    associated_polynomial, find_roots, find_roots_with, pair_roots, pair_roots_with,
    zeros_of_signal, zeros_of_signal_with, AssociatedPolynomial, FlipKind, FlipUnit,
    ReflectionPair,
};
pub use signal::{autocorrelation, canonicalize, fourier_intensity, reflect, shift, Autocorrelation, Signal};
pub use tol::Tolerances;

pub use num_complex::Complex64;
