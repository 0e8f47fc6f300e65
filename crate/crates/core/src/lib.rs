//! Exact-arithmetic toolkit for a family of self-similar fractals built
//! from infinite words over a finite alphabet: word-level metrics, an
//! isometric-flavored embedding into sparse sequence space, the iterated
//! function system whose attractor is the embedded image, and convergence
//! diagnostics for sequences approaching a limit point.

pub mod convergence;
pub mod embedding;
pub mod error;
pub mod ifs;
pub mod lp_geometry;
pub mod rational;
pub mod symbolic;

pub use convergence::{
    check_sequence, classify, stabilization_rank, ConvergenceReport, DegenerateReason, LimitCase,
    PatternMatch, RankRecord, Verdict, WindowCheck,
};
pub use embedding::{continuity_bound, coordinate, decode, embed};
pub use error::{Error, Result};
pub use ifs::IfsFamily;
pub use lp_geometry::{
    dist_p, dist_p_pow, hausdorff, hausdorff_pow, norm_p, Exponent, PointData, PointSet, Real,
    RealData, SparsePoint,
};
pub use rational::{geometric_tail, ExactRational};
pub use symbolic::{
    baire_dist, equivalent, first_difference, identified_partner, lambda_dist, prefix_of,
    word_class, Alphabet, AlphabetData, FiniteWord, InfiniteWord, Letter, WordClass, WordData,
};
