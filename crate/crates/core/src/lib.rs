//! Motion lower bounds for distance-regular graphs.
//!
//! The crate mechanizes the combinatorial machinery behind polynomial-in-d
//! motion bounds: intersection-array feasibility, intersection-matrix spectra,
//! explicit family graphs with distance-regularity verification, coherent
//! configurations with the geodesic-weight expansion bound, a brute-force
//! automorphism oracle with exact motion, the case-analysis certifier, and a
//! splitting-set base construction.
//!
//! Hot scans (subset enumeration, element scans, pair scans) run on rayon when
//! the default `parallel` feature is enabled and fall back to sequential
//! iteration otherwise; `*_seq` variants force the sequential path for
//! benchmarks and determinism checks.

pub mod arrays;
pub mod catalog;
pub mod certifier;
pub mod config;
pub mod graphs;
pub mod groups;
pub mod spectrum;

mod par;

pub use par::configure_threads;

pub use arrays::{FamilyTag, IntersectionArray};
pub use certifier::{analyze, analyze_graph, CertificateReport};
pub use graphs::Graph;
pub use groups::PermGroup;
pub use spectrum::Spectrum;
