//! Fourier analysis of signals on directed acyclic graphs.
//!
//! A DAG's adjacency matrix is nilpotent, so it has no useful eigenbasis.
//! This crate completes a DAG to one with a Hamiltonian path, closes that path
//! into a cycle through `M` zero-valued padding vertices, and eigendecomposes
//! the result. Polynomial filters of order `S <= M` evaluated spectrally on the
//! padded graph agree with vertex-domain evaluation on the original DAG.
//!
//! Modules:
//! - [`graph`]: validated digraphs and DAGs, topological order, Hamiltonian paths.
//! - [`padding`]: connectivity completion and zero-padding.
//! - [`spectral`]: eigendecomposition, GFT/IGFT and frequency reports.
//! - [`exact`]: exact characteristic polynomials and determinants.
//! - [`filtering`]: vertex-domain and spectral polynomial filters.
//! - [`census`]: exhaustive distinctness census of connected DAGs.
//! - [`io`] and [`cli`]: file formats and the `dagzp` command.

pub mod census;
pub mod cli;
pub mod error;
pub mod exact;
pub mod filtering;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod padding;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use filtering::{apply_vertex_domain, filter_via_zero_padding, FilterCoeffs, ZeroPadFilter};
pub use graph::{Dag, Digraph, Edge, GraphSignal};
pub use matrix::Matrix;
pub use padding::{
    close_cycle, connect_dag, zero_pad_connected, zero_pad_general, PadOptions, PaddedDag,
};
pub use scalar::{Field, ModP, Real, Ring};
pub use spectral::{eigendecompose, EigenDecomposition, SpectralConfig};

pub type DagF64 = Dag<f64>;
pub type DagF32 = Dag<f32>;
pub type RationalDag = Dag<num_rational::BigRational>;
pub type PaddedDagF64 = PaddedDag<f64>;
pub type PaddedDagF32 = PaddedDag<f32>;
pub type EigenDecompositionF64 = EigenDecomposition<f64>;
pub type EigenDecompositionF32 = EigenDecomposition<f32>;
pub type ZeroPadFilterF64 = ZeroPadFilter<f64>;
pub type MatrixF64 = Matrix<f64>;
