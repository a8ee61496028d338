//! Quantum discord and lost extractable work in a bipartite predictive process.
//!
//! A system S learns about an environment X through a one-way (cascaded)
//! reservoir while X is repeatedly kicked by a local channel. The crate
//! computes the memory `I(S:X)`, the predictive power `I(S:X')`, their
//! classical and discord parts, and the work lost at each update.
//!
//! Everything is generic over the scalar through [`Real`]; the aliases below
//! fix the common `f64` and `f32` instantiations.

pub mod channel;
pub mod discord;
pub mod dynamics;
pub mod error;
pub mod info;
pub mod io;
pub mod matrix;
pub mod optimize;
pub mod protocol;
pub mod sample;
pub mod scalar;
pub mod state;
pub mod thermo;

pub use channel::{apply, decohere, lift_local, update_channel, KrausChannel};
pub use discord::{discord, semiclassical_conditional_entropy, DiscordResult};
pub use dynamics::{build_liouvillian, propagate, steady_state, steady_state_from, Liouvillian};
pub use error::{Error, Result};
pub use info::{conditional_entropy, mutual_information, von_neumann_entropy, InfoReport};
pub use matrix::{hermitian_eig, kron, matrix_exp, partial_trace, ComplexMatrix, HermitianEigen};
pub use optimize::{OptimizerConfig, OptimizerTrace};
pub use protocol::{emit_csv, run_protocol, ProtocolConfig, ProtocolRecord};
pub use scalar::{Real, Tolerances};
pub use state::{
    conditioned_state, initial_state, validate, DensityMatrix, MeasurementBasis, Ordering, Party,
};
pub use thermo::{
    extractable_work, lost_work, lost_work_decomposition, min_decoherence_lost_work, WorkLedger,
};

pub type Matrix = ComplexMatrix<f64>;
pub type State = DensityMatrix<f64>;
pub type Channel = KrausChannel<f64>;
pub type Basis = MeasurementBasis<f64>;
pub type Generator = Liouvillian<f64>;
pub type Record = ProtocolRecord<f64>;
pub type Config = ProtocolConfig<f64>;
pub type Ledger = WorkLedger<f64>;

pub type Matrix32 = ComplexMatrix<f32>;
pub type State32 = DensityMatrix<f32>;
pub type Channel32 = KrausChannel<f32>;
pub type Basis32 = MeasurementBasis<f32>;
pub type Generator32 = Liouvillian<f32>;
pub type Record32 = ProtocolRecord<f32>;
pub type Config32 = ProtocolConfig<f32>;
pub type Ledger32 = WorkLedger<f32>;
