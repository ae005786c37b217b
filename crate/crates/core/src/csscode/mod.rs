//! CSS codes from classical codes containing their dual, with encoded states
//! and transversal logical operations.

mod code;
mod layout;
mod ops;
mod states;
mod weight;

pub use code::{CssCode, PhaseSign, MAX_BLOCK_LENGTH};
pub use layout::{Block, BlockLayout};
pub use ops::{
    logical_controlled_phase, logical_pauli, measure_logical, transversal_cnot, transversal_h,
    transversal_phase, LogicalPauli, LogicalReadout,
};
pub use states::LEAKAGE_TOLERANCE;
pub use weight::error_weight;
