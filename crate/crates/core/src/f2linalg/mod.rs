//! Linear algebra and classical coding theory over F2.

mod bitvec;
mod code;
mod codefile;
mod decode;
mod matrix;

pub use bitvec::BitVector;
pub use matrix::BinaryMatrix;
pub use code::{
    combinations, hamming_7_4, reed_muller, repetition, CodeClass, LinearCode, MAX_ENUMERATION_DIM,
};
pub use codefile::{format_code, parse_code, read_code};
pub use decode::{syndrome, DecodeTable, MAX_TABLE_ERRORS, MAX_TABLE_LENGTH};

/// Generator file of the `[7,4,3]` code obtained by deleting the last
/// coordinate of `RM(1,3)`.
pub const STEANE_CODE_FILE: &str = "\
# [7,4,3] punctured RM(1,3): delete the last coordinate of the [8,4,4] code
7 4
1001011
0101010
0011001
0000111
";

/// The `[7,4,3]` code underlying the 7-qubit CSS code.
pub fn steane_classical() -> LinearCode {
    parse_code(STEANE_CODE_FILE).expect("bundled code file is valid")
}
