//! Synthesis of logical Clifford operators for stabilizer codes.
//!
//! A logical operator is described by how it acts on the logical Paulis of
//! a code. Every symplectic matrix over GF(2) consistent with that action is
//! enumerated, factored into elementary symplectic transformations, lowered
//! to a physical circuit, sign-corrected with a Pauli and verified.
//!
//! ```
//! use clifford_synth::codes::{css_build, CssSpec};
//! use clifford_synth::gf2::BinMatrix;
//! use clifford_synth::pauli::PauliOperator;
//! use clifford_synth::synth::{synthesize, CliffordSpec, Mode, SynthesisOptions};
//!
//! let code = css_build(&CssSpec::SelfOrthogonal {
//!     hc: BinMatrix::from_strs(&["111111"]).unwrap(),
//!     gx: Some(BinMatrix::from_strs(&["110000", "101000", "100100", "100010"]).unwrap()),
//!     gz: None,
//! })
//! .unwrap();
//! let spec = CliffordSpec::new("P1").map_x(0, PauliOperator::from_label("XYIIIZ").unwrap());
//! let opts = SynthesisOptions { mode: Mode::MinDepth, ..Default::default() };
//! let best = &synthesize(&code, &spec, &opts).unwrap()[0];
//! assert_eq!(best.circuit.body_text(), "P 2\nP 6\nCZ 2 6\n");
//! ```

pub mod circuit;
pub mod codes;
pub mod decompose;
pub mod error;
pub mod gf2;
pub mod par;
pub mod pauli;
pub mod sympsolve;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
