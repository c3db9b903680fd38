//! State files: a JSON object with the qubit count and the amplitude list,
//!
//! ```json
//! { "n": 2, "amplitudes": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [0.5, 0.0]] }
//! ```
//!
//! Each amplitude is a `[re, im]` pair; the list runs in basis-index order.
//! Values are written with shortest round-trip precision, so a file written
//! here parses back bit-identically.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::PureState;

#[derive(Serialize, Deserialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Parses a state document. The amplitude list must have length `2^n` and
/// unit norm; parse failures carry the line/column diagnostic from the JSON
/// parser.
pub fn read_state_str(text: &str) -> Result<PureState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
    let amps: Vec<Complex64> = file
        .amplitudes
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    PureState::new(file.n, amps)
}

pub fn read_state_file<P: AsRef<Path>>(path: P) -> Result<PureState> {
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::StateFile(format!("{}: {e}", path.as_ref().display()))
    })?;
    read_state_str(&text)
}

pub fn write_state_string(state: &PureState) -> String {
    let file = StateFile {
        n: state.n(),
        amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("state serialization cannot fail")
}

pub fn write_state_file<P: AsRef<Path>>(state: &PureState, path: P) -> Result<()> {
    std::fs::write(&path, write_state_string(state) + "\n").map_err(|e| {
        Error::StateFile(format!("{}: {e}", path.as_ref().display()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_ghz, make_random_state};

    #[test]
    fn round_trip_is_exact() {
        for seed in 0..5u64 {
            let state = make_random_state(3, seed).unwrap();
            let parsed = read_state_str(&write_state_string(&state)).unwrap();
            for (a, b) in state.amplitudes().iter().zip(parsed.amplitudes()) {
                assert!((a - b).norm() <= 1e-14);
                assert_eq!(a, b); // shortest round-trip floats are exact
            }
        }
    }

    #[test]
    fn files_drop_family_tags() {
        let a = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let state = make_ghz(3, a, a).unwrap();
        assert!(state.family().is_some());
        let parsed = read_state_str(&write_state_string(&state)).unwrap();
        assert!(parsed.family().is_none());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = read_state_str("{\"n\": 2,\n \"amplitudes\": [[0.5]]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "diagnostic was: {msg}");
    }

    #[test]
    fn wrong_length_and_norm_are_rejected() {
        let short = "{\"n\": 2, \"amplitudes\": [[1.0, 0.0]]}";
        assert!(matches!(
            read_state_str(short),
            Err(Error::AmplitudeLengthMismatch { .. })
        ));
        let unnormalized =
            "{\"n\": 1, \"amplitudes\": [[1.0, 0.0], [1.0, 0.0]]}";
        assert!(matches!(
            read_state_str(unnormalized),
            Err(Error::NotNormalized { .. })
        ));
    }
}
