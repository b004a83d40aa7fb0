//! JSON state files.
//!
//! ```json
//! {"dims":[2,2],"amps":[[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]],"label":"bell"}
//! ```
//!
//! `amps` holds `[re, im]` pairs in row-major order. Numbers are written in
//! shortest round-trip form, so `parse_state(&emit_state(s))` is bit-exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::PureState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amps: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn into_state(self) -> Result<PureState> {
        if let Some(j) = self.dims.iter().position(|&d| d == 0) {
            return Err(Error::Shape(format!("dims[{j}] must be a positive integer")));
        }
        for (k, [re, im]) in self.amps.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Value(format!("amps[{k}] = [{re}, {im}] is not finite")));
            }
        }
        let amps = self
            .amps
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let state = PureState::new(self.dims, amps)?;
        Ok(match self.label {
            Some(label) => state.with_label(label),
            None => state,
        })
    }
}

impl From<&PureState> for StateFile {
    fn from(state: &PureState) -> Self {
        StateFile {
            dims: state.dims().to_vec(),
            amps: state.amps().iter().map(|a| [a.re, a.im]).collect(),
            label: state.label().map(str::to_owned),
        }
    }
}

pub fn parse_state(text: &str) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_state()
}

/// Canonical single-line document: keys `dims`, `amps`, then `label` if set.
pub fn emit_state(state: &PureState) -> String {
    serde_json::to_string(&StateFile::from(state)).expect("state files always serialize")
}
