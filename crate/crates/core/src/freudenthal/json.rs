//! JSON forms of elements of `W_J`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{q_to_rats, rats_to_q, Rat, Q};

use super::WElem;

/// `{"a": "1", "b": [...], "c": [...], "d": "0"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WElementJson {
    /// First scalar.
    pub a: Rat,
    /// Coordinates of `b` in the canonical basis of `J`.
    pub b: Vec<Rat>,
    /// Coordinates of `c`.
    pub c: Vec<Rat>,
    /// Last scalar.
    pub d: Rat,
}

impl WElementJson {
    /// Converts to an element, checking that `b` and `c` have length `dim`.
    pub fn to_welem(&self, dim: usize) -> Result<WElem<Q>> {
        if self.b.len() != dim || self.c.len() != dim {
            return Err(Error::Parse(format!(
                "expected b and c of length {dim}, got {} and {}",
                self.b.len(),
                self.c.len()
            )));
        }
        Ok(WElem::new(self.a.0.clone(), rats_to_q(&self.b), rats_to_q(&self.c), self.d.0.clone()))
    }
}

impl From<&WElem<Q>> for WElementJson {
    fn from(x: &WElem<Q>) -> Self {
        WElementJson { a: Rat(x.a.clone()), b: q_to_rats(&x.b), c: q_to_rats(&x.c), d: Rat(x.d.clone()) }
    }
}

/// A Bhargava cube `{"cube": [a, b1, b2, b3, c1, c2, c3, d]}`, read as the
/// element `(a, (b1,b2,b3), (c1,c2,c3), d)` of `W_{Q^3}` in idempotent
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    /// The eight entries.
    pub cube: [Rat; 8],
}

impl CubeJson {
    /// The element of `W_{Q^3}`.
    pub fn to_welem(&self) -> WElem<Q> {
        let x = rats_to_q(&self.cube);
        WElem::from_vec(&x)
    }
}

impl From<&WElem<Q>> for CubeJson {
    fn from(x: &WElem<Q>) -> Self {
        let v = x.to_vec();
        CubeJson { cube: std::array::from_fn(|k| Rat(v[k].clone())) }
    }
}
