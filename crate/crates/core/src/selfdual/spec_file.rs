//! JSON operator specifications in real-basis coordinates.
//!
//! ```json
//! {"window_cols": 2, "tail_shift": 2,
//!  "tail_pattern": [[[1,0],[0,0]],[[0,0],[1,0]]],
//!  "block": [[[1,0],[0,0]], ...],
//!  "bogoliubov": true}
//! ```
//!
//! Complex numbers are `[re, im]`. `block` has `window_cols` columns and any
//! number of rows; `tail_pattern` defaults to the identity.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};

use super::{BogoliubovOp, FiniteTypeOp};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub window_cols: usize,
    pub tail_shift: isize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_pattern: Option<Vec<Vec<[f64; 2]>>>,
    pub block: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub bogoliubov: bool,
}

/// A loaded operator: validated as Bogoliubov when declared so.
#[derive(Clone, Debug)]
pub enum LoadedOperator {
    Bogoliubov(BogoliubovOp),
    General(FiniteTypeOp),
}

fn to_matrix(rows: &[Vec<[f64; 2]>], ncols: usize, what: &str) -> Result<CMatrix> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::Invalid(format!(
                "{what} row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| {
        c(rows[i][j][0], rows[i][j][1])
    }))
}

fn from_matrix(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|r| r.iter().map(|z: &C64| [z.re, z.im]).collect())
        .collect()
}

impl OperatorSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The operator in the internal (mode-basis) representation.
    pub fn to_op(&self) -> Result<FiniteTypeOp> {
        if self.tail_shift % 2 != 0 {
            return Err(Error::OddShift(self.tail_shift));
        }
        if self.window_cols % 2 != 0 {
            return Err(Error::Invalid(format!(
                "window_cols {} must be even",
                self.window_cols
            )));
        }
        let block = to_matrix(&self.block, self.window_cols, "block")?;
        let pattern = match &self.tail_pattern {
            None => CMatrix::identity(2, 2),
            Some(p) => {
                if p.len() != 2 {
                    return Err(Error::Invalid("tail_pattern must be 2x2".into()));
                }
                to_matrix(p, 2, "tail_pattern")?
            }
        };
        FiniteTypeOp::from_real_basis(&block, self.tail_shift, &pattern)
    }

    pub fn load(&self) -> Result<LoadedOperator> {
        let op = self.to_op()?;
        if self.bogoliubov {
            Ok(LoadedOperator::Bogoliubov(BogoliubovOp::new(op)?))
        } else {
            Ok(LoadedOperator::General(op))
        }
    }

    /// Real-basis description of an operator on `K`.
    pub fn from_op(op: &FiniteTypeOp, bogoliubov: bool) -> Result<Self> {
        let (block, shift, pattern) = op.to_real_basis()?;
        let clean = |m: CMatrix| m.map(|z| c(tidy(z.re), tidy(z.im)));
        let identity = (&pattern - CMatrix::identity(2, 2)).iter().all(|z| z.norm() < 1e-15);
        Ok(OperatorSpec {
            window_cols: block.ncols(),
            tail_shift: shift,
            tail_pattern: if identity {
                None
            } else {
                Some(from_matrix(&clean(pattern)))
            },
            block: from_matrix(&clean(block)),
            bogoliubov,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Zeroes floating-point noise below `1e-15`.
fn tidy(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_shift_is_rejected() {
        let s = OperatorSpec::parse(r#"{"window_cols":0,"tail_shift":1,"block":[],"bogoliubov":true}"#)
            .unwrap();
        let err = s.load().unwrap_err();
        assert!(err.to_string().contains("unsupported: odd index out of scope"));
    }

    #[test]
    fn identity_spec_round_trip() {
        let s = OperatorSpec::parse(r#"{"window_cols":0,"tail_shift":0,"block":[],"bogoliubov":true}"#)
            .unwrap();
        match s.load().unwrap() {
            LoadedOperator::Bogoliubov(v) => {
                assert_eq!(v.index(), 0);
                let back = OperatorSpec::from_op(v.op(), true).unwrap();
                assert_eq!(back.tail_shift, 0);
            }
            _ => panic!("expected Bogoliubov"),
        }
    }
}
