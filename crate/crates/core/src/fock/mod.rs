//! Sparse antisymmetric Fock space over `K1`.
//!
//! A basis vector `|s_1 < ... < s_k>` stands for `a(f_{s_1})* ... a(f_{s_k})* Ω`.

mod ops;
mod wick;

pub use ops::*;
pub use wick::{wick_exp, wick_exp_adjoint, WickHamiltonian};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::linalg::{C64, ONE};

/// Amplitudes below this magnitude are dropped.
pub const PRUNE_TOL: f64 = 1e-15;

/// Occupation set as a bitset; trailing zero words are trimmed so that equal
/// sets compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModeSet(SmallVec<[u64; 2]>);

impl ModeSet {
    pub fn empty() -> Self {
        ModeSet(SmallVec::new())
    }

    pub fn from_modes(modes: &[usize]) -> Self {
        let mut s = Self::empty();
        for &m in modes {
            s.insert(m);
        }
        s
    }

    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        w < self.0.len() && self.0[w] >> b & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if w < self.0.len() {
            self.0[w] &= !(1 << b);
            while self.0.last() == Some(&0) {
                self.0.pop();
            }
        }
    }

    /// Number of occupied modes strictly below `i`.
    pub fn count_below(&self, i: usize) -> usize {
        let (w, b) = (i / 64, i % 64);
        let mut n = 0;
        for (k, word) in self.0.iter().enumerate() {
            if k < w {
                n += word.count_ones() as usize;
            } else if k == w {
                n += (word & ((1u64 << b) - 1)).count_ones() as usize;
            }
        }
        n
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn modes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &word) in self.0.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(64 * k + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.modes().last().copied()
    }
}

impl fmt::Debug for ModeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.modes())
    }
}

/// Finite linear combination of occupation basis vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockVector {
    amps: BTreeMap<ModeSet, C64>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    modes: Vec<usize>,
    amp: [f64; 2],
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The Fock vacuum `Ω`.
    pub fn vacuum() -> Self {
        Self::basis(&[])
    }

    /// `a(f_{s_1})* ... a(f_{s_k})* Ω` for ascending `modes`.
    pub fn basis(modes: &[usize]) -> Self {
        let mut v = Self::zero();
        v.amps.insert(ModeSet::from_modes(modes), ONE);
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (ModeSet, C64)>) -> Self {
        let mut v = Self::zero();
        for (s, a) in entries {
            v.add_amp(s, a);
        }
        v.pruned()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModeSet, &C64)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amp(&self, s: &ModeSet) -> C64 {
        self.amps.get(s).copied().unwrap_or_default()
    }

    pub fn add_amp(&mut self, s: ModeSet, a: C64) {
        *self.amps.entry(s).or_default() += a;
    }

    /// Drops amplitudes below [`PRUNE_TOL`].
    pub fn pruned(mut self) -> Self {
        self.amps.retain(|_, a| a.norm() >= PRUNE_TOL);
        self
    }

    pub fn scale(&self, s: C64) -> Self {
        FockVector {
            amps: self.amps.iter().map(|(k, a)| (k.clone(), a * s)).collect(),
        }
        .pruned()
    }

    pub fn add(&self, other: &FockVector) -> Self {
        self.axpy(ONE, other)
    }

    pub fn sub(&self, other: &FockVector) -> Self {
        self.axpy(-ONE, other)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: C64, other: &FockVector) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(s, other);
        out.pruned()
    }

    /// In-place `self += s * other` without pruning.
    pub fn add_assign_scaled(&mut self, s: C64, other: &FockVector) {
        for (k, a) in &other.amps {
            *self.amps.entry(k.clone()).or_default() += a * s;
        }
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut sum = C64::default();
        for (k, a) in &small.amps {
            if let Some(b) = large.amps.get(k) {
                sum += if flip { b.conj() * a } else { a.conj() * b };
            }
        }
        sum
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest occupied mode over all terms.
    pub fn max_mode(&self) -> Option<usize> {
        self.amps.keys().filter_map(|k| k.max_mode()).max()
    }

    /// Largest particle number over all terms.
    pub fn max_particles(&self) -> usize {
        self.amps.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    /// `‖self - other‖`.
    pub fn distance(&self, other: &FockVector) -> f64 {
        self.sub(other).norm()
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<Entry> = self
            .amps
            .iter()
            .map(|(k, a)| Entry {
                modes: k.modes(),
                amp: [a.re, a.im],
            })
            .collect();
        serde_json::to_string(&entries).expect("serializable")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        let entries: Vec<Entry> = serde_json::from_str(text)?;
        for e in &entries {
            if e.modes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(crate::Error::Invalid(format!(
                    "modes must be strictly ascending: {:?}",
                    e.modes
                )));
            }
        }
        Ok(Self::from_entries(entries.into_iter().map(|e| {
            (ModeSet::from_modes(&e.modes), C64::new(e.amp[0], e.amp[1]))
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modeset_basics() {
        let mut s = ModeSet::from_modes(&[3, 70, 1]);
        assert_eq!(s.modes(), vec![1, 3, 70]);
        assert_eq!(s.count_below(70), 2);
        assert_eq!(s.count_below(2), 1);
        s.remove(70);
        assert_eq!(s, ModeSet::from_modes(&[1, 3]));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let v = FockVector::basis(&[0, 2]).scale(C64::new(0.5, -1.0)).add(&FockVector::vacuum());
        let back = FockVector::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert!(FockVector::from_json(r#"[{"modes":[2,1],"amp":[1,0]}]"#).is_err());
    }
}
