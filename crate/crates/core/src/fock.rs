//! Fock basis of three wells at fixed total boson number.
//!
//! States are ordered by descending `n1`, then descending `n2`, so `|N,0,0>`
//! has index 0 and `|0,0,N>` is last. With `m = N - n1` the rank of a state
//! is `m(m+1)/2 + (m - n2)`, which lets [`Basis::index_of`] avoid a lookup
//! table.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
}

impl FockState {
    pub const fn new(n1: u64, n2: u64, n3: u64) -> Self {
        Self { n1, n2, n3 }
    }

    pub const fn total(&self) -> u64 {
        self.n1 + self.n2 + self.n3
    }

    pub const fn occupations(&self) -> [u64; 3] {
        [self.n1, self.n2, self.n3]
    }

    /// `n1 - n2 + n3`, the combination entering the interaction term.
    pub fn imbalance(&self) -> i64 {
        self.n1 as i64 - self.n2 as i64 + self.n3 as i64
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.n1, self.n2, self.n3)
    }
}

/// Number of Fock states of `n` bosons in three wells, `(n+1)(n+2)/2`.
pub const fn dimension(n: u64) -> u64 {
    (n + 1) * (n + 2) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    n: u64,
    states: Vec<FockState>,
}

impl Basis {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> FockState {
        self.states[i]
    }

    pub fn index_of(&self, s: &FockState) -> Result<usize> {
        if s.total() != self.n {
            return Err(Error::StateNotInBasis { state: *s, n: self.n });
        }
        let m = self.n - s.n1;
        Ok((m * (m + 1) / 2 + (m - s.n2)) as usize)
    }

    /// Index of `s` if it is a member, `None` otherwise.
    pub fn find(&self, s: &FockState) -> Option<usize> {
        self.index_of(s).ok()
    }
}

pub fn enumerate_basis(n: u64) -> Basis {
    let mut states = Vec::with_capacity(dimension(n) as usize);
    for n1 in (0..=n).rev() {
        for n2 in (0..=n - n1).rev() {
            states.push(FockState::new(n1, n2, n - n1 - n2));
        }
    }
    Basis { n, states }
}
