use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Largest supported number of players.
pub const MAX_PLAYERS: usize = 16;

/// Number of players `n`; players are indexed `0..n` internally and labeled
/// `1..=n` in documents and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Universe(usize);

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        if n > MAX_PLAYERS {
            return Err(Error::UniverseTooLarge(n));
        }
        Ok(Self(n))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn grand(self) -> Coalition {
        Coalition::full(self.0)
    }
}

/// A set of players stored as a bit mask (bit `i` is player `i + 1`).
///
/// Ordered canonically: by cardinality, then by numeric mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const fn empty() -> Self {
        Self(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        Self(((1u64 << n) - 1) as u32)
    }

    pub const fn singleton(player: usize) -> Self {
        Self(1 << player)
    }

    pub const fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Self(players.into_iter().fold(0, |acc, p| acc | (1 << p)))
    }

    /// Builds a coalition from 1-based player labels, checking the range.
    pub fn from_labels(labels: &[i64], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &label in labels {
            if label < 1 || label as usize > n {
                return Err(Error::PlayerOutOfRange { player: label, n });
            }
            bits |= 1 << (label - 1);
        }
        Ok(Self(bits))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, player: usize) -> bool {
        self.0 & (1 << player) != 0
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    pub const fn overlaps(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn insert(self, player: usize) -> Self {
        Self(self.0 | (1 << player))
    }

    /// Members as 0-based indices, ascending.
    pub fn players(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32usize).filter(move |&i| bits & (1 << i) != 0)
    }

    /// Members as 1-based labels, ascending.
    pub fn labels(self) -> Vec<usize> {
        self.players().map(|p| p + 1).collect()
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for Coalition {
    type Output = Self;

    fn bitor(self, rhs: Self) -> Self {
        Self(self.0 | rhs.0)
    }
}

impl BitAnd for Coalition {
    type Output = Self;

    fn bitand(self, rhs: Self) -> Self {
        Self(self.0 & rhs.0)
    }
}

impl Sub for Coalition {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self(self.0 & !rhs.0)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for Coalition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.labels(), s)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
