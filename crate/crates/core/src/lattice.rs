//! Player posets and the distributive lattices of their downsets.

use std::fmt;

use crate::coalition::{Coalition, Universe};
use crate::document::PosetDocument;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// A partial order on the players, stored as the principal downsets `↓i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlayerPoset {
    universe: Universe,
    down: Vec<Coalition>,
}

impl fmt::Debug for PlayerPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", a + 1, b + 1))
            .collect();
        write!(f, "PlayerPoset(n={}, covers=[{}])", self.n(), covers.join(", "))
    }
}

impl PlayerPoset {
    /// Builds the order generated by `strict` pairs `(i, j)` meaning `i < j`
    /// (0-based), taking the transitive closure and rejecting cycles.
    pub fn from_relations(n: usize, strict: &[(usize, usize)]) -> Result<Self> {
        let universe = Universe::new(n)?;
        let mut down: Vec<Coalition> = (0..n).map(Coalition::singleton).collect();
        for &(i, j) in strict {
            if i >= n || j >= n {
                let player = i.max(j) as i64 + 1;
                return Err(Error::PlayerOutOfRange { player, n });
            }
            if i == j {
                return Err(Error::NotAPartialOrder(format!("{} < {}", i + 1, j + 1)));
            }
            down[j] = down[j].insert(i);
        }
        // transitive closure over downsets
        for k in 0..n {
            for j in 0..n {
                if down[j].contains(k) {
                    down[j] = down[j] | down[k];
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if down[i].contains(j) && down[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "players {} and {} precede each other",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { universe, down })
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Self> {
        Universe::new(doc.n)?;
        let mut pairs = Vec::with_capacity(doc.relations.len());
        for &[i, j] in &doc.relations {
            for label in [i, j] {
                if label < 1 || label as usize > doc.n {
                    return Err(Error::PlayerOutOfRange { player: label, n: doc.n });
                }
            }
            pairs.push((i as usize - 1, j as usize - 1));
        }
        Self::from_relations(doc.n, &pairs)
    }

    /// Document listing the covering pairs.
    pub fn to_document(&self) -> PosetDocument {
        PosetDocument {
            n: self.n(),
            relations: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| [a as i64 + 1, b as i64 + 1])
                .collect(),
        }
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_relations(n, &[])
    }

    /// Total order following `order` (0-based players, smallest first).
    pub fn total_order(order: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_relations(order.len(), &pairs)
    }

    pub fn n(&self) -> usize {
        self.universe.size()
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// `↓i`, the players below or equal to `i`.
    pub fn principal_downset(&self, i: usize) -> Coalition {
        self.down[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `i ≺ j`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.less(i, j) && (0..self.n()).all(|k| !(self.less(i, k) && self.less(k, j)))
    }

    /// All covering pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.covers(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_relations(&self) -> bool {
        self.down.iter().any(|d| d.len() > 1)
    }

    /// Downset generated by `players`.
    pub fn downset_of(&self, players: Coalition) -> Coalition {
        players
            .players()
            .fold(Coalition::empty(), |acc, p| acc | self.down[p])
    }

    pub fn is_downset(&self, s: Coalition) -> bool {
        self.downset_of(s) == s
    }

    /// Minimal elements of the subposet induced on `m`.
    pub fn minimal_in(&self, m: Coalition) -> Coalition {
        Coalition::from_players(m.players().filter(|&i| (self.down[i] & m).len() == 1))
    }

    /// Maximal elements of the subposet induced on `m`.
    pub fn maximal_in(&self, m: Coalition) -> Coalition {
        Coalition::from_players(
            m.players()
                .filter(|&i| m.players().all(|j| j == i || !self.leq(i, j))),
        )
    }

    /// Height of the poset: length of a longest chain.
    pub fn height(&self) -> usize {
        self.level_partition().levels().len() - 1
    }

    /// All downsets, as a set system.
    pub fn downsets(&self) -> SetSystem {
        let grand = self.universe.grand().bits();
        let sets = (0..=grand)
            .map(Coalition::from_bits)
            .filter(|&s| self.is_downset(s));
        SetSystem::new(self.n(), sets).expect("downsets always contain ∅ and N")
    }

    /// Levels `L_1, …, L_q` by repeatedly stripping minimal elements.
    pub fn level_partition(&self) -> LevelPartition {
        let mut rest = self.universe.grand();
        let mut levels = Vec::new();
        while !rest.is_empty() {
            let level = self.minimal_in(rest);
            levels.push(level);
            rest = rest - level;
        }
        LevelPartition { levels }
    }
}

/// Generating poset of a union/intersection-closed system of height `n`:
/// `i ≤ j` iff `i` belongs to every feasible set containing `j`.
pub fn extract_poset(f: &SetSystem) -> Result<PlayerPoset> {
    if !f.is_union_intersection_closed() {
        return Err(Error::NotClosed);
    }
    let height = f.height();
    if height != f.n() {
        return Err(Error::HeightDeficient { height, n: f.n() });
    }
    let n = f.n();
    let mut pairs = Vec::new();
    for j in 0..n {
        let join_irreducible = f
            .sets()
            .iter()
            .filter(|s| s.contains(j))
            .fold(f.grand(), |acc, &s| acc & s);
        pairs.extend(join_irreducible.players().filter(|&i| i != j).map(|i| (i, j)));
    }
    PlayerPoset::from_relations(n, &pairs)
}

/// Ordered partition of the players into levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPartition {
    levels: Vec<Coalition>,
}

impl LevelPartition {
    pub fn levels(&self) -> &[Coalition] {
        &self.levels
    }
}
