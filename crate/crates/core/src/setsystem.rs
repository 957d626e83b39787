//! Set systems: collections of feasible coalitions containing `∅` and `N`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::coalition::{Coalition, Universe};
use crate::document::SystemDocument;
use crate::error::{Error, Result};

/// Presence table over all `2^n` masks.
#[derive(Clone)]
struct Presence(Vec<u64>);

impl Presence {
    fn new(n: usize) -> Self {
        Self(vec![0; (1usize << n).div_ceil(64)])
    }

    fn get(&self, c: Coalition) -> bool {
        let b = c.bits() as usize;
        self.0[b / 64] & (1 << (b % 64)) != 0
    }

    /// Returns `true` if `c` was newly inserted.
    fn insert(&mut self, c: Coalition) -> bool {
        let b = c.bits() as usize;
        let word = &mut self.0[b / 64];
        let mask = 1 << (b % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }
}

/// A validated set system, sets kept in canonical order.
#[derive(Clone)]
pub struct SetSystem {
    universe: Universe,
    sets: Vec<Coalition>,
    present: Presence,
}

impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.sets == other.sets
    }
}

impl Eq for SetSystem {}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSystem")
            .field("n", &self.n())
            .field("sets", &self.sets)
            .finish()
    }
}

impl SetSystem {
    /// Validates and canonicalizes. `∅` and `N` must be present.
    pub fn new<I: IntoIterator<Item = Coalition>>(n: usize, sets: I) -> Result<Self> {
        let universe = Universe::new(n)?;
        let grand = universe.grand();
        let mut present = Presence::new(n);
        let mut list = Vec::new();
        for set in sets {
            if !set.is_subset(grand) {
                let player = (set - grand).players().next().unwrap_or(n) as i64 + 1;
                return Err(Error::PlayerOutOfRange { player, n });
            }
            if !present.insert(set) {
                return Err(Error::DuplicateSet(set));
            }
            list.push(set);
        }
        if !present.get(Coalition::empty()) {
            return Err(Error::MissingEmptySet);
        }
        if !present.get(grand) {
            return Err(Error::MissingGrandCoalition);
        }
        list.sort();
        Ok(Self {
            universe,
            sets: list,
            present,
        })
    }

    /// Builds from 1-based label lists.
    pub fn from_labels(n: usize, sets: &[Vec<i64>]) -> Result<Self> {
        Universe::new(n)?;
        let sets = sets
            .iter()
            .map(|labels| Coalition::from_labels(labels, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn power_set(n: usize) -> Result<Self> {
        let universe = Universe::new(n)?;
        Self::new(n, (0..=universe.grand().bits()).map(Coalition::from_bits))
    }

    pub fn from_document(doc: &SystemDocument) -> Result<Self> {
        Self::from_labels(doc.n, &doc.sets)
    }

    pub fn to_document(&self) -> SystemDocument {
        SystemDocument {
            n: self.n(),
            sets: self
                .sets
                .iter()
                .map(|s| s.labels().into_iter().map(|l| l as i64).collect())
                .collect(),
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.size()
    }

    pub fn grand(&self) -> Coalition {
        self.universe.grand()
    }

    pub fn sets(&self) -> &[Coalition] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, c: Coalition) -> bool {
        c.is_subset(self.grand()) && self.present.get(c)
    }

    /// `true` if `self` contains every set of `other` (same universe).
    pub fn includes(&self, other: &SetSystem) -> bool {
        self.n() == other.n() && other.sets.iter().all(|&s| self.contains(s))
    }

    /// Upper covers of each set in `(F, ⊆)`, as indices into [`Self::sets`],
    /// each list in canonical order.
    pub fn upper_covers(&self) -> Vec<Vec<usize>> {
        let m = self.sets.len();
        let mut covers = Vec::with_capacity(m);
        for (a, &lower) in self.sets.iter().enumerate() {
            let mut found: Vec<usize> = Vec::new();
            for b in a + 1..m {
                let upper = self.sets[b];
                if !lower.is_proper_subset(upper) {
                    continue;
                }
                if found.iter().all(|&c| !self.sets[c].is_proper_subset(upper)) {
                    found.push(b);
                }
            }
            covers.push(found);
        }
        covers
    }

    /// Lengths of the shortest and longest maximal chains from `∅` to `N`.
    fn chain_length_range(&self) -> (usize, usize) {
        let covers = self.upper_covers();
        let m = self.sets.len();
        // sets[0] is ∅ and sets[m-1] is N in canonical order
        let mut shortest = vec![usize::MAX; m];
        let mut longest = vec![0usize; m];
        shortest[0] = 0;
        for a in 0..m {
            if shortest[a] == usize::MAX {
                continue;
            }
            for &b in &covers[a] {
                shortest[b] = shortest[b].min(shortest[a] + 1);
                longest[b] = longest[b].max(longest[a] + 1);
            }
        }
        (shortest[m - 1], longest[m - 1])
    }

    /// Length of a longest chain from `∅` to `N`.
    pub fn height(&self) -> usize {
        self.chain_length_range().1
    }

    /// Every maximal chain from `∅` to `N` has length `n`.
    pub fn is_regular(&self) -> bool {
        let (lo, hi) = self.chain_length_range();
        lo == self.n() && hi == self.n()
    }

    pub fn is_weakly_union_closed(&self) -> bool {
        self.all_pairs(|a, b| !a.overlaps(b) || self.contains(a | b))
    }

    pub fn is_union_intersection_closed(&self) -> bool {
        self.all_pairs(|a, b| self.contains(a | b) && self.contains(a & b))
    }

    fn all_pairs(&self, ok: impl Fn(Coalition, Coalition) -> bool) -> bool {
        self.sets
            .iter()
            .enumerate()
            .all(|(i, &a)| self.sets[i + 1..].iter().all(|&b| ok(a, b)))
    }

    pub fn classify(&self) -> StructureReport {
        let (lo, hi) = self.chain_length_range();
        let closed = self.is_union_intersection_closed();
        let closure_height = if closed {
            hi
        } else {
            self.closure().height()
        };
        StructureReport {
            is_regular: lo == self.n() && hi == self.n(),
            is_weakly_union_closed: self.is_weakly_union_closed(),
            is_union_intersection_closed: closed,
            height: hi,
            closure_height,
        }
    }

    /// Smallest union- and intersection-closed set system containing `self`.
    pub fn closure(&self) -> SetSystem {
        let mut present = self.present.clone();
        let mut sets = self.sets.clone();
        let mut queue: VecDeque<Coalition> = self.sets.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            let mut k = 0;
            while k < sets.len() {
                let y = sets[k];
                for z in [x | y, x & y] {
                    if present.insert(z) {
                        sets.push(z);
                        queue.push_back(z);
                    }
                }
                k += 1;
            }
        }
        sets.sort();
        SetSystem {
            universe: self.universe,
            sets,
            present,
        }
    }

    /// All maximal chains `∅ ⊂ … ⊂ N`, depth-first along canonically ordered covers.
    pub fn maximal_chains(&self) -> Vec<ChainOfSets> {
        let covers = self.upper_covers();
        let last = self.sets.len() - 1;
        let mut out = Vec::new();
        let mut path = vec![0usize];
        fn walk(
            node: usize,
            last: usize,
            covers: &[Vec<usize>],
            sets: &[Coalition],
            path: &mut Vec<usize>,
            out: &mut Vec<ChainOfSets>,
        ) {
            if node == last {
                out.push(ChainOfSets {
                    sets: path.iter().map(|&i| sets[i]).collect(),
                });
                return;
            }
            for &next in &covers[node] {
                path.push(next);
                walk(next, last, covers, sets, path, out);
                path.pop();
            }
        }
        if last == 0 {
            // n ≥ 1 so ∅ ≠ N; unreachable for a valid system
            return out;
        }
        walk(0, last, &covers, &self.sets, &mut path, &mut out);
        out
    }
}

/// A strictly increasing chain of coalitions from `∅` to `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainOfSets {
    sets: Vec<Coalition>,
}

impl ChainOfSets {
    /// Checks strict inclusion, `∅` first and `N` last (for universe size `n`).
    pub fn new(n: usize, sets: Vec<Coalition>) -> Result<Self> {
        let bad = |why: &str| Error::Document(format!("invalid chain: {why}"));
        if sets.first() != Some(&Coalition::empty()) {
            return Err(bad("must start with the empty coalition"));
        }
        if sets.last() != Some(&Coalition::full(n)) {
            return Err(bad("must end with the grand coalition"));
        }
        if sets.windows(2).any(|w| !w[0].is_proper_subset(w[1])) {
            return Err(bad("sets must be strictly increasing"));
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[Coalition] {
        &self.sets
    }

    pub fn contains(&self, c: Coalition) -> bool {
        self.sets.contains(&c)
    }

    /// The player order induced by the chain, if every step adds exactly
    /// one player.
    pub fn player_order(&self) -> Option<Vec<usize>> {
        self.sets
            .windows(2)
            .map(|w| {
                let added = w[1] - w[0];
                (added.len() == 1).then(|| added.players().next().unwrap())
            })
            .collect()
    }
}

impl fmt::Display for ChainOfSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.sets.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊂ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_regular: bool,
    pub is_weakly_union_closed: bool,
    pub is_union_intersection_closed: bool,
    pub height: usize,
    pub closure_height: usize,
}

/// Parses a set-system document `{"n": .., "sets": [[..], ..]}`.
pub fn load_set_system(text: &str) -> Result<SetSystem> {
    let doc: SystemDocument = serde_json::from_str(text)?;
    SetSystem::from_document(&doc)
}
