//! Games on set systems, restricted cores and restricted Weber sets.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::coalition::Coalition;
use crate::document::{format_key, format_rational, parse_key, parse_rational_value, GameDocument};
use crate::error::{Error, Result};
use crate::normal::NormalCollection;
use crate::polyhedra::{self, HPolyhedron, Rational, RationalVector, VRepresentation};
use crate::setsystem::{ChainOfSets, SetSystem};

/// `v: F → Q` with `v(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    system: SetSystem,
    /// Aligned with `system.sets()`.
    values: Vec<Rational>,
}

impl Game {
    /// Every nonempty member of `system` needs a value; `∅` may be omitted.
    pub fn new(system: SetSystem, values: &BTreeMap<Coalition, Rational>) -> Result<Self> {
        for (&s, x) in values {
            if !system.contains(s) {
                return Err(Error::ValueForInfeasible(s));
            }
            if s.is_empty() && !x.is_zero() {
                return Err(Error::NonZeroEmptyValue);
            }
        }
        let values = system
            .sets()
            .iter()
            .map(|&s| match values.get(&s) {
                Some(x) => Ok(x.clone()),
                None if s.is_empty() => Ok(Rational::zero()),
                None => Err(Error::MissingValue(s)),
            })
            .collect::<Result<_>>()?;
        Ok(Self { system, values })
    }

    /// Builds `v` from a closure over the nonempty members of `system`.
    pub fn from_fn(system: SetSystem, mut f: impl FnMut(Coalition) -> Rational) -> Self {
        let values = system
            .sets()
            .iter()
            .map(|&s| if s.is_empty() { Rational::zero() } else { f(s) })
            .collect();
        Self { system, values }
    }

    pub fn from_document(doc: &GameDocument) -> Result<Self> {
        let system = SetSystem::from_document(&doc.system)?;
        let n = system.n();
        let mut values = BTreeMap::new();
        for (key, raw) in &doc.values {
            let s = Coalition::from_labels(&parse_key(key)?, n)?;
            if values.insert(s, parse_rational_value(raw)?).is_some() {
                return Err(Error::Document(format!("coalition {s} has two values")));
            }
        }
        Self::new(system, &values)
    }

    pub fn to_document(&self) -> GameDocument {
        let values = self
            .system
            .sets()
            .iter()
            .zip(&self.values)
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, x)| {
                (
                    format_key(&s.labels()),
                    serde_json::Value::String(format_rational(x)),
                )
            })
            .collect();
        GameDocument {
            system: self.system.to_document(),
            values,
        }
    }

    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn value(&self, s: Coalition) -> Option<&Rational> {
        self.system
            .sets()
            .binary_search(&s)
            .ok()
            .map(|k| &self.values[k])
    }

    fn value_of(&self, s: Coalition) -> Result<&Rational> {
        self.value(s).ok_or(Error::SetNotFeasible(s))
    }
}

/// Parses a game document.
pub fn load_game(text: &str) -> Result<Game> {
    let doc: GameDocument = serde_json::from_str(text)?;
    Game::from_document(&doc)
}

fn check_feasible(f: &SetSystem, nc: &NormalCollection) -> Result<()> {
    match nc.sets().iter().find(|&&s| !f.contains(s)) {
        Some(&s) => Err(Error::SetNotFeasible(s)),
        None => Ok(()),
    }
}

/// `x(S) ≥ v(S)` off the collection, `x(S) = v(S)` on it and on `N`.
pub fn build_restricted_core(v: &Game, nc: &NormalCollection) -> Result<HPolyhedron> {
    let f = &v.system;
    check_feasible(f, nc)?;
    let n = f.n();
    let mut core = HPolyhedron::new(n);
    for (&s, x) in f.sets().iter().zip(&v.values) {
        if s.is_empty() {
            continue;
        }
        let row = RationalVector::indicator(s, n);
        if s == f.grand() || nc.sets().contains(&s) {
            core.add_equality(row, x.clone())?;
        } else {
            core.add_inequality(row, x.clone())?;
        }
    }
    Ok(core)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalVector {
    #[serde(serialize_with = "serialize_chain")]
    pub chain: ChainOfSets,
    pub payoff: RationalVector,
}

fn serialize_chain<S: serde::Serializer>(
    chain: &ChainOfSets,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    chain.sets().serialize(s)
}

/// The player entering at step `i` receives `v(S_i) - v(S_{i-1})`.
pub fn marginal_vector(v: &Game, chain: &ChainOfSets) -> Result<MarginalVector> {
    let n = v.system.n();
    if chain.sets().last() != Some(&v.system.grand()) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: chain.sets().last().map_or(0, |s| s.len()),
        });
    }
    let mut payoff = vec![Rational::zero(); n];
    for w in chain.sets().windows(2) {
        let added = w[1] - w[0];
        if added.len() != 1 {
            return Err(Error::ChainNotRegularSteps(chain.to_string()));
        }
        let player = added.players().next().expect("one player");
        payoff[player] = v.value_of(w[1])? - v.value_of(w[0])?;
    }
    Ok(MarginalVector {
        chain: chain.clone(),
        payoff: RationalVector::new(payoff),
    })
}

/// Marginal vectors of every maximal chain of `F` passing through all of `nc`.
pub fn restricted_marginal_vectors(v: &Game, nc: &NormalCollection) -> Result<Vec<MarginalVector>> {
    if !nc.is_nested() {
        return Err(Error::CollectionNotNested);
    }
    check_feasible(&v.system, nc)?;
    let vectors: Vec<MarginalVector> = v
        .system
        .maximal_chains()
        .iter()
        .filter(|c| nc.sets().iter().all(|&s| c.contains(s)))
        .map(|c| marginal_vector(v, c))
        .collect::<Result<_>>()?;
    if vectors.is_empty() {
        return Err(Error::NoRestrictedChain);
    }
    Ok(vectors)
}

/// Convex hull of the restricted marginal vectors, as a vertex list.
///
/// Coinciding marginal vectors are merged. The list may contain points
/// that are not extreme; it is the generating set of the polytope.
pub fn restricted_weber(v: &Game, nc: &NormalCollection) -> Result<VRepresentation> {
    let points = restricted_marginal_vectors(v, nc)?
        .into_iter()
        .map(|m| m.payoff)
        .collect();
    Ok(VRepresentation::polytope(v.system.n(), points))
}

/// Supermodularity over all pairs; needs a union- and intersection-closed `F`.
pub fn is_convex(v: &Game) -> Result<bool> {
    let f = &v.system;
    if !f.is_union_intersection_closed() {
        return Err(Error::NotClosed);
    }
    let sets = f.sets();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            let lhs = v.value_of(a | b)? + v.value_of(a & b)?;
            if lhs < v.value_of(a)? + v.value_of(b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A core vertex outside the Weber set.
    Vertex,
    /// A recession direction of an unbounded core.
    Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionVerdict {
    /// The restricted core lies inside the restricted Weber set.
    pub holds: bool,
    pub witness: Option<RationalVector>,
    pub witness_kind: Option<WitnessKind>,
    /// The reverse inclusion: every marginal vector lies in the core.
    pub weber_in_core: bool,
    pub core: VRepresentation,
    pub weber: VRepresentation,
}

impl InclusionVerdict {
    /// Both inclusions hold.
    pub fn equal(&self) -> bool {
        self.holds && self.weber_in_core
    }
}

/// Decides `C_N(v) ⊆ W_N(v)` exactly, and the reverse inclusion as well.
pub fn verify_inclusion(v: &Game, nc: &NormalCollection) -> Result<InclusionVerdict> {
    let h = build_restricted_core(v, nc)?;
    let core = polyhedra::dd_generators(&h);
    let weber = restricted_weber(v, nc)?;
    let weber_in_core = weber.vertices.iter().all(|x| h.contains(x));

    let (witness, kind) = if core.empty {
        (None, None)
    } else if let Some(d) = core.rays.first().or(core.lineality.first()) {
        (Some(d.clone()), Some(WitnessKind::Direction))
    } else {
        let mut outside = None;
        for x in &core.vertices {
            if !polyhedra::hull_membership(x, &weber)? {
                outside = Some(x.clone());
                break;
            }
        }
        let kind = outside.as_ref().map(|_| WitnessKind::Vertex);
        (outside, kind)
    };
    Ok(InclusionVerdict {
        holds: witness.is_none(),
        witness,
        witness_kind: kind,
        weber_in_core,
        core,
        weber,
    })
}
