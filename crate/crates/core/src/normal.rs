//! Normal collections: coalitions whose core inequalities are turned into
//! equalities so that the core becomes bounded.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coalition::Coalition;
use crate::document::CollectionDocument;
use crate::error::{Error, Result};
use crate::lattice::PlayerPoset;
use crate::polyhedra::{self, HPolyhedron, Rational, RationalVector};
use crate::rays::{recession_cone, OrderedPairRay};
use crate::setsystem::SetSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollectionKind {
    Irredundant,
    Weber,
    GrabischXie,
    Custom,
}

impl CollectionKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Irredundant => "irredundant",
            Self::Weber => "weber",
            Self::GrabischXie => "grabisch_xie",
            Self::Custom => "custom",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "irredundant" => Some(Self::Irredundant),
            "weber" => Some(Self::Weber),
            "grabisch_xie" | "gx" => Some(Self::GrabischXie),
            "custom" => Some(Self::Custom),
            _ => None,
        }
    }
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered list `N_1, …, N_q` of coalitions, never containing `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCollection {
    kind: CollectionKind,
    sets: Vec<Coalition>,
}

impl NormalCollection {
    pub fn new(kind: CollectionKind, n: usize, sets: Vec<Coalition>) -> Result<Self> {
        let grand = Coalition::full(n);
        for &s in &sets {
            if s == grand {
                return Err(Error::GrandCoalitionInCollection);
            }
            if !s.is_subset(grand) {
                let player = (s - grand).players().next().unwrap_or(n) as i64 + 1;
                return Err(Error::PlayerOutOfRange { player, n });
            }
        }
        Ok(Self { kind, sets })
    }

    pub fn empty(kind: CollectionKind) -> Self {
        Self {
            kind,
            sets: Vec::new(),
        }
    }

    pub fn from_document(doc: &CollectionDocument, n: usize) -> Result<Self> {
        let kind = CollectionKind::parse(&doc.kind)
            .ok_or_else(|| Error::Document(format!("unknown collection kind {:?}", doc.kind)))?;
        let sets = doc
            .sets
            .iter()
            .map(|labels| Coalition::from_labels(labels, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, n, sets)
    }

    pub fn to_document(&self) -> CollectionDocument {
        CollectionDocument {
            kind: self.kind.name().to_owned(),
            sets: self
                .sets
                .iter()
                .map(|s| s.labels().into_iter().map(|l| l as i64).collect())
                .collect(),
        }
    }

    pub fn kind(&self) -> CollectionKind {
        self.kind
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

    /// Every two members are comparable under inclusion.
    pub fn is_nested(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, &a)| {
            self.sets[i + 1..]
                .iter()
                .all(|&b| a.is_subset(b) || b.is_subset(a))
        })
    }
}

impl Serialize for NormalCollection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

/// Irredundant normal sets: repeatedly drop isolated elements of the
/// remaining subposet, emit the full-poset downset of its minimal elements,
/// and remove those minimal elements.
pub fn algo1_irredundant(p: &PlayerPoset) -> NormalCollection {
    let mut remaining = p.universe().grand();
    let mut sets = Vec::new();
    loop {
        let isolated = p.minimal_in(remaining) & p.maximal_in(remaining);
        remaining = remaining - isolated;
        if remaining.is_empty() {
            break;
        }
        let minimal = p.minimal_in(remaining);
        sets.push(p.downset_of(minimal));
        remaining = remaining - minimal;
    }
    NormalCollection {
        kind: CollectionKind::Irredundant,
        sets,
    }
}

/// Cumulative unions `N_1, N_1 ∪ N_2, …` of the irredundant collection.
pub fn weber_collection(irredundant: &NormalCollection) -> Result<NormalCollection> {
    if irredundant.kind != CollectionKind::Irredundant {
        return Err(Error::WrongCollectionKind {
            expected: CollectionKind::Irredundant.name(),
            found: irredundant.kind.name(),
        });
    }
    let sets = irredundant
        .sets
        .iter()
        .scan(Coalition::empty(), |acc, &s| {
            *acc = *acc | s;
            Some(*acc)
        })
        .collect();
    Ok(NormalCollection {
        kind: CollectionKind::Weber,
        sets,
    })
}

/// `L_1, L_1 ∪ L_2, …, L_1 ∪ … ∪ L_{q-1}` over the levels of `p`.
pub fn grabisch_xie_collection(p: &PlayerPoset) -> NormalCollection {
    let levels = p.level_partition();
    let levels = levels.levels();
    let sets = levels[..levels.len().saturating_sub(1)]
        .iter()
        .scan(Coalition::empty(), |acc, &l| {
            *acc = *acc | l;
            Some(*acc)
        })
        .collect();
    NormalCollection {
        kind: CollectionKind::GrabischXie,
        sets,
    }
}

/// The equality `x(set) = 0` removes the ray `(1_j, -1_i)` iff `j ∈ set`, `i ∉ set`.
pub fn kills(ray: OrderedPairRay, set: Coalition) -> bool {
    set.contains(ray.plus) && !set.contains(ray.minus)
}

/// Recession cone of `f` with `x(S) = 0` added for every `S` in `sets`.
pub fn restricted_cone(f: &SetSystem, sets: &[Coalition]) -> HPolyhedron {
    let mut cone = recession_cone(f);
    for &s in sets {
        cone.add_equality(RationalVector::indicator(s, f.n()), Rational::zero())
            .expect("dimension n");
    }
    cone
}

fn check_feasible(f: &SetSystem, sets: &[Coalition]) -> Result<()> {
    match sets.iter().find(|&&s| !f.contains(s)) {
        Some(&s) => Err(Error::SetNotFeasible(s)),
        None => Ok(()),
    }
}

/// `true` iff turning the sets of `candidate` into equalities bounds the core.
pub fn validate_normal(f: &SetSystem, candidate: &NormalCollection) -> Result<bool> {
    check_feasible(f, &candidate.sets)?;
    Ok(polyhedra::is_bounded(&restricted_cone(f, &candidate.sets)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Replacement {
    pub original: Coalition,
    pub chosen: Coalition,
    /// Other minimum-cardinality choices, in canonical order.
    pub alternatives: Vec<Coalition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lift {
    pub collection: NormalCollection,
    pub replacements: Vec<Replacement>,
    /// Sets of the candidate with no feasible superset killing the same rays.
    pub dropped: Vec<Coalition>,
    /// Sets appended because the lifted collection did not bound the core.
    pub added: Vec<Coalition>,
}

impl Lift {
    pub fn unchanged(&self) -> bool {
        self.replacements.is_empty() && self.dropped.is_empty() && self.added.is_empty()
    }
}

/// Moves a collection computed on the closure of `f` into `f`.
///
/// Each set outside `f` is replaced by a smallest member of `f` containing
/// it that still kills every ray of `rays` it killed (ties broken by
/// canonical order). If the result does not bound the core, the smallest
/// feasible set removing the first surviving direction is appended until it
/// does.
pub fn lift_collection(
    f: &SetSystem,
    candidate: &NormalCollection,
    rays: &[OrderedPairRay],
) -> Result<Lift> {
    let grand = f.grand();
    let mut sets: Vec<Coalition> = Vec::new();
    let mut replacements = Vec::new();
    let mut dropped = Vec::new();
    for &s in &candidate.sets {
        if f.contains(s) {
            if !sets.contains(&s) {
                sets.push(s);
            }
            continue;
        }
        let killed: Vec<OrderedPairRay> = rays.iter().copied().filter(|&r| kills(r, s)).collect();
        let options: Vec<Coalition> = f
            .sets()
            .iter()
            .copied()
            .filter(|&t| t != grand && s.is_subset(t) && killed.iter().all(|&r| kills(r, t)))
            .collect();
        let Some(&best) = options.first() else {
            dropped.push(s);
            continue;
        };
        let alternatives = options[1..]
            .iter()
            .copied()
            .take_while(|t| t.len() == best.len())
            .collect();
        replacements.push(Replacement {
            original: s,
            chosen: best,
            alternatives,
        });
        if !sets.contains(&best) {
            sets.push(best);
        }
    }

    let mut added = Vec::new();
    loop {
        let cone = polyhedra::cone_generators(&restricted_cone(f, &sets));
        let Some(direction) = cone.rays.first().or(cone.lineality.first()) else {
            break;
        };
        let killer = f.sets().iter().copied().find(|&t| {
            t != grand && !sets.contains(&t) && direction.sum_over(t).is_positive()
        });
        let Some(t) = killer else {
            return Err(Error::NoFeasibleLift(direction.to_string()));
        };
        sets.push(t);
        added.push(t);
    }

    Ok(Lift {
        collection: NormalCollection {
            kind: candidate.kind,
            sets,
        },
        replacements,
        dropped,
        added,
    })
}
