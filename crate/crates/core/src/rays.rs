//! Extremal rays of the recession cone `C(0) = {x : x(S) ≥ 0 ∀S ∈ F, x(N) = 0}`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::lattice::PlayerPoset;
use crate::polyhedra::{self, HPolyhedron, Rational, RationalVector};
use crate::setsystem::SetSystem;

/// The direction `1_plus - 1_minus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPairRay {
    pub plus: usize,
    pub minus: usize,
}

impl OrderedPairRay {
    pub fn new(plus: usize, minus: usize) -> Option<Self> {
        (plus != minus).then_some(Self { plus, minus })
    }

    pub fn to_vector(self, n: usize) -> RationalVector {
        let mut coords = vec![Rational::zero(); n];
        coords[self.plus] = Rational::one();
        coords[self.minus] = -Rational::one();
        RationalVector::new(coords)
    }

    /// Recognizes vectors with one `+1`, one `-1` and zeros elsewhere.
    pub fn from_vector(v: &RationalVector) -> Option<Self> {
        let (mut plus, mut minus) = (None, None);
        for (i, x) in v.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if x.is_one() && plus.is_none() {
                plus = Some(i);
            } else if *x == -Rational::one() && minus.is_none() {
                minus = Some(i);
            } else {
                return None;
            }
        }
        Self::new(plus?, minus?)
    }
}

impl fmt::Display for OrderedPairRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1_{},-1_{})", self.plus + 1, self.minus + 1)
    }
}

impl fmt::Debug for OrderedPairRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for OrderedPairRay {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.plus + 1, self.minus + 1].serialize(s)
    }
}

/// `x(S) ≥ 0` for each `S ∈ F \ {∅, N}` and `x(N) = 0`.
pub fn recession_cone(f: &SetSystem) -> HPolyhedron {
    let n = f.n();
    let mut cone = HPolyhedron::new(n);
    for &s in f.sets() {
        if !s.is_empty() && s != f.grand() {
            cone.add_inequality(RationalVector::indicator(s, n), Rational::zero())
                .expect("dimension n");
        }
    }
    cone.add_equality(RationalVector::indicator(f.grand(), n), Rational::zero())
        .expect("dimension n");
    cone
}

/// Rays of the cone of the downset lattice of `p`: one `(1_j, -1_i)` per
/// covering pair `j ≺ i`, sorted.
pub fn rays_distributive(p: &PlayerPoset) -> Vec<OrderedPairRay> {
    let mut rays: Vec<OrderedPairRay> = p
        .cover_pairs()
        .into_iter()
        .filter_map(|(lower, upper)| OrderedPairRay::new(lower, upper))
        .collect();
    rays.sort();
    rays
}

/// Player order of each maximal chain.
type Orders = Vec<Vec<usize>>;

/// `before[a][b]`: `a` is ranked before `b` in every maximal chain.
fn precedence(f: &SetSystem) -> Result<(Orders, Vec<Vec<bool>>)> {
    if !f.is_regular() {
        return Err(Error::NotRegular);
    }
    let n = f.n();
    let orders: Vec<Vec<usize>> = f
        .maximal_chains()
        .iter()
        .map(|c| c.player_order().ok_or(Error::NotRegular))
        .collect::<Result<_>>()?;
    let mut before = vec![vec![true; n]; n];
    for order in &orders {
        let mut rank = vec![0; n];
        for (pos, &p) in order.iter().enumerate() {
            rank[p] = pos;
        }
        for a in 0..n {
            for b in 0..n {
                before[a][b] &= rank[a] < rank[b];
            }
        }
    }
    Ok((orders, before))
}

fn reduce_transitively(list: &mut Vec<(usize, usize)>) {
    loop {
        let redundant = list.iter().position(|&(k, j)| {
            list.iter()
                .any(|&(a, i)| a == k && i != j && list.contains(&(i, j)))
        });
        match redundant {
            Some(pos) => {
                list.remove(pos);
            }
            None => break,
        }
    }
}

/// Rays of a regular set system, scanning pairs in the order induced by
/// maximal chain number `start` (canonical chain order).
pub fn rays_regular_from_chain(f: &SetSystem, start: usize) -> Result<Vec<OrderedPairRay>> {
    let (orders, before) = precedence(f)?;
    let order = orders
        .get(start)
        .ok_or_else(|| Error::Document(format!("no maximal chain number {start}")))?;
    let n = f.n();
    let mut list: Vec<(usize, usize)> = Vec::new();
    for x in 0..n.saturating_sub(1) {
        let i = order[x];
        for &j in &order[x + 1..] {
            if !before[i][j] {
                continue;
            }
            list.push((i, j));
            // (k, j) is the sum of (k, i) and (i, j)
            let earlier: Vec<usize> = order[..x]
                .iter()
                .copied()
                .filter(|&k| list.contains(&(k, i)))
                .collect();
            list.retain(|&(k, jj)| !(jj == j && earlier.contains(&k)));
        }
    }
    reduce_transitively(&mut list);
    let mut rays: Vec<OrderedPairRay> = list
        .into_iter()
        .filter_map(|(i, j)| OrderedPairRay::new(i, j))
        .collect();
    rays.sort();
    Ok(rays)
}

/// Rays `(1_i, -1_j)` for `j` ranked after `i` in every maximal chain,
/// transitively reduced.
///
/// These are the extremal rays of pair form. A regular system can also have
/// extremal rays with several positive entries, which this misses: for
/// `F = {∅, 3, 4, 23, 24, 234, 1234}` the cone has the extremal ray
/// `(-1,-1,1,1)`. Use [`rays_general`] when completeness matters.
pub fn rays_regular(f: &SetSystem) -> Result<Vec<OrderedPairRay>> {
    rays_regular_from_chain(f, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayReport {
    pub extremal_rays: Vec<RationalVector>,
    pub lineality: Vec<RationalVector>,
    /// Set when every extremal ray has pair form and the cone is pointed.
    pub pair_rays: Option<Vec<OrderedPairRay>>,
    pub all_pair_form: bool,
    pub closure_extremal_rays: Vec<RationalVector>,
    pub closure_lineality: Vec<RationalVector>,
    pub equals_closure_cone: bool,
    pub closure_height_is_n: bool,
}

/// Rays of `C(0)` and of the closure's cone, computed by double description.
///
/// When the closure has height `n`, equality of the two cones must coincide
/// with every ray having pair form; a disagreement is reported as
/// [`Error::Inconsistent`].
pub fn rays_general(f: &SetSystem) -> Result<RayReport> {
    let cone = polyhedra::cone_generators(&recession_cone(f));
    let closure = f.closure();
    let closure_cone = if closure == *f {
        cone.clone()
    } else {
        polyhedra::cone_generators(&recession_cone(&closure))
    };
    let pairs: Option<Vec<OrderedPairRay>> = if cone.lineality.is_empty() {
        cone.rays.iter().map(OrderedPairRay::from_vector).collect()
    } else {
        None
    };
    let all_pair_form = pairs.is_some();
    let equals = cone.rays == closure_cone.rays && cone.lineality == closure_cone.lineality;
    let closure_height_is_n = closure.height() == f.n();
    if closure_height_is_n && equals != all_pair_form {
        return Err(Error::Inconsistent(format!(
            "cone equality with closure is {equals} but pair form is {all_pair_form}"
        )));
    }
    Ok(RayReport {
        extremal_rays: cone.rays,
        lineality: cone.lineality,
        pair_rays: pairs,
        all_pair_form,
        closure_extremal_rays: closure_cone.rays,
        closure_lineality: closure_cone.lineality,
        equals_closure_cone: equals,
        closure_height_is_n,
    })
}

/// Can `target` be partitioned into nonempty members of `f`?
fn partition_exists(f: &SetSystem, target: Coalition) -> bool {
    let Some(first) = target.players().next() else {
        return true;
    };
    f.sets()
        .iter()
        .filter(|s| s.contains(first) && s.is_subset(target))
        .any(|&s| partition_exists(f, target - s))
}

/// Sufficient condition for `C(0)` and the closure's cone to coincide on a
/// weakly union-closed system: every `S` added by the closure is a disjoint
/// union of members of `F`, or `S = S1 ∩ S2` with `S1, S2 ∈ F` and
/// `N \ (S1 ∪ S2)` partitioned by members of `F`.
pub fn wuc_ray_equality_condition(f: &SetSystem) -> Result<bool> {
    if !f.is_weakly_union_closed() {
        return Err(Error::NotWeaklyUnionClosed);
    }
    let closure = f.closure();
    let grand = f.grand();
    let ok = closure
        .sets()
        .iter()
        .filter(|&&s| !f.contains(s))
        .all(|&s| {
            partition_exists(f, s)
                || f.sets().iter().enumerate().any(|(a, &s1)| {
                    f.sets()[a..].iter().any(|&s2| {
                        s1 & s2 == s && partition_exists(f, grand - (s1 | s2))
                    })
                })
        });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[&[i64]]) -> SetSystem {
        let sets: Vec<Vec<i64>> = sets.iter().map(|s| s.to_vec()).collect();
        SetSystem::from_labels(n, &sets).unwrap()
    }

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn pair(plus: usize, minus: usize) -> OrderedPairRay {
        OrderedPairRay::new(plus - 1, minus - 1).unwrap()
    }

    fn regular5() -> SetSystem {
        sys(
            5,
            &[
                &[],
                &[1],
                &[1, 4],
                &[1, 2, 4],
                &[1, 2, 3, 4],
                &[1, 2, 3, 4, 5],
                &[2, 3, 4, 5],
                &[2, 3, 4],
                &[2, 4],
                &[2],
            ],
        )
    }

    fn wuc_counterexample() -> SetSystem {
        sys(4, &[&[], &[1, 2], &[2, 3], &[1, 2, 3], &[1, 3, 4], &[1, 2, 3, 4]])
    }

    #[test]
    fn pair_vectors() {
        let r = pair(3, 4);
        assert_eq!(r.to_vector(4), v(&[0, 0, 1, -1]));
        assert_eq!(OrderedPairRay::from_vector(&v(&[0, 0, 1, -1])), Some(r));
        assert_eq!(OrderedPairRay::from_vector(&v(&[1, -1, 1, -1])), None);
        assert_eq!(OrderedPairRay::from_vector(&v(&[0, 0, 2, -2])), None);
        assert_eq!(OrderedPairRay::new(1, 1), None);
        assert_eq!(r.to_string(), "(1_3,-1_4)");
    }

    #[test]
    fn distributive_small_cases() {
        assert!(rays_distributive(&PlayerPoset::antichain(4).unwrap()).is_empty());
        let chain = PlayerPoset::total_order(&[0, 1, 2]).unwrap();
        assert_eq!(rays_distributive(&chain), vec![pair(1, 2), pair(2, 3)]);
        let cone = polyhedra::cone_generators(&recession_cone(&chain.downsets()));
        let mut expected = vec![v(&[1, -1, 0]), v(&[0, 1, -1])];
        expected.sort();
        assert_eq!(cone.rays, expected);
    }

    #[test]
    fn chain_order_rays_regular5() {
        let rays = rays_regular(&regular5()).unwrap();
        let vectors: Vec<RationalVector> = rays.iter().map(|r| r.to_vector(5)).collect();
        let mut expected = vec![v(&[0, 0, -1, 1, 0]), v(&[0, 1, -1, 0, 0]), v(&[0, 0, 1, 0, -1])];
        expected.sort();
        let mut got = vectors.clone();
        got.sort();
        assert_eq!(got, expected);
        for start in 0..4 {
            assert_eq!(rays_regular_from_chain(&regular5(), start).unwrap(), rays);
        }
        assert!(rays_regular_from_chain(&regular5(), 4).is_err());
    }

    #[test]
    fn regular_system_with_non_pair_ray() {
        let f = sys(4, &[&[], &[3], &[4], &[2, 3], &[2, 4], &[2, 3, 4], &[1, 2, 3, 4]]);
        assert!(f.is_regular());
        let cone = polyhedra::cone_generators(&recession_cone(&f));
        assert!(cone.lineality.is_empty());
        assert!(cone.rays.contains(&v(&[-1, -1, 1, 1])));
        let pairs: Vec<RationalVector> = cone
            .rays
            .iter()
            .filter(|r| OrderedPairRay::from_vector(r).is_some())
            .cloned()
            .collect();
        assert_eq!(pairs.len(), 3);
        let chain_rays = rays_regular(&f).unwrap();
        let mut vectors: Vec<RationalVector> = chain_rays.iter().map(|r| r.to_vector(4)).collect();
        vectors.sort();
        assert_eq!(vectors, pairs);
        let report = rays_general(&f).unwrap();
        assert!(!report.all_pair_form);
        assert!(!report.equals_closure_cone);
    }

    #[test]
    fn regular_small_cases() {
        assert!(rays_regular(&SetSystem::power_set(3).unwrap()).unwrap().is_empty());
        let regular4 = sys(
            4,
            &[&[], &[1], &[1, 3], &[1, 3, 4], &[1, 2, 3, 4], &[2, 3, 4], &[2, 3], &[2]],
        );
        assert_eq!(rays_regular(&regular4).unwrap(), vec![pair(3, 4)]);
        let line_system = sys(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3, 4]]);
        assert!(matches!(rays_regular(&line_system), Err(Error::NotRegular)));
    }

    #[test]
    fn general_line_system() {
        let f = sys(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3, 4]]);
        let r = rays_general(&f).unwrap();
        assert_eq!(r.lineality, vec![v(&[1, -1, 1, -1])]);
        assert_eq!(r.extremal_rays, vec![v(&[0, 0, 1, -1])]);
        assert!(!r.all_pair_form);
        assert!(!r.equals_closure_cone);
        assert!(r.closure_lineality.is_empty());
        let mut closure_rays = vec![v(&[-1, 1, 0, 0]), v(&[0, 0, 1, -1])];
        closure_rays.sort();
        assert_eq!(r.closure_extremal_rays, closure_rays);
    }

    #[test]
    fn general_wuc_counterexample() {
        let r = rays_general(&wuc_counterexample()).unwrap();
        let mut expected = vec![v(&[0, 0, 1, -1]), v(&[1, 0, 0, -1]), v(&[1, -1, 1, -1])];
        expected.sort();
        assert_eq!(r.extremal_rays, expected);
        assert!(r.lineality.is_empty());
        let mut closure = vec![v(&[0, 0, 1, -1]), v(&[1, 0, 0, -1])];
        closure.sort();
        assert_eq!(r.closure_extremal_rays, closure);
        assert!(!r.equals_closure_cone);
    }

    #[test]
    fn wuc_condition() {
        assert!(!wuc_ray_equality_condition(&wuc_counterexample()).unwrap());
        assert!(wuc_ray_equality_condition(&SetSystem::power_set(3).unwrap()).unwrap());
        let line_system = sys(4, &[&[], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3, 4]]);
        assert!(matches!(
            wuc_ray_equality_condition(&line_system),
            Err(Error::NotWeaklyUnionClosed)
        ));
        // the closure only adds 12, the disjoint union of 1 and 2
        let disjoint = sys(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        assert!(wuc_ray_equality_condition(&disjoint).unwrap());
    }
}
