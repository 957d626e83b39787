#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use restricted_core::polyhedra::{cone_generators, dd_generators, hull_membership};
use restricted_core::{
    Coalition, Game, HPolyhedron, PlayerPoset, Rational, RationalVector, SetSystem,
    VRepresentation,
};

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

pub fn v(xs: &[i64]) -> RationalVector {
    RationalVector::from_ints(xs)
}

pub fn c(labels: &[i64], n: usize) -> Coalition {
    Coalition::from_labels(labels, n).unwrap()
}

pub fn sys(n: usize, sets: &[&[i64]]) -> SetSystem {
    let sets: Vec<Vec<i64>> = sets.iter().map(|s| s.to_vec()).collect();
    SetSystem::from_labels(n, &sets).unwrap()
}

pub fn sorted(mut xs: Vec<RationalVector>) -> Vec<RationalVector> {
    xs.sort();
    xs
}

/// Random order on `n` players: each pair of a random permutation is related
/// with probability `density`.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> PlayerPoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                pairs.push((perm[a], perm[b]));
            }
        }
    }
    PlayerPoset::from_relations(n, &pairs).unwrap()
}

/// Union of the prefix chains of a few random permutations, kept only when
/// every maximal chain has unit steps. Returns `None` on rejection.
pub fn random_regular_candidate(rng: &mut ChaCha8Rng, n: usize) -> Option<SetSystem> {
    let chains = rng.random_range(1..=4);
    let mut sets = vec![Coalition::empty()];
    for _ in 0..chains {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut s = Coalition::empty();
        for &p in &perm {
            s = s.insert(p);
            sets.push(s);
        }
    }
    sets.sort();
    sets.dedup();
    let f = SetSystem::new(n, sets).unwrap();
    f.is_regular().then_some(f)
}

pub fn random_regular(rng: &mut ChaCha8Rng, n: usize) -> SetSystem {
    loop {
        if let Some(f) = random_regular_candidate(rng, n) {
            return f;
        }
    }
}

/// Any set system on `n` players: each proper nonempty subset with probability `p`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SetSystem {
    let grand = Coalition::full(n);
    let mut sets = vec![Coalition::empty(), grand];
    for bits in 1..grand.bits() {
        if rng.random_bool(p) {
            sets.push(Coalition::from_bits(bits));
        }
    }
    SetSystem::new(n, sets).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=3))
}

/// Random game; with `anchor` the values are shifted so that a random point
/// satisfies every constraint with equality on `tight`.
pub fn random_game(
    rng: &mut ChaCha8Rng,
    f: &SetSystem,
    anchor: bool,
    tight: &[Coalition],
) -> Game {
    let n = f.n();
    let x: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
    let x = RationalVector::new(x);
    let grand = f.grand();
    Game::from_fn(f.clone(), |s| {
        if !anchor {
            random_rational(rng)
        } else if s == grand || tight.contains(&s) {
            x.sum_over(s)
        } else {
            x.sum_over(s) - rat(rng.random_range(0..=4), rng.random_range(1..=2))
        }
    })
}

/// Supermodular game: nonnegative unanimity games, a convex function of a
/// weight, and an additive part.
pub fn random_convex_game(rng: &mut ChaCha8Rng, f: &SetSystem) -> Game {
    let n = f.n();
    let units: Vec<(Coalition, Rational)> = (0..rng.random_range(1..=4))
        .map(|_| {
            let t = Coalition::from_bits(rng.random_range(1..=Coalition::full(n).bits()));
            (t, rat(rng.random_range(0..=4), rng.random_range(1..=2)))
        })
        .collect();
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(0..=2)).collect();
    let additive: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
    Game::from_fn(f.clone(), |s| {
        let w: i64 = s.players().map(|p| weights[p]).sum();
        let unanimity: Rational = units
            .iter()
            .filter(|(t, _)| t.is_subset(s))
            .map(|(_, a)| a.clone())
            .sum();
        let linear: Rational = s.players().map(|p| additive[p].clone()).sum();
        unanimity + int(w * w) + linear
    })
}

/// Rows of the homogenized system: each `a·x ≥ b` becomes `(a, -b)·(x, t) ≥ 0`.
fn homogeneous_rows(h: &HPolyhedron) -> (Vec<RationalVector>, Vec<RationalVector>) {
    let lift = |c: &restricted_core::polyhedra::Constraint| {
        let mut coords = c.coeffs.coords().to_vec();
        coords.push(-c.bound.clone());
        RationalVector::new(coords)
    };
    let mut ineq: Vec<RationalVector> = h.inequalities().iter().map(lift).collect();
    let mut t = vec![Rational::zero(); h.dim() + 1];
    t[h.dim()] = Rational::one();
    ineq.push(RationalVector::new(t));
    (ineq, h.equalities().iter().map(lift).collect())
}

fn homogeneous_generators(g: &VRepresentation) -> (Vec<RationalVector>, Vec<RationalVector>) {
    let with = |x: &RationalVector, last: Rational| {
        let mut coords = x.coords().to_vec();
        coords.push(last);
        RationalVector::new(coords)
    };
    let rays = g
        .vertices
        .iter()
        .map(|x| with(x, Rational::one()))
        .chain(g.rays.iter().map(|x| with(x, Rational::zero())))
        .collect();
    let lineality = g.lineality.iter().map(|x| with(x, Rational::zero())).collect();
    (rays, lineality)
}

fn cone_of(dim: usize, rays: Vec<RationalVector>, lineality: Vec<RationalVector>) -> VRepresentation {
    VRepresentation {
        dim,
        empty: false,
        vertices: vec![RationalVector::zeros(dim)],
        rays,
        lineality,
    }
}

/// Exact self-test of a V-representation against its H-representation.
///
/// 1. Every generator satisfies every constraint.
/// 2. The facets of the generated cone (polar double description) are each
///    implied by the original rows (Farkas, by exact simplex), and
///    enumerating them again reproduces the same generators.
/// 3. With at most `extremality_limit` generators, none is redundant.
pub fn self_test(h: &HPolyhedron, g: &VRepresentation, extremality_limit: usize) -> Result<(), String> {
    if g.empty {
        return Ok(());
    }
    for x in &g.vertices {
        if !h.contains(x) {
            return Err(format!("vertex {x} violates a constraint"));
        }
    }
    for r in &g.rays {
        if !h.recedes_along(r) {
            return Err(format!("ray {r} is not a recession direction"));
        }
    }
    for l in &g.lineality {
        if !h.is_lineal(l) {
            return Err(format!("lineality vector {l} is not lineal"));
        }
    }

    let (back, facets) = facet_description(g);
    let (rows, eq_rows) = homogeneous_rows(h);
    let row_cone = cone_of(h.dim() + 1, rows, eq_rows);
    for y in facets.rays.iter().chain(&facets.lineality) {
        if !hull_membership(y, &row_cone).map_err(|e| e.to_string())? {
            return Err(format!("facet {y} of the generated cone is not implied"));
        }
    }
    for y in &facets.lineality {
        let neg = RationalVector::new(y.coords().iter().map(|x| -x).collect());
        if !hull_membership(&neg, &row_cone).map_err(|e| e.to_string())? {
            return Err(format!("implicit equality {y} is not implied"));
        }
    }
    let again = dd_generators(&back);
    if again != *g {
        return Err("round trip through the facet description changed the generators".into());
    }

    if g.generator_count() <= extremality_limit {
        for (k, x) in g.vertices.iter().enumerate() {
            let mut others = g.clone();
            others.vertices.remove(k);
            if !others.vertices.is_empty() && hull_membership(x, &others).map_err(|e| e.to_string())? {
                return Err(format!("vertex {x} is not extreme"));
            }
        }
        for (k, r) in g.rays.iter().enumerate() {
            let mut others = g.rays.clone();
            others.remove(k);
            let cone = cone_of(h.dim(), others, g.lineality.clone());
            if hull_membership(r, &cone).map_err(|e| e.to_string())? {
                return Err(format!("ray {r} is not extreme"));
            }
        }
    }
    Ok(())
}

/// H-description of the set generated by `g`, from double description on
/// the polar of its homogenization. Also returns the polar generators.
pub fn facet_description(g: &VRepresentation) -> (HPolyhedron, VRepresentation) {
    let n = g.dim;
    let (gen_rays, gen_lin) = homogeneous_generators(g);
    let mut polar = HPolyhedron::new(n + 1);
    for r in &gen_rays {
        polar.add_inequality(r.clone(), Rational::zero()).unwrap();
    }
    for l in &gen_lin {
        polar.add_equality(l.clone(), Rational::zero()).unwrap();
    }
    let facets = cone_generators(&polar);
    let split = |y: &RationalVector| {
        let coords = y.coords();
        (RationalVector::new(coords[..n].to_vec()), -coords[n].clone())
    };
    let mut back = HPolyhedron::new(n);
    for y in &facets.rays {
        let (a, b) = split(y);
        back.add_inequality(a, b).unwrap();
    }
    for y in &facets.lineality {
        let (a, b) = split(y);
        back.add_equality(a, b).unwrap();
    }
    (back, facets)
}

/// Round trip for a polytope given by points: the facets of their hull,
/// enumerated again, give a subset of the points whose hull contains all of them.
pub fn self_test_points(g: &VRepresentation) -> Result<(), String> {
    let (back, _) = facet_description(g);
    let again = dd_generators(&back);
    if !again.is_bounded() || again.empty {
        return Err("hull of finitely many points is not a nonempty polytope".into());
    }
    for x in &again.vertices {
        if !g.vertices.contains(x) {
            return Err(format!("round trip produced a new vertex {x}"));
        }
    }
    for x in &g.vertices {
        if !back.contains(x) || !hull_membership(x, &again).map_err(|e| e.to_string())? {
            return Err(format!("point {x} lost in the round trip"));
        }
    }
    Ok(())
}

/// Extreme rays of a pointed cone by enumerating row subsets of rank `n - 1`.
/// Exponential; meant for tiny instances only.
pub fn brute_force_rays(h: &HPolyhedron) -> Vec<RationalVector> {
    let n = h.dim();
    let ineq: Vec<&[Rational]> = h.inequalities().iter().map(|c| c.coeffs.coords()).collect();
    let eq: Vec<&[Rational]> = h.equalities().iter().map(|c| c.coeffs.coords()).collect();
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    subsets(&ineq, &eq, n, 0, &mut chosen, &mut found, h);
    found.sort();
    found.dedup();
    found
}

fn subsets<'a>(
    ineq: &[&'a [Rational]],
    eq: &[&'a [Rational]],
    n: usize,
    start: usize,
    chosen: &mut Vec<&'a [Rational]>,
    found: &mut Vec<RationalVector>,
    h: &HPolyhedron,
) {
    let rows: Vec<&[Rational]> = eq.iter().copied().chain(chosen.iter().copied()).collect();
    let (rank, kernel) = null_space(&rows, n);
    if rank == n - 1 {
        let d = RationalVector::new(kernel);
        for cand in [d.clone(), RationalVector::new(d.coords().iter().map(|x| -x).collect())] {
            if h.recedes_along(&cand) {
                found.push(cand.primitive());
            }
        }
        return;
    }
    if rank >= n {
        return;
    }
    for k in start..ineq.len() {
        chosen.push(ineq[k]);
        let (r2, _) = null_space(
            &eq.iter().copied().chain(chosen.iter().copied()).collect::<Vec<_>>(),
            n,
        );
        if r2 > rank {
            subsets(ineq, eq, n, k + 1, chosen, found, h);
        }
        chosen.pop();
    }
}

/// Rank of `rows` and, when the rank is `n - 1`, a spanning kernel vector.
fn null_space(rows: &[&[Rational]], n: usize) -> (usize, Vec<Rational>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(p) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, p);
        let lead = m[next][col].clone();
        m[next].iter_mut().for_each(|x| *x /= &lead);
        let pivot_row = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let f = row[col].clone();
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let rank = pivots.len();
    if rank + 1 != n {
        return (rank, Vec::new());
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut kernel = vec![Rational::zero(); n];
    kernel[free] = Rational::one();
    for (r, &col) in pivots.iter().enumerate() {
        kernel[col] = -m[r][free].clone();
    }
    (rank, kernel)
}

pub fn is_pointed(g: &VRepresentation) -> bool {
    g.lineality.is_empty()
}

pub fn nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
