//! Exact H- and V-representations of polyhedra.
//!
//! Everything here is exact rational arithmetic. [`dd_generators`] is the
//! reference computation that the structural results elsewhere in the
//! crate are checked against.

mod dd;
mod lp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::coalition::Coalition;
use crate::document::format_rational;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point or direction in `R^n` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// Characteristic vector of `s` in `R^dim`.
    pub fn indicator(s: Coalition, dim: usize) -> Self {
        Self(
            (0..dim)
                .map(|i| if s.contains(i) { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `x(S) = Σ_{i ∈ S} x_i`.
    pub fn sum_over(&self, s: Coalition) -> Rational {
        s.players().filter(|&i| i < self.dim()).map(|i| &self.0[i]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn from_bigints(v: &[BigInt]) -> Self {
        Self(v.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// Scaled by a positive factor to coprime integers.
    pub fn primitive(&self) -> Self {
        Self::from_bigints(&to_integer_row(&self.0))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}

/// One row `⟨coeffs, x⟩ (≥ | =) bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: RationalVector,
    pub bound: Rational,
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Constraint", 2)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.serialize_field("bound", &format_rational(&self.bound))?;
        st.end()
    }
}

/// `{x : ⟨a, x⟩ ≥ b for inequalities, ⟨a, x⟩ = b for equalities}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPolyhedron {
    dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    fn check(&self, coeffs: &RationalVector) -> Result<()> {
        if coeffs.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coeffs.dim(),
            });
        }
        Ok(())
    }

    pub fn add_inequality(&mut self, coeffs: RationalVector, bound: Rational) -> Result<()> {
        self.check(&coeffs)?;
        self.inequalities.push(Constraint { coeffs, bound });
        Ok(())
    }

    pub fn add_equality(&mut self, coeffs: RationalVector, bound: Rational) -> Result<()> {
        self.check(&coeffs)?;
        self.equalities.push(Constraint { coeffs, bound });
        Ok(())
    }

    /// Same rows with every bound set to zero: the recession cone.
    pub fn homogenized(&self) -> Self {
        let zero = |c: &Constraint| Constraint {
            coeffs: c.coeffs.clone(),
            bound: Rational::zero(),
        };
        Self {
            dim: self.dim,
            inequalities: self.inequalities.iter().map(zero).collect(),
            equalities: self.equalities.iter().map(zero).collect(),
        }
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.dim
            && self.inequalities.iter().all(|c| c.coeffs.dot(x) >= c.bound)
            && self.equalities.iter().all(|c| c.coeffs.dot(x) == c.bound)
    }

    /// `d` is a direction of the recession cone.
    pub fn recedes_along(&self, d: &RationalVector) -> bool {
        d.dim() == self.dim
            && self.inequalities.iter().all(|c| !c.coeffs.dot(d).is_negative())
            && self.equalities.iter().all(|c| c.coeffs.dot(d).is_zero())
    }

    /// `d` lies in the lineality space.
    pub fn is_lineal(&self, d: &RationalVector) -> bool {
        d.dim() == self.dim
            && self
                .inequalities
                .iter()
                .chain(&self.equalities)
                .all(|c| c.coeffs.dot(d).is_zero())
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`.
///
/// Canonical form: lineality is a basis in reduced echelon form scaled to
/// primitive integers with positive leading entry; vertices and rays are
/// reduced to vanish on the lineality pivot coordinates; rays are primitive
/// integer vectors. Each list is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VRepresentation {
    pub dim: usize,
    pub empty: bool,
    pub vertices: Vec<RationalVector>,
    pub rays: Vec<RationalVector>,
    pub lineality: Vec<RationalVector>,
}

impl VRepresentation {
    pub fn polytope(dim: usize, mut vertices: Vec<RationalVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        Self {
            dim,
            empty: vertices.is_empty(),
            vertices,
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Number of generators (vertices, rays and lineality vectors).
    pub fn generator_count(&self) -> usize {
        self.vertices.len() + self.rays.len() + self.lineality.len()
    }
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    dd::make_primitive(&mut out);
    out
}

/// Reduced echelon basis of `span(vectors)` with the pivot column of each row.
fn echelon_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<(usize, Vec<Rational>)> {
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut next = 0;
    for col in 0..dim {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let lead = rows[next][col].clone();
        rows[next].iter_mut().for_each(|x| *x /= &lead);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let f = row[col].clone();
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        basis.push((col, pivot_row));
        next += 1;
    }
    basis
}

/// Subtracts lineality components so the vector vanishes on pivot columns.
fn reduce(v: &[BigInt], basis: &[(usize, Vec<Rational>)]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    for (col, row) in basis {
        if !out[*col].is_zero() {
            let f = out[*col].clone();
            out.iter_mut().zip(row).for_each(|(x, y)| *x -= &f * y);
        }
    }
    out
}

struct Homogenized {
    equalities: Vec<Vec<BigInt>>,
    inequalities: Vec<Vec<BigInt>>,
}

fn homogenize(p: &HPolyhedron, with_bounds: bool) -> Homogenized {
    let row = |c: &Constraint| {
        let mut r: Vec<Rational> = c.coeffs.coords().to_vec();
        if with_bounds {
            r.push(-c.bound.clone());
        }
        to_integer_row(&r)
    };
    let mut inequalities: Vec<Vec<BigInt>> = p.inequalities.iter().map(row).collect();
    if with_bounds {
        let mut t = vec![BigInt::zero(); p.dim + 1];
        t[p.dim] = BigInt::one();
        inequalities.push(t);
    }
    Homogenized {
        equalities: p.equalities.iter().map(row).collect(),
        inequalities,
    }
}

/// Exact V-representation of `p` by double description on its homogenization.
///
/// An empty polyhedron yields `empty = true` and no generators.
pub fn dd_generators(p: &HPolyhedron) -> VRepresentation {
    let dim = p.dim;
    let h = homogenize(p, true);
    let gens = dd::cone_generators(dim + 1, &h.equalities, &h.inequalities);

    let basis = echelon_basis(&gens.lineality, dim + 1);
    let mut lineality: Vec<RationalVector> = basis
        .iter()
        .map(|(_, row)| {
            let ints = to_integer_row(&row[..dim]);
            RationalVector::from_bigints(&ints)
        })
        .collect();

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for g in &gens.rays {
        let reduced = reduce(g, &basis);
        let t = reduced[dim].clone();
        if t.is_positive() {
            vertices.push(RationalVector::new(
                reduced[..dim].iter().map(|x| x / &t).collect(),
            ));
        } else {
            rays.push(RationalVector::from_bigints(&to_integer_row(&reduced[..dim])));
        }
    }
    if vertices.is_empty() {
        return VRepresentation {
            dim,
            empty: true,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        };
    }
    for list in [&mut vertices, &mut rays, &mut lineality] {
        list.sort();
        list.dedup();
    }
    VRepresentation {
        dim,
        empty: false,
        vertices,
        rays,
        lineality,
    }
}

/// Generators of the cone `{x : rows of p with bounds set to 0}`.
///
/// Lineality is canonical as in [`VRepresentation`]; the only vertex is 0.
pub fn cone_generators(p: &HPolyhedron) -> VRepresentation {
    let dim = p.dim;
    let h = homogenize(p, false);
    let gens = dd::cone_generators(dim, &h.equalities, &h.inequalities);
    let basis = echelon_basis(&gens.lineality, dim);
    let mut lineality: Vec<RationalVector> = basis
        .iter()
        .map(|(_, row)| RationalVector::from_bigints(&to_integer_row(row)))
        .collect();
    let mut rays: Vec<RationalVector> = gens
        .rays
        .iter()
        .map(|g| RationalVector::from_bigints(&to_integer_row(&reduce(g, &basis))))
        .collect();
    rays.sort();
    rays.dedup();
    lineality.sort();
    VRepresentation {
        dim,
        empty: false,
        vertices: vec![RationalVector::zeros(dim)],
        rays,
        lineality,
    }
}

/// The polyhedron is bounded iff its recession cone is `{0}`.
pub fn is_bounded(p: &HPolyhedron) -> bool {
    cone_generators(p).is_bounded()
}

/// Exact test of `point ∈ conv(vertices) + cone(rays) + span(lineality)`.
pub fn hull_membership(point: &RationalVector, gens: &VRepresentation) -> Result<bool> {
    let dim = point.dim();
    for g in gens.vertices.iter().chain(&gens.rays).chain(&gens.lineality) {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
    }
    if gens.dim != dim {
        return Err(Error::DimensionMismatch {
            expected: gens.dim,
            found: dim,
        });
    }
    if gens.vertices.is_empty() {
        return Ok(false);
    }
    let columns: Vec<(&RationalVector, bool, bool)> = gens
        .vertices
        .iter()
        .map(|v| (v, true, false))
        .chain(gens.rays.iter().map(|r| (r, false, false)))
        .chain(gens.lineality.iter().map(|l| (l, false, true)))
        .collect();
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|i| columns.iter().map(|(g, _, _)| g.coords()[i].clone()).collect())
        .collect();
    rows.push(
        columns
            .iter()
            .map(|&(_, convex, _)| if convex { Rational::one() } else { Rational::zero() })
            .collect(),
    );
    let mut rhs: Vec<Rational> = point.coords().to_vec();
    rhs.push(Rational::one());
    let free: Vec<bool> = columns.iter().map(|&(_, _, lineal)| lineal).collect();
    Ok(lp::is_feasible(&rows, &rhs, &free))
}
