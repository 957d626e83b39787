//! Double description over integer vectors.
//!
//! The cone `{x : E x = 0, A x ≥ 0}` is built one constraint at a time,
//! starting from the whole space. The current cone is kept as a lineality
//! basis plus extreme rays of the pointed part. While some lineality vector
//! is not orthogonal to the incoming row it is used as the pivot; otherwise
//! the classical ray-pair update runs with the combinatorial adjacency test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn with_prefix(len: usize, prefix: usize) -> Self {
        let mut b = Self::new(len);
        for k in 0..prefix {
            b.set(k);
        }
        b
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides by the gcd of the entries; the zero vector is left alone.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `alpha * u + beta * w`, made primitive.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = u.iter().zip(w).map(|(x, y)| alpha * x + beta * y).collect();
    make_primitive(&mut out);
    out
}

pub(crate) struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

struct Cone {
    lineality: Vec<Vec<BigInt>>,
    rays: Vec<Ray>,
    width: usize,
}

impl Cone {
    fn whole_space(dim: usize, width: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::from(1);
                e
            })
            .collect();
        Self {
            lineality,
            rays: Vec::new(),
            width,
        }
    }

    /// Uses a lineality vector not orthogonal to `row` as pivot, if any.
    /// Returns the pivot oriented so that `row · pivot > 0`.
    fn pivot_on_lineality(&mut self, row: &[BigInt]) -> Option<Vec<BigInt>> {
        let idx = self
            .lineality
            .iter()
            .position(|l| !dot(row, l).is_zero())?;
        let mut pivot = self.lineality.swap_remove(idx);
        let mut s = dot(row, &pivot);
        if s.is_negative() {
            pivot.iter_mut().for_each(|x| *x = -&*x);
            s = -s;
        }
        for l in &mut self.lineality {
            let t = dot(row, l);
            if !t.is_zero() {
                *l = combine(&s, l, &(-t), &pivot);
            }
        }
        for r in &mut self.rays {
            let t = dot(row, &r.v);
            if !t.is_zero() {
                r.v = combine(&s, &r.v, &(-t), &pivot);
            }
        }
        Some(pivot)
    }

    /// Rays `p ∈ plus`, `q ∈ minus` are adjacent iff no other ray is tight on
    /// every constraint both are tight on.
    fn adjacent_combinations(
        &self,
        values: &[BigInt],
        plus: &[usize],
        minus: &[usize],
    ) -> Vec<(Vec<BigInt>, Bits)> {
        let mut out = Vec::new();
        for &p in plus {
            for &q in minus {
                let common = self.rays[p].zeros.and(&self.rays[q].zeros);
                let blocked = self
                    .rays
                    .iter()
                    .enumerate()
                    .any(|(w, r)| w != p && w != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                // values[p] > 0 > values[q]
                let v = combine(&values[p], &self.rays[q].v, &(-&values[q]), &self.rays[p].v);
                out.push((v, common));
            }
        }
        out
    }

    fn split(&self, row: &[BigInt]) -> (Vec<BigInt>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let values: Vec<BigInt> = self.rays.iter().map(|r| dot(row, &r.v)).collect();
        let (mut plus, mut zero, mut minus) = (Vec::new(), Vec::new(), Vec::new());
        for (k, v) in values.iter().enumerate() {
            if v.is_positive() {
                plus.push(k);
            } else if v.is_negative() {
                minus.push(k);
            } else {
                zero.push(k);
            }
        }
        (values, plus, zero, minus)
    }

    fn add_equality(&mut self, row: &[BigInt]) {
        if self.pivot_on_lineality(row).is_some() {
            return;
        }
        let (values, plus, zero, minus) = self.split(row);
        let new_rays = self.adjacent_combinations(&values, &plus, &minus);
        let mut rays: Vec<Ray> = zero.iter().map(|&k| self.rays[k].clone()).collect();
        rays.extend(new_rays.into_iter().map(|(v, zeros)| Ray { v, zeros }));
        self.rays = rays;
    }

    /// Adds inequality number `index` (all lower-numbered ones already added).
    fn add_inequality(&mut self, row: &[BigInt], index: usize) {
        if let Some(pivot) = self.pivot_on_lineality(row) {
            for r in &mut self.rays {
                r.zeros.set(index);
            }
            self.rays.push(Ray {
                v: pivot,
                zeros: Bits::with_prefix(self.width, index),
            });
            return;
        }
        let (values, plus, zero, minus) = self.split(row);
        let new_rays = self.adjacent_combinations(&values, &plus, &minus);
        let mut rays: Vec<Ray> = Vec::with_capacity(plus.len() + zero.len() + new_rays.len());
        rays.extend(plus.iter().map(|&k| self.rays[k].clone()));
        for &k in &zero {
            let mut r = self.rays[k].clone();
            r.zeros.set(index);
            rays.push(r);
        }
        for (v, mut zeros) in new_rays {
            zeros.set(index);
            rays.push(Ray { v, zeros });
        }
        self.rays = rays;
    }
}

/// Lineality basis and extreme rays of `{x ∈ R^dim : E x = 0, A x ≥ 0}`.
///
/// Rows are processed in the given order, equalities first. Output vectors
/// are primitive but otherwise not canonicalized.
pub(crate) fn cone_generators(
    dim: usize,
    equalities: &[Vec<BigInt>],
    inequalities: &[Vec<BigInt>],
) -> ConeGenerators {
    let mut cone = Cone::whole_space(dim, inequalities.len());
    for row in equalities {
        debug_assert_eq!(row.len(), dim);
        cone.add_equality(row);
    }
    for (k, row) in inequalities.iter().enumerate() {
        debug_assert_eq!(row.len(), dim);
        cone.add_inequality(row, k);
    }
    let mut lineality = cone.lineality;
    lineality.iter_mut().for_each(|l| make_primitive(l));
    ConeGenerators {
        lineality,
        rays: cone.rays.into_iter().map(|r| r.v).collect(),
    }
}
