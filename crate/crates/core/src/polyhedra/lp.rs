//! Exact phase-one simplex, used only to decide feasibility.

use num_traits::{Signed, Zero};

use super::Rational;

/// Is there `x` with `rows · x = rhs`, `x_j ≥ 0` unless `free[j]`?
pub(crate) fn is_feasible(rows: &[Vec<Rational>], rhs: &[Rational], free: &[bool]) -> bool {
    let m = rows.len();
    debug_assert_eq!(rhs.len(), m);
    // free variables become differences of two nonnegative ones
    let mut columns: Vec<(usize, bool)> = Vec::new();
    for (j, &is_free) in free.iter().enumerate() {
        columns.push((j, false));
        if is_free {
            columns.push((j, true));
        }
    }
    let real = columns.len();
    let width = real + m + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let flip = rhs[i].is_negative();
        let mut t = vec![Rational::zero(); width];
        for (c, &(j, negated)) in columns.iter().enumerate() {
            let mut a = row[j].clone();
            if negated ^ flip {
                a = -a;
            }
            t[c] = a;
        }
        t[real + i] = Rational::from_integer(1.into());
        t[width - 1] = if flip { -rhs[i].clone() } else { rhs[i].clone() };
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (real..real + m).collect();
    // reduced costs of min Σ artificials; last entry is -objective
    let mut cost = vec![Rational::zero(); width];
    for t in &tableau {
        for c in 0..real {
            cost[c] -= &t[c];
        }
        cost[width - 1] -= &t[width - 1];
    }

    // Bland's rule: smallest entering index, smallest leaving basic index on ties
    while let Some(enter) = (0..real + m).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, t) in tableau.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[width - 1] / &t[enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((p, _)) = leave else {
            // unbounded below cannot happen: the objective is bounded by 0
            unreachable!("phase-one objective is bounded");
        };
        let pivot = tableau[p][enter].clone();
        for x in tableau[p].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = tableau[p].clone();
        for (i, t) in tableau.iter_mut().enumerate() {
            if i == p || t[enter].is_zero() {
                continue;
            }
            let f = t[enter].clone();
            for (x, y) in t.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    cost[width - 1].is_zero()
}
