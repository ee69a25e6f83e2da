//! Dense two-phase simplex for the tiny linear programs behind the hull
//! membership predicates.
//!
//! Every instance this crate creates has at most a few dozen variables and
//! coefficients of unit-ball magnitude, so a plain tableau with Bland's rule
//! is adequate, fully deterministic, and cannot cycle.

/// Entries smaller than this are not eligible as pivots.
const PIVOT_TOL: f64 = 1e-11;
/// Reduced costs must exceed this to qualify as improving.
const COST_TOL: f64 = 1e-10;
/// Phase-1 residual below which the program counts as feasible.
const FEAS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

/// Maximize `c . x` subject to `A x = b`, `x >= 0`.
///
/// `a` is given row-major; rows with negative right-hand side are negated
/// internally, so `b` may have any sign.
pub(crate) fn maximize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    if m == 0 {
        if c.iter().any(|&cj| cj > COST_TOL) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            x: vec![0.0; n],
            objective: 0.0,
        };
    }

    // Phase-1 tableau: [A | I | b] with artificial basis.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut r: Vec<f64> = row.iter().map(|&v| sign * v).collect();
        r.extend((0..m).map(|j| if j == i { 1.0 } else { 0.0 }));
        r.push(sign * b[i]);
        rows.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs for maximizing -(sum of artificials): structural columns
    // pick up the column sums, artificial columns start at zero.
    let width = n + m + 1;
    let mut obj = vec![0.0; width];
    for j in 0..n {
        obj[j] = rows.iter().map(|r| r[j]).sum();
    }
    simplex(&mut rows, &mut obj, &mut basis, width - 1);

    let art_residual: f64 = basis
        .iter()
        .zip(rows.iter())
        .filter(|(&bj, _)| bj >= n)
        .map(|(_, r)| r[width - 1])
        .sum();
    if art_residual > FEAS_TOL {
        return LpOutcome::Infeasible;
    }

    // Drive any artificial still in the basis out of it, or drop its row if
    // the row is redundant.
    let mut r = 0;
    while r < rows.len() {
        if basis[r] >= n {
            match (0..n).find(|&j| rows[r][j].abs() > PIVOT_TOL) {
                Some(j) => pivot(&mut rows, &mut obj, &mut basis, r, j),
                None => {
                    rows.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2: drop artificial columns and install the real objective.
    let rhs = n;
    for row in rows.iter_mut() {
        let b_val = row[width - 1];
        row.truncate(n);
        row.push(b_val);
    }
    let mut obj: Vec<f64> = (0..=n)
        .map(|j| {
            let cost = if j < n { c[j] } else { 0.0 };
            let through_basis: f64 = rows
                .iter()
                .enumerate()
                .map(|(i, row)| c[basis[i]] * row[j])
                .sum();
            cost - through_basis
        })
        .collect();
    if !simplex(&mut rows, &mut obj, &mut basis, rhs) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for (i, &bj) in basis.iter().enumerate() {
        x[bj] = rows[i][rhs].max(0.0);
    }
    let objective = c.iter().zip(&x).map(|(&cj, &xj)| cj * xj).sum();
    LpOutcome::Optimal { x, objective }
}

/// Runs Bland-rule simplex iterations in place. Returns false on unboundedness.
fn simplex(rows: &mut [Vec<f64>], obj: &mut [f64], basis: &mut [usize], rhs: usize) -> bool {
    loop {
        let entering = match (0..rhs).find(|&j| obj[j] > COST_TOL) {
            Some(j) => j,
            None => return true,
        };
        let mut leaving: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for (i, row) in rows.iter().enumerate() {
            if row[entering] > PIVOT_TOL {
                let ratio = row[rhs] / row[entering];
                let better = ratio < best_ratio - 1e-14
                    || (ratio < best_ratio + 1e-14
                        && leaving.map_or(true, |l| basis[i] < basis[l]));
                if better {
                    best_ratio = ratio.min(best_ratio);
                    leaving = Some(i);
                }
            }
        }
        match leaving {
            Some(r) => pivot_slices(rows, obj, basis, r, entering),
            None => return false,
        }
    }
}

fn pivot(rows: &mut Vec<Vec<f64>>, obj: &mut Vec<f64>, basis: &mut Vec<usize>, r: usize, e: usize) {
    pivot_slices(rows.as_mut_slice(), obj.as_mut_slice(), basis.as_mut_slice(), r, e);
}

fn pivot_slices(rows: &mut [Vec<f64>], obj: &mut [f64], basis: &mut [usize], r: usize, e: usize) {
    let p = rows[r][e];
    for v in rows[r].iter_mut() {
        *v /= p;
    }
    for i in 0..rows.len() {
        if i != r {
            let factor = rows[i][e];
            if factor != 0.0 {
                for j in 0..rows[r].len() {
                    rows[i][j] -= factor * rows[r][j];
                }
            }
        }
    }
    let factor = obj[e];
    if factor != 0.0 {
        for j in 0..rows[r].len() {
            obj[j] -= factor * rows[r][j];
        }
    }
    basis[r] = e;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_partition() {
        // max x0 + 2 x1 s.t. x0 + x1 = 1
        let out = maximize(&[vec![1.0, 1.0]], &[1.0], &[1.0, 2.0]);
        match out {
            LpOutcome::Optimal { x, objective } => {
                assert!((objective - 2.0).abs() < 1e-9);
                assert!((x[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_negative_sum() {
        // x0 + x1 = -1 has no nonnegative solution
        let out = maximize(&[vec![1.0, 1.0]], &[-1.0], &[1.0, 0.0]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // max x0 with only x1 pinned
        let out = maximize(&[vec![0.0, 1.0]], &[1.0], &[1.0, 0.0]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let rows = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        let out = maximize(&rows, &[1.0, 2.0], &[3.0, 1.0]);
        match out {
            LpOutcome::Optimal { objective, .. } => assert!((objective - 3.0).abs() < 1e-9),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_zero_rhs() {
        // max x0 s.t. x0 - x1 = 0, x0 + x1 = 2
        let rows = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        let out = maximize(&rows, &[0.0, 2.0], &[1.0, 0.0]);
        match out {
            LpOutcome::Optimal { x, .. } => {
                assert!((x[0] - 1.0).abs() < 1e-9);
                assert!((x[1] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn max_min_coefficient_of_square_center() {
        // Convex combination of the four square vertices hitting the origin
        // while maximizing the smallest coefficient: lambda_i = mu_i + t.
        // Variables: mu0..mu3, tp, tm.
        let pts = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]];
        let mut rows = Vec::new();
        for axis in 0..2 {
            let mut row: Vec<f64> = pts.iter().map(|p| p[axis]).collect();
            let s: f64 = pts.iter().map(|p| p[axis]).sum();
            row.push(s);
            row.push(-s);
            rows.push(row);
        }
        let mut sum_row = vec![1.0; 4];
        sum_row.push(4.0);
        sum_row.push(-4.0);
        rows.push(sum_row);
        let b = vec![0.0, 0.0, 1.0];
        let c = vec![0.0, 0.0, 0.0, 0.0, 1.0, -1.0];
        match maximize(&rows, &b, &c) {
            LpOutcome::Optimal { objective, .. } => {
                assert!((objective - 0.25).abs() < 1e-9, "t* = {objective}");
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
