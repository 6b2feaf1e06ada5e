//! A small dense two-phase simplex solver, used as an independent reference
//! for the regularization optimality tests. It knows nothing about matrices
//! or generators; it solves `min c'x  s.t.  Ax = b, x >= 0` by the textbook
//! full-tableau method with Bland's rule, which cannot cycle.
//!
//! This file is a frozen test oracle: it must stay independent of the
//! library's own regularization code.

const EPS: f64 = 1e-11;

/// A linear program in standard equality form: minimize `c'x` subject to
/// `a x = b`, `x >= 0`. Rows of `a` must match `b` in length.
pub struct StandardLp {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

/// Solves the program, returning (optimal value, optimal point), or None if
/// the program is infeasible or unbounded.
pub fn solve(lp: &StandardLp) -> Option<(f64, Vec<f64>)> {
    let m = lp.b.len();
    let n = lp.c.len();
    assert!(lp.a.len() == m && lp.a.iter().all(|row| row.len() == n));

    // Phase 1: flip rows so b >= 0, append one artificial variable per row,
    // and minimize the sum of artificials from the obvious starting basis.
    let mut tab = vec![vec![0.0; n + m + 1]; m];
    for i in 0..m {
        let sign = if lp.b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            tab[i][j] = sign * lp.a[i][j];
        }
        tab[i][n + i] = 1.0;
        tab[i][n + m] = sign * lp.b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let phase1_cost: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
    run_simplex(&mut tab, &mut basis, &phase1_cost, n + m)?;
    let phase1_value: f64 = basis
        .iter()
        .enumerate()
        .map(|(i, &j)| if j >= n { tab[i][n + m] } else { 0.0 })
        .sum();
    if phase1_value > 1e-8 {
        return None; // infeasible
    }
    // Pivot any artificial still in the basis (at value zero) out if possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab[i][j].abs() > EPS) {
                pivot(&mut tab, &mut basis, i, j);
            }
        }
    }

    // Phase 2: drop artificial columns and minimize the real objective.
    let mut tab2: Vec<Vec<f64>> = tab
        .iter()
        .map(|row| {
            let mut r: Vec<f64> = row[..n].to_vec();
            r.push(row[n + m]);
            r
        })
        .collect();
    // Rows whose basic variable is still artificial are redundant zero rows.
    let keep: Vec<usize> = (0..m).filter(|&i| basis[i] < n).collect();
    let mut basis2: Vec<usize> = keep.iter().map(|&i| basis[i]).collect();
    tab2 = keep.into_iter().map(|i| tab2[i].clone()).collect();
    run_simplex(&mut tab2, &mut basis2, &lp.c, n)?;

    let mut x = vec![0.0; n];
    for (i, &j) in basis2.iter().enumerate() {
        x[j] = tab2[i][n];
    }
    let value = x.iter().zip(&lp.c).map(|(xi, ci)| xi * ci).sum();
    Some((value, x))
}

/// Runs the simplex method on a tableau whose basis columns are already
/// identity. `ncols` is the number of structural columns (rhs excluded).
/// Returns None on unboundedness.
fn run_simplex(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    cost: &[f64],
    ncols: usize,
) -> Option<()> {
    let m = tab.len();
    let rhs = tab[0].len() - 1;
    loop {
        // Reduced costs r_j = c_j - y'A_j with y from the current basis.
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost[j];
            for i in 0..m {
                r -= cost[basis[i]] * tab[i][j];
            }
            // Bland's rule: first improving index.
            if r < -EPS {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { return Some(()) };

        let mut leaving: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if tab[i][j] > EPS {
                let ratio = tab[i][rhs] / tab[i][j];
                // Ties broken by smallest basic index (Bland).
                if ratio < best - EPS
                    || (ratio < best + EPS
                        && leaving.is_some_and(|l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leaving = Some(i);
                }
            }
        }
        let i = leaving?; // None: unbounded
        pivot(tab, basis, i, j);
    }
}

fn pivot(tab: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let m = tab.len();
    let w = tab[0].len();
    let p = tab[row][col];
    for v in tab[row].iter_mut() {
        *v /= p;
    }
    for i in 0..m {
        if i != row {
            let f = tab[i][col];
            if f != 0.0 {
                for j in 0..w {
                    tab[i][j] -= f * tab[row][j];
                }
            }
        }
    }
    basis[row] = col;
}

/// Reference solution to the per-row projection problem: given one row `l`
/// of a row-zero matrix whose diagonal sits at `diag`, find
///
///   min sum_j |l_j - g_j|   s.t.   g_j >= 0 for j != diag,  sum_j g_j = 0,
///
/// the cheapest way to replace the row by a generator row. Encoded with the
/// split g_j = l_j + a_j - b_j (a, b >= 0) and slacks for the inequalities.
pub fn min_row_adjustment_cost(l: &[f64], diag: usize) -> f64 {
    let n = l.len();
    let nslack = n - 1;
    let ncols = 2 * n + nslack;
    let mut a = Vec::new();
    let mut b = Vec::new();

    // sum_j (a_j - b_j) = -sum_j l_j  (so the new row still sums to zero)
    let mut row = vec![0.0; ncols];
    for j in 0..n {
        row[j] = 1.0;
        row[n + j] = -1.0;
    }
    a.push(row);
    b.push(-l.iter().sum::<f64>());

    // a_j - b_j - s_j = -l_j for each off-diagonal j (i.e. g_j >= 0)
    let mut s = 0;
    for j in 0..n {
        if j == diag {
            continue;
        }
        let mut row = vec![0.0; ncols];
        row[j] = 1.0;
        row[n + j] = -1.0;
        row[2 * n + s] = -1.0;
        a.push(row);
        b.push(-l[j]);
        s += 1;
    }

    let mut c = vec![0.0; ncols];
    for j in 0..2 * n {
        c[j] = 1.0;
    }

    let (value, _) = solve(&StandardLp { a, b, c })
        .expect("row projection LP is always feasible and bounded");
    value
}
