/// Solves `A x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `1e-13` times the largest entry.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    let big = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if big == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-13 * big {
            return None;
        }
        a.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (rhs[r] - s) / a[r][r];
    }
    Some(x)
}

/// Affine weights `mu` (summing to one) of the point of smallest norm in the
/// affine hull of `atoms`. `None` if the atoms are affinely dependent.
pub(crate) fn affine_min_norm(atoms: &[&[f64]]) -> Option<Vec<f64>> {
    let k = atoms.len();
    if k == 1 {
        return Some(vec![1.0]);
    }
    let scale = atoms
        .iter()
        .map(|a| a.iter().map(|x| x * x).sum::<f64>())
        .fold(0.0f64, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut m = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in i..k {
            let g: f64 = atoms[i].iter().zip(atoms[j]).map(|(x, y)| x * y).sum::<f64>() / scale;
            m[i][j] = g;
            m[j][i] = g;
        }
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    let mut rhs = vec![0.0; k + 1];
    rhs[k] = 1.0;
    let mut sol = solve_dense(m, rhs)?;
    sol.truncate(k);
    Some(sol)
}
