//! Two-component principal coordinates.

use ggd_core::Error as CoreError;
use nalgebra::{DMatrix, SymmetricEigen};

/// Projects the rows onto their first `k` principal axes. Each axis is signed
/// so that its largest-magnitude loading is positive. Components with
/// (numerically) zero variance yield zero coordinates.
pub fn principal_coordinates(rows: &[&[f64]], k: usize) -> Result<Vec<Vec<f64>>, CoreError> {
    let n = rows.len();
    if n < 3 {
        return Err(CoreError::EmptySample(format!("need at least 3 vectors, got {n}")));
    }
    let d = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != d) {
        return Err(CoreError::DimensionMismatch {
            expected: d,
            found: r.len(),
        });
    }
    let mut x = DMatrix::from_fn(n, d, |i, j| rows[i][j]);
    let means: Vec<f64> = (0..d).map(|j| x.column(j).mean()).collect();
    for (j, m) in means.iter().enumerate() {
        x.column_mut(j).add_scalar_mut(-m);
    }
    let cov = (x.transpose() * &x) / (n as f64);
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let top = eig.eigenvalues[order[0]];
    if !(top > 1e-12) {
        return Err(CoreError::ZeroVariance("vectors are identical".into()));
    }
    let mut coords = vec![vec![0.0; k]; n];
    for (c, &axis) in order.iter().take(k).enumerate() {
        if eig.eigenvalues[axis] <= top * 1e-12 {
            continue;
        }
        let mut v = eig.eigenvectors.column(axis).into_owned();
        let lead = v.iter().copied().fold(0.0_f64, |m, a| if a.abs() > m.abs() { a } else { m });
        if lead < 0.0 {
            v.neg_mut();
        }
        let proj = &x * v;
        for i in 0..n {
            coords[i][c] = proj[i];
        }
    }
    Ok(coords)
}
