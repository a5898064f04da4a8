use nalgebra::{DMatrix, DVector};

/// Symmetric eigendecomposition with ascending eigenvalues and
/// eigenvectors whose first non-negligible component is positive.
///
/// Backed by faer: nalgebra's `symmetric_eigen` can return inaccurate
/// eigenvectors for small matrices with clustered spectra.
pub fn eigh(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let a = to_faer(m);
    let evd = a.self_adjoint_eigen(faer::Side::Lower).expect("symmetric eigendecomposition did not converge");
    let s = evd.S().column_vector();
    let u = evd.U();
    let values = (0..n).map(|i| s[i]).collect();
    let mut vecs = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    for mut col in vecs.column_iter_mut() {
        let mut v = col.clone_owned();
        fix_phase(&mut v);
        col.copy_from(&v);
    }
    (values, vecs)
}

pub fn eigvalsh(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    to_faer(m).self_adjoint_eigenvalues(faer::Side::Lower).expect("symmetric eigenvalues did not converge")
}

// symmetrized copy, evaluated single-threaded so results do not depend on the thread count
fn to_faer(m: &DMatrix<f64>) -> faer::Mat<f64> {
    static SEQUENTIAL: std::sync::Once = std::sync::Once::new();
    SEQUENTIAL.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

/// Flips sign so the first component with magnitude above 1e-12 is positive.
pub fn fix_phase(v: &mut DVector<f64>) {
    if let Some(x) = v.iter().find(|x| x.abs() > 1e-12) {
        if *x < 0.0 {
            v.neg_mut();
        }
    }
}

/// Groups sorted values into index ranges separated by gaps above `tol`.
pub fn clusters(sorted: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Orthonormalizes the columns of `m` (modified Gram-Schmidt), dropping
/// columns whose residual norm is below `tol`.
pub fn orthonormalize(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).into_owned();
        for _ in 0..2 {
            for c in &cols {
                let d = c.dot(&v);
                v -= c * d;
            }
        }
        let norm = v.norm();
        if norm > tol {
            cols.push(v / norm);
        }
    }
    if cols.is_empty() {
        DMatrix::zeros(m.nrows(), 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clustered_spectrum_is_resolved() {
        // a restricted class sum with eigenvalues -6, -2, -2, -2
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                -2.51499375321228,
                1.3019247353912577,
                0.13750831850822828,
                0.2843235704595491,
                1.3019247353912586,
                -5.2913176248275064,
                -0.3476265101688197,
                -0.7187813190492682,
                0.13750831850822864,
                -0.3476265101688196,
                -2.0367160524589174,
                -0.07591714626106034,
                0.28432357045954937,
                -0.7187813190492682,
                -0.07591714626106033,
                -2.1569725695013253,
            ],
        );
        let (vals, vecs) = eigh(&m);
        let sym = (&m + m.transpose()) * 0.5;
        let residual = &sym * &vecs - &vecs * DMatrix::from_diagonal(&DVector::from_vec(vals.clone()));
        assert!(residual.amax() < 1e-12);
        assert!((vecs.transpose() * &vecs - DMatrix::identity(4, 4)).amax() < 1e-12);
        assert!((vals[0] + 6.0).abs() < 1e-9 && (vals[3] + 2.0).abs() < 1e-9);
    }

    #[test]
    fn clusters_split_on_gaps() {
        assert_eq!(clusters(&[0.0, 1e-12, 1.0, 2.0, 2.0], 1e-9), vec![0..2, 2..3, 3..5]);
        assert!(clusters(&[], 1.0).is_empty());
    }
}
