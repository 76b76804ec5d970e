//! Lowest eigenvalues of a real symmetric tridiagonal matrix.
//!
//! Bisection on Sturm counts: the number of eigenvalues below `lambda` equals
//! the number of negative pivots in the LDL^T factorization of `T - lambda I`,
//! so each eigenvalue can be bracketed to machine precision independently of
//! the others. Cost is O(n) per bisection step, which makes extracting a
//! handful of bound states from a 10^5-point discretization cheap.

/// Number of eigenvalues of the tridiagonal matrix strictly below `lambda`.
///
/// `off2` holds the squared off-diagonal entries. Vanishing pivots are
/// perturbed to `-pivmin` before they are counted or divided by.
fn count_below(diag: &[f64], off2: &[f64], pivmin: f64, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let sub = if i == 0 { 0.0 } else { off2[i - 1] / q };
        q = diag[i] - lambda - sub;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending.
///
/// Panics if `k > diag.len()` or if `off.len() + 1 != diag.len()` (unless the
/// matrix is 1x1 with an empty `off`).
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 1, "empty matrix");
    assert!(k <= n, "asked for {k} eigenvalues of a {n}x{n} matrix");
    assert_eq!(off.len() + 1, n, "off-diagonal length mismatch");
    if k == 0 {
        return Vec::new();
    }

    let off2: Vec<f64> = off.iter().map(|e| e * e).collect();
    let max_off2 = off2.iter().cloned().fold(0.0, f64::max);
    let pivmin = (max_off2 * f64::EPSILON * f64::EPSILON).max(f64::MIN_POSITIVE);

    // Gershgorin interval containing the whole spectrum.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }

    let mut out = Vec::with_capacity(k);
    for m in 0..k {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..120 {
            let width = b - a;
            if width <= f64::EPSILON * a.abs().max(b.abs()) + 1e-18 {
                break;
            }
            let mid = a + 0.5 * width;
            if count_below(diag, &off2, pivmin, mid) > m {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(a + 0.5 * (b - a));
    }
    out
}
