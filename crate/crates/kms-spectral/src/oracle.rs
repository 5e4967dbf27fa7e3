//! Ground-truth reference solvers, algorithmically independent of the
//! structured pipeline so the two sides can check each other.
//!
//! Two eigenvalue paths: for real parameters away from +-1 the scaled
//! inverse is a real symmetric tridiagonal, solved by bisection on Sturm
//! sequence sign counts; everything else goes through an in-repo complex
//! Hessenberg reduction with shifted QR. Polynomial roots come from the
//! companion matrix of the monic form plus a Newton polish.

use crate::chebpoly::{is_self_inversive, Polynomial, SelfInversiveClass};
use crate::error::{KmsError, Result};
use crate::matrix::{build_kms, DenseMatrix, KmsParams};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Cap for the dense O(n^3) path.
pub const DENSE_LIMIT: usize = 512;
/// Cap for the tridiagonal bisection path.
pub const TRIDIAG_LIMIT: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    /// Sturm bisection on the scaled tridiagonal inverse.
    SymmetricTridiagonal,
    /// Hessenberg reduction plus shifted QR.
    GeneralDense,
}

#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    /// Ascending by real part, ties by imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// One column per eigenvalue when requested, max-entry normalized.
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
    pub method: OracleMethod,
}

fn sort_eigs(v: &mut [Complex64]) {
    v.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Number of eigenvalues of the symmetric tridiagonal strictly below x,
/// by counting negative pivots of the LDL factorization of T - x I.
fn sturm_count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let pivmin = 1e-300;
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let e2 = if i > 0 { off[i - 1] * off[i - 1] } else { 0.0 };
        d = (diag[i] - x) - e2 / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a real symmetric tridiagonal, ascending, each located
/// by bisection to floating-point exhaustion inside its Gershgorin bound.
pub fn tridiag_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 }
            + if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-12 * (hi - lo).abs().max(1.0);
    lo -= pad;
    hi += pad;
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count_below(diag, off, mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Reduces to upper Hessenberg form in place by complex Householder
/// reflections (similarity, eigenvalues preserved).
fn hessenberg_reduce(h: &mut DenseMatrix) {
    let n = h.n;
    for j in 0..n.saturating_sub(2) {
        let norm_x = ((j + 1)..n)
            .map(|i| h.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h.get(j + 1, j);
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = ((j + 1)..n).map(|i| h.get(i, j)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in j..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h.get(j + 1 + i, col))
                .sum();
            let f = 2.0 * dot / vnorm2;
            for (i, vi) in v.iter().enumerate() {
                let val = h.get(j + 1 + i, col) - f * vi;
                h.set(j + 1 + i, col, val);
            }
        }
        for row in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| h.get(row, j + 1 + i) * *vi)
                .sum();
            let f = 2.0 * dot / vnorm2;
            for (i, vi) in v.iter().enumerate() {
                let val = h.get(row, j + 1 + i) - f * vi.conj();
                h.set(row, j + 1 + i, val);
            }
        }
        for i in (j + 2)..n {
            h.set(i, j, ZERO);
        }
    }
}

/// Unitary plane rotation [c s; -conj(s) c] with real c sending (f, g) to (r, 0).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g.norm_sqr() == 0.0 {
        return (1.0, ZERO, f);
    }
    if f.norm_sqr() == 0.0 {
        let s = g.conj() / g.norm();
        return (0.0, s, Complex64::new(g.norm(), 0.0));
    }
    let fa = f.norm();
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let fs = f / fa;
    (fa / d, fs * g.conj() / d, fs * d)
}

/// Eigenvalue of the trailing 2x2 of the active block closest to the corner.
fn wilkinson_shift(h: &DenseMatrix, hi: usize) -> Complex64 {
    let a = h.get(hi - 1, hi - 1);
    let b = h.get(hi - 1, hi);
    let c = h.get(hi, hi - 1);
    let d = h.get(hi, hi);
    let tr = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b * c).sqrt();
    let m1 = 0.5 * (tr + disc);
    let m2 = 0.5 * (tr - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Shifted explicit QR with Givens rotations until every subdiagonal has
/// deflated. Eigenvalues land on the diagonal.
fn qr_iterate(h: &mut DenseMatrix) -> Result<()> {
    let n = h.n;
    if n == 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut since_deflate = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n;
    while hi > 0 {
        let s = {
            let t = h.get(hi - 1, hi - 1).norm() + h.get(hi, hi).norm();
            if t == 0.0 {
                1.0
            } else {
                t
            }
        };
        if h.get(hi, hi - 1).norm() <= eps * s {
            h.set(hi, hi - 1, ZERO);
            hi -= 1;
            since_deflate = 0;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let t = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            let t = if t == 0.0 { 1.0 } else { t };
            if h.get(lo, lo - 1).norm() <= eps * t {
                h.set(lo, lo - 1, ZERO);
                break;
            }
            lo -= 1;
        }
        total += 1;
        since_deflate += 1;
        if total > max_total {
            return Err(KmsError::Convergence {
                what: format!("QR iteration exceeded {max_total} sweeps at order {n}"),
            });
        }
        let shift = if since_deflate % 14 == 0 {
            let sub = h.get(hi, hi - 1).norm();
            h.get(hi, hi) + Complex64::new(1.5 * sub, 0.5 * sub)
        } else {
            wilkinson_shift(h, hi)
        };
        for i in lo..=hi {
            let v = h.get(i, i) - shift;
            h.set(i, i, v);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, sgn, r) = givens(h.get(i, i), h.get(i + 1, i));
            h.set(i, i, r);
            h.set(i + 1, i, ZERO);
            for col in (i + 1)..=hi {
                let a = h.get(i, col);
                let b = h.get(i + 1, col);
                h.set(i, col, c * a + sgn * b);
                h.set(i + 1, col, -sgn.conj() * a + c * b);
            }
            rots.push((c, sgn));
        }
        for (idx, (c, sgn)) in rots.iter().enumerate() {
            let i = lo + idx;
            let top = (i + 1).min(hi);
            for row in lo..=top {
                let a = h.get(row, i);
                let b = h.get(row, i + 1);
                h.set(row, i, *c * a + sgn.conj() * b);
                h.set(row, i + 1, -*sgn * a + *c * b);
            }
        }
        for i in lo..=hi {
            let v = h.get(i, i) + shift;
            h.set(i, i, v);
        }
    }
    Ok(())
}

/// Dense eigenvalues by Hessenberg reduction plus shifted QR. Order capped
/// at [`DENSE_LIMIT`].
pub fn oracle_eig(a: &DenseMatrix) -> Result<OracleSpectrum> {
    if a.n > DENSE_LIMIT {
        return Err(KmsError::SizeLimit { n: a.n, limit: DENSE_LIMIT });
    }
    let mut h = a.clone();
    hessenberg_reduce(&mut h);
    qr_iterate(&mut h)?;
    let mut eigs: Vec<Complex64> = (0..a.n).map(|i| h.get(i, i)).collect();
    sort_eigs(&mut eigs);
    Ok(OracleSpectrum { eigenvalues: eigs, eigenvectors: None, method: OracleMethod::GeneralDense })
}

/// Eigenvalues of K_n(rho) by the cheapest sound oracle route: Sturm
/// bisection on the scaled tridiagonal inverse for real rho away from +-1
/// (the inverse of K is tridiagonal, so its eigenvalues invert and scale),
/// the dense QR path otherwise.
pub fn oracle_eig_kms(p: &KmsParams) -> Result<OracleSpectrum> {
    let rho = p.rho;
    if p.is_real() && rho.re != 1.0 && rho.re != -1.0 {
        if p.n > TRIDIAG_LIMIT {
            return Err(KmsError::SizeLimit { n: p.n, limit: TRIDIAG_LIMIT });
        }
        let r = rho.re;
        let scale = 1.0 - r * r;
        let mut diag = vec![1.0 + r * r; p.n];
        diag[0] = 1.0;
        diag[p.n - 1] = 1.0;
        let off = vec![-r; p.n - 1];
        let nu = tridiag_eigenvalues(&diag, &off);
        let mut eigs: Vec<Complex64> =
            nu.into_iter().map(|v| Complex64::new(scale / v, 0.0)).collect();
        sort_eigs(&mut eigs);
        return Ok(OracleSpectrum {
            eigenvalues: eigs,
            eigenvectors: None,
            method: OracleMethod::SymmetricTridiagonal,
        });
    }
    oracle_eig(&build_kms(p)?)
}

/// Adds inverse-iteration eigenvectors to the dense-path spectrum.
pub fn oracle_eig_with_vectors(a: &DenseMatrix) -> Result<OracleSpectrum> {
    let mut spec = oracle_eig(a)?;
    let vecs = spec
        .eigenvalues
        .iter()
        .map(|&l| inverse_iteration(a, l))
        .collect::<Result<Vec<_>>>()?;
    spec.eigenvectors = Some(vecs);
    Ok(spec)
}

/// Packed LU with partial pivoting. Returns (factors, permutation, sign, singular).
fn lu_factor(a: &DenseMatrix) -> (DenseMatrix, Vec<usize>, f64, bool) {
    let n = a.n;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular = false;
    for k in 0..n {
        let (mut piv, mut best) = (k, lu.get(k, k).norm());
        for i in (k + 1)..n {
            let v = lu.get(i, k).norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            singular = true;
            continue;
        }
        if piv != k {
            for col in 0..n {
                let tmp = lu.get(k, col);
                lu.set(k, col, lu.get(piv, col));
                lu.set(piv, col, tmp);
            }
            perm.swap(k, piv);
            sign = -sign;
        }
        let pivot = lu.get(k, k);
        for i in (k + 1)..n {
            let m = lu.get(i, k) / pivot;
            lu.set(i, k, m);
            for col in (k + 1)..n {
                let v = lu.get(i, col) - m * lu.get(k, col);
                lu.set(i, col, v);
            }
        }
    }
    (lu, perm, sign, singular)
}

fn lu_solve(lu: &DenseMatrix, perm: &[usize], b: &[Complex64]) -> Vec<Complex64> {
    let n = lu.n;
    let mut x: Vec<Complex64> = perm.iter().map(|&p| b[p]).collect();
    for i in 1..n {
        for k in 0..i {
            let v = x[i] - lu.get(i, k) * x[k];
            x[i] = v;
        }
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            let v = x[i] - lu.get(i, k) * x[k];
            x[i] = v;
        }
        x[i] /= lu.get(i, i);
    }
    x
}

/// Determinant via LU with partial pivoting.
pub fn lu_determinant(a: &DenseMatrix) -> Complex64 {
    let (lu, _, sign, singular) = lu_factor(a);
    if singular {
        return ZERO;
    }
    let mut det = Complex64::new(sign, 0.0);
    for i in 0..a.n {
        det *= lu.get(i, i);
    }
    det
}

/// One eigenvector by two rounds of inverse iteration with a perturbed shift.
pub fn inverse_iteration(a: &DenseMatrix, lambda: Complex64) -> Result<Vec<Complex64>> {
    let n = a.n;
    let scale = a.inf_norm().max(1.0);
    let mut delta = 1e-11 * scale;
    for _attempt in 0..4 {
        let mut shifted = a.clone();
        for i in 0..n {
            let v = shifted.get(i, i) - (lambda + Complex64::new(delta, 0.5 * delta));
            shifted.set(i, i, v);
        }
        let (lu, perm, _, singular) = lu_factor(&shifted);
        if singular {
            delta *= 16.0;
            continue;
        }
        let mut x: Vec<Complex64> = (0..n)
            .map(|j| {
                let t = j as f64 + 1.0;
                Complex64::new((1.3 * t).cos(), (0.7 * t).sin())
            })
            .collect();
        for _ in 0..3 {
            x = lu_solve(&lu, &perm, &x);
            let m = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if !m.is_finite() || m == 0.0 {
                break;
            }
            for v in x.iter_mut() {
                *v /= m;
            }
        }
        let m = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if m.is_finite() && m > 0.0 {
            let pivot = x
                .iter()
                .find(|c| c.norm() > 0.5)
                .copied()
                .unwrap_or(ONE);
            let phase = pivot / pivot.norm();
            for v in x.iter_mut() {
                *v /= phase * m;
            }
            return Ok(x);
        }
        delta *= 16.0;
    }
    Err(KmsError::Convergence {
        what: format!("inverse iteration stalled at lambda = {lambda}"),
    })
}

/// All roots of a polynomial via companion-matrix QR plus Newton polish,
/// with a residual acceptance gate.
pub fn oracle_poly_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let m = p.degree();
    if m == 0 {
        return Err(KmsError::Domain { what: "constant polynomial has no roots".into() });
    }
    if m > DENSE_LIMIT {
        return Err(KmsError::SizeLimit { n: m, limit: DENSE_LIMIT });
    }
    let lead = p.leading();
    if lead.norm() == 0.0 {
        return Err(KmsError::Domain { what: "zero leading coefficient".into() });
    }
    let monic: Vec<Complex64> = p.coeffs.iter().map(|&c| c / lead).collect();
    let mut comp = DenseMatrix::zeros(m);
    for i in 0..m {
        comp.set(i, m - 1, -monic[i]);
        if i > 0 {
            comp.set(i, i - 1, ONE);
        }
    }
    qr_iterate(&mut comp)?;
    let deriv = p.derivative();
    let coeff_scale: f64 = p.max_coeff();
    let mut roots = Vec::with_capacity(m);
    for i in 0..m {
        let mut z = comp.get(i, i);
        for _ in 0..2 {
            let pv = p.eval(z);
            let dv = deriv.eval(z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = pv / dv;
            let z_new = z - step;
            if p.eval(z_new).norm() <= pv.norm() {
                z = z_new;
            } else {
                break;
            }
        }
        let tol = 1e-8 * coeff_scale * z.norm().max(1.0).powi(m as i32);
        let resid = p.eval(z).norm();
        if resid > tol {
            return Err(KmsError::Convergence {
                what: format!("root {z} has residual {resid:.3e} above {tol:.3e}"),
            });
        }
        roots.push(z);
    }
    sort_eigs(&mut roots);
    Ok(roots)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Smallest minor of the given order of a real matrix, by enumerating all
/// row/column subsets. Exponential, capped at order 6 matrices.
pub fn oracle_minors(a: &DenseMatrix, order: usize) -> Result<f64> {
    const MINOR_LIMIT: usize = 6;
    if a.n > MINOR_LIMIT {
        return Err(KmsError::SizeLimit { n: a.n, limit: MINOR_LIMIT });
    }
    if !a.is_real() {
        return Err(KmsError::Domain { what: "minor enumeration expects a real matrix".into() });
    }
    if order == 0 || order > a.n {
        return Err(KmsError::Domain { what: format!("minor order {order} out of range") });
    }
    let sets = combinations(a.n, order);
    let mut min = f64::INFINITY;
    for rows in &sets {
        for cols in &sets {
            let sub = DenseMatrix::from_fn(order, |j, k| a.get(rows[j], cols[k]));
            let d = lu_determinant(&sub).re;
            min = min.min(d);
        }
    }
    Ok(min)
}

/// Unit-circle test for self-inversive polynomials: all zeros lie on the
/// unit circle iff the polynomial is self-inversive and every zero of its
/// derivative lies in the closed unit disk.
pub fn cohn_unit_circle(p: &Polynomial) -> Result<bool> {
    if matches!(is_self_inversive(p), SelfInversiveClass::NotSelfInversive) {
        return Ok(false);
    }
    let d = p.derivative();
    if d.degree() == 0 {
        return Ok(true);
    }
    let roots = oracle_poly_roots(&d)?;
    Ok(roots.iter().all(|z| z.norm() <= 1.0 + 1e-9))
}

/// One-to-one greedy matching of two equal-size multisets of complex values;
/// returns the largest matched distance. Robust against the ordering flips
/// between nearly-tied values that plain sorted zips are not.
pub fn multiset_distance(ours: &[Complex64], theirs: &[Complex64]) -> f64 {
    assert_eq!(ours.len(), theirs.len());
    let mut pool: Vec<Complex64> = theirs.to_vec();
    let mut worst = 0.0_f64;
    for a in ours {
        let j = (0..pool.len())
            .min_by(|&x, &y| (pool[x] - a).norm().total_cmp(&(pool[y] - a).norm()))
            .unwrap();
        worst = worst.max((pool[j] - a).norm());
        pool.swap_remove(j);
    }
    worst
}
