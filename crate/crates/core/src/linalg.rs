//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit QL, plus a cyclic Jacobi solver for small matrices.

use crate::error::{domain, not_converged, Result};
use crate::specfun::CompensatedSum;

/// Symmetric matrix stored as its packed lower triangle, row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    /// Wraps a packed lower triangle of length n(n+1)/2.
    pub fn from_packed(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * (n + 1) / 2 {
            return Err(domain(
                "SymMatrix",
                format!("packed length {} does not match n = {n}", data.len()),
            ));
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.data[idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.data[idx(i, j)] = v;
    }

    pub fn packed(&self) -> &[f64] {
        &self.data
    }

    /// Leading k×k block.
    pub fn leading(&self, k: usize) -> Self {
        let k = k.min(self.n);
        Self {
            n: k,
            data: self.data[..k * (k + 1) / 2].to_vec(),
        }
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (d, e) = tridiagonalize(self.clone());
        tridiagonal_eigenvalues(d, e)
    }

    /// Lowest eigenvalue and a unit eigenvector. The value is the Rayleigh
    /// quotient of the vector against the original entries, so its error is
    /// set by the entries the vector actually sees rather than by eps·‖A‖.
    pub fn ground_eigenpair(&self) -> Result<(f64, Vec<f64>)> {
        let (ev, x) = self.refined_spectrum()?;
        Ok((ev[0], x))
    }

    /// Ascending eigenvalues with the lowest refined as in
    /// [`SymMatrix::ground_eigenpair`], plus its eigenvector, from a single
    /// reduction.
    pub fn refined_spectrum(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.n;
        if n == 0 {
            return Err(domain("ground_eigenpair", "empty matrix"));
        }
        let mut work = self.clone();
        let (d, e, h) = householder(&mut work.data);
        let mut spectrum = tridiagonal_eigenvalues(d.clone(), e.clone())?;
        let lowest = spectrum[0];
        let shift = lowest - 1e-9 * (1.0 + lowest.abs());
        let mut y = vec![1.0; n];
        for _ in 0..3 {
            solve_shifted_tridiagonal(&d, &e, shift, &mut y);
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            y.iter_mut().for_each(|v| *v /= norm);
        }
        for i in 1..n {
            if h[i] == 0.0 {
                continue;
            }
            let u = &work.data[idx(i, 0)..idx(i, 0) + i];
            let dot: f64 = u.iter().zip(&y[..i]).map(|(a, b)| a * b).sum::<f64>() / h[i];
            for (yk, uk) in y[..i].iter_mut().zip(u) {
                *yk -= dot * uk;
            }
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        spectrum[0] = self
            .rayleigh_quotient(&y)
            .min(spectrum.get(1).copied().unwrap_or(f64::INFINITY));
        Ok((spectrum, y))
    }

    /// xᵀAx for a unit vector x.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let mut acc = CompensatedSum::new(0.0);
        for i in 0..self.n {
            let row = &self.data[idx(i, 0)..=idx(i, i)];
            let mut off = 0.0;
            for j in 0..i {
                off += row[j] * x[j];
            }
            acc.add(x[i] * (row[i] * x[i] + 2.0 * off));
        }
        acc.value()
    }
}

/// Solves (T − σ)x = b in place for symmetric tridiagonal T with σ below its
/// spectrum, so the LDLᵀ factorization needs no pivoting.
fn solve_shifted_tridiagonal(d: &[f64], e: &[f64], shift: f64, b: &mut [f64]) {
    let n = d.len();
    let mut piv = vec![0.0; n];
    let mut l = vec![0.0; n];
    piv[0] = d[0] - shift;
    for i in 1..n {
        l[i] = e[i - 1] / piv[i - 1];
        piv[i] = d[i] - shift - l[i] * e[i - 1];
        b[i] -= l[i] * b[i - 1];
    }
    for i in 0..n {
        if piv[i].abs() < f64::MIN_POSITIVE {
            piv[i] = f64::MIN_POSITIVE;
        }
        b[i] /= piv[i];
    }
    for i in (0..n - 1).rev() {
        b[i] -= l[i + 1] * b[i + 1];
    }
}

/// Householder reduction. Returns the diagonal and the subdiagonal, with
/// e[i] coupling rows i and i+1 (the last entry is zero).
pub fn tridiagonalize(mut a: SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let (d, e, _) = householder(&mut a.data);
    (d, e)
}

/// In-place reduction of a packed matrix. On return the strict lower part of
/// row i holds the reflector u_i, with P_i = I − u_i u_iᵀ / h[i] (h[i] = 0
/// for an identity step), and the input equals P_(n−1)⋯P_1 T P_1⋯P_(n−1).
fn householder(m: &mut [f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = ((((8 * m.len() + 1) as f64).sqrt() as usize) - 1) / 2;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut hs = vec![0.0; n];
    let mut p = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let row = idx(i, 0);
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = m[row..=row + l].iter().map(|v| v.abs()).sum();
            if scale == 0.0 {
                e[i] = m[row + l];
            } else {
                for v in &mut m[row..=row + l] {
                    *v /= scale;
                    h += *v * *v;
                }
                let f = m[row + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                m[row + l] = f - g;
                hs[i] = h;

                // p = A u / h over the leading (l+1) block, one pass over the
                // packed lower triangle.
                let (head, tail) = m.split_at_mut(row);
                let u = &tail[..=l];
                p[..=l].iter_mut().for_each(|v| *v = 0.0);
                for j in 0..=l {
                    let rj = idx(j, 0);
                    let uj = u[j];
                    let mut acc = head[rj + j] * uj;
                    for k in 0..j {
                        let ajk = head[rj + k];
                        acc += ajk * u[k];
                        p[k] += ajk * uj;
                    }
                    p[j] += acc;
                }
                let mut f = 0.0;
                for j in 0..=l {
                    p[j] /= h;
                    f += p[j] * u[j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    p[j] -= hh * u[j];
                }
                for j in 0..=l {
                    let rj = idx(j, 0);
                    let (fj, gj) = (u[j], p[j]);
                    for k in 0..=j {
                        head[rj + k] -= fj * p[k] + gj * u[k];
                    }
                }
            }
        } else {
            e[i] = m[row + l];
        }
    }
    for i in 0..n {
        d[i] = m[idx(i, i)];
    }
    // shift so e[i] couples i and i+1
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    (d, e, hs)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts, sorted ascending.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    if e.len() != n {
        return Err(domain(
            "tridiagonal_eigenvalues",
            "diagonal and off-diagonal lengths differ",
        ));
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(not_converged(
                    "tridiagonal_eigenvalues",
                    format!("eigenvalue {l} did not converge in {MAX_ITER} iterations"),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Cyclic Jacobi eigenvalues of a full symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    const MAX_SWEEPS: usize = 100;
    let n = a.dim();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = a.get(i, j);
        }
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| m[i][i] * m[i][i]).sum();
        if off <= 1e-30 * diag || off == 0.0 {
            let mut d: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
            d.sort_by(|a, b| a.total_cmp(b));
            return Ok(d);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    Err(not_converged(
        "jacobi_eigenvalues",
        format!("no convergence in {MAX_SWEEPS} sweeps"),
    ))
}
