//! Compressed sparse rows, ILU(0) and preconditioned BiCGSTAB.

#[derive(Debug, Clone)]
pub(crate) struct Csr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl Csr {
    /// Builds from unsorted triplets; duplicates are summed.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Csr {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *vals.last_mut().expect("a previous entry exists") += v;
                continue;
            }
            cols.push(c);
            vals.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Csr { n, row_ptr, cols, vals }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *yi = acc;
        }
    }
}

/// Incomplete LU factorisation with the sparsity pattern of the matrix.
pub(crate) struct Ilu0 {
    lu: Csr,
    diag: Vec<usize>,
}

impl Ilu0 {
    pub fn new(a: &Csr) -> Option<Ilu0> {
        let mut lu = a.clone();
        let n = lu.n;
        let mut diag = vec![usize::MAX; n];
        for (i, d) in diag.iter_mut().enumerate() {
            for k in lu.row_ptr[i]..lu.row_ptr[i + 1] {
                if lu.cols[k] == i {
                    *d = k;
                }
            }
            if *d == usize::MAX {
                return None;
            }
        }
        // column position lookup for the current row
        let mut pos = vec![usize::MAX; n];
        for i in 0..n {
            let (start, end) = (lu.row_ptr[i], lu.row_ptr[i + 1]);
            for k in start..end {
                pos[lu.cols[k]] = k;
            }
            for k in start..end {
                let j = lu.cols[k];
                if j >= i {
                    break;
                }
                let pivot = lu.vals[diag[j]];
                if pivot == 0.0 {
                    return None;
                }
                let factor = lu.vals[k] / pivot;
                lu.vals[k] = factor;
                for m in diag[j] + 1..lu.row_ptr[j + 1] {
                    let p = pos[lu.cols[m]];
                    if p != usize::MAX {
                        lu.vals[p] -= factor * lu.vals[m];
                    }
                }
            }
            for k in start..end {
                pos[lu.cols[k]] = usize::MAX;
            }
            if lu.vals[diag[i]] == 0.0 {
                return None;
            }
        }
        Some(Ilu0 { lu, diag })
    }

    /// Solves `LU z = r` in place.
    pub fn apply(&self, z: &mut [f64]) {
        let lu = &self.lu;
        for i in 0..lu.n {
            let mut acc = z[i];
            for k in lu.row_ptr[i]..self.diag[i] {
                acc -= lu.vals[k] * z[lu.cols[k]];
            }
            z[i] = acc;
        }
        for i in (0..lu.n).rev() {
            let mut acc = z[i];
            for k in self.diag[i] + 1..lu.row_ptr[i + 1] {
                acc -= lu.vals[k] * z[lu.cols[k]];
            }
            z[i] = acc / lu.vals[self.diag[i]];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) struct LinearSolve {
    pub iterations: usize,
    pub relative_residual: f64,
    pub converged: bool,
}

/// Right-preconditioned BiCGSTAB for `A x = b` starting from `x = 0`.
pub(crate) fn bicgstab(a: &Csr, b: &[f64], x: &mut [f64], rtol: f64, max_iter: usize) -> LinearSolve {
    let n = a.n;
    let precond = Ilu0::new(a);
    let apply = |v: &mut [f64]| {
        if let Some(p) = &precond {
            p.apply(v);
        }
    };
    x.iter_mut().for_each(|v| *v = 0.0);
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return LinearSolve { iterations: 0, relative_residual: 0.0, converged: true };
    }
    let mut r = b.to_vec();
    let r0 = r.clone();
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut phat = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut shat = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut rel = 1.0;
    for it in 1..=max_iter {
        let rho_new = dot(&r0, &r);
        if rho_new == 0.0 {
            return LinearSolve { iterations: it, relative_residual: rel, converged: false };
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        phat.copy_from_slice(&p);
        apply(&mut phat);
        a.matvec(&phat, &mut v);
        let denom = dot(&r0, &v);
        if denom == 0.0 {
            return LinearSolve { iterations: it, relative_residual: rel, converged: false };
        }
        alpha = rho / denom;
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if norm(&s) / bnorm <= rtol {
            for i in 0..n {
                x[i] += alpha * phat[i];
            }
            return LinearSolve { iterations: it, relative_residual: norm(&s) / bnorm, converged: true };
        }
        shat.copy_from_slice(&s);
        apply(&mut shat);
        a.matvec(&shat, &mut t);
        let tt = dot(&t, &t);
        omega = if tt == 0.0 { 0.0 } else { dot(&t, &s) / tt };
        for i in 0..n {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rel = norm(&r) / bnorm;
        if rel <= rtol {
            return LinearSolve { iterations: it, relative_residual: rel, converged: true };
        }
        if omega == 0.0 {
            return LinearSolve { iterations: it, relative_residual: rel, converged: false };
        }
    }
    LinearSolve { iterations: max_iter, relative_residual: rel, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_nonsymmetric_system() {
        // 1D convection-diffusion
        let n = 200;
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, 2.5));
            if i > 0 {
                trip.push((i, i - 1, -1.4));
            }
            if i + 1 < n {
                trip.push((i, i + 1, -0.9));
            }
        }
        let a = Csr::from_triplets(n, trip);
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.1).sin()).collect();
        let mut b = vec![0.0; n];
        a.matvec(&x_true, &mut b);
        let mut x = vec![0.0; n];
        let res = bicgstab(&a, &b, &mut x, 1e-12, 500);
        assert!(res.converged);
        let err = x.iter().zip(&x_true).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn duplicate_triplets_are_summed() {
        let a = Csr::from_triplets(2, vec![(0, 0, 1.0), (1, 1, 2.0), (0, 0, 3.0), (1, 0, 1.0)]);
        let mut y = vec![0.0; 2];
        a.matvec(&[1.0, 1.0], &mut y);
        assert_eq!(y, vec![4.0, 3.0]);
    }
}
