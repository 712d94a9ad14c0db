//! Dense complex matrices with the handful of factorizations the
//! representation modules need: Hermitian eigendecomposition (cyclic Jacobi
//! with complex rotations), singular values via A^H A, RREF over ℂ, and
//! PSD projection. Sizes here are tiny (≤ ~100), so clarity wins over
//! blocking.

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn cr(re: f64) -> C {
    C::new(re, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cr(1.0);
        }
        m
    }

    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = CMat::zeros(rows, cols);
        m[(i, j)] = cr(1.0);
        m
    }

    pub fn diag(entries: &[C]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c0 = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c0));
        CMat { rows: r, cols: c0, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Self {
        CMat::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(cr).collect()).collect(),
        )
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: C) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.conj()).collect() }
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMat, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.sub(other).max_abs() <= tol
    }

    /// Row-major flattening as a column vector.
    pub fn vec(&self) -> CMat {
        CMat { rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    pub fn unvec(v: &CMat, rows: usize, cols: usize) -> CMat {
        assert_eq!(v.rows * v.cols, rows * cols);
        CMat { rows, cols, data: v.data.clone() }
    }

    pub fn column(&self, j: usize) -> CMat {
        let mut out = CMat::zeros(self.rows, 1);
        for i in 0..self.rows {
            out[(i, 0)] = self[(i, j)];
        }
        out
    }

    pub fn set_column(&mut self, j: usize, col: &CMat) {
        for i in 0..self.rows {
            self[(i, j)] = col[(i, 0)];
        }
    }

    pub fn hermitian_part(&self) -> CMat {
        self.add(&self.adjoint()).scale(cr(0.5))
    }

    /// Direct sum (block diagonal).
    pub fn dsum(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn dot(&self, other: &CMat) -> C {
        // ⟨self, other⟩ = Σ self_i · conj(other_i), Hilbert-Schmidt / vector
        assert_eq!(self.data.len(), other.data.len());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).sum()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
/// rotations. Returns eigenvalues ascending with matching orthonormal
/// eigenvector columns; column phases are normalized so the largest entry is
/// positive real, keeping output deterministic.
pub fn hermitian_eigen(a: &CMat) -> (Vec<f64>, CMat) {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = CMat::identity(n);
    let scale = m.fro_norm().max(1.0);
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let z = m[(p, q)];
                let zn = z.norm();
                if zn <= 1e-300 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * zn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                let sigma = (z / zn) * cr(sth).re; // s·e^{iφ}
                let sigma = C::new(sigma.re, sigma.im);
                // columns: col_p' = c·col_p − σ̄·col_q ; col_q' = σ·col_p + c·col_q
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * cr(cth) - mkq * sigma.conj();
                    m[(k, q)] = mkp * sigma + mkq * cr(cth);
                }
                // rows: row_p' = c·row_p − σ·row_q ; row_q' = σ̄·row_p + c·row_q
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * cr(cth) - mqk * sigma;
                    m[(q, k)] = mpk * sigma.conj() + mqk * cr(cth);
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cr(cth) - vkq * sigma.conj();
                    v[(k, q)] = vkp * sigma + vkq * cr(cth);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap().then(i.cmp(&j)));
    let mut eigvals = Vec::with_capacity(n);
    let mut eigvecs = CMat::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        eigvals.push(vals[old_j]);
        let mut col = v.column(old_j);
        // normalize phase: largest-modulus entry positive real
        let mut best = 0usize;
        for i in 0..n {
            if col[(i, 0)].norm() > col[(best, 0)].norm() {
                best = i;
            }
        }
        let pivot = col[(best, 0)];
        if pivot.norm() > 1e-300 {
            let phase = pivot / pivot.norm();
            col = col.scale(phase.conj());
        }
        eigvecs.set_column(new_j, &col);
    }
    (eigvals, eigvecs)
}

/// Singular values (descending) via the Hermitian eigenvalues of A^H A.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    let gram = a.adjoint().mul(a);
    let (vals, _) = hermitian_eigen(&gram);
    let mut svs: Vec<f64> = vals.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    svs.reverse();
    svs
}

/// Schatten p-norm; p = 1 is the trace norm, p = 2 the Frobenius norm.
pub fn schatten_norm(a: &CMat, p: f64) -> f64 {
    if (p - 2.0).abs() < 1e-12 {
        return a.fro_norm();
    }
    if (p - 1.0).abs() < 1e-12 {
        return trace_norm(a);
    }
    singular_values(a).iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn trace_norm(a: &CMat) -> f64 {
    // Hermitian inputs keep full precision through |eigenvalue|; the
    // singular-value route squares the matrix and halves the accuracy of
    // near-zero values.
    if a.is_square() && a.sub(&a.adjoint()).max_abs() <= 1e-12 * a.max_abs().max(1.0) {
        let (vals, _) = hermitian_eigen(a);
        return vals.iter().map(|v| v.abs()).sum();
    }
    singular_values(a).iter().sum()
}

pub fn spectral_norm(a: &CMat) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Nearest PSD matrix to a Hermitian input: clip negative eigenvalues.
pub fn psd_project(a: &CMat) -> CMat {
    let h = a.hermitian_part();
    let (vals, vecs) = hermitian_eigen(&h);
    let n = h.rows;
    let mut out = CMat::zeros(n, n);
    for j in 0..n {
        if vals[j] <= 0.0 {
            continue;
        }
        let col = vecs.column(j);
        for i in 0..n {
            for k in 0..n {
                out[(i, k)] += col[(i, 0)] * cr(vals[j]) * col[(k, 0)].conj();
            }
        }
    }
    out
}

/// Smallest eigenpair of a Hermitian matrix.
pub fn smallest_eigenpair(a: &CMat) -> (f64, CMat) {
    let (vals, vecs) = hermitian_eigen(a);
    (vals[0], vecs.column(0))
}

/// Reduced row echelon form with partial pivoting; returns pivot columns.
pub fn rref(a: &CMat, tol: f64) -> (CMat, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..m.cols {
        if row >= m.rows {
            break;
        }
        let mut best = row;
        for r in row..m.rows {
            if m[(r, col)].norm() > m[(best, col)].norm() {
                best = r;
            }
        }
        if m[(best, col)].norm() <= tol {
            continue;
        }
        if best != row {
            for j in 0..m.cols {
                let tmp = m[(row, j)];
                m[(row, j)] = m[(best, j)];
                m[(best, j)] = tmp;
            }
        }
        let inv = cr(1.0) / m[(row, col)];
        for j in 0..m.cols {
            m[(row, j)] *= inv;
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m[(r, col)];
            if factor.norm() <= 1e-300 {
                continue;
            }
            for j in 0..m.cols {
                let v = m[(row, j)];
                m[(r, j)] -= factor * v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank(a: &CMat, tol: f64) -> usize {
    rref(a, tol).1.len()
}

/// Orthonormal basis (columns) of the span of the given column vectors,
/// by modified Gram-Schmidt with a drop tolerance.
pub fn orthonormal_span(vectors: &[CMat], tol: f64) -> Vec<CMat> {
    let mut basis: Vec<CMat> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let coeff = w.dot(b);
            w = w.sub(&b.scale(coeff));
        }
        let norm = w.fro_norm();
        if norm > tol {
            basis.push(w.scale(cr(1.0 / norm)));
        }
    }
    basis
}

/// Orthogonal projection onto the span of the given columns.
pub fn projection_onto_span(vectors: &[CMat], dim: usize, tol: f64) -> CMat {
    let basis = orthonormal_span(vectors, tol);
    let mut p = CMat::zeros(dim, dim);
    for b in &basis {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] += b[(i, 0)] * b[(j, 0)].conj();
            }
        }
    }
    p
}

/// Basis of the nullspace {v : A v = 0}, via RREF free columns.
pub fn nullspace(a: &CMat, tol: f64) -> Vec<CMat> {
    let (r, pivots) = rref(a, tol);
    let mut out = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = CMat::zeros(a.cols, 1);
        v[(free, 0)] = cr(1.0);
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[(pcol, 0)] = -r[(prow, free)];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(n: usize, rng: &mut crate::rng::SplitMix64) -> CMat {
        let mut a = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = c(rng.f64() - 0.5, rng.f64() - 0.5);
            }
        }
        a.hermitian_part()
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for n in [1, 2, 3, 5, 8] {
            let a = random_hermitian(n, &mut rng);
            let (vals, vecs) = hermitian_eigen(&a);
            // A V = V D
            let av = a.mul(&vecs);
            let vd = vecs.mul(&CMat::diag(&vals.iter().map(|&l| cr(l)).collect::<Vec<_>>()));
            assert!(av.approx_eq(&vd, 1e-10), "n={n}");
            // V unitary
            assert!(vecs.adjoint().mul(&vecs).approx_eq(&CMat::identity(n), 1e-10));
            // ascending
            for w in vals.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_of_partial_isometry() {
        // E_{10}: one singular value 1, one 0
        let a = CMat::unit(2, 2, 1, 0);
        let svs = singular_values(&a);
        assert!((svs[0] - 1.0).abs() < 1e-12 && svs[1].abs() < 1e-12);
        assert!((trace_norm(&a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_vec_identity() {
        // vec_r(A B C) = (A ⊗ Cᵀ) vec_r(B)
        let mut rng = crate::rng::SplitMix64::new(9);
        let mut rand_mat = |r: usize, c_: usize| {
            let mut m = CMat::zeros(r, c_);
            for i in 0..r {
                for j in 0..c_ {
                    m[(i, j)] = c(rng.f64() - 0.5, rng.f64() - 0.5);
                }
            }
            m
        };
        let a = rand_mat(3, 3);
        let b = rand_mat(3, 2);
        let cm = rand_mat(2, 2);
        let lhs = a.mul(&b).mul(&cm).vec();
        let rhs = a.kron(&cm.transpose()).mul(&b.vec());
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn psd_projection_is_psd_and_close() {
        let mut rng = crate::rng::SplitMix64::new(17);
        let a = random_hermitian(4, &mut rng);
        let p = psd_project(&a);
        let (vals, _) = hermitian_eigen(&p);
        assert!(vals.iter().all(|&l| l >= -1e-10));
    }

    #[test]
    fn rref_and_nullspace() {
        let a = CMat::from_real_rows(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        assert_eq!(rank(&a, 1e-10), 1);
        let ns = nullspace(&a, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul(&v).max_abs() < 1e-10);
        }
    }
}
