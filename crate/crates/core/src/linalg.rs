//! Dense exact linear algebra over a field.

use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone + Default + PartialEq + Eq + std::hash::Hash + Ord + std::fmt::Debug + Send + Sync>
    Matrix<E>
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![E::default(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<E>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    /// Build from columns.
    pub fn from_cols(cols: Vec<Vec<E>>) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(nrows, ncols);
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c.into_iter().enumerate() {
                m.data[i][j] = v;
            }
        }
        m
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i][j] = v;
    }
    pub fn row_slice(&self, i: usize) -> &[E] {
        &self.data[i]
    }
    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data.clone()
    }
    pub fn col(&self, j: usize) -> Vec<E> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let t = field.mul(a, &o.data[k][j]);
                    out.data[i][j] = field.add(&out.data[i][j], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] = field.add(&self.data[i][j], &o.data[i][j]);
            }
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        let mut out = self.clone();
        for r in out.data.iter_mut() {
            for a in r.iter_mut() {
                *a = field.mul(a, s);
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, mut e: u64) -> Self {
        let mut acc = Self::identity(field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        let z = E::default();
        self.data.iter().all(|r| r.iter().all(|a| *a == z))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(&m.data[i][c])) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = field.inv(&m.data[r][c]).expect("pivot nonzero");
            for a in m.data[r].iter_mut() {
                *a = field.mul(a, &inv);
            }
            for i in 0..m.rows {
                if i == r || field.is_zero(&m.data[i][c]) {
                    continue;
                }
                let f = m.data[i][c].clone();
                for j in 0..m.cols {
                    let t = field.mul(&f, &m.data[r][j]);
                    m.data[i][j] = field.sub(&m.data[i][j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right kernel, one vector per free column, with a 1 in
    /// that column.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&r.data[row][free]);
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `self * v = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Option<Vec<E>> {
        let mut aug = self.clone();
        for (i, r) in aug.data.iter_mut().enumerate() {
            r.push(b[i].clone());
        }
        aug.cols += 1;
        let (r, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = r.data[row][self.cols].clone();
        }
        Some(v)
    }

    pub fn determinant<F: Field<Elem = E>>(&self, field: &F) -> E {
        assert_eq!(self.rows, self.cols);
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
                return field.zero();
            };
            if p != c {
                m.swap(p, c);
                det = field.neg(&det);
            }
            det = field.mul(&det, &m[c][c]);
            let inv = field.inv(&m[c][c]).expect("pivot nonzero");
            for i in c + 1..n {
                if field.is_zero(&m[i][c]) {
                    continue;
                }
                let f = field.mul(&m[i][c], &inv);
                for j in c..n {
                    let t = field.mul(&f, &m[c][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(X I - A)` via Hessenberg reduction.
    pub fn char_poly<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.data.clone();
        // Reduce to upper Hessenberg form by similarity transforms.
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !field.is_zero(&h[i][c])) else {
                continue;
            };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let inv = field.inv(&h[c + 1][c]).expect("pivot nonzero");
            for i in c + 2..n {
                if field.is_zero(&h[i][c]) {
                    continue;
                }
                let f = field.mul(&h[i][c], &inv);
                for j in 0..n {
                    let t = field.mul(&f, &h[c + 1][j]);
                    h[i][j] = field.sub(&h[i][j], &t);
                }
                for row in h.iter_mut() {
                    let t = field.mul(&f, &row[i]);
                    row[c + 1] = field.add(&row[c + 1], &t);
                }
            }
        }
        // p_k = characteristic polynomial of the leading k x k block.
        let x = Poly::x(field);
        let mut ps: Vec<Poly<E>> = vec![Poly::constant(field.one())];
        for k in 0..n {
            let mut pk = x
                .sub(field, &Poly::constant(h[k][k].clone()))
                .mul(field, &ps[k]);
            let mut prod = field.one();
            for i in (0..k).rev() {
                prod = field.mul(&prod, &h[i + 1][i]);
                let t = field.mul(&prod, &h[i][k]);
                pk = pk.sub(field, &ps[i].scale(field, &t));
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial, as the lcm of the local minimal polynomials of
    /// the standard basis vectors.
    pub fn min_poly<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Poly::constant(field.one());
        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            // Skip vectors already annihilated by the current lcm.
            if self.apply_poly(field, &acc, &e).iter().all(|a| field.is_zero(a)) {
                continue;
            }
            let local = self.local_min_poly(field, &e);
            let g = acc.gcd(field, &local);
            acc = acc.mul(field, &local).div_rem(field, &g).0.monic(field);
        }
        acc
    }

    /// `p(A) v`.
    pub fn apply_poly<F: Field<Elem = E>>(&self, field: &F, p: &Poly<E>, v: &[E]) -> Vec<E> {
        let mut acc = vec![field.zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(field, &acc);
            for (a, b) in acc.iter_mut().zip(v) {
                *a = field.add(a, &field.mul(c, b));
            }
        }
        acc
    }

    /// Monic polynomial of least degree with `p(A) v = 0`.
    pub fn local_min_poly<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Poly<E> {
        let mut krylov: Vec<Vec<E>> = vec![v.to_vec()];
        loop {
            let last = krylov.last().unwrap().clone();
            let next = self.mul_vec(field, &last);
            let m = Matrix::from_cols(krylov.clone());
            if let Some(sol) = m.solve(field, &next) {
                let mut c: Vec<E> = sol.iter().map(|a| field.neg(a)).collect();
                c.push(field.one());
                return Poly::new(c);
            }
            krylov.push(next);
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }
}

/// Evaluate a polynomial at a square matrix.
pub fn poly_at_matrix<F: Field>(field: &F, p: &Poly<F::Elem>, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(field, a).add(field, &Matrix::identity(field, n).scale(field, c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fq, Rationals, Ring};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_and_kernel() {
        let q = Rationals;
        let m = qm(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant(&q), q.from_i64(-2));
        let s = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = s.kernel(&q);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(s.mul_vec(&q, v).iter().all(|a| q.is_zero(a)));
        }
    }

    #[test]
    fn nilpotent_block_min_poly() {
        let q = Rationals;
        // images (2, 0, 2x) in basis (1, x, x^2)
        let m = Matrix::from_cols(vec![
            vec![q.from_i64(2), q.zero(), q.zero()],
            vec![q.zero(), q.zero(), q.zero()],
            vec![q.zero(), q.from_i64(2), q.zero()],
        ]);
        let mp = m.min_poly(&q);
        let expect = Poly::new(vec![q.zero(), q.zero(), q.from_i64(-2), q.one()]);
        assert_eq!(mp, expect);
        assert_eq!(m.char_poly(&q), expect);
    }

    /// det(x0 I - A) computed directly, for comparison with char_poly.
    fn char_at(field: &FiniteField, a: &Matrix<Fq>, x0: Fq) -> Fq {
        let n = a.rows();
        let mut m = a.scale(field, &field.neg(&field.one()));
        for i in 0..n {
            let v = field.add(m.get(i, i), &x0);
            m.set(i, i, v);
        }
        m.determinant(field)
    }

    #[test]
    fn char_and_min_poly_on_random_matrices() {
        let f7 = FiniteField::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let rows: Vec<Vec<Fq>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| Fq(if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..7) }))
                        .collect()
                })
                .collect();
            let a = Matrix::from_rows(rows);
            let cp = a.char_poly(&f7);
            for x0 in 0..7 {
                assert_eq!(cp.eval(&f7, &Fq(x0)), char_at(&f7, &a, Fq(x0)));
            }
            let mp = a.min_poly(&f7);
            assert!(poly_at_matrix(&f7, &mp, &a).is_zero());
            assert!(cp.rem(&f7, &mp).is_zero());
            // I, A, ..., A^(deg-1) must be linearly independent.
            let d = mp.degree().unwrap();
            let flat: Vec<Vec<Fq>> = (0..d)
                .map(|k| a.pow(&f7, k as u64).to_rows().concat())
                .collect();
            assert_eq!(Matrix::from_cols(flat).rank(&f7), d);
        }
    }
}
