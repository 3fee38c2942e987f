//! Subspaces of Q^n in canonical echelon form.
//!
//! The basis is the reduced row echelon of any spanning set: unit pivots,
//! zeros above and below each pivot, rows ordered by pivot column. Two
//! subspaces are equal iff their canonical bases are identical, so `==` is
//! subspace equality.

use crate::error::{Error, Result};
use crate::linalg::echelon::Echelon;
use crate::linalg::matrix::{vec_add, vec_scale, Matrix};
use crate::rational::Rat;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Canonical reduced echelon rows.
    basis: Vec<Vec<Rat>>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, Matrix::identity(ambient).vectorize_rows())
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector length");
            ech.insert_dense(v);
        }
        Subspace {
            ambient,
            basis: ech.canonical_rows(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient);
        for v in &self.basis {
            ech.insert_dense(v);
        }
        ech
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let ech = self.echelon();
        other.basis.iter().all(|v| ech.contains(v))
    }

    /// Coordinates of `v` in the canonical basis; `None` when outside.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        self.echelon().coordinates(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::from_vectors(self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x in both spans: x = sum a_i u_i = sum b_j w_j. Solve for (a, b) in
        // the kernel of [U^T | -W^T] and read off the u-combinations.
        let (k, m) = (self.dim(), other.dim());
        if k == 0 || m == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut rows = Vec::with_capacity(self.ambient);
        for r in 0..self.ambient {
            let mut row = Vec::with_capacity(k + m);
            for u in &self.basis {
                row.push(u[r].clone());
            }
            for w in &other.basis {
                row.push(-w[r].clone());
            }
            rows.push(row);
        }
        let mat = Matrix::from_rows(rows).unwrap();
        let kernel = crate::linalg::echelon::kernel_dense(&mat);
        let vecs = kernel
            .iter()
            .map(|c| {
                let mut x = vec![Rat::zero(); self.ambient];
                for (i, u) in self.basis.iter().enumerate() {
                    if !c[i].is_zero() {
                        x = vec_add(&x, &vec_scale(u, &c[i]));
                    }
                }
                x
            })
            .collect();
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let vs = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::from_vectors(m.rows, vs)
    }

    /// Matrix of `m` restricted to this subspace, in the canonical basis.
    /// Errors when the map does not preserve the subspace.
    pub fn restrict(&self, m: &Matrix) -> Result<Matrix> {
        let ech = self.echelon();
        let mut cols = Vec::with_capacity(self.dim());
        for v in &self.basis {
            let img = m.apply(v);
            let coords = ech.coordinates(&img).ok_or_else(|| {
                Error::invalid("operator does not preserve the subspace")
            })?;
            cols.push(coords);
        }
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Lifts coordinates in the canonical basis back to ambient vectors.
    pub fn lift(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim());
        let mut x = vec![Rat::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                x = vec_add(&x, &vec_scale(b, c));
            }
        }
        x
    }
}

impl Matrix {
    /// Rows of the matrix as vectors (used for spanning-set constructions).
    pub fn vectorize_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn canonical_form_is_idempotent_and_order_free() {
        let a = Subspace::from_vectors(
            3,
            vec![
                vec![rat(1), rat(2), rat(3)],
                vec![rat(2), rat(4), rat(6)],
                vec![rat(0), rat(1), rat(1)],
            ],
        );
        let b = Subspace::from_vectors(
            3,
            vec![
                vec![rat(0), rat(2), rat(2)],
                vec![rat(1), rat(3), rat(4)],
            ],
        );
        assert_eq!(a, b);
        let again = Subspace::from_vectors(3, a.basis().to_vec());
        assert_eq!(a, again);
    }

    #[test]
    fn sum_and_intersection_dimensions() {
        let u = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        let w = Subspace::from_vectors(3, vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        let s = u.sum(&w);
        let i = u.intersect(&w);
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[rat(0), rat(1), rat(0)]));
        // dim(U) + dim(W) = dim(U+W) + dim(U cap W)
        assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
    }

    #[test]
    fn restriction_of_preserving_operator() {
        let s = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        let m = Matrix::from_rows(vec![
            vec![rat(1), rat(2), rat(0)],
            vec![rat(3), rat(4), rat(0)],
            vec![rat(0), rat(0), rat(5)],
        ])
        .unwrap();
        let r = s.restrict(&m).unwrap();
        assert_eq!(r.rows, 2);
        assert_eq!(*r.get(0, 1), rat(2));
        let t = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)], vec![rat(1), rat(0), rat(0)]]);
        let m2 = Matrix::from_rows(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ])
        .unwrap();
        assert!(t.restrict(&m2).is_err());
    }
}
