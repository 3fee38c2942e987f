//! Simultaneous eigenspace decomposition of commuting operators over Q.
//!
//! Eigenvalues are found as rational roots of minimal polynomials; the field
//! is never extended. An operator whose minimal polynomial has an irrational
//! root, or a repeated root, is rejected.

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::subspace::Subspace;
use crate::poly::minimal_polynomial;
use crate::rational::Rat;

/// One joint eigenspace: the eigenvalue of each operator, and the space.
#[derive(Clone, Debug)]
pub struct EigenBlock {
    pub values: Vec<Rat>,
    pub space: Subspace,
}

/// Rational eigenvalues of an operator that is diagonalizable over Q.
/// Errors when the spectrum is irrational or the operator is defective.
pub fn rational_spectrum(m: &Matrix) -> Result<Vec<Rat>> {
    let p = minimal_polynomial(m);
    let roots = p.rational_roots()?;
    match p.degree() {
        Some(d) if d == roots.len() && p.is_squarefree() => Ok(roots),
        Some(d) if d == roots.len() => Err(Error::NotSplit(
            "operator is not diagonalizable (repeated root in minimal polynomial)".into(),
        )),
        _ => Err(Error::NotSplit(format!(
            "minimal polynomial of degree {:?} has only {} rational roots",
            p.degree(),
            roots.len()
        ))),
    }
}

/// Joint eigenspace decomposition of pairwise commuting, individually
/// Q-diagonalizable operators. Blocks are sorted by eigenvalue tuple; their
/// dimensions sum to the ambient dimension.
pub fn simultaneous_eigenspaces(ops: &[Matrix]) -> Result<Vec<EigenBlock>> {
    let n = match ops.first() {
        Some(m) => {
            if !m.is_square() {
                return Err(Error::Dim("eigen decomposition needs square operators".into()));
            }
            m.rows
        }
        None => {
            return Ok(vec![EigenBlock {
                values: Vec::new(),
                space: Subspace::full(0),
            }])
        }
    };
    for (i, a) in ops.iter().enumerate() {
        if (a.rows, a.cols) != (n, n) {
            return Err(Error::Dim("operators of unequal size".into()));
        }
        for b in &ops[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::NotCommuting(format!(
                    "operators {} and later one do not commute",
                    i
                )));
            }
        }
    }
    let mut blocks = vec![EigenBlock {
        values: Vec::new(),
        space: Subspace::full(n),
    }];
    for op in ops {
        let mut next = Vec::new();
        for block in &blocks {
            if block.space.is_zero() {
                continue;
            }
            let restricted = block.space.restrict(op).map_err(|_| {
                Error::NotCommuting(
                    "operator does not preserve a joint eigenspace of the previous ones".into(),
                )
            })?;
            let spectrum = rational_spectrum(&restricted)?;
            let k = block.space.dim();
            let mut captured = 0;
            for lambda in spectrum {
                let mut shifted = restricted.clone();
                for i in 0..k {
                    let v = shifted.get(i, i) - &lambda;
                    shifted.set(i, i, v);
                }
                let ker = crate::linalg::echelon::kernel_dense(&shifted);
                captured += ker.len();
                let vecs = ker.iter().map(|c| block.space.lift(c)).collect();
                let mut values = block.values.clone();
                values.push(lambda);
                next.push(EigenBlock {
                    values,
                    space: Subspace::from_vectors(n, vecs),
                });
            }
            if captured != k {
                return Err(Error::NotSplit(
                    "eigenspaces do not fill the space (defective operator)".into(),
                ));
            }
        }
        blocks = next;
    }
    blocks.sort_by(|a, b| cmp_tuple(&a.values, &b.values));
    let total: usize = blocks.iter().map(|b| b.space.dim()).sum();
    debug_assert_eq!(total, n);
    Ok(blocks)
}

pub fn cmp_tuple(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn single_diagonalizable_operator() {
        // diag(1, 1, -1) in a rotated basis.
        let m = Matrix::from_rows(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ])
        .unwrap();
        let blocks = simultaneous_eigenspaces(&[m]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].values, vec![rat(-1)]);
        assert_eq!(blocks[0].space.dim(), 1);
        assert_eq!(blocks[1].values, vec![rat(1)]);
        assert_eq!(blocks[1].space.dim(), 2);
    }

    #[test]
    fn two_commuting_operators_refine() {
        let a = Matrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(2)],
        ])
        .unwrap();
        let b = Matrix::from_rows(vec![
            vec![rat(3), rat(0), rat(0)],
            vec![rat(0), rat(4), rat(0)],
            vec![rat(0), rat(0), rat(5)],
        ])
        .unwrap();
        let blocks = simultaneous_eigenspaces(&[a, b]).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|bl| bl.space.dim() == 1));
        assert_eq!(blocks[0].values, vec![rat(1), rat(3)]);
    }

    #[test]
    fn irrational_spectrum_rejected() {
        // Companion matrix of x^2 - 2.
        let c = Matrix::from_rows(vec![vec![rat(0), rat(2)], vec![rat(1), rat(0)]]).unwrap();
        assert!(matches!(
            simultaneous_eigenspaces(&[c]),
            Err(Error::NotSplit(_))
        ));
    }

    #[test]
    fn defective_operator_rejected() {
        let j = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]]).unwrap();
        assert!(matches!(
            simultaneous_eigenspaces(&[j]),
            Err(Error::NotSplit(_))
        ));
    }

    #[test]
    fn noncommuting_rejected() {
        let a = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(2)]]).unwrap();
        assert!(matches!(
            simultaneous_eigenspaces(&[a, b]),
            Err(Error::NotCommuting(_))
        ));
    }
}
