//! Lie algebras over Q given by structure constants.
//!
//! Brackets are stored sparsely for index pairs i < j only; the rest follows
//! by antisymmetry, and [e_i, e_i] = 0 always. A structure may carry an
//! optional grading by Z^r x prod Z/m_i, a designated toral index set, and an
//! invariant symmetric bilinear form. `validate` checks the Jacobi identity
//! on every basis triple, grading compatibility of every stored bracket, and
//! form symmetry plus invariance.

use crate::error::{Error, Result};
use crate::linalg::echelon::{kernel_streamed, SparseRow};
use crate::linalg::eigen::{cmp_tuple, rational_spectrum, simultaneous_eigenspaces, EigenBlock};
use crate::linalg::matrix::{vec_add, vec_is_zero, zero_vec, Matrix};
use crate::linalg::subspace::Subspace;
use crate::rational::Rat;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// A degree in Z^r x prod Z/m_i, stored as one vector: first the free
/// coordinates, then one reduced coordinate per torsion factor.
pub type Degree = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub free_rank: usize,
    /// Moduli of the torsion factors, each >= 1.
    pub torsion: Vec<i64>,
    /// Degree of each basis vector.
    pub degrees: Vec<Degree>,
}

impl Grading {
    pub fn width(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> Degree {
        vec![0; self.width()]
    }

    pub fn reduce(&self, d: &Degree) -> Degree {
        let mut out = d.clone();
        for (k, m) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            out[i] = out[i].rem_euclid(*m);
        }
        out
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        self.reduce(&a.iter().map(|x| -x).collect())
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.degrees.len() != dim {
            return Err(Error::invalid(format!(
                "grading lists {} degrees for dimension {dim}",
                self.degrees.len()
            )));
        }
        if self.torsion.iter().any(|m| *m < 1) {
            return Err(Error::invalid("torsion moduli must be >= 1"));
        }
        for d in &self.degrees {
            if d.len() != self.width() {
                return Err(Error::invalid(format!(
                    "degree width {} does not match grading group width {}",
                    d.len(),
                    self.width()
                )));
            }
            if self.reduce(d) != *d {
                return Err(Error::invalid(
                    "torsion coordinates of a degree are not reduced",
                ));
            }
        }
        Ok(())
    }

    /// Distinct degrees occurring, sorted.
    pub fn support(&self) -> Vec<Degree> {
        let set: BTreeSet<Degree> = self.degrees.iter().cloned().collect();
        set.into_iter().collect()
    }

    /// Basis indices in the component of degree `d`.
    pub fn component(&self, d: &Degree) -> Vec<usize> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == d)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SCAlgebra {
    pub name: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// [e_i, e_j] for i < j; terms sorted by target index, no zero coefficients.
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    pub grading: Option<Grading>,
    /// Basis indices spanning a designated toral subalgebra, if any.
    pub toral: Option<Vec<usize>>,
    /// Invariant symmetric bilinear form, if any.
    pub form: Option<Matrix>,
}

impl SCAlgebra {
    /// Builds an algebra from raw bracket entries. Entries may use any index
    /// order (sign-normalized here) and repeat pairs (merged); i = j entries
    /// with nonzero terms are rejected.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        entries: Vec<(usize, usize, Vec<(usize, Rat)>)>,
    ) -> Result<Self> {
        let mut brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rat>> = BTreeMap::new();
        for (i, j, terms) in entries {
            if i >= dim || j >= dim {
                return Err(Error::invalid(format!(
                    "bracket pair ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            let (key, flip) = if i < j {
                ((i, j), false)
            } else if j < i {
                ((j, i), true)
            } else {
                if terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::invalid(format!(
                        "nonzero bracket [e_{i}, e_{i}] violates antisymmetry"
                    )));
                }
                continue;
            };
            let slot = brackets.entry(key).or_default();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::invalid(format!(
                        "bracket target {k} out of range for dimension {dim}"
                    )));
                }
                let c = if flip { -c } else { c };
                let cur = slot.entry(k).or_insert_with(Rat::zero);
                *cur += c;
            }
        }
        let brackets = brackets
            .into_iter()
            .map(|(k, m)| {
                (
                    k,
                    m.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>(),
                )
            })
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(SCAlgebra {
            name: name.into(),
            dim,
            basis_names: (0..dim).map(|i| format!("e{i}")).collect(),
            brackets,
            grading: None,
            toral: None,
            form: None,
        })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        SCAlgebra::new(name, dim, Vec::new()).unwrap()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::invalid("basis name count mismatch"));
        }
        self.basis_names = names;
        Ok(self)
    }

    /// [e_i, e_j] for arbitrary i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else if j < i {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = zero_vec(self.dim);
        for ((i, j), terms) in &self.brackets {
            let c = &(&x[*i] * &y[*j]) - &(&x[*j] * &y[*i]);
            if c.is_zero() {
                continue;
            }
            for (k, v) in terms {
                out[*k] += &c * v;
            }
        }
        out
    }

    /// ad(e_i) as a matrix (column j is [e_i, e_j]).
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket_basis(i, j) {
                m.set(k, j, c);
            }
        }
        m
    }

    /// ad(x) for a coordinate vector.
    pub fn ad(&self, x: &[Rat]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &crate::linalg::matrix::unit_vec(self.dim, j));
            for (k, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, j, c);
                }
            }
        }
        m
    }

    /// Jacobi on every basis triple, grading compatibility, form symmetry
    /// and invariance. Fails with the first offending item.
    pub fn validate(&self) -> Result<()> {
        if self.basis_names.len() != self.dim {
            return Err(Error::invalid("basis name count mismatch"));
        }
        for ((i, j), terms) in &self.brackets {
            if *i >= *j {
                return Err(Error::invalid("bracket key not in i < j form"));
            }
            if terms.iter().any(|(_, c)| c.is_zero()) {
                return Err(Error::invalid("stored bracket has a zero coefficient"));
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let cij = self.bracket_basis(i, j);
                if cij.is_empty() {
                    continue;
                }
                for k in (j + 1)..self.dim {
                    self.jacobi_triple(i, j, k)?;
                }
            }
        }
        // Jacobi triples with [e_i, e_j] = 0 can still fail via the other two
        // terms; cover all triples once, organized to skip fully dead ones.
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    if self.bracket_basis(i, j).is_empty() {
                        self.jacobi_triple(i, j, k)?;
                    }
                }
            }
        }
        if let Some(g) = &self.grading {
            g.validate(self.dim)?;
            for ((i, j), terms) in &self.brackets {
                let sum = g.add(&g.degrees[*i], &g.degrees[*j]);
                for (k, _) in terms {
                    if g.degrees[*k] != sum {
                        return Err(Error::invalid(format!(
                            "bracket [{}, {}] hits {} outside degree component",
                            self.basis_names[*i], self.basis_names[*j], self.basis_names[*k]
                        )));
                    }
                }
            }
        }
        if let Some(t) = &self.toral {
            if t.iter().any(|&i| i >= self.dim) {
                return Err(Error::invalid("toral index out of range"));
            }
        }
        if let Some(f) = &self.form {
            if (f.rows, f.cols) != (self.dim, self.dim) {
                return Err(Error::invalid("form matrix has wrong shape"));
            }
            if *f != f.transpose() {
                return Err(Error::invalid("form is not symmetric"));
            }
            // Invariance ( [x,y] | z ) = ( x | [y,z] ) on basis triples.
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        let lhs: Rat = self
                            .bracket_basis(i, j)
                            .iter()
                            .map(|(m, c)| c * f.get(*m, k))
                            .sum();
                        let rhs: Rat = self
                            .bracket_basis(j, k)
                            .iter()
                            .map(|(m, c)| c * f.get(i, *m))
                            .sum();
                        if lhs != rhs {
                            return Err(Error::invalid(format!(
                                "form not invariant at triple ({}, {}, {})",
                                self.basis_names[i], self.basis_names[j], self.basis_names[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobi_triple(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let mut acc = zero_vec(self.dim);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, coeff) in self.bracket_basis(a, b) {
                for (t, c2) in self.bracket_basis(m, c) {
                    acc[t] += &coeff * &c2;
                }
            }
        }
        if vec_is_zero(&acc) {
            Ok(())
        } else {
            Err(Error::Jacobi { i, j, k })
        }
    }

    /// Span of all brackets [S, T].
    pub fn product_span(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for u in s.basis() {
            for v in t.basis() {
                let w = self.bracket(u, v);
                if !vec_is_zero(&w) {
                    vecs.push(w);
                }
            }
        }
        Subspace::from_vectors(self.dim, vecs)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// Derived subalgebra [L, L].
    pub fn derived(&self) -> Subspace {
        let mut vecs = Vec::new();
        for terms in self.brackets.values() {
            let mut v = zero_vec(self.dim);
            for (k, c) in terms {
                v[*k] = c.clone();
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.dim, vecs)
    }

    /// Derived series L >= L' >= L'' >= ..., until stable; first entry is L.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.full_space()];
        loop {
            let last = series.last().unwrap();
            let next = self.product_span(last, last);
            if next == *last {
                break;
            }
            let stop = next.is_zero();
            series.push(next);
            if stop {
                break;
            }
        }
        series
    }

    /// Lower central series L >= [L,L] >= [L,[L,L]] >= ...
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full_space();
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.product_span(&full, last);
            if next == *last {
                break;
            }
            let stop = next.is_zero();
            series.push(next);
            if stop {
                break;
            }
        }
        series
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().dim() == self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    /// Centre Z(L) = {x : [L, x] = 0}.
    pub fn centre(&self) -> Subspace {
        self.centralizer(&self.full_space())
    }

    /// Centralizer of a subspace: {x : [s, x] = 0 for all s in S}.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for v in s.basis() {
            let ad = self.ad(v);
            for r in 0..self.dim {
                rows.push(ad.row(r));
            }
        }
        if rows.is_empty() {
            return self.full_space();
        }
        let m = Matrix::from_rows(rows).unwrap();
        let kernel = crate::linalg::echelon::kernel_dense(&m);
        Subspace::from_vectors(self.dim, kernel)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.product_span(s, s)
            .basis()
            .iter()
            .all(|v| s.contains(v))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.product_span(&self.full_space(), s)
            .basis()
            .iter()
            .all(|v| s.contains(v))
    }

    /// Quotient by an ideal, with the projection matrix L -> L/I.
    /// Quotient basis: standard basis vectors at the non-pivot coordinates of
    /// the ideal's canonical echelon.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(SCAlgebra, Matrix)> {
        if !self.is_ideal(ideal) {
            return Err(Error::invalid("quotient by a non-ideal"));
        }
        let mut ech = crate::linalg::echelon::Echelon::new(self.dim);
        for v in ideal.basis() {
            ech.insert_dense(v);
        }
        let pivots: BTreeSet<usize> = ech.pivot_columns().into_iter().collect();
        let complement: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = complement.len();
        // Projection: reduce mod the ideal, then read complement coordinates.
        let mut proj = Matrix::zeros(qdim, self.dim);
        for j in 0..self.dim {
            let reduced = crate::linalg::echelon::sparse_to_dense(
                &ech.reduce(vec![(j, Rat::from_integer(1.into()))]),
                self.dim,
            );
            for (r, &c) in complement.iter().enumerate() {
                if !reduced[c].is_zero() {
                    proj.set(r, j, reduced[c].clone());
                }
            }
        }
        let mut entries = Vec::new();
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate().skip(a + 1) {
                let w = self.bracket_basis(ca, cb);
                if w.is_empty() {
                    continue;
                }
                let mut dense = zero_vec(self.dim);
                for (k, c) in w {
                    dense[k] = c;
                }
                let img = proj.apply(&dense);
                let terms: Vec<(usize, Rat)> = img
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !terms.is_empty() {
                    entries.push((a, b, terms));
                }
            }
        }
        let names = complement
            .iter()
            .map(|&c| self.basis_names[c].clone())
            .collect();
        let q = SCAlgebra::new(format!("{}/ideal", self.name), qdim, entries)?
            .with_names(names)?;
        Ok((q, proj))
    }

    /// Direct sum with block brackets.
    pub fn direct_sum(&self, other: &SCAlgebra) -> SCAlgebra {
        let dim = self.dim + other.dim;
        let mut entries = Vec::new();
        for ((i, j), terms) in &self.brackets {
            entries.push((*i, *j, terms.clone()));
        }
        for ((i, j), terms) in &other.brackets {
            entries.push((
                i + self.dim,
                j + self.dim,
                terms.iter().map(|(k, c)| (k + self.dim, c.clone())).collect(),
            ));
        }
        let mut algebra = SCAlgebra::new(
            format!("{}(+){}", self.name, other.name),
            dim,
            entries,
        )
        .unwrap();
        let mut names: Vec<String> = Vec::with_capacity(dim);
        let collide: BTreeSet<&String> = self
            .basis_names
            .iter()
            .filter(|n| other.basis_names.contains(n))
            .collect();
        for n in &self.basis_names {
            if collide.contains(n) {
                names.push(format!("{n}.1"));
            } else {
                names.push(n.clone());
            }
        }
        for n in &other.basis_names {
            if collide.contains(n) {
                names.push(format!("{n}.2"));
            } else {
                names.push(n.clone());
            }
        }
        algebra.basis_names = names;
        if let (Some(f), Some(g)) = (&self.form, &other.form) {
            let mut form = Matrix::zeros(dim, dim);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    form.set(i, j, f.get(i, j).clone());
                }
            }
            for i in 0..other.dim {
                for j in 0..other.dim {
                    form.set(self.dim + i, self.dim + j, g.get(i, j).clone());
                }
            }
            algebra.form = Some(form);
        }
        match (&self.toral, &other.toral) {
            (Some(a), Some(b)) => {
                let mut t = a.clone();
                t.extend(b.iter().map(|i| i + self.dim));
                algebra.toral = Some(t);
            }
            (Some(a), None) => algebra.toral = Some(a.clone()),
            (None, Some(b)) => {
                algebra.toral = Some(b.iter().map(|i| i + self.dim).collect())
            }
            (None, None) => {}
        }
        algebra
    }

    /// Subspace spanned by designated toral basis indices.
    pub fn toral_subspace(&self) -> Option<Subspace> {
        self.toral.as_ref().map(|idx| {
            Subspace::from_vectors(
                self.dim,
                idx.iter()
                    .map(|&i| crate::linalg::matrix::unit_vec(self.dim, i))
                    .collect(),
            )
        })
    }

    /// Weight decomposition under a toral subspace: the subspace must be
    /// abelian and each ad must be diagonalizable over Q. Verifies weight
    /// additivity of brackets before returning.
    pub fn weight_decomposition(&self, h: &Subspace) -> Result<WeightDecomposition> {
        if h.dim() == 0 {
            return Ok(WeightDecomposition {
                toral: h.clone(),
                blocks: vec![EigenBlock {
                    values: Vec::new(),
                    space: self.full_space(),
                }],
            });
        }
        for (a, u) in h.basis().iter().enumerate() {
            for v in h.basis().iter().skip(a + 1) {
                if !vec_is_zero(&self.bracket(u, v)) {
                    return Err(Error::NotToral("subspace is not abelian".into()));
                }
            }
        }
        let ads: Vec<Matrix> = h.basis().iter().map(|v| self.ad(v)).collect();
        for (i, ad) in ads.iter().enumerate() {
            rational_spectrum(ad).map_err(|e| {
                Error::NotToral(format!(
                    "ad of toral basis element {i} is not diagonalizable over Q: {e}"
                ))
            })?;
        }
        let blocks = simultaneous_eigenspaces(&ads)?;
        let decomp = WeightDecomposition {
            toral: h.clone(),
            blocks,
        };
        decomp.verify_bracket_additivity(self)?;
        Ok(decomp)
    }

    /// Multiplication algebra: the unital associative algebra of operators
    /// generated by all ad(e_i), inside End(L). Errors past `max_dim`.
    pub fn mult_closure(&self, max_dim: usize) -> Result<Vec<Matrix>> {
        let n = self.dim;
        let gens: Vec<Matrix> = (0..n)
            .map(|i| self.ad_basis(i))
            .filter(|m| !m.is_zero())
            .collect();
        let mut ech = crate::linalg::echelon::Echelon::new(n * n);
        let mut members: Vec<Matrix> = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        let push = |m: Matrix,
                        ech: &mut crate::linalg::echelon::Echelon,
                        members: &mut Vec<Matrix>,
                        queue: &mut Vec<usize>|
         -> bool {
            if ech.insert_dense(&m.vectorize()).is_some() {
                members.push(m);
                queue.push(members.len() - 1);
                true
            } else {
                false
            }
        };
        push(Matrix::identity(n), &mut ech, &mut members, &mut queue);
        for g in &gens {
            push(g.clone(), &mut ech, &mut members, &mut queue);
        }
        while let Some(idx) = queue.pop() {
            if members.len() > max_dim {
                return Err(Error::Limit(format!(
                    "multiplication algebra exceeds bound {max_dim}"
                )));
            }
            let base = members[idx].clone();
            for g in &gens {
                push(base.mul(g), &mut ech, &mut members, &mut queue);
            }
        }
        if members.len() > max_dim {
            return Err(Error::Limit(format!(
                "multiplication algebra exceeds bound {max_dim}"
            )));
        }
        Ok(members)
    }

    /// Smallest Mult(L)-submodule containing S: closure of S under all ad.
    pub fn mult_module_span(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let next = cur.sum(&self.product_span(&self.full_space(), &cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// All invariant bilinear forms ( [x,y] | z ) = ( x | [y,z] ), as
    /// vectorized n x n matrices (row-major).
    pub fn invariant_bilinear_forms(&self) -> Subspace {
        self.invariant_forms_inner(false)
    }

    /// The symmetric invariant forms.
    pub fn invariant_symmetric_forms(&self) -> Subspace {
        self.invariant_forms_inner(true)
    }

    fn invariant_forms_inner(&self, symmetric: bool) -> Subspace {
        let n = self.dim;
        let unknowns = n * n;
        let equations = |emit: &mut dyn FnMut(SparseRow) -> bool| {
            if symmetric {
                for p in 0..n {
                    for q in (p + 1)..n {
                        if !emit(vec![
                            (p * n + q, Rat::from_integer(1.into())),
                            (q * n + p, Rat::from_integer((-1).into())),
                        ]) {
                            return;
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let cij = self.bracket_basis(i, j);
                    for k in 0..n {
                        let cjk = self.bracket_basis(j, k);
                        if cij.is_empty() && cjk.is_empty() {
                            continue;
                        }
                        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
                        for (m, c) in &cij {
                            *row.entry(m * n + k).or_insert_with(Rat::zero) += c;
                        }
                        for (m, c) in &cjk {
                            *row.entry(i * n + m).or_insert_with(Rat::zero) -= c;
                        }
                        let row: SparseRow =
                            row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        if !emit(row) {
                            return;
                        }
                    }
                }
            }
        };
        let kernel = kernel_streamed(unknowns, equations, 2 * unknowns);
        Subspace::from_vectors(unknowns, kernel)
    }

    /// Killing form matrix: tr(ad x ad y) on basis pairs.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let mut k = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut t = Rat::zero();
                for p in 0..self.dim {
                    for q in 0..self.dim {
                        let a = ads[i].get(p, q);
                        if !a.is_zero() {
                            let b = ads[j].get(q, p);
                            if !b.is_zero() {
                                t += a * b;
                            }
                        }
                    }
                }
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// f is an algebra automorphism: invertible and bracket-preserving.
    /// Fails with a witness basis pair.
    pub fn check_automorphism(&self, f: &Matrix) -> Result<()> {
        if (f.rows, f.cols) != (self.dim, self.dim) {
            return Err(Error::Dim("automorphism has wrong shape".into()));
        }
        if f.inverse().is_none() {
            return Err(Error::invalid("map is not invertible"));
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let lhs = f.apply(&self.bracket_basis_dense(i, j));
                let rhs = self.bracket(&f.column(i), &f.column(j));
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "not an automorphism: fails at pair ({}, {})",
                        self.basis_names[i], self.basis_names[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// d is a derivation: d[x,y] = [dx,y] + [x,dy]. Fails with a witness pair.
    pub fn check_derivation(&self, d: &Matrix) -> Result<()> {
        if (d.rows, d.cols) != (self.dim, self.dim) {
            return Err(Error::Dim("derivation has wrong shape".into()));
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let lhs = d.apply(&self.bracket_basis_dense(i, j));
                let ei = crate::linalg::matrix::unit_vec(self.dim, i);
                let ej = crate::linalg::matrix::unit_vec(self.dim, j);
                let rhs = vec_add(
                    &self.bracket(&d.column(i), &ej),
                    &self.bracket(&ei, &d.column(j)),
                );
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "not a derivation: Leibniz fails at pair ({}, {})",
                        self.basis_names[i], self.basis_names[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn bracket_basis_dense(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut v = zero_vec(self.dim);
        for (k, c) in self.bracket_basis(i, j) {
            v[k] = c;
        }
        v
    }

    /// Structure constants of a subalgebra on the canonical basis of `s`,
    /// plus the inclusion matrix (columns are the basis of s in L).
    pub fn restrict_to_subalgebra(&self, s: &Subspace) -> Result<(SCAlgebra, Matrix)> {
        if !self.is_subalgebra(s) {
            return Err(Error::invalid("subspace is not a subalgebra"));
        }
        let m = s.dim();
        let basis = s.basis().to_vec();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                let w = self.bracket(&basis[i], &basis[j]);
                if vec_is_zero(&w) {
                    continue;
                }
                let coords = s
                    .coordinates(&w)
                    .ok_or_else(|| Error::invalid("bracket left the subalgebra"))?;
                let terms: Vec<(usize, Rat)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                entries.push((i, j, terms));
            }
        }
        let sub = SCAlgebra::new(format!("{}|sub", self.name), m, entries)?;
        let incl = Matrix::from_columns(self.dim, &basis)?;
        Ok((sub, incl))
    }

    /// Component projection matrices of the grading, one per support degree.
    pub fn grading_projections(&self) -> Option<Vec<(Degree, Matrix)>> {
        let g = self.grading.as_ref()?;
        let mut out = Vec::new();
        for d in g.support() {
            let mut p = Matrix::zeros(self.dim, self.dim);
            for i in g.component(&d) {
                p.set(i, i, Rat::from_integer(1.into()));
            }
            out.push((d, p));
        }
        Some(out)
    }
}

#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub toral: Subspace,
    pub blocks: Vec<EigenBlock>,
}

impl WeightDecomposition {
    pub fn weights(&self) -> Vec<&[Rat]> {
        self.blocks.iter().map(|b| b.values.as_slice()).collect()
    }

    pub fn block(&self, weight: &[Rat]) -> Option<&EigenBlock> {
        self.blocks.iter().find(|b| b.values == weight)
    }

    pub fn zero_block(&self) -> Option<&EigenBlock> {
        self.blocks
            .iter()
            .find(|b| b.values.iter().all(|v| v.is_zero()))
    }

    /// Checks [L_a, L_b] lands in L_{a+b} (zero when a+b is not a weight).
    fn verify_bracket_additivity(&self, algebra: &SCAlgebra) -> Result<()> {
        for x in &self.blocks {
            for y in &self.blocks {
                let sum: Vec<Rat> = x
                    .values
                    .iter()
                    .zip(&y.values)
                    .map(|(a, b)| a + b)
                    .collect();
                let target = self.blocks.iter().find(|b| b.values == sum);
                for u in x.space.basis() {
                    for v in y.space.basis() {
                        let w = algebra.bracket(u, v);
                        if vec_is_zero(&w) {
                            continue;
                        }
                        match target {
                            Some(t) if t.space.contains(&w) => {}
                            _ => {
                                return Err(Error::NotToral(
                                    "bracket violates weight additivity".into(),
                                ))
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The weight tuple of the block containing a standard basis vector, if
    /// the vector is homogeneous.
    pub fn weight_of(&self, v: &[Rat]) -> Option<&[Rat]> {
        self.blocks
            .iter()
            .find(|b| b.space.contains(v))
            .map(|b| b.values.as_slice())
    }
}

/// Convenience: ordered weights with dimensions, for reports.
pub fn weight_summary(d: &WeightDecomposition) -> Vec<(Vec<Rat>, usize)> {
    let mut v: Vec<(Vec<Rat>, usize)> = d
        .blocks
        .iter()
        .map(|b| (b.values.clone(), b.space.dim()))
        .collect();
    v.sort_by(|a, b| cmp_tuple(&a.0, &b.0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::unit_vec;
    use crate::rational::rat;

    /// sl2 with basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f.
    pub fn sl2_hand() -> SCAlgebra {
        SCAlgebra::new(
            "sl2",
            3,
            vec![
                (0, 1, vec![(0, rat(-2))]),
                (0, 2, vec![(1, rat(1))]),
                (1, 2, vec![(2, rat(-2))]),
            ],
        )
        .unwrap()
        .with_names(vec!["e".into(), "h".into(), "f".into()])
        .unwrap()
    }

    /// heisenberg(1) with basis (a, b, c): [a,b] = c.
    pub fn heisenberg_hand() -> SCAlgebra {
        SCAlgebra::new("h1", 3, vec![(0, 1, vec![(2, rat(1))])])
            .unwrap()
            .with_names(vec!["a".into(), "b".into(), "c".into()])
            .unwrap()
    }

    #[test]
    fn sl2_validates_and_broken_table_fails_at_first_triple() {
        sl2_hand().validate().unwrap();
        // Replace [e,f] = h by [e,f] = e: Jacobi must fail at (e, h, f).
        let broken = SCAlgebra::new(
            "broken",
            3,
            vec![
                (0, 1, vec![(0, rat(-2))]),
                (0, 2, vec![(0, rat(1))]),
                (1, 2, vec![(2, rat(-2))]),
            ],
        )
        .unwrap();
        match broken.validate() {
            Err(Error::Jacobi { i: 0, j: 1, k: 2 }) => {}
            other => panic!("expected Jacobi failure at (0,1,2), got {other:?}"),
        }
    }

    #[test]
    fn centre_and_derived_of_basic_algebras() {
        let sl2 = sl2_hand();
        assert_eq!(sl2.centre().dim(), 0);
        assert!(sl2.is_perfect());
        let h = heisenberg_hand();
        let z = h.centre();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&unit_vec(3, 2)));
        assert_eq!(h.derived().dim(), 1);
        assert!(!h.is_perfect());
        assert!(h.is_nilpotent());
        let series = h.lower_central_series();
        assert_eq!(series.len(), 3);
    }

    #[test]
    fn quotient_of_heisenberg_by_centre_is_abelian() {
        let h = heisenberg_hand();
        let z = h.centre();
        let (q, proj) = h.quotient(&z).unwrap();
        assert_eq!(q.dim, 2);
        assert!(q.is_abelian());
        q.validate().unwrap();
        assert_eq!(proj.rows, 2);
        // Non-ideal rejected: span{a} is not an ideal.
        let s = Subspace::from_vectors(3, vec![unit_vec(3, 0)]);
        assert!(h.quotient(&s).is_err());
    }

    #[test]
    fn direct_sum_blocks_do_not_interact() {
        let s = sl2_hand().direct_sum(&heisenberg_hand());
        s.validate().unwrap();
        assert_eq!(s.dim, 6);
        assert_eq!(s.centre().dim(), 1);
        assert_eq!(s.derived().dim(), 4);
        let x = unit_vec(6, 0);
        let y = unit_vec(6, 4);
        assert!(vec_is_zero(&s.bracket(&x, &y)));
    }

    #[test]
    fn killing_form_of_sl2_matches_hand_values() {
        let sl2 = sl2_hand();
        let k = sl2.killing_form();
        assert_eq!(*k.get(0, 2), rat(4)); // kappa(e, f) = 4
        assert_eq!(*k.get(1, 1), rat(8)); // kappa(h, h) = 8
        assert_eq!(*k.get(0, 0), rat(0));
        assert_eq!(*k.get(0, 1), rat(0));
        // Killing form is invariant: attach and validate.
        let mut with_form = sl2.clone();
        with_form.form = Some(k);
        with_form.validate().unwrap();
    }

    #[test]
    fn mult_closure_matches_naive_word_oracle() {
        // Independent oracle: enumerate all words in the ad generators up to
        // length dim and echelon their span.
        let check = |a: &SCAlgebra| {
            let n = a.dim;
            let gens: Vec<Matrix> = (0..n).map(|i| a.ad_basis(i)).collect();
            let mut ech = crate::linalg::echelon::Echelon::new(n * n);
            ech.insert_dense(&Matrix::identity(n).vectorize());
            let mut layer: Vec<Matrix> = vec![Matrix::identity(n)];
            for _ in 0..n {
                let mut next = Vec::new();
                for w in &layer {
                    for g in &gens {
                        let p = w.mul(g);
                        if ech.insert_dense(&p.vectorize()).is_some() {
                            next.push(p);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                layer = next;
            }
            let expected = ech.rank();
            let got = a.mult_closure(n * n).unwrap().len();
            assert_eq!(got, expected, "closure dim mismatch for {}", a.name);
            expected
        };
        // Frozen oracle values: sl2 spans all of End (dim 9); heisenberg(1)
        // closes at {id, ad a, ad b} (products of the ads vanish), dim 3.
        assert_eq!(check(&sl2_hand()), 9);
        assert_eq!(check(&heisenberg_hand()), 3);
        assert_eq!(check(&SCAlgebra::abelian("ab3", 3)), 1);
    }

    #[test]
    fn heisenberg_ad_products_vanish() {
        let h = heisenberg_hand();
        let ada = h.ad_basis(0);
        let adb = h.ad_basis(1);
        assert!(ada.mul(&adb).is_zero());
        assert!(adb.mul(&ada).is_zero());
        assert!(ada.mul(&ada).is_zero());
    }

    #[test]
    fn invariant_forms_of_heisenberg() {
        let h = heisenberg_hand();
        let all = h.invariant_bilinear_forms();
        let sym = h.invariant_symmetric_forms();
        // Invariance kills the c-row and c-column; the asymmetric a,b block
        // survives in the bilinear space.
        assert_eq!(all.dim(), 4);
        assert_eq!(sym.dim(), 3);
        // Every symmetric invariant form is degenerate (c is in the radical).
        for b in sym.basis() {
            let m = Matrix::from_vectorized(3, 3, b.clone()).unwrap();
            assert!(crate::linalg::echelon::kernel_dense(&m).len() > 0);
        }
        // sl2: invariant forms = multiples of Killing (dim 1, symmetric).
        let sl2 = sl2_hand();
        assert_eq!(sl2.invariant_bilinear_forms().dim(), 1);
        assert_eq!(sl2.invariant_symmetric_forms().dim(), 1);
    }

    #[test]
    fn weight_decomposition_of_sl2_under_h() {
        let sl2 = sl2_hand();
        let h = Subspace::from_vectors(3, vec![unit_vec(3, 1)]);
        let d = sl2.weight_decomposition(&h).unwrap();
        let summary = weight_summary(&d);
        assert_eq!(
            summary,
            vec![
                (vec![rat(-2)], 1),
                (vec![rat(0)], 1),
                (vec![rat(2)], 1),
            ]
        );
        // Nilpotent toral candidate rejected: span{e} has non-diagonalizable ad.
        let e = Subspace::from_vectors(3, vec![unit_vec(3, 0)]);
        assert!(matches!(
            sl2.weight_decomposition(&e),
            Err(Error::NotToral(_))
        ));
    }

    #[test]
    fn centralizer_matches_hand_computation() {
        // Oscillator: d, a, b, c with [d,a] = a, [d,b] = -b, [a,b] = c.
        let osc = SCAlgebra::new(
            "osc",
            4,
            vec![
                (0, 1, vec![(1, rat(1))]),
                (0, 2, vec![(2, rat(-1))]),
                (1, 2, vec![(3, rat(1))]),
            ],
        )
        .unwrap();
        osc.validate().unwrap();
        let derived = osc.derived();
        assert_eq!(derived.dim(), 3);
        let cent = osc.centralizer(&derived);
        assert_eq!(cent.dim(), 1);
        assert!(cent.contains(&unit_vec(4, 3)));
        let h = Subspace::from_vectors(4, vec![unit_vec(4, 0)]);
        let d = osc.weight_decomposition(&h).unwrap();
        assert_eq!(
            weight_summary(&d),
            vec![(vec![rat(-1)], 1), (vec![rat(0)], 2), (vec![rat(1)], 1)]
        );
    }
}
