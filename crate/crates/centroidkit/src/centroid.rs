//! Centroid computation and its structure theory: graded components,
//! vanishing ideals, local-ring analysis, induced maps, and the toral
//! restriction algorithm.
//!
//! For a Lie algebra the defining conditions chi([x,y]) = [chi(x),y] =
//! [x,chi(y)] over all ordered basis pairs, equal indices included, collapse
//! to one operator statement: chi commutes with every ad(e_i). The solver
//! streams those commutation rows through the incremental kernel, emitting
//! rows for designated toral indices first; their near-diagonal ad matrices
//! wipe out most unknowns cheaply before the general rows arrive.

use crate::builders::CoordSolver;
use crate::error::{Error, Result};
use crate::lie::{Degree, SCAlgebra};
use crate::linalg::echelon::{kernel_streamed, Echelon, SparseRow};
use crate::linalg::matrix::{unit_vec, vec_is_zero, zero_vec, Matrix};
use crate::linalg::subspace::Subspace;
use crate::poly::{minimal_polynomial, Poly};
use crate::rational::{rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Basis of Cent(L) with its associative multiplication table. The identity
/// map is always a basis member, first.
#[derive(Clone, Debug)]
pub struct CentroidBasis {
    pub maps: Vec<Matrix>,
    /// structure[i][j] = coordinates of maps[i] . maps[j] in this basis.
    pub structure: Vec<Vec<Vec<(usize, Rat)>>>,
    pub identity_index: usize,
}

impl CentroidBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn subspace(&self) -> Subspace {
        let n = self.maps[0].rows;
        Subspace::from_vectors(n * n, self.maps.iter().map(|m| m.vectorize()).collect())
    }

    pub fn element(&self, coords: &[Rat]) -> Matrix {
        let n = self.maps[0].rows;
        let mut out = Matrix::zeros(n, n);
        for (m, c) in self.maps.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Coordinates of a map lying in the centroid span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Rat>> {
        self.subspace_solver().coordinates(&m.vectorize()).ok()
    }

    fn subspace_solver(&self) -> CoordSolver {
        let n = self.maps[0].rows;
        let vecs: Vec<Vec<Rat>> = self.maps.iter().map(|m| m.vectorize()).collect();
        CoordSolver::new(n * n, &vecs).expect("centroid basis independent")
    }

    pub fn is_commutative(&self) -> bool {
        for (i, a) in self.maps.iter().enumerate() {
            for b in self.maps.iter().skip(i + 1) {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Re-checks every defining equation: for all ordered pairs (i,j),
    /// equal indices included, chi[e_i,e_j] = [chi e_i, e_j] = [e_i, chi e_j].
    pub fn verify(&self, a: &SCAlgebra) -> Result<()> {
        let ads: Vec<Matrix> = (0..a.dim).map(|i| a.ad_basis(i)).collect();
        for (t, chi) in self.maps.iter().enumerate() {
            for (i, ad) in ads.iter().enumerate() {
                if !chi.commutes_with(ad) {
                    return Err(Error::invalid(format!(
                        "centroid element {t} fails commutation with ad(e_{i})"
                    )));
                }
                // ad(chi e_i) = chi . ad(e_i).
                let lhs = a.ad(&chi.column(i));
                if lhs != chi.mul(ad) {
                    return Err(Error::invalid(format!(
                        "centroid element {t} fails the twisted law at e_{i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Streams the commutation rows (ad_i X - X ad_i) = 0 over vectorized
/// unknowns X_pq at index p*n + q, toral indices first.
fn centroid_rows(a: &SCAlgebra) -> (usize, Vec<Matrix>, Vec<usize>) {
    let n = a.dim;
    let mut order: Vec<usize> = Vec::new();
    if let Some(t) = &a.toral {
        order.extend(t.iter().copied());
    }
    for i in 0..n {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    let ads: Vec<Matrix> = order.iter().map(|&i| a.ad_basis(i)).collect();
    (n, ads, order)
}

fn emit_commutation_rows(
    n: usize,
    ads: &[Matrix],
    emit: &mut dyn FnMut(SparseRow) -> bool,
) {
    for ad in ads {
        // Sparse views of ad.
        let mut rows_of: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        let mut cols_of: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        for p in 0..n {
            for q in 0..n {
                let c = ad.get(p, q);
                if !c.is_zero() {
                    rows_of[p].push((q, c.clone()));
                    cols_of[q].push((p, c.clone()));
                }
            }
        }
        for k in 0..n {
            for j in 0..n {
                if rows_of[k].is_empty() && cols_of[j].is_empty() {
                    continue;
                }
                let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
                // (ad X)_{kj} = sum_p ad[k][p] X[p][j]
                for (p, c) in &rows_of[k] {
                    *row.entry(p * n + j).or_insert_with(Rat::zero) += c;
                }
                // (X ad)_{kj} = sum_p X[k][p] ad[p][j]
                for (p, c) in &cols_of[j] {
                    *row.entry(k * n + p).or_insert_with(Rat::zero) -= c;
                }
                let row: SparseRow = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if row.is_empty() {
                    continue;
                }
                if !emit(row) {
                    return;
                }
            }
        }
    }
}

/// Kernel of the centroid system as vectorized matrices.
pub fn centroid_kernel(a: &SCAlgebra) -> Vec<Vec<Rat>> {
    let (n, ads, _) = centroid_rows(a);
    let seed = (4 * n * n).max(512);
    kernel_streamed(
        n * n,
        |emit| emit_commutation_rows(n, &ads, emit),
        seed,
    )
}

/// Centroid basis with id first, plus the associative structure constants.
pub fn centroid(a: &SCAlgebra) -> Result<CentroidBasis> {
    let n = a.dim;
    let kernel = centroid_kernel(a);
    let mut ech = Echelon::new(n * n);
    let mut maps = Vec::new();
    let id = Matrix::identity(n);
    ech.insert_dense(&id.vectorize());
    maps.push(id);
    for v in kernel {
        if ech.insert_dense(&v).is_some() {
            maps.push(Matrix::from_vectorized(n, n, v)?);
        }
    }
    let vecs: Vec<Vec<Rat>> = maps.iter().map(|m| m.vectorize()).collect();
    let solver = CoordSolver::new(n * n, &vecs)?;
    let dim = maps.len();
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = maps[i].mul(&maps[j]);
            let coords = solver.coordinates(&prod.vectorize()).map_err(|_| {
                Error::invalid("internal: centroid not closed under composition")
            })?;
            structure[i][j] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    let basis = CentroidBasis {
        maps,
        structure,
        identity_index: 0,
    };
    if a.is_perfect() && !basis.is_commutative() {
        return Err(Error::invalid(
            "internal: centroid of a perfect algebra must be commutative",
        ));
    }
    Ok(basis)
}

pub fn centroid_subspace(a: &SCAlgebra) -> Subspace {
    Subspace::from_vectors(a.dim * a.dim, centroid_kernel(a))
}

/// Sub-basis of the centroid annihilating the ideal b, with the dimension
/// law dim Cent = 1 + dim V(b) verified whenever the induced algebra on b
/// has centroid Q id.
pub fn vanishing_ideal(a: &SCAlgebra, b: &Subspace) -> Result<Vec<Matrix>> {
    let cent = centroid(a)?;
    vanishing_ideal_with(a, &cent, b)
}

pub fn vanishing_ideal_with(
    a: &SCAlgebra,
    cent: &CentroidBasis,
    b: &Subspace,
) -> Result<Vec<Matrix>> {
    if !a.is_ideal(b) {
        return Err(Error::invalid("vanishing_ideal: subspace is not an ideal"));
    }
    for (t, chi) in cent.maps.iter().enumerate() {
        for v in b.basis() {
            let w = chi.apply(v);
            if !b.contains(&w) {
                return Err(Error::invalid(format!(
                    "vanishing_ideal: ideal is not centroid-invariant; map {t} moves a vector out"
                )));
            }
        }
    }
    // chi = sum c_t maps[t] with chi(b) = 0.
    let dim = cent.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for v in b.basis() {
        let images: Vec<Vec<Rat>> = cent.maps.iter().map(|m| m.apply(v)).collect();
        for coord in 0..a.dim {
            let row: Vec<Rat> = images.iter().map(|im| im[coord].clone()).collect();
            if !vec_is_zero(&row) {
                rows.push(row);
            }
        }
    }
    let coeffs = if rows.is_empty() {
        // b = 0: everything vanishes on it.
        (0..dim).map(|i| unit_vec(dim, i)).collect()
    } else {
        crate::linalg::echelon::kernel_dense(&Matrix::from_rows(rows)?)
    };
    let result: Vec<Matrix> = coeffs.iter().map(|c| cent.element(c)).collect();
    // Dimension law check when Cent(b) = Q id.
    if b.dim() > 0 && !b.is_zero() {
        if let Ok((sub, _)) = a.restrict_to_subalgebra(b) {
            if let Ok(sub_cent) = centroid(&sub) {
                if sub_cent.dim() == 1 && cent.dim() != 1 + result.len() {
                    return Err(Error::invalid(
                        "internal: dimension law Cent = Q id (+) V(b) violated",
                    ));
                }
            }
        }
    }
    Ok(result)
}

/// Cent(L) cap Der(L) = {psi : psi(L') = 0, im psi in Z(L)}, built directly
/// from the quotient functionals and the centre, then verified against the
/// intersection of the solved centroid and derivation spaces.
pub fn centroid_cap_der(a: &SCAlgebra) -> Result<Vec<Matrix>> {
    let derived = a.derived();
    let centre = a.centre();
    let (_, proj) = a.quotient(&derived)?;
    let mut maps = Vec::new();
    for r in 0..proj.rows {
        for z in centre.basis() {
            // z outer functional row r of proj.
            let mut m = Matrix::zeros(a.dim, a.dim);
            for (p, zp) in z.iter().enumerate() {
                if zp.is_zero() {
                    continue;
                }
                for q in 0..a.dim {
                    let c = zp * proj.get(r, q);
                    if !c.is_zero() {
                        m.set(p, q, c);
                    }
                }
            }
            maps.push(m);
        }
    }
    // Independent by construction; verify against solved spaces.
    let direct = Subspace::from_vectors(
        a.dim * a.dim,
        maps.iter().map(|m| m.vectorize()).collect(),
    );
    let solved = centroid_subspace(a).intersect(&crate::cohom::derivation_space(a));
    if direct != solved {
        return Err(Error::invalid(
            "internal: Hom(L/L', Z) construction disagrees with Cent cap Der",
        ));
    }
    if direct.dim() != (a.dim - derived.dim()) * centre.dim() {
        return Err(Error::invalid("internal: Cent cap Der dimension law violated"));
    }
    Ok(maps)
}

/// Homogeneous components of the centroid of a graded algebra.
#[derive(Clone, Debug)]
pub struct GradedCentroid {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// Sorted by degree; every listed component is nonzero.
    pub components: Vec<(Degree, Vec<Matrix>)>,
}

impl GradedCentroid {
    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|(_, m)| m.len()).sum()
    }

    pub fn component(&self, d: &Degree) -> Option<&[Matrix]> {
        self.components
            .iter()
            .find(|(x, _)| x == d)
            .map(|(_, m)| m.as_slice())
    }

    pub fn support(&self) -> Vec<Degree> {
        self.components.iter().map(|(d, _)| d.clone()).collect()
    }
}

/// Splits each centroid map into degree components chi^lambda with
/// chi^lambda(A^mu) in A^{mu+lambda}; verifies each component is again
/// centroidal and that the components sum back to the whole centroid.
pub fn graded_centroid(a: &SCAlgebra) -> Result<GradedCentroid> {
    let g = a
        .grading
        .as_ref()
        .ok_or_else(|| Error::invalid("graded_centroid needs a graded algebra"))?
        .clone();
    let cent = centroid(a)?;
    let n = a.dim;
    let mut per_degree: BTreeMap<Degree, Vec<Vec<Rat>>> = BTreeMap::new();
    for chi in &cent.maps {
        let mut split: BTreeMap<Degree, Matrix> = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                let c = chi.get(p, q);
                if c.is_zero() {
                    continue;
                }
                let lam = g.add(&g.degrees[p], &g.neg(&g.degrees[q]));
                split
                    .entry(lam)
                    .or_insert_with(|| Matrix::zeros(n, n))
                    .set(p, q, c.clone());
            }
        }
        for (lam, m) in split {
            per_degree.entry(lam).or_default().push(m.vectorize());
        }
    }
    let mut components = Vec::new();
    let mut total = Subspace::zero(n * n);
    for (lam, vecs) in per_degree {
        let span = Subspace::from_vectors(n * n, vecs);
        if span.is_zero() {
            continue;
        }
        let mats: Vec<Matrix> = span
            .basis()
            .iter()
            .map(|v| Matrix::from_vectorized(n, n, v.clone()).unwrap())
            .collect();
        total = total.sum(&span);
        components.push((lam, mats));
    }
    let gc = GradedCentroid {
        free_rank: g.free_rank,
        torsion: g.torsion.clone(),
        components,
    };
    // Every component map is centroidal.
    let check = CentroidBasis {
        maps: gc
            .components
            .iter()
            .flat_map(|(_, m)| m.iter().cloned())
            .collect(),
        structure: Vec::new(),
        identity_index: 0,
    };
    check.verify(a)?;
    if total != cent.subspace() || gc.total_dim() != cent.dim() {
        return Err(Error::invalid(
            "internal: graded components do not sum to the centroid",
        ));
    }
    Ok(gc)
}

#[derive(Clone, Debug)]
pub struct DivisionComponentReport {
    pub degree: Degree,
    pub dim: usize,
    /// Some(true): every nonzero element certified invertible. Some(false):
    /// a non-invertible nonzero element exists. None: not certified.
    pub invertible: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct DivisionReport {
    pub components: Vec<DivisionComponentReport>,
    pub support_is_subgroup: bool,
    pub division_graded: Option<bool>,
    /// Twisted group ring over the zero component: all components invertible
    /// with dimension equal to the zero component, support a subgroup.
    pub twisted_group_ring_flag: bool,
}

fn degree_add(free_rank: usize, torsion: &[i64], a: &Degree, b: &Degree) -> Degree {
    let mut out: Degree = a.iter().zip(b).map(|(x, y)| x + y).collect();
    for (k, m) in torsion.iter().enumerate() {
        out[free_rank + k] = out[free_rank + k].rem_euclid(*m);
    }
    out
}

fn degree_neg(free_rank: usize, torsion: &[i64], a: &Degree) -> Degree {
    let mut out: Degree = a.iter().map(|x| -x).collect();
    for (k, m) in torsion.iter().enumerate() {
        out[free_rank + k] = out[free_rank + k].rem_euclid(*m);
    }
    out
}

/// Is a commutative span of commuting operators a field: zero trace-form
/// radical plus a basis element whose minimal polynomial is irreducible of
/// full degree. Sound, not complete; returns None when undecided.
fn span_is_field(maps: &[Matrix]) -> Option<bool> {
    let k = maps.len();
    if k == 0 {
        return Some(false);
    }
    if k == 1 {
        return Some(maps[0].inverse().is_some());
    }
    for (i, a) in maps.iter().enumerate() {
        for b in maps.iter().skip(i + 1) {
            if !a.commutes_with(b) {
                return None;
            }
        }
    }
    let rad = span_radical(maps);
    if !rad.is_empty() {
        return Some(false);
    }
    for m in maps {
        let p = minimal_polynomial(m);
        if p.degree() == Some(k) {
            if let Ok(true) = p.is_irreducible_deg_le4() {
                return Some(true);
            }
        }
    }
    None
}

/// Radical basis of a commutative operator span: kernel of the trace form
/// tau(x, y) = tr(xy) restricted to the span.
fn span_radical(maps: &[Matrix]) -> Vec<Vec<Rat>> {
    let k = maps.len();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = maps[i].mul(&maps[j]).trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    crate::linalg::echelon::kernel_dense(&gram)
}

/// Division-gradedness: per component, is every nonzero homogeneous element
/// invertible. Certified for components of dimension <= 1 and, at degree
/// zero, for spans recognized as fields.
pub fn division_graded_report(g: &GradedCentroid) -> DivisionReport {
    let width = g.free_rank + g.torsion.len();
    let zero: Degree = vec![0; width];
    let mut components = Vec::new();
    let mut all_invertible = Some(true);
    for (deg, maps) in &g.components {
        let invertible = match maps.len() {
            0 => Some(true),
            1 => Some(maps[0].inverse().is_some()),
            _ => {
                if *deg == zero {
                    span_is_field(maps)
                } else if maps.iter().any(|m| m.inverse().is_none()) {
                    Some(false)
                } else {
                    None
                }
            }
        };
        all_invertible = match (all_invertible, invertible) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        components.push(DivisionComponentReport {
            degree: deg.clone(),
            dim: maps.len(),
            invertible,
        });
    }
    let support: Vec<Degree> = g.support();
    let mut support_is_subgroup = support.contains(&zero) || support.is_empty();
    for a in &support {
        if !support.contains(&degree_neg(g.free_rank, &g.torsion, a)) {
            support_is_subgroup = false;
        }
        for b in &support {
            if !support.contains(&degree_add(g.free_rank, &g.torsion, a, b)) {
                support_is_subgroup = false;
            }
        }
    }
    let division_graded = match all_invertible {
        Some(true) => Some(support_is_subgroup),
        other => {
            if !support_is_subgroup {
                Some(false)
            } else {
                other
            }
        }
    };
    let zero_dim = components
        .iter()
        .find(|c| c.degree == zero)
        .map(|c| c.dim)
        .unwrap_or(0);
    let twisted = division_graded == Some(true)
        && zero_dim > 0
        && components.iter().all(|c| c.dim == zero_dim);
    DivisionReport {
        components,
        support_is_subgroup,
        division_graded,
        twisted_group_ring_flag: twisted,
    }
}

#[derive(Clone, Debug)]
pub struct TwistedRecognition {
    pub recognized: bool,
    pub support: Vec<Degree>,
    /// For cyclic support generated by one degree: (generator, order,
    /// constant c with u^order = c id). Trivial twist iff c = 1.
    pub cyclic: Option<(Degree, usize, Rat)>,
    pub notes: Vec<String>,
}

/// Reports whether a graded centroid is a twisted group ring over Q:
/// all components 1-dimensional with invertible generators, support a
/// subgroup. For cyclic support the twist is normalized along powers of a
/// generator, leaving a single wraparound constant.
pub fn recognize_twisted_group_ring(g: &GradedCentroid) -> TwistedRecognition {
    let mut notes = Vec::new();
    let support = g.support();
    let report = division_graded_report(g);
    let all_one_dim = g.components.iter().all(|(_, m)| m.len() == 1);
    let invertible = report
        .components
        .iter()
        .all(|c| c.invertible == Some(true));
    if !all_one_dim {
        notes.push("a component has dimension other than 1".into());
    }
    if !invertible {
        notes.push("a homogeneous component is not invertible".into());
    }
    if !report.support_is_subgroup {
        notes.push("support is not a subgroup".into());
    }
    let recognized = all_one_dim && invertible && report.support_is_subgroup;
    let mut cyclic = None;
    if recognized && support.len() > 1 {
        // Try each nonzero degree as a cyclic generator.
        for gen in &support {
            if gen.iter().all(|x| *x == 0) {
                continue;
            }
            let mut seen = vec![vec![0; gen.len()]];
            let mut cur = gen.clone();
            while !cur.iter().all(|x| *x == 0) {
                seen.push(cur.clone());
                cur = degree_add(g.free_rank, &g.torsion, &cur, gen);
                if seen.len() > support.len() {
                    break;
                }
            }
            if seen.len() == support.len() && cur.iter().all(|x| *x == 0) {
                let order = seen.len();
                let u = &g.component(gen).unwrap()[0];
                let mut p = Matrix::identity(u.rows);
                for _ in 0..order {
                    p = p.mul(u);
                }
                // p = c id for a twisted group ring over Q with 1-dim parts.
                let c = p.get(0, 0).clone();
                if p == Matrix::identity(u.rows).scale(&c) {
                    cyclic = Some((gen.clone(), order, c));
                } else {
                    notes.push("generator power is not scalar".into());
                }
                break;
            }
        }
        if cyclic.is_none() {
            notes.push("support is not cyclic; twist left unnormalized".into());
        }
    }
    TwistedRecognition {
        recognized,
        support,
        cyclic,
        notes,
    }
}

/// Is ev_elem : Cent -> L, chi -> chi(elem), injective. The element must be
/// nonzero, and homogeneous when the algebra is graded.
pub fn evaluation_map_injective(a: &SCAlgebra, elem: &[Rat]) -> Result<bool> {
    if elem.len() != a.dim {
        return Err(Error::Dim("element has wrong length".into()));
    }
    if vec_is_zero(elem) {
        return Err(Error::invalid("evaluation element must be nonzero"));
    }
    if let Some(g) = &a.grading {
        let mut support: Vec<&Degree> = Vec::new();
        for (i, c) in elem.iter().enumerate() {
            if !c.is_zero() && !support.contains(&&g.degrees[i]) {
                support.push(&g.degrees[i]);
            }
        }
        if support.len() > 1 {
            return Err(Error::invalid("evaluation element must be homogeneous"));
        }
    }
    let cent = centroid(a)?;
    let images: Vec<Vec<Rat>> = cent.maps.iter().map(|m| m.apply(elem)).collect();
    let mut rows = Vec::new();
    for coord in 0..a.dim {
        rows.push(images.iter().map(|im| im[coord].clone()).collect());
    }
    let kernel = crate::linalg::echelon::kernel_dense(&Matrix::from_rows(rows)?);
    Ok(kernel.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    Indecomposable,
    Decomposable,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct LocalReport {
    pub commutative: bool,
    pub dim: usize,
    pub radical: Vec<Matrix>,
    pub radical_nilpotency: usize,
    pub semisimple_dim: usize,
    pub verdict: LocalVerdict,
    /// A nontrivial idempotent when decomposable.
    pub idempotent: Option<Matrix>,
    pub notes: Vec<String>,
}

/// Local-ring analysis of the centroid: radical, nilpotency index,
/// semisimple quotient dimension, and a three-valued indecomposability
/// verdict. Noncommutative centroids are analyzed per element.
pub fn centroid_local_analysis(a: &SCAlgebra) -> Result<LocalReport> {
    let cent = centroid(a)?;
    let dim = cent.dim();
    let mut notes = Vec::new();
    if !cent.is_commutative() {
        notes.push(
            "centroid is noncommutative; analysis restricted to single elements".into(),
        );
        let nilpotent: Vec<usize> = cent
            .maps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.nilpotency_index(m.rows + 1).is_some())
            .map(|(i, _)| i)
            .collect();
        notes.push(format!(
            "nilpotent basis elements: {:?}",
            nilpotent
        ));
        return Ok(LocalReport {
            commutative: false,
            dim,
            radical: Vec::new(),
            radical_nilpotency: 0,
            semisimple_dim: dim,
            verdict: LocalVerdict::Undetermined,
            idempotent: None,
            notes,
        });
    }
    // Commutative: nilradical = kernel of the trace form on the centroid.
    let rad_coords = span_radical(&cent.maps);
    let radical: Vec<Matrix> = rad_coords.iter().map(|c| cent.element(c)).collect();
    for r in &radical {
        if r.nilpotency_index(r.rows + 1).is_none() {
            return Err(Error::invalid(
                "internal: radical element is not nilpotent",
            ));
        }
    }
    // Nilpotency index of the radical as an ideal: smallest k with rad^k = 0.
    let n = cent.maps[0].rows;
    let mut power: Vec<Matrix> = radical.clone();
    let mut nilp = 1usize;
    if radical.is_empty() {
        nilp = 1;
    } else {
        while !power.is_empty() && nilp <= dim + 1 {
            let span = Subspace::from_vectors(
                n * n,
                power
                    .iter()
                    .map(|m| m.vectorize())
                    .filter(|v| !vec_is_zero(v))
                    .collect(),
            );
            if span.is_zero() {
                break;
            }
            let mut next = Vec::new();
            for p in &power {
                for r in &radical {
                    let q = p.mul(r);
                    if !q.is_zero() {
                        next.push(q);
                    }
                }
            }
            power = next;
            nilp += 1;
        }
        if nilp > dim + 1 {
            return Err(Error::invalid("internal: radical fails to nilpotentize"));
        }
    }
    let semisimple_dim = dim - radical.len();
    let mut verdict = LocalVerdict::Undetermined;
    let mut idempotent = None;
    if semisimple_dim == 1 {
        verdict = LocalVerdict::Indecomposable;
    } else {
        // Hunt for an idempotent through minimal polynomials of basis
        // elements and pairwise sums, splitting coprime factors.
        let mut candidates: Vec<Matrix> = cent.maps.clone();
        for i in 0..cent.maps.len() {
            for j in (i + 1)..cent.maps.len() {
                candidates.push(cent.maps[i].add(&cent.maps[j]));
            }
        }
        'hunt: for m in &candidates {
            if let Some(e) = split_idempotent(m) {
                if !e.is_zero() && e != Matrix::identity(n) {
                    verdict = LocalVerdict::Decomposable;
                    idempotent = Some(e);
                    break 'hunt;
                }
            }
        }
        if idempotent.is_none() {
            // A field has no nontrivial idempotent: certified indecomposable.
            if radical.is_empty() && span_is_field(&cent.maps) == Some(true) {
                verdict = LocalVerdict::Indecomposable;
                notes.push("centroid is a field".into());
            } else {
                notes.push(
                    "no idempotent found within the degree-4 factorization budget".into(),
                );
            }
        }
    }
    Ok(LocalReport {
        commutative: true,
        dim,
        radical,
        radical_nilpotency: nilp,
        semisimple_dim,
        verdict,
        idempotent,
        notes,
    })
}

/// Splits an idempotent from an operator whose minimal polynomial factors
/// into coprime parts: with mu = f g, gcd(f, g) = 1 = uf + vg, the operator
/// e = (vg)(m) is idempotent.
fn split_idempotent(m: &Matrix) -> Option<Matrix> {
    let mu = minimal_polynomial(m);
    let deg = mu.degree()?;
    if deg > 4 || deg < 2 {
        return None;
    }
    let factors = mu.factor_deg_le4().ok()?;
    if factors.len() < 2 {
        return None;
    }
    // Distinct irreducible factors are coprime; split off the first one
    // with its full multiplicity.
    let mut f = Poly::constant(rat(1));
    for _ in 0..factors[0].1 {
        f = f.mul(&factors[0].0);
    }
    let mut g = Poly::constant(rat(1));
    for (h, mult) in &factors[1..] {
        for _ in 0..*mult {
            g = g.mul(h);
        }
    }
    let (d, _u, v) = f.extended_gcd(&g);
    if d.degree() != Some(0) {
        return None;
    }
    let scale = d.coeff(0);
    let vg = v.mul(&g).scale(&(Rat::one() / scale));
    let e = vg.eval_matrix(m);
    if e.mul(&e) == e {
        Some(e)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub perfect: bool,
    pub symmetric: bool,
    /// (centroid index, row, col) where (chi x | y) != (x | chi y).
    pub witness: Option<(usize, usize, usize)>,
}

/// Checks (chi x | y) = (x | chi y) for every centroid basis element against
/// the algebra's form. Must hold when the algebra is perfect; the check runs
/// regardless and the report carries the precondition flag.
pub fn centroid_symmetry_check(a: &SCAlgebra) -> Result<SymmetryReport> {
    let f = a
        .form
        .as_ref()
        .ok_or_else(|| Error::invalid("symmetry check needs an algebra with a form"))?;
    let cent = centroid(a)?;
    let perfect = a.is_perfect();
    let mut witness = None;
    'outer: for (t, chi) in cent.maps.iter().enumerate() {
        let lhs = chi.transpose().mul(f);
        let rhs = f.mul(chi);
        if lhs != rhs {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    if lhs.get(i, j) != rhs.get(i, j) {
                        witness = Some((t, i, j));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(SymmetryReport {
        perfect,
        symmetric: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct InducedQuotientCentroid {
    pub quotient: SCAlgebra,
    pub projection: Matrix,
    /// (coordinates in the centroid basis, induced map on the quotient).
    pub compatible: Vec<(Vec<Rat>, Matrix)>,
    /// Some(flag) when the injectivity hypotheses hold (a perfect, quotient
    /// centre zero): whether the induced algebra map is injective.
    pub injective: Option<bool>,
}

/// The monomorphism-to-quotient story: for a central ideal, every centroid
/// element preserving the ideal induces a centroid element of the quotient.
pub fn induce_quotient_centroid(
    a: &SCAlgebra,
    ideal: &Subspace,
) -> Result<InducedQuotientCentroid> {
    let centre = a.centre();
    for v in ideal.basis() {
        if !centre.contains(v) {
            return Err(Error::invalid("induce_quotient: ideal is not central"));
        }
    }
    let cent = centroid(a)?;
    let (q, proj) = a.quotient(ideal)?;
    // Compatible coordinates: chi(ideal) inside ideal.
    let dim = cent.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for v in ideal.basis() {
        let images: Vec<Vec<Rat>> = cent.maps.iter().map(|m| proj.apply(&m.apply(v))).collect();
        for coord in 0..proj.rows {
            let row: Vec<Rat> = images.iter().map(|im| im[coord].clone()).collect();
            if !vec_is_zero(&row) {
                rows.push(row);
            }
        }
    }
    let compat_coords: Vec<Vec<Rat>> = if rows.is_empty() {
        (0..dim).map(|i| unit_vec(dim, i)).collect()
    } else {
        crate::linalg::echelon::kernel_dense(&Matrix::from_rows(rows)?)
    };
    // Section: quotient basis r -> complement standard vector. The quotient
    // basis came from non-pivot columns; recover them from the projection:
    // proj . lift = id.
    let mut lift = Matrix::zeros(a.dim, q.dim);
    {
        let mut ech = Echelon::new(a.dim);
        for v in ideal.basis() {
            ech.insert_dense(v);
        }
        let pivots: Vec<usize> = ech.pivot_columns();
        let mut r = 0;
        for c in 0..a.dim {
            if !pivots.contains(&c) {
                lift.set(c, r, rat(1));
                r += 1;
            }
        }
    }
    let mut compatible = Vec::new();
    let mut induced_vecs = Vec::new();
    for coords in &compat_coords {
        let chi = cent.element(coords);
        let induced = proj.mul(&chi).mul(&lift);
        // Induced map is centroidal on the quotient.
        let check = CentroidBasis {
            maps: vec![induced.clone()],
            structure: Vec::new(),
            identity_index: 0,
        };
        check.verify(&q)?;
        induced_vecs.push(induced.vectorize());
        compatible.push((coords.clone(), induced));
    }
    let injective = if a.is_perfect() && q.centre().dim() == 0 {
        let span = Subspace::from_vectors(
            q.dim * q.dim,
            induced_vecs.iter().filter(|v| !vec_is_zero(v)).cloned().collect(),
        );
        Some(span.dim() == compatible.len())
    } else {
        None
    };
    Ok(InducedQuotientCentroid {
        quotient: q,
        projection: proj,
        compatible,
        injective,
    })
}

#[derive(Clone, Debug)]
pub struct ToralCentroid {
    pub basis: CentroidBasis,
    /// Restriction to the toral part is injective on the centroid.
    pub restriction_injective: bool,
    /// True when the toral path ran; false when it fell back to brute force.
    pub used_toral_path: bool,
    pub notes: Vec<String>,
}

/// Centroid through the toral restriction: parametrize chi on the zero
/// weight space L0 with chi(h) in Z(L0), extend to each weight space by
/// chi(x_alpha) = [chi(t_alpha), x_alpha], impose the centroid equations,
/// and verify against the brute solver. Degenerate toral input (h = 0)
/// falls back to the brute solver with a notice.
pub fn toral_centroid(a: &SCAlgebra, h: &Subspace) -> Result<ToralCentroid> {
    let mut notes = Vec::new();
    if h.dim() == 0 {
        notes.push("toral subspace is zero; brute solver used".into());
        let basis = centroid(a)?;
        return Ok(ToralCentroid {
            restriction_injective: basis.dim() == 0,
            basis,
            used_toral_path: false,
            notes,
        });
    }
    let n = a.dim;
    let decomp = a.weight_decomposition(h)?;
    let zero_block = decomp
        .zero_block()
        .ok_or_else(|| Error::invalid("toral: no zero weight space"))?
        .clone();
    let l0 = zero_block.space.clone();
    let m = l0.dim();
    // Adapted basis: L0 first, then each nonzero weight block.
    let mut adapted: Vec<Vec<Rat>> = l0.basis().to_vec();
    let mut weight_of: Vec<Option<Vec<Rat>>> = vec![None; m];
    for b in &decomp.blocks {
        if b.values.iter().all(|v| v.is_zero()) {
            continue;
        }
        for v in b.space.basis() {
            adapted.push(v.clone());
            weight_of.push(Some(b.values.clone()));
        }
    }
    if adapted.len() != n {
        return Err(Error::invalid("internal: weight blocks do not fill L"));
    }
    let t_mat = Matrix::from_columns(n, &adapted)?;
    let t_inv = t_mat
        .inverse()
        .ok_or_else(|| Error::invalid("internal: adapted basis singular"))?;
    // t_alpha in h with alpha(t_alpha) = 1: t = (sum alpha_k h_k)/|alpha|^2.
    let h_basis = h.basis().to_vec();
    let t_for = |alpha: &[Rat]| -> Vec<Rat> {
        let norm: Rat = alpha.iter().map(|x| x * x).sum();
        let mut t = zero_vec(n);
        for (k, hk) in h_basis.iter().enumerate() {
            let c = &alpha[k] / &norm;
            for (p, v) in hk.iter().enumerate() {
                t[p] += &c * v;
            }
        }
        t
    };
    // L0 coordinates of each t_alpha (t_alpha lies in h, inside L0).
    // Unknowns: u[j][p] = p-th coordinate of chi(adapted_j), j < m; flattened
    // index j*n + p. X = U . Tinv where column j of U is u_j for j < m and
    // -ad(w_k) (sum_j c_j(alpha_k) u_j) for weight columns k.
    // Build E[j*n+p] = dX/du_{jp} as n x n matrices.
    let unknowns = m * n;
    let mut basis_mats: Vec<Matrix> = Vec::new();
    {
        // For weight columns: coefficient c_j(alpha_k) of t_alpha in the
        // adapted L0 basis, and ad(w_k).
        let mut weight_data: Vec<(usize, Vec<Rat>, Matrix)> = Vec::new();
        for k in m..n {
            let alpha = weight_of[k].as_ref().unwrap();
            let t = t_for(alpha);
            let coords = l0
                .coordinates(&t)
                .ok_or_else(|| Error::invalid("internal: t_alpha outside L0"))?;
            let ad_w = a.ad(&adapted[k]);
            weight_data.push((k, coords, ad_w));
        }
        for j in 0..m {
            for p in 0..n {
                let mut x = Matrix::zeros(n, n);
                // Column j of U: unit at row p.
                for q in 0..n {
                    let c = t_inv.get(j, q);
                    if !c.is_zero() {
                        x.set(p, q, c.clone());
                    }
                }
                for (k, coords, ad_w) in &weight_data {
                    let cj = &coords[j];
                    if cj.is_zero() {
                        continue;
                    }
                    // Column k of U gains -ad_w applied to u_j: derivative
                    // wrt u_{jp} is -ad_w[.,p] * c_j.
                    for r in 0..n {
                        let av = ad_w.get(r, p);
                        if av.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let c = t_inv.get(*k, q);
                            if !c.is_zero() {
                                let add = -(cj.clone()) * av * c;
                                let cur = x.get(r, q).clone();
                                x.set(r, q, cur + add);
                            }
                        }
                    }
                }
                basis_mats.push(x);
            }
        }
    }
    // Constraints: (1) chi(h) inside Z(L0); (2) the centroid equations on
    // X(u). Rows over the flattened unknowns.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let (sub_l0, _) = a.restrict_to_subalgebra(&l0)?;
    let z_l0_local = sub_l0.centre();
    // Z(L0) as a subspace of L.
    let z_l0 = Subspace::from_vectors(
        n,
        z_l0_local.basis().iter().map(|c| l0.lift(c)).collect(),
    );
    let ann = crate::linalg::echelon::kernel_dense(&Matrix::from_rows(
        z_l0.basis().to_vec(),
    ).unwrap_or_else(|_| Matrix::zeros(0, n)));
    // h basis in L0 coordinates.
    for hv in &h_basis {
        let coords = l0
            .coordinates(hv)
            .ok_or_else(|| Error::invalid("internal: h outside L0"))?;
        // chi(hv) = sum_j coords_j u_j; annihilator functionals kill it.
        for f in &ann {
            let mut row = zero_vec(unknowns);
            for (j, cj) in coords.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for p in 0..n {
                    let c = cj * &f[p];
                    if !c.is_zero() {
                        row[j * n + p] += c;
                    }
                }
            }
            if !vec_is_zero(&row) {
                rows.push(row);
            }
        }
    }
    // Centroid equations, transformed through X(u).
    let ads: Vec<Matrix> = (0..n).map(|i| a.ad_basis(i)).collect();
    {
        let mut push_eq = |sparse: SparseRow| {
            let mut row = zero_vec(unknowns);
            for (idx, coeff) in &sparse {
                let (p, q) = (idx / n, idx % n);
                for (u_idx, e) in basis_mats.iter().enumerate() {
                    let v = e.get(p, q);
                    if !v.is_zero() {
                        row[u_idx] += coeff * v;
                    }
                }
            }
            if !vec_is_zero(&row) {
                rows.push(row);
            }
            true
        };
        emit_commutation_rows(n, &ads, &mut push_eq);
    }
    let kernel = crate::linalg::echelon::kernel_dense(&Matrix::from_rows(rows)?);
    // Materialize maps, id first.
    let mut ech = Echelon::new(n * n);
    let mut maps = vec![Matrix::identity(n)];
    ech.insert_dense(&maps[0].vectorize());
    for u in kernel {
        let mut x = Matrix::zeros(n, n);
        for (idx, c) in u.iter().enumerate() {
            if !c.is_zero() {
                x = x.add(&basis_mats[idx].scale(c));
            }
        }
        if ech.insert_dense(&x.vectorize()).is_some() {
            maps.push(x);
        }
    }
    // Verify equality with the brute solver.
    let brute = centroid(a)?;
    let toral_span = Subspace::from_vectors(
        n * n,
        maps.iter().map(|m| m.vectorize()).collect(),
    );
    if toral_span != brute.subspace() {
        return Err(Error::invalid(
            "internal: toral reconstruction disagrees with the brute centroid",
        ));
    }
    // Certificate: chi -> chi|_h injective on the centroid.
    let h_cols = Matrix::from_columns(n, &h_basis)?;
    let restricted: Vec<Vec<Rat>> = maps.iter().map(|m| m.mul(&h_cols).vectorize()).collect();
    let restriction_injective =
        Subspace::from_vectors(n * h.dim(), restricted.into_iter().filter(|v| !vec_is_zero(v)).collect())
            .dim()
            == maps.len();
    Ok(ToralCentroid {
        basis: CentroidBasis {
            structure: brute.structure,
            maps,
            identity_index: 0,
        },
        restriction_injective,
        used_toral_path: true,
        notes,
    })
}

/// Matrix of chi -> f chi f^{-1} on centroid coordinates, for an
/// automorphism f. Verified to be an algebra automorphism of the centroid.
pub fn induced_aut_action(a: &SCAlgebra, f: &Matrix) -> Result<Matrix> {
    a.check_automorphism(f)?;
    let cent = centroid(a)?;
    let f_inv = f.inverse().unwrap();
    let images: Vec<Matrix> = cent
        .maps
        .iter()
        .map(|chi| f.mul(chi).mul(&f_inv))
        .collect();
    let action = action_matrix(&cent, &images)?;
    // Automorphism of C: invertible and multiplicative on basis pairs.
    if action.inverse().is_none() {
        return Err(Error::invalid("internal: induced action not invertible"));
    }
    for i in 0..cent.dim() {
        for j in 0..cent.dim() {
            let lhs = images[i].mul(&images[j]);
            let prod = cent.maps[i].mul(&cent.maps[j]);
            let rhs = f.mul(&prod).mul(&f_inv);
            if lhs != rhs {
                return Err(Error::invalid(
                    "internal: induced action not multiplicative",
                ));
            }
        }
    }
    Ok(action)
}

/// Matrix of chi -> d chi - chi d on centroid coordinates, for a derivation
/// d. Verified to be a derivation of the centroid.
pub fn induced_der_action(a: &SCAlgebra, d: &Matrix) -> Result<Matrix> {
    a.check_derivation(d)?;
    let cent = centroid(a)?;
    let images: Vec<Matrix> = cent
        .maps
        .iter()
        .map(|chi| d.mul(chi).sub(&chi.mul(d)))
        .collect();
    let action = action_matrix(&cent, &images)?;
    // Leibniz on the centroid: d_C(chi psi) = d_C(chi) psi + chi d_C(psi).
    for i in 0..cent.dim() {
        for j in 0..cent.dim() {
            let prod = cent.maps[i].mul(&cent.maps[j]);
            let lhs = d.mul(&prod).sub(&prod.mul(d));
            let rhs = images[i]
                .mul(&cent.maps[j])
                .add(&cent.maps[i].mul(&images[j]));
            if lhs != rhs {
                return Err(Error::invalid("internal: induced action not a derivation"));
            }
        }
    }
    Ok(action)
}

fn action_matrix(cent: &CentroidBasis, images: &[Matrix]) -> Result<Matrix> {
    let n = cent.maps[0].rows;
    let vecs: Vec<Vec<Rat>> = cent.maps.iter().map(|m| m.vectorize()).collect();
    let solver = CoordSolver::new(n * n, &vecs)?;
    let mut action = Matrix::zeros(cent.dim(), cent.dim());
    for (j, im) in images.iter().enumerate() {
        let coords = solver.coordinates(&im.vectorize()).map_err(|_| {
            Error::invalid("induced image leaves the centroid span")
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                action.set(i, j, c);
            }
        }
    }
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{
        classical, group_algebra, heisenberg, matrix_assoc, oscillator, restrict_scalars,
        sl_n_over, tensor, truncated_poly, ClassicalType,
    };
    use crate::lie::Grading;
    use crate::poly::Poly;

    #[test]
    fn centroid_dims_of_core_examples() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let c = centroid(&sl2).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.maps[0], Matrix::identity(3));
        c.verify(&sl2).unwrap();

        let h1 = heisenberg(1).unwrap();
        let c = centroid(&h1).unwrap();
        assert_eq!(c.dim(), 3);
        c.verify(&h1).unwrap();
        // a -> c and b -> c are in the span; a -> b is not.
        let mut a_to_c = Matrix::zeros(3, 3);
        a_to_c.set(2, 0, rat(1));
        let mut b_to_c = Matrix::zeros(3, 3);
        b_to_c.set(2, 1, rat(1));
        let mut a_to_b = Matrix::zeros(3, 3);
        a_to_b.set(1, 0, rat(1));
        let span = c.subspace();
        assert!(span.contains(&a_to_c.vectorize()));
        assert!(span.contains(&b_to_c.vectorize()));
        assert!(!span.contains(&a_to_b.vectorize()));

        let ab = crate::builders::abelian(3);
        assert_eq!(centroid(&ab).unwrap().dim(), 9);

        let osc = oscillator();
        let c = centroid(&osc).unwrap();
        assert_eq!(c.dim(), 2);
        c.verify(&osc).unwrap();
    }

    #[test]
    fn pairs_system_without_equal_indices_admits_spurious_solution() {
        // Regression for the design note: dropping the (i,i) constraints in
        // the pairs formulation admits a -> b on heisenberg(1).
        let h1 = heisenberg(1).unwrap();
        let n = h1.dim;
        // Direct construction: check a -> b satisfies the i < j equations.
        let mut a_to_b = Matrix::zeros(3, 3);
        a_to_b.set(1, 0, rat(1));
        for i in 0..n {
            for j in (i + 1)..n {
                let br = h1.bracket_basis_dense(i, j);
                let lhs = a_to_b.apply(&br);
                let rhs1 = h1.bracket(&a_to_b.column(i), &unit_vec(n, j));
                let rhs2 = h1.bracket(&unit_vec(n, i), &a_to_b.column(j));
                assert_eq!(lhs, rhs1, "family 1 at ({i},{j})");
                assert_eq!(lhs, rhs2, "family 2 at ({i},{j})");
            }
        }
        // But it fails the equal-index constraint [chi(a), a] = 0.
        let chi_a = a_to_b.column(0);
        let comm = h1.bracket(&chi_a, &unit_vec(n, 0));
        assert!(!vec_is_zero(&comm));
        // And the shipped solver indeed excludes it.
        let span = centroid(&h1).unwrap().subspace();
        assert!(!span.contains(&a_to_b.vectorize()));
    }

    #[test]
    fn tensor_law_and_graded_components() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        // dim Cent(g (x) b) = dim b for central perfect g.
        let t2 = tensor(&sl2, &truncated_poly(2).unwrap()).unwrap();
        assert_eq!(centroid(&t2).unwrap().dim(), 2);
        let g3 = tensor(&sl2, &group_algebra(&[3]).unwrap()).unwrap();
        let c = centroid(&g3).unwrap();
        assert_eq!(c.dim(), 3);
        // Graded centroid of g (x) Q[Z/3]: one dimension per degree.
        let gc = graded_centroid(&g3).unwrap();
        assert_eq!(gc.total_dim(), 3);
        assert_eq!(gc.components.len(), 3);
        for (_, maps) in &gc.components {
            assert_eq!(maps.len(), 1);
        }
        let rep = division_graded_report(&gc);
        assert_eq!(rep.division_graded, Some(true));
        assert!(rep.support_is_subgroup);
        assert!(rep.twisted_group_ring_flag);
        let rec = recognize_twisted_group_ring(&gc);
        assert!(rec.recognized);
        let (_, order, c) = rec.cyclic.unwrap();
        assert_eq!(order, 3);
        assert_eq!(c, rat(1));
    }

    #[test]
    fn heisenberg_graded_centroid_and_division_failure() {
        let mut h1 = heisenberg(1).unwrap();
        h1.grading = Some(Grading {
            free_rank: 1,
            torsion: vec![],
            degrees: vec![vec![1], vec![-1], vec![0]],
        });
        h1.validate().unwrap();
        let gc = graded_centroid(&h1).unwrap();
        // id at 0, a -> c at -1, b -> c at 1.
        assert_eq!(gc.total_dim(), 3);
        let degs = gc.support();
        assert_eq!(degs, vec![vec![-1], vec![0], vec![1]]);
        let rep = division_graded_report(&gc);
        assert_eq!(rep.division_graded, Some(false));
        assert!(!recognize_twisted_group_ring(&gc).recognized);
        // Evaluation at c is not injective (a -> c kills c); neither is it
        // at a (b -> c kills a). On sl2 evaluation at any nonzero element
        // is injective since the centroid is Q id.
        assert!(!evaluation_map_injective(&h1, &unit_vec(3, 2)).unwrap());
        assert!(!evaluation_map_injective(&h1, &unit_vec(3, 0)).unwrap());
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        assert!(evaluation_map_injective(&sl2, &unit_vec(3, 1)).unwrap());
        assert!(evaluation_map_injective(&h1, &zero_vec(3)).is_err());
        // Non-homogeneous element rejected while the grading is present.
        let mut mixed = zero_vec(3);
        mixed[0] = rat(1);
        mixed[1] = rat(1);
        assert!(evaluation_map_injective(&h1, &mixed).is_err());
    }

    #[test]
    fn vanishing_ideal_dimensions() {
        let h1 = heisenberg(1).unwrap();
        let z = h1.centre();
        let v = vanishing_ideal(&h1, &z).unwrap();
        assert_eq!(v.len(), 2);
        let osc = oscillator();
        let v = vanishing_ideal(&osc, &osc.derived()).unwrap();
        assert_eq!(v.len(), 1);
        // The sl2 whole-space ideal leaves only the zero map.
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let v = vanishing_ideal(&sl2, &sl2.full_space()).unwrap();
        assert_eq!(v.len(), 0);
        // Non-ideal input rejected.
        let bad = Subspace::from_vectors(3, vec![unit_vec(3, 0)]);
        assert!(vanishing_ideal(&h1, &bad).is_err());
    }

    #[test]
    fn local_analysis_verdicts() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let two = sl2.direct_sum(&sl2);
        let rep = centroid_local_analysis(&two).unwrap();
        assert_eq!(rep.dim, 2);
        assert_eq!(rep.verdict, LocalVerdict::Decomposable);
        let e = rep.idempotent.unwrap();
        assert_eq!(e.mul(&e), e);

        let rep = centroid_local_analysis(&heisenberg(1).unwrap()).unwrap();
        assert_eq!(rep.dim, 3);
        assert_eq!(rep.radical.len(), 2);
        assert_eq!(rep.radical_nilpotency, 2);
        assert_eq!(rep.semisimple_dim, 1);
        assert_eq!(rep.verdict, LocalVerdict::Indecomposable);

        let rep = centroid_local_analysis(&sl2).unwrap();
        assert_eq!(rep.verdict, LocalVerdict::Indecomposable);
        assert!(rep.radical.is_empty());
        assert_eq!(rep.radical_nilpotency, 1);
    }

    #[test]
    fn restriction_of_scalars_centroid_is_a_field() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let f = crate::builders::field_ext(&Poly::from_coeffs(vec![
            rat(-2),
            rat(0),
            rat(1),
        ]))
        .unwrap();
        let r = restrict_scalars(&sl2, &f).unwrap();
        let cent = centroid(&r).unwrap();
        assert_eq!(cent.dim(), 2);
        assert_eq!(span_is_field(&cent.maps), Some(true));
        let rep = centroid_local_analysis(&r).unwrap();
        assert!(rep.radical.is_empty());
        assert_eq!(rep.verdict, LocalVerdict::Indecomposable);
        // Q(i) version: no nontrivial idempotent either.
        let fi = crate::builders::field_ext(&Poly::from_coeffs(vec![
            rat(1),
            rat(0),
            rat(1),
        ]))
        .unwrap();
        let ri = restrict_scalars(&sl2, &fi).unwrap();
        let rep = centroid_local_analysis(&ri).unwrap();
        assert_eq!(rep.dim, 2);
        assert_eq!(rep.verdict, LocalVerdict::Indecomposable);
    }

    #[test]
    fn symmetry_check_outcomes() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let rep = centroid_symmetry_check(&sl2).unwrap();
        assert!(rep.perfect);
        assert!(rep.symmetric);
        let t2 = tensor(&sl2, &truncated_poly(2).unwrap()).unwrap();
        let rep = centroid_symmetry_check(&t2).unwrap();
        assert!(rep.perfect);
        assert!(rep.symmetric);
        // Non-perfect: flag reported, and every invariant form on
        // heisenberg(1) still satisfies the symmetry (the c-row and c-column
        // of any invariant form vanish).
        let mut h1 = heisenberg(1).unwrap();
        let forms = h1.invariant_symmetric_forms();
        for fv in forms.basis() {
            h1.form = Some(Matrix::from_vectorized(3, 3, fv.clone()).unwrap());
            h1.validate().unwrap();
            let rep = centroid_symmetry_check(&h1).unwrap();
            assert!(!rep.perfect);
            assert!(rep.symmetric);
        }
    }

    #[test]
    fn quotient_induction_examples() {
        let h1 = heisenberg(1).unwrap();
        let out = induce_quotient_centroid(&h1, &h1.centre()).unwrap();
        assert_eq!(out.quotient.dim, 2);
        assert_eq!(out.compatible.len(), 3);
        // Induced maps: id stays id, a -> c and b -> c die.
        let mut nonzero = 0;
        for (_, m) in &out.compatible {
            if !m.is_zero() {
                nonzero += 1;
                assert_eq!(*m, Matrix::identity(2));
            }
        }
        assert_eq!(nonzero, 1);
        assert!(out.injective.is_none());
        // Zero ideal: induction is the identity.
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let out = induce_quotient_centroid(&sl2, &Subspace::zero(3)).unwrap();
        assert_eq!(out.compatible.len(), 1);
        assert_eq!(out.injective, Some(true));
        // Non-central ideal rejected.
        assert!(induce_quotient_centroid(&sl2, &sl2.full_space()).is_err());
    }

    #[test]
    fn toral_path_matches_brute() {
        let osc = oscillator();
        let h = Subspace::from_vectors(4, vec![unit_vec(4, 0)]);
        let out = toral_centroid(&osc, &h).unwrap();
        assert!(out.used_toral_path);
        assert_eq!(out.basis.dim(), 2);
        assert!(out.restriction_injective);

        let sl3 = classical(ClassicalType::A, 2).unwrap();
        let out = toral_centroid(&sl3, &sl3.toral_subspace().unwrap()).unwrap();
        assert!(out.used_toral_path);
        assert_eq!(out.basis.dim(), 1);
        assert!(out.restriction_injective);

        // Degenerate input falls back.
        let ab = crate::builders::abelian(2);
        let out = toral_centroid(&ab, &Subspace::zero(2)).unwrap();
        assert!(!out.used_toral_path);
        assert_eq!(out.basis.dim(), 4);
    }

    #[test]
    fn induced_actions_on_tensor_centroid() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let b = truncated_poly(2).unwrap();
        let t = tensor(&sl2, &b).unwrap();
        // Automorphism id (x) (t -> -t).
        let mut f = Matrix::zeros(6, 6);
        for i in 0..3 {
            f.set(2 * i, 2 * i, rat(1));
            f.set(2 * i + 1, 2 * i + 1, rat(-1));
        }
        let action = induced_aut_action(&t, &f).unwrap();
        // Centroid basis: id and multiplication by t; conjugation negates t.
        assert_eq!(action.rows, 2);
        assert_eq!(*action.get(0, 0), rat(1));
        assert_eq!(*action.get(1, 1), rat(-1));
        // Derivation id (x) t d/dt: eigenvalue 1 on multiplication-by-t.
        let mut d = Matrix::zeros(6, 6);
        for i in 0..3 {
            d.set(2 * i + 1, 2 * i + 1, rat(1));
        }
        let action = induced_der_action(&t, &d).unwrap();
        assert_eq!(*action.get(0, 0), rat(0));
        assert_eq!(*action.get(1, 1), rat(1));
        // A non-automorphism and a non-derivation are rejected with
        // witnesses.
        let bad = Matrix::identity(6).scale(&rat(2));
        assert!(induced_aut_action(&t, &bad).is_err());
        let mut badd = Matrix::zeros(6, 6);
        badd.set(0, 1, rat(1));
        assert!(induced_der_action(&t, &badd).is_err());
    }

    #[test]
    fn centroid_of_matrix_coefficient_algebra() {
        // sl_3(M_2(Q)): centroid is Q id.
        let s = sl_n_over(&matrix_assoc(2).unwrap(), 3).unwrap();
        let c = centroid(&s).unwrap();
        assert_eq!(c.dim(), 1);
        // sl_3(Q[t]/(t^2)): centroid dim 2.
        let s = sl_n_over(&truncated_poly(2).unwrap(), 3).unwrap();
        assert_eq!(centroid(&s).unwrap().dim(), 2);
    }
}
