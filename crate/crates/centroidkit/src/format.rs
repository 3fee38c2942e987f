//! Flat-file formats. The JSON layout is the stability contract: 0-based
//! indices, bracket pairs stored with i < j only, rationals as reduced
//! "p/q" or integer strings, canonical key order, so that
//! parse(serialize(a)) round-trips bit exactly.

use serde::{Deserialize, Serialize};

use crate::builders::{AssocTable, CoordSolver};
use crate::cohom::Cocycle;
use crate::error::{Error, Result};
use crate::lie::{Grading, SCAlgebra};
use crate::linalg::Matrix;
use crate::loopkit::LoopElement;
use crate::rational::{format_rat, parse_rat, Rat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradingFile {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub degrees: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toral: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<String>>>,
}

pub fn algebra_to_file(a: &SCAlgebra) -> AlgebraFile {
    let mut brackets = Vec::new();
    for i in 0..a.dim {
        for j in (i + 1)..a.dim {
            let terms: Vec<TermEntry> = a
                .bracket_basis(i, j)
                .into_iter()
                .map(|(k, c)| TermEntry {
                    k,
                    c: format_rat(&c),
                })
                .collect();
            if !terms.is_empty() {
                brackets.push(BracketEntry { i, j, terms });
            }
        }
    }
    AlgebraFile {
        name: a.name.clone(),
        dim: a.dim,
        basis: a.basis_names.clone(),
        brackets,
        grading: a.grading.as_ref().map(|g| GradingFile {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
            degrees: g.degrees.clone(),
        }),
        toral: a.toral.clone(),
        form: a.form.as_ref().map(|f| {
            (0..f.rows)
                .map(|r| (0..f.cols).map(|c| format_rat(f.get(r, c))).collect())
                .collect()
        }),
    }
}

pub fn file_to_algebra(file: &AlgebraFile) -> Result<SCAlgebra> {
    if file.basis.len() != file.dim {
        return Err(Error::Dim("basis name count differs from dim".into()));
    }
    let mut entries = Vec::new();
    for b in &file.brackets {
        if b.i >= b.j {
            return Err(Error::invalid(format!(
                "bracket pair ({}, {}) must have i < j",
                b.i, b.j
            )));
        }
        let mut terms = Vec::new();
        for t in &b.terms {
            let c = parse_rat(&t.c).map_err(Error::invalid)?;
            terms.push((t.k, c));
        }
        entries.push((b.i, b.j, terms));
    }
    let mut a = SCAlgebra::new(file.name.clone(), file.dim, entries)?;
    a = a.with_names(file.basis.clone())?;
    if let Some(g) = &file.grading {
        let width = g.free_rank + g.torsion.len();
        for d in &g.degrees {
            if d.len() != width {
                return Err(Error::Dim("degree width differs from grading group".into()));
            }
        }
        a.grading = Some(Grading {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
            degrees: g.degrees.clone(),
        });
    }
    if let Some(t) = &file.toral {
        for &i in t {
            if i >= file.dim {
                return Err(Error::Dim("toral index out of range".into()));
            }
        }
        a.toral = Some(t.clone());
    }
    if let Some(rows) = &file.form {
        let mut m = Matrix::zeros(file.dim, file.dim);
        if rows.len() != file.dim {
            return Err(Error::Dim("form row count differs from dim".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != file.dim {
                return Err(Error::Dim("form column count differs from dim".into()));
            }
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, parse_rat(s).map_err(Error::invalid)?);
            }
        }
        a.form = Some(m);
    }
    a.validate()?;
    Ok(a)
}

/// Canonical serialization: pretty JSON with struct field order and a
/// trailing newline. This exact byte stream is the round-trip contract.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn algebra_from_json(text: &str) -> Result<SCAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad algebra file: {e}")))?;
    file_to_algebra(&file)
}

pub fn algebra_to_json(a: &SCAlgebra) -> String {
    to_json(&algebra_to_file(a))
}

/// Coordinate (associative) algebras store every nonzero product e_i e_j,
/// both orders, since no symmetry is assumed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssocFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingFile>,
}

pub fn assoc_to_file(b: &AssocTable) -> AssocFile {
    let mut products = Vec::new();
    for i in 0..b.dim {
        for j in 0..b.dim {
            let terms: Vec<TermEntry> = b.products[i][j]
                .iter()
                .map(|(k, c)| TermEntry {
                    k: *k,
                    c: format_rat(c),
                })
                .collect();
            if !terms.is_empty() {
                products.push(ProductEntry { i, j, terms });
            }
        }
    }
    AssocFile {
        name: b.name.clone(),
        dim: b.dim,
        basis: b.names.clone(),
        unit: b.unit.iter().map(format_rat).collect(),
        products,
        grading: b.grading.as_ref().map(|g| GradingFile {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
            degrees: g.degrees.clone(),
        }),
    }
}

pub fn file_to_assoc(file: &AssocFile) -> Result<AssocTable> {
    if file.basis.len() != file.dim {
        return Err(Error::Dim("basis name count differs from dim".into()));
    }
    if file.unit.len() != file.dim {
        return Err(Error::Dim("unit vector length differs from dim".into()));
    }
    let mut unit = Vec::new();
    for s in &file.unit {
        unit.push(parse_rat(s).map_err(Error::invalid)?);
    }
    let mut products = vec![vec![Vec::new(); file.dim]; file.dim];
    for p in &file.products {
        if p.i >= file.dim || p.j >= file.dim {
            return Err(Error::Dim("product index out of range".into()));
        }
        if !products[p.i][p.j].is_empty() {
            return Err(Error::invalid(format!(
                "duplicate product entry ({}, {})",
                p.i, p.j
            )));
        }
        let mut terms = Vec::new();
        for t in &p.terms {
            if t.k >= file.dim {
                return Err(Error::Dim("product term index out of range".into()));
            }
            terms.push((t.k, parse_rat(&t.c).map_err(Error::invalid)?));
        }
        products[p.i][p.j] = terms;
    }
    let grading = match &file.grading {
        Some(g) => {
            let width = g.free_rank + g.torsion.len();
            for d in &g.degrees {
                if d.len() != width {
                    return Err(Error::Dim("degree width differs from grading group".into()));
                }
            }
            Some(Grading {
                free_rank: g.free_rank,
                torsion: g.torsion.clone(),
                degrees: g.degrees.clone(),
            })
        }
        None => None,
    };
    let table = AssocTable {
        name: file.name.clone(),
        dim: file.dim,
        unit,
        names: file.basis.clone(),
        products,
        grading,
    };
    table.validate()?;
    Ok(table)
}

pub fn assoc_from_json(text: &str) -> Result<AssocTable> {
    let file: AssocFile = serde_json::from_str(text)
        .map_err(|e| Error::invalid(format!("bad coordinate file: {e}")))?;
    file_to_assoc(&file)
}

pub fn assoc_to_json(b: &AssocTable) -> String {
    to_json(&assoc_to_file(b))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleValueEntry {
    pub i: usize,
    pub j: usize,
    pub v: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub dim: usize,
    pub coeff_dim: usize,
    pub values: Vec<CocycleValueEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_degrees: Option<Vec<Vec<i64>>>,
}

pub fn cocycle_to_file(c: &Cocycle) -> CocycleFile {
    CocycleFile {
        dim: c.dim,
        coeff_dim: c.coeff_dim,
        values: c
            .values
            .iter()
            .map(|((i, j), v)| CocycleValueEntry {
                i: *i,
                j: *j,
                v: v.iter().map(format_rat).collect(),
            })
            .collect(),
        coeff_degrees: c.coeff_degrees.clone(),
    }
}

pub fn file_to_cocycle(file: &CocycleFile) -> Result<Cocycle> {
    let mut entries = Vec::new();
    for e in &file.values {
        let mut v = Vec::new();
        for s in &e.v {
            v.push(parse_rat(s).map_err(Error::invalid)?);
        }
        entries.push((e.i, e.j, v));
    }
    let mut c = Cocycle::new(file.dim, file.coeff_dim, entries)?;
    c.coeff_degrees = file.coeff_degrees.clone();
    Ok(c)
}

pub fn cocycle_from_json(text: &str) -> Result<Cocycle> {
    let file: CocycleFile =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad cocycle file: {e}")))?;
    file_to_cocycle(&file)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearMapFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_file(m: &Matrix) -> LinearMapFile {
    LinearMapFile {
        rows: m.rows,
        cols: m.cols,
        entries: (0..m.rows)
            .map(|r| (0..m.cols).map(|c| format_rat(m.get(r, c))).collect())
            .collect(),
    }
}

pub fn file_to_matrix(file: &LinearMapFile) -> Result<Matrix> {
    if file.entries.len() != file.rows {
        return Err(Error::Dim("linear map row count mismatch".into()));
    }
    let mut m = Matrix::zeros(file.rows, file.cols);
    for (r, row) in file.entries.iter().enumerate() {
        if row.len() != file.cols {
            return Err(Error::Dim("linear map column count mismatch".into()));
        }
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, parse_rat(s).map_err(Error::invalid)?);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopTermEntry {
    pub deg: i64,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopElementFile {
    pub terms: Vec<LoopTermEntry>,
    pub c: String,
    pub d: String,
}

pub fn loop_element_to_file(x: &LoopElement) -> LoopElementFile {
    LoopElementFile {
        terms: x
            .terms
            .iter()
            .map(|(deg, coeff)| LoopTermEntry {
                deg: *deg,
                coeff: coeff.iter().map(format_rat).collect(),
            })
            .collect(),
        c: format_rat(&x.c_coeff),
        d: format_rat(&x.d_coeff),
    }
}

pub fn file_to_loop_element(file: &LoopElementFile, base_dim: usize) -> Result<LoopElement> {
    let mut x = LoopElement::zero();
    for t in &file.terms {
        if t.coeff.len() != base_dim {
            return Err(Error::Dim("loop term coefficient length mismatch".into()));
        }
        let mut coeff = Vec::new();
        for s in &t.coeff {
            coeff.push(parse_rat(s).map_err(Error::invalid)?);
        }
        x = x.add(&LoopElement::monomial(t.deg, coeff));
    }
    let c = parse_rat(&file.c).map_err(Error::invalid)?;
    let d = parse_rat(&file.d).map_err(Error::invalid)?;
    x = x.add(&LoopElement::c(c));
    x = x.add(&LoopElement::d(d));
    Ok(x)
}

/// Subspaces serialize as their canonical reduced-echelon bases, so the
/// file determines the subspace uniquely and vice versa.
pub fn subspace_rows(basis: &[Vec<Rat>]) -> Vec<Vec<String>> {
    basis
        .iter()
        .map(|v| v.iter().map(format_rat).collect())
        .collect()
}

/// Parses rational vectors back; used by CLI inputs that take raw vectors.
pub fn parse_vector(items: &[String]) -> Result<Vec<Rat>> {
    let mut out = Vec::with_capacity(items.len());
    for s in items {
        out.push(parse_rat(s).map_err(Error::invalid)?);
    }
    Ok(out)
}

/// Splits a comma-separated list of rationals.
pub fn parse_rat_list(text: &str) -> Result<Vec<Rat>> {
    text.split(',')
        .map(|s| parse_rat(s.trim()).map_err(Error::invalid))
        .collect()
}

/// Splits a comma-separated list of indices.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| Error::invalid(format!("bad index list: {e}")))
        })
        .collect()
}

/// Parses a basis vector expressed either as an index name from the file or
/// as a comma-separated coordinate vector.
pub fn parse_element(a: &SCAlgebra, text: &str) -> Result<Vec<Rat>> {
    if let Some(pos) = a.basis_names.iter().position(|n| n == text) {
        return Ok(crate::linalg::matrix::unit_vec(a.dim, pos));
    }
    let v = parse_rat_list(text)?;
    if v.len() != a.dim {
        return Err(Error::Dim(format!(
            "element has {} coordinates, algebra has dimension {}",
            v.len(),
            a.dim
        )));
    }
    Ok(v)
}

/// Resolves a list of element expressions into independent image vectors.
pub fn parse_elements(a: &SCAlgebra, texts: &[String]) -> Result<Vec<Vec<Rat>>> {
    let vecs: Vec<Vec<Rat>> = texts
        .iter()
        .map(|t| parse_element(a, t))
        .collect::<Result<_>>()?;
    if !vecs.is_empty() {
        CoordSolver::new(a.dim, &vecs)
            .map_err(|_| Error::invalid("listed elements are linearly dependent"))?;
    }
    Ok(vecs)
}
