//! Constructors for the example families: Heisenberg and oscillator
//! algebras, split simple classical algebras, unital associative coefficient
//! tables, tensor products, and trace-reduced matrix algebras over a
//! coefficient algebra.

use crate::error::{Error, Result};
use crate::lie::{Degree, Grading, SCAlgebra};
use crate::linalg::echelon::{kernel_dense, Echelon};
use crate::linalg::eigen::{cmp_tuple, simultaneous_eigenspaces};
use crate::linalg::matrix::{unit_vec, vec_is_zero, zero_vec, Matrix};
use crate::linalg::subspace::Subspace;
use crate::poly::Poly;
use crate::rational::{rat, Rat};
use num_traits::{One, Zero};

/// heisenberg(n): basis a_1..a_n, b_1..b_n, c with [a_i, b_i] = c.
pub fn heisenberg(n: usize) -> Result<SCAlgebra> {
    if n < 1 {
        return Err(Error::invalid("heisenberg needs n >= 1"));
    }
    let dim = 2 * n + 1;
    let entries = (0..n).map(|i| (i, n + i, vec![(2 * n, rat(1))])).collect();
    let names = if n == 1 {
        vec!["a".into(), "b".into(), "c".into()]
    } else {
        let mut v: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        v.extend((1..=n).map(|i| format!("b{i}")));
        v.push("c".into());
        v
    };
    SCAlgebra::new(format!("heisenberg({n})"), dim, entries)?.with_names(names)
}

/// Oscillator algebra: basis d, a, b, c with [d,a] = a, [d,b] = -b, [a,b] = c.
pub fn oscillator() -> SCAlgebra {
    SCAlgebra::new(
        "oscillator",
        4,
        vec![
            (0, 1, vec![(1, rat(1))]),
            (0, 2, vec![(2, rat(-1))]),
            (1, 2, vec![(3, rat(1))]),
        ],
    )
    .unwrap()
    .with_names(vec!["d".into(), "a".into(), "b".into(), "c".into()])
    .unwrap()
}

pub fn abelian(n: usize) -> SCAlgebra {
    SCAlgebra::abelian(format!("abelian({n})"), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalType {
    A,
    B,
    C,
    D,
}

impl ClassicalType {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(ClassicalType::A),
            "B" | "b" => Ok(ClassicalType::B),
            "C" | "c" => Ok(ClassicalType::C),
            "D" | "d" => Ok(ClassicalType::D),
            _ => Err(Error::invalid(format!("unknown classical type {s}"))),
        }
    }
}

/// Split simple classical algebra of the given type and rank, realized as a
/// matrix algebra: sl_{r+1}, so_{2r+1}, sp_{2r}, so_{2r}. Basis: Cartan
/// h_1..h_r first (toral designation), then the positive root vectors in
/// eigenvalue-tuple order, then the matching negatives. The Killing form is
/// attached.
pub fn classical(ty: ClassicalType, rank: usize) -> Result<SCAlgebra> {
    let (n, expect_dim) = match ty {
        ClassicalType::A => {
            if !(1..=9).contains(&rank) {
                return Err(Error::invalid("type A supports rank 1..9"));
            }
            (rank + 1, (rank + 1) * (rank + 1) - 1)
        }
        ClassicalType::B => {
            if !(1..=6).contains(&rank) {
                return Err(Error::invalid("type B supports rank 1..6"));
            }
            (2 * rank + 1, rank * (2 * rank + 1))
        }
        ClassicalType::C => {
            if !(1..=6).contains(&rank) {
                return Err(Error::invalid("type C supports rank 1..6"));
            }
            (2 * rank, rank * (2 * rank + 1))
        }
        ClassicalType::D => {
            if !(2..=7).contains(&rank) {
                return Err(Error::invalid("type D supports rank 2..7"));
            }
            (2 * rank, rank * (2 * rank - 1))
        }
    };
    // Matrix space cut out by a linear condition on vectorized n x n
    // matrices (row-major p*n + q).
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    match ty {
        ClassicalType::A => {
            let mut row = zero_vec(n * n);
            for p in 0..n {
                row[p * n + p] = rat(1);
            }
            rows.push(row);
        }
        ClassicalType::B | ClassicalType::C | ClassicalType::D => {
            // X^T M + M X = 0 with M antidiagonal: M[i][n-1-i] = sign(i).
            let sign = |i: usize| -> Rat {
                if ty == ClassicalType::C && i >= n / 2 {
                    rat(-1)
                } else {
                    rat(1)
                }
            };
            for a in 0..n {
                for b in 0..n {
                    // (X^T M)_{ab} = X[b'][a] sign(b'), (M X)_{ab} = X[a'][b] sign(a),
                    // with a' = n-1-a.
                    let mut row = zero_vec(n * n);
                    let ap = n - 1 - a;
                    let bp = n - 1 - b;
                    row[bp * n + a] += sign(bp);
                    row[ap * n + b] += sign(a);
                    if !vec_is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let space = Subspace::from_vectors(
        n * n,
        kernel_dense(&Matrix::from_rows(rows).map_err(|e| Error::Dim(e.to_string()))?),
    );
    if space.dim() != expect_dim {
        return Err(Error::invalid(format!(
            "internal: matrix realization has dim {} instead of {expect_dim}",
            space.dim()
        )));
    }
    // Cartan: h_i = E_ii - E_{i+1,i+1} for type A, else E_ii - E_{i'i'}.
    let mut cartan: Vec<Vec<Rat>> = Vec::new();
    for i in 0..rank {
        let mut h = zero_vec(n * n);
        h[i * n + i] = rat(1);
        let j = if ty == ClassicalType::A { i + 1 } else { n - 1 - i };
        h[j * n + j] = rat(-1);
        if !space.contains(&h) {
            return Err(Error::invalid("internal: Cartan element outside realization"));
        }
        cartan.push(h);
    }
    // ad(h) is diagonal on matrix units: eigenvalue h_p - h_q at (p,q).
    // Restrict to the realization and split into joint eigenspaces.
    let ops: Vec<Matrix> = cartan
        .iter()
        .map(|h| {
            let mut big = Matrix::zeros(n * n, n * n);
            for p in 0..n {
                for q in 0..n {
                    let v = &h[p * n + p] - &h[q * n + q];
                    if !v.is_zero() {
                        big.set(p * n + q, p * n + q, v);
                    }
                }
            }
            space.restrict(&big)
        })
        .collect::<Result<Vec<_>>>()?;
    let blocks = simultaneous_eigenspaces(&ops)?;
    let zero_block = blocks
        .iter()
        .find(|b| b.values.iter().all(|v| v.is_zero()))
        .ok_or_else(|| Error::invalid("internal: no zero weight space"))?;
    if zero_block.space.dim() != rank {
        return Err(Error::invalid(
            "internal: zero weight space exceeds the Cartan",
        ));
    }
    let mut positives = Vec::new();
    for b in &blocks {
        if b.values.iter().all(|v| v.is_zero()) {
            continue;
        }
        if b.space.dim() != 1 {
            return Err(Error::invalid("internal: root space not 1-dimensional"));
        }
        let first_nonzero = b.values.iter().find(|v| !v.is_zero()).unwrap();
        if *first_nonzero > Rat::zero() {
            positives.push(b);
        }
    }
    positives.sort_by(|x, y| cmp_tuple(&x.values, &y.values));
    // Basis in ambient n^2 coordinates: Cartan, positives, mirrored negatives.
    let mut basis: Vec<Vec<Rat>> = cartan.clone();
    let mut names: Vec<String> = (1..=rank).map(|i| format!("h{i}")).collect();
    let fmt_weight = |vals: &[Rat]| -> String {
        let parts: Vec<String> = vals.iter().map(crate::rational::format_rat).collect();
        parts.join(",")
    };
    let primitive = |v: Vec<Rat>| -> Vec<Rat> {
        let mut denom_lcm = num_bigint::BigInt::one();
        for c in &v {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<num_bigint::BigInt> = v
            .iter()
            .map(|c| (c * Rat::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = num_bigint::BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        if g.is_zero() {
            return v;
        }
        let mut out: Vec<Rat> = ints
            .into_iter()
            .map(|c| Rat::from_integer(c) / Rat::from_integer(g.clone()))
            .collect();
        if let Some(first) = out.iter().find(|c| !c.is_zero()) {
            if *first < Rat::zero() {
                for c in &mut out {
                    *c = -c.clone();
                }
            }
        }
        out
    };
    let mut neg_basis = Vec::new();
    let mut neg_names = Vec::new();
    for b in &positives {
        let vec = space.lift(&b.space.basis()[0]);
        basis.push(primitive(vec));
        names.push(format!("x[{}]", fmt_weight(&b.values)));
        let neg_vals: Vec<Rat> = b.values.iter().map(|v| -v).collect();
        let nb = blocks
            .iter()
            .find(|x| x.values == neg_vals)
            .ok_or_else(|| Error::invalid("internal: missing negative root"))?;
        neg_basis.push(primitive(space.lift(&nb.space.basis()[0])));
        neg_names.push(format!("x[{}]", fmt_weight(&neg_vals)));
    }
    basis.extend(neg_basis);
    names.extend(neg_names);
    if basis.len() != expect_dim {
        return Err(Error::invalid("internal: basis count mismatch"));
    }
    // Structure constants via matrix commutators and coordinate extraction.
    let solver = CoordSolver::new(n * n, &basis)?;
    let as_matrix =
        |v: &[Rat]| -> Matrix { Matrix::from_vectorized(n, n, v.to_vec()).unwrap() };
    let mats: Vec<Matrix> = basis.iter().map(|v| as_matrix(v)).collect();
    let mut entries = Vec::new();
    for i in 0..expect_dim {
        for j in (i + 1)..expect_dim {
            let comm = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
            if comm.is_zero() {
                continue;
            }
            let coords = solver.coordinates(&comm.vectorize())?;
            let terms: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            entries.push((i, j, terms));
        }
    }
    let tyname = match ty {
        ClassicalType::A => "A",
        ClassicalType::B => "B",
        ClassicalType::C => "C",
        ClassicalType::D => "D",
    };
    let mut algebra =
        SCAlgebra::new(format!("{tyname}{rank}"), expect_dim, entries)?.with_names(names)?;
    algebra.toral = Some((0..rank).collect());
    algebra.form = Some(algebra.killing_form());
    // These split simple algebras are central; cheap enough to confirm at
    // build time for small ranks.
    if rank <= 3 && crate::centroid::centroid(&algebra)?.dim() != 1 {
        return Err(Error::invalid(
            "internal: split simple algebra has centroid larger than Q id",
        ));
    }
    Ok(algebra)
}

/// Coordinates with respect to a fixed ordered independent spanning set,
/// via an echelon with bookkeeping columns.
pub struct CoordSolver {
    ech: Echelon,
    ambient: usize,
    count: usize,
}

impl CoordSolver {
    pub fn new(ambient: usize, basis: &[Vec<Rat>]) -> Result<Self> {
        let mut ech = Echelon::new(ambient + basis.len());
        for (k, v) in basis.iter().enumerate() {
            let mut row: Vec<(usize, Rat)> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            row.push((ambient + k, rat(1)));
            if ech.insert(row).is_none() {
                return Err(Error::invalid("coordinate basis is dependent"));
            }
        }
        Ok(CoordSolver {
            ech,
            ambient,
            count: basis.len(),
        })
    }

    pub fn coordinates(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let row: Vec<(usize, Rat)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let red = self.ech.reduce(row);
        let mut coords = zero_vec(self.count);
        for (col, c) in red {
            if col < self.ambient {
                return Err(Error::invalid("vector outside the spanned subspace"));
            }
            coords[col - self.ambient] = -c;
        }
        Ok(coords)
    }
}

/// Unital associative algebra over Q as a dense multiplication table.
#[derive(Clone, Debug)]
pub struct AssocTable {
    pub name: String,
    pub dim: usize,
    /// Coordinates of the unit (not always a basis vector: matrix algebras).
    pub unit: Vec<Rat>,
    pub names: Vec<String>,
    /// products[i][j] = e_i * e_j, sparse by target index.
    pub products: Vec<Vec<Vec<(usize, Rat)>>>,
    pub grading: Option<Grading>,
}

impl AssocTable {
    pub fn product(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a * b;
                for (k, v) in &self.products[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.products[i][j]
    }

    /// Left multiplication operator of a coordinate vector.
    pub fn left_mult(&self, x: &[Rat]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(x, &unit_vec(self.dim, j));
            for (k, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, j, c);
                }
            }
        }
        m
    }

    pub fn unit_basis_index(&self) -> Option<usize> {
        let mut idx = None;
        for (i, c) in self.unit.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || idx.is_some() {
                return None;
            }
            idx = Some(i);
        }
        idx
    }

    /// Associativity on all triples, unit laws, grading compatibility.
    pub fn validate(&self) -> Result<()> {
        if self.products.len() != self.dim
            || self.products.iter().any(|r| r.len() != self.dim)
            || self.names.len() != self.dim
            || self.unit.len() != self.dim
        {
            return Err(Error::invalid("associative table shape mismatch"));
        }
        for i in 0..self.dim {
            let e = unit_vec(self.dim, i);
            if self.product(&self.unit, &e) != e || self.product(&e, &self.unit) != e {
                return Err(Error::invalid(format!(
                    "unit law fails at basis element {}",
                    self.names[i]
                )));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(&unit_vec(self.dim, i), &unit_vec(self.dim, j));
                for k in 0..self.dim {
                    let left = self.product(&ij, &unit_vec(self.dim, k));
                    let jk = self.product(&unit_vec(self.dim, j), &unit_vec(self.dim, k));
                    let right = self.product(&unit_vec(self.dim, i), &jk);
                    if left != right {
                        return Err(Error::invalid(format!(
                            "associativity fails at triple ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        if let Some(g) = &self.grading {
            g.validate(self.dim)?;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let sum = g.add(&g.degrees[i], &g.degrees[j]);
                    for (k, _) in &self.products[i][j] {
                        if g.degrees[*k] != sum {
                            return Err(Error::invalid(
                                "product lands outside its degree component",
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Commutativity is computed, never assumed.
    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let ij = self.product(&unit_vec(self.dim, i), &unit_vec(self.dim, j));
                let ji = self.product(&unit_vec(self.dim, j), &unit_vec(self.dim, i));
                if ij != ji {
                    return false;
                }
            }
        }
        true
    }

    /// Centre {z : zx = xz for all x}.
    pub fn centre(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            let e = unit_vec(self.dim, i);
            // Row block: z mapsto z e_i - e_i z.
            let mut block = Matrix::zeros(self.dim, self.dim);
            for p in 0..self.dim {
                let ep = unit_vec(self.dim, p);
                let diff = crate::linalg::matrix::vec_sub(
                    &self.product(&ep, &e),
                    &self.product(&e, &ep),
                );
                for (k, c) in diff.into_iter().enumerate() {
                    if !c.is_zero() {
                        block.set(k, p, c);
                    }
                }
            }
            for r in 0..self.dim {
                rows.push(block.row(r));
            }
        }
        let m = Matrix::from_rows(rows).unwrap();
        Subspace::from_vectors(self.dim, kernel_dense(&m))
    }

    /// Commutator subspace [A, A].
    pub fn commutator_space(&self) -> Subspace {
        let mut vecs = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let ei = unit_vec(self.dim, i);
                let ej = unit_vec(self.dim, j);
                let d = crate::linalg::matrix::vec_sub(
                    &self.product(&ei, &ej),
                    &self.product(&ej, &ei),
                );
                if !vec_is_zero(&d) {
                    vecs.push(d);
                }
            }
        }
        Subspace::from_vectors(self.dim, vecs)
    }

    /// Symmetric associative trace form tau(x, y) = tr L_{xy}.
    pub fn trace_form(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let prod = self.product(&unit_vec(self.dim, i), &unit_vec(self.dim, j));
                let val = self.left_mult(&prod).trace();
                t.set(i, j, val.clone());
                t.set(j, i, val);
            }
        }
        t
    }
}

/// Q[t]/(t^k), graded by degree in t.
pub fn truncated_poly(k: usize) -> Result<AssocTable> {
    if k < 1 {
        return Err(Error::invalid("truncated_poly needs k >= 1"));
    }
    let mut products = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                products[i][j] = vec![(i + j, rat(1))];
            }
        }
    }
    Ok(AssocTable {
        name: format!("Q[t]/(t^{k})"),
        dim: k,
        unit: unit_vec(k, 0),
        names: (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect(),
        products,
        grading: Some(Grading {
            free_rank: 1,
            torsion: vec![],
            degrees: (0..k).map(|i| vec![i as i64]).collect(),
        }),
    })
}

/// Q[x,y]/(x^2, y^2) with basis 1, x, y, xy.
pub fn truncated_poly_pair() -> AssocTable {
    let mut products: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new(); 4]; 4];
    for k in 0..4 {
        products[0][k] = vec![(k, rat(1))];
        if k > 0 {
            products[k][0] = vec![(k, rat(1))];
        }
    }
    products[1][2] = vec![(3, rat(1))];
    products[2][1] = vec![(3, rat(1))];
    AssocTable {
        name: "Q[x,y]/(x^2,y^2)".to_string(),
        dim: 4,
        unit: unit_vec(4, 0),
        names: vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        products,
        grading: None,
    }
}

/// Enumerate Z/m1 x ... x Z/mk in row-major order (last coordinate fastest).
fn group_elements(moduli: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &m in moduli {
        let mut next = Vec::new();
        for prefix in &out {
            for a in 0..m {
                let mut e = prefix.clone();
                e.push(a);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

fn group_index(moduli: &[i64], e: &[i64]) -> usize {
    let mut idx = 0usize;
    for (k, &m) in moduli.iter().enumerate() {
        idx = idx * (m as usize) + (e[k].rem_euclid(m) as usize);
    }
    idx
}

fn group_name(e: &[i64], single: bool) -> String {
    if single {
        match e[0] {
            0 => "1".to_string(),
            1 => "t".to_string(),
            a => format!("t^{a}"),
        }
    } else {
        let parts: Vec<String> = e.iter().map(|a| a.to_string()).collect();
        format!("g[{}]", parts.join(","))
    }
}

/// Group algebra Q[Z/m1 x ... x Z/mk], graded by the group.
pub fn group_algebra(moduli: &[i64]) -> Result<AssocTable> {
    twisted_group_ring(moduli, |_, _| rat(1))
}

/// Twisted group ring over Z/m1 x ... x Z/mk: e_g e_h = twist(g,h) e_{g+h}.
/// The twist must be a normalized 2-cocycle with nonzero values.
pub fn twisted_group_ring(
    moduli: &[i64],
    twist: impl Fn(&[i64], &[i64]) -> Rat,
) -> Result<AssocTable> {
    if moduli.is_empty() || moduli.iter().any(|m| *m < 1) {
        return Err(Error::invalid("group moduli must be nonempty and >= 1"));
    }
    let elements = group_elements(moduli);
    let dim = elements.len();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(moduli)
            .map(|((x, y), m)| (x + y).rem_euclid(*m))
            .collect()
    };
    // Cocycle: twist(g,h) twist(g+h,k) = twist(h,k) twist(g,h+k); unit
    // normalization twist(0,h) = twist(g,0) = 1; all values nonzero.
    let zero = vec![0i64; moduli.len()];
    for g in &elements {
        if twist(&zero, g) != rat(1) || twist(g, &zero) != rat(1) {
            return Err(Error::invalid("twist is not normalized at the identity"));
        }
        for h in &elements {
            if twist(g, h).is_zero() {
                return Err(Error::invalid("twist takes the value zero"));
            }
            for k in &elements {
                let lhs = twist(g, h) * twist(&add(g, h), k);
                let rhs = twist(h, k) * twist(g, &add(h, k));
                if lhs != rhs {
                    return Err(Error::invalid("twist violates the cocycle identity"));
                }
            }
        }
    }
    let mut products = vec![vec![Vec::new(); dim]; dim];
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            let s = add(g, h);
            products[i][j] = vec![(group_index(moduli, &s), twist(g, h))];
        }
    }
    let single = moduli.len() == 1;
    let trivial = elements
        .iter()
        .all(|g| elements.iter().all(|h| twist(g, h) == rat(1)));
    let moduli_s: Vec<String> = moduli.iter().map(|m| format!("Z/{m}")).collect();
    let name = if trivial {
        format!("Q[{}]", moduli_s.join("x"))
    } else {
        format!("Q^t[{}]", moduli_s.join("x"))
    };
    Ok(AssocTable {
        name,
        dim,
        unit: unit_vec(dim, 0),
        names: elements.iter().map(|e| group_name(e, single)).collect(),
        products,
        grading: Some(Grading {
            free_rank: 0,
            torsion: moduli.to_vec(),
            degrees: elements.clone(),
        }),
    })
}

/// Full matrix algebra M_n(Q) with basis E_ij in row-major order.
pub fn matrix_assoc(n: usize) -> Result<AssocTable> {
    if n < 1 {
        return Err(Error::invalid("matrix_assoc needs n >= 1"));
    }
    let dim = n * n;
    let mut products = vec![vec![Vec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        products[i * n + j][k * n + l] = vec![(i * n + l, rat(1))];
                    }
                }
            }
        }
    }
    let mut unit = zero_vec(dim);
    for i in 0..n {
        unit[i * n + i] = rat(1);
    }
    Ok(AssocTable {
        name: format!("M{n}(Q)"),
        dim,
        unit,
        names: (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect(),
        products,
        grading: None,
    })
}

/// Q[x]/(p) for p irreducible over Q of degree 1..4.
pub fn field_ext(min_poly: &Poly) -> Result<AssocTable> {
    let deg = min_poly
        .degree()
        .ok_or_else(|| Error::invalid("zero polynomial"))?;
    if !(1..=4).contains(&deg) {
        return Err(Error::invalid("field extension degree must be 1..4"));
    }
    let p = min_poly.monic();
    if !p.is_irreducible_deg_le4()? {
        return Err(Error::invalid("minimal polynomial is reducible over Q"));
    }
    // x^deg = -(lower coefficients); reduce x^(i+j) by repeated substitution.
    let mut powers: Vec<Vec<Rat>> = Vec::new(); // x^k in basis 1..x^{deg-1}
    for k in 0..deg {
        powers.push(unit_vec(deg, k));
    }
    for k in deg..(2 * deg - 1) {
        let prev = powers[k - 1].clone();
        // multiply by x: shift, then reduce the overflow via x^deg.
        let mut next = zero_vec(deg);
        for (i, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < deg {
                next[i + 1] += c;
            } else {
                for t in 0..deg {
                    next[t] += c * -p.coeff(t);
                }
            }
        }
        powers.push(next);
    }
    let mut products = vec![vec![Vec::new(); deg]; deg];
    for i in 0..deg {
        for j in 0..deg {
            products[i][j] = powers[i + j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
        }
    }
    Ok(AssocTable {
        name: format!("Q[x]/({})", format_poly(&p)),
        dim: deg,
        unit: unit_vec(deg, 0),
        names: (0..deg)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect(),
        products,
        grading: None,
    })
}

fn format_poly(p: &Poly) -> String {
    let mut parts = Vec::new();
    for d in (0..=p.degree().unwrap_or(0)).rev() {
        let c = p.coeff(d);
        if c.is_zero() {
            continue;
        }
        let cs = crate::rational::format_rat(&c);
        let term = match d {
            0 => cs,
            1 => {
                if c.is_one() {
                    "x".into()
                } else {
                    format!("{cs}x")
                }
            }
            _ => {
                if c.is_one() {
                    format!("x^{d}")
                } else {
                    format!("{cs}x^{d}")
                }
            }
        };
        parts.push(term);
    }
    parts.join(" + ").replace("+ -", "- ")
}

/// g tensor b for unital commutative b: [x tensor a, y tensor a'] =
/// [x,y] tensor aa'. Basis index (i, p) -> i*b.dim + p. Inherits b's grading,
/// g's toral designation (when b's unit is a basis vector), and the product
/// form kappa tensor tau when g carries a form.
pub fn tensor(g: &SCAlgebra, b: &AssocTable) -> Result<SCAlgebra> {
    if !b.is_commutative() {
        return Err(Error::invalid(
            "tensor coefficients must be commutative for a Lie bracket",
        ));
    }
    let dim = g.dim * b.dim;
    let mut entries = Vec::new();
    for ((i, j), terms) in &g.brackets {
        for p in 0..b.dim {
            for q in 0..b.dim {
                if i == j && p >= q {
                    continue;
                }
                let prod = b.basis_product(p, q);
                if prod.is_empty() {
                    continue;
                }
                let mut out: Vec<(usize, Rat)> = Vec::new();
                for (k, c) in terms {
                    for (s, v) in prod {
                        out.push((k * b.dim + s, c * v));
                    }
                }
                entries.push((i * b.dim + p, j * b.dim + q, out));
            }
        }
    }
    let names: Vec<String> = (0..g.dim)
        .flat_map(|i| {
            let gn = g.basis_names[i].clone();
            (0..b.dim).map(move |p| format!("{gn}*{p}"))
        })
        .collect();
    // Names carry the coefficient label, not its index.
    let names: Vec<String> = names
        .into_iter()
        .enumerate()
        .map(|(idx, _)| {
            let i = idx / b.dim;
            let p = idx % b.dim;
            format!("{}({})", g.basis_names[i], b.names[p])
        })
        .collect();
    let mut out = SCAlgebra::new(format!("{}(x){}", g.name, b.name), dim, entries)?
        .with_names(names)?;
    if let Some(bg) = &b.grading {
        out.grading = Some(Grading {
            free_rank: bg.free_rank,
            torsion: bg.torsion.clone(),
            degrees: (0..g.dim)
                .flat_map(|_| bg.degrees.iter().cloned())
                .collect::<Vec<Degree>>(),
        });
    }
    if let (Some(t), Some(u)) = (&g.toral, b.unit_basis_index()) {
        out.toral = Some(t.iter().map(|i| i * b.dim + u).collect());
    }
    if let Some(f) = &g.form {
        let tau = b.trace_form();
        let mut form = Matrix::zeros(dim, dim);
        for i in 0..g.dim {
            for j in 0..g.dim {
                if f.get(i, j).is_zero() {
                    continue;
                }
                for p in 0..b.dim {
                    for q in 0..b.dim {
                        let v = f.get(i, j) * tau.get(p, q);
                        if !v.is_zero() {
                            form.set(i * b.dim + p, j * b.dim + q, v);
                        }
                    }
                }
            }
        }
        out.form = Some(form);
    }
    if g.is_perfect() && !out.is_perfect() {
        return Err(Error::invalid(
            "internal: tensor of a perfect algebra with a unital one lost perfectness",
        ));
    }
    Ok(out)
}

/// Restriction of scalars along a field extension table: the Q-algebra
/// structure on g tensor F.
pub fn restrict_scalars(g: &SCAlgebra, field: &AssocTable) -> Result<SCAlgebra> {
    let mut out = tensor(g, field)?;
    out.name = format!("Res[{}]({})", field.name, g.name);
    Ok(out)
}

/// sl_n(a): n x n matrices over a with trace in [a, a]. Basis order: the
/// grading subalgebra sl_n tensor 1 first (Cartan h_1..h_{n-1}, positive
/// matrix units by (j - i, i), then the mirrored negatives), then the same
/// sl_n layout tensored with each non-unit coefficient direction, then
/// E_nn tensor a basis of [a, a].
pub fn sl_n_over(a: &AssocTable, n: usize) -> Result<SCAlgebra> {
    if n < 2 {
        return Err(Error::invalid("sl_n_over needs n >= 2"));
    }
    let ad = a.dim;
    // Complement of span{1} in a: standard basis vectors away from the
    // echelon pivot of the unit.
    let mut unit_ech = Echelon::new(ad);
    unit_ech.insert_dense(&a.unit);
    let unit_pivot = unit_ech.pivot_columns()[0];
    let complement: Vec<usize> = (0..ad).filter(|p| *p != unit_pivot).collect();
    let comm = a.commutator_space();
    // Ambient coordinates: matrix position (i,j) times coefficient index p,
    // flattened as (i*n + j)*ad + p.
    let pos = |i: usize, j: usize, p: usize| (i * n + j) * ad + p;
    let embed = |i: usize, j: usize, coeff: &[Rat]| -> Vec<Rat> {
        let mut v = zero_vec(n * n * ad);
        for (p, c) in coeff.iter().enumerate() {
            if !c.is_zero() {
                v[pos(i, j, p)] = c.clone();
            }
        }
        v
    };
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut sl_layout: Vec<(String, Vec<(usize, usize, Rat)>)> = Vec::new();
    for i in 0..(n - 1) {
        sl_layout.push((
            format!("h{}", i + 1),
            vec![(i, i, rat(1)), (i + 1, i + 1, rat(-1))],
        ));
    }
    let mut offdiag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    offdiag.sort_by_key(|(i, j)| (j - i, *i));
    for &(i, j) in &offdiag {
        sl_layout.push((format!("E{}{}", i + 1, j + 1), vec![(i, j, rat(1))]));
    }
    for &(i, j) in &offdiag {
        sl_layout.push((format!("E{}{}", j + 1, i + 1), vec![(j, i, rat(1))]));
    }
    let coeff_label = |p: usize| a.names[p].clone();
    // sl_n tensor 1.
    for (nm, cells) in &sl_layout {
        let mut v = zero_vec(n * n * ad);
        for (i, j, c) in cells {
            for (p, u) in a.unit.iter().enumerate() {
                if !u.is_zero() {
                    v[pos(*i, *j, p)] += c * u;
                }
            }
        }
        basis.push(v);
        names.push(nm.clone());
    }
    // sl_n tensor complement directions.
    for &p in &complement {
        for (nm, cells) in &sl_layout {
            let mut v = zero_vec(n * n * ad);
            for (i, j, c) in cells {
                v[pos(*i, *j, p)] += c.clone();
            }
            basis.push(v);
            names.push(format!("{nm}({})", coeff_label(p)));
        }
    }
    // E_nn tensor [a, a].
    for (k, c) in comm.basis().iter().enumerate() {
        basis.push(embed(n - 1, n - 1, c));
        names.push(format!("E{}{}(c{})", n, n, k + 1));
    }
    let dim = basis.len();
    let solver = CoordSolver::new(n * n * ad, &basis)?;
    // Bracket of two coefficient matrices X, Y: (XY - YX)_{il} =
    // sum_j X_{ij} Y_{jl} - Y_{ij} X_{jl} in a.
    let bracket_ambient = |x: &[Rat], y: &[Rat]| -> Vec<Rat> {
        let mut out = zero_vec(n * n * ad);
        for i in 0..n {
            for l in 0..n {
                let mut acc = zero_vec(ad);
                for j in 0..n {
                    let xij = &x[pos(i, j, 0)..=pos(i, j, ad - 1)];
                    let yjl = &y[pos(j, l, 0)..=pos(j, l, ad - 1)];
                    let yij = &y[pos(i, j, 0)..=pos(i, j, ad - 1)];
                    let xjl = &x[pos(j, l, 0)..=pos(j, l, ad - 1)];
                    let fwd = a.product(xij, yjl);
                    let bwd = a.product(yij, xjl);
                    for p in 0..ad {
                        acc[p] += &fwd[p] - &bwd[p];
                    }
                }
                for (p, c) in acc.into_iter().enumerate() {
                    if !c.is_zero() {
                        out[pos(i, l, p)] = c;
                    }
                }
            }
        }
        out
    };
    let mut entries = Vec::new();
    for x in 0..dim {
        for y in (x + 1)..dim {
            let w = bracket_ambient(&basis[x], &basis[y]);
            if vec_is_zero(&w) {
                continue;
            }
            let coords = solver.coordinates(&w)?;
            let terms: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            entries.push((x, y, terms));
        }
    }
    let mut out = SCAlgebra::new(format!("sl{n}({})", a.name), dim, entries)?
        .with_names(names)?;
    out.toral = Some((0..(n - 1)).collect());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::weight_summary;

    #[test]
    fn heisenberg_family_shapes() {
        assert!(heisenberg(0).is_err());
        let h1 = heisenberg(1).unwrap();
        h1.validate().unwrap();
        assert_eq!(h1.dim, 3);
        assert_eq!(h1.centre().dim(), 1);
        let h2 = heisenberg(2).unwrap();
        h2.validate().unwrap();
        assert_eq!(h2.dim, 5);
        assert_eq!(h2.derived().dim(), 1);
        assert_eq!(h2.centre().dim(), 1);
        let osc = oscillator();
        osc.validate().unwrap();
        let h = Subspace::from_vectors(4, vec![unit_vec(4, 0)]);
        let w = weight_summary(&osc.weight_decomposition(&h).unwrap());
        assert_eq!(w, vec![(vec![rat(-1)], 1), (vec![rat(0)], 2), (vec![rat(1)], 1)]);
    }

    #[test]
    fn classical_dimensions_and_root_counts() {
        let cases = [
            (ClassicalType::A, 1, 3, 2),
            (ClassicalType::A, 2, 8, 6),
            (ClassicalType::B, 2, 10, 8),
            (ClassicalType::C, 2, 10, 8),
            (ClassicalType::A, 3, 15, 12),
            (ClassicalType::C, 3, 21, 18),
            (ClassicalType::D, 3, 15, 12),
        ];
        for (ty, rank, dim, roots) in cases {
            let g = classical(ty, rank).unwrap();
            g.validate().unwrap();
            assert_eq!(g.dim, dim, "{ty:?}{rank} dimension");
            assert!(g.is_perfect(), "{ty:?}{rank} perfect");
            assert_eq!(g.centre().dim(), 0);
            let h = g.toral_subspace().unwrap();
            let decomp = g.weight_decomposition(&h).unwrap();
            let nonzero: usize = decomp
                .blocks
                .iter()
                .filter(|b| !b.values.iter().all(|v| v.is_zero()))
                .count();
            assert_eq!(nonzero, roots, "{ty:?}{rank} root count");
            for b in &decomp.blocks {
                if b.values.iter().all(|v| v.is_zero()) {
                    assert_eq!(b.space.dim(), rank);
                } else {
                    assert_eq!(b.space.dim(), 1);
                }
            }
        }
        assert!(classical(ClassicalType::A, 0).is_err());
        assert!(classical(ClassicalType::D, 1).is_err());
        assert!(classical(ClassicalType::A, 10).is_err());
    }

    #[test]
    fn classical_a1_matches_sl2() {
        let g = classical(ClassicalType::A, 1).unwrap();
        assert_eq!(g.dim, 3);
        // Basis h, x[2], x[-2]; check sl2 relations.
        let h = unit_vec(3, 0);
        let e = unit_vec(3, 1);
        let f = unit_vec(3, 2);
        assert_eq!(g.bracket(&h, &e), crate::linalg::matrix::vec_scale(&e, &rat(2)));
        assert_eq!(g.bracket(&h, &f), crate::linalg::matrix::vec_scale(&f, &rat(-2)));
        let ef = g.bracket(&e, &f);
        // [e, f] is a nonzero Cartan element.
        assert!(!vec_is_zero(&ef));
        assert!(g.toral_subspace().unwrap().contains(&ef));
        // Killing form attached and invariant.
        assert!(g.form.is_some());
        assert_eq!(*g.form.as_ref().unwrap().get(0, 0), rat(8));
    }

    #[test]
    fn assoc_tables_validate() {
        let tp = truncated_poly(3).unwrap();
        tp.validate().unwrap();
        assert!(tp.is_commutative());
        assert_eq!(tp.centre().dim(), 3);
        let ga = group_algebra(&[4]).unwrap();
        ga.validate().unwrap();
        assert!(ga.is_commutative());
        let ga2 = group_algebra(&[2, 2]).unwrap();
        ga2.validate().unwrap();
        assert_eq!(ga2.dim, 4);
        let m2 = matrix_assoc(2).unwrap();
        m2.validate().unwrap();
        assert!(!m2.is_commutative());
        assert_eq!(m2.centre().dim(), 1);
        assert!(m2.unit_basis_index().is_none());
        assert_eq!(m2.commutator_space().dim(), 3);
        let f = field_ext(&Poly::from_coeffs(vec![rat(-2), rat(0), rat(1)])).unwrap();
        f.validate().unwrap();
        assert!(f.is_commutative());
        // x * x = 2 in Q(sqrt 2).
        assert_eq!(
            f.product(&unit_vec(2, 1), &unit_vec(2, 1)),
            vec![rat(2), rat(0)]
        );
        // Reducible polynomial rejected.
        assert!(field_ext(&Poly::from_coeffs(vec![rat(-1), rat(0), rat(1)])).is_err());
    }

    #[test]
    fn twisted_group_ring_cocycle_checks() {
        // Z/2 with t*t = -1 gives Q(i) as a Z/2-graded ring.
        let qi = twisted_group_ring(&[2], |g, h| {
            if g[0] == 1 && h[0] == 1 {
                rat(-1)
            } else {
                rat(1)
            }
        })
        .unwrap();
        qi.validate().unwrap();
        assert_eq!(
            qi.product(&unit_vec(2, 1), &unit_vec(2, 1)),
            vec![rat(-1), rat(0)]
        );
        // Non-cocycle rejected: twist(t,t) = 0 forbidden.
        assert!(twisted_group_ring(&[2], |g, h| {
            if g[0] == 1 && h[0] == 1 {
                rat(0)
            } else {
                rat(1)
            }
        })
        .is_err());
        // Unnormalized twist rejected.
        assert!(twisted_group_ring(&[2], |_, _| rat(2)).is_err());
    }

    #[test]
    fn tensor_inherits_structure() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let t = tensor(&sl2, &truncated_poly(2).unwrap()).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dim, 6);
        assert!(t.is_perfect());
        assert!(t.grading.is_some());
        assert_eq!(t.toral, Some(vec![0]));
        // Tensor with Q is the algebra itself.
        let q = truncated_poly(1).unwrap();
        let same = tensor(&sl2, &q).unwrap();
        assert_eq!(same.dim, 3);
        assert_eq!(same.brackets, sl2.brackets);
        // Noncommutative coefficients rejected.
        assert!(tensor(&sl2, &matrix_assoc(2).unwrap()).is_err());
        // Graded tensor validates its grading.
        let tg = tensor(&sl2, &group_algebra(&[3]).unwrap()).unwrap();
        tg.validate().unwrap();
        assert_eq!(tg.grading.as_ref().unwrap().torsion, vec![3]);
    }

    #[test]
    fn restriction_of_scalars_dims() {
        let sl2 = classical(ClassicalType::A, 1).unwrap();
        let f = field_ext(&Poly::from_coeffs(vec![rat(-2), rat(0), rat(1)])).unwrap();
        let r = restrict_scalars(&sl2, &f).unwrap();
        r.validate().unwrap();
        assert_eq!(r.dim, 6);
        assert!(r.is_perfect());
        assert_eq!(r.centre().dim(), 0);
    }

    #[test]
    fn sl_n_over_shapes() {
        // Commutative coefficients: sl_2(Q[t]/(t^2)) = sl2 tensor it.
        let s = sl_n_over(&truncated_poly(2).unwrap(), 2).unwrap();
        s.validate().unwrap();
        assert_eq!(s.dim, 6);
        assert!(s.is_perfect());
        // Noncommutative: sl_3(M_2(Q)) has dim 8*4 + 3 = 35.
        let s = sl_n_over(&matrix_assoc(2).unwrap(), 3).unwrap();
        s.validate().unwrap();
        assert_eq!(s.dim, 35);
        assert!(s.is_perfect());
        assert_eq!(s.centre().dim(), 0);
        // sl_2(Q) = sl2.
        let s = sl_n_over(&truncated_poly(1).unwrap(), 2).unwrap();
        assert_eq!(s.dim, 3);
        s.validate().unwrap();
    }
}
