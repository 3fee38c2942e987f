//! Named verification suites. Each suite states one mathematical claim,
//! runs it over a fixed list of instances, and reports a pass/fail line per
//! check. Everything is exact; a suite passes only if every line passes.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::{
    abelian, classical, field_ext, group_algebra, heisenberg, matrix_assoc, oscillator, sl_n_over,
    tensor, truncated_poly, truncated_poly_pair, AssocTable, ClassicalType,
};
use crate::centroid::{
    centroid, centroid_cap_der, induce_quotient_centroid, toral_centroid, vanishing_ideal,
};
use crate::cohom::{
    central_extension, coboundary, decompose_extension_centroid, der_tensor_decomposition_check,
    h2_trivial_coeffs, sigma_s_extension, skew_derivations, validate_cocycle, Cocycle,
    SkewDerivationSpace,
};
use crate::error::{Error, Result};
use crate::lie::{Grading, SCAlgebra};
use crate::linalg::matrix::{unit_vec, Matrix};
use crate::linalg::subspace::Subspace;
use crate::loopkit::{
    base_root_data, centroid_membership, toralcor_check, toralcor_check_loop,
    window_component_exclusion, LoopAlgebra, LoopCentroidCandidate, LoopElement, WindowExclusion,
};
use crate::poly::Poly;
use crate::rational::{rat, Rat};
use crate::rootgraded::{
    isotypic_decomposition, sl_n_over_grading, tensor_grading, verify_cent_rg,
};

/// One checked instance inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// The mathematical statement the suite checks.
    pub statement: String,
    pub lines: Vec<CheckLine>,
    pub passed: bool,
}

pub const SUITES: [&str; 13] = [
    "easy",
    "elem",
    "toral",
    "toralcor",
    "centkm-finite",
    "exaff",
    "remkm",
    "xxx",
    "centprop",
    "lemcr",
    "centrg",
    "centless",
    "dernot",
];

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "easy" => suite_easy(),
        "elem" => suite_elem(),
        "toral" => suite_toral(),
        "toralcor" => suite_toralcor(),
        "centkm-finite" => suite_centkm_finite(),
        "exaff" => suite_exaff(),
        "remkm" => suite_remkm(),
        "xxx" => suite_xxx(),
        "centprop" => suite_centprop(),
        "lemcr" => suite_lemcr(),
        "centrg" => suite_centrg(),
        "centless" => suite_centless(),
        "dernot" => suite_dernot(),
        _ => Err(Error::invalid(format!(
            "unknown suite '{name}'; available: {}",
            SUITES.join(", ")
        ))),
    }
}

struct Suite {
    suite: String,
    statement: String,
    lines: Vec<CheckLine>,
}

impl Suite {
    fn new(suite: &str, statement: &str) -> Self {
        Suite {
            suite: suite.to_string(),
            statement: statement.to_string(),
            lines: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn finish(self) -> SuiteReport {
        let passed = self.lines.iter().all(|l| l.pass);
        SuiteReport {
            suite: self.suite,
            statement: self.statement,
            lines: self.lines,
            passed,
        }
    }
}

fn sl2() -> Result<SCAlgebra> {
    classical(ClassicalType::A, 1)
}

fn simple_algebras() -> Result<Vec<(&'static str, SCAlgebra)>> {
    Ok(vec![
        ("sl2", classical(ClassicalType::A, 1)?),
        ("sl3", classical(ClassicalType::A, 2)?),
        ("sp4", classical(ClassicalType::C, 2)?),
    ])
}

fn lex_pos(w: &[Rat]) -> bool {
    for c in w {
        if !c.is_zero() {
            return *c > Rat::zero();
        }
    }
    false
}

/// Chevalley pairs (e, f) for the simple roots of the lexicographic positive
/// system: the lex-positive roots not expressible as a sum of two of them.
fn simple_pairs(a: &SCAlgebra) -> Result<Vec<(Vec<Rat>, Vec<Rat>)>> {
    let rd = base_root_data(a)?;
    let mut roots: Vec<Vec<Rat>> = Vec::new();
    for w in &rd.weight_of {
        if w.iter().any(|c| !c.is_zero()) && !roots.contains(w) {
            roots.push(w.clone());
        }
    }
    let positive: Vec<Vec<Rat>> = roots.iter().filter(|w| lex_pos(w)).cloned().collect();
    let mut pairs = Vec::new();
    for alpha in &positive {
        let decomposable = positive.iter().any(|b| {
            positive
                .iter()
                .any(|c| (0..alpha.len()).all(|t| &b[t] + &c[t] == alpha[t]))
        });
        if decomposable {
            continue;
        }
        let neg: Vec<Rat> = alpha.iter().map(|c| -c.clone()).collect();
        let e = (0..a.dim)
            .find(|k| rd.weight_of[*k] == *alpha)
            .ok_or_else(|| Error::invalid("missing root vector"))?;
        let f = (0..a.dim)
            .find(|k| rd.weight_of[*k] == neg)
            .ok_or_else(|| Error::invalid("missing opposite root vector"))?;
        pairs.push((unit_vec(a.dim, e), unit_vec(a.dim, f)));
    }
    Ok(pairs)
}

/// id (x) (left multiplication by basis element k of B) in the tensor layout
/// where x_i (x) b_p sits at index i * dim B + p.
fn id_tensor_mult(g_dim: usize, b: &AssocTable, k: usize) -> Matrix {
    let n = g_dim * b.dim;
    let mut m = Matrix::zeros(n, n);
    for i in 0..g_dim {
        for p in 0..b.dim {
            for (q, c) in &b.products[k][p] {
                let cur = m.get(i * b.dim + q, i * b.dim + p).clone();
                m.set(i * b.dim + q, i * b.dim + p, cur + c);
            }
        }
    }
    m
}

fn suite_easy() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "easy",
        "dim Cent(heisenberg(n)) = 2n+1 and the vanishing ideal of the derived \
         subalgebra has dimension 2n; split simple algebras have Cent = Q id; \
         dim(Cent cap Der) = dim(L/[L,L]) * dim Z(L)",
    );
    for (name, g) in simple_algebras()? {
        let d = centroid(&g)?.dim();
        s.check(format!("Cent({name}) = Q id"), d == 1, format!("dim {d}"));
    }
    for n in 1..=3usize {
        let h = heisenberg(n)?;
        let d = centroid(&h)?.dim();
        s.check(
            format!("Cent(heisenberg({n}))"),
            d == 2 * n + 1,
            format!("dim {d}, expected {}", 2 * n + 1),
        );
        let v = vanishing_ideal(&h, &h.derived())?.len();
        s.check(
            format!("V([L,L]) inside Cent(heisenberg({n}))"),
            v == 2 * n,
            format!("dim {v}, expected {}", 2 * n),
        );
    }
    let d = centroid(&abelian(3))?.dim();
    s.check("Cent(abelian(3)) = End(Q^3)", d == 9, format!("dim {d}"));
    let insts: Vec<(String, SCAlgebra)> = vec![
        ("heisenberg(1)".into(), heisenberg(1)?),
        ("heisenberg(2)".into(), heisenberg(2)?),
        ("oscillator".into(), oscillator()),
        ("sl2".into(), sl2()?),
        ("abelian(2)".into(), abelian(2)),
        (
            "sl2 (x) Q[t]/(t^2)".into(),
            tensor(&sl2()?, &truncated_poly(2)?)?,
        ),
    ];
    for (name, a) in insts {
        let got = centroid_cap_der(&a)?.len();
        let cod = a.dim - a.derived().dim();
        let zc = a.centre().dim();
        s.check(
            format!("Cent cap Der on {name}"),
            got == cod * zc,
            format!("dim {got} = {cod} * {zc}"),
        );
    }
    Ok(s.finish())
}

fn suite_elem() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "elem",
        "tensor law: for split simple g and unital commutative associative B, \
         Cent(g (x) B) = id (x) {multiplications by B}, of dimension dim B",
    );
    let mut coords: Vec<AssocTable> = Vec::new();
    for k in 1..=4 {
        coords.push(truncated_poly(k)?);
    }
    for m in 1..=4 {
        coords.push(group_algebra(&[m])?);
    }
    coords.push(field_ext(&Poly::from_coeffs(vec![rat(-2), rat(0), rat(1)]))?);
    for (gname, g) in simple_algebras()? {
        for b in &coords {
            let a = tensor(&g, b)?;
            let cent = centroid(&a)?;
            let dim_ok = cent.dim() == b.dim;
            let expected = Subspace::from_vectors(
                a.dim * a.dim,
                (0..b.dim)
                    .map(|k| id_tensor_mult(g.dim, b, k).vectorize())
                    .collect(),
            );
            let shape_ok = cent.subspace() == expected;
            s.check(
                format!("Cent({gname} (x) {})", b.name),
                dim_ok && shape_ok,
                format!(
                    "dim {} (expected {}), action span {}",
                    cent.dim(),
                    b.dim,
                    if shape_ok { "= id (x) B" } else { "mismatch" }
                ),
            );
        }
    }
    Ok(s.finish())
}

fn suite_toral() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "toral",
        "toral path: a centroid map is determined by its restriction to the \
         zero weight space of a toral subalgebra; the reconstruction matches \
         the brute-force solve",
    );
    for (name, g) in simple_algebras()? {
        let h = g
            .toral_subspace()
            .ok_or_else(|| Error::invalid("classical algebra without toral part"))?;
        let tc = toral_centroid(&g, &h)?;
        let brute = centroid(&g)?.dim();
        s.check(
            format!("{name}: toral path = brute"),
            tc.used_toral_path && tc.restriction_injective && tc.basis.dim() == brute,
            format!("toral dim {}, brute dim {brute}", tc.basis.dim()),
        );
    }
    let osc = oscillator();
    let h = Subspace::from_vectors(4, vec![unit_vec(4, 0)]);
    let tc = toral_centroid(&osc, &h)?;
    let brute = centroid(&osc)?.dim();
    s.check(
        "oscillator: toral path = brute",
        tc.used_toral_path && tc.basis.dim() == brute && brute == 2,
        format!("toral dim {}, brute dim {brute}", tc.basis.dim()),
    );
    let a = tensor(&sl2()?, &group_algebra(&[2])?)?;
    let h = Subspace::from_vectors(a.dim, vec![unit_vec(a.dim, 0)]);
    let tc = toral_centroid(&a, &h)?;
    let brute = centroid(&a)?.dim();
    s.check(
        "sl2 (x) Q[Z/2]: toral path = brute",
        tc.used_toral_path && tc.restriction_injective && tc.basis.dim() == brute && brute == 2,
        format!("toral dim {}, brute dim {brute}", tc.basis.dim()),
    );
    Ok(s.finish())
}

fn suite_toralcor() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "toralcor",
        "toral corollary: coroots inside the toral part, a connected generator \
         pattern, and one-dimensional weight spaces force Cent = Q id; every \
         failed hypothesis carries a witness",
    );
    for (name, rank, g) in [
        ("sl3", 2usize, classical(ClassicalType::A, 2)?),
        ("sp4", 2, classical(ClassicalType::C, 2)?),
    ] {
        let pairs = simple_pairs(&g)?;
        s.check(
            format!("{name}: simple pair count"),
            pairs.len() == rank,
            format!("{} pairs", pairs.len()),
        );
        let toral = g
            .toral_subspace()
            .ok_or_else(|| Error::invalid("classical algebra without toral part"))?;
        let rep = toralcor_check(&g, &pairs, &toral)?;
        let hyp = rep.hypothesis_i.passed && rep.hypothesis_ii.passed && rep.hypothesis_iii.passed;
        let concl = rep.conclusion.as_ref();
        let ok = hyp
            && concl.map(|c| c.centroid_dim) == Some(1)
            && concl.and_then(|c| c.cross_checked) == Some(true);
        s.check(
            format!("{name}: hypotheses and Cent = Q id"),
            ok,
            match concl {
                Some(c) => format!("centroid dim {}, cross-checked {:?}", c.centroid_dim, c.cross_checked),
                None => "no conclusion".to_string(),
            },
        );
    }
    let osc = oscillator();
    let gens = vec![(unit_vec(4, 1), unit_vec(4, 2))];
    let toral = Subspace::from_vectors(4, vec![unit_vec(4, 0)]);
    let rep = toralcor_check(&osc, &gens, &toral)?;
    s.check(
        "oscillator: coroot condition correctly fails",
        !rep.hypothesis_i.passed && rep.conclusion.is_none(),
        rep.hypothesis_i.witness.unwrap_or_default(),
    );
    let k = LoopAlgebra::new(sl2()?, None, true, false)?;
    let gens = vec![
        (
            LoopElement::monomial(0, unit_vec(3, 1)),
            LoopElement::monomial(0, unit_vec(3, 2)),
        ),
        (
            LoopElement::monomial(1, unit_vec(3, 2)),
            LoopElement::monomial(-1, unit_vec(3, 1)),
        ),
    ];
    let rep = toralcor_check_loop(&k, &gens)?;
    s.check(
        "loop + c without d: degree separation correctly fails",
        !rep.hypothesis_iii.passed && rep.conclusion.is_none(),
        rep.hypothesis_iii.witness.unwrap_or_default(),
    );
    Ok(s.finish())
}

fn suite_centkm_finite() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "centkm-finite",
        "finite type: split simple algebras have one-dimensional centroid, \
         certified by the toral corollary and the brute solve; a disconnected \
         generator pattern is refused",
    );
    for (name, rank, g) in [
        ("A1", 1usize, classical(ClassicalType::A, 1)?),
        ("A2", 2, classical(ClassicalType::A, 2)?),
        ("A3", 3, classical(ClassicalType::A, 3)?),
        ("C2", 2, classical(ClassicalType::C, 2)?),
    ] {
        let pairs = simple_pairs(&g)?;
        let toral = g
            .toral_subspace()
            .ok_or_else(|| Error::invalid("classical algebra without toral part"))?;
        let rep = toralcor_check(&g, &pairs, &toral)?;
        let concl = rep.conclusion.as_ref();
        let ok = pairs.len() == rank
            && concl.map(|c| c.centroid_dim) == Some(1)
            && concl.and_then(|c| c.cross_checked) == Some(true);
        s.check(
            format!("{name}: Cent = Q id"),
            ok,
            match concl {
                Some(c) => format!(
                    "{} simple pairs, centroid dim {}, cross-checked {:?}",
                    pairs.len(),
                    c.centroid_dim,
                    c.cross_checked
                ),
                None => "no conclusion".to_string(),
            },
        );
    }
    let two = sl2()?.direct_sum(&sl2()?);
    let gens = vec![
        (unit_vec(6, 1), unit_vec(6, 2)),
        (unit_vec(6, 4), unit_vec(6, 5)),
    ];
    let toral = Subspace::from_vectors(6, vec![unit_vec(6, 0), unit_vec(6, 3)]);
    let rep = toralcor_check(&two, &gens, &toral)?;
    s.check(
        "sl2 + sl2: disconnected pattern correctly refused",
        rep.hypothesis_i.passed && !rep.hypothesis_ii.passed && rep.conclusion.is_none(),
        rep.hypothesis_ii.witness.unwrap_or_default(),
    );
    Ok(s.finish())
}

fn suite_exaff() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "exaff",
        "affine loops: the centroid membership family is the scalars, plus \
         d -> c when both are present; multiplication by t^q is rejected with \
         a symbolic witness and excluded by window certificates; on the \
         centreless loop t^q is a genuine centroid element and no exclusion \
         certificate appears",
    );
    let k = LoopAlgebra::new(sl2()?, None, true, false)?;
    let khat = LoopAlgebra::untwisted_affine(sl2()?)?;
    let free = LoopAlgebra::new(sl2()?, None, false, false)?;

    let rep = centroid_membership(&k, &LoopCentroidCandidate::scalar(rat(1)))?;
    s.check(
        "K = loop + c: identity is a member",
        rep.member,
        format!("{} equation families", rep.families.len()),
    );
    for q in [-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5] {
        let mut z = BTreeMap::new();
        z.insert(q, rat(1));
        let rep = centroid_membership(&k, &LoopCentroidCandidate::multiplication(z))?;
        s.check(
            format!("K: z = t^{q} rejected"),
            !rep.member && rep.witness.is_some(),
            rep.witness.unwrap_or_default(),
        );
    }
    let mut z = BTreeMap::new();
    z.insert(0i64, rat(3));
    let cand = LoopCentroidCandidate {
        z,
        lambda: rat(3),
        mu: rat(5),
    };
    let rep = centroid_membership(&khat, &cand)?;
    s.check(
        "K^ = loop + c + d: lambda id + mu (d -> c) is a member",
        rep.member,
        "lambda = 3, mu = 5".to_string(),
    );
    let cand = LoopCentroidCandidate {
        z: BTreeMap::new(),
        lambda: Rat::zero(),
        mu: rat(1),
    };
    let rep = centroid_membership(&khat, &cand)?;
    s.check(
        "K^: the pure d -> c map is a member",
        rep.member,
        "lambda = 0, mu = 1".to_string(),
    );
    for q in 1..=5i64 {
        for (lname, l) in [("K^", &khat), ("K", &k)] {
            let mut both = true;
            let mut details = Vec::new();
            for sq in [q, -q] {
                match window_component_exclusion(l, sq, 5)? {
                    WindowExclusion::Excluded {
                        degree, window, ..
                    } => details.push(format!("degree {degree} excluded at window {window}")),
                    other => {
                        both = false;
                        details.push(format!("{other:?}"));
                    }
                }
            }
            s.check(
                format!("{lname}: degree +-{q} component excluded"),
                both,
                details.join("; "),
            );
        }
    }
    for q in 1..=5i64 {
        let mut member_both = true;
        let mut no_cert_both = true;
        let mut dims = Vec::new();
        for sq in [q, -q] {
            let mut z = BTreeMap::new();
            z.insert(sq, rat(1));
            let rep = centroid_membership(&free, &LoopCentroidCandidate::multiplication(z))?;
            member_both &= rep.member;
            match window_component_exclusion(&free, sq, 5)? {
                WindowExclusion::NoCertificate { solution_dim, .. } => {
                    dims.push(solution_dim.to_string());
                    no_cert_both &= solution_dim >= 1;
                }
                other => {
                    no_cert_both = false;
                    dims.push(format!("{other:?}"));
                }
            }
        }
        s.check(
            format!("centreless loop: t^(+-{q}) stays a member, no exclusion"),
            member_both && no_cert_both,
            format!("solution dims [{}]", dims.join(", ")),
        );
    }
    Ok(s.finish())
}

fn suite_remkm() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "remkm",
        "affine algebra through the toral corollary: Cent(loop + c + d) is the \
         two-parameter family lambda id + mu (d -> c); dropping d breaks the \
         degree separation; an order-2 twist restricts multiplications to even \
         degrees and higher orders are refused",
    );
    let khat = LoopAlgebra::untwisted_affine(sl2()?)?;
    let gens = vec![
        (
            LoopElement::monomial(0, unit_vec(3, 1)),
            LoopElement::monomial(0, unit_vec(3, 2)),
        ),
        (
            LoopElement::monomial(1, unit_vec(3, 2)),
            LoopElement::monomial(-1, unit_vec(3, 1)),
        ),
    ];
    let rep = toralcor_check_loop(&khat, &gens)?;
    let hyp = rep.hypothesis_i.passed && rep.hypothesis_ii.passed && rep.hypothesis_iii.passed;
    let concl = rep.conclusion.as_ref();
    let ok = hyp
        && concl.map(|c| (c.quotient_dim, c.centralizer_dim, c.centroid_dim)) == Some((1, 1, 2))
        && concl.and_then(|c| c.cross_checked) == Some(true);
    s.check(
        "K^: affine generator pattern gives the 2-dim centroid",
        ok,
        match concl {
            Some(c) => format!(
                "quotient dim {}, centralizer dim {}, centroid dim {}",
                c.quotient_dim, c.centralizer_dim, c.centroid_dim
            ),
            None => "no conclusion".to_string(),
        },
    );
    let k = LoopAlgebra::new(sl2()?, None, true, false)?;
    let rep = toralcor_check_loop(&k, &gens)?;
    s.check(
        "K without d: separation hypothesis correctly fails",
        !rep.hypothesis_iii.passed && rep.conclusion.is_none(),
        rep.hypothesis_iii.witness.unwrap_or_default(),
    );
    // Order-2 twist by the involution h -> -h, e -> -f, f -> -e.
    let mut sigma = Matrix::zeros(3, 3);
    sigma.set(0, 0, rat(-1));
    sigma.set(2, 1, rat(-1));
    sigma.set(1, 2, rat(-1));
    let twisted = LoopAlgebra::new(sl2()?, Some(sigma), false, false)?;
    let mut z = BTreeMap::new();
    z.insert(2i64, rat(1));
    let rep = centroid_membership(&twisted, &LoopCentroidCandidate::multiplication(z))?;
    s.check(
        "twisted loop: multiplication by t^2 is a member",
        rep.member,
        format!("{} equation families", rep.families.len()),
    );
    let mut z = BTreeMap::new();
    z.insert(1i64, rat(1));
    let odd = centroid_membership(&twisted, &LoopCentroidCandidate::multiplication(z));
    s.check(
        "twisted loop: multiplication by t rejected outright",
        odd.is_err(),
        match odd {
            Err(e) => e.to_string(),
            Ok(_) => "unexpectedly accepted".to_string(),
        },
    );
    let mut ab = abelian(2);
    ab.toral = Some(vec![0]);
    ab.form = Some(Matrix::identity(2));
    let mut rot = Matrix::zeros(2, 2);
    rot.set(0, 1, rat(-1));
    rot.set(1, 0, rat(1));
    let refused = LoopAlgebra::new(ab, Some(rot), false, false);
    s.check(
        "order-4 twist refused as out of scope",
        matches!(refused, Err(Error::Limit(_))),
        match refused {
            Err(e) => e.to_string(),
            Ok(_) => "unexpectedly accepted".to_string(),
        },
    );
    Ok(s.finish())
}

fn suite_xxx() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "xxx",
        "central extension centroids decompose into blocks (chi, psi, eta) with \
         sigma(x, chi y) = psi([x,y]) + eta(sigma(x,y)) and reassemble exactly; \
         for a split extension of a simple base by Q^m the centroid has \
         dimension 1 + m^2",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(20260814);
    for (gname, g) in [("sl2", sl2()?), ("sl3", classical(ClassicalType::A, 2)?)] {
        for m in 1..=2usize {
            for inst in 0..5 {
                let mut f = Matrix::zeros(m, g.dim);
                for r in 0..m {
                    for c in 0..g.dim {
                        f.set(r, c, rat(rng.gen_range(-3..=3)));
                    }
                }
                let sigma = coboundary(&g, &f)?;
                let valid = validate_cocycle(&g, &sigma)?.valid;
                let decs = decompose_extension_centroid(&g, &sigma)?;
                let expected = 1 + m * m;
                s.check(
                    format!("{gname}, m = {m}, coboundary #{inst}"),
                    valid && decs.len() == expected,
                    format!("{} decompositions, expected {expected}", decs.len()),
                );
            }
        }
    }
    let zero = Cocycle::zero(3, 1);
    let decs = decompose_extension_centroid(&sl2()?, &zero)?;
    s.check(
        "sl2, zero cocycle",
        decs.len() == 2,
        format!("{} decompositions, expected 2", decs.len()),
    );
    Ok(s.finish())
}

fn suite_centprop() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "centprop",
        "for the central extension by sigma_S, S a space of homogeneous skew \
         derivations of a graded algebra with invariant form, the evaluation \
         hypothesis forces every centroid chi block into degree zero; when the \
         hypothesis fails the conclusion is left unclaimed",
    );
    let mut g = sl2()?;
    g.grading = Some(Grading {
        free_rank: 1,
        torsion: vec![],
        degrees: vec![vec![0], vec![1], vec![-1]],
    });
    g.validate()?;
    let skew = skew_derivations(&g)?;
    s.check(
        "graded sl2: skew derivation space",
        skew.dim() == 3,
        format!("dim {}", skew.dim()),
    );
    let zero_part: Vec<_> = skew
        .basis
        .iter()
        .filter(|(d, _)| d == &vec![0])
        .cloned()
        .collect();
    let s0 = SkewDerivationSpace {
        graded_dual_dims: [(vec![0i64], zero_part.len())].into_iter().collect(),
        basis: zero_part,
    };
    let out = sigma_s_extension(&g, &s0)?;
    let cdim = centroid(&out.extension)?.dim();
    s.check(
        "S = degree-zero part: concentration holds",
        out.centprop.hypothesis_holds
            && out.centprop.passed == Some(true)
            && out.extension.dim == 4
            && cdim == 2,
        format!(
            "extension dim {}, centroid dim {cdim}, passed {:?}",
            out.extension.dim, out.centprop.passed
        ),
    );
    let full = sigma_s_extension(&g, &skew)?;
    let valid = validate_cocycle(&g, &full.cocycle)?.valid;
    s.check(
        "S = all skew derivations: sigma_S is a valid cocycle",
        valid && full.extension.dim == 6,
        format!("extension dim {}", full.extension.dim),
    );
    let empty = SkewDerivationSpace {
        basis: vec![],
        graded_dual_dims: BTreeMap::new(),
    };
    let out = sigma_s_extension(&g, &empty)?;
    s.check(
        "S = 0: hypothesis fails, conclusion honestly unclaimed",
        !out.centprop.hypothesis_holds && out.centprop.passed.is_none(),
        out.centprop.reason.clone(),
    );
    let mut t3 = tensor(&sl2()?, &group_algebra(&[3])?)?;
    t3.form = Some(t3.killing_form());
    t3.validate()?;
    let skew3 = skew_derivations(&t3)?;
    let out = sigma_s_extension(&t3, &skew3)?;
    s.check(
        "torsion-graded input: hypothesis inapplicable",
        !out.centprop.hypothesis_holds && out.centprop.passed.is_none(),
        out.centprop.reason.clone(),
    );
    Ok(s.finish())
}

fn suite_lemcr() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "lemcr",
        "block scalarity: the algebra decomposes into isotypic blocks V_k (x) A_k \
         under the embedded split simple subalgebra, and every centroid element \
         acts as id (x) psi_k on each block",
    );
    {
        let g = sl2()?;
        let b = truncated_poly(2)?;
        let a = tensor(&g, &b)?;
        let (imgs, toral) = tensor_grading(&g, &b)?;
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        let shape = m.blocks.len() == 1
            && m.blocks[0].module_dim == 3
            && m.blocks[0].multiplicity == 2;
        s.check(
            "sl2 (x) Q[t]/(t^2): one adjoint block",
            shape,
            format!(
                "blocks {:?}",
                m.blocks
                    .iter()
                    .map(|b| (b.module_dim, b.multiplicity))
                    .collect::<Vec<_>>()
            ),
        );
        s.check(
            "sl2 (x) Q[t]/(t^2): block maps per centroid element",
            m.block_maps.len() == m.centroid.dim() && m.centroid.dim() == 2,
            format!("{} centroid maps, all block scalar", m.centroid.dim()),
        );
    }
    {
        let a = sl_n_over(&matrix_assoc(2)?, 3)?;
        let (imgs, toral) = sl_n_over_grading(3, a.dim);
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        let mut shapes: Vec<(usize, usize)> = m
            .blocks
            .iter()
            .map(|b| (b.module_dim, b.multiplicity))
            .collect();
        shapes.sort();
        s.check(
            "sl3(M2): adjoint block (8, 4) + trivial block (1, 3)",
            shapes == vec![(1, 3), (8, 4)] && m.trivial.is_some(),
            format!("blocks {shapes:?}"),
        );
        s.check(
            "sl3(M2): block maps per centroid element",
            m.block_maps.len() == m.centroid.dim() && m.centroid.dim() == 1,
            format!("{} centroid maps, all block scalar", m.centroid.dim()),
        );
    }
    {
        let g = sl2()?;
        let b = group_algebra(&[2])?;
        let a = tensor(&g, &b)?;
        let (imgs, toral) = tensor_grading(&g, &b)?;
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        s.check(
            "sl2 (x) Q[Z/2]: one adjoint block, two block-scalar maps",
            m.blocks.len() == 1
                && m.blocks[0].multiplicity == 2
                && m.block_maps.len() == m.centroid.dim()
                && m.centroid.dim() == 2,
            format!("{} centroid maps", m.centroid.dim()),
        );
    }
    let h = heisenberg(1)?;
    let imgs: Vec<Vec<Rat>> = (0..3).map(|i| unit_vec(3, i)).collect();
    let refused = isotypic_decomposition(&h, &imgs, &[0]);
    s.check(
        "heisenberg(1): non-reductive action refused",
        refused.is_err(),
        match refused {
            Err(e) => e.to_string(),
            Ok(_) => "unexpectedly accepted".to_string(),
        },
    );
    Ok(s.finish())
}

/// sl2 (x) Q[x,y]/(x^2,y^2) together with its one-dimensional central
/// extension by the cyclic cocycle kappa(u,v) c(p,q), c(y,x) = 1 = -c(x,y).
fn cyclic_cover() -> Result<(SCAlgebra, SCAlgebra, Vec<Vec<Rat>>, Vec<usize>)> {
    let a4 = truncated_poly_pair();
    a4.validate()?;
    let g = sl2()?;
    let base = tensor(&g, &a4)?;
    let kappa = g.killing_form();
    let cval = |p: usize, q: usize| -> i64 {
        match (p, q) {
            (2, 1) => 1,
            (1, 2) => -1,
            _ => 0,
        }
    };
    let mut entries = Vec::new();
    for ia in 0..base.dim {
        for ib in (ia + 1)..base.dim {
            let (i, p) = (ia / 4, ia % 4);
            let (j, q) = (ib / 4, ib % 4);
            let c = cval(p, q);
            if c == 0 {
                continue;
            }
            let v = kappa.get(i, j) * &rat(c);
            if !v.is_zero() {
                entries.push((ia, ib, vec![v]));
            }
        }
    }
    let sigma = Cocycle::new(base.dim, 1, entries)?;
    let (e, _) = central_extension(&base, &sigma)?;
    let (imgs, toral) = tensor_grading(&g, &a4)?;
    Ok((base, e, imgs, toral))
}

fn suite_centrg() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "centrg",
        "root-graded law: for L = (g (x) A) + D with D spanned by the pairings, \
         Cent(L) is the admissible centre of A (commutes with multiplication, \
         symmetric for the pairing, preserves its relations); a central cover \
         embeds its centroid into the base's",
    );
    for (name, a, expect) in [
        ("sl3(M2)", sl_n_over(&matrix_assoc(2)?, 3)?, (1usize, 1usize, 1usize)),
        ("sl3(Q[t]/(t^2))", sl_n_over(&truncated_poly(2)?, 3)?, (2, 2, 2)),
    ] {
        let (imgs, toral) = sl_n_over_grading(3, a.dim);
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        let rep = verify_cent_rg(&m)?;
        let got = (rep.centre_cap_a, rep.admissible_dim, rep.brute_dim);
        s.check(
            format!("{name}: admissible centre = centroid"),
            got == expect && rep.bijection && rep.action_shape && rep.d_compat,
            format!(
                "(centre cap A, admissible, brute) = {got:?}, bijection {}",
                rep.bijection
            ),
        );
    }
    {
        let g = sl2()?;
        let b = group_algebra(&[2])?;
        let a = tensor(&g, &b)?;
        let (imgs, toral) = tensor_grading(&g, &b)?;
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        let rep = verify_cent_rg(&m)?;
        let got = (rep.centre_cap_a, rep.admissible_dim, rep.brute_dim);
        s.check(
            "sl2 (x) Q[Z/2]: admissible centre = centroid",
            got == (2, 2, 2) && rep.bijection && rep.action_shape,
            format!("(centre cap A, admissible, brute) = {got:?}"),
        );
    }
    let (base, e, imgs, toral) = cyclic_cover()?;
    let h2 = h2_trivial_coeffs(&base)?.h2;
    s.check(
        "sl2 (x) Q[x,y]/(x^2,y^2): one independent cocycle class",
        h2 == 1,
        format!("dim H^2 = {h2}"),
    );
    let m_base = isotypic_decomposition(&base, &imgs, &toral)?;
    let rep_base = verify_cent_rg(&m_base)?;
    s.check(
        "base: commutative coordinates, everything admissible",
        (rep_base.centre_cap_a, rep_base.admissible_dim, rep_base.brute_dim) == (4, 4, 4)
            && rep_base.bijection,
        format!("brute dim {}", rep_base.brute_dim),
    );
    let mut imgs_e = imgs;
    for v in &mut imgs_e {
        v.push(Rat::zero());
    }
    let m_cover = isotypic_decomposition(&e, &imgs_e, &toral)?;
    let rep_cover = verify_cent_rg(&m_cover)?;
    s.check(
        "cover: pairing symmetry cuts the centre to span{1, xy}",
        rep_cover.centre_cap_a == 4
            && (rep_cover.admissible_dim, rep_cover.brute_dim) == (2, 2)
            && rep_cover.bijection
            && rep_cover.d_compat,
        format!(
            "(centre cap A, admissible, brute) = ({}, {}, {})",
            rep_cover.centre_cap_a, rep_cover.admissible_dim, rep_cover.brute_dim
        ),
    );
    s.check(
        "cover centroid strictly smaller than base centroid",
        rep_cover.brute_dim < rep_base.brute_dim,
        format!("{} < {}", rep_cover.brute_dim, rep_base.brute_dim),
    );
    let ideal = Subspace::from_vectors(e.dim, vec![unit_vec(e.dim, e.dim - 1)]);
    let induced = induce_quotient_centroid(&e, &ideal)?;
    s.check(
        "cover centroid embeds into the quotient centroid",
        induced.injective == Some(true) && induced.compatible.len() == 2,
        format!(
            "injective {:?}, {} compatible maps",
            induced.injective,
            induced.compatible.len()
        ),
    );
    let l = sl2()?.direct_sum(&abelian(1));
    let imgs: Vec<Vec<Rat>> = (0..3).map(|i| unit_vec(4, i)).collect();
    let m = isotypic_decomposition(&l, &imgs, &[0])?;
    let refused = verify_cent_rg(&m);
    s.check(
        "sl2 + Q: summand outside the pairing span refused",
        matches!(&refused, Err(e) if e.to_string().contains("pairings")),
        match refused {
            Err(e) => e.to_string(),
            Ok(_) => "unexpectedly accepted".to_string(),
        },
    );
    Ok(s.finish())
}

fn suite_centless() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "centless",
        "centreless instances: dim Cent(L) = dim(Z(a) cap A) and every centroid \
         map acts as x (x) a -> x (x) za on the adjoint block, entrywise",
    );
    let insts: Vec<(&str, SCAlgebra, Vec<Vec<Rat>>, Vec<usize>, usize)> = {
        let m2 = sl_n_over(&matrix_assoc(2)?, 3)?;
        let (i2, t2) = sl_n_over_grading(3, m2.dim);
        let tp = sl_n_over(&truncated_poly(2)?, 3)?;
        let (i3, t3) = sl_n_over_grading(3, tp.dim);
        let g = sl2()?;
        let b = group_algebra(&[2])?;
        let ga = tensor(&g, &b)?;
        let (i4, t4) = tensor_grading(&g, &b)?;
        vec![
            ("sl3(M2)", m2, i2, t2, 1),
            ("sl3(Q[t]/(t^2))", tp, i3, t3, 2),
            ("sl2 (x) Q[Z/2]", ga, i4, t4, 2),
        ]
    };
    for (name, a, imgs, toral, expect) in insts {
        let zdim = a.centre().dim();
        s.check(
            format!("{name}: centreless"),
            zdim == 0,
            format!("centre dim {zdim}"),
        );
        let m = isotypic_decomposition(&a, &imgs, &toral)?;
        let rep = verify_cent_rg(&m)?;
        s.check(
            format!("{name}: dim Cent = dim(Z(a) cap A)"),
            rep.brute_dim == expect && rep.centre_cap_a == expect && rep.admissible_dim == expect,
            format!(
                "brute {}, centre cap A {}, expected {expect}",
                rep.brute_dim, rep.centre_cap_a
            ),
        );
        s.check(
            format!("{name}: action shape x (x) a -> x (x) za"),
            rep.action_shape && rep.d_compat,
            format!("action shape {}, pairing compatible {}", rep.action_shape, rep.d_compat),
        );
    }
    Ok(s.finish())
}

fn suite_dernot() -> Result<SuiteReport> {
    let mut s = Suite::new(
        "dernot",
        "derivation decomposition: Der(g (x) B) = (Der g (x) B) + (Cent(g) (x) Der B) \
         in dimension, with the first summand a complemented ideal",
    );
    let g = sl2()?;
    for k in 2..=4usize {
        let b = truncated_poly(k)?;
        let rep = der_tensor_decomposition_check(&g, &b)?;
        let expected = 3 * k + (k - 1);
        s.check(
            format!("Der(sl2 (x) Q[t]/(t^{k}))"),
            rep.applicable
                && rep.dims_match
                && rep.ideal_complemented
                && rep.total_dim == expected,
            format!(
                "dim {} = {} * {} + {} * {}",
                rep.total_dim, rep.der_g_dim, k, 1, rep.der_b_dim
            ),
        );
    }
    let h = heisenberg(1)?;
    let rep = der_tensor_decomposition_check(&h, &truncated_poly(2)?)?;
    s.check(
        "heisenberg(1) (x) Q[t]/(t^2): decomposition not applicable",
        !rep.applicable,
        rep.reason.clone().unwrap_or_default(),
    );
    Ok(s.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_refused() {
        assert!(run_suite("nope").is_err());
        assert_eq!(SUITES.len(), 13);
    }

    #[test]
    fn cheap_suites_pass() {
        for name in ["toral", "dernot", "toralcor"] {
            let rep = run_suite(name).unwrap();
            assert!(
                rep.passed,
                "suite {name} failed: {:?}",
                rep.lines.iter().filter(|l| !l.pass).collect::<Vec<_>>()
            );
            assert!(!rep.lines.is_empty());
            assert_eq!(rep.suite, name);
        }
    }
}
