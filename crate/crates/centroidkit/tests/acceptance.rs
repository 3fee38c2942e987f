//! Acceptance gate: twelve structural laws, each checked with exact
//! rational arithmetic and zero tolerance. One line prints per criterion
//! (visible with `cargo test --test acceptance -- --nocapture`); the gate
//! fails if any criterion fails or the whole run passes sixty seconds.

use std::time::Instant;

use centroidkit::builders::{
    abelian, classical, field_ext, group_algebra, heisenberg, matrix_assoc, oscillator,
    restrict_scalars, sl_n_over, tensor, truncated_poly, ClassicalType,
};
use centroidkit::centroid::{
    centroid, centroid_cap_der, centroid_local_analysis, division_graded_report,
    evaluation_map_injective, graded_centroid, toral_centroid, vanishing_ideal, LocalVerdict,
};
use centroidkit::cohom::{
    coboundary, derivation_space, h2_trivial_coeffs, validate_cocycle, Cocycle,
};
use centroidkit::lie::{Grading, SCAlgebra};
use centroidkit::linalg::matrix::{unit_vec, vec_is_zero, vec_scale};
use centroidkit::linalg::{Matrix, Subspace};
use centroidkit::loopkit::toralcor_check;
use centroidkit::poly::Poly;
use centroidkit::rational::{rat, Rat};
use centroidkit::rootgraded::{isotypic_decomposition, sl_n_over_grading, tensor_grading,
    verify_cent_rg};
use centroidkit::verify::run_suite;

type Outcome = Result<String, String>;

fn lib<E: std::fmt::Display>(e: E) -> String {
    format!("library error: {e}")
}

fn suite_outcome(name: &str) -> Outcome {
    let rep = run_suite(name).map_err(|e| lib(e))?;
    if rep.passed {
        Ok(format!("suite {name}: {} checks", rep.lines.len()))
    } else {
        let bad: Vec<String> = rep
            .lines
            .iter()
            .filter(|l| !l.pass)
            .map(|l| format!("{} ({})", l.label, l.detail))
            .collect();
        Err(format!("suite {name} failed: {}", bad.join("; ")))
    }
}

fn sl2() -> SCAlgebra {
    classical(ClassicalType::A, 1).unwrap()
}

// 1. dim Cent(heisenberg(n)) = 2n+1 and the vanishing ideal of the derived
//    subalgebra has dimension 2n, for n = 1, 2, 3.
fn heisenberg_law() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=3usize {
        let a = heisenberg(n).map_err(lib)?;
        let c = centroid(&a).map_err(lib)?;
        if c.dim() != 2 * n + 1 {
            return Err(format!("n = {n}: Cent dim {} instead of {}", c.dim(), 2 * n + 1));
        }
        let v = vanishing_ideal(&a, &a.derived()).map_err(lib)?;
        if v.len() != 2 * n {
            return Err(format!("n = {n}: V(L') dim {} instead of {}", v.len(), 2 * n));
        }
        dims.push(format!("{}+{}", c.dim(), v.len()));
    }
    Ok(format!("Cent+V dims {} for n = 1, 2, 3", dims.join(", ")))
}

// 2. dim Cent(g (x) B) = dim B with action id (x) (mult by B), for three
//    split simple g and nine coordinate algebras.
fn tensor_law() -> Outcome {
    suite_outcome("elem")
}

// 3. Cent(sl3(M2(Q))) = Q id and Cent(sl3(Q[t]/t^2)) of dimension 2, with
//    the action shape checked entry by entry through the isotypic model.
fn matrix_coordinate_law() -> Outcome {
    let m2 = matrix_assoc(2).map_err(lib)?;
    let a = sl_n_over(&m2, 3).map_err(lib)?;
    let (imgs, toral) = sl_n_over_grading(3, a.dim);
    let model = isotypic_decomposition(&a, &imgs, &toral).map_err(lib)?;
    let rep = verify_cent_rg(&model).map_err(lib)?;
    if rep.brute_dim != 1 || !rep.action_shape || !rep.bijection {
        return Err(format!(
            "sl3(M2): dim {} (want 1), action shape {}, bijection {}",
            rep.brute_dim, rep.action_shape, rep.bijection
        ));
    }
    let sl3 = classical(ClassicalType::A, 2).map_err(lib)?;
    let tp2 = truncated_poly(2).map_err(lib)?;
    let b = tensor(&sl3, &tp2).map_err(lib)?;
    let (imgs, toral) = tensor_grading(&sl3, &tp2).map_err(lib)?;
    let model = isotypic_decomposition(&b, &imgs, &toral).map_err(lib)?;
    let rep2 = verify_cent_rg(&model).map_err(lib)?;
    if rep2.brute_dim != 2 || !rep2.action_shape || !rep2.bijection {
        return Err(format!(
            "sl3(Q[t]/t^2): dim {} (want 2), action shape {}, bijection {}",
            rep2.brute_dim, rep2.action_shape, rep2.bijection
        ));
    }
    Ok("Cent dims 1 and 2, action shape entrywise on both".into())
}

// 4. dim (Cent cap Der) = dim(L/L') dim Z(L) across the builder zoo.
fn h1_identity() -> Outcome {
    let algebras: Vec<SCAlgebra> = vec![
        heisenberg(1).map_err(lib)?,
        heisenberg(2).map_err(lib)?,
        oscillator(),
        abelian(3),
        sl2(),
        classical(ClassicalType::A, 2).map_err(lib)?,
        classical(ClassicalType::C, 2).map_err(lib)?,
    ];
    let mut dims = Vec::new();
    for a in &algebras {
        let got = centroid_cap_der(a).map_err(lib)?.len();
        let want = (a.dim - a.derived().dim()) * a.centre().dim();
        if got != want {
            return Err(format!("{}: dim {got} instead of {want}", a.name));
        }
        dims.push(got.to_string());
    }
    Ok(format!("dims {} across {} algebras", dims.join(", "), algebras.len()))
}

// 5. dim Der(sl2 (x) Q[t]/t^k) = 3k + (k-1) for k = 2, 3, 4.
fn derivation_decomposition() -> Outcome {
    let g = sl2();
    let mut dims = Vec::new();
    for k in 2..=4usize {
        let t = tensor(&g, &truncated_poly(k).map_err(lib)?).map_err(lib)?;
        let got = derivation_space(&t).dim();
        let want = 3 * k + (k - 1);
        if got != want {
            return Err(format!("k = {k}: dim Der {got} instead of {want}"));
        }
        dims.push(got.to_string());
    }
    Ok(format!("Der dims {} for k = 2, 3, 4", dims.join(", ")))
}

// 6. Twenty randomized valid cocycles over sl2 and sl3: every centroid
//    element of the extension splits into (chi, psi, eta) and reassembles.
fn extension_round_trip() -> Outcome {
    suite_outcome("xxx")
}

// 7. The toral reconstruction equals the brute-force centroid as a
//    canonical subspace on five instances.
fn toral_equivalence() -> Outcome {
    let mut cases: Vec<(SCAlgebra, Subspace)> = Vec::new();
    for a in [
        sl2(),
        classical(ClassicalType::A, 2).map_err(lib)?,
        classical(ClassicalType::C, 2).map_err(lib)?,
    ] {
        let idx = a.toral.clone().ok_or("classical builder lost its toral part")?;
        let h = Subspace::from_vectors(a.dim, idx.iter().map(|&i| unit_vec(a.dim, i)).collect());
        cases.push((a, h));
    }
    let osc = oscillator();
    cases.push((osc, Subspace::from_vectors(4, vec![unit_vec(4, 0)])));
    let g2 = tensor(&sl2(), &group_algebra(&[2]).map_err(lib)?).map_err(lib)?;
    cases.push((g2, Subspace::from_vectors(6, vec![unit_vec(6, 0)])));

    let mut dims = Vec::new();
    for (a, h) in &cases {
        let t = toral_centroid(a, h).map_err(lib)?;
        let brute = centroid(a).map_err(lib)?;
        if !t.used_toral_path {
            return Err(format!("{}: fell back to the brute solver", a.name));
        }
        if t.basis.subspace() != brute.subspace() {
            return Err(format!("{}: toral and brute centroids differ", a.name));
        }
        dims.push(t.basis.dim().to_string());
    }
    Ok(format!("canonical equality, dims {}", dims.join(", ")))
}

// Lexicographically positive weights that are not sums of two positives,
// paired as (e, f) root vectors.
fn simple_generator_pairs(a: &SCAlgebra) -> Result<Vec<(Vec<Rat>, Vec<Rat>)>, String> {
    let idx = a.toral.clone().ok_or("no toral part")?;
    let h = Subspace::from_vectors(a.dim, idx.iter().map(|&i| unit_vec(a.dim, i)).collect());
    let dec = a.weight_decomposition(&h).map_err(lib)?;
    let positive: Vec<Vec<Rat>> = dec
        .blocks
        .iter()
        .map(|b| b.values.clone())
        .filter(|w| {
            w.iter()
                .find(|c| **c != rat(0))
                .map(|c| *c > rat(0))
                .unwrap_or(false)
        })
        .collect();
    let mut pairs = Vec::new();
    for alpha in &positive {
        let decomposable = positive.iter().any(|b| {
            positive.iter().any(|c| {
                (0..alpha.len()).all(|t| b[t].clone() + c[t].clone() == alpha[t])
            })
        });
        if decomposable {
            continue;
        }
        let e_block = dec.block(alpha).ok_or("missing weight block")?;
        let neg = vec_scale(alpha, &rat(-1));
        let f_block = dec.block(&neg).ok_or("missing opposite block")?;
        if e_block.space.dim() != 1 || f_block.space.dim() != 1 {
            return Err("simple root space is not a line".into());
        }
        pairs.push((e_block.space.basis()[0].clone(), f_block.space.basis()[0].clone()));
    }
    if pairs.is_empty() {
        return Err("no simple pairs found".into());
    }
    Ok(pairs)
}

// 8. The toral corollary certifies Cent = Q id on sl3 and sp4 and the
//    certified dimension matches the brute solve.
fn toral_corollary() -> Outcome {
    for a in [
        classical(ClassicalType::A, 2).map_err(lib)?,
        classical(ClassicalType::C, 2).map_err(lib)?,
    ] {
        let idx = a.toral.clone().ok_or("classical builder lost its toral part")?;
        let h = Subspace::from_vectors(a.dim, idx.iter().map(|&i| unit_vec(a.dim, i)).collect());
        let pairs = simple_generator_pairs(&a)?;
        if pairs.len() != idx.len() {
            return Err(format!("{}: {} simple pairs for rank {}", a.name, pairs.len(), idx.len()));
        }
        let rep = toralcor_check(&a, &pairs, &h).map_err(lib)?;
        if !(rep.hypothesis_i.passed && rep.hypothesis_ii.passed && rep.hypothesis_iii.passed) {
            return Err(format!("{}: a hypothesis failed", a.name));
        }
        let conc = rep.conclusion.as_ref().ok_or("hypotheses passed without a conclusion")?;
        if conc.centroid_dim != 1 || conc.cross_checked != Some(true) {
            return Err(format!(
                "{}: certified dim {} cross-checked {:?}",
                a.name, conc.centroid_dim, conc.cross_checked
            ));
        }
    }
    Ok("Cent = Q id certified and cross-checked on sl3 and sp4".into())
}

// 9. Affine behaviour: membership witnesses against t^q on the centrally
//    extended loop, the two-parameter family on the full affinization,
//    window exclusion for 0 < |q| <= 5, and no false exclusions on the
//    centreless control.
fn affine_analog() -> Outcome {
    suite_outcome("exaff")
}

// 10. Cent(sl2 (x) Q[Z/m]) is division-graded with full support Z/m and
//     injective evaluations; the graded Heisenberg algebra is not.
fn graded_structure() -> Outcome {
    for m in 2..=4i64 {
        let a = tensor(&sl2(), &group_algebra(&[m]).map_err(lib)?).map_err(lib)?;
        let gc = graded_centroid(&a).map_err(lib)?;
        let rep = division_graded_report(&gc);
        if rep.division_graded != Some(true) || !rep.support_is_subgroup {
            return Err(format!("Z/{m}: division {:?}", rep.division_graded));
        }
        if gc.support().len() != m as usize {
            return Err(format!("Z/{m}: support has {} degrees", gc.support().len()));
        }
        for i in 0..a.dim {
            if !evaluation_map_injective(&a, &unit_vec(a.dim, i)).map_err(lib)? {
                return Err(format!("Z/{m}: evaluation at basis {i} not injective"));
            }
        }
    }
    let mut h1 = heisenberg(1).map_err(lib)?;
    h1.grading = Some(Grading {
        free_rank: 1,
        torsion: vec![],
        degrees: vec![vec![1], vec![-1], vec![0]],
    });
    h1.validate().map_err(lib)?;
    let rep = division_graded_report(&graded_centroid(&h1).map_err(lib)?);
    if rep.division_graded != Some(false) {
        return Err(format!("graded Heisenberg: division {:?}", rep.division_graded));
    }
    Ok("Z/2, Z/3, Z/4 division-graded with injective evaluations; Heisenberg is not".into())
}

// 11. Commutative-ring analysis of the centroid: a direct sum splits with
//     two idempotents, heisenberg(1) is local with square-zero radical,
//     and a quadratic field restriction has a 2-dimensional field.
fn local_ring_analysis() -> Outcome {
    let two = sl2().direct_sum(&sl2());
    let rep = centroid_local_analysis(&two).map_err(lib)?;
    if rep.verdict != LocalVerdict::Decomposable {
        return Err("direct sum not reported decomposable".into());
    }
    let e = rep.idempotent.clone().ok_or("no idempotent returned")?;
    let co = Matrix::identity(6).sub(&e);
    if e.mul(&e) != e || co.mul(&co) != co || e.is_zero() || co.is_zero() {
        return Err("idempotent pair is not a proper splitting".into());
    }

    let h = heisenberg(1).map_err(lib)?;
    let rep = centroid_local_analysis(&h).map_err(lib)?;
    if rep.verdict != LocalVerdict::Indecomposable
        || rep.radical.len() != 2
        || rep.radical_nilpotency != 2
        || rep.semisimple_dim != 1
    {
        return Err(format!(
            "heisenberg(1): verdict {:?}, radical {}, nilpotency {}",
            rep.verdict,
            rep.radical.len(),
            rep.radical_nilpotency
        ));
    }

    let sqrt2 = field_ext(&Poly::from_coeffs(vec![rat(-2), rat(0), rat(1)])).map_err(lib)?;
    let rs = restrict_scalars(&sl2(), &sqrt2).map_err(lib)?;
    let rep = centroid_local_analysis(&rs).map_err(lib)?;
    if rep.dim != 2 || !rep.radical.is_empty() || rep.verdict != LocalVerdict::Indecomposable {
        return Err(format!(
            "Q(sqrt 2) restriction: dim {}, radical {}",
            rep.dim,
            rep.radical.len()
        ));
    }
    Ok("split pair of idempotents; local with rad^2 = 0; 2-dim field".into())
}

// 12. The cocycle validator rejects sigma(d, c) = 1 on the oscillator with
//     the witness triple (d, a, b), accepts every coboundary, and computes
//     H^2(sl2) = 0, H^2(heisenberg(1)) = 2.
fn cocycle_validator() -> Outcome {
    let osc = oscillator();
    let bad = Cocycle::new(4, 1, vec![(0, 3, vec![rat(1)])]).map_err(lib)?;
    let rep = validate_cocycle(&osc, &bad).map_err(lib)?;
    match rep.witness {
        Some((0, 1, 2, ref v)) if !rep.valid && !vec_is_zero(v) => {}
        ref w => return Err(format!("wrong rejection: valid {}, witness {w:?}", rep.valid)),
    }

    for (a, rows) in [
        (sl2(), vec![vec![rat(1), rat(2), rat(3)]]),
        (osc.clone(), vec![vec![rat(1), rat(-1), rat(2), rat(0)]]),
    ] {
        let f = Matrix::from_rows(rows).map_err(lib)?;
        let cob = coboundary(&a, &f).map_err(lib)?;
        let rep = validate_cocycle(&a, &cob).map_err(lib)?;
        if !rep.valid {
            return Err(format!("{}: coboundary rejected", a.name));
        }
    }

    let h2_sl2 = h2_trivial_coeffs(&sl2()).map_err(lib)?;
    let h2_h1 = h2_trivial_coeffs(&heisenberg(1).map_err(lib)?).map_err(lib)?;
    if h2_sl2.h2 != 0 || h2_h1.h2 != 2 {
        return Err(format!("H2 dims {} and {}", h2_sl2.h2, h2_h1.h2));
    }
    Ok("witness triple (0, 1, 2); coboundaries accepted; H2 dims 0 and 2".into())
}

#[test]
fn acceptance_gate() {
    let start = Instant::now();
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("Heisenberg centroid and vanishing ideal", heisenberg_law),
        ("tensor law over nine coordinate algebras", tensor_law),
        ("matrix-coordinate centroids with action shape", matrix_coordinate_law),
        ("H1 identity Cent cap Der", h1_identity),
        ("derivation dimension of current algebras", derivation_decomposition),
        ("extension centroid round-trip, 20 random cocycles", extension_round_trip),
        ("toral reconstruction equals brute solve", toral_equivalence),
        ("toral corollary certificates", toral_corollary),
        ("affine membership, family, and window exclusion", affine_analog),
        ("division grading over Z/m with injective evaluation", graded_structure),
        ("local-ring analysis of centroids", local_ring_analysis),
        ("cocycle validation and H2", cocycle_validator),
    ];
    let mut failed = Vec::new();
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2}. {label}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {:>2}. {label}: {detail}", i + 1);
                failed.push(format!("{}. {label}: {detail}", i + 1));
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance: {}/{} criteria passed in {:.2}s",
        criteria.len() - failed.len(),
        criteria.len(),
        elapsed.as_secs_f64()
    );
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
    assert!(
        elapsed.as_secs() < 60,
        "gate took {:.2}s, over the 60s budget",
        elapsed.as_secs_f64()
    );
}
