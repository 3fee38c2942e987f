//! Command-line front end. File formats are the JSON contracts in
//! `format`; reports print as text by default or as canonical JSON with
//! `--output json`. Exit codes: 0 success, 1 a verification failed, 2
//! malformed input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use centroidkit::builders::{
    abelian, classical, field_ext, group_algebra, heisenberg, matrix_assoc, oscillator,
    sl_n_over, tensor, truncated_poly, truncated_poly_pair, AssocTable, ClassicalType,
};
use centroidkit::centroid::{
    centroid, centroid_local_analysis, division_graded_report, graded_centroid, toral_centroid,
    LocalVerdict,
};
use centroidkit::cohom::{
    central_extension, decompose_extension_centroid, derivation_space, h1_with_centre_coefficients,
    h2_trivial_coeffs, inner_derivations, validate_cocycle, Cocycle,
};
use centroidkit::format::{
    algebra_to_json, assoc_to_json, cocycle_from_json, file_to_algebra,
    file_to_assoc, file_to_loop_element, file_to_matrix, loop_element_to_file, matrix_to_file,
    parse_rat_list, subspace_rows, to_json, AlgebraFile, AssocFile, LinearMapFile,
    LoopElementFile,
};
use centroidkit::lie::SCAlgebra;
use centroidkit::linalg::matrix::{unit_vec, vec_is_zero, zero_vec};
use centroidkit::linalg::Subspace;
use centroidkit::loopkit::{
    centroid_membership, toralcor_check, window_component_exclusion, LoopAlgebra,
    LoopCentroidCandidate, ToralCorReport, WindowExclusion,
};
use centroidkit::poly::Poly;
use centroidkit::rational::{format_rat, parse_rat, Rat};
use centroidkit::rootgraded::{isotypic_decomposition, verify_cent_rg};
use centroidkit::verify::{run_suite, SUITES};

#[derive(Parser)]
#[command(
    name = "centroidkit",
    version,
    about = "Exact centroid, cohomology, and grading computations for Lie algebras over Q"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an algebra file and check the Lie axioms.
    Validate { file: PathBuf },
    /// Structural summary of an algebra file.
    Info { file: PathBuf },
    /// Centroid of the algebra, with optional graded / local / toral views.
    Centroid {
        file: PathBuf,
        /// Split the centroid along the declared grading.
        #[arg(long)]
        graded: bool,
        /// Commutative-ring analysis: radical, idempotents, verdict.
        #[arg(long)]
        local: bool,
        /// Recompute through the declared toral part and cross-check.
        #[arg(long)]
        toral: bool,
    },
    /// Centre of the algebra.
    Centre { file: PathBuf },
    /// Derived subalgebra.
    Derived { file: PathBuf },
    /// Derivations, inner derivations, and the outer quotient.
    Derivations { file: PathBuf },
    /// Outer derivations and first cohomology with centre coefficients.
    H1 { file: PathBuf },
    /// Second cohomology with trivial coefficients.
    H2 { file: PathBuf },
    /// Weight space decomposition for a span of basis elements.
    Weights {
        file: PathBuf,
        /// Basis indices spanning the toral subspace, comma separated.
        #[arg(long, value_name = "I,J,...")]
        toral: String,
    },
    /// Write a built-in family to a file.
    Build {
        /// heisenberg N | oscillator | abelian N | classical TYPE RANK |
        /// sl-n-over N COORDS.json | truncated-poly K | truncated-poly-pair |
        /// group-algebra M1,M2,... | matrix N | field-ext C0,C1,...
        family: String,
        /// Family arguments, see above.
        args: Vec<String>,
        /// Output file.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Tensor an algebra file with a coordinate file.
    Tensor {
        algebra: PathBuf,
        coords: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Central extension of an algebra by a cocycle file.
    Extend {
        file: PathBuf,
        /// Cocycle file; rejected with a witness if not a cocycle.
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Decompose the centroid of an extension into (chi, psi, eta) blocks.
    DecomposeCentroid {
        /// Extension in standard form: trailing coordinates are central.
        file: PathBuf,
        /// Number of trailing central coordinates.
        #[arg(long, default_value_t = 1)]
        coeff: usize,
    },
    /// Loop algebra queries over a finite-dimensional base file.
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Toral corollary check with Chevalley generator pairs.
    Toralcor {
        file: PathBuf,
        /// Generator pairs e:f as basis indices, e.g. 2:5,3:6.
        #[arg(long, value_name = "E:F,...")]
        gens: String,
    },
    /// Isotypic decomposition under an embedded subalgebra and the
    /// coordinate-centre description of the centroid.
    Rootgraded {
        file: PathBuf,
        /// Basis indices of the embedded split simple subalgebra.
        #[arg(long, value_name = "I,J,...")]
        gsub: String,
        /// Positions inside --gsub forming its toral part.
        #[arg(long, value_name = "P,Q,...", default_value = "0")]
        gtoral: String,
    },
    /// Run a named verification suite.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum LoopCmd {
    /// Symbolic centroid membership of a candidate on the loop algebra.
    Membership {
        base: PathBuf,
        /// Multiplication part as DEG:COEFF pairs, e.g. 0:1,2:-1/2.
        #[arg(long, value_name = "DEG:COEFF,...", default_value = "")]
        z: String,
        /// Scalar on the central element and the derivation.
        #[arg(long, default_value = "0")]
        lambda: String,
        /// Coefficient of the d -> c component.
        #[arg(long, default_value = "0")]
        mu: String,
        /// Adjoin the central element c.
        #[arg(long)]
        with_c: bool,
        /// Adjoin the degree derivation d.
        #[arg(long)]
        with_d: bool,
        /// Twist automorphism as a linear map file.
        #[arg(long)]
        twist: Option<PathBuf>,
    },
    /// Window exclusion certificate for a nonzero-degree component.
    Exclude {
        base: PathBuf,
        #[arg(long)]
        degree: i64,
        /// Monomial window; defaults to CENTROIDKIT_WINDOW or 5.
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        with_c: bool,
        #[arg(long)]
        with_d: bool,
    },
    /// Bracket of two loop element files.
    Bracket {
        base: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        with_c: bool,
        #[arg(long)]
        with_d: bool,
        #[arg(long)]
        twist: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (reports piped into head etc.).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path) -> anyhow::Result<SCAlgebra> {
    let file: AlgebraFile = serde_json::from_str(&read_text(path)?)
        .with_context(|| format!("bad algebra file {}", path.display()))?;
    Ok(file_to_algebra(&file)?)
}

fn load_coords(path: &Path) -> anyhow::Result<AssocTable> {
    let file: AssocFile = serde_json::from_str(&read_text(path)?)
        .with_context(|| format!("bad coordinate file {}", path.display()))?;
    Ok(file_to_assoc(&file)?)
}

fn write_file(path: &Path, content: &str) -> anyhow::Result<()> {
    fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))
}

fn parse_indices(text: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<usize>().with_context(|| format!("bad index '{part}'"))?);
    }
    if out.is_empty() {
        bail!("empty index list");
    }
    Ok(out)
}

fn parse_gen_pairs(dim: usize, text: &str) -> anyhow::Result<Vec<(Vec<Rat>, Vec<Rat>)>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (e, f) = part
            .split_once(':')
            .with_context(|| format!("generator pair '{part}' is not E:F"))?;
        let e: usize = e.trim().parse().with_context(|| format!("bad index '{e}'"))?;
        let f: usize = f.trim().parse().with_context(|| format!("bad index '{f}'"))?;
        if e >= dim || f >= dim {
            bail!("generator index out of range (dim {dim})");
        }
        out.push((unit_vec(dim, e), unit_vec(dim, f)));
    }
    if out.is_empty() {
        bail!("no generator pairs given");
    }
    Ok(out)
}

fn parse_z(text: &str) -> anyhow::Result<BTreeMap<i64, Rat>> {
    let mut out = BTreeMap::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (deg, coeff) = part
            .split_once(':')
            .with_context(|| format!("z term '{part}' is not DEG:COEFF"))?;
        let deg: i64 = deg.trim().parse().with_context(|| format!("bad degree '{deg}'"))?;
        let coeff = parse_rat(coeff.trim()).map_err(|e| anyhow::anyhow!(e))?;
        if out.insert(deg, coeff).is_some() {
            bail!("duplicate z degree {deg}");
        }
    }
    Ok(out)
}

fn loop_window(flag: Option<i64>) -> anyhow::Result<i64> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match std::env::var("CENTROIDKIT_WINDOW") {
        Ok(s) => s
            .trim()
            .parse::<i64>()
            .with_context(|| format!("CENTROIDKIT_WINDOW is not an integer: '{s}'")),
        Err(_) => Ok(5),
    }
}

fn emit<T: Serialize>(out: Output, report: &T, text: String) {
    match out {
        Output::Json => print!("{}", to_json(report)),
        Output::Text => println!("{text}"),
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let out = cli.output;
    match &cli.cmd {
        Cmd::Validate { file } => {
            #[derive(Serialize)]
            struct ValidateReport {
                ok: bool,
                name: Option<String>,
                dim: Option<usize>,
                failure: Option<String>,
            }
            // A readable file whose table breaks the Jacobi identity is a
            // failed verification, not malformed input.
            let a = match load_algebra(file) {
                Ok(a) => a,
                Err(e) => match e.downcast_ref::<centroidkit::Error>() {
                    Some(j @ centroidkit::Error::Jacobi { .. }) => {
                        let rep = ValidateReport {
                            ok: false,
                            name: None,
                            dim: None,
                            failure: Some(j.to_string()),
                        };
                        emit(out, &rep, format!("not a Lie algebra: {j}"));
                        return Ok(1);
                    }
                    _ => return Err(e),
                },
            };
            let rep = ValidateReport {
                ok: true,
                name: Some(a.name.clone()),
                dim: Some(a.dim),
                failure: None,
            };
            emit(
                out,
                &rep,
                format!("ok: {} (dim {}) satisfies the Lie axioms", a.name, a.dim),
            );
            Ok(0)
        }
        Cmd::Info { file } => {
            let a = load_algebra(file)?;
            #[derive(Serialize)]
            struct InfoReport {
                name: String,
                dim: usize,
                perfect: bool,
                abelian: bool,
                nilpotent: bool,
                solvable: bool,
                centre_dim: usize,
                derived_dim: usize,
                graded: bool,
                toral: Option<Vec<usize>>,
                has_form: bool,
            }
            let rep = InfoReport {
                name: a.name.clone(),
                dim: a.dim,
                perfect: a.is_perfect(),
                abelian: a.is_abelian(),
                nilpotent: a.is_nilpotent(),
                solvable: a.is_solvable(),
                centre_dim: a.centre().dim(),
                derived_dim: a.derived().dim(),
                graded: a.grading.is_some(),
                toral: a.toral.clone(),
                has_form: a.form.is_some(),
            };
            let text = format!(
                "{} (dim {})\n  perfect {} | abelian {} | nilpotent {} | solvable {}\n  \
                 centre dim {} | derived dim {}\n  graded {} | toral {:?} | form {}",
                rep.name,
                rep.dim,
                yn(rep.perfect),
                yn(rep.abelian),
                yn(rep.nilpotent),
                yn(rep.solvable),
                rep.centre_dim,
                rep.derived_dim,
                yn(rep.graded),
                rep.toral,
                yn(rep.has_form)
            );
            emit(out, &rep, text);
            Ok(0)
        }
        Cmd::Centroid {
            file,
            graded,
            local,
            toral,
        } => cmd_centroid(out, file, *graded, *local, *toral),
        Cmd::Centre { file } => {
            let a = load_algebra(file)?;
            let z = a.centre();
            emit_subspace(out, "centre", &z);
            Ok(0)
        }
        Cmd::Derived { file } => {
            let a = load_algebra(file)?;
            let d = a.derived();
            emit_subspace(out, "derived subalgebra", &d);
            Ok(0)
        }
        Cmd::Derivations { file } => {
            let a = load_algebra(file)?;
            let der = derivation_space(&a);
            let inner = inner_derivations(&a);
            #[derive(Serialize)]
            struct DerReport {
                der_dim: usize,
                inner_dim: usize,
                outer_dim: usize,
            }
            let rep = DerReport {
                der_dim: der.dim(),
                inner_dim: inner.dim(),
                outer_dim: der.dim() - inner.dim(),
            };
            emit(
                out,
                &rep,
                format!(
                    "derivations dim {} = inner {} + outer {}",
                    rep.der_dim, rep.inner_dim, rep.outer_dim
                ),
            );
            Ok(0)
        }
        Cmd::H1 { file } => {
            let a = load_algebra(file)?;
            let der = derivation_space(&a);
            let inner = inner_derivations(&a);
            let centre_coeff = h1_with_centre_coefficients(&a)?;
            #[derive(Serialize)]
            struct H1Out {
                der_dim: usize,
                inner_dim: usize,
                h1_adjoint: usize,
                h1_centre_coeffs: usize,
            }
            let rep = H1Out {
                der_dim: der.dim(),
                inner_dim: inner.dim(),
                h1_adjoint: der.dim() - inner.dim(),
                h1_centre_coeffs: centre_coeff.len(),
            };
            emit(
                out,
                &rep,
                format!(
                    "H1 adjoint coefficients: dim {} (derivations {} / inner {})\n\
                     H1 centre coefficients: dim {}",
                    rep.h1_adjoint, rep.der_dim, rep.inner_dim, rep.h1_centre_coeffs
                ),
            );
            Ok(0)
        }
        Cmd::H2 { file } => {
            let a = load_algebra(file)?;
            let h2 = h2_trivial_coeffs(&a)?;
            #[derive(Serialize)]
            struct H2Out {
                z2: usize,
                b2: usize,
                h2: usize,
            }
            let rep = H2Out {
                z2: h2.z2,
                b2: h2.b2,
                h2: h2.h2,
            };
            emit(
                out,
                &rep,
                format!(
                    "H2 with trivial coefficients: dim {} (cocycles {}, coboundaries {})",
                    rep.h2, rep.z2, rep.b2
                ),
            );
            Ok(0)
        }
        Cmd::Weights { file, toral } => {
            let a = load_algebra(file)?;
            let idx = parse_indices(toral)?;
            for &i in &idx {
                if i >= a.dim {
                    bail!("toral index {i} out of range (dim {})", a.dim);
                }
            }
            let h = Subspace::from_vectors(a.dim, idx.iter().map(|&i| unit_vec(a.dim, i)).collect());
            let dec = a.weight_decomposition(&h)?;
            #[derive(Serialize)]
            struct WeightLine {
                weight: Vec<String>,
                dim: usize,
            }
            #[derive(Serialize)]
            struct WeightsOut {
                toral_dim: usize,
                blocks: Vec<WeightLine>,
            }
            let rep = WeightsOut {
                toral_dim: dec.toral.dim(),
                blocks: dec
                    .blocks
                    .iter()
                    .map(|b| WeightLine {
                        weight: b.values.iter().map(format_rat).collect(),
                        dim: b.space.dim(),
                    })
                    .collect(),
            };
            let mut text = format!("weight spaces for a toral part of dim {}:", rep.toral_dim);
            for b in &rep.blocks {
                text.push_str(&format!("\n  ({}) dim {}", b.weight.join(", "), b.dim));
            }
            emit(out, &rep, text);
            Ok(0)
        }
        Cmd::Build { family, args, out: path } => cmd_build(out, family, args, path),
        Cmd::Tensor {
            algebra,
            coords,
            out: path,
        } => {
            let g = load_algebra(algebra)?;
            let b = load_coords(coords)?;
            let t = tensor(&g, &b)?;
            write_file(path, &algebra_to_json(&t))?;
            emit_built(out, path, "lie", &t.name, t.dim);
            Ok(0)
        }
        Cmd::Extend {
            file,
            cocycle,
            out: path,
        } => {
            let a = load_algebra(file)?;
            let sigma = cocycle_from_json(&read_text(cocycle)?)?;
            let rep = validate_cocycle(&a, &sigma)?;
            if !rep.valid {
                #[derive(Serialize)]
                struct RejectOut {
                    valid: bool,
                    witness: Option<(usize, usize, usize, Vec<String>)>,
                }
                let w = rep
                    .witness
                    .map(|(i, j, k, v)| (i, j, k, v.iter().map(format_rat).collect::<Vec<_>>()));
                let text = match &w {
                    Some((i, j, k, v)) => format!(
                        "not a cocycle: the Jacobi sum over basis triple ({i}, {j}, {k}) \
                         leaves [{}]",
                        v.join(", ")
                    ),
                    None => "not a cocycle".into(),
                };
                emit(out, &RejectOut { valid: false, witness: w }, text);
                return Ok(1);
            }
            let (e, _) = central_extension(&a, &sigma)?;
            write_file(path, &algebra_to_json(&e))?;
            emit_built(out, path, "lie", &e.name, e.dim);
            Ok(0)
        }
        Cmd::DecomposeCentroid { file, coeff } => cmd_decompose(out, file, *coeff),
        Cmd::Loop(lc) => cmd_loop(out, lc),
        Cmd::Toralcor { file, gens } => {
            let a = load_algebra(file)?;
            let toral_idx = a
                .toral
                .clone()
                .context("the algebra file declares no toral part")?;
            let h = Subspace::from_vectors(
                a.dim,
                toral_idx.iter().map(|&i| unit_vec(a.dim, i)).collect(),
            );
            let pairs = parse_gen_pairs(a.dim, gens)?;
            let rep = toralcor_check(&a, &pairs, &h)?;
            let ok = emit_toralcor(out, &rep);
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Rootgraded { file, gsub, gtoral } => cmd_rootgraded(out, file, gsub, gtoral),
        Cmd::Verify { suite } => {
            if !SUITES.contains(&suite.as_str()) {
                eprintln!(
                    "error: unknown suite '{suite}'\navailable suites: {}",
                    SUITES.join(", ")
                );
                return Ok(2);
            }
            let rep = match run_suite(suite) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("suite {suite} could not run: {e}");
                    return Ok(1);
                }
            };
            match out {
                Output::Json => print!("{}", to_json(&rep)),
                Output::Text => {
                    println!("suite {}: {}", rep.suite, rep.statement);
                    for l in &rep.lines {
                        println!(
                            "  {} {} -- {}",
                            if l.pass { "PASS" } else { "FAIL" },
                            l.label,
                            l.detail
                        );
                    }
                    let npass = rep.lines.iter().filter(|l| l.pass).count();
                    println!(
                        "{}: {} ({}/{} checks)",
                        rep.suite,
                        if rep.passed { "PASS" } else { "FAIL" },
                        npass,
                        rep.lines.len()
                    );
                }
            }
            Ok(if rep.passed { 0 } else { 1 })
        }
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn yn_opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undetermined",
    }
}

#[derive(Serialize)]
struct SubspaceOut {
    dim: usize,
    basis: Vec<Vec<String>>,
}

fn emit_subspace(out: Output, what: &str, s: &Subspace) {
    let rep = SubspaceOut {
        dim: s.dim(),
        basis: subspace_rows(s.basis()),
    };
    let mut text = format!("{what}: dim {}", rep.dim);
    for row in &rep.basis {
        text.push_str(&format!("\n  [{}]", row.join(", ")));
    }
    emit(out, &rep, text);
}

#[derive(Serialize)]
struct BuiltOut {
    file: String,
    kind: &'static str,
    name: String,
    dim: usize,
}

fn emit_built(out: Output, path: &Path, kind: &'static str, name: &str, dim: usize) {
    let rep = BuiltOut {
        file: path.display().to_string(),
        kind,
        name: name.to_string(),
        dim,
    };
    emit(
        out,
        &rep,
        format!("wrote {} ({kind}: {name}, dim {dim})", path.display()),
    );
}

fn cmd_centroid(
    out: Output,
    file: &Path,
    graded: bool,
    local: bool,
    toral: bool,
) -> anyhow::Result<u8> {
    let a = load_algebra(file)?;
    let cent = centroid(&a)?;

    #[derive(Serialize)]
    struct GradedOut {
        total_dim: usize,
        free_rank: usize,
        torsion: Vec<i64>,
        components: Vec<(Vec<i64>, usize)>,
        support_is_subgroup: bool,
        division_graded: Option<bool>,
        twisted_group_ring: bool,
        invertible: Vec<(Vec<i64>, Option<bool>)>,
    }
    #[derive(Serialize)]
    struct LocalOut {
        commutative: bool,
        radical_dim: usize,
        radical_nilpotency: usize,
        semisimple_dim: usize,
        verdict: String,
        idempotent: Option<LinearMapFile>,
        notes: Vec<String>,
    }
    #[derive(Serialize)]
    struct ToralOut {
        dim: usize,
        used_toral_path: bool,
        restriction_injective: bool,
        matches_brute: bool,
        notes: Vec<String>,
    }
    #[derive(Serialize)]
    struct CentroidOut {
        name: String,
        dim: usize,
        commutative: bool,
        maps: Vec<LinearMapFile>,
        #[serde(skip_serializing_if = "Option::is_none")]
        graded: Option<GradedOut>,
        #[serde(skip_serializing_if = "Option::is_none")]
        local: Option<LocalOut>,
        #[serde(skip_serializing_if = "Option::is_none")]
        toral: Option<ToralOut>,
    }

    let mut rep = CentroidOut {
        name: a.name.clone(),
        dim: cent.dim(),
        commutative: cent.is_commutative(),
        maps: cent.maps.iter().map(matrix_to_file).collect(),
        graded: None,
        local: None,
        toral: None,
    };
    let mut text = format!(
        "centroid of {}: dim {} (commutative: {})",
        a.name,
        rep.dim,
        yn(rep.commutative)
    );
    if graded {
        let g = graded_centroid(&a)?;
        let div = division_graded_report(&g);
        let gout = GradedOut {
            total_dim: g.total_dim(),
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
            components: g
                .components
                .iter()
                .map(|(d, m)| (d.clone(), m.len()))
                .collect(),
            support_is_subgroup: div.support_is_subgroup,
            division_graded: div.division_graded,
            twisted_group_ring: div.twisted_group_ring_flag,
            invertible: div
                .components
                .iter()
                .map(|c| (c.degree.clone(), c.invertible))
                .collect(),
        };
        text.push_str(&format!(
            "\ngraded: total dim {} over {} free + {:?} torsion",
            gout.total_dim, gout.free_rank, gout.torsion
        ));
        for (d, n) in &gout.components {
            text.push_str(&format!("\n  degree {d:?}: dim {n}"));
        }
        text.push_str(&format!(
            "\n  support subgroup {} | division graded {} | twisted group ring {}",
            yn(gout.support_is_subgroup),
            yn_opt(gout.division_graded),
            yn(gout.twisted_group_ring)
        ));
        rep.graded = Some(gout);
    }
    if local {
        let l = centroid_local_analysis(&a)?;
        let lout = LocalOut {
            commutative: l.commutative,
            radical_dim: l.radical.len(),
            radical_nilpotency: l.radical_nilpotency,
            semisimple_dim: l.semisimple_dim,
            verdict: match l.verdict {
                LocalVerdict::Indecomposable => "indecomposable".into(),
                LocalVerdict::Decomposable => "decomposable".into(),
                LocalVerdict::Undetermined => "undetermined".into(),
            },
            idempotent: l.idempotent.as_ref().map(matrix_to_file),
            notes: l.notes.clone(),
        };
        text.push_str(&format!(
            "\nlocal analysis: radical dim {} (nilpotency {}), semisimple dim {}, {}",
            lout.radical_dim, lout.radical_nilpotency, lout.semisimple_dim, lout.verdict
        ));
        for n in &lout.notes {
            text.push_str(&format!("\n  note: {n}"));
        }
        rep.local = Some(lout);
    }
    if toral {
        let idx = a
            .toral
            .clone()
            .context("--toral needs a declared toral part in the file")?;
        let h = Subspace::from_vectors(a.dim, idx.iter().map(|&i| unit_vec(a.dim, i)).collect());
        let t = toral_centroid(&a, &h)?;
        let tout = ToralOut {
            dim: t.basis.dim(),
            used_toral_path: t.used_toral_path,
            restriction_injective: t.restriction_injective,
            matches_brute: t.basis.dim() == cent.dim(),
            notes: t.notes.clone(),
        };
        text.push_str(&format!(
            "\ntoral path: dim {} (path used {}, restriction injective {}, matches brute {})",
            tout.dim,
            yn(tout.used_toral_path),
            yn(tout.restriction_injective),
            yn(tout.matches_brute)
        ));
        let ok = tout.matches_brute;
        rep.toral = Some(tout);
        emit(out, &rep, text);
        return Ok(if ok { 0 } else { 1 });
    }
    emit(out, &rep, text);
    Ok(0)
}

fn cmd_build(out: Output, family: &str, args: &[String], path: &Path) -> anyhow::Result<u8> {
    let need = |n: usize| -> anyhow::Result<()> {
        if args.len() != n {
            bail!("family '{family}' takes {n} argument(s), got {}", args.len());
        }
        Ok(())
    };
    enum Built {
        Lie(SCAlgebra),
        Coord(AssocTable),
    }
    let built = match family {
        "heisenberg" => {
            need(1)?;
            let n: usize = args[0].parse().context("bad rank")?;
            Built::Lie(heisenberg(n)?)
        }
        "oscillator" => {
            need(0)?;
            Built::Lie(oscillator())
        }
        "abelian" => {
            need(1)?;
            let n: usize = args[0].parse().context("bad dimension")?;
            Built::Lie(abelian(n))
        }
        "classical" => {
            need(2)?;
            let ty = ClassicalType::parse(&args[0])?;
            let rank: usize = args[1].parse().context("bad rank")?;
            Built::Lie(classical(ty, rank)?)
        }
        "sl-n-over" => {
            need(2)?;
            let n: usize = args[0].parse().context("bad matrix size")?;
            let coords = load_coords(Path::new(&args[1]))?;
            Built::Lie(sl_n_over(&coords, n)?)
        }
        "truncated-poly" => {
            need(1)?;
            let k: usize = args[0].parse().context("bad truncation order")?;
            Built::Coord(truncated_poly(k)?)
        }
        "truncated-poly-pair" => {
            need(0)?;
            Built::Coord(truncated_poly_pair())
        }
        "group-algebra" => {
            need(1)?;
            let mut moduli = Vec::new();
            for part in args[0].split(',') {
                moduli.push(part.trim().parse::<i64>().context("bad modulus")?);
            }
            Built::Coord(group_algebra(&moduli)?)
        }
        "matrix" => {
            need(1)?;
            let n: usize = args[0].parse().context("bad matrix size")?;
            Built::Coord(matrix_assoc(n)?)
        }
        "field-ext" => {
            need(1)?;
            let coeffs = parse_rat_list(&args[0])?;
            Built::Coord(field_ext(&Poly::from_coeffs(coeffs))?)
        }
        other => bail!(
            "unknown family '{other}'; available: heisenberg, oscillator, abelian, classical, \
             sl-n-over, truncated-poly, truncated-poly-pair, group-algebra, matrix, field-ext"
        ),
    };
    match built {
        Built::Lie(a) => {
            write_file(path, &algebra_to_json(&a))?;
            emit_built(out, path, "lie", &a.name, a.dim);
        }
        Built::Coord(b) => {
            write_file(path, &assoc_to_json(&b))?;
            emit_built(out, path, "coordinate", &b.name, b.dim);
        }
    }
    Ok(0)
}

fn cmd_decompose(out: Output, file: &Path, coeff: usize) -> anyhow::Result<u8> {
    let e = load_algebra(file)?;
    if coeff == 0 || coeff >= e.dim {
        bail!("--coeff must be between 1 and dim - 1");
    }
    let n = e.dim - coeff;
    for k in 0..coeff {
        if !e.ad_basis(n + k).is_zero() {
            println!("coordinate {} of the trailing block is not central", n + k);
            return Ok(1);
        }
    }
    let mut base_entries = Vec::new();
    let mut sigma_entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut bterms = Vec::new();
            let mut sv = zero_vec(coeff);
            for (k, c) in e.bracket_basis(i, j) {
                if k < n {
                    bterms.push((k, c));
                } else {
                    sv[k - n] = c;
                }
            }
            if !bterms.is_empty() {
                base_entries.push((i, j, bterms));
            }
            if !vec_is_zero(&sv) {
                sigma_entries.push((i, j, sv));
            }
        }
    }
    let base = SCAlgebra::new(format!("{} / centre", e.name), n, base_entries)?;
    base.validate()?;
    let sigma = Cocycle::new(n, coeff, sigma_entries)?;
    let decs = match decompose_extension_centroid(&base, &sigma) {
        Ok(d) => d,
        Err(err) => {
            println!("decomposition refused: {err}");
            return Ok(1);
        }
    };
    #[derive(Serialize)]
    struct BlockOut {
        chi: LinearMapFile,
        psi: LinearMapFile,
        eta: LinearMapFile,
    }
    #[derive(Serialize)]
    struct DecomposeOut {
        base_dim: usize,
        coeff_dim: usize,
        count: usize,
        blocks: Vec<BlockOut>,
    }
    let rep = DecomposeOut {
        base_dim: n,
        coeff_dim: coeff,
        count: decs.len(),
        blocks: decs
            .iter()
            .map(|d| BlockOut {
                chi: matrix_to_file(&d.chi),
                psi: matrix_to_file(&d.psi),
                eta: matrix_to_file(&d.eta),
            })
            .collect(),
    };
    emit(
        out,
        &rep,
        format!(
            "centroid of the extension: {} elements, each split into \
             (chi on {}, psi, eta on {}) blocks with the compatibility laws verified",
            rep.count, n, coeff
        ),
    );
    Ok(0)
}

fn cmd_loop(out: Output, lc: &LoopCmd) -> anyhow::Result<u8> {
    match lc {
        LoopCmd::Membership {
            base,
            z,
            lambda,
            mu,
            with_c,
            with_d,
            twist,
        } => {
            let b = load_algebra(base)?;
            let tw = match twist {
                Some(p) => Some(file_to_matrix(&serde_json::from_str(&read_text(p)?)?)?),
                None => None,
            };
            let l = LoopAlgebra::new(b, tw, *with_c, *with_d)?;
            let cand = LoopCentroidCandidate {
                z: parse_z(z)?,
                lambda: parse_rat(lambda).map_err(|e| anyhow::anyhow!(e))?,
                mu: parse_rat(mu).map_err(|e| anyhow::anyhow!(e))?,
            };
            let rep = centroid_membership(&l, &cand)?;
            #[derive(Serialize)]
            struct MembershipOut {
                member: bool,
                mode: String,
                families: Vec<(String, bool)>,
                witness: Option<String>,
            }
            let o = MembershipOut {
                member: rep.member,
                mode: rep.mode.to_string(),
                families: rep.families.clone(),
                witness: rep.witness.clone(),
            };
            let mut text = format!("member: {} (mode {})", yn(o.member), o.mode);
            for (f, ok) in &o.families {
                text.push_str(&format!("\n  [{}] {}", if *ok { "ok" } else { "fails" }, f));
            }
            if let Some(w) = &o.witness {
                text.push_str(&format!("\n  witness: {w}"));
            }
            emit(out, &o, text);
            Ok(if rep.member { 0 } else { 1 })
        }
        LoopCmd::Exclude {
            base,
            degree,
            window,
            with_c,
            with_d,
        } => {
            let b = load_algebra(base)?;
            let l = LoopAlgebra::new(b, None, *with_c, *with_d)?;
            let w = loop_window(*window)?;
            let rep = window_component_exclusion(&l, *degree, w)?;
            #[derive(Serialize)]
            struct ExcludeOut {
                kind: &'static str,
                degree: i64,
                window: i64,
                #[serde(skip_serializing_if = "Option::is_none")]
                certificate: Option<Vec<String>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                solution_dim: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                note: Option<String>,
            }
            let (o, code) = match rep {
                WindowExclusion::Excluded {
                    degree,
                    window,
                    certificate,
                } => (
                    ExcludeOut {
                        kind: "excluded",
                        degree,
                        window,
                        certificate: Some(certificate),
                        solution_dim: None,
                        note: None,
                    },
                    0u8,
                ),
                WindowExclusion::NoCertificate {
                    degree,
                    window,
                    solution_dim,
                } => (
                    ExcludeOut {
                        kind: "no-certificate",
                        degree,
                        window,
                        certificate: None,
                        solution_dim: Some(solution_dim),
                        note: None,
                    },
                    1,
                ),
                WindowExclusion::DegreeZero { note } => (
                    ExcludeOut {
                        kind: "degree-zero",
                        degree: 0,
                        window: w,
                        certificate: None,
                        solution_dim: None,
                        note: Some(note),
                    },
                    0,
                ),
            };
            let mut text = format!("degree {}: {} (window {})", o.degree, o.kind, o.window);
            if let Some(cert) = &o.certificate {
                for line in cert {
                    text.push_str(&format!("\n  {line}"));
                }
            }
            if let Some(d) = o.solution_dim {
                text.push_str(&format!("\n  truncated solution space dim {d}"));
            }
            if let Some(nt) = &o.note {
                text.push_str(&format!("\n  {nt}"));
            }
            emit(out, &o, text);
            Ok(code)
        }
        LoopCmd::Bracket {
            base,
            x,
            y,
            with_c,
            with_d,
            twist,
        } => {
            let b = load_algebra(base)?;
            let dim = b.dim;
            let tw = match twist {
                Some(p) => Some(file_to_matrix(&serde_json::from_str(&read_text(p)?)?)?),
                None => None,
            };
            let l = LoopAlgebra::new(b, tw, *with_c, *with_d)?;
            let xf: LoopElementFile = serde_json::from_str(&read_text(x)?)
                .with_context(|| format!("bad loop element file {}", x.display()))?;
            let yf: LoopElementFile = serde_json::from_str(&read_text(y)?)
                .with_context(|| format!("bad loop element file {}", y.display()))?;
            let xe = file_to_loop_element(&xf, dim)?;
            let ye = file_to_loop_element(&yf, dim)?;
            l.check_element(&xe)?;
            l.check_element(&ye)?;
            let br = l.bracket(&xe, &ye)?;
            let o = loop_element_to_file(&br);
            let mut text = String::from("bracket:");
            for t in &o.terms {
                text.push_str(&format!("\n  t^{} [{}]", t.deg, t.coeff.join(", ")));
            }
            text.push_str(&format!("\n  c {} | d {}", o.c, o.d));
            emit(out, &o, text);
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct HypOut {
    name: &'static str,
    passed: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct ConclusionOut {
    quotient_dim: usize,
    centralizer_dim: usize,
    centroid_dim: usize,
    cross_checked: Option<bool>,
    text: String,
}

#[derive(Serialize)]
struct ToralcorOut {
    hypotheses: Vec<HypOut>,
    matrix_a: Vec<Vec<String>>,
    conclusion: Option<ConclusionOut>,
}

fn emit_toralcor(out: Output, rep: &ToralCorReport) -> bool {
    let o = ToralcorOut {
        hypotheses: vec![
            HypOut {
                name: "coroots in the toral part",
                passed: rep.hypothesis_i.passed,
                witness: rep.hypothesis_i.witness.clone(),
            },
            HypOut {
                name: "connected generator pattern",
                passed: rep.hypothesis_ii.passed,
                witness: rep.hypothesis_ii.witness.clone(),
            },
            HypOut {
                name: "weights separate the generators",
                passed: rep.hypothesis_iii.passed,
                witness: rep.hypothesis_iii.witness.clone(),
            },
        ],
        matrix_a: rep
            .matrix_a
            .iter()
            .map(|row| row.iter().map(format_rat).collect())
            .collect(),
        conclusion: rep.conclusion.as_ref().map(|c| ConclusionOut {
            quotient_dim: c.quotient_dim,
            centralizer_dim: c.centralizer_dim,
            centroid_dim: c.centroid_dim,
            cross_checked: c.cross_checked,
            text: c.text.clone(),
        }),
    };
    let mut text = String::from("toral corollary:");
    for h in &o.hypotheses {
        text.push_str(&format!(
            "\n  [{}] {}",
            if h.passed { "ok" } else { "fails" },
            h.name
        ));
        if let Some(w) = &h.witness {
            text.push_str(&format!(": {w}"));
        }
    }
    for row in &o.matrix_a {
        text.push_str(&format!("\n  A row [{}]", row.join(", ")));
    }
    let ok = match &o.conclusion {
        Some(c) => {
            text.push_str(&format!("\n  {}", c.text));
            c.cross_checked != Some(false)
        }
        None => {
            text.push_str("\n  hypotheses fail; no conclusion claimed");
            false
        }
    };
    match out {
        Output::Json => print!("{}", to_json(&o)),
        Output::Text => println!("{text}"),
    }
    ok
}

fn cmd_rootgraded(out: Output, file: &Path, gsub: &str, gtoral: &str) -> anyhow::Result<u8> {
    let a = load_algebra(file)?;
    let idx = parse_indices(gsub)?;
    for &i in &idx {
        if i >= a.dim {
            bail!("--gsub index {i} out of range (dim {})", a.dim);
        }
    }
    let toral_pos = parse_indices(gtoral)?;
    for &p in &toral_pos {
        if p >= idx.len() {
            bail!("--gtoral position {p} out of range ({} generators)", idx.len());
        }
    }
    let imgs: Vec<Vec<Rat>> = idx.iter().map(|&i| unit_vec(a.dim, i)).collect();
    let model = match isotypic_decomposition(&a, &imgs, &toral_pos) {
        Ok(m) => m,
        Err(e) => {
            println!("model refused: {e}");
            return Ok(1);
        }
    };
    #[derive(Serialize)]
    struct BlockOut {
        highest_weight: Vec<String>,
        module_dim: usize,
        multiplicity: usize,
    }
    #[derive(Serialize)]
    struct RootgradedOut {
        blocks: Vec<BlockOut>,
        adjoint: usize,
        trivial: Option<usize>,
        coordinate_dim: usize,
        d_dim: usize,
        centre_cap_a: usize,
        admissible_dim: usize,
        brute_dim: usize,
        bijection: bool,
        action_shape: bool,
        d_compat: bool,
        notes: Vec<String>,
    }
    let blocks: Vec<BlockOut> = model
        .blocks
        .iter()
        .map(|b| BlockOut {
            highest_weight: b.highest_weight.iter().map(format_rat).collect(),
            module_dim: b.module_dim,
            multiplicity: b.multiplicity,
        })
        .collect();
    let rep = match verify_cent_rg(&model) {
        Ok(r) => r,
        Err(e) => {
            let mut text = String::from("isotypic blocks:");
            for b in &blocks {
                text.push_str(&format!(
                    "\n  V dim {} with multiplicity {}",
                    b.module_dim, b.multiplicity
                ));
            }
            text.push_str(&format!("\ncentroid law not verified: {e}"));
            println!("{text}");
            return Ok(1);
        }
    };
    let o = RootgradedOut {
        blocks,
        adjoint: model.adjoint,
        trivial: model.trivial,
        coordinate_dim: rep.coordinate_dim,
        d_dim: rep.d_dim,
        centre_cap_a: rep.centre_cap_a,
        admissible_dim: rep.admissible_dim,
        brute_dim: rep.brute_dim,
        bijection: rep.bijection,
        action_shape: rep.action_shape,
        d_compat: rep.d_compat,
        notes: rep.notes.clone(),
    };
    let mut text = String::from("isotypic blocks:");
    for (i, b) in o.blocks.iter().enumerate() {
        text.push_str(&format!(
            "\n  block {i}: V dim {} with multiplicity {}{}",
            b.module_dim,
            b.multiplicity,
            if i == o.adjoint {
                " (adjoint)"
            } else if Some(i) == o.trivial {
                " (trivial)"
            } else {
                ""
            }
        ));
    }
    text.push_str(&format!(
        "\ncoordinates dim {} | pairing block dim {}\n\
         centre cap A {} | admissible {} | brute centroid {}\n\
         bijection {} | action shape {} | pairing compatibility {}",
        o.coordinate_dim,
        o.d_dim,
        o.centre_cap_a,
        o.admissible_dim,
        o.brute_dim,
        yn(o.bijection),
        yn(o.action_shape),
        yn(o.d_compat)
    ));
    let ok = o.bijection && o.action_shape && o.d_compat;
    emit(out, &o, text);
    Ok(if ok { 0 } else { 1 })
}
