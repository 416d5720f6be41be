//! Command-line front end: build algebras from quiver files, check two-term
//! complexes, run the derived-equivalence demo, and process ice quivers
//! with potential. Every command emits one JSON report; the text output is
//! a rendering of the same structure.
//!
//! Exit codes: 0 verified/success, 1 mathematical check failed, 2
//! input or usage error, 3 stabilization failure.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tiltkit_core::homotopy::{endomorphism_algebra, two_term_tilting_check, ComplexSpec};
use tiltkit_core::postnikov::{
    compare_invariants, frozen_jacobian_quotient, invariant_table, parse_iqp,
};
use tiltkit_core::quivalg::{
    default_max_len, extract_presentation, verify_presentation, FDAlgebra, QuiverSpec,
};
use tiltkit_core::{d2n, Error};

#[derive(Parser)]
#[command(name = "tiltkit", version, about = "Exact tilting-complex toolkit for quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Level cap for the truncated ideal computation.
    #[arg(long)]
    max_len: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Seed for randomized searches (symmetry probing).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Suppress the human-readable rendering.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver algebra construction and isomorphism certificates.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Two-term complexes of projectives.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// The cyclic example family.
    D2n {
        #[command(subcommand)]
        cmd: D2nCmd,
    },
    /// Ice quivers with potential.
    Postnikov {
        #[command(subcommand)]
        cmd: PostnikovCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Build the algebra of a quiver-with-relations file and report its
    /// structure.
    Build {
        spec: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Certify an isomorphism from an assignment file.
    VerifyIso {
        task: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Tilting certificate of a two-term complex file.
    Check {
        complex: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Endomorphism algebra of a two-term complex, emitted in the shared
    /// algebra schema.
    Endo {
        complex: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Subcommand)]
enum D2nCmd {
    /// Full derived-equivalence certificate for one instance.
    Demo {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Subcommand)]
enum PostnikovCmd {
    /// Validate an ice quiver with potential and its frozen Jacobian
    /// quotient.
    Check {
        iqp: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compare derived invariants of two algebra files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Algebra { cmd } => match cmd {
            AlgebraCmd::Build { spec, opts } => cmd_algebra_build(&spec, &opts),
            AlgebraCmd::VerifyIso { task, opts } => cmd_verify_iso(&task, &opts),
        },
        Command::Complex { cmd } => match cmd {
            ComplexCmd::Check { complex, opts } => cmd_complex_check(&complex, &opts),
            ComplexCmd::Endo { complex, opts } => cmd_complex_endo(&complex, &opts),
        },
        Command::D2n { cmd } => match cmd {
            D2nCmd::Demo { n, opts } => cmd_d2n_demo(n, &opts),
        },
        Command::Postnikov { cmd } => match cmd {
            PostnikovCmd::Check { iqp, opts } => cmd_postnikov_check(&iqp, &opts),
            PostnikovCmd::Compare { a, b, opts } => cmd_postnikov_compare(&a, &b, &opts),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotStabilized(_) => 3,
        _ => 2,
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn emit<T: Serialize>(report: &T, rendered: &str, opts: &CommonOpts) -> Result<(), Error> {
    if let Some(path) = &opts.json {
        let text = serde_json::to_string_pretty(report)
            .map_err(|e| Error::Invalid(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    if !opts.quiet {
        println!("{rendered}");
    }
    Ok(())
}

fn build_algebra_from_file(path: &Path, max_len: Option<usize>) -> Result<FDAlgebra, Error> {
    let spec = QuiverSpec::from_json(&read_file(path)?)?;
    let (quiver, relations) = spec.build()?;
    let cap = max_len.unwrap_or_else(|| default_max_len(&quiver, &relations));
    FDAlgebra::construct(quiver, relations, cap)
}

#[derive(Serialize)]
struct AlgebraBuildReport {
    dimension: usize,
    vertices: Vec<String>,
    cartan_matrix: Vec<Vec<i64>>,
    radical_layer_dims: Vec<usize>,
    center_dim: usize,
    self_injective: bool,
    nakayama_permutation: Option<Vec<String>>,
    symmetry: tiltkit_core::quivalg::SymmetryReport,
}

fn cmd_algebra_build(path: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let algebra = build_algebra_from_file(path, opts.max_len)?;
    let si = algebra.self_injectivity()?;
    let report = AlgebraBuildReport {
        dimension: algebra.dim(),
        vertices: algebra.vertices().to_vec(),
        cartan_matrix: algebra.cartan_matrix(),
        radical_layer_dims: algebra.radical_layers().iter().map(|s| s.dim()).collect(),
        center_dim: algebra.center_dimension(),
        self_injective: si.self_injective,
        nakayama_permutation: si
            .nakayama_permutation
            .as_ref()
            .map(|p| p.iter().map(|&v| algebra.vertex_label(v).to_string()).collect()),
        symmetry: algebra.symmetry_report(64, opts.seed),
    };
    let rendered = format!(
        "dimension: {}\ncartan matrix: {:?}\nradical layers: {:?}\ncenter dimension: {}\n\
         self-injective: {}\nnakayama permutation: {:?}\nsymmetry: {:?}",
        report.dimension,
        report.cartan_matrix,
        report.radical_layer_dims,
        report.center_dim,
        report.self_injective,
        report.nakayama_permutation,
        report.symmetry.verdict,
    );
    emit(&report, &rendered, opts)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Deserialize)]
struct VerifyIsoTask {
    algebra: QuiverSpec,
    candidate: QuiverSpec,
    vertex_map: BTreeMap<String, String>,
    /// candidate arrow id -> element of the base algebra, as path terms
    arrow_map: BTreeMap<String, Vec<tiltkit_core::quivalg::TermSpec>>,
}

#[derive(Serialize)]
struct VerifyIsoReport {
    verified: bool,
}

fn cmd_verify_iso(path: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let task: VerifyIsoTask =
        serde_json::from_str(&read_file(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let (quiver, relations) = task.algebra.build()?;
    let cap = opts.max_len.unwrap_or_else(|| default_max_len(&quiver, &relations));
    let algebra = FDAlgebra::construct(quiver, relations, cap)?;
    let (cand_quiver, cand_rels) = task.candidate.build()?;

    let base_quiver = algebra.quiver().unwrap().clone();
    let mut arrow_map = BTreeMap::new();
    for (arrow, terms) in &task.arrow_map {
        let mut parsed = Vec::new();
        for t in terms {
            let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
            parsed.push((
                tiltkit_core::exactla::parse_rat(&t.coeff)?,
                base_quiver.path(&ids)?,
            ));
        }
        arrow_map.insert(arrow.clone(), algebra.element_from_terms(&parsed)?);
    }
    let cand_cap = opts.max_len.unwrap_or_else(|| default_max_len(&cand_quiver, &cand_rels));
    let verified = verify_presentation(
        &algebra,
        &cand_quiver,
        &cand_rels,
        &task.vertex_map,
        &arrow_map,
        cand_cap,
    )?;
    emit(&VerifyIsoReport { verified }, &format!("verified: {verified}"), opts)?;
    Ok(if verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn load_complex(
    path: &Path,
    opts: &CommonOpts,
) -> Result<tiltkit_core::homotopy::BoundedComplex, Error> {
    let spec = ComplexSpec::from_json(&read_file(path)?)?;
    let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
    let algebra = Arc::new(spec.resolve_algebra(base_dir, opts.max_len)?);
    spec.build(algebra)
}

fn cmd_complex_check(path: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let complex = load_complex(path, opts)?;
    let report = two_term_tilting_check(&complex)?;
    let rendered = format!(
        "presilting: {}\nno negative self-extensions: {}\nsummand count ok: {}\ntilting: {}",
        report.presilting, report.no_negative, report.summand_count_ok, report.tilting
    );
    emit(&report, &rendered, opts)?;
    Ok(if report.tilting { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_complex_endo(path: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let complex = load_complex(path, opts)?;
    let (end, _) = endomorphism_algebra(&complex)?;
    let (quiver, relations) = extract_presentation(&end)?;
    let spec = QuiverSpec::encode(&quiver, &relations);
    let rendered = format!(
        "endomorphism algebra: dimension {}, vertices {:?}",
        end.dim(),
        end.vertices()
    );
    emit(&spec, &rendered, opts)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_d2n_demo(n: usize, opts: &CommonOpts) -> Result<ExitCode, Error> {
    if n < 4 {
        return Err(Error::Invalid(format!("n must be at least 4, got {n}")));
    }
    let report = d2n::run_demo(n)?;
    let rendered = format!(
        "tilting: {}\nendomorphism dimension: {:?}\ncandidate verified: {:?}\nverdict: {:?}",
        report.tilting.tilting, report.end_dim, report.candidate_verified, report.verdict
    );
    emit(&report, &rendered, opts)?;
    Ok(match report.verdict {
        tiltkit_core::tiltbench::Verdict::Certified => ExitCode::SUCCESS,
        _ => ExitCode::from(1),
    })
}

#[derive(Serialize)]
struct PostnikovCheckReport {
    finite_dimensional: bool,
    rotation_declared: bool,
    symmetric: Option<bool>,
    quotient: tiltkit_core::postnikov::InvariantTable,
    mutable_vertices: Vec<String>,
}

fn cmd_postnikov_check(path: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let iqp = parse_iqp(&read_file(path)?)?;
    let rotation_declared = iqp.rotation.is_some();
    let symmetric = rotation_declared.then(|| iqp.check_symmetry());
    let cap = opts.max_len.unwrap_or(16);
    let (algebra, labels) = frozen_jacobian_quotient(&iqp, cap)?;
    let table = invariant_table(&algebra);
    let ok = table.self_injective && symmetric.unwrap_or(true);
    let report = PostnikovCheckReport {
        finite_dimensional: true,
        rotation_declared,
        symmetric,
        quotient: table,
        mutable_vertices: labels,
    };
    let rendered = format!(
        "finite-dimensional quotient: dim {}\nsymmetric: {:?}\nself-injective: {}",
        report.quotient.dimension, report.symmetric, report.quotient.self_injective
    );
    emit(&report, &rendered, opts)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_postnikov_compare(a: &Path, b: &Path, opts: &CommonOpts) -> Result<ExitCode, Error> {
    let alg_a = build_algebra_from_file(a, opts.max_len)?;
    let alg_b = build_algebra_from_file(b, opts.max_len)?;
    let report = compare_invariants(&alg_a, &alg_b);
    let rendered = format!(
        "simples: {} vs {}\n|det Cartan|: {} vs {}\ncenter: {} vs {}\nconsistent: {}",
        report.table_a.simples,
        report.table_b.simples,
        report.table_a.cartan_det_abs,
        report.table_b.cartan_det_abs,
        report.table_a.center_dim,
        report.table_b.center_dim,
        report.consistent
    );
    emit(&report, &rendered, opts)?;
    Ok(if report.consistent { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
