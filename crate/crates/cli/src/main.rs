//! `clext` — construct C_λ-extended oscillator algebras, classify their
//! unirreps, verify Fock-space operator identities and SUSY-variant
//! realizations, and exercise the deformed families.
//!
//! Exit codes: 0 = all checks pass, 1 = a residual check failed,
//! 2 = usage or configuration error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use clext_core::deform::{
    build_deformed_fock, make_deformed, DeformSpec, DeformedAlgebra, ScalarSequence,
};
use clext_core::susy::{
    build_charge_set, find_mixed_relations, ortho_spectrum, pseudo_spectrum, pssqm_spectrum,
    OrthoRealization, PseudoRealization, PssqmRealization,
};
use clext_core::{
    classify_gdoa, classify_oracle, fock_exists, h0_spectrum, table_report, AlgebraParams, FockRep,
    RelationReport, Spectrum, UnirrepKind,
};
use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "clext",
    version,
    about = "C_lambda-extended oscillator algebra toolkit"
)]
struct Cli {
    /// JSON config file; explicit flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Residual tolerance (default 1e-10; env CLEXT_TOL overrides the default)
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default, Clone)]
struct CommonOpts {
    /// Cyclic-group order (λ ≥ 2)
    #[arg(long)]
    lambda: Option<usize>,
    /// The λ−1 free alpha parameters, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    /// Truncation dimension (default 20λ, rounded to a multiple of λ)
    #[arg(long)]
    dim: Option<usize>,
    /// Number of λ-blocks in spectrum listings (default 5)
    #[arg(long)]
    k_max: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra parameter tables
    Algebra {
        #[command(subcommand)]
        sub: AlgebraCmd,
    },
    /// Classify unirreps at every lowest-weight residue, with oracle cross-check
    Classify(CommonOpts),
    /// Closed-form spectra with degeneracy classes
    Spectrum {
        #[command(subcommand)]
        sub: SpectrumCmd,
    },
    /// Fock-space representation checks
    Fock {
        #[command(subcommand)]
        sub: FockCmd,
    },
    /// SUSY-variant realizations
    Susy {
        #[command(subcommand)]
        sub: SusyCmd,
    },
    /// Deformed algebras
    Deform {
        #[command(subcommand)]
        sub: DeformCmd,
    },
    /// Machine-checkable classification table for λ in {2, 3, 4}
    Tables { lambda: Option<usize> },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Print α, β, γ, β̄ and the Fock-existence verdict
    Info(CommonOpts),
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Oscillator Hamiltonian H0
    H0(CommonOpts),
    /// Parasupersymmetric Hamiltonian of order p = λ−1
    Pssqm(PssqmOpts),
    /// Pseudosupersymmetric Hamiltonian (λ = 3)
    Pseudo(PseudoOpts),
    /// Orthosupersymmetric Hamiltonian of order 2 (λ = 3)
    Ossqm(OssqmOpts),
}

#[derive(Subcommand)]
enum FockCmd {
    /// Verify the defining relations and Casimir identities
    Verify(CommonOpts),
}

#[derive(Subcommand)]
enum SusyCmd {
    /// Order-p parasupersymmetry
    Pssqm(PssqmOpts),
    /// Pseudosupersymmetry, families one and two
    Pseudo(PseudoOpts),
    /// Order-2 orthosupersymmetry
    Ossqm(OssqmOpts),
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Verify quommutator, functional equations and Casimir identities
    Verify(DeformOpts),
}

#[derive(Args, Default, Clone)]
struct PssqmOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Order p (equivalent to --lambda p+1)
    #[arg(long)]
    p: Option<usize>,
    /// Grade shift μ in 0..=p
    #[arg(long)]
    mu: Option<usize>,
    /// Include the conserved-charge-set checks
    #[arg(long)]
    charges: bool,
    /// Include the mixed multilinear relations (p ≤ 4)
    #[arg(long)]
    mixed: bool,
}

#[derive(Args, Default, Clone)]
struct PseudoOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Solution family: one | two
    #[arg(long)]
    family: Option<String>,
    /// Grade shift μ in 0..=2
    #[arg(long)]
    mu: Option<usize>,
    /// The real constant c of the trilinear relation
    #[arg(long, allow_hyphen_values = true)]
    c_const: Option<f64>,
    /// Family one: η in (0, 2|c|); defaults to √2·|c|
    #[arg(long)]
    eta: Option<f64>,
    /// Family one: phase φ
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Family two: the free level shift r_μ
    #[arg(long, allow_hyphen_values = true)]
    r_mu: Option<f64>,
}

#[derive(Args, Default, Clone)]
struct OssqmOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Grade shift μ in {0, 1}
    #[arg(long)]
    mu: Option<usize>,
    /// ξ in (0, √2]; defaults to 1
    #[arg(long)]
    xi: Option<f64>,
    /// Phase φ
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
}

#[derive(Args, Default, Clone)]
struct DeformOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Deformation family: a | b | c
    #[arg(long)]
    family: Option<String>,
    /// Deformation parameter q > 0
    #[arg(long)]
    q: Option<f64>,
    /// Family b: the base k of E(N) = b·k^N
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Coefficient b of E(N)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Coefficient B of K(N)
    #[arg(long, allow_hyphen_values = true)]
    big_b: Option<f64>,
    /// Family a: the deformed Calogero-Vasiliev parameter α̂
    #[arg(long, allow_hyphen_values = true)]
    alpha_hat: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lambda: Option<usize>,
    alpha: Option<Vec<f64>>,
    dim: Option<usize>,
    tol: Option<f64>,
    format: Option<String>,
    k_max: Option<usize>,
    p: Option<usize>,
    mu: Option<usize>,
    family: Option<String>,
    q: Option<f64>,
    k: Option<f64>,
    b: Option<f64>,
    big_b: Option<f64>,
    alpha_hat: Option<f64>,
    eta: Option<f64>,
    phi: Option<f64>,
    xi: Option<f64>,
    c_const: Option<f64>,
    r_mu: Option<f64>,
}

struct Ctx {
    cfg: FileConfig,
    format: Format,
    tol: f64,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let cfg: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?
        }
        None => FileConfig::default(),
    };
    let env_tol = std::env::var("CLEXT_TOL")
        .ok()
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| format!("CLEXT_TOL is not a number: {v}"))
        })
        .transpose()?;
    let tol = cli.tol.or(cfg.tol).or(env_tol).unwrap_or(1e-10);
    if tol <= 0.0 || tol.is_nan() {
        return Err(format!("tolerance must be positive, got {tol}"));
    }
    let format = cli
        .format
        .or(match cfg.format.as_deref() {
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            Some("text") => Some(Format::Text),
            Some(other) => return Err(format!("unknown format in config: {other}")),
            None => None,
        })
        .unwrap_or(Format::Text);
    let ctx = Ctx { cfg, format, tol };

    let report = match cli.command {
        Command::Algebra {
            sub: AlgebraCmd::Info(opts),
        } => cmd_algebra_info(&ctx, &opts)?,
        Command::Classify(opts) => cmd_classify(&ctx, &opts)?,
        Command::Spectrum { sub } => match sub {
            SpectrumCmd::H0(opts) => cmd_spectrum_h0(&ctx, &opts)?,
            SpectrumCmd::Pssqm(opts) => cmd_spectrum_pssqm(&ctx, &opts)?,
            SpectrumCmd::Pseudo(opts) => cmd_pseudo(&ctx, &opts, true)?,
            SpectrumCmd::Ossqm(opts) => cmd_ossqm(&ctx, &opts, true)?,
        },
        Command::Fock {
            sub: FockCmd::Verify(opts),
        } => cmd_fock_verify(&ctx, &opts)?,
        Command::Susy { sub } => match sub {
            SusyCmd::Pssqm(opts) => cmd_susy_pssqm(&ctx, &opts)?,
            SusyCmd::Pseudo(opts) => cmd_pseudo(&ctx, &opts, false)?,
            SusyCmd::Ossqm(opts) => cmd_ossqm(&ctx, &opts, false)?,
        },
        Command::Deform {
            sub: DeformCmd::Verify(opts),
        } => cmd_deform_verify(&ctx, &opts)?,
        Command::Tables { lambda } => cmd_tables(&ctx, lambda)?,
    };

    println!("{}", report.render(ctx.format));
    Ok(report.pass())
}

fn resolve_params(ctx: &Ctx, opts: &CommonOpts) -> CliResult<AlgebraParams> {
    let lambda = opts
        .lambda
        .or(ctx.cfg.lambda)
        .or_else(|| {
            // lambda can be inferred from the alpha count
            opts.alpha
                .as_ref()
                .or(ctx.cfg.alpha.as_ref())
                .map(|a| a.len() + 1)
        })
        .ok_or("missing --lambda")?;
    let alpha = opts
        .alpha
        .clone()
        .or_else(|| ctx.cfg.alpha.clone())
        .ok_or("missing --alpha")?;
    AlgebraParams::new(lambda, &alpha).map_err(|e| e.to_string())
}

fn resolve_dim(ctx: &Ctx, opts: &CommonOpts, lambda: usize) -> usize {
    let dim = opts.dim.or(ctx.cfg.dim).unwrap_or(20 * lambda);
    // round up to a positive multiple of lambda
    dim.div_ceil(lambda).max(3) * lambda
}

fn k_max(ctx: &Ctx, opts: &CommonOpts) -> usize {
    opts.k_max.or(ctx.cfg.k_max).unwrap_or(5)
}

fn params_json(params: &AlgebraParams, extra: Value) -> Value {
    let mut obj = json!({
        "lambda": params.lambda(),
        "alpha": params.alpha(),
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut obj, extra) {
        dst.extend(src);
    }
    obj
}

fn spectrum_rows(spec: &Spectrum) -> Value {
    Value::Array(
        spec.levels
            .iter()
            .map(|l| {
                let degeneracy = spec.classes[l.class_id].degeneracy;
                json!({
                    "n": l.n,
                    "k": l.k,
                    "mu": l.mu,
                    "energy": l.energy,
                    "class": l.class_id,
                    "degeneracy": degeneracy,
                })
            })
            .collect(),
    )
}

fn cmd_algebra_info(ctx: &Ctx, opts: &CommonOpts) -> CliResult<Report> {
    let params = resolve_params(ctx, opts)?;
    let mut checks = RelationReport::new();
    checks.push(
        "alpha_zero_sum",
        params.alpha().iter().sum::<f64>().abs(),
        1e-12,
    );
    let alt: f64 = params
        .gamma()
        .iter()
        .enumerate()
        .map(|(mu, g)| if mu % 2 == 0 { *g } else { -*g })
        .sum();
    checks.push("alternating_gamma_sum", alt.abs(), 1e-12);
    let data = json!([{
        "alpha": params.alpha(),
        "beta": params.beta(),
        "gamma": params.gamma(),
        "beta_bar": params.beta_bar(),
        "fock_exists": fock_exists(&params),
    }]);
    Ok(Report::new("algebra info", params_json(&params, json!({})))
        .with_checks(checks)
        .with_data(data))
}

fn kind_fields(kind: UnirrepKind) -> (&'static str, Option<usize>) {
    match kind {
        UnirrepKind::Bfb => ("BFB", None),
        UnirrepKind::Fd { d } => ("FD", Some(d)),
    }
}

fn cmd_classify(ctx: &Ctx, opts: &CommonOpts) -> CliResult<Report> {
    let params = resolve_params(ctx, opts)?;
    let lambda = params.lambda();
    let mut checks = RelationReport::new();
    let mut rows = Vec::new();
    for residue in 0..lambda {
        let n0 = residue as i64;
        let closed = classify_gdoa(&params, n0);
        let oracle = classify_oracle(&params, n0, 4 * lambda).map_err(|e| e.to_string())?;
        let agrees = match (&closed, &oracle) {
            (None, None) => true,
            (Some(a), Some(b)) => a.kind == b.kind && (a.c - b.c).abs() <= 1e-9,
            _ => false,
        };
        checks.push_flag(format!("oracle_agreement_residue_{residue}"), agrees);
        match closed {
            Some(d) => {
                let (kind, fd_dim) = kind_fields(d.kind);
                rows.push(json!({
                    "residue": residue,
                    "kind": kind,
                    "d": fd_dim,
                    "c": d.c,
                    "near_boundary": d.boundary_margin < 1e-9,
                }));
            }
            None => rows.push(json!({
                "residue": residue,
                "kind": "none",
                "d": Value::Null,
                "c": Value::Null,
                "near_boundary": false,
            })),
        }
    }
    Ok(Report::new("classify", params_json(&params, json!({})))
        .with_checks(checks)
        .with_data(Value::Array(rows)))
}

fn cmd_spectrum_h0(ctx: &Ctx, opts: &CommonOpts) -> CliResult<Report> {
    let params = resolve_params(ctx, opts)?;
    let spec = h0_spectrum(&params, k_max(ctx, opts)).map_err(|e| e.to_string())?;
    Ok(Report::new(
        "spectrum h0",
        params_json(&params, json!({"k_max": k_max(ctx, opts)})),
    )
    .with_data(spectrum_rows(&spec)))
}

fn resolve_pssqm(ctx: &Ctx, opts: &PssqmOpts) -> CliResult<(AlgebraParams, usize)> {
    let p = opts.p.or(ctx.cfg.p);
    let mut common = opts.common.clone();
    if common.lambda.is_none() {
        common.lambda = p.map(|p| p + 1).or(ctx.cfg.lambda);
    }
    let params = resolve_params(ctx, &common)?;
    if let Some(p) = p {
        if p + 1 != params.lambda() {
            return Err(format!(
                "inconsistent order: p = {p} but lambda = {}",
                params.lambda()
            ));
        }
    }
    let mu = opts.mu.or(ctx.cfg.mu).ok_or("missing --mu")?;
    Ok((params, mu))
}

fn cmd_spectrum_pssqm(ctx: &Ctx, opts: &PssqmOpts) -> CliResult<Report> {
    let (params, mu) = resolve_pssqm(ctx, opts)?;
    let spec = pssqm_spectrum(&params, mu, k_max(ctx, &opts.common)).map_err(|e| e.to_string())?;
    let extra = json!({
        "p": params.lambda() - 1,
        "mu": mu,
        "ground_energy": spec.ground_energy,
        "ground_degeneracy": spec.ground_degeneracy,
        "ground_bound": spec.ground_bound,
    });
    Ok(Report::new("spectrum pssqm", params_json(&params, extra))
        .with_data(spectrum_rows(&spec.spectrum)))
}

fn cmd_fock_verify(ctx: &Ctx, opts: &CommonOpts) -> CliResult<Report> {
    let params = resolve_params(ctx, opts)?;
    let dim = resolve_dim(ctx, opts, params.lambda());
    let rep = FockRep::build(&params, dim).map_err(|e| e.to_string())?;
    let mut checks = rep
        .verify_defining_relations(ctx.tol)
        .map_err(|e| e.to_string())?;
    checks.merge(rep.casimir_matrices(ctx.tol).report);
    Ok(Report::new(
        "fock verify",
        params_json(&params, json!({"dim": dim, "tol": ctx.tol})),
    )
    .with_checks(checks))
}

fn cmd_susy_pssqm(ctx: &Ctx, opts: &PssqmOpts) -> CliResult<Report> {
    let (params, mu) = resolve_pssqm(ctx, opts)?;
    let dim = resolve_dim(ctx, &opts.common, params.lambda());
    let rep = FockRep::build(&params, dim).map_err(|e| e.to_string())?;
    let real = PssqmRealization::build(&rep, mu, None).map_err(|e| e.to_string())?;
    let mut checks = real.verify(&rep, ctx.tol).map_err(|e| e.to_string())?;
    if opts.charges || opts.mixed {
        let set = build_charge_set(&rep, mu).map_err(|e| e.to_string())?;
        if opts.charges {
            checks.merge(
                set.verify(&rep, &real.h_mat, ctx.tol)
                    .map_err(|e| e.to_string())?,
            );
        }
        if opts.mixed {
            let (_, mixed) = find_mixed_relations(&set, &rep, &real.h_mat, ctx.tol.max(1e-9))
                .map_err(|e| e.to_string())?;
            checks.merge(mixed);
        }
    }
    let extra = json!({"p": real.p, "mu": mu, "dim": dim, "tol": ctx.tol});
    Ok(Report::new("susy pssqm", params_json(&params, extra)).with_checks(checks))
}

fn cmd_pseudo(ctx: &Ctx, opts: &PseudoOpts, spectrum: bool) -> CliResult<Report> {
    let mut common = opts.common.clone();
    common.lambda = common.lambda.or(ctx.cfg.lambda).or(Some(3));
    let params = resolve_params(ctx, &common)?;
    let dim = resolve_dim(ctx, &common, params.lambda());
    let rep = FockRep::build(&params, dim).map_err(|e| e.to_string())?;
    let mu = opts.mu.or(ctx.cfg.mu).ok_or("missing --mu")?;
    let family = opts
        .family
        .clone()
        .or_else(|| ctx.cfg.family.clone())
        .ok_or("missing --family (one | two)")?;
    let c = opts.c_const.or(ctx.cfg.c_const).unwrap_or(1.0);
    let real = match family.as_str() {
        "one" | "1" => {
            let eta = opts.eta.or(ctx.cfg.eta).unwrap_or(2f64.sqrt() * c.abs());
            let phi = opts.phi.or(ctx.cfg.phi).unwrap_or(0.0);
            PseudoRealization::build_one(&rep, mu, c, eta, phi)
        }
        "two" | "2" => {
            let r_mu = opts.r_mu.or(ctx.cfg.r_mu).unwrap_or(0.0);
            PseudoRealization::build_two(&rep, mu, c, r_mu)
        }
        other => return Err(format!("unknown pseudo family: {other}")),
    }
    .map_err(|e| e.to_string())?;
    let checks = real.verify(&rep, ctx.tol).map_err(|e| e.to_string())?;
    let extra = json!({
        "family": family, "mu": mu, "c": c, "dim": dim, "tol": ctx.tol,
    });
    let command = if spectrum {
        "spectrum pseudo"
    } else {
        "susy pseudo"
    };
    let mut report = Report::new(command, params_json(&params, extra)).with_checks(checks);
    if spectrum {
        let spec = pseudo_spectrum(&real, &rep, k_max(ctx, &common));
        report = report.with_data(spectrum_rows(&spec));
    }
    Ok(report)
}

fn cmd_ossqm(ctx: &Ctx, opts: &OssqmOpts, spectrum: bool) -> CliResult<Report> {
    let mut common = opts.common.clone();
    common.lambda = common.lambda.or(ctx.cfg.lambda).or(Some(3));
    let params = resolve_params(ctx, &common)?;
    let dim = resolve_dim(ctx, &common, params.lambda());
    let rep = FockRep::build(&params, dim).map_err(|e| e.to_string())?;
    let mu = opts.mu.or(ctx.cfg.mu).ok_or("missing --mu")?;
    let xi = opts.xi.or(ctx.cfg.xi).unwrap_or(1.0);
    let phi = opts.phi.or(ctx.cfg.phi).unwrap_or(0.0);
    let real = OrthoRealization::build(&rep, mu, xi, phi).map_err(|e| e.to_string())?;
    let checks = real.verify(&rep, ctx.tol).map_err(|e| e.to_string())?;
    let extra = json!({"mu": mu, "xi": xi, "phi": phi, "dim": dim, "tol": ctx.tol});
    let command = if spectrum {
        "spectrum ossqm"
    } else {
        "susy ossqm"
    };
    let mut report = Report::new(command, params_json(&params, extra)).with_checks(checks);
    if spectrum {
        let spec = ortho_spectrum(&real, &rep, k_max(ctx, &common));
        report = report.with_data(spectrum_rows(&spec));
    }
    Ok(report)
}

fn cmd_deform_verify(ctx: &Ctx, opts: &DeformOpts) -> CliResult<Report> {
    let family = opts
        .family
        .clone()
        .or_else(|| ctx.cfg.family.clone())
        .ok_or("missing --family (a | b | c)")?;
    let q = opts.q.or(ctx.cfg.q).ok_or("missing --q")?;
    let def: DeformedAlgebra = match family.as_str() {
        "a" => {
            let alpha_hat = opts
                .alpha_hat
                .or(ctx.cfg.alpha_hat)
                .ok_or("family a needs --alpha-hat (deformed Calogero-Vasiliev)")?;
            DeformedAlgebra::calogero_vasiliev(q, alpha_hat)
        }
        "b" => {
            let lambda = opts
                .common
                .lambda
                .or(ctx.cfg.lambda)
                .ok_or("missing --lambda")?;
            let alpha = opts
                .common
                .alpha
                .clone()
                .or_else(|| ctx.cfg.alpha.clone())
                .ok_or("missing --alpha")?;
            let k = opts.k.or(ctx.cfg.k).ok_or("family b needs --k")?;
            make_deformed(
                lambda,
                &alpha,
                q,
                DeformSpec::B {
                    h: ScalarSequence::Constant { value: 1.0 },
                    k,
                    b: opts.b.or(ctx.cfg.b).unwrap_or(1.0),
                    big_b: opts.big_b.or(ctx.cfg.big_b).unwrap_or(1.0),
                },
            )
        }
        "c" => {
            let lambda = opts
                .common
                .lambda
                .or(ctx.cfg.lambda)
                .ok_or("missing --lambda")?;
            let alpha = opts
                .common
                .alpha
                .clone()
                .or_else(|| ctx.cfg.alpha.clone())
                .ok_or("missing --alpha")?;
            make_deformed(
                lambda,
                &alpha,
                q,
                DeformSpec::C {
                    h: ScalarSequence::Constant { value: 1.0 },
                    b: opts.b.or(ctx.cfg.b).unwrap_or(1.0),
                    big_b: opts.big_b.or(ctx.cfg.big_b).unwrap_or(1.0),
                },
            )
        }
        other => return Err(format!("unknown deformation family: {other}")),
    }
    .map_err(|e| e.to_string())?;
    let lambda = def.lambda();
    let dim = resolve_dim(ctx, &opts.common, lambda).min(40);
    let dim = dim.div_ceil(lambda) * lambda;
    let rep = build_deformed_fock(&def, dim).map_err(|e| e.to_string())?;
    let checks = rep.verify(ctx.tol).map_err(|e| e.to_string())?;
    let extra = json!({
        "family": family, "q": q, "dim": dim, "tol": ctx.tol,
        "beta_def": def.beta_def,
    });
    Ok(Report::new("deform verify", params_json(&def.params, extra)).with_checks(checks))
}

fn cmd_tables(ctx: &Ctx, lambda: Option<usize>) -> CliResult<Report> {
    let lambda = lambda.or(ctx.cfg.lambda).ok_or("missing lambda argument")?;
    let rows = table_report(lambda).map_err(|e| e.to_string())?;
    let data: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (kind, fd_dim) = kind_fields(r.kind);
            json!({
                "kind": kind,
                "d": fd_dim,
                "n0": r.n0_pattern,
                "c": r.c_text,
                "conditions": r
                    .conditions
                    .iter()
                    .map(|c| c.text.clone())
                    .collect::<Vec<_>>()
                    .join(" && "),
            })
        })
        .collect();
    Ok(Report::new("tables", json!({"lambda": lambda})).with_data(Value::Array(data)))
}
