mod cache;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;
use w22_core::algebra::AlgebraKind;
use w22_core::embedding::{branch, verma_branch_decomposition, w_closure_dims};
use w22_core::model::GradedModel;
use w22_core::rational::{fmt_rational, int};
use w22_core::screening::{kernel_data, ScreeningOps};
use w22_core::series::p2;
use w22_core::verify::{run_suites, Suite, VerifyConfig};
use w22_core::verma::{
    character_dims, classify, find_cosingular, find_singular, gram_matrix, irr_graded_dims,
    HighestWeightSpec,
};
use w22_core::{BaseTag, Error, Family, ModuleVector, Monomial};

use cache::DimCache;
use config::{ConfigError, Format, ModuleArg, RunArgs, RunConfig};
use report::{Echo, Report};

#[derive(Parser, Debug)]
#[command(
    name = "w22",
    version,
    about = "Highest-weight modules of W(2,2) and the Heisenberg-Virasoro algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimensions of a Verma module or its irreducible quotient.
    Char(RunArgs),
    /// Singular vectors at one level.
    Singular(RunArgs),
    /// Cosingular vectors at one level of an atypical W(2,2) Verma module.
    Cosingular(RunArgs),
    /// Contravariant pairing at one level.
    Gram(RunArgs),
    /// Branching of an irreducible HV module over W(2,2).
    Branch(RunArgs),
    /// W-closures of the singular chain of V^H(h, (1-p)c_LI).
    Decompose(RunArgs),
    /// Kernel of the screening operator S1(0) on the vacuum module.
    Kernel(RunArgs),
    /// Invariant suites.
    Verify(RunArgs),
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Invalid(s) => Failure::Invalid(s),
            ConfigError::Io(s) => Failure::Io(s),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match cli.command {
        Command::Char(a) => ("char", a),
        Command::Singular(a) => ("singular", a),
        Command::Cosingular(a) => ("cosingular", a),
        Command::Gram(a) => ("gram", a),
        Command::Branch(a) => ("branch", a),
        Command::Decompose(a) => ("decompose", a),
        Command::Kernel(a) => ("kernel", a),
        Command::Verify(a) => ("verify", a),
    };
    match execute(name, args) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn execute(name: &str, args: RunArgs) -> Result<bool, Failure> {
    let cfg = RunConfig::from_args(args.resolve()?)?;
    let start = Instant::now();
    let mut report = run(name, &cfg)?;
    if cfg.args.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cfg.args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?,
    }
    Ok(report.passed)
}

fn echo(cfg: &RunConfig) -> Echo {
    let a = &cfg.args;
    Echo {
        algebra: a.algebra.map(|x| AlgebraKind::from(x).to_string()),
        h: a.h.clone(),
        hi: a.hi.clone(),
        hw: a.hw.clone(),
        cl: fmt_rational(cfg.charges.c_l()),
        cli: fmt_rational(cfg.charges.c_li()),
        levels: cfg.levels,
        level: a.level,
        module: a.module.map(|m| match m {
            ModuleArg::Verma => "verma".to_string(),
            ModuleArg::Irr => "irr".to_string(),
        }),
        p: a.p,
        suite: a.suite.clone(),
        seed: a.seed,
    }
}

fn run(name: &str, cfg: &RunConfig) -> Result<Report, Failure> {
    let mut report = Report::new(name, echo(cfg));
    match name {
        "char" => char_cmd(cfg, &mut report)?,
        "singular" => vectors_cmd(cfg, &mut report, false)?,
        "cosingular" => vectors_cmd(cfg, &mut report, true)?,
        "gram" => gram_cmd(cfg, &mut report)?,
        "branch" => branch_cmd(cfg, &mut report)?,
        "decompose" => decompose_cmd(cfg, &mut report)?,
        "kernel" => kernel_cmd(cfg, &mut report)?,
        "verify" => verify_cmd(cfg, &mut report)?,
        _ => unreachable!("subcommands are fixed"),
    }
    Ok(report)
}

fn with_spec(cfg: &RunConfig, report: &mut Report) -> Result<HighestWeightSpec, Failure> {
    let spec = cfg.spec()?;
    report.classification = Some(classify(&spec));
    report.spec = Some(spec.clone());
    Ok(spec)
}

fn cached_irr_dims(cfg: &RunConfig, spec: &HighestWeightSpec) -> Result<Vec<usize>, Failure> {
    let Some(dir) = &cfg.args.cache_dir else {
        return Ok(irr_graded_dims(spec, cfg.levels)?);
    };
    let cache = DimCache::open(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let cc = spec.charges();
    let key = format!(
        "irr|{}|{}|{}|{}|{}|{}",
        spec.kind(),
        fmt_rational(cc.c_l()),
        fmt_rational(cc.c_li()),
        fmt_rational(spec.h()),
        fmt_rational(spec.second()),
        cfg.levels
    );
    if let Some(d) = cache.get(&key) {
        return Ok(d);
    }
    let dims = irr_graded_dims(spec, cfg.levels)?;
    cache
        .put(&key, &dims)
        .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    Ok(dims)
}

fn char_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let spec = with_spec(cfg, report)?;
    let n = cfg.levels;
    match cfg.args.module.unwrap_or(ModuleArg::Irr) {
        ModuleArg::Verma => {
            let dims: Vec<usize> = (0..=n).map(|l| p2(l) as usize).collect();
            report.column("dim", &dims);
        }
        ModuleArg::Irr => {
            let dims = cached_irr_dims(cfg, &spec)?;
            let chars = character_dims(&spec, n);
            report.column("dim", &dims);
            report.column("character", &chars);
            report.certify(
                "gram rank = character formula",
                dims == chars,
                None,
                format!("levels 0..={n}"),
            );
        }
    }
    Ok(())
}

fn vectors_cmd(cfg: &RunConfig, report: &mut Report, co: bool) -> Result<(), Failure> {
    let spec = with_spec(cfg, report)?;
    let level = cfg.level()?;
    let found: Vec<ModuleVector> = if co {
        find_cosingular(&spec, level)?
    } else {
        find_singular(&spec, level)?
    };
    report.vectors = found.iter().map(ToString::to_string).collect();
    report.details = Some(json!({ "level": level, "count": found.len() }));
    Ok(())
}

fn gram_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let spec = with_spec(cfg, report)?;
    let level = cfg.level()?;
    let g = gram_matrix(&spec, level)?;
    let rows: Vec<Vec<String>> = (0..g.matrix.rows())
        .map(|i| g.matrix.row(i).iter().map(fmt_rational).collect())
        .collect();
    let basis: Vec<String> = g.basis.iter().map(Monomial::operator_text).collect();
    report.vectors = g.radical.iter().map(ToString::to_string).collect();
    report.details = Some(json!({
        "level": level,
        "basis": basis,
        "matrix": rows,
        "rank": g.rank,
        "radical_dim": g.radical.len(),
    }));
    Ok(())
}

fn branch_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let spec = with_spec(cfg, report)?;
    if spec.kind() != AlgebraKind::Hv {
        return Err(Failure::Invalid(
            "branch takes a Heisenberg-Virasoro weight (--algebra hv)".into(),
        ));
    }
    let b = branch(&spec, cfg.levels)?;
    report.column("host", &b.host_dims);
    report.column("submodule", &b.submodule_dims);
    report.column("quotient", &b.quotient_dims);
    report.column("expected_submodule", &b.expected_submodule_dims);
    report.column("expected_quotient", &b.expected_quotient_dims);
    let mut sing = vec![0usize];
    sing.extend(&b.w_singular_dims);
    report.column("w_singular", &sing);
    report.passed &= b.passed();
    report.certificates = b.certificates.clone();
    Ok(())
}

fn decompose_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let h = cfg.h()?;
    let p = cfg
        .args
        .p
        .ok_or_else(|| Failure::Invalid("--p is required".into()))?;
    let d = verma_branch_decomposition(h, p, &cfg.charges, cfg.levels)?;
    report.classification = Some(classify(&d.spec));
    report.spec = Some(d.spec.clone());
    report.column("verma", &d.verma_dims);
    report.column("closure_sum", &d.dim_sums);
    for c in &d.chain {
        report.column(&format!("closure_{}", c.level), &c.closure_dims);
        report.certify(
            &format!("v_{} singular and W-singular", c.level),
            c.h_singular && c.w_singular && c.closure_dims == c.expected_dims,
            Some(c.level),
            c.vector.clone(),
        );
    }
    report.certify("closures independent", d.independent, None, String::new());
    report.certify(
        "dimension sum = P2",
        d.dim_sums == d.verma_dims,
        None,
        String::new(),
    );
    Ok(())
}

fn kernel_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let n = cfg.levels;
    let ops = ScreeningOps::new(&cfg.charges)?;
    let data = kernel_data(&ops, n)?;
    let vac_spec = HighestWeightSpec::w22(cfg.charges.clone(), int(0), int(0));
    let chars = character_dims(&vac_spec, n);
    let one = ops
        .vacuum()
        .reduce(&ModuleVector::from_monomial(Monomial::base_only(
            Family::I,
            BaseTag::Vacuum,
        )));
    let vac: std::sync::Arc<dyn GradedModel> = ops.vacuum().clone();
    let (_, closure) = w_closure_dims(vac, &[one], n)?;
    report.column("vacuum", &data.vacuum_dims);
    report.column("kernel", &data.kernel_dims);
    report.column("rank", &data.ranks);
    report.column("w_closure", &closure);
    report.column("character", &chars);
    report.certify(
        "kernel = character",
        data.kernel_dims == chars,
        None,
        String::new(),
    );
    report.certify(
        "kernel = W-closure of 1",
        data.kernel_dims == closure,
        None,
        String::new(),
    );
    Ok(())
}

fn verify_cmd(cfg: &RunConfig, report: &mut Report) -> Result<(), Failure> {
    let name = cfg.args.suite.as_deref().unwrap_or("all");
    let suites =
        Suite::parse(name).ok_or_else(|| Failure::Invalid(format!("unknown suite {name:?}")))?;
    let vc = VerifyConfig {
        charges: cfg.charges.clone(),
        max_level: cfg.levels,
        seed: cfg.args.seed.unwrap_or(1),
    };
    for line in run_suites(&vc, &suites) {
        report.certify(
            &format!("{}/{}", line.suite, line.name),
            line.passed,
            None,
            line.detail,
        );
    }
    Ok(())
}
