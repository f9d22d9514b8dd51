//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use plie_core::exact::{format_rational, increasing_tuples, int, Form, Tensor};
use plie_core::hawkins::InvariantComplex;
use plie_core::metric::{
    curvature, levi_civita, metric_parallel_defect, nabla_curvature, prla_defect, prpl_abelian_base_check,
    torsion_defect,
};
use plie_core::tangent::{geometry_verdicts, verify_prla_double, verify_prpl_theorem, verify_tangent_suite, VerificationReport};
use plie_core::Exec;
use sha2::{Digest, Sha256};

use crate::catalog;
use crate::error::CliError;
use crate::report::{Check, Format, Report, Verdict, Witness};
use crate::spec::{emit, emit_double, parse_document, MetricSide, Model, SpecDocument};

/// Degree bound for the graded Jacobi sweep.
const JACOBI_DEGREE: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "plie", version, about = "Exact checks for Lie bialgebras, their metrics and tangent doubles")]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Override a declared parameter, e.g. `--param lambda=-2`.
    #[arg(long = "param", global = true, value_name = "NAME=RATIONAL", value_parser = parse_param)]
    pub params: Vec<(String, String)>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi, cocycle and metric validity checks.
    Check { file: String },
    /// Levi-Civita connection on the dual.
    Connection { file: String },
    /// Curvature and its covariant derivative.
    Curvature { file: String },
    /// Pre-Poisson bracket and metacurvature on invariant forms.
    Hawkins { file: String },
    /// Flat / locally symmetric / metaflat / compatibility verdicts.
    Classify { file: String },
    /// Emit the tangent double as a new spec file.
    Double { file: String },
    /// Compare the double against the pair formulas.
    VerifyTangent { file: String },
    /// Built-in spec files.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .filter(|(k, v)| !k.is_empty() && !v.is_empty())
        .ok_or_else(|| format!("expected NAME=RATIONAL, got {s:?}"))
}

/// What a run produced; the binary copies it to the real streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let result = dispatch(&cli).and_then(|(text, code)| match &cli.out {
        Some(path) => std::fs::write(path, &text)
            .map(|_| (String::new(), code))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => Ok((text, code)),
    });
    match result {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("plie: {e}\n"), code: 2 },
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    let report = match &cli.command {
        Command::Catalog { action } => return catalog_command(action, cli.format),
        Command::Double { file } => {
            let doc = load(file, &cli.params)?;
            return Ok((emit(&emit_double(&doc)?), 0));
        }
        Command::Check { file } => check(&load(file, &cli.params)?)?,
        Command::Connection { file } => with_model(file, cli, "connection", connection)?,
        Command::Curvature { file } => with_model(file, cli, "curvature", curvature_cmd)?,
        Command::Hawkins { file } => with_model(file, cli, "hawkins", hawkins)?,
        Command::Classify { file } => with_model(file, cli, "classify", classify)?,
        Command::VerifyTangent { file } => with_model(file, cli, "verify-tangent", verify_tangent)?,
    };
    Ok((report.render(cli.format), report.exit))
}

fn catalog_command(action: &CatalogAction, format: Format) -> Result<(String, i32), CliError> {
    match action {
        CatalogAction::List => {
            let names = catalog::names()?;
            let text = match format {
                Format::Json => crate::report::canonical_json(names.into()),
                Format::Text => names.iter().map(|n| format!("{n}\n")).collect(),
            };
            Ok((text, 0))
        }
        CatalogAction::Show { name } => catalog::lookup(name)?
            .map(|t| (t, 0))
            .ok_or_else(|| CliError::Usage(format!("no catalog entry named {name:?}"))),
    }
}

/// Read a spec from a path, falling back to the catalog, and apply overrides.
pub fn load(file: &str, params: &[(String, String)]) -> Result<SpecDocument, CliError> {
    let text = if Path::new(file).is_file() {
        std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{file}: {e}")))?
    } else {
        catalog::lookup(file)?.ok_or_else(|| CliError::Io(format!("{file}: no such file or catalog entry")))?
    };
    parse_document(&text)?.with_params(params)
}

/// `sha256:` digest of the canonical text.
pub fn digest(doc: &SpecDocument) -> String {
    let hash = Sha256::digest(emit(doc).as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn with_model(
    file: &str,
    cli: &Cli,
    command: &str,
    f: fn(&Model, &mut Report) -> Result<(), CliError>,
) -> Result<Report, CliError> {
    let doc = load(file, &cli.params)?;
    let model = doc.model()?;
    let mut report = Report::new(command, &doc.name, &digest(&doc));
    f(&model, &mut report)?;
    report.exit = i32::from(report.any_failed());
    Ok(report)
}

fn core(e: plie_core::CoreError) -> CliError {
    CliError::from_core(e)
}

fn defect(t: &Tensor, label: &str) -> Option<Witness> {
    t.first_nonzero().map(|(ix, v)| Witness {
        label: label.to_string(),
        index: ix.iter().map(|i| i + 1).collect(),
        lhs: format_rational(&v),
        rhs: "0".into(),
    })
}

fn check(doc: &SpecDocument) -> Result<Report, CliError> {
    let mut report = Report::new("check", &doc.name, &digest(doc));
    for v in doc.validity_checks()? {
        report.checks.push(Check::gate(v.name, v.witness));
    }
    report.exit = i32::from(report.any_failed());
    Ok(report)
}

fn connection(m: &Model, r: &mut Report) -> Result<(), CliError> {
    let a = m.contravariant();
    let conn = levi_civita(m.bi.gstar(), &a).map_err(core)?;
    r.checks.push(Check::gate("torsion_free", defect(&torsion_defect(&conn, m.bi.gstar()), "torsion_defect")));
    r.checks.push(Check::gate("metric_parallel", defect(&metric_parallel_defect(&conn, &a), "metric_parallel_defect")));
    r.tensors.insert("connection".into(), conn.coefficients().clone());
    Ok(())
}

fn curvature_cmd(m: &Model, r: &mut Report) -> Result<(), CliError> {
    let conn = levi_civita(m.bi.gstar(), &m.contravariant()).map_err(core)?;
    let curv = curvature(&conn, m.bi.gstar());
    let nabla = nabla_curvature(&conn, &curv);
    let t = curv.tensor();
    let n = m.bi.dim();
    let antisym = Tensor::from_fn(&[n, n, n, n], |ix| t.get(ix) + t.get(&[ix[1], ix[0], ix[2], ix[3]]));
    r.checks.push(Check::gate("curvature_antisymmetric", defect(&antisym, "curvature_symmetric_part")));
    r.checks.push(Check::new("flat", Verdict::flag(curv.is_zero())));
    r.checks.push(Check::new("locally_symmetric", Verdict::flag(nabla.is_zero())));
    r.tensors.insert("curvature".into(), t.clone());
    r.tensors.insert("nabla_curvature".into(), nabla);
    Ok(())
}

fn hawkins(m: &Model, r: &mut Report) -> Result<(), CliError> {
    let n = m.bi.dim();
    let cx = InvariantComplex::from_bialgebra(&m.bi, &m.contravariant()).map_err(core)?;

    let d_squared = (0..=n)
        .flat_map(|k| increasing_tuples(n, k))
        .find_map(|t| {
            let f = Form::monomial(n, &t, int(1)).expect("increasing tuple");
            let dd = cx.d(&cx.d(&f));
            let w = dd.terms().next().map(|(ix, v)| Witness {
                label: "d_squared".into(),
                index: t.iter().chain(ix).map(|i| i + 1).collect(),
                lhs: format_rational(v),
                rhs: "0".into(),
            });
            w
        });
    r.checks.push(Check::gate("d_squared", d_squared));

    let mut pp = Tensor::zeros(&[n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let f = cx.pre_poisson(&Form::basis(n, i), &Form::basis(n, j)).map_err(core)?;
            for (ix, v) in f.terms() {
                pp.set(&[i, j, ix[0]], v.clone());
            }
        }
    }
    let asym = cx.bracket_asymmetry().map(|(i, j)| {
        let k = (0..n).find(|&k| pp.get(&[i, j, k]) != pp.get(&[j, i, k])).unwrap_or(0);
        Witness {
            label: "pre_poisson_asymmetry".into(),
            index: vec![i + 1, j + 1, k + 1],
            lhs: format_rational(pp.get(&[i, j, k])),
            rhs: format_rational(pp.get(&[j, i, k])),
        }
    });
    r.checks.push(Check::gate("bracket_symmetric", asym));

    let meta = cx.metacurvature();
    let meta_t = meta.to_tensor();
    let msym = meta.symmetry_violation().map(|(i, j, k)| {
        let (a, b) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| meta_t.get(&[i, j, k, a, b]) != meta_t.get(&[i, k, j, a, b]))
            .unwrap_or((0, 0));
        Witness {
            label: "metacurvature_asymmetry".into(),
            index: vec![i + 1, j + 1, k + 1, a + 1, b + 1],
            lhs: format_rational(meta_t.get(&[i, j, k, a, b])),
            rhs: format_rational(meta_t.get(&[i, k, j, a, b])),
        }
    });
    r.checks.push(Check::gate("metacurvature_symmetric", msym));

    let metaflat = meta.is_zero();
    r.checks.push(Check::new("metaflat", Verdict::flag(metaflat)));
    if metaflat {
        let w = cx.jacobi_sweep(JACOBI_DEGREE).map(|(s, u, v)| Witness {
            label: "graded_jacobi".into(),
            index: Vec::new(),
            lhs: format!("{s} | {u} | {v}"),
            rhs: "0".into(),
        });
        r.checks.push(Check::gate("graded_jacobi", w).with_detail("max_degree", JACOBI_DEGREE.to_string()));
    } else {
        r.checks.push(Check::new("graded_jacobi", Verdict::Skipped));
    }
    r.tensors.insert("pre_poisson".into(), pp);
    r.tensors.insert("metacurvature".into(), meta_t);
    Ok(())
}

/// The pseudo-Riemannian Lie algebra test runs on the side the metric was
/// written for: `(g, ã)` for covariant documents, `(g*, a)` otherwise.
fn prla_side(m: &Model) -> (&plie_core::LieAlgebra, plie_core::metric::MetricForm, &'static str) {
    match m.side {
        MetricSide::Covariant => (m.bi.g(), m.metric.clone(), "g"),
        MetricSide::Contravariant => (m.bi.gstar(), m.metric.clone(), "g*"),
    }
}

fn classify(m: &Model, r: &mut Report) -> Result<(), CliError> {
    let a = m.contravariant();
    let v = geometry_verdicts(m.bi.gstar(), m.bi.g(), &a).map_err(core)?;
    r.checks.push(Check::new("flat", Verdict::flag(v.flat)));
    r.checks.push(Check::new("locally_symmetric", Verdict::flag(v.locally_symmetric)));
    r.checks.push(Check::new("metaflat", Verdict::flag(v.metaflat)));
    r.checks.push(Check::new("generalized_poisson", Verdict::flag(v.flat && v.metaflat)));

    let (alg, metric, side) = prla_side(m);
    let prla = prla_defect(alg, &metric).map_err(core)?;
    r.checks.push(Check::gate("prla", defect(&prla, "prla_defect")).with_detail("side", side));

    if m.bi.g().is_abelian() {
        let p = prpl_abelian_base_check(&m.bi, &a).map_err(core)?;
        let w = p.witness.map(|(ix, v)| Witness {
            label: match p.failing_point.flatten() {
                None => "prpl_defect@origin".into(),
                Some(i) => format!("prpl_defect@e{}", i + 1),
            },
            index: ix.iter().map(|i| i + 1).collect(),
            lhs: format_rational(&v),
            rhs: "0".into(),
        });
        r.checks.push(Check::gate("prpl_abelian_base", w));
    } else {
        r.checks.push(Check::new("prpl_abelian_base", Verdict::Skipped));
    }
    Ok(())
}

fn tangent_check(rep: VerificationReport, r: &mut Report) {
    let witness = rep.witnesses.first().map(|w| Witness {
        label: w.label.clone(),
        index: w.index.clone(),
        lhs: format_rational(&w.lhs),
        rhs: format_rational(&w.rhs),
    });
    let mut c = Check::gate(rep.statement.clone(), witness)
        .with_detail("nonzero", rep.lhs.nonzero().count().to_string());
    for v in &rep.verdicts {
        c = c.with_detail(&v.name, format!("{}/{}", v.base, v.double));
    }
    r.checks.push(c);
    r.tensors.insert(format!("{}.lhs", rep.statement), rep.lhs);
}

fn verify_tangent(m: &Model, r: &mut Report) -> Result<(), CliError> {
    let a = m.contravariant();
    for rep in verify_tangent_suite(&m.bi, &a, Exec::default()).map_err(core)? {
        tangent_check(rep, r);
    }
    let (alg, metric, _) = prla_side(m);
    tangent_check(verify_prla_double(alg, &metric).map_err(core)?, r);
    if m.bi.g().is_abelian() {
        tangent_check(verify_prpl_theorem(&m.bi, &a).map_err(core)?, r);
    } else {
        r.checks.push(Check::new("prpl_double", Verdict::Skipped));
    }
    Ok(())
}
