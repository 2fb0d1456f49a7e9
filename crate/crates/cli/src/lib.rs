//! Argument parsing, dispatch and output rendering for the `mds` binary.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mds_core::asymptotics::{convergence, params, predicted_gamma, CountSource};
use mds_core::census::{count_mds_grassmannian_filter, count_mds_matrix_scan, CensusResult};
use mds_core::code::{higher_weight_search, weight_spectrum, GrassmannCode, HigherWeightMode, SpectrumMode};
use mds_core::combinatorics::gaussian_binomial;
use mds_core::exec::DEFAULT_BUDGET;
use mds_core::exterior::{form_profile, form_weight, DualForm, WeightMethod};
use mds_core::linalg::enumerate_grassmannian;
use mds_core::sections::{coordinate_sections, inclusion_exclusion};
use mds_core::verify::{all_passed, run_suite, Scale, Suite};
use mds_core::{Exec, Field, MultiIndex};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "mds", version, about = "Exact MDS code counts, Grassmannian sections and Grassmann code weights over GF(q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on enumeration steps per call.
    #[arg(long, global = true, env = "MDS_BUDGET")]
    pub budget: Option<u128>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Default seed for sampled spectra.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct Shape {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Field order, a prime power.
    #[arg(long)]
    pub q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Scan,
    Filter,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Direct,
    Recursive,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DrMode {
    Exhaustive,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Fields,
    Plucker,
    Weights,
    Sections,
    Asymptotics,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Quick,
    Full,
}

/// `exhaustive`, `sample:COUNT` or `sample:COUNT:SEED`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumArg {
    Exhaustive,
    Sample { count: usize, seed: Option<u64> },
}

impl FromStr for SpectrumArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<u64>().map_err(|e| format!("bad number {p:?}: {e}"));
        match parts.as_slice() {
            ["exhaustive"] => Ok(SpectrumArg::Exhaustive),
            ["sample", c] => Ok(SpectrumArg::Sample { count: num(c)? as usize, seed: None }),
            ["sample", c, s] => Ok(SpectrumArg::Sample { count: num(c)? as usize, seed: Some(num(s)?) }),
            _ => Err(format!("expected exhaustive or sample:COUNT[:SEED], got {s:?}")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count [n,k] MDS codes over GF(q).
    Count {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = CountMethod::Scan)]
        method: CountMethod,
    },
    /// Enumerate G(k,n) over GF(q) and compare with the Gaussian binomial.
    GrassmannCount {
        #[command(flatten)]
        shape: Shape,
    },
    /// Norms of coordinate sections; subset_id bit i marks the i-th k-index in lex order.
    Sections {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        max_r: usize,
        /// Keep every subset rather than one witness per (norm, ann_in_g).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Reconstruct gamma by inclusion-exclusion over coordinate sections.
    InclExcl {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        verify_against_census: bool,
    },
    /// Expansion coefficients and, with --q-list, comparison with exact counts.
    Asympt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        q_list: Option<Vec<u64>>,
    },
    /// Grassmann code parameters, weight spectrum and higher weights.
    Code {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "exhaustive")]
        spectrum: SpectrumArg,
        /// Also report the smallest r-dimensional subcode support.
        #[arg(long)]
        dr: Option<usize>,
        #[arg(long, value_enum, default_value_t = DrMode::Structured)]
        dr_mode: DrMode,
    },
    /// Weight of one k-form given as JSON terms, e.g. '[{"index":[1,2],"coeff":1}]'.
    Weight {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        form: String,
        #[arg(long, value_enum, default_value_t = WeightArg::Direct)]
        method: WeightArg,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = ScaleArg::Quick)]
        scale: ScaleArg,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mds_core::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for a budget refusal, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(mds_core::Error::BudgetExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

/// A command's result, renderable as JSON or as a flat table.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub default_format: Format,
    /// `false` when a requested cross-check disagreed or a suite failed.
    pub success: bool,
}

impl Report {
    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Invalid(e.to_string()))? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).map_err(|e| CliError::Invalid(e.to_string()))?;
                for row in &self.rows {
                    w.write_record(row).map_err(|e| CliError::Invalid(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
            }
            Format::Table => Ok(self.table()),
        }
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &mut dyn Iterator<Item = &str>| {
            let padded: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut self.columns.iter().copied());
        for row in &self.rows {
            line(&mut row.iter().map(String::as_str));
        }
        out
    }
}

fn field(q: u64) -> Result<Arc<Field>, CliError> {
    Ok(Arc::new(Field::from_order(q)?))
}

pub fn exec(global: &Global) -> Result<Exec, CliError> {
    let mut exec = Exec::default().with_budget(DEFAULT_BUDGET);
    if let Some(t) = global.threads {
        if t == 0 {
            return Err(CliError::Invalid("--threads must be at least 1".into()));
        }
        exec = exec.with_threads(t);
    }
    if let Some(b) = global.budget {
        if b == 0 {
            return Err(CliError::Invalid("--budget must be at least 1".into()));
        }
        exec = exec.with_budget(b);
    }
    Ok(exec)
}

fn census_json(r: &CensusResult) -> Value {
    json!({
        "k": r.k,
        "n": r.n,
        "q": r.q,
        "gamma": r.gamma.to_string(),
        "gamma_tilde": r.gamma_tilde.to_string(),
        "method": r.method.name(),
        "elapsed_ms": r.elapsed.as_millis() as u64,
    })
}

fn census_row(r: &CensusResult) -> Vec<String> {
    vec![
        r.k.to_string(),
        r.n.to_string(),
        r.q.to_string(),
        r.gamma.to_string(),
        r.gamma_tilde.to_string(),
        r.method.name().to_string(),
        r.elapsed.as_millis().to_string(),
    ]
}

fn count(shape: &Shape, method: CountMethod, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    let mut results = Vec::new();
    if method != CountMethod::Filter {
        results.push(count_mds_matrix_scan(shape.k, shape.n, &f, exec)?);
    }
    if method != CountMethod::Scan {
        results.push(count_mds_grassmannian_filter(shape.k, shape.n, &f, exec)?);
    }
    let success = results.windows(2).all(|w| w[0].gamma == w[1].gamma);
    let json = match results.as_slice() {
        [one] => census_json(one),
        many => Value::Array(many.iter().map(census_json).collect()),
    };
    Ok(Report {
        json,
        columns: vec!["k", "n", "q", "gamma", "gamma_tilde", "method", "elapsed_ms"],
        rows: results.iter().map(census_row).collect(),
        default_format: Format::Json,
        success,
    })
}

fn grassmann_count(shape: &Shape, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    let count = enumerate_grassmannian(&f, shape.k, shape.n, exec)?.count();
    let expected = gaussian_binomial(shape.k as u64, shape.n as u64, shape.q);
    let success = expected == count.into();
    Ok(Report {
        json: json!({
            "k": shape.k, "n": shape.n, "q": shape.q,
            "count": count.to_string(),
            "gaussian_binomial": expected.to_string(),
        }),
        columns: vec!["k", "n", "q", "count", "gaussian_binomial"],
        rows: vec![vec![shape.k.to_string(), shape.n.to_string(), shape.q.to_string(), count.to_string(), expected.to_string()]],
        default_format: Format::Json,
        success,
    })
}

fn sections(shape: &Shape, max_r: usize, exhaustive: bool, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    let records = coordinate_sections(shape.k, shape.n, &f, max_r, exhaustive, exec)?;
    let all = MultiIndex::all(shape.k, shape.n);
    let json = Value::Array(
        records
            .iter()
            .map(|rec| {
                let indices: Vec<Vec<usize>> =
                    (0..all.len()).filter(|i| rec.subset >> i & 1 == 1).map(|i| all[i].indices()).collect();
                json!({ "r": rec.r, "subset_id": rec.subset.to_string(), "indices": indices, "norm": rec.norm.to_string(), "ann_in_g": rec.ann_in_g })
            })
            .collect(),
    );
    Ok(Report {
        json,
        columns: vec!["r", "subset_id", "norm", "ann_in_g"],
        rows: records
            .iter()
            .map(|rec| vec![rec.r.to_string(), rec.subset.to_string(), rec.norm.to_string(), rec.ann_in_g.to_string()])
            .collect(),
        default_format: Format::Csv,
        success: true,
    })
}

fn incl_excl(shape: &Shape, verify: bool, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    let rep = inclusion_exclusion(shape.k, shape.n, &f, exec)?;
    let census = if verify { Some(BigInt::from(count_mds_matrix_scan(shape.k, shape.n, &f, exec)?.gamma)) } else { None };
    let success = census.as_ref().is_none_or(|c| *c == rep.gamma_reconstructed);
    let structured = rep.structured.as_ref();
    let rows = rep
        .e_terms
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let r = i + 1;
            let c = |t: Option<&Vec<u64>>| t.and_then(|v| v.get(r)).map_or(String::new(), |x| x.to_string());
            vec![r.to_string(), e.to_string(), c(structured.map(|s| &s.c1)), c(structured.map(|s| &s.c2))]
        })
        .collect();
    let mut json = json!({
        "k": shape.k, "n": shape.n, "q": shape.q,
        "e_terms": rep.e_terms.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "gamma_reconstructed": rep.gamma_reconstructed.to_string(),
    });
    if let Some(s) = structured {
        json["c1"] = json!(s.c1.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        json["c2"] = json!(s.c2.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    if let Some(c) = &census {
        json["census_gamma"] = json!(c.to_string());
        json["agrees"] = json!(success);
    }
    Ok(Report { json, columns: vec!["r", "e_r", "c1", "c2"], rows, default_format: Format::Json, success })
}

fn asympt(k: usize, n: usize, q_list: Option<&[u64]>, exec: &Exec) -> Result<Report, CliError> {
    let p = params(k, n)?;
    let mut json = json!({
        "k": k, "n": n,
        "delta": p.delta,
        "big_n": p.big_n.to_string(),
        "a2": p.a2.to_string(),
        "b1": p.b1.to_string(),
        "b2": p.b2.to_string(),
    });
    let Some(qs) = q_list else {
        return Ok(Report {
            json,
            columns: vec!["k", "n", "delta", "big_n", "a2", "b1", "b2"],
            rows: vec![vec![
                k.to_string(),
                n.to_string(),
                p.delta.to_string(),
                p.big_n.to_string(),
                p.a2.to_string(),
                p.b1.to_string(),
                p.b2.to_string(),
            ]],
            default_format: Format::Json,
            success: true,
        });
    };
    // integrality of the truncation is checked before any census runs
    for &q in qs {
        predicted_gamma(k, n, q)?;
    }
    let rep = convergence(k, n, qs, exec)?;
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| vec![r.q.to_string(), r.gamma.to_string(), r.predicted.to_string(), r.residual.to_string(), r.normalized.to_string()])
        .collect();
    json["rows"] = Value::Array(
        rep.rows
            .iter()
            .map(|r| {
                json!({
                    "q": r.q,
                    "gamma": r.gamma.to_string(),
                    "predicted": r.predicted.to_string(),
                    "residual": r.residual.to_string(),
                    "normalized_residual": r.normalized.to_string(),
                    "source": match r.source { CountSource::Census => "census", CountSource::ClosedForm => "closed-form" },
                })
            })
            .collect(),
    );
    json["bounded"] = json!(rep.bounded);
    json["max_abs_normalized_residual"] = json!(rep.max_abs_normalized.to_string());
    json["verdict_rule"] = json!("heuristic: max |residual/q^(delta-3)| over the upper half of q <= 2 x the max over the lower half");
    Ok(Report {
        json,
        columns: vec!["q", "gamma", "predicted", "residual", "normalized_residual"],
        rows,
        default_format: Format::Json,
        success: true,
    })
}

fn code(shape: &Shape, spectrum: SpectrumArg, dr: Option<usize>, dr_mode: DrMode, seed: u64, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    let c = GrassmannCode::build(&f, shape.k, shape.n, exec)?;
    let mode = match spectrum {
        SpectrumArg::Exhaustive => SpectrumMode::Exhaustive,
        SpectrumArg::Sample { count, seed: s } => SpectrumMode::Sample { count, seed: s.unwrap_or(seed) },
    };
    let counts = weight_spectrum(&c, mode, exec)?;
    let mut json = json!({
        "k": shape.k, "n": shape.n, "q": shape.q,
        "length": c.length(),
        "dimension": c.dimension(),
        "spectrum": counts.iter().map(|(w, m)| json!({ "weight": w, "multiplicity": m.to_string() })).collect::<Vec<_>>(),
    });
    if let Some(r) = dr {
        let mode = match dr_mode {
            DrMode::Exhaustive => HigherWeightMode::Exhaustive,
            DrMode::Structured => HigherWeightMode::Structured,
        };
        json["d_r"] = json!({ "r": r, "mode": format!("{dr_mode:?}").to_lowercase(), "value": higher_weight_search(&c, r, mode, exec)? });
    }
    Ok(Report {
        json,
        columns: vec!["weight", "multiplicity"],
        rows: counts.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]).collect(),
        default_format: Format::Csv,
        success: true,
    })
}

#[derive(Deserialize)]
struct Term {
    index: Vec<usize>,
    coeff: u32,
}

/// Parses the JSON term list into a form, with 1-based indices.
pub fn parse_form(f: &Arc<Field>, k: usize, n: usize, text: &str) -> Result<DualForm, CliError> {
    let terms: Vec<Term> = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("--form: {e}")))?;
    let mut out = DualForm::zero(f, k, n)?;
    for t in terms {
        if t.index.len() != k {
            return Err(CliError::Invalid(format!("--form: index {:?} does not have {k} entries", t.index)));
        }
        if t.coeff >= f.order() {
            return Err(CliError::Invalid(format!("--form: coefficient {} is not an element of GF({})", t.coeff, f.order())));
        }
        let basis = DualForm::basis(f, MultiIndex::new(&t.index, n)?);
        out = out.add_scaled(&basis, t.coeff)?;
    }
    Ok(out)
}

fn weight(shape: &Shape, form: &str, method: WeightArg, exec: &Exec) -> Result<Report, CliError> {
    let f = field(shape.q)?;
    if shape.k == 0 || shape.k > shape.n {
        return Err(CliError::Invalid(format!("need 1 <= k <= n, got k={}, n={}", shape.k, shape.n)));
    }
    let w = parse_form(&f, shape.k, shape.n, form)?;
    let methods: &[(WeightMethod, &str)] = match method {
        WeightArg::Direct => &[(WeightMethod::Direct, "direct")],
        WeightArg::Recursive => &[(WeightMethod::Recursive, "recursive")],
        WeightArg::Both => &[(WeightMethod::Direct, "direct"), (WeightMethod::Recursive, "recursive")],
    };
    let mut weights = Vec::new();
    for &(m, name) in methods {
        weights.push((name, if w.is_zero() { 0 } else { form_weight(&w, m, exec)? }));
    }
    let success = weights.windows(2).all(|p| p[0].1 == p[1].1);
    let (decomposable, dim_v, dim_u) = if w.is_zero() {
        (Value::Null, Value::Null, Value::Null)
    } else {
        let p = form_profile(&w)?;
        (json!(p.decomposable), json!(p.dim_v()), json!(p.dim_u()))
    };
    let mut json = json!({ "k": shape.k, "n": shape.n, "q": shape.q });
    for (name, wt) in &weights {
        json[format!("weight_{name}")] = json!(wt);
    }
    json["decomposable"] = decomposable.clone();
    json["dim_v_omega"] = dim_v;
    json["dim_u_omega"] = dim_u;
    Ok(Report {
        json,
        columns: vec!["method", "weight", "decomposable"],
        rows: weights.iter().map(|(name, wt)| vec![name.to_string(), wt.to_string(), decomposable.to_string()]).collect(),
        default_format: Format::Json,
        success,
    })
}

fn verify(suite: SuiteArg, scale: ScaleArg, exec: &Exec) -> Result<Report, CliError> {
    let suite = match suite {
        SuiteArg::Fields => Suite::Fields,
        SuiteArg::Plucker => Suite::Plucker,
        SuiteArg::Weights => Suite::Weights,
        SuiteArg::Sections => Suite::Sections,
        SuiteArg::Asymptotics => Suite::Asymptotics,
        SuiteArg::All => Suite::All,
    };
    let scale = match scale {
        ScaleArg::Quick => Scale::Quick,
        ScaleArg::Full => Scale::Full,
    };
    let checks = run_suite(suite, scale, exec);
    let status = |p: bool| if p { "PASS" } else { "FAIL" };
    Ok(Report {
        json: Value::Array(
            checks
                .iter()
                .map(|c| json!({ "status": status(c.passed), "suite": c.suite, "name": c.name, "anchor": c.anchor, "detail": c.detail }))
                .collect(),
        ),
        columns: vec!["status", "suite", "name", "anchor", "detail"],
        rows: checks
            .iter()
            .map(|c| vec![status(c.passed).into(), c.suite.to_string(), c.name.clone(), c.anchor.to_string(), c.detail.clone()])
            .collect(),
        default_format: Format::Table,
        success: all_passed(&checks),
    })
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let exec = exec(&cli.global)?;
    match &cli.command {
        Command::Count { shape, method } => count(shape, *method, &exec),
        Command::GrassmannCount { shape } => grassmann_count(shape, &exec),
        Command::Sections { shape, max_r, exhaustive } => sections(shape, *max_r, *exhaustive, &exec),
        Command::InclExcl { shape, verify_against_census } => incl_excl(shape, *verify_against_census, &exec),
        Command::Asympt { k, n, q_list } => asympt(*k, *n, q_list.as_deref(), &exec),
        Command::Code { shape, spectrum, dr, dr_mode } => code(shape, *spectrum, *dr, *dr_mode, cli.global.seed, &exec),
        Command::Weight { shape, form, method } => weight(shape, form, *method, &exec),
        Command::Verify { suite, scale } => verify(*suite, *scale, &exec),
    }
}
