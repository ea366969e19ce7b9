//! `rankcodes`: counting, bounds, construction, search, verification, and
//! asymptotics for rank-metric and constant-dimension codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 search
//! budget exhausted before the optimum was certified. All outputs are
//! byte-identical across repeated runs with the same arguments.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use rank_codes::bounds::{ar_interval, as_bounds, BoundKind, BoundSource};
use rank_codes::codebook::{CodebookFile, SCHEMA_VERSION};
use rank_codes::construct;
use rank_codes::counting::{alpha, ball_volume, count_rank, gaussian, CountingContext};
use rank_codes::field::DEFAULT_FIELD_CAP;
use rank_codes::graph::{DistanceGraph, GraphKind, DEFAULT_VERTEX_CAP};
use rank_codes::search::{max_independent_set, SearchStatus, DEFAULT_BUDGET};
use rank_codes::selfcheck::{self, DEFAULT_SEED};

mod fixtures;

/// Environment variable overriding the desk-scale cap on q^m.
const CAP_ENV: &str = "RANKCODES_CAP";

#[derive(Parser)]
#[command(
    name = "rankcodes",
    version,
    about = "Rank-metric and constant-dimension code toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    /// Constant-rank graph: vectors of rank r, adjacency below rank distance d.
    Rank,
    /// Subspace-distance graph on r-dimensional subspaces of GF(q)^n.
    Subspace,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstructMode {
    /// Lift a constant-dimension code through column spans.
    LiftS,
    /// Lift a constant-dimension code through row spans.
    LiftT,
    /// Pair two constant-dimension codes into a distance-boosted constant-rank code.
    Boost,
    /// Lift a rank-metric code into the Grassmannian via an identity block.
    LiftIdentity,
    /// Extend a square full-rank code by one dimension.
    Extend,
    /// Transpose all expansion matrices.
    Transpose,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate alpha, Gaussian binomials, N_r, and V_r for one (q, m, n).
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every bound on A_R over ranges of d and r.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Inclusive range, e.g. `1..4` or a single value.
        #[arg(long = "d-range")]
        d_range: String,
        /// Inclusive range, e.g. `0..2` or a single value.
        #[arg(long = "r-range")]
        r_range: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimal-code search by branch and bound.
    Search {
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        q: u64,
        #[arg(long, required_if_eq("kind", "rank"))]
        m: Option<u32>,
        #[arg(long)]
        n: u32,
        /// Distance threshold: rank distance for `rank`, subspace distance
        /// for `subspace`.
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        /// Node-expansion limit for the branch and bound.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long = "vertex-cap", default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: u64,
        /// Write the witness code to this codebook file.
        #[arg(long = "emit-witness")]
        emit_witness: Option<PathBuf>,
    },
    /// Run one of the code constructions on codebook files.
    Construct {
        #[arg(long, value_enum)]
        mode: ConstructMode,
        #[arg(long)]
        input: PathBuf,
        /// Second input (boost mode).
        #[arg(long)]
        input2: Option<PathBuf>,
        /// Target length (lift-s).
        #[arg(long)]
        n: Option<u32>,
        /// Target extension degree (lift-t).
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Verify codebook files, or run the whole identity suite.
    Verify {
        /// Verify the bundled fixtures and run every identity check.
        #[arg(long = "all-fixtures")]
        all_fixtures: bool,
        /// Codebook files to verify.
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Emit the asymptotic rate surface for one normalized length.
    Asymptotics {
        /// Normalized length nu = n/m as a rational, e.g. `1` or `1/2`.
        #[arg(long)]
        nu: String,
        #[arg(long = "rho-steps", default_value_t = 32)]
        rho_steps: u32,
        #[arg(long = "delta-steps", default_value_t = 32)]
        delta_steps: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn cap_from(cli_cap: Option<u64>) -> u64 {
    cli_cap
        .or_else(|| {
            std::env::var(CAP_ENV)
                .ok()
                .and_then(|v| v.parse::<u64>().ok())
        })
        .unwrap_or(DEFAULT_FIELD_CAP)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count {
            q,
            m,
            n,
            format,
            out,
        } => cmd_count(q, m, n, format, out),
        Command::Bounds {
            q,
            m,
            n,
            d_range,
            r_range,
            format,
            out,
        } => cmd_bounds(q, m, n, &d_range, &r_range, format, out),
        Command::Search {
            kind,
            q,
            m,
            n,
            d,
            r,
            budget,
            vertex_cap,
            emit_witness,
        } => cmd_search(kind, q, m, n, d, r, budget, vertex_cap, emit_witness),
        Command::Construct {
            mode,
            input,
            input2,
            n,
            m,
            out,
            cap,
        } => cmd_construct(mode, input, input2, n, m, out, cap_from(cap)),
        Command::Verify {
            all_fixtures,
            files,
            seed,
            cap,
        } => cmd_verify(all_fixtures, &files, seed, cap_from(cap)),
        Command::Asymptotics {
            nu,
            rho_steps,
            delta_steps,
            format,
            out,
        } => cmd_asymptotics(&nu, rho_steps, delta_steps, format, out),
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<(u32, u32)> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.trim().parse().context("range start")?;
        let hi: u32 = hi.trim_start_matches('=').trim().parse().context("range end")?;
        if hi < lo {
            bail!("empty range {text}");
        }
        Ok((lo, hi))
    } else {
        let v: u32 = text.trim().parse().context("range value")?;
        Ok((v, v))
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let r = if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().context("numerator")?;
        let den: i64 = den.trim().parse().context("denominator")?;
        if den == 0 {
            bail!("zero denominator");
        }
        rank_codes::asymptotics::rational(num, den)
    } else {
        let v: i64 = text.trim().parse().context("rational")?;
        rank_codes::asymptotics::rational(v, 1)
    };
    Ok(r)
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

fn cmd_count(q: u64, m: u32, n: u32, format: Format, out: Option<PathBuf>) -> Result<ExitCode> {
    let ctx = CountingContext::new(q, m, n)?;
    let rows: Vec<(u32, BigUint, BigUint, BigUint, BigUint)> = (0..=ctx.max_rank())
        .map(|r| {
            Ok((
                r,
                alpha(m, r, q),
                gaussian(n, r, q),
                count_rank(r, &ctx)?,
                ball_volume(r, &ctx)?,
            ))
        })
        .collect::<Result<_, rank_codes::Error>>()?;

    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["q", "m", "n", "r", "alpha", "gaussian", "count_rank", "ball_volume"])?;
            for (r, a, g, nr, vr) in &rows {
                w.write_record([
                    q.to_string(),
                    m.to_string(),
                    n.to_string(),
                    r.to_string(),
                    a.to_string(),
                    g.to_string(),
                    nr.to_string(),
                    vr.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(r, a, g, nr, vr)| {
                    serde_json::json!({
                        "r": r,
                        "alpha": a.to_string(),
                        "gaussian": g.to_string(),
                        "count_rank": nr.to_string(),
                        "ball_volume": vr.to_string(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "q": q, "m": m, "n": n,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

const SOURCE_COLUMNS: [BoundSource; 17] = [
    BoundSource::Trivial,
    BoundSource::MrdSlice,
    BoundSource::BassalygoElias,
    BoundSource::SubspacePairing,
    BoundSource::SubspaceDisjoint,
    BoundSource::SubspaceSquare,
    BoundSource::SingletonCap,
    BoundSource::RankCensus,
    BoundSource::RankProgression,
    BoundSource::JohnsonLength,
    BoundSource::JohnsonSquare,
    BoundSource::ElsCap,
    BoundSource::ExactAllVectors,
    BoundSource::ExactDiameter,
    BoundSource::ExactZeroRank,
    BoundSource::ExactMrdSlice,
    BoundSource::ExactLines,
];

fn cmd_bounds(
    q: u64,
    m: u32,
    n: u32,
    d_range: &str,
    r_range: &str,
    format: Format,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let (d_lo, d_hi) = parse_range(d_range)?;
    let (r_lo, r_hi) = parse_range(r_range)?;
    if d_lo == 0 {
        bail!("distances start at 1");
    }
    let r_hi = r_hi.min(m.min(n));
    let mut intervals = Vec::new();
    for d in d_lo..=d_hi {
        for r in r_lo..=r_hi {
            intervals.push(ar_interval(q, m, n, d, r)?);
        }
    }

    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec![
                "q".to_string(),
                "m".into(),
                "n".into(),
                "d".into(),
                "r".into(),
                "lower".into(),
                "upper".into(),
                "exact".into(),
            ];
            header.extend(SOURCE_COLUMNS.iter().map(|s| s.as_str().to_string()));
            w.write_record(&header)?;
            for iv in &intervals {
                let mut rec = vec![
                    iv.q.to_string(),
                    iv.m.to_string(),
                    iv.n.to_string(),
                    iv.d.to_string(),
                    iv.r.to_string(),
                    iv.lower.to_string(),
                    iv.upper.to_string(),
                    if iv.is_exact() {
                        iv.lower.to_string()
                    } else {
                        String::new()
                    },
                ];
                for src in SOURCE_COLUMNS {
                    let cell = iv
                        .bounds
                        .iter()
                        .find(|b| b.source == src)
                        .map(|b| b.value.to_string())
                        .unwrap_or_default();
                    rec.push(cell);
                }
                w.write_record(&rec)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = intervals
                .iter()
                .map(|iv| {
                    let bounds: Vec<serde_json::Value> = iv
                        .bounds
                        .iter()
                        .map(|b| {
                            serde_json::json!({
                                "source": b.source.as_str(),
                                "kind": match b.kind {
                                    BoundKind::Lower => "lower",
                                    BoundKind::Upper => "upper",
                                    BoundKind::Exact => "exact",
                                },
                                "value": b.value.to_string(),
                                "chain": b.chain,
                            })
                        })
                        .collect();
                    serde_json::json!({
                        "d": iv.d,
                        "r": iv.r,
                        "lower": iv.lower.to_string(),
                        "upper": iv.upper.to_string(),
                        "exact": iv.is_exact(),
                        "bounds": bounds,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "q": q, "m": m, "n": n,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    kind: SearchKind,
    q: u64,
    m: Option<u32>,
    n: u32,
    d: u32,
    r: u32,
    budget: u64,
    vertex_cap: u64,
    emit_witness: Option<PathBuf>,
) -> Result<ExitCode> {
    let graph_kind = match kind {
        SearchKind::Rank => GraphKind::ConstantRank {
            q,
            m: m.ok_or_else(|| anyhow!("--m is required for rank searches"))?,
            n,
            d,
            r,
        },
        SearchKind::Subspace => GraphKind::SubspaceDistance { q, n, ds: d, r },
    };
    let g = DistanceGraph::build(graph_kind, vertex_cap)?;
    let outcome = max_independent_set(&g, budget);

    let status = match outcome.status {
        SearchStatus::Exact => "exact",
        SearchStatus::LowerBoundOnly => "lower_bound_only",
        SearchStatus::Unknown => "unknown",
    };
    let interval = match kind {
        SearchKind::Rank => {
            let iv = ar_interval(q, m.unwrap(), n, d, r)?;
            (iv.lower, iv.upper)
        }
        SearchKind::Subspace => {
            let iv = as_bounds(q, n, d.div_ceil(2), r)?;
            (iv.lower, iv.upper)
        }
    };
    if outcome.status == SearchStatus::Exact {
        let v = BigUint::from(outcome.size);
        if v < interval.0 || v > interval.1 {
            bail!(
                "search value {} escapes the bound interval [{}, {}]: implementation bug",
                outcome.size,
                interval.0,
                interval.1
            );
        }
    }
    println!(
        "kind={} q={q} n={n} d={d} r={r}{} vertices={} status={status} size={} nodes={} bound_lower={} bound_upper={}",
        match kind {
            SearchKind::Rank => "rank",
            SearchKind::Subspace => "subspace",
        },
        m.map(|m| format!(" m={m}")).unwrap_or_default(),
        g.vertex_count(),
        outcome.size,
        outcome.nodes,
        interval.0,
        interval.1,
    );

    if let Some(path) = emit_witness {
        let file = match kind {
            SearchKind::Rank => {
                let (spec, list) = g.vector_vertices().expect("rank graph");
                let words = outcome.witness.iter().map(|&i| list[i].clone()).collect();
                let code = rank_codes::codes::ConstantRankCode::new(spec.clone(), words)?;
                CodebookFile::from_rank_code(&code)
            }
            SearchKind::Subspace => {
                let list = g.subspace_vertices().expect("subspace graph");
                let subs = outcome.witness.iter().map(|&i| list[i].clone()).collect();
                let code = rank_codes::codes::ConstantDimensionCode::new(subs)?;
                CodebookFile::from_dimension_code(&code)
            }
        };
        file.write(&path)?;
    }

    Ok(if outcome.status == SearchStatus::Exact {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn cmd_construct(
    mode: ConstructMode,
    input: PathBuf,
    input2: Option<PathBuf>,
    n: Option<u32>,
    m: Option<u32>,
    out: PathBuf,
    cap: u64,
) -> Result<ExitCode> {
    let file = CodebookFile::read(&input)?;
    let result = match mode {
        ConstructMode::LiftS => {
            let gamma = file.to_dimension_code(cap)?;
            let n = n.ok_or_else(|| anyhow!("--n (target length) is required for lift-s"))?;
            let code = construct::lift_via_column_span(&gamma, n as usize)?;
            CodebookFile::from_rank_code(&code)
        }
        ConstructMode::LiftT => {
            let delta = file.to_dimension_code(cap)?;
            let m = m.ok_or_else(|| anyhow!("--m (target degree) is required for lift-t"))?;
            let code = construct::lift_via_row_span(&delta, m as usize)?;
            CodebookFile::from_rank_code(&code)
        }
        ConstructMode::Boost => {
            let gamma = file.to_dimension_code(cap)?;
            let second = input2.ok_or_else(|| anyhow!("--input2 is required for boost"))?;
            let delta = CodebookFile::read(&second)?.to_dimension_code(cap)?;
            let code = construct::boost_construction(&gamma, &delta)?;
            CodebookFile::from_rank_code(&code)
        }
        ConstructMode::LiftIdentity => {
            let code = file.to_rank_code(cap)?;
            let lifted = construct::lift_identity(code.words())?;
            CodebookFile::from_dimension_code(&lifted)
        }
        ConstructMode::Extend => {
            let code = file.to_rank_code(cap)?;
            CodebookFile::from_rank_code(&construct::extend_full_rank(&code)?)
        }
        ConstructMode::Transpose => {
            let code = file.to_rank_code(cap)?;
            CodebookFile::from_rank_code(&construct::transpose_code(&code)?)
        }
    };
    result.write(&out)?;
    let p = result.params();
    println!(
        "wrote {} ({} words, q={} n={} r={}{})",
        out.display(),
        match &result.payload {
            rank_codes::codebook::CodebookPayload::ConstantRank { words, .. } => words.len(),
            rank_codes::codebook::CodebookPayload::ConstantDimension { words, .. } => words.len(),
        },
        p.q,
        p.n,
        p.r,
        p.d.map(|d| format!(" d={d}")).unwrap_or_default(),
    );
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn verify_codebook_text(label: &str, text: &str, cap: u64) -> Result<bool> {
    let file = CodebookFile::parse(text)?;
    let (report, claimed_ok) = if file.is_rank() {
        let code = file.to_rank_code(cap)?;
        let report = code.verify();
        let ok = file.check_claimed_distance(report.min_distance).is_ok();
        (report, ok)
    } else {
        let code = file.to_dimension_code(cap)?;
        let report = code.verify();
        let ok = file.check_claimed_distance(report.min_distance).is_ok();
        (report, ok)
    };
    let ok = report.passed && claimed_ok;
    println!(
        "{}: {label} — {report}{}",
        if ok { "PASS" } else { "FAIL" },
        if claimed_ok {
            ""
        } else {
            " (claimed distance mismatch)"
        }
    );
    Ok(ok)
}

fn cmd_verify(all_fixtures: bool, files: &[PathBuf], seed: u64, cap: u64) -> Result<ExitCode> {
    let mut all_ok = true;

    for path in files {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        all_ok &= verify_codebook_text(&path.display().to_string(), &text, cap)?;
    }

    if all_fixtures {
        for fx in fixtures::ALL {
            let ok = verify_codebook_text(fx.name, fx.json, cap)?;
            let size_ok = {
                let file = CodebookFile::parse(fx.json)?;
                let words = match &file.payload {
                    rank_codes::codebook::CodebookPayload::ConstantRank { words, .. } => {
                        words.len()
                    }
                    rank_codes::codebook::CodebookPayload::ConstantDimension { words, .. } => {
                        words.len()
                    }
                };
                words == fx.expected_size
            };
            if !size_ok {
                println!("FAIL: {} — fixture size drifted", fx.name);
            }
            all_ok &= ok && size_ok;
        }

        for report in selfcheck::run_all(seed) {
            println!(
                "{}: criterion {} ({}) — {}",
                if report.passed { "PASS" } else { "FAIL" },
                report.id,
                report.name,
                report.detail
            );
            all_ok &= report.passed;
        }
    }

    println!("verify: {}", if all_ok { "all checks passed" } else { "FAILURES PRESENT" });
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

// ---------------------------------------------------------------------------
// asymptotics
// ---------------------------------------------------------------------------

fn cmd_asymptotics(
    nu_text: &str,
    rho_steps: u32,
    delta_steps: u32,
    format: Format,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    use rank_codes::asymptotics::{asymptotic_ar, rational};
    let nu = parse_rational(nu_text)?;
    if rho_steps == 0 || delta_steps == 0 {
        bail!("step counts must be positive");
    }
    let one = rational(1, 1);
    let cap = nu.clone().min(one);

    struct Row {
        rho: BigRational,
        delta: BigRational,
        lower: BigRational,
        upper: BigRational,
        exact: bool,
    }
    let mut rows = Vec::new();
    for i in 0..=rho_steps {
        let rho = &cap * rational(i as i64, rho_steps as i64);
        for j in 0..=delta_steps {
            let delta = &cap * rational(j as i64, delta_steps as i64);
            let iv = asymptotic_ar(&nu, &delta, &rho)?;
            rows.push(Row {
                rho: rho.clone(),
                delta,
                lower: iv.lower,
                upper: iv.upper,
                exact: iv.exact,
            });
        }
    }

    let f64_of = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "nu", "rho", "delta_r", "lower", "upper", "exact", "lower_f64", "upper_f64",
            ])?;
            for row in &rows {
                w.write_record([
                    nu.to_string(),
                    row.rho.to_string(),
                    row.delta.to_string(),
                    row.lower.to_string(),
                    row.upper.to_string(),
                    row.exact.to_string(),
                    format!("{}", f64_of(&row.lower)),
                    format!("{}", f64_of(&row.upper)),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "rho": row.rho.to_string(),
                        "delta_r": row.delta.to_string(),
                        "lower": row.lower.to_string(),
                        "upper": row.upper.to_string(),
                        "exact": row.exact,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "nu": nu.to_string(),
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}
