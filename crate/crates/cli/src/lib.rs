//! The `idealkit` command line.
//!
//! [`run`] does all the work and returns the exit code with both output
//! streams, so tests can drive it without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use idealkit::density::{
    banach_window_density, densities_report, tile_cover_search, DensityEstimate,
};
use idealkit::setexpr::materialize_prefix;
use idealkit::tiling::{anti_tile, as_ap_union, bin_render, normalize_ap_union};
use idealkit::verify::rational::{reportable, Exact};
use idealkit::verify::{reciprocal_sum_raw, run_all, run_claim, Claim, EvidenceParams, RunConfig, Summary};
use idealkit::{parse_set_expr, Error, LemmaId, SetExpr, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "idealkit", version, about = "Densities, tilings and witness families for ideals on ℕ")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form.
    Parse { expr: String },
    /// Natural and Banach densities at N/100, N/10 and N.
    Density {
        expr: String,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n: u64,
    },
    /// Largest window density over [1, N].
    Banach {
        expr: String,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n: u64,
        /// Window length; defaults to ⌊√N⌋.
        #[arg(long)]
        window: Option<u64>,
    },
    /// Upper bound on tile density from the best periodic cover.
    Tiledensity {
        expr: String,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n: u64,
        #[arg(long = "r-max", default_value_t = 8)]
        r_max: u64,
        #[arg(long = "drop-max", default_value_t = 8)]
        drop_max: u64,
    },
    /// Exact sum of 1/x over X ∩ [1, N].
    Reciprocal {
        expr: String,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n: u64,
    },
    /// Points of the anti-tile A(r, s).
    Antitile { r: u32, s: u64 },
    /// Indicator string of positions 0 … length−1.
    Render {
        expr: String,
        length: u64,
        #[arg(long)]
        group: Option<u64>,
    },
    /// Rewrite a union of progressions as one tiling.
    Normalize { expr: String },
    /// Generate a witness family.
    Witness {
        /// F_TR, BR_R, BR_B, TR_T or TR_BR.
        lemma: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run the evidence harness for one claim or all of them.
    Verify {
        /// f-tr, br-r, br-b, b-d, r-d, tr-t, tr-br, t-b, remark or all.
        claim: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "r-max", default_value_t = 8)]
        r_max: u64,
        #[arg(long = "drop-max", default_value_t = 8)]
        drop_max: u64,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        let table = Cli::command().render_help().to_string();
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("{msg}\n{table}"),
        }
    }
}

/// Text and JSON renderings of a command result.
struct Output {
    code: i32,
    text: String,
    json: serde_json::Value,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output { code: EXIT_OK, text, json }
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn q(r: &idealkit::Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => Outcome::usage(e.render().to_string()),
            };
        }
    };
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    let doc = serde_json::to_string_pretty(&out.json).expect("json values serialize");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{doc}\n")) {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
    }
    Outcome {
        code: out.code,
        stdout: if cli.json { format!("{doc}\n") } else { out.text },
        stderr: String::new(),
    }
}

fn parse(expr: &str) -> Result<SetExpr, Error> {
    parse_set_expr(expr)
}

fn checkpoints(n: u64) -> Vec<u64> {
    let mut cps: Vec<u64> = [n / 100, n / 10, n].into_iter().filter(|&c| c >= 10 || c == n).collect();
    cps.dedup();
    cps
}

fn density_text(rows: &[DensityEstimate]) -> String {
    let mut s = String::new();
    for r in rows {
        let kind = to_json(&r.kind);
        let kind = kind.as_str().unwrap_or("?");
        match (r.n, r.window) {
            (None, _) => writeln!(s, "{kind} (exact): {}", q(&r.value)),
            (Some(n), None) => writeln!(s, "{kind} N={n}: {}", q(&r.value)),
            (Some(n), Some(w)) => writeln!(s, "{kind} N={n} window={w}: {}", q(&r.value)),
        }
        .expect("string write");
    }
    s
}

fn verify_output(summary: Summary) -> Output {
    let mut text = String::new();
    for r in &summary.reports {
        writeln!(text, "[{}] {}  selector={}  rows={}", r.verdict, r.claim, r.selector, r.checkpoints.len())
            .expect("string write");
        for row in r.checkpoints.iter().filter(|c| !c.pass) {
            writeln!(
                text,
                "    failed {} N={}: {} {} {}",
                row.check,
                row.n,
                q(&row.measured),
                to_json(&row.cmp).as_str().unwrap_or("?"),
                q(&row.threshold)
            )
            .expect("string write");
        }
    }
    writeln!(text, "verdict: {}", summary.verdict).expect("string write");
    let code = if summary.verdict == Verdict::Pass { EXIT_OK } else { EXIT_FAIL };
    Output {
        code,
        json: to_json(&summary),
        text,
    }
}

fn execute(cmd: &Command) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Parse { expr } => {
            let e = parse(expr)?;
            Output::ok(format!("{e}\n"), json!({ "expr": e.to_string() }))
        }
        Command::Density { expr, n } => {
            let e = parse(expr)?;
            let rows = densities_report(&e, &checkpoints(*n))?;
            Output::ok(density_text(&rows), json!({ "expr": e.to_string(), "densities": to_json(&rows) }))
        }
        Command::Banach { expr, n, window } => {
            let e = parse(expr)?;
            let w = window.unwrap_or(n.isqrt().max(1));
            let v = banach_window_density(&e, w, *n)?;
            Output::ok(
                format!("banach N={n} window={w}: {}\n", q(&v)),
                json!({ "expr": e.to_string(), "N": n, "window": w, "value": to_json(&Exact(v)) }),
            )
        }
        Command::Tiledensity { expr, n, r_max, drop_max } => {
            let e = parse(expr)?;
            if *r_max == 0 || drop_max >= n {
                return Err(Error::Precondition("need r_max >= 1 and drop_max < N".into()));
            }
            let elems: Vec<u64> = materialize_prefix(&e, 1, *n)?.iter_ones().collect();
            let cover = tile_cover_search(&elems, *r_max, *drop_max as usize);
            let value = cover.as_ref().map_or_else(|| idealkit::verify::ratio(1, 1), |c| c.value.clone());
            let cover_expr = cover.as_ref().map(|c| SetExpr::Tiling(c.tiling.clone()).to_string());
            let mut text = format!("tile density upper bound N={n} r_max={r_max} drop_max={drop_max}: {}\n", q(&value));
            if let Some(c) = &cover {
                writeln!(text, "cover: {} (dropped {})", cover_expr.as_deref().unwrap_or(""), c.dropped).expect("string write");
            }
            Output::ok(
                text,
                json!({
                    "expr": e.to_string(), "N": n, "r_max": r_max, "drop_max": drop_max,
                    "value": to_json(&Exact(value)),
                    "cover": cover_expr,
                    "dropped": cover.as_ref().map(|c| c.dropped),
                }),
            )
        }
        Command::Reciprocal { expr, n } => {
            let e = parse(expr)?;
            let sum = reciprocal_sum_raw(&e, *n)?;
            let (value, rounded) = reportable(&sum, true);
            let text = if rounded {
                format!("reciprocal sum N={n} ≥ {} (rounded down, ≈ {:.12})\n", q(&value), sum.to_f64())
            } else {
                format!("reciprocal sum N={n}: {}\n", q(&value))
            };
            Output::ok(
                text,
                json!({ "expr": e.to_string(), "N": n, "value": to_json(&Exact(value)), "rounded": rounded }),
            )
        }
        Command::Antitile { r, s } => {
            let a = anti_tile(*r, *s)?;
            let pts: Vec<String> = a.points.iter().map(u64::to_string).collect();
            Output::ok(format!("A({r},{s}) length {}: {{{}}}\n", a.length, pts.join(",")), to_json(&a))
        }
        Command::Render { expr, length, group } => {
            let e = parse(expr)?;
            let bits = bin_render(&e, *length, *group)?;
            Output::ok(format!("{bits}\n"), json!({ "expr": e.to_string(), "length": length, "bits": bits }))
        }
        Command::Normalize { expr } => {
            let e = parse(expr)?;
            let aps = as_ap_union(&e)
                .ok_or_else(|| Error::Precondition("normalize expects AP(...) or UNION of APs".into()))?;
            let t = normalize_ap_union(&aps)?;
            let density = idealkit::verify::ratio(t.tile().len() as u64, t.period());
            let te = SetExpr::Tiling(t.clone());
            Output::ok(
                format!("{te}\ndensity: {}\nagrees with the input from {}\n", q(&density), t.offset()),
                json!({
                    "input": e.to_string(), "tiling": te.to_string(),
                    "period": t.period(), "offset": t.offset(), "tile": t.tile(),
                    "density": to_json(&Exact(density)),
                }),
            )
        }
        Command::Witness { lemma, depth } => {
            let l: LemmaId = lemma.parse()?;
            let fam = l.generate(depth.unwrap_or(l.max_depth()))?;
            let mut text = format!("{} depth {}\n", fam.lemma, fam.depth());
            for (j, b) in fam.blocks.iter().enumerate() {
                let shown: Vec<String> = b.iter().take(8).map(|x| x.to_string()).collect();
                let more = if b.len() > 8 { format!(", … ({} elements)", b.len()) } else { String::new() };
                writeln!(text, "B_{} = {{{}{more}}}", j + 1, shown.join(", ")).expect("string write");
            }
            Output::ok(text, to_json(&fam))
        }
        Command::Verify { claim, depth, n, seed, r_max, drop_max } => {
            let cfg = RunConfig {
                depth: *depth,
                n: *n,
                seed: *seed,
                params: EvidenceParams {
                    r_max: *r_max,
                    drop_max: *drop_max,
                    ..EvidenceParams::default()
                },
            };
            let summary = if claim == "all" {
                run_all(&cfg)?
            } else {
                run_claim(claim.parse::<Claim>()?, &cfg)?
            };
            verify_output(summary)
        }
    })
}
