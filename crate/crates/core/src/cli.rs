//! Command-line interface.
//!
//! Results go to standard output, diagnostics to standard error. With
//! `--json` every command prints one report object with sorted keys:
//!
//! ```json
//! { "command": "...", "params": {..}, "result": {..}, "status": "...", "version": "..." }
//! ```
//!
//! # Exit codes
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success; parity inconclusive; word found |
//! | 1    | infeasible by parity; unreachable after exhaustion |
//! | 2    | search stopped at the depth limit |
//! | 3    | group larger than `--max-elements` |
//! | 64   | usage error |
//! | 65   | dimension guard exceeded |
//! | 70   | internal consistency failure |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::{enumerate_group_cached, CensusCache};
use crate::error::Error;
use crate::feasibility::{decide, MAX_PARITY_DIMENSION};
use crate::gates::GateKind;
use crate::perm::{MatrixFormat, MAX_DETERMINANT_SIZE};
use crate::synthesis::{
    bidirectional_find, find_word, SearchConfig, SynthesisResult, DEFAULT_MAX_ELEMENTS,
    MAX_SEARCH_DIMENSION,
};
use crate::VERSION;

pub mod exit {
    pub const OK: i32 = 0;
    pub const IMPOSSIBLE: i32 = 1;
    pub const DEPTH_LIMIT: i32 = 2;
    pub const RESOURCE_CAP: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const GUARD: i32 = 65;
    pub const INTERNAL: i32 = 70;
}

/// Largest dimension for `export` and `analyze --matrix` (a `d² × d²` grid).
pub const MAX_MATRIX_DIMENSION: u32 = 16;

#[derive(Parser, Debug)]
#[command(
    name = "qudit-swap",
    version,
    about = "Decide and synthesise two-qudit SWAP circuits built from generalised CNOT gates"
)]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cycle type, signature and fixed points of one gate.
    Analyze {
        #[arg(long = "d", value_parser = dimension)]
        d: u32,
        #[arg(long, value_enum)]
        gate: GateArg,
        /// Include the permutation matrix and its determinant.
        #[arg(long)]
        matrix: bool,
    },
    /// Parity obstruction for SWAP.
    Decide {
        #[arg(long = "d", value_parser = dimension)]
        d: u32,
    },
    /// Search for a shortest CNOT circuit equal to the target.
    Synth {
        #[arg(long = "d", value_parser = dimension)]
        d: u32,
        #[arg(long, value_enum, default_value_t = TargetArg::Swap)]
        target: TargetArg,
        /// Longest word to consider; unbounded by default.
        #[arg(long)]
        max_depth: Option<usize>,
        /// Meet-in-the-middle search instead of plain breadth-first search.
        #[arg(long)]
        bidirectional: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Order, diameter and layer sizes of the generated group.
    Group {
        #[arg(long = "d", value_parser = dimension)]
        d: u32,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print a gate's permutation matrix.
    Export {
        #[arg(long = "d", value_parser = dimension)]
        d: u32,
        #[arg(long, value_enum)]
        gate: GateArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
        format: FormatArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Abort once the search stores this many group elements.
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Worker threads for frontier expansion (0 = one per core).
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Raise the dimension guard for exhaustive search.
    #[arg(long, default_value_t = MAX_SEARCH_DIMENSION)]
    pub max_d: u32,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_elements: self.max_elements,
            workers: self.workers,
            max_dimension: self.max_d,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateArg {
    Cnot1,
    Cnot2,
    Swap,
}

impl From<GateArg> for GateKind {
    fn from(g: GateArg) -> Self {
        match g {
            GateArg::Cnot1 => GateKind::Cnot1,
            GateArg::Cnot2 => GateKind::Cnot2,
            GateArg::Swap => GateKind::SwapTarget,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetArg {
    Swap,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Pretty,
    Json,
    Csv,
}

impl From<FormatArg> for MatrixFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pretty => MatrixFormat::Pretty,
            FormatArg::Json => MatrixFormat::Json,
            FormatArg::Csv => MatrixFormat::Csv,
        }
    }
}

fn dimension(s: &str) -> Result<u32, String> {
    let d: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if d == 0 {
        return Err("dimension must be at least 1".into());
    }
    Ok(d)
}

/// A finished command: what to print and how to exit.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub params: Value,
    pub status: String,
    pub result: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn report(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "status": self.status,
            "version": VERSION,
        })
    }
}

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialise");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    exit::OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    exit::USAGE
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = if cli.json {
                render_json(&outcome.report())
            } else {
                outcome.text.clone()
            };
            let _ = out.write_all(text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CostGuard { .. } | Error::InvalidDimension => exit::GUARD,
                _ => exit::INTERNAL,
            }
        }
    }
}

/// Runs a parsed command without printing anything.
pub fn execute(command: &Command) -> Result<Outcome, Error> {
    match *command {
        Command::Analyze { d, gate, matrix } => analyze(d, gate.into(), matrix),
        Command::Decide { d } => decide_cmd(d),
        Command::Synth {
            d,
            target: TargetArg::Swap,
            max_depth,
            bidirectional,
            ref search,
        } => synth(d, max_depth, bidirectional, search),
        Command::Group {
            d,
            ref cache_dir,
            ref search,
        } => group(d, cache_dir.as_ref(), search),
        Command::Export { d, gate, format } => export(d, gate.into(), format),
    }
}

fn guard(d: u32, limit: u32) -> Result<(), Error> {
    if d > limit {
        Err(Error::guard("dimension", d, limit))
    } else {
        Ok(())
    }
}

fn analyze(d: u32, gate: GateKind, with_matrix: bool) -> Result<Outcome, Error> {
    guard(d, MAX_PARITY_DIMENSION)?;
    if with_matrix {
        guard(d, MAX_MATRIX_DIMENSION)?;
    }
    let p = gate.perm(d)?;
    let cycle_type = p.cycle_type();
    let signature = p.signature();
    let mut text = format!(
        "gate: {gate}\nd: {d}\ncycle type: {cycle_type}\nsignature: {signature}\nfixed points: {}\ncycles: {}\n",
        p.fixed_points(),
        p.cycle_notation(),
    );
    let (matrix, determinant) = if with_matrix {
        let m = p.to_matrix();
        debug_assert!(m.n() <= MAX_DETERMINANT_SIZE);
        let det = m.determinant()?;
        text.push_str(&format!("determinant: {det}\n"));
        text.push_str(&m.render(MatrixFormat::Pretty));
        (m.to_json(), json!(det))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(Outcome {
        command: "analyze",
        params: json!({ "d": d, "gate": gate.name(), "matrix": with_matrix }),
        status: "OK".into(),
        result: json!({
            "cycle_type": cycle_type,
            "cycle_type_text": cycle_type.to_string(),
            "cycles": p.cycles(),
            "determinant": determinant,
            "fixed_points": p.fixed_points(),
            "matrix": matrix,
            "signature": signature,
        }),
        text,
        code: exit::OK,
    })
}

fn decide_cmd(d: u32) -> Result<Outcome, Error> {
    guard(d, MAX_PARITY_DIMENSION)?;
    let verdict = decide(d)?;
    let r = verdict.report();
    let text = format!(
        "d: {d} (d mod 4 = {})\nsignature CNOT1: {}\nsignature CNOT2: {}\nsignature SWAP: {}\nverdict: {verdict}\n",
        r.d_mod_4, r.sig_cnot1, r.sig_cnot2, r.sig_swap
    );
    Ok(Outcome {
        command: "decide",
        params: json!({ "d": d }),
        status: verdict.label().into(),
        result: serde_json::to_value(r).expect("plain struct"),
        text,
        code: if verdict.is_infeasible() {
            exit::IMPOSSIBLE
        } else {
            exit::OK
        },
    })
}

fn too_large(command: &'static str, params: Value, d: u32, cap: usize) -> Outcome {
    Outcome {
        command,
        params,
        status: "GROUP_TOO_LARGE".into(),
        result: json!({ "d": d, "max_elements": cap }),
        text: format!("GROUP_TOO_LARGE: more than {cap} elements at d = {d}\n"),
        code: exit::RESOURCE_CAP,
    }
}

fn synth(
    d: u32,
    max_depth: Option<usize>,
    bidirectional: bool,
    search: &SearchArgs,
) -> Result<Outcome, Error> {
    let config = search.config();
    let params = json!({
        "bidirectional": bidirectional,
        "d": d,
        "max_depth": max_depth,
        "max_elements": config.max_elements,
        "target": "swap",
    });
    guard(d, config.max_dimension)?;
    let target = GateKind::SwapTarget.perm(d)?;
    let found = if bidirectional {
        bidirectional_find(d, &target, max_depth, &config)
    } else {
        find_word(d, &target, max_depth, &config)
    };
    let result = match found {
        Ok(r) => r,
        Err(Error::GroupTooLarge { d, cap }) => return Ok(too_large("synth", params, d, cap)),
        Err(e) => return Err(e),
    };
    let mut payload = json!({
        "diameter": null,
        "explored_depth": null,
        "frontier_size": null,
        "group_order": null,
        "length": null,
        "word": null,
    });
    let (text, code) = match &result {
        SynthesisResult::Found { word } => {
            payload["length"] = json!(word.len());
            payload["word"] = json!(word.letters);
            let shown = if word.is_empty() {
                "(empty)".to_string()
            } else {
                word.to_string()
            };
            (format!("FOUND length {}: {shown}\n", word.len()), exit::OK)
        }
        SynthesisResult::UnreachableExhausted {
            group_order,
            diameter,
        } => {
            payload["group_order"] = json!(group_order);
            payload["diameter"] = json!(diameter);
            (
                format!("UNREACHABLE_EXHAUSTED order={group_order} diameter={diameter}\n"),
                exit::IMPOSSIBLE,
            )
        }
        SynthesisResult::DepthLimit {
            explored_depth,
            frontier_size,
        } => {
            payload["explored_depth"] = json!(explored_depth);
            payload["frontier_size"] = json!(frontier_size);
            (
                format!("DEPTH_LIMIT explored_depth={explored_depth} frontier_size={frontier_size}\n"),
                exit::DEPTH_LIMIT,
            )
        }
    };
    Ok(Outcome {
        command: "synth",
        params,
        status: result.label().into(),
        result: payload,
        text,
        code,
    })
}

fn group(d: u32, cache_dir: Option<&PathBuf>, search: &SearchArgs) -> Result<Outcome, Error> {
    let config = search.config();
    let params = json!({ "d": d, "max_elements": config.max_elements });
    guard(d, config.max_dimension)?;
    let cache = cache_dir.map(CensusCache::new);
    let census = match enumerate_group_cached(d, &config, cache.as_ref()) {
        Ok(c) => c,
        Err(Error::GroupTooLarge { d, cap }) => return Ok(too_large("group", params, d, cap)),
        Err(e) => return Err(e),
    };
    let counts: Vec<String> = census.counts_by_depth.iter().map(usize::to_string).collect();
    let text = format!(
        "d: {d}\norder: {}\ndiameter: {}\ncounts by depth: {}\n",
        census.order,
        census.diameter,
        counts.join(" ")
    );
    Ok(Outcome {
        command: "group",
        params,
        status: "OK".into(),
        result: serde_json::to_value(&census).expect("plain struct"),
        text,
        code: exit::OK,
    })
}

fn export(d: u32, gate: GateKind, format: FormatArg) -> Result<Outcome, Error> {
    guard(d, MAX_MATRIX_DIMENSION)?;
    let m = gate.perm(d)?.to_matrix();
    let format_name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(Outcome {
        command: "export",
        params: json!({ "d": d, "format": format_name, "gate": gate.name() }),
        status: "OK".into(),
        result: m.to_json(),
        text: m.render(format.into()),
        code: exit::OK,
    })
}
