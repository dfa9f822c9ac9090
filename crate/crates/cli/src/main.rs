use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use circlab::classify::{self, connected_representatives, AgreementReport, ClassificationReport};
use circlab::{CirculantGraph, VerifyOptions};
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_STRICT: u8 = 1;

#[derive(Parser)]
#[command(
    name = "circlab",
    version,
    about = "Arc-transitive circulant classification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Order of the cyclic group Z_n.
    n: u32,
    /// Connection set, e.g. "1,5,7,11" or "1-4"; "" for the empty set.
    s: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one circulant and print every predicate and oracle value.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the decomposition (Γ₀ × K_{n₁} × …)[K̄_b] of a connected arc-transitive circulant.
    Decompose {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively check every claim against the oracle for orders up to --max-n.
    Verify {
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        arc_transitive_only: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Exit with status 1 if generators-iff-transitive has a counterexample.
        #[arg(long)]
        strict: bool,
        /// Also audit every prime power p^e up to this bound (at most 32).
        #[arg(long)]
        prime_power_max: Option<u32>,
    },
    /// List one connected circulant per multiplier class.
    Enumerate {
        n: u32,
        #[arg(long)]
        arc_transitive_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the graph as Graphviz DOT or as an edge list.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
        dot: bool,
        #[arg(long)]
        edges: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Strict(String),
}

impl From<circlab::Error> for Failure {
    fn from(e: circlab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses "a,b,c-d" into a list of residues. Duplicates are rejected.
fn parse_set(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    for token in text.split(',') {
        let token = token.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid element `{token}` in connection set"))
        };
        match token.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{token}` in connection set"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse(token)?),
        }
    }
    let mut sorted = out.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("duplicate element {} in connection set", w[0]));
    }
    Ok(out)
}

fn graph(args: &GraphArgs) -> Result<CirculantGraph, Failure> {
    let s = parse_set(&args.s).map_err(Failure::Usage)?;
    Ok(CirculantGraph::new(args.n, s)?)
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_report(g: &CirculantGraph, r: &ClassificationReport) -> String {
    let verdict = match r.normal_circulant_oracle.decided() {
        Some(b) => yes(b).to_string(),
        None => "partial (group too large to enumerate)".to_string(),
    };
    let mut s = format!("{g}\n");
    let rows = [
        ("connected", yes(r.connected).to_string()),
        ("undirected", yes(r.undirected).to_string()),
        ("arc-transitive", yes(r.arc_transitive).to_string()),
        (
            "every element of S has order n",
            yes(r.all_full_order).to_string(),
        ),
        (
            "Aut(C,S) transitive on S",
            yes(r.multiplier_transitive).to_string(),
        ),
        (
            "normal-arc-transitive",
            yes(r.normal_arc_transitive).to_string(),
        ),
        (
            "S contains a full coset",
            yes(r.contains_full_coset).to_string(),
        ),
        (
            "S contains a punctured coset (|H| >= 4)",
            yes(r.contains_punctured_coset_ge4).to_string(),
        ),
        (
            "translation subgroup normal",
            yes(r.c_normal_oracle).to_string(),
        ),
        ("some regular cyclic subgroup normal", verdict),
        ("|Aut|", r.aut_order.to_string()),
        ("|C ⋊ Aut(C,S)|", r.normalizer_order.to_string()),
    ];
    for (k, v) in rows {
        s += &format!("  {k:<42} {v}\n");
    }
    if let Some(d) = &r.decomposition {
        s += &format!("  {:<42} {}\n", "decomposition", render_decomposition(d));
    }
    s
}

fn render_decomposition(d: &circlab::Decomposition) -> String {
    let mut factors = vec![if d.gamma0.order() == 1 {
        "K1".to_string()
    } else {
        d.gamma0.to_string()
    }];
    factors.extend(d.complete_factor_orders.iter().map(|k| format!("K{k}")));
    format!("({})[K̄{}]", factors.join(" × "), d.b)
}

fn render_agreement(r: &AgreementReport) -> String {
    let mut s = format!(
        "orders {}..={}: {} instances ({} arc-transitive, {} with a partial oracle)\n\n",
        r.n_min, r.n_max, r.instances, r.arc_transitive_instances, r.partial_oracle_instances
    );
    s += &format!(
        "{:<28} {:>8} {:>8} {:>8}  claim\n",
        "id", "checked", "agree", "%"
    );
    let tallies = r
        .tallies
        .iter()
        .chain(r.prime_power_audit.iter().flat_map(|a| &a.tallies));
    for t in tallies.clone() {
        s += &format!(
            "{:<28} {:>8} {:>8} {:>8.2}  {}\n",
            t.id, t.checked, t.agree, t.agreement_pct, t.claim
        );
    }
    s += "\npunctured-coset threshold sensitivity\n";
    for row in &r.punctured_sensitivity {
        s += &format!(
            "  |H| >= {}: {}/{} ({:.2}%)\n",
            row.threshold, row.agree, row.checked, row.agreement_pct
        );
    }
    if let Some(a) = &r.prime_power_audit {
        s += &format!(
            "\nprime-power audit up to {}: {} oracle calls, {} arc-transitive\n",
            a.max_order, a.oracle_calls, a.arc_transitive_instances
        );
    }
    s += "\nverdicts\n";
    for v in &r.verdicts {
        s += &format!(
            "  {:<28} {:?} ({} checked, {} counterexamples)\n",
            v.id, v.status, v.checked, v.counterexamples
        );
    }
    for t in tallies.filter(|t| !t.counterexamples.is_empty()) {
        s += &format!("\ncounterexamples to {}\n", t.id);
        for c in &t.counterexamples {
            let set: Vec<String> = c.s.iter().map(u32::to_string).collect();
            s += &format!(
                "  Circ({},{{{}}}): {}\n",
                c.n,
                set.join(","),
                c.evidence.detail
            );
        }
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { graph: args, json } => {
            let g = graph(&args)?;
            let r = classify::classify(&g);
            emit(&if json {
                to_json(&r)
            } else {
                render_report(&g, &r)
            })
        }
        Command::Decompose { graph: args, json } => {
            let g = graph(&args)?;
            let d = classify::decompose(&g)?;
            emit(&if json {
                to_json(&d)
            } else {
                format!("{}\n", render_decomposition(&d))
            })
        }
        Command::Verify {
            max_n,
            arc_transitive_only,
            json,
            jobs,
            strict,
            prime_power_max,
        } => {
            if prime_power_max.is_some_and(|m| m > 32) {
                return Err(Failure::Usage(
                    "--prime-power-max must be at most 32".into(),
                ));
            }
            let options = VerifyOptions {
                arc_transitive_only,
                jobs,
                prime_power_max,
            };
            let report = classify::verify_range(max_n, &options)?;
            emit(&if json {
                to_json(&report)
            } else {
                render_agreement(&report)
            })?;
            let headline = report
                .tally("generators-iff-transitive")
                .expect("always tallied");
            if strict && !headline.counterexamples.is_empty() {
                return Err(Failure::Strict(format!(
                    "generators-iff-transitive has {} counterexamples",
                    headline.counterexamples.len()
                )));
            }
            Ok(())
        }
        Command::Enumerate {
            n,
            arc_transitive_only,
            json,
        } => {
            if !(1..=32).contains(&n) {
                return Err(Failure::Usage(format!(
                    "enumerate supports 1 <= n <= 32, got {n}"
                )));
            }
            let reps: Vec<CirculantGraph> = connected_representatives(n)
                .into_iter()
                .filter(|g| {
                    !arc_transitive_only
                        || (classify::arc_invariants_constant(g)
                            && circlab::perm_group::is_arc_transitive(g).unwrap_or(false))
                })
                .collect();
            if json {
                emit(&to_json(&reps))
            } else {
                emit(&reps.iter().map(|g| format!("{g}\n")).collect::<String>())
            }
        }
        Command::Export {
            graph: args,
            dot,
            out,
            ..
        } => {
            let g = graph(&args)?;
            let text = if dot { g.to_dot() } else { g.edge_list() };
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
                None => emit(&text),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Strict(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_STRICT)
        }
    }
}
