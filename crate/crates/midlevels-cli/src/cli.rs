//! Command-line front end: generation, verification, structure inspection
//! and benchmarking. All configuration comes in through flags; exit code 0
//! on success, 1 for invalid arguments, 2 for verification failures.

use std::io::{BufWriter, Write};
use std::time::Instant;

use midlevels::{BitString, CycleIterator};

use crate::oracle;

const USAGE: &str = "\
midlevels: middle levels Gray code generator and verifier

Subcommands:
  generate  --n N [--start BITS] [--count L] [--format bits|flips]
            Stream the Gray code, one line per vertex (default count: the
            full cycle length N = 2 C(2n+1,n)). Format `bits` prints the
            vertex, `flips` the 1-based index of the bit flipped per step.
  verify    --n N [--max-n BOUND]
            Walk a full cycle and check the Gray code conditions.
  twofactor --n N [--flips]
            Print the cycle count and lengths of the 2-factor traced with
            flipping disabled (or enabled with --flips).
  spanning  --n N [--dot]
            Print node/edge counts of the auxiliary plane-tree graphs and
            the spanning-tree verdict; --dot emits Graphviz instead.
  bench     --n N --count L
            Time L generation steps and report per-step operation counts.
  help      Print this text.
";

struct Parsed {
    values: Vec<(&'static str, String)>,
    switches: Vec<&'static str>,
}

impl Parsed {
    fn get(&self, name: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.as_str())
    }

    fn has(&self, name: &str) -> bool {
        self.switches.contains(&name)
    }
}

fn parse_flags(
    args: &[String],
    valued: &[&'static str],
    switches: &[&'static str],
) -> Result<Parsed, String> {
    let mut parsed = Parsed {
        values: Vec::new(),
        switches: Vec::new(),
    };
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if let Some(&name) = valued.iter().find(|&&v| format!("--{v}") == *arg) {
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("{arg} needs a value"))?;
            parsed.values.push((name, value.clone()));
            i += 2;
        } else if let Some(&name) = switches.iter().find(|&&s| format!("--{s}") == *arg) {
            parsed.switches.push(name);
            i += 1;
        } else {
            return Err(format!("unknown argument {arg}"));
        }
    }
    Ok(parsed)
}

fn require_n(parsed: &Parsed) -> Result<usize, String> {
    let raw = parsed.get("n").ok_or("--n is required")?;
    let n: usize = raw.parse().map_err(|_| format!("bad --n value {raw}"))?;
    if n < 1 {
        return Err("--n must be at least 1".into());
    }
    Ok(n)
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (cmd, rest) = match args.split_first() {
        Some((cmd, rest)) => (cmd.as_str(), rest),
        None => {
            let _ = write!(err, "{USAGE}");
            return 1;
        }
    };
    let result = match cmd {
        "generate" => generate(rest, out),
        "verify" => verify(rest, out),
        "twofactor" => twofactor(rest, out),
        "spanning" => spanning(rest, out),
        "bench" => bench(rest, out),
        "help" | "--help" | "-h" => {
            let _ = write!(out, "{USAGE}");
            return 0;
        }
        other => Err(CliError::Usage(format!("unknown subcommand {other}"))),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = write!(err, "{USAGE}");
            1
        }
        Err(CliError::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "io error: {e}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Verification(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Usage(msg)
    }
}

impl From<midlevels::Error> for CliError {
    fn from(e: midlevels::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn default_start(n: usize) -> BitString {
    BitString::ones_then_zeros(n, n + 1)
}

fn generate(args: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let parsed = parse_flags(args, &["n", "start", "count", "format"], &[])?;
    let n = require_n(&parsed)?;
    let start = match parsed.get("start") {
        Some(raw) => raw
            .parse::<BitString>()
            .map_err(|e| CliError::Usage(e.to_string()))?,
        None => default_start(n),
    };
    let count: u128 = match parsed.get("count") {
        Some(raw) => raw
            .parse()
            .map_err(|_| CliError::Usage(format!("bad --count value {raw}")))?,
        None => oracle::vertex_count(n),
    };
    if count < 1 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let flips = match parsed.get("format").unwrap_or("bits") {
        "bits" => false,
        "flips" => true,
        other => return Err(CliError::Usage(format!("unknown format {other}"))),
    };
    let mut it = CycleIterator::new(n, &start)?;
    let mut out = BufWriter::new(out);
    let mut line = String::with_capacity(2 * n + 2);
    let mut remaining = count;
    while remaining > 0 {
        it.advance()?;
        line.clear();
        if flips {
            let changed = it.last_changed_bit().expect("advance records the flip") + 1;
            let _ = std::fmt::Write::write_fmt(&mut line, format_args!("{changed}"));
        } else {
            let _ = std::fmt::Write::write_fmt(&mut line, format_args!("{}", it.current()));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
        remaining -= 1;
    }
    out.flush()?;
    Ok(())
}

fn verify(args: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let parsed = parse_flags(args, &["n", "max-n"], &[])?;
    let n = require_n(&parsed)?;
    let bound: usize = match parsed.get("max-n") {
        Some(raw) => raw
            .parse()
            .map_err(|_| CliError::Usage(format!("bad --max-n value {raw}")))?,
        None => oracle::STREAM_BOUND,
    };
    if n > bound {
        return Err(CliError::Usage(format!(
            "verify is bounded to n <= {bound}; raise --max-n at your own risk"
        )));
    }
    let ranker = oracle::VertexRanker::new(n)?;
    let total = ranker.total();
    let mut visited = oracle::Bitset::new(total);
    let start = default_start(n);
    let mut it = CycleIterator::new(n, &start)?;
    let mut prev = start.clone();
    for step in 0..total {
        let v = it.advance()?;
        let diff = (0..v.len()).filter(|&i| v.bit(i) != prev.bit(i)).count();
        if diff != 1 {
            return Err(CliError::Verification(format!(
                "step {step}: {prev} -> {v} changes {diff} bits"
            )));
        }
        let rank = ranker.rank(v).ok_or_else(|| {
            CliError::Verification(format!("step {step}: {v} is not a middle levels vertex"))
        })?;
        if visited.set(rank) {
            return Err(CliError::Verification(format!(
                "step {step}: vertex {v} repeated"
            )));
        }
        prev = v.clone();
    }
    if prev != start {
        return Err(CliError::Verification(format!(
            "cycle did not close: ended at {prev}, expected {start}"
        )));
    }
    writeln!(out, "OK: {total} vertices, Hamiltonian")?;
    Ok(())
}

fn twofactor(args: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let parsed = parse_flags(args, &["n"], &["flips"])?;
    let n = require_n(&parsed)?;
    let decomposition = oracle::two_factor(n, parsed.has("flips"))?;
    writeln!(out, "{} cycles", decomposition.cycles.len())?;
    let lengths: Vec<String> = decomposition
        .lengths()
        .iter()
        .map(|l| l.to_string())
        .collect();
    writeln!(out, "lengths: {}", lengths.join(" "))?;
    Ok(())
}

fn spanning(args: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let parsed = parse_flags(args, &["n"], &["dot"])?;
    let n = require_n(&parsed)?;
    let g = oracle::build_g(n)?;
    let h = oracle::build_h(n)?;
    if parsed.has("dot") {
        write!(out, "{}", oracle::aux_graphs_to_dot(&g, &h))?;
        return Ok(());
    }
    let spanning = oracle::is_spanning_tree(&h, &g)?;
    writeln!(
        out,
        "G_{n}: {} nodes, {} edges ({} tau1, {} tau2)",
        g.nodes.len(),
        g.edges.len(),
        g.edge_count_with_label(oracle::TauLabel::Tau1),
        g.edge_count_with_label(oracle::TauLabel::Tau2),
    )?;
    writeln!(
        out,
        "H_{n}: {} edges ({} tau1, {} tau2)",
        h.edges.len(),
        h.edge_count_with_label(oracle::TauLabel::Tau1),
        h.edge_count_with_label(oracle::TauLabel::Tau2),
    )?;
    writeln!(out, "H_{n} is a spanning tree of G_{n}: {spanning}")?;
    if !spanning {
        return Err(CliError::Verification(
            "selected flips do not span the plane-tree graph".into(),
        ));
    }
    Ok(())
}

fn bench(args: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let parsed = parse_flags(args, &["n", "count"], &[])?;
    let n = require_n(&parsed)?;
    let count: u64 = parsed
        .get("count")
        .ok_or_else(|| CliError::Usage("--count is required".into()))?
        .parse()
        .map_err(|_| CliError::Usage("bad --count value".into()))?;
    if count < 1 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let start = default_start(n);
    let mut it = CycleIterator::new(n, &start)?;
    let t0 = Instant::now();
    for _ in 0..count {
        it.advance()?;
    }
    let elapsed = t0.elapsed();
    let stats = it.stats();
    let per_sec = count as f64 / elapsed.as_secs_f64().max(1e-9);
    writeln!(out, "n={n} steps={count} elapsed={:.3}s", elapsed.as_secs_f64())?;
    writeln!(out, "vertices/second: {per_sec:.0}")?;
    writeln!(
        out,
        "ops/step: {:.2} (basic_ops={}, flip_checks={})",
        stats.basic_ops as f64 / stats.steps.max(1) as f64,
        stats.basic_ops,
        stats.flip_checks,
    )?;
    if stats.min_cheap_gap != u64::MAX {
        writeln!(out, "min cheap steps between flip checks: {}", stats.min_cheap_gap)?;
    }
    Ok(())
}
