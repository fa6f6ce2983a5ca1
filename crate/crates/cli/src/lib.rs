//! Command-line driver: argument parsing, report assembly and rendering.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use msa_core::algebra::PathAlgebra;
use msa_core::classify::{self, Stats, Verdict, VerificationReport};
use msa_core::maxsub::{enumerate_in, PresentationJson};
use msa_core::quiver::{word_to_quiver, BinaryWord, QuiverJson};
use msa_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const MAX_N_LIMIT: usize = 14;

#[derive(Parser, Debug)]
#[command(name = "msa", version, about = "Maximal subalgebras of type-A path algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the representatives for one orientation word.
    Enumerate(WordArgs),
    /// Print the bound quiver presentation of each representative.
    Present(WordArgs),
    /// Aut(Q)-orbits on the representatives.
    Orbits(WordArgs),
    /// Isomorphism classes of the representatives.
    Isoclasses(WordArgs),
    /// Compare orbits with isoclasses for every word up to --max-n vertices.
    Verify(VerifyArgs),
    /// Audit the word equation w3 w2* = w2 w3.
    Words(WordsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    /// Orientation word over '+' and '-'.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest vertex count in the sweep, from 2 to 14
    #[arg(long, conflicts_with = "word")]
    pub max_n: Option<usize>,
    /// Check a single word instead of a sweep.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct WordsArgs {
    /// Largest total length len(w2) + len(w3).
    #[arg(long)]
    pub max_len: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
pub struct RepRow {
    pub tag: String,
    pub kind: &'static str,
    pub dim: usize,
    pub connected: bool,
    pub radical_layers: Vec<usize>,
    pub ext_quiver: QuiverJson,
    pub relations: Vec<String>,
    pub presentation: PresentationJson,
}

#[derive(Serialize)]
pub struct Listing {
    pub word: String,
    pub n: usize,
    pub ambient_dim: usize,
    pub reps: Vec<RepRow>,
}

#[derive(Serialize)]
struct Presented<'a> {
    tag: &'a str,
    presentation: &'a PresentationJson,
}

#[derive(Serialize)]
struct OrbitReport {
    word: String,
    aut_order: usize,
    orbits: Vec<Vec<String>>,
    merges: Vec<MergeRow>,
}

#[derive(Serialize)]
struct MergeRow {
    from: String,
    to: String,
    sigma: Vec<(String, String)>,
}

#[derive(Serialize)]
struct IsoReport {
    word: String,
    isoclasses: Vec<Vec<String>>,
    connected: Vec<(String, bool)>,
    cross_orbit: Vec<(String, String)>,
}

#[derive(Serialize)]
struct Summary {
    words: usize,
    passed: usize,
    failed: Vec<String>,
    representatives: usize,
    certificates_verified: usize,
    orbit_merges: usize,
    merges_certified: usize,
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    summary: &'a Summary,
    reports: &'a [VerificationReport],
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidWord(_) | Error::InvalidBound(_) | Error::Workers(_) => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub fn parse_word(s: &str) -> Result<BinaryWord, Failure> {
    s.parse().map_err(Failure::from)
}

pub fn listing(w: &BinaryWord) -> Result<Listing, Error> {
    let b = Arc::new(PathAlgebra::new(word_to_quiver(w))?);
    let reps = if w.is_empty() { Vec::new() } else { enumerate_in(&b)? };
    let mut rows = Vec::new();
    for r in &reps {
        let p = r.presentation()?;
        p.verify(&r.algebra)?;
        let dims = r.algebra.radical_power_dims();
        rows.push(RepRow {
            tag: r.tag.to_string(),
            kind: if r.tag.is_split() { "split" } else { "separable" },
            dim: r.algebra.dim(),
            connected: r.algebra.is_connected(),
            radical_layers: dims.windows(2).map(|p| p[0] - p[1]).collect(),
            ext_quiver: r.algebra.ext_quiver().to_json(),
            relations: p.relations().iter().map(|x| p.format_relation(x)).collect(),
            presentation: p.to_json(),
        });
    }
    Ok(Listing {
        word: w.to_string(),
        n: w.vertex_count(),
        ambient_dim: b.dim(),
        reps: rows,
    })
}

fn quiver_text(q: &QuiverJson) -> String {
    let arrows: Vec<String> = q.arrows.iter().map(|a| format!("{}:{}->{}", a.name, a.src, a.tgt)).collect();
    format!("[{}] {}", q.vertices.join(" "), arrows.join(" "))
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text(),
    }
}

fn cmd_enumerate(w: &BinaryWord, format: Format) -> Result<String, Failure> {
    let l = listing(w)?;
    Ok(render(format, &l, || {
        let mut s = format!("word {:?}  n = {}  dim B = {}  representatives {}\n", l.word, l.n, l.ambient_dim, l.reps.len());
        for r in &l.reps {
            let _ = writeln!(
                s,
                "{:<12} {:<9} dim {:>3}  {:<12} layers {:?}  quiver {}  relations {{{}}}",
                r.tag,
                r.kind,
                r.dim,
                if r.connected { "connected" } else { "disconnected" },
                r.radical_layers,
                quiver_text(&r.presentation.quiver),
                r.relations.join(", ")
            );
        }
        s
    }))
}

fn cmd_present(w: &BinaryWord, format: Format) -> Result<String, Failure> {
    let l = listing(w)?;
    let presentations: Vec<Presented> = l
        .reps
        .iter()
        .map(|r| Presented {
            tag: &r.tag,
            presentation: &r.presentation,
        })
        .collect();
    Ok(render(format, &presentations, || {
        let mut s = String::new();
        for r in &l.reps {
            let _ = writeln!(s, "{}", r.tag);
            let _ = writeln!(s, "  quiver    {}", quiver_text(&r.presentation.quiver));
            let _ = writeln!(s, "  relations {{{}}}", r.relations.join(", "));
            for (name, image) in &r.presentation.arrow_dict {
                let terms: Vec<String> = image.iter().map(|(p, c)| if c == "1" { p.clone() } else { format!("({c}){p}") }).collect();
                let _ = writeln!(s, "  {name} = {}", terms.join(" + "));
            }
        }
        s
    }))
}

fn cmd_orbits(w: &BinaryWord, format: Format) -> Result<String, Failure> {
    let q = word_to_quiver(w);
    let b = Arc::new(PathAlgebra::new(q.clone())?);
    let reps = if w.is_empty() { Vec::new() } else { enumerate_in(&b)? };
    let tags: Vec<_> = reps.iter().map(|r| r.tag).collect();
    let p = classify::orbits(&q, &tags)?;
    let report = OrbitReport {
        word: w.to_string(),
        aut_order: msa_core::quiver::aut_group(&q).len(),
        orbits: p.blocks.iter().map(|b| b.iter().map(|t| t.to_string()).collect()).collect(),
        merges: p
            .merges
            .iter()
            .map(|m| MergeRow {
                from: m.from.to_string(),
                to: m.to.to_string(),
                sigma: (0..q.vertex_count())
                    .map(|v| (q.label(v).to_string(), q.label(m.sigma.apply(v)).to_string()))
                    .collect(),
            })
            .collect(),
    };
    Ok(render(format, &report, || {
        let mut s = format!("word {:?}  |Aut(Q)| = {}  orbits {}\n", report.word, report.aut_order, report.orbits.len());
        for o in &report.orbits {
            let _ = writeln!(s, "  {{{}}}", o.join(", "));
        }
        s
    }))
}

fn cmd_isoclasses(w: &BinaryWord, format: Format) -> Result<String, Failure> {
    let report = if w.is_empty() {
        IsoReport {
            word: String::new(),
            isoclasses: Vec::new(),
            connected: Vec::new(),
            cross_orbit: Vec::new(),
        }
    } else {
        let an = classify::analyze_word(w)?;
        let tag = |k: usize| an.reps[k].tag.to_string();
        IsoReport {
            word: w.to_string(),
            isoclasses: an.isoclasses.iter().map(|c| c.iter().map(|&k| tag(k)).collect()).collect(),
            connected: an.reps.iter().zip(&an.connected).map(|(r, &c)| (r.tag.to_string(), c)).collect(),
            cross_orbit: an.cross_orbit.iter().map(|&(a, b)| (tag(a), tag(b))).collect(),
        }
    };
    Ok(render(format, &report, || {
        let mut s = format!("word {:?}  isoclasses {}\n", report.word, report.isoclasses.len());
        for c in &report.isoclasses {
            let _ = writeln!(s, "  {{{}}}", c.join(", "));
        }
        for (a, b) in &report.cross_orbit {
            let _ = writeln!(s, "  {a} is isomorphic to {b} across orbits");
        }
        s
    }))
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32), Failure> {
    let started = Instant::now();
    let reports = match (&args.word, args.max_n) {
        (Some(w), None) => {
            let w = parse_word(w)?;
            if w.is_empty() {
                return Err(Failure::usage("verify needs a word with at least one letter"));
            }
            vec![classify::verify_word(&w)?]
        }
        (None, Some(n)) => {
            if !(2..=MAX_N_LIMIT).contains(&n) {
                return Err(Failure::usage(format!("--max-n must lie in 2..={MAX_N_LIMIT}, got {n}")));
            }
            with_workers(args.output.workers, || classify::verify_theorem(n))??
        }
        _ => return Err(Failure::usage("verify needs --max-n or --word")),
    };
    let mut stats = Stats::default();
    reports.iter().for_each(|r| stats.add(&r.stats));
    let failed: Vec<String> = reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.word.clone()).collect();
    let summary = Summary {
        words: reports.len(),
        passed: reports.len() - failed.len(),
        failed,
        representatives: reports.iter().map(|r| r.reps.len()).sum(),
        certificates_verified: stats.certificates_verified,
        orbit_merges: stats.orbit_merges,
        merges_certified: stats.merges_certified,
    };
    let code = if summary.failed.is_empty() { EXIT_OK } else { EXIT_MISMATCH };
    eprintln!("verified {} words in {:.2?}", summary.words, started.elapsed());
    let out = render(args.output.format, &SweepOutput { summary: &summary, reports: &reports }, || {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(
                s,
                "{:<12} n={:<2} reps {:>3}  orbits {:>3}  isoclasses {:>3}  {}",
                if r.word.is_empty() { "\"\"" } else { &r.word },
                r.n,
                r.reps.len(),
                r.orbits.len(),
                r.isoclasses.len(),
                if r.verdict == Verdict::Pass { "pass" } else { "FAIL" }
            );
            for note in &r.notes {
                let _ = writeln!(s, "    note: {note}");
            }
        }
        let _ = writeln!(
            s,
            "{} words, {} passed, {} failed; {} representatives; {} certificates re-verified; {}/{} orbit merges certified",
            summary.words,
            summary.passed,
            summary.failed.len(),
            summary.representatives,
            summary.certificates_verified,
            summary.merges_certified,
            summary.orbit_merges
        );
        for w in &summary.failed {
            let _ = writeln!(s, "mismatch on word {w}");
        }
        s
    });
    Ok((out, code))
}

fn cmd_words(args: &WordsArgs) -> (String, i32) {
    let audit = classify::audit_word_equation(args.max_len);
    let code = if audit.holds() { EXIT_OK } else { EXIT_MISMATCH };
    let out = render(args.output.format, &audit, || {
        let mut s = String::new();
        for (w2, w3) in &audit.solutions {
            let _ = writeln!(s, "w2 = {:<14} w3 = {}", w2.to_string(), if w3.is_empty() { "\"\"".into() } else { w3.to_string() });
        }
        let _ = writeln!(s, "{} solutions with len(w2) + len(w3) <= {}", audit.solutions.len(), audit.max_total_len);
        let _ = writeln!(s, "odd len(w3): {}", audit.odd_w3.len());
        let _ = writeln!(s, "w3 not symmetric: {}", audit.asymmetric_w3.len());
        s
    });
    (out, code)
}

fn output_of(c: &Command) -> &Output {
    match c {
        Command::Enumerate(a) | Command::Present(a) | Command::Orbits(a) | Command::Isoclasses(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Words(a) => &a.output,
    }
}

/// Runs a parsed command, returning the rendered report and exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let word_cmd = |a: &WordArgs, f: fn(&BinaryWord, Format) -> Result<String, Failure>| -> Result<(String, i32), Failure> {
        let w = parse_word(&a.word)?;
        let fmt = a.output.format;
        Ok((with_workers(a.output.workers, || f(&w, fmt))??, EXIT_OK))
    };
    match &cli.command {
        Command::Enumerate(a) => word_cmd(a, cmd_enumerate),
        Command::Present(a) => word_cmd(a, cmd_present),
        Command::Orbits(a) => word_cmd(a, cmd_orbits),
        Command::Isoclasses(a) => word_cmd(a, cmd_isoclasses),
        Command::Verify(a) => cmd_verify(a),
        Command::Words(a) => Ok(cmd_words(a)),
    }
}

/// Full entry point: parses `args`, runs, writes output, returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &output_of(&cli.command).out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(m) => {
                    let _ = writeln!(stderr, "error: {m}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("msa").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["enumerate", "--word", "+x"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--max-n", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--max-n", "15"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--word", "+", "--workers", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("enumerate"));
    }

    #[test]
    fn empty_word_lists_nothing() {
        let (code, out, _) = call(&["enumerate", "--word", "", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reps"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn leading_minus_word_is_accepted() {
        let (code, out, _) = call(&["orbits", "--word", "-+", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"aut_order\": 2"));
    }
}
