//! `plbraid`: diagrams and braids in, braids, diagrams and certificates out.
//!
//! Exit status 0 on success, 1 when a check fails, 2 on bad input. Errors go
//! to stderr as one JSON object per line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use plbraid::braiding::{braid_diagram, prepare};
use plbraid::corpus;
use plbraid::diagram::{perturb_to_generic, validate_generic};
use plbraid::mixed::{braid_band_move, l_move_moving, MixedBraid};
use plbraid::oracles::{
    bracket_from_braid_bounded, canonical_linking, kauffman_bracket_bounded, linking_matrix, LaurentPoly,
    DEFAULT_MAX_CROSSINGS, DEFAULT_MAX_STRANDS,
};
use plbraid::{closure, BraidWord, LMoveKind, LinkDiagram};

#[derive(Parser)]
#[command(name = "plbraid", version, about = "Braid PL link diagrams and check the results")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Files {
    /// Input file, `-` for stdin.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Output file (stdout if absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy)]
struct Sign(i32);

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "+1" | "1" => Ok(Sign(1)),
            "-" | "-1" => Ok(Sign(-1)),
            _ => Err(format!("sign must be + or -, got {s:?}")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    O,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Bracket,
    Normalized,
    Linking,
    Components,
    Writhe,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    /// State sum on the closure diagram.
    StateSum,
    /// Temperley-Lieb expansion of the braid (braid input only).
    Tl,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKind {
    Braids,
    Diagrams,
    Mixed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Genericity report of a diagram, as JSON.
    Validate(Files),
    /// Moves a diagram into general position.
    Perturb(Files),
    /// Braids a diagram.
    Braid {
        #[command(flatten)]
        files: Files,
        /// Perturb first if the diagram is not generic.
        #[arg(long)]
        perturb: bool,
    },
    /// Closure diagram of a braid.
    Closure(Files),
    /// L-move; on a mixed braid only moving strands may be cut.
    Lmove {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        split: usize,
        #[arg(long)]
        pos: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Markov stabilization.
    Stabilize {
        #[command(flatten)]
        files: Files,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Conjugates by a word, e.g. --by "1 -2".
    Conjugate {
        #[command(flatten)]
        files: Files,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Braid band move of a mixed braid along a surgery component.
    Bandmove {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        component: usize,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Invariant of a diagram or of a braid's closure.
    Cert {
        #[command(flatten)]
        files: Files,
        #[arg(long, value_enum)]
        kind: CertKind,
        #[arg(long, value_enum, default_value = "state-sum")]
        oracle: Oracle,
        #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
        max_crossings: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STRANDS)]
        max_strands: usize,
    },
    /// Closure, braiding and comparison; prints PASS or FAIL.
    Roundtrip(Files),
    /// Seeded random test inputs.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "braids")]
        kind: CorpusKind,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        /// Word length, or crossings for diagrams.
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        /// One file per item here instead of `---`-separated stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

enum Fail {
    /// Bad or unusable input: exit 2.
    Input(String, String),
    /// A check ran and failed: exit 1.
    Check(String),
}

impl From<plbraid::Error> for Fail {
    fn from(e: plbraid::Error) -> Self {
        Fail::Input(e.kind().to_string(), e.to_string())
    }
}

fn io_fail(path: &Path, e: io::Error) -> Fail {
    Fail::Input("Io".into(), format!("{}: {e}", path.display()))
}

enum Input {
    Diagram(LinkDiagram),
    Braid(BraidWord),
    Mixed(MixedBraid),
}

fn read_text(path: &Path) -> Result<String, Fail> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_fail(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| io_fail(path, e))
    }
}

/// Diagrams are JSON; mixed braids carry a `fixed=` line; anything else is a braid.
fn read_input(path: &Path) -> Result<Input, Fail> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        Ok(Input::Diagram(LinkDiagram::from_json(&text)?))
    } else if text.lines().any(|l| l.trim_start().starts_with("fixed=")) {
        Ok(Input::Mixed(MixedBraid::from_text(&text)?))
    } else {
        Ok(Input::Braid(BraidWord::from_text(&text)?))
    }
}

fn wrong(expected: &str) -> Fail {
    Fail::Input("WrongInput".into(), format!("expected {expected}"))
}

fn diagram(path: &Path) -> Result<LinkDiagram, Fail> {
    match read_input(path)? {
        Input::Diagram(d) => Ok(d),
        _ => Err(wrong("a diagram file")),
    }
}

fn braid(path: &Path) -> Result<BraidWord, Fail> {
    match read_input(path)? {
        Input::Braid(w) => Ok(w),
        _ => Err(wrong("a braid file")),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| io_fail(p, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| io_fail(Path::new("-"), e)),
    }
}

fn matrix_json(m: &[Vec<i64>]) -> String {
    let mut s = json!(m).to_string();
    s.push('\n');
    s
}

fn cert(
    input: Input,
    kind: CertKind,
    oracle: Oracle,
    max_crossings: usize,
    max_strands: usize,
) -> Result<String, Fail> {
    let word = match &input {
        Input::Diagram(_) => None,
        Input::Braid(w) => Some(w.clone()),
        Input::Mixed(mb) => Some(mb.word().clone()),
    };
    let d = match input {
        Input::Diagram(d) => d,
        _ => closure(word.as_ref().unwrap()),
    };
    let bracket = |normalize: bool| -> Result<LaurentPoly, Fail> {
        let b = match (oracle, &word) {
            (Oracle::Tl, Some(w)) => bracket_from_braid_bounded(w, max_strands)?,
            (Oracle::Tl, None) => return Err(wrong("a braid for the tl oracle")),
            (Oracle::StateSum, _) => kauffman_bracket_bounded(&d, max_crossings)?,
        };
        Ok(if normalize { &LaurentPoly::neg_a_cubed_pow(-d.writhe()) * &b } else { b })
    };
    Ok(match kind {
        CertKind::Bracket => format!("{}\n", bracket(false)?),
        CertKind::Normalized => format!("{}\n", bracket(true)?),
        CertKind::Linking => {
            // Self-writhes depend on the diagram, so only linking numbers are kept.
            let mut m = linking_matrix(&d);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 0;
            }
            matrix_json(&canonical_linking(&m))
        }
        CertKind::Components => format!("{}\n", d.component_count()),
        CertKind::Writhe => format!("{}\n", d.writhe()),
    })
}

fn lmove_kind(k: Kind) -> LMoveKind {
    match k {
        Kind::O => LMoveKind::Over,
        Kind::U => LMoveKind::Under,
    }
}

fn note(v: serde_json::Value) {
    eprintln!("{v}");
}

fn write_corpus(items: Vec<(String, String)>, out_dir: &Option<PathBuf>) -> Result<(), Fail> {
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_fail(dir, e))?;
            for (name, text) in items {
                let p = dir.join(name);
                fs::write(&p, text).map_err(|e| io_fail(&p, e))?;
            }
            Ok(())
        }
        None => {
            let body: Vec<String> = items.into_iter().map(|(_, t)| t).collect();
            emit(&None, &body.join("---\n"))
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Validate(f) => {
            let report = validate_generic(&diagram(&f.input)?, None);
            emit(&f.output, &format!("{}\n", report.to_json()))?;
            if !report.is_generic {
                return Err(Fail::Check(format!("{} genericity violations", report.violation_count())));
            }
        }
        Cmd::Perturb(f) => emit(&f.output, &perturb_to_generic(&diagram(&f.input)?)?.to_json())?,
        Cmd::Braid { files, perturb } => {
            let mut d = diagram(&files.input)?;
            if perturb && !validate_generic(&d, None).is_generic {
                d = perturb_to_generic(&d)?;
            }
            let ld = prepare(&d)?;
            note(json!({"level": "info", "up_arcs": ld.up_arcs.len()}));
            emit(&files.output, &braid_diagram(&ld)?.to_text())?;
        }
        Cmd::Closure(f) => emit(&f.output, &closure(&braid(&f.input)?).to_json())?,
        Cmd::Lmove { files, split, pos, kind, sign } => {
            let text = match read_input(&files.input)? {
                Input::Braid(w) => w.l_move(split, pos, lmove_kind(kind), sign.0)?.to_text(),
                Input::Mixed(mb) => l_move_moving(&mb, split, pos, lmove_kind(kind), sign.0)?.to_text(),
                Input::Diagram(_) => return Err(wrong("a braid or mixed-braid file")),
            };
            emit(&files.output, &text)?;
        }
        Cmd::Stabilize { files, sign } => emit(&files.output, &braid(&files.input)?.markov_stabilize(sign.0)?.to_text())?,
        Cmd::Conjugate { files, by } => {
            let w = braid(&files.input)?;
            let g = BraidWord::new(w.strands(), plbraid::braid::parse_letters(&by)?)?;
            emit(&files.output, &w.conjugate(&g)?.to_text())?;
        }
        Cmd::Bandmove { files, component, sign } => {
            let mb = match read_input(&files.input)? {
                Input::Mixed(mb) => mb,
                _ => return Err(wrong("a mixed-braid file")),
            };
            let bm = braid_band_move(&mb, component, sign.0)?;
            note(json!({
                "level": "info",
                "conjugator": bm.conjugator.letters(),
                "moving_before": bm.moving_before,
                "moving_after": bm.moving_after,
                "string": bm.string,
                "predicted_lk_delta": bm.predicted_lk_delta,
            }));
            emit(&files.output, &bm.result.to_text())?;
        }
        Cmd::Cert { files, kind, oracle, max_crossings, max_strands } => {
            let out = cert(read_input(&files.input)?, kind, oracle, max_crossings, max_strands)?;
            emit(&files.output, &out)?;
        }
        Cmd::Roundtrip(f) => {
            let w = braid(&f.input)?;
            let back = braid_diagram(&prepare(&closure(&w))?)?;
            let ok = back.free_reduce() == w.free_reduce();
            emit(&f.output, if ok { "PASS\n" } else { "FAIL\n" })?;
            if !ok {
                return Err(Fail::Check(format!("braided back to {:?}", back.letters())));
            }
        }
        Cmd::Corpus { seed, count, kind, max_strands, max_length, out_dir } => {
            let items: Vec<(String, String)> = match kind {
                CorpusKind::Braids => corpus::braid_corpus(seed, count, max_strands, max_length)
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (format!("braid_{i:04}.braid"), w.to_text()))
                    .collect(),
                CorpusKind::Diagrams => corpus::diagram_corpus(seed, count, max_length)
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (format!("diagram_{i:04}.json"), d.to_json()))
                    .collect(),
                CorpusKind::Mixed => corpus::mixed_corpus(seed, count)
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (format!("mixed_{i:04}.mixed"), m.to_text()))
                    .collect(),
            };
            write_corpus(items, &out_dir)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            note(json!({"level": "error", "kind": "CheckFailed", "message": msg}));
            ExitCode::from(1)
        }
        Err(Fail::Input(kind, msg)) => {
            note(json!({"level": "error", "kind": kind, "message": msg}));
            ExitCode::from(2)
        }
    }
}
