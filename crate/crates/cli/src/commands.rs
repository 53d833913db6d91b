use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use omtrace::algebra::{
    lim_linked_pairs, linked_pairs, pcut_check, profile_semigroup, transition_semigroup,
    FiniteSemigroup, LinkedPair,
};
use omtrace::dacma::DEFAULT_GLOBAL_CAP;
use omtrace::oracle::{bounded_closure_oracle, ext_prefix_oracle, lim_prefix_oracle};
use omtrace::stability::{closure_violation, i_diamond_violation};
use omtrace::{
    dwa_decompose, equivalent, ext_automaton, i_suffix_extension, is_limit_stable,
    lasso_equivalent, lim_automaton, normal_form, trace_closure, weak_equivalent, Acceptance,
    ClosureOptions, CompileOptions, DependenceAlphabet, OmegaAutomaton, Polarity,
};

use crate::error::CliError;
use crate::format::{parse_lasso, AutomatonFile, DacmaFile};

const SEMIGROUP_CAP: usize = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "omtrace",
    version,
    about = "Trace-closed languages, their limits and asynchronous automata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Input automaton or DACMA file
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the constructed automaton here instead of standard output
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz rendering of the result (or of the input)
    #[arg(long = "out-dot", value_name = "FILE")]
    pub out_dot: Option<PathBuf>,
    /// Print a JSON report on standard output
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct AlphabetArgs {
    /// Letters, e.g. `abc` (when no --in file supplies the alphabet)
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Independent letter pair, e.g. `bc`; repeatable
    #[arg(long)]
    pub independent: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and check a file
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Lexicographic normal form of a word's trace
    NormalForm {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        word: String,
    },
    /// Equivalence of two words, two lassos, or two automata
    Equiv {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Second automaton file
        #[arg(long, value_name = "FILE")]
        with: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        words: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["L1", "L2"], allow_hyphen_values = true)]
        lassos: Option<Vec<String>>,
    },
    /// Trace closure by saturation
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-rounds", default_value_t = 32)]
        max_rounds: usize,
    },
    /// I-suffix extension K_I of a trace-closed language
    Isuffix {
        #[command(flatten)]
        common: Common,
    },
    /// Weak automaton for ext(L) or its complement
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        negative: bool,
    },
    /// Büchi automaton for lim(L), with its limit-stability
    Lim {
        #[command(flatten)]
        common: Common,
    },
    /// Is the language trace-closed?
    CheckTraceClosed {
        #[command(flatten)]
        common: Common,
    },
    /// Is the transition structure I-diamond?
    CheckIDiamond {
        #[command(flatten)]
        common: Common,
    },
    /// Is lim(L) trace-closed?
    CheckLimitStable {
        #[command(flatten)]
        common: Common,
    },
    /// Boolean combination of ext automata for an I-diamond weak automaton
    DecomposeDwa {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an automaton or DACMA on a lasso
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lasso: String,
    },
    /// Global DFA of an asynchronous automaton
    DacaGlobal {
        #[command(flatten)]
        common: Common,
    },
    /// Boolean combination of component DBAs for a DACMA
    DacmaDecompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lasso: Option<String>,
    },
    /// Transition semigroup, or extended profiles with --profile
    Semigroup {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        profile: bool,
    },
    /// Linked pairs; with --lim, split by lim acceptance
    LinkedPairs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lim: bool,
    },
    /// P-cut property of the linked pairs of the transition semigroup
    Pcut {
        #[command(flatten)]
        common: Common,
        /// Check one pair only, as `s,e`
        #[arg(long)]
        pair: Option<String>,
    },
    /// Brute-force oracles
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lasso: Option<String>,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long = "max-rounds", default_value_t = 32)]
        max_rounds: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::NormalForm { .. } => "normal-form",
            Command::Equiv { .. } => "equiv",
            Command::Closure { .. } => "closure",
            Command::Isuffix { .. } => "isuffix",
            Command::Ext { .. } => "ext",
            Command::Lim { .. } => "lim",
            Command::CheckTraceClosed { .. } => "check-trace-closed",
            Command::CheckIDiamond { .. } => "check-i-diamond",
            Command::CheckLimitStable { .. } => "check-limit-stable",
            Command::DecomposeDwa { .. } => "decompose-dwa",
            Command::Eval { .. } => "eval",
            Command::DacaGlobal { .. } => "daca-global",
            Command::DacmaDecompose { .. } => "dacma-decompose",
            Command::Semigroup { .. } => "semigroup",
            Command::LinkedPairs { .. } => "linked-pairs",
            Command::Pcut { .. } => "pcut",
            Command::Oracle { .. } => "oracle",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Validate { common }
            | Command::NormalForm { common, .. }
            | Command::Equiv { common, .. }
            | Command::Closure { common, .. }
            | Command::Isuffix { common }
            | Command::Ext { common, .. }
            | Command::Lim { common }
            | Command::CheckTraceClosed { common }
            | Command::CheckIDiamond { common }
            | Command::CheckLimitStable { common }
            | Command::DecomposeDwa { common }
            | Command::Eval { common, .. }
            | Command::DacaGlobal { common }
            | Command::DacmaDecompose { common, .. }
            | Command::Semigroup { common, .. }
            | Command::LinkedPairs { common, .. }
            | Command::Pcut { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }
}

/// What a command produced, before rendering.
#[derive(Default)]
struct Outcome {
    verdict: Option<bool>,
    lines: Vec<String>,
    witness: Option<Value>,
    iterations: Option<usize>,
    output: Option<String>,
    dot: Option<String>,
}

impl Outcome {
    fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn emit(&mut self, aut: &AutomatonFile) {
        self.output = Some(aut.serialize());
        self.dot = Some(aut.dot());
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    timing_ms: f64,
    input_digest: String,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    messages: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    automaton: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// The loaded `--in` file.
struct Input {
    text: String,
    digest: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn load(common: &Common) -> Result<Input, CliError> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing --in FILE".into()))?;
    let text = read(path)?;
    let digest = digest(text.as_bytes());
    Ok(Input { text, digest })
}

fn automaton(input: &Input) -> Result<AutomatonFile, CliError> {
    if DacmaFile::sniff(&input.text) {
        return Err(CliError::Usage(
            "expected an automaton file, found a DACMA".into(),
        ));
    }
    AutomatonFile::parse(&input.text)
}

fn dacma(input: &Input) -> Result<DacmaFile, CliError> {
    if !DacmaFile::sniff(&input.text) {
        return Err(CliError::Usage(
            "expected a DACMA file (with `local` lines)".into(),
        ));
    }
    DacmaFile::parse(&input.text)
}

fn alphabet_of(
    common: &Common,
    args: &AlphabetArgs,
) -> Result<(DependenceAlphabet, String), CliError> {
    if common.input.is_some() {
        let input = load(common)?;
        let alphabet = if DacmaFile::sniff(&input.text) {
            dacma(&input)?.dacma.alphabet().clone()
        } else {
            automaton(&input)?.alphabet().clone()
        };
        return Ok((alphabet, input.digest));
    }
    let letters: Vec<char> = args
        .alphabet
        .as_ref()
        .ok_or_else(|| CliError::Usage("give --in FILE or --alphabet LETTERS".into()))?
        .chars()
        .collect();
    let mut pairs = Vec::new();
    for p in &args.independent {
        let cs: Vec<char> = p.chars().collect();
        if cs.len() != 2 {
            return Err(CliError::Usage(format!(
                "--independent takes two letters, found `{p}`"
            )));
        }
        pairs.push((cs[0], cs[1]));
    }
    let key = format!(
        "{}|{}",
        args.alphabet.as_deref().unwrap_or(""),
        args.independent.join(",")
    );
    Ok((
        DependenceAlphabet::new(&letters, &pairs)?,
        digest(key.as_bytes()),
    ))
}

fn word_of(alphabet: &DependenceAlphabet, text: &str) -> Result<Vec<usize>, CliError> {
    Ok(alphabet.word(text)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pair_json(sg: &FiniteSemigroup, p: LinkedPair) -> Value {
    let s = sg.alphabet();
    json!({"s": p.s, "e": p.e, "s_word": s.render(sg.word_of(p.s)), "e_word": s.render(sg.word_of(p.e))})
}

fn execute(command: &Command) -> Result<(Outcome, String), CliError> {
    let common = command.common();
    let mut out = Outcome::default();
    let digest = match command {
        Command::Validate { .. } => {
            let input = load(common)?;
            if DacmaFile::sniff(&input.text) {
                let m = dacma(&input)?.dacma;
                let g = m.global_automaton(DEFAULT_GLOBAL_CAP)?;
                out.say(format!(
                    "valid DACMA: {} letters, local sizes {:?}, {} Muller entries, {} global states",
                    m.alphabet().len(),
                    m.local_sizes(),
                    m.table().len(),
                    g.trans.state_count()
                ));
            } else {
                let f = automaton(&input)?;
                let acc = f.omega().map(|a| a.acceptance().name()).unwrap_or("buchi");
                out.say(format!(
                    "valid automaton: {} states, {} letters, acceptance {}, I-diamond {}",
                    f.trans.state_count(),
                    f.alphabet().len(),
                    if f.kind.is_some() {
                        acc
                    } else {
                        "none (finite words)"
                    },
                    yes_no(i_diamond_violation(&f.trans).is_none())
                ));
                out.dot = Some(f.dot());
            }
            input.digest
        }
        Command::NormalForm { alphabet, word, .. } => {
            let (s, digest) = alphabet_of(common, alphabet)?;
            let t = normal_form(&word_of(&s, word)?, &s)?;
            out.say(t.to_string());
            out.witness = Some(json!({"normal_form": t.to_string()}));
            digest
        }
        Command::Equiv {
            alphabet,
            with,
            words,
            lassos,
            ..
        } => {
            if let Some(other) = with {
                let input = load(common)?;
                let (x, y) = (automaton(&input)?, AutomatonFile::parse(&read(other)?)?);
                let both_weak = x.kind == Some(crate::format::Kind::Weak)
                    && y.kind == Some(crate::format::Kind::Weak);
                let same = if both_weak {
                    weak_equivalent(&x.omega()?, &y.omega()?)?
                } else if x.kind.is_none() && y.kind.is_none() {
                    x.dfa()?.equivalent(&y.dfa()?)?
                } else {
                    return Err(CliError::Usage(
                        "equiv compares two finite-word DFAs or two weak automata".into(),
                    ));
                };
                out.verdict = Some(same);
                out.say(if same { "equivalent" } else { "not equivalent" });
                input.digest
            } else {
                let (s, digest) = alphabet_of(common, alphabet)?;
                let same = match (words, lassos) {
                    (Some(w), None) => equivalent(&word_of(&s, &w[0])?, &word_of(&s, &w[1])?, &s)?,
                    (None, Some(l)) => {
                        lasso_equivalent(&parse_lasso(&s, &l[0])?, &parse_lasso(&s, &l[1])?, &s)?
                    }
                    _ => {
                        return Err(CliError::Usage(
                            "give exactly one of --with, --words, --lassos".into(),
                        ))
                    }
                };
                out.verdict = Some(same);
                out.say(if same { "equivalent" } else { "not equivalent" });
                digest
            }
        }
        Command::Closure { max_rounds, .. } => {
            let input = load(common)?;
            let r = trace_closure(
                &automaton(&input)?.dfa()?,
                ClosureOptions::with_rounds(*max_rounds),
            )?;
            out.iterations = Some(r.iterations);
            out.say(format!(
                "stabilized after {} round(s), {} states",
                r.iterations,
                r.automaton.state_count()
            ));
            out.emit(&AutomatonFile::from_dfa(&r.automaton));
            input.digest
        }
        Command::Isuffix { .. } => {
            let input = load(common)?;
            let ki = i_suffix_extension(&automaton(&input)?.dfa()?, ClosureOptions::default())?;
            out.say(format!("K_I: {} states", ki.state_count()));
            out.emit(&AutomatonFile::from_dfa(&ki));
            input.digest
        }
        Command::Ext { negative, .. } => {
            let input = load(common)?;
            let polarity = if *negative {
                Polarity::Negative
            } else {
                Polarity::Positive
            };
            let ext = ext_automaton(&automaton(&input)?.dfa()?, polarity);
            out.say(format!("ext automaton: {} states", ext.state_count()));
            out.emit(&AutomatonFile::from_omega(&ext));
            input.digest
        }
        Command::Lim { .. } => {
            let input = load(common)?;
            let r = lim_automaton(&automaton(&input)?.dfa()?);
            out.say(format!(
                "lim automaton: {} states, limit-stable {}",
                r.automaton.state_count(),
                yes_no(r.limit_stable)
            ));
            out.witness = Some(json!({"limit_stable": r.limit_stable}));
            out.emit(&AutomatonFile::from_omega(&r.automaton));
            input.digest
        }
        Command::CheckTraceClosed { .. } => {
            let input = load(common)?;
            let f = automaton(&input)?;
            let s = f.alphabet().clone();
            match closure_violation(&f.dfa()?) {
                None => {
                    out.verdict = Some(true);
                    out.say("trace-closed");
                }
                Some((u, v)) => {
                    out.verdict = Some(false);
                    out.say(format!(
                        "not trace-closed: {} accepted, {} rejected",
                        s.render(&u),
                        s.render(&v)
                    ));
                    out.witness = Some(json!({"accepted": s.render(&u), "rejected": s.render(&v)}));
                }
            }
            input.digest
        }
        Command::CheckIDiamond { .. } => {
            let input = load(common)?;
            let f = automaton(&input)?;
            let s = f.alphabet().clone();
            match i_diamond_violation(&f.trans) {
                None => {
                    out.verdict = Some(true);
                    out.say("I-diamond");
                }
                Some((q, a, b)) => {
                    out.verdict = Some(false);
                    let (a, b) = (s.symbol(a), s.symbol(b));
                    out.say(format!("not I-diamond: state {q}, letters {a} {b}"));
                    out.witness = Some(json!({"state": q, "a": a.to_string(), "b": b.to_string()}));
                }
            }
            input.digest
        }
        Command::CheckLimitStable { .. } => {
            let input = load(common)?;
            let f = automaton(&input)?;
            let s = f.alphabet().clone();
            let report = is_limit_stable(&f.dfa()?)?;
            out.verdict = Some(report.verdict);
            match &report.witness {
                None => out.say("limit-stable"),
                Some(w) => {
                    let (u, v) = (s.render(&w.visiting), s.render(&w.silent));
                    out.say(format!("not limit-stable: q={} u={u} v={v}", w.state));
                    out.witness = Some(json!({"state": w.state, "u": u, "v": v}));
                }
            }
            out.say(format!(
                "{} states, {} letters, {:.3} ms",
                report.state_count,
                report.letter_count,
                report.elapsed.as_secs_f64() * 1e3
            ));
            input.digest
        }
        Command::DecomposeDwa { .. } => {
            let input = load(common)?;
            let aut = automaton(&input)?.omega()?;
            let d = dwa_decompose(&aut)?;
            let names = |i: usize| {
                let states: Vec<String> = d.components[i].iter().map(usize::to_string).collect();
                format!("ext(K{{{}}})", states.join(","))
            };
            out.say(d.combo.formula.render(&names));
            let compiled = d
                .combo
                .compile(CompileOptions::default())?
                .minimize_weak()?;
            out.witness = Some(json!({
                "formula": d.combo.formula.render(&names),
                "components": d.components,
            }));
            out.emit(&AutomatonFile::from_omega(&compiled));
            input.digest
        }
        Command::Eval { lasso, .. } => {
            let input = load(common)?;
            let accepted = if DacmaFile::sniff(&input.text) {
                let m = dacma(&input)?.dacma;
                m.eval(&parse_lasso(m.alphabet(), lasso)?)?
            } else {
                let aut = automaton(&input)?.omega()?;
                aut.eval_lasso(&parse_lasso(aut.alphabet(), lasso)?)?
            };
            out.verdict = Some(accepted);
            out.say(if accepted { "accept" } else { "reject" });
            input.digest
        }
        Command::DacaGlobal { .. } => {
            let input = load(common)?;
            let file = dacma(&input)?;
            let g = file.dacma.global_automaton(DEFAULT_GLOBAL_CAP)?;
            let dfa = g.dfa(|t| file.finals.iter().any(|f| f.as_slice() == t));
            out.say(format!("global automaton: {} states", dfa.state_count()));
            out.witness = Some(json!({"tuples": g.states}));
            out.emit(&AutomatonFile::from_dfa(&dfa));
            input.digest
        }
        Command::DacmaDecompose { lasso, .. } => {
            let input = load(common)?;
            let m = dacma(&input)?.dacma;
            let combo = m.decompose()?;
            let s = m.alphabet().clone();
            let mut names = Vec::new();
            for a in 0..s.len() {
                for q in 0..m.local_sizes()[a] {
                    names.push(format!("A[{}={q}]", s.symbol(a)));
                }
            }
            let rendered = combo.formula.render(&|i| names[i].clone());
            out.say(rendered.clone());
            out.witness = Some(json!({"formula": rendered}));
            if let Some(text) = lasso {
                let l = parse_lasso(&s, text)?;
                let (direct, via) = (m.eval(&l)?, combo.eval_lasso(&l)?);
                out.say(format!("{text}: dacma {}, decomposition {}", direct, via));
                out.verdict = Some(direct == via);
            }
            input.digest
        }
        Command::Semigroup { profile, .. } => {
            let input = load(common)?;
            let f = automaton(&input)?;
            let s = f.alphabet().clone();
            if *profile {
                let p = profile_semigroup(&f.omega()?, SEMIGROUP_CAP)?;
                out.say(format!(
                    "profile semigroup: {} elements",
                    p.semigroup.size()
                ));
                let report: Vec<Value> = p
                    .noncommuting
                    .iter()
                    .map(|&(a, b, q)| json!({"a": s.symbol(a).to_string(), "b": s.symbol(b).to_string(), "state": q}))
                    .collect();
                for &(a, b, q) in &p.noncommuting {
                    out.say(format!(
                        "profiles of {} and {} do not commute at state {q}",
                        s.symbol(a),
                        s.symbol(b)
                    ));
                }
                if p.noncommuting.is_empty() {
                    out.say("profiles of independent letters commute");
                }
                out.witness = Some(json!({"size": p.semigroup.size(), "noncommuting": report}));
            } else {
                let t = transition_semigroup(&f.dfa()?, SEMIGROUP_CAP)?;
                let sg = &t.semigroup;
                out.say(format!("transition semigroup: {} elements", sg.size()));
                for x in 0..sg.size() {
                    out.say(format!(
                        "  {x}: {} {:?}{}{}",
                        s.render(sg.word_of(x)),
                        t.maps[x],
                        if sg.is_idempotent(x) {
                            " idempotent"
                        } else {
                            ""
                        },
                        if t.accepting[x] { " accepting" } else { "" }
                    ));
                }
                out.witness =
                    Some(json!({"size": sg.size(), "maps": t.maps, "accepting": t.accepting}));
            }
            input.digest
        }
        Command::LinkedPairs { lim, .. } => {
            let input = load(common)?;
            let f = automaton(&input)?;
            if *lim {
                let lp = lim_linked_pairs(&f.omega()?, SEMIGROUP_CAP)?;
                let sg = &lp.profiles.semigroup;
                let s = sg.alphabet().clone();
                for (label, pairs) in [("accepted", &lp.accepted), ("rejected", &lp.rejected)] {
                    for &p in pairs.iter() {
                        out.say(format!(
                            "{label} ({}, {})",
                            s.render(sg.word_of(p.s)),
                            s.render(sg.word_of(p.e))
                        ));
                    }
                }
                out.witness = Some(json!({
                    "accepted": lp.accepted.iter().map(|&p| pair_json(sg, p)).collect::<Vec<_>>(),
                    "rejected": lp.rejected.iter().map(|&p| pair_json(sg, p)).collect::<Vec<_>>(),
                }));
            } else {
                let t = transition_semigroup(&f.dfa()?, SEMIGROUP_CAP)?;
                let sg = &t.semigroup;
                let pairs = linked_pairs(sg);
                for &p in &pairs {
                    out.say(format!(
                        "({}, {})",
                        sg.alphabet().render(sg.word_of(p.s)),
                        sg.alphabet().render(sg.word_of(p.e))
                    ));
                }
                out.witness = Some(
                    json!({"pairs": pairs.iter().map(|&p| pair_json(sg, p)).collect::<Vec<_>>()}),
                );
            }
            input.digest
        }
        Command::Pcut { pair, .. } => {
            let input = load(common)?;
            let t = transition_semigroup(&automaton(&input)?.dfa()?, SEMIGROUP_CAP)?;
            let sg = &t.semigroup;
            let s = sg.alphabet().clone();
            let pairs = match pair {
                None => linked_pairs(sg),
                Some(text) => {
                    let parts: Vec<&str> = text.split(',').collect();
                    let num = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| CliError::Usage(format!("bad --pair `{text}`")))
                    };
                    if parts.len() != 2 {
                        return Err(CliError::Usage(format!(
                            "--pair takes `s,e`, found `{text}`"
                        )));
                    }
                    vec![LinkedPair {
                        s: num(parts[0])?,
                        e: num(parts[1])?,
                    }]
                }
            };
            let mut all = true;
            for p in pairs {
                let r = pcut_check(sg, &t.accepting, p)?;
                if let Some((hit, miss)) = &r.witnesses {
                    if all {
                        let mut w = pair_json(sg, p);
                        w["hits"] = json!(s.render(hit));
                        w["misses"] = json!(s.render(miss));
                        out.witness = Some(w);
                    }
                    all = false;
                    out.say(format!(
                        "pair ({}, {}) fails: {} vs {}",
                        p.s,
                        p.e,
                        s.render(hit),
                        s.render(miss)
                    ));
                } else {
                    out.say(format!("pair ({}, {}) passes", p.s, p.e));
                }
            }
            out.verdict = Some(all);
            input.digest
        }
        Command::Oracle {
            lasso,
            bound,
            max_rounds,
            ..
        } => {
            let input = load(common)?;
            let dfa = automaton(&input)?.dfa()?;
            let mut agree = true;
            if let Some(text) = lasso {
                let l = parse_lasso(dfa.alphabet(), text)?;
                let (lim, ext) = (lim_prefix_oracle(&dfa, &l), ext_prefix_oracle(&dfa, &l));
                let lim_eval = OmegaAutomaton::buchi(&dfa).eval_lasso(&l)?;
                let ext_eval = OmegaAutomaton::new(
                    dfa.transitions().clone(),
                    Acceptance::Reach(dfa.final_flags().to_vec()),
                )?
                .eval_lasso(&l)?;
                out.say(format!("lim: oracle {lim}, automaton {lim_eval}"));
                out.say(format!("ext: oracle {ext}, automaton {ext_eval}"));
                agree &= lim == lim_eval && ext == ext_eval;
            }
            if let Some(n) = bound {
                let oracle = bounded_closure_oracle(&dfa, *n)?;
                out.say(format!(
                    "bounded closure up to length {n}: {} words",
                    oracle.words.len()
                ));
                match trace_closure(&dfa, ClosureOptions::with_rounds(*max_rounds)) {
                    Ok(r) => {
                        let words: std::collections::BTreeSet<_> =
                            r.automaton.words_up_to(*n).into_iter().collect();
                        out.say(format!(
                            "saturation agrees: {}",
                            yes_no(words == oracle.words)
                        ));
                        agree &= words == oracle.words;
                    }
                    Err(e) => out.say(format!("saturation did not stabilize: {e}")),
                }
            }
            if lasso.is_none() && bound.is_none() {
                return Err(CliError::Usage(
                    "oracle needs --lasso and/or --bound".into(),
                ));
            }
            out.verdict = Some(agree);
            input.digest
        }
    };
    Ok((out, digest))
}

/// Runs a parsed command line, prints the results and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let common = cli.command.common();
    let name = cli.command.name();
    let result = execute(&cli.command).and_then(|(out, digest)| {
        if let Some(path) = &common.out {
            if let Some(text) = &out.output {
                write(path, text)?;
            }
        }
        if let Some(path) = &common.out_dot {
            if let Some(dot) = &out.dot {
                write(path, dot)?;
            }
        }
        Ok((out, digest))
    });
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok((out, digest)) => {
            let inline = if common.out.is_none() {
                out.output.as_deref()
            } else {
                None
            };
            if common.json {
                let report = Report {
                    command: name,
                    verdict: out.verdict,
                    witness: out.witness.as_ref(),
                    iterations: out.iterations,
                    timing_ms,
                    input_digest: digest,
                    messages: &out.lines,
                    automaton: inline,
                    error: None,
                };
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                ));
            } else {
                for line in &out.lines {
                    emit(&format!("{line}\n"));
                }
                if let Some(text) = inline {
                    emit(text);
                }
            }
            match out.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.case());
            if common.json {
                let report = Report {
                    command: name,
                    verdict: None,
                    witness: None,
                    iterations: None,
                    timing_ms,
                    input_digest: String::new(),
                    messages: &[],
                    automaton: None,
                    error: Some(e.case()),
                };
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                ));
            }
            2
        }
    }
}

/// Writes to standard output, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}
