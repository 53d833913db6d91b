//! Line-oriented text formats for automata and DACMAs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use omtrace::dacma::MullerEntry;
use omtrace::{
    Acceptance, Dacma, DependenceAlphabet, Dfa, LassoWord, OmegaAutomaton, State, Transitions,
};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Reach,
    Buchi,
    Weak,
    Muller,
}

impl Kind {
    fn keyword(self) -> &'static str {
        match self {
            Kind::Reach => "e",
            Kind::Buchi => "buchi",
            Kind::Weak => "weak",
            Kind::Muller => "muller",
        }
    }
}

/// A parsed automaton file: a transition structure with final states and an
/// optional ω-acceptance condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonFile {
    pub trans: Transitions,
    pub finals: Vec<bool>,
    pub kind: Option<Kind>,
    pub muller: Vec<BTreeSet<State>>,
}

fn err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number(line: usize, field: &str) -> Result<usize, CliError> {
    field
        .parse()
        .map_err(|_| err(line, format!("expected a number, found `{field}`")))
}

fn letter(line: usize, field: &str) -> Result<char, CliError> {
    let mut chars = field.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(err(
            line,
            format!("expected a single-character letter, found `{field}`"),
        )),
    }
}

fn alphabet(
    letters: &Option<Vec<char>>,
    pairs: &[(char, char)],
    line: usize,
) -> Result<DependenceAlphabet, CliError> {
    let letters = letters
        .as_ref()
        .ok_or_else(|| err(line, "missing `alphabet` line"))?;
    Ok(DependenceAlphabet::new(letters, pairs)?)
}

impl AutomatonFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut letters: Option<Vec<char>> = None;
        let mut pairs = Vec::new();
        let mut states: Option<usize> = None;
        let mut initial: Option<usize> = None;
        let mut finals: Vec<usize> = Vec::new();
        let mut edges: Vec<(usize, usize, char, usize)> = Vec::new();
        let mut kind = None;
        let mut muller: Vec<(usize, BTreeSet<usize>)> = Vec::new();
        let mut last = 0;
        for (line, f) in records(text) {
            last = line;
            let args = &f[1..];
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(err(line, format!("`{}` takes {n} argument(s)", f[0])))
                }
            };
            match f[0] {
                "alphabet" => {
                    if letters.is_some() {
                        return Err(err(line, "duplicate `alphabet` line"));
                    }
                    letters = Some(
                        args.iter()
                            .map(|x| letter(line, x))
                            .collect::<Result<_, _>>()?,
                    );
                }
                "independent" => {
                    arity(2)?;
                    pairs.push((letter(line, args[0])?, letter(line, args[1])?));
                }
                "states" => {
                    arity(1)?;
                    states = Some(number(line, args[0])?);
                }
                "initial" => {
                    arity(1)?;
                    initial = Some(number(line, args[0])?);
                }
                "final" => {
                    for x in args {
                        finals.push(number(line, x)?);
                    }
                }
                "trans" => {
                    arity(3)?;
                    edges.push((
                        line,
                        number(line, args[0])?,
                        letter(line, args[1])?,
                        number(line, args[2])?,
                    ));
                }
                "acceptance" => {
                    arity(1)?;
                    kind = Some(match args[0] {
                        "e" => Kind::Reach,
                        "buchi" => Kind::Buchi,
                        "weak" => Kind::Weak,
                        "muller" => Kind::Muller,
                        other => return Err(err(line, format!("unknown acceptance `{other}`"))),
                    });
                }
                "muller" => {
                    let set = args
                        .iter()
                        .map(|x| number(line, x))
                        .collect::<Result<_, _>>()?;
                    muller.push((line, set));
                }
                other => return Err(err(line, format!("unknown key `{other}`"))),
            }
        }
        let alphabet = alphabet(&letters, &pairs, last)?;
        let n = states.ok_or_else(|| err(last, "missing `states` line"))?;
        let initial = initial.ok_or_else(|| err(last, "missing `initial` line"))?;
        let k = alphabet.len();
        let mut delta = vec![None; n * k];
        for (line, p, c, q) in edges {
            let a = alphabet
                .index_of(c)
                .map_err(|_| err(line, format!("letter `{c}` is not in the alphabet")))?;
            if p >= n || q >= n {
                return Err(err(line, format!("state out of range (states {n})")));
            }
            if delta[p * k + a].replace(q).is_some() {
                return Err(err(line, format!("duplicate transition from {p} on `{c}`")));
            }
        }
        if let Some(i) = delta.iter().position(Option::is_none) {
            return Err(err(
                last,
                format!(
                    "transitions are not total: {} has no `{}` move",
                    i / k,
                    alphabet.symbol(i % k)
                ),
            ));
        }
        let trans = Transitions::new(
            alphabet,
            n,
            initial,
            delta.into_iter().map(Option::unwrap).collect(),
        )?;
        let mut flags = vec![false; n];
        for q in finals {
            *flags
                .get_mut(q)
                .ok_or_else(|| err(last, format!("final state {q} out of range")))? = true;
        }
        if kind != Some(Kind::Muller) && !muller.is_empty() {
            return Err(err(
                muller[0].0,
                "`muller` lines require `acceptance muller`",
            ));
        }
        if let Some(&(line, _)) = muller.iter().find(|(_, s)| s.iter().any(|&q| q >= n)) {
            return Err(err(line, "Muller set mentions an unknown state"));
        }
        let file = Self {
            trans,
            finals: flags,
            kind,
            muller: muller.into_iter().map(|(_, s)| s).collect(),
        };
        if kind.is_some() {
            file.omega()?;
        }
        Ok(file)
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        Self {
            trans: dfa.transitions().clone(),
            finals: dfa.final_flags().to_vec(),
            kind: None,
            muller: vec![],
        }
    }

    pub fn from_omega(aut: &OmegaAutomaton) -> Self {
        let n = aut.state_count();
        let (kind, finals, muller) = match aut.acceptance() {
            Acceptance::Reach(f) => (Kind::Reach, f.clone(), vec![]),
            Acceptance::Buchi(f) => (Kind::Buchi, f.clone(), vec![]),
            Acceptance::Weak(f) => (Kind::Weak, f.clone(), vec![]),
            Acceptance::Muller(sets) => (Kind::Muller, vec![false; n], sets.clone()),
        };
        Self {
            trans: aut.transitions().clone(),
            finals,
            kind: Some(kind),
            muller,
        }
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        self.trans.alphabet()
    }

    pub fn dfa(&self) -> Result<Dfa, CliError> {
        Ok(Dfa::from_flags(self.trans.clone(), self.finals.clone())?)
    }

    /// The ω-automaton; files without `acceptance` are read as Büchi.
    pub fn omega(&self) -> Result<OmegaAutomaton, CliError> {
        let acceptance = match self.kind.unwrap_or(Kind::Buchi) {
            Kind::Reach => Acceptance::Reach(self.finals.clone()),
            Kind::Buchi => Acceptance::Buchi(self.finals.clone()),
            Kind::Weak => Acceptance::Weak(self.finals.clone()),
            Kind::Muller => Acceptance::Muller(self.muller.clone()),
        };
        Ok(OmegaAutomaton::new(self.trans.clone(), acceptance)?)
    }

    pub fn serialize(&self) -> String {
        let s = self.alphabet();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "alphabet {}",
            s.letters()
                .iter()
                .map(char::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        for (a, b) in s.independent_pairs() {
            let _ = writeln!(out, "independent {} {}", s.symbol(a), s.symbol(b));
        }
        let _ = writeln!(out, "states {}", self.trans.state_count());
        let _ = writeln!(out, "initial {}", self.trans.initial());
        if self.kind != Some(Kind::Muller) {
            let finals: Vec<String> = (0..self.finals.len())
                .filter(|&q| self.finals[q])
                .map(|q| q.to_string())
                .collect();
            let _ = writeln!(
                out,
                "final{}{}",
                if finals.is_empty() { "" } else { " " },
                finals.join(" ")
            );
        }
        for q in 0..self.trans.state_count() {
            for a in 0..s.len() {
                let _ = writeln!(out, "trans {q} {} {}", s.symbol(a), self.trans.step(q, a));
            }
        }
        if let Some(kind) = self.kind {
            let _ = writeln!(out, "acceptance {}", kind.keyword());
        }
        for set in &self.muller {
            let items: Vec<String> = set.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "muller {}", items.join(" "));
        }
        out
    }

    /// Graphviz rendering of the transition graph.
    pub fn dot(&self) -> String {
        let s = self.alphabet();
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.trans.state_count() {
            let shape = if self.finals[q] {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> {};", self.trans.initial());
        for q in 0..self.trans.state_count() {
            for a in 0..s.len() {
                let _ = writeln!(
                    out,
                    "  {q} -> {} [label=\"{}\"];",
                    self.trans.step(q, a),
                    s.symbol(a)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A DACMA file, with optional global final tuples for DACA use.
#[derive(Clone, Debug)]
pub struct DacmaFile {
    pub dacma: Dacma,
    pub finals: Vec<Vec<usize>>,
}

fn muller_entry(line: usize, args: &[&str], k: usize) -> Result<MullerEntry, CliError> {
    let joined = args.join(" ");
    let parts: Vec<&str> = joined.split('|').collect();
    if parts.len() != k {
        return Err(err(
            line,
            format!("Muller entry needs {k} `|`-separated sets"),
        ));
    }
    parts
        .iter()
        .map(|part| {
            part.split_whitespace()
                .filter(|x| *x != "-")
                .map(|x| number(line, x))
                .collect::<Result<BTreeSet<_>, _>>()
        })
        .collect()
}

impl DacmaFile {
    /// Whether the text looks like a DACMA file rather than an automaton.
    pub fn sniff(text: &str) -> bool {
        records(text).any(|(_, f)| f[0] == "local")
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut letters: Option<Vec<char>> = None;
        let mut pairs = Vec::new();
        let mut sizes: Vec<(usize, char, usize)> = Vec::new();
        let mut initial: Option<(usize, Vec<usize>)> = None;
        let mut deltas: Vec<(usize, char, Vec<usize>, usize)> = Vec::new();
        let mut table: Vec<(usize, Vec<String>)> = Vec::new();
        let mut finals: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut last = 0;
        for (line, f) in records(text) {
            last = line;
            let args = &f[1..];
            match f[0] {
                "alphabet" => {
                    letters = Some(
                        args.iter()
                            .map(|x| letter(line, x))
                            .collect::<Result<_, _>>()?,
                    )
                }
                "independent" if args.len() == 2 => {
                    pairs.push((letter(line, args[0])?, letter(line, args[1])?))
                }
                "local" if args.len() == 2 => {
                    sizes.push((line, letter(line, args[0])?, number(line, args[1])?))
                }
                "initial" => {
                    initial = Some((
                        line,
                        args.iter()
                            .map(|x| number(line, x))
                            .collect::<Result<_, _>>()?,
                    ))
                }
                "delta" => {
                    let arrow = args
                        .iter()
                        .position(|x| *x == "->")
                        .ok_or_else(|| err(line, "`delta` needs `->`"))?;
                    if arrow == 0 || arrow + 2 != args.len() {
                        return Err(err(line, "expected `delta <letter> <view...> -> <state>`"));
                    }
                    let view = args[1..arrow]
                        .iter()
                        .map(|x| number(line, x))
                        .collect::<Result<_, _>>()?;
                    deltas.push((
                        line,
                        letter(line, args[0])?,
                        view,
                        number(line, args[arrow + 1])?,
                    ));
                }
                "muller" => table.push((line, args.iter().map(|x| x.to_string()).collect())),
                "final" => finals.push((
                    line,
                    args.iter()
                        .map(|x| number(line, x))
                        .collect::<Result<_, _>>()?,
                )),
                "independent" | "local" => {
                    return Err(err(line, format!("`{}` takes 2 arguments", f[0])))
                }
                other => return Err(err(line, format!("unknown key `{other}`"))),
            }
        }
        let s = alphabet(&letters, &pairs, last)?;
        let k = s.len();
        let mut local = vec![None; k];
        for (line, c, n) in sizes {
            let a = s
                .index_of(c)
                .map_err(|_| err(line, format!("letter `{c}` is not in the alphabet")))?;
            if local[a].replace(n).is_some() {
                return Err(err(line, format!("duplicate `local` for `{c}`")));
            }
        }
        let sizes: Vec<usize> = local
            .iter()
            .enumerate()
            .map(|(a, n)| n.ok_or_else(|| err(last, format!("missing `local {}`", s.symbol(a)))))
            .collect::<Result<_, _>>()?;
        let (init_line, initial) = initial.ok_or_else(|| err(last, "missing `initial` line"))?;
        if initial.len() != k {
            return Err(err(init_line, format!("initial tuple needs {k} entries")));
        }
        let mut tables: Vec<Vec<Option<usize>>> = (0..k)
            .map(|a| vec![None; s.dependent_on(a).iter().map(|&b| sizes[b]).product()])
            .collect();
        for (line, c, view, q) in deltas {
            let a = s
                .index_of(c)
                .map_err(|_| err(line, format!("letter `{c}` is not in the alphabet")))?;
            let reads = s.dependent_on(a);
            if view.len() != reads.len() || view.iter().zip(&reads).any(|(&v, &b)| v >= sizes[b]) {
                return Err(err(
                    line,
                    format!(
                        "view of `{c}` must list a state for each of {}",
                        s.render(&reads)
                    ),
                ));
            }
            let code = reads
                .iter()
                .zip(&view)
                .fold(0, |acc, (&b, &v)| acc * sizes[b] + v);
            if tables[a][code].replace(q).is_some() {
                return Err(err(line, "duplicate `delta` entry"));
            }
        }
        let mut deltas = Vec::with_capacity(k);
        for (a, row) in tables.into_iter().enumerate() {
            if row.iter().any(Option::is_none) {
                return Err(err(
                    last,
                    format!("local map of `{}` is not total", s.symbol(a)),
                ));
            }
            deltas.push(row.into_iter().map(Option::unwrap).collect());
        }
        let table = table
            .into_iter()
            .map(|(line, args)| {
                muller_entry(
                    line,
                    &args.iter().map(String::as_str).collect::<Vec<_>>(),
                    k,
                )
            })
            .collect::<Result<_, _>>()?;
        for (line, t) in &finals {
            if t.len() != k || t.iter().zip(&sizes).any(|(&q, &n)| q >= n) {
                return Err(err(
                    *line,
                    "final tuple must list a valid local state per letter",
                ));
            }
        }
        let dacma = Dacma::new(&s, &sizes, deltas, &initial, table)?;
        Ok(Self {
            dacma,
            finals: finals.into_iter().map(|(_, t)| t).collect(),
        })
    }

    pub fn serialize(&self) -> String {
        let m = &self.dacma;
        let s = m.alphabet();
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(
            out,
            "alphabet {}",
            join(&mut s.letters().iter().map(char::to_string))
        );
        for (a, b) in s.independent_pairs() {
            let _ = writeln!(out, "independent {} {}", s.symbol(a), s.symbol(b));
        }
        for a in 0..s.len() {
            let _ = writeln!(out, "local {} {}", s.symbol(a), m.local_sizes()[a]);
        }
        let _ = writeln!(
            out,
            "initial {}",
            join(&mut m.initial().iter().map(usize::to_string))
        );
        for a in 0..s.len() {
            let reads = s.dependent_on(a);
            let domain: usize = reads.iter().map(|&b| m.local_sizes()[b]).product();
            for code in 0..domain {
                let mut view = vec![0; reads.len()];
                let mut rest = code;
                for (i, &b) in reads.iter().enumerate().rev() {
                    view[i] = rest % m.local_sizes()[b];
                    rest /= m.local_sizes()[b];
                }
                let _ = writeln!(
                    out,
                    "delta {} {} -> {}",
                    s.symbol(a),
                    join(&mut view.iter().map(usize::to_string)),
                    m.local(a, &view)
                );
            }
        }
        for entry in m.table() {
            let sets: Vec<String> = entry
                .iter()
                .map(|set| {
                    if set.is_empty() {
                        "-".into()
                    } else {
                        join(&mut set.iter().map(usize::to_string))
                    }
                })
                .collect();
            let _ = writeln!(out, "muller {}", sets.join(" | "));
        }
        for t in &self.finals {
            let _ = writeln!(out, "final {}", join(&mut t.iter().map(usize::to_string)));
        }
        out
    }
}

/// `<u>;<v>` with `v` nonempty.
pub fn parse_lasso(alphabet: &DependenceAlphabet, text: &str) -> Result<LassoWord, CliError> {
    LassoWord::parse(alphabet, text.trim()).map_err(|e| CliError::Lasso(format!("`{text}`: {e}")))
}
