//! Command-line front end and HTTP session service.

use std::path::{Path, PathBuf};

use bangbox::bangbox::GraphPattern;
use bangbox::derive::Derivation;
use bangbox::io::{
    from_json, plain_style, to_dot, to_json, zx_style, DerivationDocument, GraphDocument, NormalizeDocument,
    RuleDocument, TheoryBundle,
};
use bangbox::rewrite::{normalize, prepare_rule, rewrite_matches, rewrite_unchecked, Policy};
use bangbox::rule::{validate_rule, LabelTheory, Plain, Rule, Theory};
use bangbox::zx::{NodeLabel, Zx};
use bangbox::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub mod server;

#[derive(Parser, Debug)]
#[command(name = "bangbox", version, about = "Rewriting graph patterns with !-boxes")]
pub struct Cli {
    /// Directory holding the shipped corpus.
    #[arg(long, env = "BANGBOX_CORPUS", global = true)]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Theory bundle: a path, or a name looked up in the corpus.
    #[arg(long, default_value = "zx")]
    pub theory: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check documents: schema, references and rule validity.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        rule: Option<String>,
        /// Also check every rule of the theory.
        #[arg(long)]
        check_theory: bool,
    },
    /// Print every match of a rule in a graph.
    Match {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Direction::Both)]
        direction: Direction,
    },
    /// Rewrite a graph with a rule at one match.
    Rewrite {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Use the rule right to left.
        #[arg(long)]
        reverse: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rewrite until no rule applies or the step budget runs out.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::Size)]
        policy: PolicyArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a derivation and print its final conclusion.
    Derive {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        derivation: String,
    },
    /// Graphviz text for a graph, or both sides of a rule.
    ExportDot {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        rule: Option<String>,
    },
    /// Run the HTTP session service.
    Serve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Reverse,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Size,
    None,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Policy {
        match p {
            PolicyArg::Size => Policy::Size,
            PolicyArg::None => Policy::None,
        }
    }
}

/// Exit status and captured streams of one command.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Failure with an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// The corpus used when neither the flag nor the variable is set.
pub fn default_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Resolves a name against the filesystem, then the corpus with each
/// suffix in turn.
pub fn resolve(corpus: &Path, name: &str, suffixes: &[&str]) -> Option<PathBuf> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Some(direct);
    }
    std::iter::once("")
        .chain(suffixes.iter().copied())
        .map(|s| corpus.join(format!("{name}{s}")))
        .find(|p| p.is_file())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn read_named(corpus: &Path, name: &str, suffixes: &[&str], what: &str) -> CliResult<String> {
    let p = resolve(corpus, name, suffixes).ok_or_else(|| fail(2, format!("{what} {name} not found")))?;
    read(&p)
}

/// A theory bundle with its label model.
pub enum LoadedTheory {
    Zx(Theory<Zx>),
    Plain(Theory<Plain<String>>),
}

#[derive(serde::Deserialize)]
struct ModelProbe {
    model: String,
}

pub fn load_theory(corpus: &Path, name: &str) -> CliResult<LoadedTheory> {
    let text = match resolve(corpus, name, &[".theory.json", ".json"]) {
        Some(p) => read(&p)?,
        None => {
            return match name {
                "zx" => Ok(LoadedTheory::Zx(bangbox::zx::axioms::theory()?)),
                "plain" => Ok(LoadedTheory::Plain(bangbox::corpus::plain_theory()?)),
                _ => Err(fail(2, format!("theory {name} not found"))),
            }
        }
    };
    let probe: ModelProbe = from_json(&text)?;
    match probe.model.as_str() {
        "zx" => Ok(LoadedTheory::Zx(from_json::<TheoryBundle<NodeLabel>>(&text)?.to_theory(Zx)?)),
        "plain" => Ok(LoadedTheory::Plain(
            from_json::<TheoryBundle<String>>(&text)?.to_theory(Plain::new())?,
        )),
        m => Err(fail(2, format!("unknown label model {m}"))),
    }
}

/// What the commands need from a label model.
pub trait Model: LabelTheory<Label: Serialize + DeserializeOwned + Send + Sync, Subst: Serialize + Send>
    + Clone
    + Send
    + Sync
    + 'static
{
    fn style(l: &Self::Label) -> (String, &'static str);
}

impl Model for Zx {
    fn style(l: &NodeLabel) -> (String, &'static str) {
        zx_style(l)
    }
}

impl Model for Plain<String> {
    fn style(l: &String) -> (String, &'static str) {
        plain_style(l)
    }
}

fn load_graph<T: Model>(corpus: &Path, name: &str) -> CliResult<GraphPattern<T::Label>> {
    let text = read_named(corpus, name, &[".json", ".graph.json"], "graph")?;
    let doc: GraphDocument<T::Label> = from_json(&text)?;
    Ok(doc.to_pattern()?)
}

/// A rule file, a rule of the theory, or a rule file in the corpus.
fn load_rule<T: Model>(corpus: &Path, theory: &Theory<T>, name: &str) -> CliResult<Rule<T::Label>> {
    if !Path::new(name).is_file() {
        if let Some(r) = theory.rule(name) {
            return Ok(r.clone());
        }
    }
    let text = read_named(corpus, name, &[".rule.json", ".json"], "rule")?;
    Ok(from_json::<RuleDocument<T::Label>>(&text)?.to_rule()?)
}

fn check_valid<L: bangbox::label::VertexLabel>(r: &Rule<L>) -> CliResult<()> {
    let problems = validate_rule(r);
    if problems.is_empty() {
        Ok(())
    } else {
        Err(fail(2, format!("rule {} is invalid: {}", r.name, problems.join("; "))))
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MatchEntry<'a, S> {
    index: usize,
    #[serde(flatten)]
    m: &'a bangbox::rewrite::PatternMatch<S>,
}

fn match_list<T: Model>(model: &T, rule: &Rule<T::Label>, g: &GraphPattern<T::Label>) -> serde_json::Value {
    let ms = rewrite_matches(model, &prepare_rule::<T>(rule, g), g);
    let entries: Vec<MatchEntry<'_, T::Subst>> = ms.iter().enumerate().map(|(index, m)| MatchEntry { index, m }).collect();
    serde_json::to_value(entries).expect("matches serialise")
}

fn run_model<T: Model>(theory: Theory<T>, corpus: &Path, command: Command) -> CliResult<Outcome> {
    match command {
        Command::Validate {
            graph,
            rule,
            check_theory,
            ..
        } => {
            let mut out = String::new();
            if let Some(g) = graph {
                let p = load_graph::<T>(corpus, &g)?;
                out += &format!(
                    "graph {g}: ok ({} vertices, {} edges, {} boxes)\n",
                    p.graph().vertex_count(),
                    p.graph().edge_count(),
                    p.boxes().len()
                );
            }
            if let Some(r) = rule {
                let rule = load_rule(corpus, &theory, &r)?;
                check_valid(&rule)?;
                out += &format!("rule {}: ok\n", rule.name);
            }
            if check_theory || out.is_empty() {
                for r in theory.rules() {
                    check_valid(r)?;
                }
                out += &format!("theory {}: {} rules ok\n", theory.name, theory.rules().count());
            }
            Ok(Outcome::ok(out))
        }
        Command::Match {
            rule,
            graph,
            direction,
            ..
        } => {
            let r = load_rule(corpus, &theory, &rule)?;
            check_valid(&r)?;
            let g = load_graph::<T>(corpus, &graph)?;
            let mut body = serde_json::Map::new();
            body.insert("rule".into(), r.name.clone().into());
            body.insert("graphHash".into(), bangbox::io::pattern_hash(&g).into());
            let mut total = 0;
            if direction != Direction::Reverse {
                let v = match_list(&theory.model, &r, &g);
                total += v.as_array().map_or(0, Vec::len);
                body.insert("forward".into(), v);
            }
            if direction != Direction::Forward {
                let v = match_list(&theory.model, &r.sym(), &g);
                total += v.as_array().map_or(0, Vec::len);
                body.insert("reverse".into(), v);
            }
            let text = to_json(&body);
            if total == 0 {
                Ok(Outcome {
                    code: 1,
                    stdout: text,
                    stderr: format!("no match of {} in {graph}\n", r.name),
                })
            } else {
                Ok(Outcome::ok(text))
            }
        }
        Command::Rewrite {
            rule,
            graph,
            index,
            reverse,
            format,
            ..
        } => {
            let r = load_rule(corpus, &theory, &rule)?;
            check_valid(&r)?;
            let r = if reverse { r.sym() } else { r };
            let g = load_graph::<T>(corpus, &graph)?;
            let r = prepare_rule::<T>(&r, &g);
            let ms = rewrite_matches(&theory.model, &r, &g);
            let Some(m) = ms.get(index) else {
                return Ok(Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("{} has {} matches in {graph}, no index {index}\n", r.name, ms.len()),
                });
            };
            let next = rewrite_unchecked(&theory.model, &r, &g, m)?;
            Ok(Outcome::ok(render::<T>(&next, format)))
        }
        Command::Normalize {
            graph,
            max_steps,
            policy,
            format,
            ..
        } => {
            let g = load_graph::<T>(corpus, &graph)?;
            let rules: Vec<Rule<T::Label>> = theory.rules().cloned().collect();
            let n = normalize(&theory.model, &rules, &g, max_steps, policy.into())?;
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&NormalizeDocument::from_result(&n)),
                Format::Dot => render::<T>(&n.graph, Format::Dot),
            }))
        }
        Command::Derive { derivation, .. } => {
            let text = read_named(corpus, &derivation, &[".derivation.json", ".json"], "derivation")?;
            let doc: DerivationDocument<T::Label> = from_json(&text)?;
            let d: Derivation<T::Label> = doc.to_derivation()?;
            d.check(&theory)?;
            let last = d.steps.last().ok_or_else(|| fail(2, "empty derivation"))?;
            Ok(Outcome::ok(to_json(&RuleDocument::from_rule(&last.conclusion))))
        }
        Command::ExportDot { graph, rule, .. } => {
            let mut out = String::new();
            if let Some(g) = graph {
                out += &render::<T>(&load_graph::<T>(corpus, &g)?, Format::Dot);
            }
            if let Some(r) = rule {
                let r = load_rule(corpus, &theory, &r)?;
                out += &render::<T>(&r.lhs, Format::Dot);
                out += &render::<T>(&r.rhs, Format::Dot);
            }
            if out.is_empty() {
                return Err(fail(2, "export-dot needs --graph or --rule"));
            }
            Ok(Outcome::ok(out))
        }
        Command::Serve { .. } => Err(fail(2, "serve is handled by the binary")),
    }
}

fn render<T: Model>(g: &GraphPattern<T::Label>, format: Format) -> String {
    match format {
        Format::Json => GraphDocument::from_pattern(g).to_json(),
        Format::Dot => to_dot(g, T::style),
    }
}

fn common(c: &Command) -> &Common {
    match c {
        Command::Validate { common, .. }
        | Command::Match { common, .. }
        | Command::Rewrite { common, .. }
        | Command::Normalize { common, .. }
        | Command::Derive { common, .. }
        | Command::ExportDot { common, .. }
        | Command::Serve { common, .. } => common,
    }
}

/// Runs every subcommand except `serve`.
pub fn run(cli: Cli) -> Outcome {
    let corpus = cli.corpus.clone().unwrap_or_else(default_corpus);
    let result = load_theory(&corpus, &common(&cli.command).theory).and_then(|t| match t {
        LoadedTheory::Zx(t) => run_model(t, &corpus, cli.command),
        LoadedTheory::Plain(t) => run_model(t, &corpus, cli.command),
    });
    match result {
        Ok(o) => o,
        Err(f) if f.code == 2 => Outcome::input_error(f.message),
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("{}\n", f.message),
        },
    }
}

