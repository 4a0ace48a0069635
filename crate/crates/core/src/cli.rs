//! Command-line front end. [`run`] parses arguments and returns the exit code
//! and report instead of printing, so it can be driven from tests.
//!
//! Exit codes: 0 holds / accepted / success, 1 fails / rejected / no proof,
//! 2 usage or input error, 3 inconclusive.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::calculus::{
    derivation_json, parse_derivation_file, prove_setfmla_bounded, prove_setset_analytic, rule_sound, star_universe,
    tree_to_dot, verify_linear, verify_tree, write_linear, write_tree, Derivation, DerivationFile, HSystem,
    Kind, SearchConfig, SearchOutcome, Statement, Universe,
};
use crate::corpus::{self, SYSTEM_IDS};
use crate::family;
use crate::formula::{parse_formula, parse_list, Formula, Signature};
use crate::semantics::{check_monadicity, consequence_holds, evaluate, read_matrix, Matrix, Valuation};
use crate::transforms::{
    dualize_system, lift_rule, or_convert_system, translate_bk, FreshNamer, LiftMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutcome {
    pub code: i32,
    /// Human-readable report.
    pub report: String,
    /// Machine-readable report, when the command has one.
    pub json: Option<Value>,
}

impl CommandOutcome {
    fn new(code: i32, report: String, json: Value) -> Self {
        CommandOutcome { code, report, json: Some(json) }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        CommandOutcome { code: EXIT_USAGE, json: Some(json!({ "error": msg })), report: msg }
    }

    /// What the binary prints: JSON when requested and available, text otherwise.
    pub fn rendered(&self, as_json: bool) -> String {
        match (&self.json, as_json) {
            (Some(v), true) => serde_json::to_string_pretty(v).expect("serializable") + "\n",
            _ => {
                let mut s = self.report.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "wkh", about = "Hilbert-style systems for the weak Kleene logics PWK and BK")]
pub struct Cli {
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its canonical form.
    Parse(ParseArgs),
    /// Evaluate a formula under a valuation.
    Eval(EvalArgs),
    /// Decide a Set-Set consequence in a matrix.
    Entails(EntailsArgs),
    /// Check the rules of a system against a matrix.
    RuleSound(RuleSoundArgs),
    /// Find separators for every pair of truth values.
    Monadic(MonadicArgs),
    /// Search for a derivation.
    Prove(ProveArgs),
    /// Check a derivation file.
    Verify(VerifyArgs),
    /// System-level transformations.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Translate an R_BK_star tree derivation into an H_BK linear one.
    TranslateBk(TranslateArgs),
    /// Compare proof search with the matrix over a family of statements.
    Compare(CompareArgs),
    /// Inspect the shipped systems.
    #[command(subcommand)]
    Systems(SystemsCommand),
    /// Corpus operations.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    pub formula: String,
    /// Signature: and-or-not, imp-not or and-or-imp-not.
    #[arg(long, default_value = "and-or-not")]
    pub signature: String,
    /// Keep `->` as a connective instead of reading it as `~a | b`.
    #[arg(long)]
    pub no_expand: bool,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub formula: String,
    /// Matrix id or matrix file.
    #[arg(long, default_value = "WK")]
    pub matrix: String,
    /// Assignments such as `p=u, q=t`.
    #[arg(long, default_value = "")]
    pub valuation: String,
}

#[derive(Args, Debug)]
pub struct EntailsArgs {
    #[arg(long)]
    pub matrix: String,
    /// Comma-separated antecedent; empty for none.
    #[arg(long, default_value = "")]
    pub lhs: String,
    /// Comma-separated succedent; empty for none.
    #[arg(long, default_value = "")]
    pub rhs: String,
}

#[derive(Args, Debug)]
pub struct RuleSoundArgs {
    /// System id or system file.
    #[arg(long)]
    pub system: String,
    /// Matrix id or file; defaults to the matrix the system is declared for.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Only check this rule.
    #[arg(long)]
    pub rule: Option<String>,
}

#[derive(Args, Debug)]
pub struct MonadicArgs {
    #[arg(long)]
    pub matrix: String,
    /// One-variable formulas, comma-separated.
    #[arg(long, default_value = "x, ~x")]
    pub theta: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProofFormat {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long, default_value = "")]
    pub lhs: String,
    #[arg(long, default_value = "")]
    pub rhs: String,
    /// Analytic search (the only mode for Set-Set systems; accepted for clarity).
    #[arg(long)]
    pub analytic: bool,
    #[arg(long, default_value = "x, ~x")]
    pub theta: String,
    #[arg(long, default_value_t = 200_000)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 20_000)]
    pub max_steps: usize,
    /// Explicit search universe, comma-separated.
    #[arg(long)]
    pub universe: Option<String>,
    #[arg(long, value_enum, default_value_t = ProofFormat::Text)]
    pub format: ProofFormat,
    /// Also write the proof to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// System id or file; must agree with the file header when it names a shipped system.
    #[arg(long)]
    pub system: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TransformCommand {
    /// Swap antecedents and succedents and exchange `&` and `|`.
    Dualize(SystemArg),
    /// Convert a Set-Set system into a Set-Fmla one.
    OrConvert(SystemArg),
    /// Lift one rule, or every rule, of a Set-Fmla system.
    Lift(LiftArgs),
}

#[derive(Args, Debug)]
pub struct SystemArg {
    #[arg(long)]
    pub system: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftModeArg {
    Or,
    Imp,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub rule: Option<String>,
    #[arg(long, value_enum, default_value_t = LiftModeArg::Or)]
    pub mode: LiftModeArg,
}

#[derive(Args, Debug)]
pub struct TranslateArgs {
    /// R_BK_star tree derivation file.
    pub file: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub matrix: String,
    /// Number of variables, taken from p, q, r, s.
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Maximum size of each side.
    #[arg(long, default_value_t = 2)]
    pub sides: usize,
    /// Extra statements involving formulas of depth `depth + 1`, sampled with `--seed`.
    #[arg(long, default_value_t = 0)]
    pub sample: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200_000)]
    pub max_nodes: usize,
    /// List every disagreement instead of the first ten.
    #[arg(long)]
    pub all: bool,
}

#[derive(Subcommand, Debug)]
pub enum SystemsCommand {
    List,
    Show { id: String },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    /// Write the corpus files under DIR/{matrices,systems,derivations}.
    Export { dir: PathBuf },
}

/// Parses `argv` (without the program name) and runs the command.
pub fn run<I, S>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = std::iter::once("wkh".to_string()).chain(argv.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return CommandOutcome { code, report: e.render().to_string(), json: None };
        }
    };
    dispatch(cli.command).unwrap_or_else(CommandOutcome::usage)
}

type Outcome = Result<CommandOutcome, String>;

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Parse(a) => cmd_parse(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Entails(a) => cmd_entails(a),
        Command::RuleSound(a) => cmd_rule_sound(a),
        Command::Monadic(a) => cmd_monadic(a),
        Command::Prove(a) => cmd_prove(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Transform(t) => cmd_transform(t),
        Command::TranslateBk(a) => cmd_translate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Systems(s) => cmd_systems(s),
        Command::Corpus(CorpusCommand::Export { dir }) => cmd_export(&dir),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// A shipped matrix by id, or a matrix file.
fn resolve_matrix(spec: &str) -> Result<Matrix, String> {
    match corpus::get_matrix(spec) {
        Ok(m) => Ok(m),
        Err(_) if Path::new(spec).is_file() => read_matrix(&read_file(Path::new(spec))?).map_err(|e| e.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

/// A shipped system by id, or a system file.
fn resolve_system(spec: &str) -> Result<Arc<HSystem>, String> {
    if SYSTEM_IDS.contains(&spec) {
        return corpus::get_system(spec).map_err(|e| e.to_string());
    }
    if Path::new(spec).is_file() {
        return HSystem::from_text(&read_file(Path::new(spec))?).map(Arc::new).map_err(|e| e.to_string());
    }
    Err(format!("unknown system {spec}; expected one of {} or a system file", SYSTEM_IDS.join(", ")))
}

fn formulas(text: &str, sig: &Signature) -> Result<Vec<Formula>, String> {
    parse_list(text, sig).map_err(|e| format!("{text:?}: {e}"))
}

/// One-variable formulas for Θ, written with any variable names.
fn theta_list(text: &str) -> Result<Vec<Formula>, String> {
    formulas(text, &Signature::and_or_not())
}

fn signature_of_matrix(m: &Matrix) -> Signature {
    Signature::new(m.algebra.connectives())
}

fn cmd_parse(a: ParseArgs) -> Outcome {
    let sig = Signature::from_name(&a.signature).ok_or_else(|| format!("unknown signature {}", a.signature))?;
    let expand = !a.no_expand && sig.default_expand_arrow();
    let f = parse_formula(&a.formula, &sig, expand).map_err(|e| e.to_string())?;
    let vars: Vec<String> = f.vars().iter().map(|v| v.to_string()).collect();
    let report = format!("{f}\nsize {}, depth {}, variables {}", f.size(), f.depth(), vars.join(" "));
    Ok(CommandOutcome::new(EXIT_OK, report, json!({ "formula": f.to_string(), "size": f.size(), "depth": f.depth(), "vars": vars })))
}

fn parse_valuation(text: &str, m: &Matrix) -> Result<Valuation, String> {
    let mut v = Valuation::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("expected `var=value`, got {part:?}"))?;
        let x = m.algebra.value(value.trim()).ok_or_else(|| format!("{} is not a value of {}", value.trim(), m.name))?;
        v.set(crate::formula::Var::new(name.trim()), x);
    }
    Ok(v)
}

fn cmd_eval(a: EvalArgs) -> Outcome {
    let m = resolve_matrix(&a.matrix)?;
    let f = crate::formula::parse(&a.formula, &signature_of_matrix(&m)).map_err(|e| e.to_string())?;
    let v = parse_valuation(&a.valuation, &m)?;
    let x = evaluate(&f, &m.algebra, &v).map_err(|e| e.to_string())?;
    let name = m.algebra.value_name(x).to_string();
    let designated = m.is_designated(x);
    let report = format!("{f} = {name}{}", if designated { " (designated)" } else { "" });
    Ok(CommandOutcome::new(EXIT_OK, report, json!({ "formula": f.to_string(), "value": name, "designated": designated })))
}

fn cmd_entails(a: EntailsArgs) -> Outcome {
    let m = resolve_matrix(&a.matrix)?;
    let sig = signature_of_matrix(&m);
    let (lhs, rhs) = (formulas(&a.lhs, &sig)?, formulas(&a.rhs, &sig)?);
    let claim = Statement::new(lhs, rhs);
    let verdict = consequence_holds(&m, &claim.antecedent, &claim.succedent);
    let cm = verdict.countermodel.as_ref().map(|v| v.display(&m.algebra).to_string());
    let report = match &cm {
        None => format!("{claim} holds in {}", m.name),
        Some(c) => format!("{claim} fails in {}\ncountermodel: {c}", m.name),
    };
    let code = if verdict.holds { EXIT_OK } else { EXIT_FAIL };
    Ok(CommandOutcome::new(code, report, json!({ "claim": claim.to_string(), "matrix": m.name, "holds": verdict.holds, "countermodel": cm })))
}

fn cmd_rule_sound(a: RuleSoundArgs) -> Outcome {
    let sys = resolve_system(&a.system)?;
    let mid = match &a.matrix {
        Some(m) => m.clone(),
        None => corpus::declared_matrix(&sys.name).ok_or("this system has no declared matrix; pass --matrix")?.to_string(),
    };
    let m = resolve_matrix(&mid)?;
    let rules: Vec<_> = match &a.rule {
        Some(name) => vec![sys.rule(name).ok_or_else(|| format!("{} has no rule {name}", sys.name))?],
        None => sys.rules().iter().collect(),
    };
    let mut report = String::new();
    let mut rows = Vec::new();
    let mut unsound = 0;
    for r in rules {
        let v = rule_sound(&m, r);
        let cm = v.countermodel.as_ref().map(|c| c.display(&m.algebra).to_string());
        match &cm {
            None => writeln!(report, "sound    {r}").unwrap(),
            Some(c) => {
                unsound += 1;
                writeln!(report, "UNSOUND  {r}   countermodel {c}").unwrap()
            }
        }
        rows.push(json!({ "rule": r.name, "sound": v.holds, "countermodel": cm }));
    }
    write!(report, "{} rules checked against {}, {unsound} unsound", rows.len(), m.name).unwrap();
    let code = if unsound == 0 { EXIT_OK } else { EXIT_FAIL };
    Ok(CommandOutcome::new(code, report, json!({ "system": sys.name, "matrix": m.name, "rules": rows, "unsound": unsound })))
}

fn cmd_monadic(a: MonadicArgs) -> Outcome {
    let m = resolve_matrix(&a.matrix)?;
    let theta = theta_list(&a.theta)?;
    let rep = check_monadicity(&m, &theta);
    let mut report = String::new();
    let mut rows = Vec::new();
    for e in &rep.entries {
        let (x, y) = (m.algebra.value_name(e.pair.0), m.algebra.value_name(e.pair.1));
        let sep = e.separator.as_ref().map(|f| f.to_string());
        writeln!(report, "({x},{y}): {}", sep.as_deref().unwrap_or("none")).unwrap();
        rows.push(json!({ "pair": [x, y], "separator": sep }));
    }
    let monadic = rep.is_monadic();
    write!(report, "{} is {}monadic for {{{}}}", m.name, if monadic { "" } else { "not " }, a.theta).unwrap();
    Ok(CommandOutcome::new(if monadic { EXIT_OK } else { EXIT_FAIL }, report, json!({ "matrix": m.name, "monadic": monadic, "pairs": rows })))
}

fn search_config(theta: &str, max_nodes: usize, max_steps: usize) -> Result<SearchConfig, String> {
    Ok(SearchConfig { theta: theta_list(theta)?, max_nodes, max_steps, ..SearchConfig::default() })
}

/// Text, JSON and DOT renderings of a derivation file.
fn render_proof(file: &DerivationFile, format: ProofFormat) -> String {
    match (format, &file.derivation) {
        (ProofFormat::Json, _) => serde_json::to_string_pretty(&derivation_json(file)).expect("serializable") + "\n",
        (ProofFormat::Dot, Derivation::Tree(t)) => tree_to_dot(t),
        (_, Derivation::Tree(t)) => write_tree(&file.system, &file.claim, t),
        (_, Derivation::Linear(d)) => write_linear(&file.system, &file.claim, d),
    }
}

fn cmd_prove(a: ProveArgs) -> Outcome {
    let sys = resolve_system(&a.system)?;
    let id = if SYSTEM_IDS.contains(&a.system.as_str()) { a.system.clone() } else { sys.name.clone() };
    let sig = &sys.signature;
    let claim = Statement::new(formulas(&a.lhs, sig)?, formulas(&a.rhs, sig)?);
    let mut cfg = search_config(&a.theta, a.max_nodes, a.max_steps)?;
    if let Some(u) = &a.universe {
        cfg.universe = Universe::Explicit(formulas(u, sig)?);
    } else if sys.name == "R_BK_star" {
        cfg.universe = Universe::Explicit(star_universe(&claim, &cfg).map_err(|e| e.to_string())?);
    }
    let (outcome, file) = match sys.kind {
        Kind::SetSet => {
            let res = prove_setset_analytic(&sys, &claim, &cfg).map_err(|e| e.to_string())?;
            match res {
                SearchOutcome::Proved(t) => ("proved", Some(Derivation::Tree(t))),
                SearchOutcome::NoProof => ("no-proof", None),
                SearchOutcome::BudgetExhausted => ("budget-exhausted", None),
            }
        }
        Kind::SetFmla => {
            let goal = claim.conclusion().ok_or("a Set-Fmla claim needs exactly one conclusion")?.clone();
            match prove_setfmla_bounded(&sys, &claim.antecedent, &goal, &cfg).map_err(|e| e.to_string())? {
                SearchOutcome::Proved(d) => ("proved", Some(Derivation::Linear(d))),
                SearchOutcome::NoProof => ("no-proof-within-universe", None),
                SearchOutcome::BudgetExhausted => ("budget-exhausted", None),
            }
        }
    };
    let Some(derivation) = file else {
        let code = if outcome == "no-proof" { EXIT_FAIL } else { EXIT_INCONCLUSIVE };
        let report = format!("{outcome}: {claim} in {id}");
        return Ok(CommandOutcome::new(code, report, json!({ "system": id, "claim": claim.to_string(), "outcome": outcome })));
    };
    let file = DerivationFile { system: id.clone(), claim: claim.clone(), derivation };
    let text = render_proof(&file, ProofFormat::Text);
    if let Some(path) = &a.out {
        std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let report = render_proof(&file, a.format);
    Ok(CommandOutcome::new(EXIT_OK, report, json!({ "system": id, "claim": claim.to_string(), "outcome": outcome, "proof": derivation_json(&file) })))
}

fn signature_lookup(name: &str) -> Option<Signature> {
    corpus::system_signature(name)
}

fn load_derivation(path: &Path, system: Option<&str>) -> Result<(DerivationFile, Arc<HSystem>), String> {
    let text = read_file(path)?;
    let custom = match system {
        Some(s) if !SYSTEM_IDS.contains(&s) => Some(resolve_system(s)?),
        _ => None,
    };
    let file = match &custom {
        Some(sys) => {
            let sig = sys.signature.clone();
            parse_derivation_file(&text, &move |_| Some(sig.clone()))
        }
        None => parse_derivation_file(&text, &signature_lookup),
    }
    .map_err(|e| format!("{}: {e}", path.display()))?;
    let sys = match (custom, system) {
        (Some(sys), _) => sys,
        (None, Some(id)) if id != file.system => {
            return Err(format!("file is for system {} but --system {id} was given", file.system))
        }
        (None, _) => resolve_system(&file.system)?,
    };
    Ok((file, sys))
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let (file, sys) = load_derivation(&a.file, a.system.as_deref())?;
    let result = match &file.derivation {
        Derivation::Linear(d) => verify_linear(&sys, d, &file.claim).map(|e| (e.len(), "primitive steps")),
        Derivation::Tree(t) => verify_tree(&sys, t, &file.claim).map(|_| (t.node.size(), "nodes")),
    };
    Ok(match result {
        Ok((n, unit)) => {
            let report = format!("accepted: {} in {} ({n} {unit})", file.claim, sys.name);
            CommandOutcome::new(EXIT_OK, report, json!({ "accepted": true, "system": sys.name, "claim": file.claim.to_string(), "size": n }))
        }
        Err(r) => {
            let report = format!("rejected at {}: {} ({})", r.location, r.reason.code(), r.detail);
            CommandOutcome::new(
                EXIT_FAIL,
                report,
                json!({ "accepted": false, "location": r.location.to_string(), "reason": r.reason.code(), "detail": r.detail }),
            )
        }
    })
}

fn system_outcome(sys: &HSystem, extra: Value) -> CommandOutcome {
    let mut j = json!({ "name": sys.name, "kind": sys.kind.name(), "rules": sys.rules().iter().map(|r| r.to_string()).collect::<Vec<_>>() });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    CommandOutcome::new(EXIT_OK, sys.to_text(), j)
}

fn cmd_transform(t: TransformCommand) -> Outcome {
    match t {
        TransformCommand::Dualize(a) => {
            let sys = resolve_system(&a.system)?;
            let d = dualize_system(&sys).map_err(|e| e.to_string())?;
            Ok(system_outcome(&d, json!({})))
        }
        TransformCommand::OrConvert(a) => {
            let sys = resolve_system(&a.system)?;
            let conv = or_convert_system(&sys, &mut FreshNamer::for_system(&sys)).map_err(|e| e.to_string())?;
            let mut out = system_outcome(&conv.system, json!({ "discarded": conv.discarded, "p0": conv.p0.to_string() }));
            if !conv.discarded.is_empty() {
                out.report.push_str(&format!("# discarded: {}\n", conv.discarded.join(", ")));
            }
            Ok(out)
        }
        TransformCommand::Lift(a) => {
            let sys = resolve_system(&a.system)?;
            let mode = match a.mode {
                LiftModeArg::Or => LiftMode::Or,
                LiftModeArg::Imp => LiftMode::Imp,
            };
            let rules: Vec<_> = match &a.rule {
                Some(n) => vec![sys.rule(n).ok_or_else(|| format!("{} has no rule {n}", sys.name))?.clone()],
                None => sys.rules().iter().filter(|r| r.succedent.len() == 1).cloned().collect(),
            };
            let mut report = String::new();
            let mut rows = Vec::new();
            for r in &rules {
                let l = lift_rule(r, mode, &mut FreshNamer::new(r.vars())).map_err(|e| e.to_string())?;
                writeln!(report, "rule {l}").unwrap();
                rows.push(l.to_string());
            }
            Ok(CommandOutcome::new(EXIT_OK, report, json!({ "system": sys.name, "lifted": rows })))
        }
    }
}

fn cmd_translate(a: TranslateArgs) -> Outcome {
    let (file, sys) = load_derivation(&a.file, None)?;
    let Derivation::Tree(t) = &file.derivation else { return Err("translate-bk expects a tree derivation".into()) };
    if sys.name != "R_BK_star" {
        return Err(format!("translate-bk expects an R_BK_star derivation, got {}", sys.name));
    }
    let h = corpus::get_system("H_BK").map_err(|e| e.to_string())?;
    let d = match translate_bk(&sys, &h, t, &file.claim) {
        Ok(d) => d,
        Err(e) => return Ok(CommandOutcome::new(EXIT_FAIL, format!("translation failed: {e}"), json!({ "error": e.to_string() }))),
    };
    let out = DerivationFile { system: "H_BK".into(), claim: file.claim.clone(), derivation: Derivation::Linear(d) };
    let text = render_proof(&out, ProofFormat::Text);
    if let Some(path) = &a.out {
        std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(CommandOutcome::new(EXIT_OK, text, derivation_json(&out)))
}

/// Agreement between analytic search and the matrix over a statement family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompareReport {
    pub statements: usize,
    pub agreements: usize,
    pub disagreements: Vec<(Statement, bool, bool)>,
    pub exhausted: Vec<Statement>,
    pub proofs: usize,
}

/// Runs the comparison used by the `compare` command.
pub fn compare_family(
    sys: &HSystem,
    m: &Matrix,
    family: &[Statement],
    cfg: &SearchConfig,
) -> Result<CompareReport, String> {
    if sys.kind != Kind::SetSet {
        return Err(format!("compare needs a Set-Set system; {} is Set-Fmla", sys.name));
    }
    let mut rep = CompareReport::default();
    for claim in family.iter().cloned() {
        rep.statements += 1;
        let semantic = consequence_holds(m, &claim.antecedent, &claim.succedent).holds;
        let mut local = cfg.clone();
        if sys.name == "R_BK_star" {
            local.universe = Universe::Explicit(star_universe(&claim, cfg).map_err(|e| e.to_string())?);
        }
        let found = match prove_setset_analytic(sys, &claim, &local).map_err(|e| e.to_string())? {
            SearchOutcome::Proved(_) => true,
            SearchOutcome::NoProof => false,
            SearchOutcome::BudgetExhausted => {
                rep.exhausted.push(claim);
                continue;
            }
        };
        rep.proofs += usize::from(found);
        if found == semantic {
            rep.agreements += 1;
        } else {
            rep.disagreements.push((claim, found, semantic));
        }
    }
    Ok(rep)
}

const VAR_NAMES: [&str; 4] = ["p", "q", "r", "s"];

fn cmd_compare(a: CompareArgs) -> Outcome {
    if a.vars == 0 || a.vars > VAR_NAMES.len() {
        return Err(format!("--vars must be between 1 and {}", VAR_NAMES.len()));
    }
    let sys = resolve_system(&a.system)?;
    let m = resolve_matrix(&a.matrix)?;
    let vars = &VAR_NAMES[..a.vars];
    let statements = family::desk_family(vars, a.depth, a.sides, a.sample, a.seed);
    let cfg = SearchConfig { max_nodes: a.max_nodes, ..SearchConfig::default() };
    let rep = compare_family(&sys, &m, &statements, &cfg)?;
    let mut report = format!(
        "{} vs {}: {} statements, {} agree, {} disagree, {} budget-exhausted, {} proofs found\n",
        sys.name,
        m.name,
        rep.statements,
        rep.agreements,
        rep.disagreements.len(),
        rep.exhausted.len(),
        rep.proofs
    );
    let shown = if a.all { rep.disagreements.len() } else { rep.disagreements.len().min(10) };
    for (claim, found, semantic) in &rep.disagreements[..shown] {
        writeln!(report, "  {claim}: search {}, matrix {}", verdict(*found), verdict(*semantic)).unwrap();
    }
    if shown < rep.disagreements.len() {
        writeln!(report, "  ... {} more", rep.disagreements.len() - shown).unwrap();
    }
    let code = if rep.disagreements.is_empty() && rep.exhausted.is_empty() { EXIT_OK } else { EXIT_FAIL };
    let j = json!({
        "system": sys.name,
        "matrix": m.name,
        "statements": rep.statements,
        "agreements": rep.agreements,
        "disagreements": rep.disagreements.iter().map(|(c, f, s)| json!({ "claim": c.to_string(), "search": f, "matrix": s })).collect::<Vec<_>>(),
        "budget_exhausted": rep.exhausted.len(),
    });
    Ok(CommandOutcome::new(code, report, j))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn cmd_systems(s: SystemsCommand) -> Outcome {
    match s {
        SystemsCommand::List => {
            let mut report = String::new();
            let mut rows = Vec::new();
            for id in SYSTEM_IDS {
                let sys = corpus::get_system(id).map_err(|e| e.to_string())?;
                let derived = sys.derived_rules().count();
                writeln!(report, "{id:<10} {:<7} {:>2} rules, {derived} derived, matrix {}", sys.kind.name(), sys.rules().len(), corpus::declared_matrix(id).unwrap_or("-"))
                    .unwrap();
                rows.push(json!({ "id": id, "kind": sys.kind.name(), "rules": sys.rules().len(), "derived": derived }));
            }
            Ok(CommandOutcome::new(EXIT_OK, report, json!(rows)))
        }
        SystemsCommand::Show { id } => {
            let sys = resolve_system(&id)?;
            let mut out = system_outcome(&sys, json!({ "derived": sys.derived_rules().map(|d| d.schema.to_string()).collect::<Vec<_>>() }));
            for d in sys.derived_rules() {
                writeln!(out.report, "# derived {}", d.schema).unwrap();
            }
            Ok(out)
        }
    }
}

fn cmd_export(dir: &Path) -> Outcome {
    let files = corpus::export(dir).map_err(|e| e.to_string())?;
    let report = format!("wrote {} files under {}", files.len(), dir.display());
    Ok(CommandOutcome::new(EXIT_OK, report, json!({ "files": files })))
}
