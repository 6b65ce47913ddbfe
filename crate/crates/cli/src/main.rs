use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dqp_core::algebra::{
    antipode, coproduct, multiply, splitting_linear, upsilon, Element, Tensor, Variant,
};
use dqp_core::canonical::{automorphisms, enumerate_isoclasses_with};
use dqp_core::dqp::{DoubleQuasiPoset, Family};
use dqp_core::error::Error;
use dqp_core::gram::gram_with;
use dqp_core::internal::{internal_product, InternalKind};
use dqp_core::io::{
    dqp_to_json, element_to_json, group_to_json, parse_dqp, parse_element, permutation_to_json,
    rational_to_string, tensor_to_json, words_to_json,
};
use dqp_core::par::Execution;
use dqp_core::pictures::{count_maps, enumerate_maps, pairing, patterns, MapKind};
use dqp_core::tableaux::{
    content_filling_count, p_lambda, parse_composition, q_lambda, q_of_composition, tableau_oracle,
    FillingMode, YoungDiagram,
};
use dqp_core::verify::{Suite, SuiteReport};
use dqp_core::words::{
    compatible, enumerate_packed_words, word_internal, zeta, zeta_prime, PackedWord,
};

#[derive(Parser)]
#[command(
    name = "dqp",
    version,
    about = "Double quasi-posets: Hopf structures, pictures and pairings"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dqp,
    Sqp,
    Dp,
    Tqp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Dqp => Family::Dqp,
            FamilyArg::Sqp => Family::Sqp,
            FamilyArg::Dp => Family::Dp,
            FamilyArg::Tqp => Family::Tqp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    Strict,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Standard => Variant::Standard,
            VariantArg::Strict => Variant::Strict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Picture,
    Prepicture,
    Semistandard,
    Semi,
    Semiprepicture,
}

impl From<KindArg> for MapKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Picture => MapKind::Picture,
            KindArg::Prepicture => MapKind::Prepicture,
            KindArg::Semistandard => MapKind::SemiStandard,
            KindArg::Semi => MapKind::Semi,
            KindArg::Semiprepicture => MapKind::SemiPrepicture,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InternalArg {
    Le,
    Lt,
}

impl From<InternalArg> for InternalKind {
    fn from(k: InternalArg) -> Self {
        match k {
            InternalArg::Le => InternalKind::Le,
            InternalArg::Lt => InternalKind::Lt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Weak,
}

/// Structures are given as JSON (`{"n":..,"le1":..,"le2":..}`) or as text
/// (`dqp 2; (1,2); (1,2)`); combinations as `[["p/q", structure], ..]`.
/// `-` reads the argument from standard input.
#[derive(Subcommand)]
enum Command {
    /// List the isoclasses of a family at size n.
    Enumerate {
        #[arg(long, value_enum, default_value_t = FamilyArg::Dqp)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
    },
    /// Product of two combinations.
    Product { a: String, b: String },
    /// Coproduct of a combination.
    Coproduct {
        a: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
    },
    /// Antipode of a combination.
    Antipode {
        a: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
    },
    /// Sum over blow-ups.
    Upsilon { a: String },
    /// The splitting projection.
    Splitting { a: String },
    /// Bijections of a given kind between two structures.
    Pictures {
        p: String,
        q: String,
        #[arg(long, value_enum, default_value_t = KindArg::Picture)]
        kind: KindArg,
    },
    /// Pairing of two structures.
    Pairing {
        p: String,
        q: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
    },
    /// Gram matrix as CSV, with a header row of basis codes.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Dqp)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
    },
    /// Exact rank of a Gram matrix.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Dqp)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
    },
    /// Patterns between two structures, as orbit representatives and sizes.
    Patterns { p: String, q: String },
    /// Internal product of two combinations of equal size.
    InternalProd {
        a: String,
        b: String,
        #[arg(long, value_enum)]
        kind: InternalArg,
    },
    /// Packed words.
    #[command(subcommand)]
    Words(WordsCommand),
    /// Young diagrams and their fillings.
    #[command(subcommand)]
    Tableaux(TableauxCommand),
    /// Run property suites.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest size to check; each suite has its own default and cap
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum WordsCommand {
    /// Packed words of length n.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only words with exactly k distinct letters.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        increasing: bool,
    },
    /// Permutations compatible with a word.
    Compatible { w: String },
    /// Internal product of two words, by the closed forms.
    Internal {
        u: String,
        v: String,
        #[arg(long, value_enum)]
        kind: InternalArg,
    },
    /// The structure of a word.
    ToDqp { w: String },
    /// Image of a word in the group algebra.
    Zeta { w: String },
    /// The word of a permutation given in one-line notation.
    ZetaPrime { sigma: String },
}

#[derive(Subcommand)]
enum TableauxCommand {
    /// The cells of λ and the structures Q_λ and P_λ.
    Shape {
        /// Row lengths, top row first.
        #[arg(long)]
        shape: String,
    },
    /// Fillings of λ by a target with discrete first preorder, counted by
    /// the filling oracle and by pictures.
    Fillings {
        #[arg(long)]
        shape: String,
        /// Target structure; defaults to P_[n].
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Patterns from P_λ to Q(𝐧) against the content-filling count.
    Patterns {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        content: String,
    },
    /// Q(𝐧) and its automorphism count.
    Composition {
        #[arg(long)]
        content: String,
    },
}

/// Why the command failed, with its exit status.
enum Failure {
    Input(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = Result<(), Failure>;

fn read_arg(arg: &str) -> Result<String, Error> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
    Ok(text)
}

fn dqp_arg(arg: &str) -> Result<DoubleQuasiPoset, Error> {
    parse_dqp(&read_arg(arg)?)
}

fn element_arg(arg: &str) -> Result<Element, Error> {
    parse_element(&read_arg(arg)?)
}

fn word_arg(arg: &str) -> Result<PackedWord, Error> {
    PackedWord::parse(&read_arg(arg)?)
}

struct Out {
    format: Format,
}

impl Out {
    /// Prints `json` or the text rendering.
    fn emit(&self, json: Value, text: impl FnOnce() -> String) {
        let body = match self.format {
            Format::Json => serde_json::to_string_pretty(&json).expect("valid JSON"),
            Format::Text => text(),
        };
        print_stdout(&format!("{body}\n"));
    }

    fn element(&self, a: &Element) {
        self.emit(element_to_json(a), || element_text(a));
    }

    fn tensor(&self, t: &Tensor) {
        self.emit(tensor_to_json(t), || {
            if t.is_empty() {
                return "0".into();
            }
            t.iter()
                .map(|((a, b), c)| {
                    format!(
                        "{:>8}  {} ⊗ {}",
                        rational_to_string(c),
                        a.to_dqp(),
                        b.to_dqp()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")
        });
    }
}

/// Writes to standard output; a closed pipe (`| head`) is not an error.
fn print_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn element_text(a: &Element) -> String {
    if a.is_empty() {
        return "0".into();
    }
    a.iter()
        .map(|(k, c)| format!("{:>8}  {}", rational_to_string(c), k.to_dqp()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> CmdResult {
    let out = Out { format: cli.format };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Enumerate { family, n } => {
            let family = Family::from(family);
            let keys = enumerate_isoclasses_with(n, family, exec)?;
            let reps: Vec<DoubleQuasiPoset> = keys.iter().map(|k| k.to_dqp()).collect();
            out.emit(
                json!({
                    "family": family.name(),
                    "n": n,
                    "count": reps.len(),
                    "isoclasses": reps.iter().map(dqp_to_json).collect::<Vec<_>>(),
                }),
                || {
                    let mut lines = vec![format!(
                        "{} isoclasses of {} at n={n}",
                        reps.len(),
                        family.name()
                    )];
                    lines.extend(reps.iter().map(ToString::to_string));
                    lines.join("\n")
                },
            );
        }
        Command::Product { a, b } => out.element(&multiply(&element_arg(&a)?, &element_arg(&b)?)),
        Command::Coproduct { a, variant } => {
            out.tensor(&coproduct(&element_arg(&a)?, variant.into()))
        }
        Command::Antipode { a, variant } => {
            out.element(&antipode(&element_arg(&a)?, variant.into()))
        }
        Command::Upsilon { a } => out.element(&upsilon(&element_arg(&a)?)),
        Command::Splitting { a } => out.element(&splitting_linear(&element_arg(&a)?)),
        Command::Pictures { p, q, kind } => {
            let (p, q, kind) = (dqp_arg(&p)?, dqp_arg(&q)?, MapKind::from(kind));
            let maps = enumerate_maps(&p, &q, kind);
            out.emit(
                json!({
                    "kind": kind.name(),
                    "count": maps.len(),
                    "maps": maps.iter().map(permutation_to_json).collect::<Vec<_>>(),
                }),
                || {
                    let mut lines = vec![format!("{} {} maps", maps.len(), kind.name())];
                    lines.extend(maps.iter().map(ToString::to_string));
                    lines.join("\n")
                },
            );
        }
        Command::Pairing { p, q, variant } => {
            let variant = Variant::from(variant);
            let value = pairing(&dqp_arg(&p)?, &dqp_arg(&q)?, variant);
            out.emit(json!({ "variant": variant.name(), "value": value }), || {
                value.to_string()
            });
        }
        Command::Gram { n, family, variant } => {
            print_stdout(&gram_with(n, family.into(), variant.into(), exec)?.to_csv());
        }
        Command::Rank { n, family, variant } => {
            let (family, variant) = (Family::from(family), Variant::from(variant));
            let g = gram_with(n, family, variant, exec)?;
            let rank = g.rank();
            out.emit(
                json!({
                    "n": n,
                    "family": family.name(),
                    "kind": variant.name(),
                    "dim": g.dim(),
                    "rank": rank,
                }),
                || {
                    format!(
                        "{} {} n={n}: rank {rank} of {}",
                        family.name(),
                        variant.name(),
                        g.dim()
                    )
                },
            );
        }
        Command::Patterns { p, q } => {
            let orbits = patterns(&dqp_arg(&p)?, &dqp_arg(&q)?)?;
            out.emit(
                json!({
                    "count": orbits.len(),
                    "orbits": orbits
                        .iter()
                        .map(|o| json!({ "representative": permutation_to_json(&o.representative), "size": o.size }))
                        .collect::<Vec<_>>(),
                }),
                || {
                    let mut lines = vec![format!("{} patterns", orbits.len())];
                    lines.extend(orbits.iter().map(|o| format!("{}  ({})", o.representative, o.size)));
                    lines.join("\n")
                },
            );
        }
        Command::InternalProd { a, b, kind } => {
            let (a, b) = (element_arg(&a)?, element_arg(&b)?);
            if let (Some(x), Some(y)) = (a.keys().next(), b.keys().next()) {
                if x.len() != y.len() {
                    return Err(Error::SizeMismatch(x.len(), y.len()).into());
                }
            }
            out.element(&internal_product(&a, &b, kind.into()));
        }
        Command::Words(cmd) => run_words(cmd, &out)?,
        Command::Tableaux(cmd) => run_tableaux(cmd, &out)?,
        Command::Verify { suite, max_n } => {
            let suites = Suite::parse_selection(&suite)?;
            let reports = suites
                .into_iter()
                .map(|s| s.run(max_n, exec))
                .collect::<Result<Vec<SuiteReport>, Error>>()?;
            let passed = reports.iter().all(SuiteReport::passed);
            out.emit(json!({ "passed": passed, "suites": reports }), || {
                verify_text(&reports)
            });
            for report in &reports {
                for c in report.failures() {
                    eprintln!(
                        "FAIL {}: {}",
                        c.id,
                        c.counterexample
                            .as_deref()
                            .unwrap_or("no counterexample recorded")
                    );
                }
            }
            if !passed {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn verify_text(reports: &[SuiteReport]) -> String {
    let width = reports
        .iter()
        .flat_map(|r| r.checks.iter().map(|c| c.id.len()))
        .max()
        .unwrap_or(0);
    let mut lines = Vec::new();
    for r in reports {
        lines.push(format!("{} (max n = {})", r.suite, r.max_n));
        for c in &r.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            let mut line = format!("  {status} {:<width$} {:>9} cases", c.id, c.cases);
            if let Some(ce) = &c.counterexample {
                line.push_str(&format!("  counterexample: {ce}"));
            }
            lines.push(line);
        }
    }
    lines.join("\n")
}

fn run_words(cmd: WordsCommand, out: &Out) -> CmdResult {
    match cmd {
        WordsCommand::Enumerate { n, k, increasing } => {
            let words = enumerate_packed_words(n, k, increasing)?;
            out.emit(
                json!({
                    "n": n,
                    "count": words.len(),
                    "words": words.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                || {
                    words
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
        }
        WordsCommand::Compatible { w } => {
            let perms = compatible(&word_arg(&w)?);
            out.emit(
                json!(perms.iter().map(permutation_to_json).collect::<Vec<_>>()),
                || {
                    perms
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
        }
        WordsCommand::Internal { u, v, kind } => {
            let x = word_internal(&word_arg(&u)?, &word_arg(&v)?, kind.into())?;
            out.emit(words_to_json(&x), || {
                if x.is_empty() {
                    return "0".into();
                }
                x.iter()
                    .map(|(w, c)| format!("{:>8}  {w}", rational_to_string(c)))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        WordsCommand::ToDqp { w } => {
            let p = word_arg(&w)?.to_dqp();
            out.emit(dqp_to_json(&p), || p.to_string());
        }
        WordsCommand::Zeta { w } => {
            let z = zeta(&word_arg(&w)?);
            out.emit(group_to_json(&z), || {
                z.iter()
                    .map(|(s, c)| format!("{:>8}  {s}", rational_to_string(c)))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        WordsCommand::ZetaPrime { sigma } => {
            let word = word_arg(&sigma)?;
            let sigma = word
                .to_permutation()
                .ok_or_else(|| Error::NotBijection(word.to_string()))?;
            let w = zeta_prime(&sigma);
            out.emit(json!(w.to_string()), || w.to_string());
        }
    }
    Ok(())
}

fn run_tableaux(cmd: TableauxCommand, out: &Out) -> CmdResult {
    match cmd {
        TableauxCommand::Shape { shape } => {
            let lambda = YoungDiagram::parse(&shape)?;
            let (q, p) = (q_lambda(&lambda, None)?, p_lambda(&lambda));
            let cells: Vec<Value> = lambda
                .cells()
                .iter()
                .map(|&(x, y)| json!([x + 1, y + 1]))
                .collect();
            out.emit(
                json!({ "shape": lambda.rows(), "cells": cells, "q_lambda": dqp_to_json(&q), "p_lambda": dqp_to_json(&p) }),
                || format!("shape {lambda}\nQ_λ {q}\nP_λ {p}"),
            );
        }
        TableauxCommand::Fillings {
            shape,
            target,
            mode,
        } => {
            let lambda = YoungDiagram::parse(&shape)?;
            let q = match target {
                Some(t) => dqp_arg(&t)?,
                None => q_of_composition(&vec![1; lambda.len()])?,
            };
            let (mode, kind, name) = match mode {
                ModeArg::Strict => (FillingMode::Strict, MapKind::Picture, "strict"),
                ModeArg::Weak => (FillingMode::Weak, MapKind::SemiStandard, "weak"),
            };
            let oracle = tableau_oracle(&lambda, &q, mode)?;
            let maps = count_maps(&q_lambda(&lambda, None)?, &q, kind);
            out.emit(
                json!({ "shape": lambda.rows(), "mode": name, "fillings": oracle, "maps": maps, "kind": kind.name() }),
                || format!("{oracle} {name} fillings, {maps} {} maps", kind.name()),
            );
        }
        TableauxCommand::Patterns { shape, content } => {
            let lambda = YoungDiagram::parse(&shape)?;
            let content = parse_composition(&content)?;
            let target = q_of_composition(&content)?;
            let count = patterns(&p_lambda(&lambda), &target)?.len();
            let oracle = content_filling_count(&lambda, &content)?;
            out.emit(
                json!({ "shape": lambda.rows(), "content": content, "patterns": count, "content_fillings": oracle }),
                || format!("{count} patterns, {oracle} content fillings"),
            );
        }
        TableauxCommand::Composition { content } => {
            let content = parse_composition(&content)?;
            let q = q_of_composition(&content)?;
            let aut = automorphisms(&q)?.len();
            out.emit(
                json!({ "content": content, "dqp": dqp_to_json(&q), "automorphisms": aut }),
                || format!("{q}\n|Aut| = {aut}"),
            );
        }
    }
    Ok(())
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::SizeLimit { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // A panic is a broken internal invariant; the default hook has already
    // reported it on standard error.
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Verification)) => ExitCode::from(1),
        Ok(Err(Failure::Input(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
        Err(_) => ExitCode::from(4),
    }
}
