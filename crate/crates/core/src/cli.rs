//! The `beurling` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{coset_sums, parse_rational, push_forward, AlgebraElement, Coefficient};
use crate::cancellation::{cancellation_report, check_cancellation, check_exhaustive};
use crate::error::{Error, Result};
use crate::freegroup::{ball, FreeWord};
use crate::groups::{quotient_table, FiniteIndexSubgroup, SubgroupMode, DEFAULT_CAP};
use crate::ideals::{
    codimension_report, decompose_augmentation, express_in_j_generators, extract_subgroup_expression, lift_ideal,
    separate, solve_left_ideal_membership, telescope_certificate, telescope_from_factorization, CosetStructure,
    FiniteModel, GrigorchukFamily, YFactorization, YMetric, DEFAULT_NODE_CAP,
};
use crate::json::{
    cancellation_to_json, certificate_to_json, codimension_to_json, coefficient_to_json, decomposition_to_json,
    element_to_json, extraction_to_json, j_expression_to_json, norm_to_json, parse_element, parse_quotient_element,
    perm_to_json, separation_to_json, weight_report_to_json, word_to_json, words_to_json, GroupSpec, WeightSpec,
};
use crate::suites::{run_suite, SuiteName};
use crate::weights::{check_submultiplicative, RadialWeight};

#[derive(Parser, Debug)]
#[command(name = "beurling", version, about = "Exact computation in weighted group algebras of free groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Subgroup: a JSON file, inline JSON, `even2`, or `grigorchuk:L`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Weight spec as a JSON file or inline JSON; defaults to radial base 2.
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest ball of the free group that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    pub cap_ball: usize,
    /// Largest finite quotient that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    pub cap_order: usize,
    /// Node budget for searches in the Y-metric.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP, value_parser = positive)]
    pub cap_nodes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Rank of the free group for words and elements.
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Radius `r` of `Y = Ḃ_r ∩ H`, or of a ball.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Freely reduce a word.
    Reduce { word: String },
    /// Multiply words.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Enumerate the ball of radius `--radius` (default 2).
    Ball,
    /// Index, normality, radius and generating set of `--group`.
    GroupInfo,
    /// Shortlex left transversal of `--group`.
    Transversal,
    /// Schreier generators and `Y = Ḃ_r ∩ H`.
    Ygens,
    /// Evaluate `--weight` at a word.
    WeightEval { word: String },
    /// Check `ω(st) <= ω(s)ω(t)` on the ball of radius `--radius` (default 3)
    /// or on the whole quotient for quotient weights.
    SubmultCheck,
    /// Convolution `f ∗ g`.
    Conv { f: String, g: String },
    /// Weighted norm of `f` under `--weight`.
    Norm { f: String },
    /// Augmentation `Σ f(s)`.
    Aug { f: String },
    /// Sums of `f` over the left cosets of `--group`.
    CosetSums { f: String },
    /// Push `f` forward to the finite quotient of `--group`.
    Push { f: String },
    /// Telescoping certificate for `δ_e − δ_u`.
    Certificate {
        #[arg(long)]
        u: String,
        /// A Y-factorization of `u`, e.g. `"ab,ab"`; defaults to a geodesic one.
        #[arg(long)]
        factors: Option<String>,
    },
    /// Express an augmentation-zero `f ∈ ℂH` over `δ_e − δ_y`.
    Decompose { f: String },
    /// Express `f ∈ J(F, H)` over the generators `δ_e − δ_y`.
    Express { f: String },
    /// Lift a left ideal of `ℂH` to `J` in a finite model.
    Lift {
        #[arg(long)]
        model: String,
        /// Generators of `I ⊆ ℂH`, separated by `;`, in the model's generators `a, b`.
        #[arg(long)]
        seeds: String,
    },
    /// Recover a `ℂH`-expression of `g ∈ I` from its expression over `J`.
    Extract {
        #[arg(long)]
        model: String,
        #[arg(long)]
        seeds: String,
        /// Element of `I`; defaults to the first seed.
        #[arg(long)]
        g: Option<String>,
    },
    /// Find a Grigorchuk quotient level where `f` survives.
    Separate {
        f: String,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Base of the radial weight bounding the tail.
        #[arg(long, default_value = "2")]
        base: String,
    },
    /// Cancellation checks along geodesic Y-factorizations.
    #[command(name = "lemma23")]
    Cancellation {
        /// Check every geodesic factorization of this element.
        #[arg(long)]
        u: Option<String>,
        /// Check only this factorization of `u`.
        #[arg(long)]
        factors: Option<String>,
        /// Without `--u`: check every element with `|u|_Y` at most this.
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Run a named property suite.
    Suite { name: String },
}

/// A rendered report and whether every verification in it passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: Option<String>,
    pub ok: bool,
}

impl Outcome {
    fn new(json: Value, ok: bool) -> Outcome {
        Outcome { json, text: None, ok }
    }

    fn with_text(mut self, text: String) -> Outcome {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Text => match &self.text {
                Some(t) => t.trim_end().to_string(),
                None => render_text(&self.json, 0).trim_end().to_string(),
            },
        }
    }
}

/// Indented `key: value` rendering of a JSON report.
pub fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => out.push_str(&format!("{pad}{k}:\n{}", render_text(x, indent + 1))),
                    Value::Array(xs) if xs.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for e in xs {
                            out.push_str(&format!("{pad}  -\n{}", render_text(e, indent + 2)));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(xs) => {
            for e in xs {
                out.push_str(&format!("{pad}-\n{}", render_text(e, indent + 1)));
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Null => "-".into(),
        x => x.to_string(),
    }
}

/// Exit status for an error: 1 for failed verifications, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::NoSeparation(_) => 1,
        _ => 2,
    }
}

/// Short diagnostic tag naming the error class.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::LetterOutOfRange { .. } => "letter-out-of-range",
        Error::RankMismatch { .. } => "rank-mismatch",
        Error::DegreeMismatch { .. } => "degree-mismatch",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::InvalidPermutation(_) => "invalid-permutation",
        Error::NotInSubgroup(_) => "not-in-subgroup",
        Error::SupportEscapesSubgroup(_) => "support-escapes-subgroup",
        Error::AugmentationNonzero(_) => "augmentation-nonzero",
        Error::CosetSumNonzero { .. } => "coset-sum-nonzero",
        Error::NotNormal(_) => "not-normal",
        Error::UnsupportedWeight(_) => "unsupported-weight",
        Error::NonGeodesic { .. } => "non-geodesic",
        Error::SearchExhausted(_) => "search-exhausted",
        Error::NoSeparation(_) => "no-separation",
        Error::ZeroElement => "zero-element",
        Error::Verification(_) => "verification-failed",
        Error::Parse { .. } => "parse-error",
        Error::Invalid(_) => "invalid-input",
    }
}

/// Parses arguments, runs the command, writes the report and returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let rendered = outcome.render(cli.global.format);
            if let Err(e) = emit(&cli.global, &rendered) {
                eprintln!("error[io]: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", error_kind(&e));
            exit_code(&e)
        }
    }
}

fn emit(global: &GlobalArgs, rendered: &str) -> std::io::Result<()> {
    match &global.out {
        Some(path) => fs::write(path, format!("{rendered}\n")),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{rendered}")
        }
    }
}

/// The argument itself, or the contents of the file it names with a leading `@`.
fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

/// A spec given inline or as the path of a file holding it.
fn read_spec(text: &str) -> Result<String> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('@') {
        return read_arg(t);
    }
    match fs::read_to_string(t) {
        Ok(s) => Ok(s),
        Err(_) => Ok(t.to_string()),
    }
}

struct Context<'a> {
    g: &'a GlobalArgs,
}

impl Context<'_> {
    fn group_spec(&self) -> Result<Option<GroupSpec>> {
        self.g
            .group
            .as_deref()
            .map(|s| GroupSpec::parse(&read_spec(s)?))
            .transpose()
    }

    fn require_group(&self) -> Result<GroupSpec> {
        self.group_spec()?
            .ok_or_else(|| Error::Invalid("this command needs --group".into()))
    }

    fn subgroup(&self) -> Result<FiniteIndexSubgroup> {
        self.require_group()?.subgroup(self.g.radius, self.g.cap_order)
    }

    fn weight(&self) -> Result<WeightSpec> {
        match &self.g.weight {
            Some(s) => WeightSpec::parse(&read_spec(s)?, self.g.cap_order),
            None => Ok(WeightSpec::default()),
        }
    }

    /// `--rank`, else the group's rank, else 2.
    fn rank(&self) -> Result<usize> {
        if let Some(r) = self.g.rank {
            return Ok(r);
        }
        Ok(self.group_spec()?.map_or(2, |g| g.rank()))
    }

    /// As [`Context::rank`], but wide enough for every letter of the words.
    fn word_rank(&self, words: &[&str]) -> Result<usize> {
        if self.g.rank.is_some() || self.g.group.is_some() {
            return self.rank();
        }
        let needed = words
            .iter()
            .flat_map(|w| w.chars())
            .filter(char::is_ascii_alphabetic)
            .map(|c| (c.to_ascii_lowercase() as u8 - b'a') as usize + 1)
            .max()
            .unwrap_or(0);
        Ok(needed.max(2))
    }

    fn element(&self, text: &str, rank: usize) -> Result<AlgebraElement<FreeWord>> {
        parse_element(&read_arg(text)?, rank)
    }
}

fn parse_factors(text: &str, rank: usize) -> Result<Vec<FreeWord>> {
    text.split(|c: char| c == ',' || c == '(' || c == ')' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| FreeWord::parse(s, rank))
        .collect()
}

fn mode_name(mode: SubgroupMode) -> Value {
    match mode {
        SubgroupMode::Kernel => json!("kernel"),
        SubgroupMode::Stabilizer(p) => json!({ "stabilizer": p }),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cx = Context { g: &cli.global };
    match &cli.command {
        Command::Reduce { word } => {
            let rank = cx.word_rank(&[word])?;
            let w = FreeWord::parse(word, rank)?;
            Ok(Outcome::new(
                json!({"input": word, "word": word_to_json(&w), "pretty": w.pretty(), "length": w.len()}),
                true,
            )
            .with_text(format!("{w}\npretty: {}\nlength: {}", w.pretty(), w.len())))
        }
        Command::Mul { words } => {
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let rank = cx.word_rank(&refs)?;
            let factors: Vec<FreeWord> = words.iter().map(|w| FreeWord::parse(w, rank)).collect::<Result<_>>()?;
            let product = factors
                .iter()
                .try_fold(FreeWord::identity(rank), |acc, w| acc.multiply(w))?;
            Ok(Outcome::new(
                json!({"factors": words_to_json(&factors), "product": word_to_json(&product), "length": product.len()}),
                true,
            )
            .with_text(format!("{product}\nlength: {}", product.len())))
        }
        Command::Ball => {
            let rank = cx.rank()?;
            let radius = cx.g.radius.unwrap_or(2);
            let b = ball(rank, radius, cx.g.cap_ball)?;
            Ok(Outcome::new(
                json!({"rank": rank, "radius": radius, "size": b.len(), "elements": words_to_json(b.elements())}),
                true,
            ))
        }
        Command::GroupInfo => {
            let spec = cx.require_group()?;
            let sub = spec.subgroup(cx.g.radius, cx.g.cap_order)?;
            let quotient_order = match sub.mode() {
                SubgroupMode::Kernel => Some(quotient_table(sub.hom(), cx.g.cap_order)?.order()),
                SubgroupMode::Stabilizer(_) => None,
            };
            Ok(Outcome::new(
                json!({
                    "group": spec.to_json(),
                    "rank": sub.rank(),
                    "degree": sub.hom().degree(),
                    "mode": mode_name(sub.mode()),
                    "index": sub.index(),
                    "normal": sub.is_normal(),
                    "radius": sub.radius(),
                    "schreier_generators": sub.schreier_generators().len(),
                    "y_size": sub.y().len(),
                    "y_generates": sub.y_generates(),
                    "quotient_order": quotient_order,
                    "transversal": words_to_json(sub.transversal()),
                }),
                true,
            ))
        }
        Command::Transversal => {
            let sub = cx.subgroup()?;
            Ok(Outcome::new(
                json!({"index": sub.index(), "transversal": words_to_json(sub.transversal())}),
                true,
            ))
        }
        Command::Ygens => {
            let sub = cx.subgroup()?;
            Ok(Outcome::new(
                json!({
                    "radius": sub.radius(),
                    "schreier_generators": words_to_json(sub.schreier_generators()),
                    "y": words_to_json(sub.y()),
                    "y_generates": sub.y_generates(),
                }),
                sub.y_generates(),
            ))
        }
        Command::WeightEval { word } => {
            let weight = cx.weight()?;
            let (value, element) = match &weight {
                WeightSpec::Free(w) => {
                    let u = FreeWord::parse(word, cx.word_rank(&[word])?)?;
                    (w.eval(&u)?, word_to_json(&u))
                }
                WeightSpec::Quotient { weight, hom } => {
                    let p = hom.apply(&FreeWord::parse(word, hom.rank())?)?;
                    (weight.eval(&p)?, perm_to_json(&p))
                }
            };
            Ok(Outcome::new(
                json!({"weight": weight.describe(), "element": element, "value": value.to_string()}),
                true,
            )
            .with_text(value.to_string()))
        }
        Command::SubmultCheck => {
            let weight = cx.weight()?;
            let (report, domain) = match &weight {
                WeightSpec::Free(w) => {
                    let radius = cx.g.radius.unwrap_or(3);
                    let b = ball(cx.rank()?, radius, cx.g.cap_ball)?;
                    let r = check_submultiplicative(w.as_ref(), b.elements())?;
                    (weight_report_to_json(&r), format!("ball of radius {radius}"))
                }
                WeightSpec::Quotient { weight: w, hom } => {
                    let table = quotient_table(hom, cx.g.cap_order)?;
                    let r = check_submultiplicative(w.as_ref(), table.elements())?;
                    (weight_report_to_json(&r), format!("quotient of order {}", table.order()))
                }
            };
            let ok = report["passed"].as_bool().unwrap_or(false);
            Ok(Outcome::new(
                json!({"weight": weight.describe(), "domain": domain, "report": report}),
                ok,
            ))
        }
        Command::Conv { f, g } => {
            let rank = cx.rank()?;
            let (f, g) = (cx.element(f, rank)?, cx.element(g, rank)?);
            let h = f.convolve(&g)?;
            Ok(Outcome::new(json!({"product": element_to_json(&h)}), true).with_text(h.to_string()))
        }
        Command::Norm { f } => {
            let weight = cx.weight()?;
            let (norm, element) = match &weight {
                WeightSpec::Free(w) => {
                    let e = cx.element(f, cx.rank()?)?;
                    (e.weighted_norm(w.as_ref())?, element_to_json(&e))
                }
                WeightSpec::Quotient { weight: w, hom } => {
                    let e = parse_quotient_element(&read_arg(f)?, hom)?;
                    (e.weighted_norm(w.as_ref())?, element_to_json(&e))
                }
            };
            Ok(Outcome::new(
                json!({"weight": weight.describe(), "f": element, "norm": norm_to_json(&norm)}),
                true,
            ))
        }
        Command::Aug { f } => {
            let e = cx.element(f, cx.rank()?)?;
            let a = e.augmentation();
            Ok(Outcome::new(json!({"augmentation": coefficient_to_json(&a)}), true).with_text(a.to_string()))
        }
        Command::CosetSums { f } => {
            let sub = cx.subgroup()?;
            let e = cx.element(f, cx.rank()?)?;
            let sums = coset_sums(&e, sub.cosets())?;
            let vanish = sums.iter().all(Coefficient::is_zero);
            Ok(Outcome::new(
                json!({
                    "cosets": sub.transversal().iter().zip(&sums).map(|(t, s)| json!({
                        "representative": word_to_json(t),
                        "sum": coefficient_to_json(s),
                    })).collect::<Vec<_>>(),
                    "all_zero": vanish,
                }),
                true,
            ))
        }
        Command::Push { f } => {
            let spec = cx.require_group()?;
            let hom = spec.hom(cx.g.cap_order)?;
            let e = cx.element(f, cx.rank()?)?;
            let image = push_forward(&e, &hom)?;
            Ok(Outcome::new(
                json!({"image": element_to_json(&image), "zero": image.is_zero()}),
                true,
            ))
        }
        Command::Certificate { u, factors } => {
            let sub = cx.subgroup()?;
            let u = FreeWord::parse(u, sub.rank())?;
            let metric = YMetric::covering(&sub, std::slice::from_ref(&u), cx.g.cap_nodes)?;
            let cert = match factors {
                Some(text) => {
                    let fact = YFactorization::new(&sub, u, parse_factors(text, sub.rank())?)?;
                    telescope_from_factorization(&metric, fact)?
                }
                None => telescope_certificate(&metric, &u)?,
            };
            let ok = cert.identity_checked && cert.growth.as_ref().is_none_or(|e| e.holds && e.strictly_increasing);
            Ok(Outcome::new(certificate_to_json(&cert), ok))
        }
        Command::Decompose { f } => {
            let sub = cx.subgroup()?;
            let e = cx.element(f, cx.rank()?)?;
            let d = decompose_augmentation(&sub, &e, cx.g.cap_nodes)?;
            let ok = d.identity_checked && d.evidence.values().all(|x| x.holds);
            Ok(Outcome::new(decomposition_to_json(&d), ok))
        }
        Command::Express { f } => {
            let sub = cx.subgroup()?;
            let e = cx.element(f, cx.rank()?)?;
            let x = express_in_j_generators(&sub, &e, cx.g.cap_nodes)?;
            Ok(Outcome::new(j_expression_to_json(&x), x.identity_checked))
        }
        Command::Lift { model, seeds } => {
            let (model, seeds) = model_and_seeds(model, seeds)?;
            let basis = model.left_ideal_in_h(&seeds)?;
            let lifted = lift_ideal(&model, &basis)?;
            let report = codimension_report(&model, &lifted)?;
            let ok = lifted.all_verified() && report.formula_holds && report.j_is_left_ideal;
            Ok(Outcome::new(
                json!({
                    "model": model.to_string(),
                    "i_basis": basis.iter().map(element_to_json).collect::<Vec<_>>(),
                    "j_generators": lifted.generator_elements().iter().map(element_to_json).collect::<Vec<_>>(),
                    "witnesses_verified": lifted.all_verified(),
                    "codimension": codimension_to_json(&report),
                }),
                ok,
            ))
        }
        Command::Extract { model, seeds, g } => {
            let (model, seed_elems) = model_and_seeds(model, seeds)?;
            let g = match g {
                Some(text) => parse_quotient_element(&read_arg(text)?, model.hom())?,
                None => seed_elems[0].clone(),
            };
            let basis = model.left_ideal_in_h(&seed_elems)?;
            if !model.span(&basis)?.contains(&model.to_dense(&g)?) {
                return Err(Error::Invalid(format!("g = {g} is not in the left ideal I")));
            }
            let lifted = lift_ideal(&model, &basis)?;
            let gens = lifted.generator_elements();
            let hs = solve_left_ideal_membership(&model, &gens, &g)?
                .ok_or_else(|| Error::Verification(format!("g = {g} is not in the left ideal generated by J")))?;
            let expr: Vec<_> = hs.into_iter().zip(gens).collect();
            let out = extract_subgroup_expression(&model, &g, &expr)?;
            Ok(Outcome::new(extraction_to_json(&out), out.identity_checked))
        }
        Command::Separate { f, levels, base } => {
            let family = GrigorchukFamily {
                degree_cap: cx.g.cap_order,
            };
            let e = cx.element(f, 4)?;
            let weight = RadialWeight::new(parse_rational(base)?)?;
            let r = separate(&e, &family, *levels, &weight)?;
            Ok(Outcome::new(separation_to_json(&r), r.certified != Some(false)))
        }
        Command::Cancellation {
            u,
            factors,
            max_length,
            cap,
        } => {
            let sub = cx.subgroup()?;
            match (u, factors) {
                (Some(u), Some(text)) => {
                    let u = FreeWord::parse(u, sub.rank())?;
                    let metric = YMetric::covering(&sub, std::slice::from_ref(&u), cx.g.cap_nodes)?;
                    let fact = YFactorization::new(&sub, u, parse_factors(text, sub.rank())?)?;
                    let r = check_cancellation(&metric, &fact)?;
                    Ok(Outcome::new(cancellation_to_json(&r), r.passed()).with_text(r.to_string()))
                }
                (Some(u), None) => {
                    let u = FreeWord::parse(u, sub.rank())?;
                    let metric = YMetric::covering(&sub, std::slice::from_ref(&u), cx.g.cap_nodes)?;
                    let (all, truncated) = metric.all_geodesics(&u, *cap)?;
                    let reports: Vec<_> = all.into_iter().map(cancellation_report).collect();
                    let ok = reports.iter().all(|r| r.passed());
                    let text = reports.iter().map(|r| r.to_string()).collect::<String>();
                    Ok(Outcome::new(
                        json!({
                            "u": word_to_json(&u),
                            "y_length": metric.distance(&u)?,
                            "truncated": truncated,
                            "factorizations": reports.iter().map(cancellation_to_json).collect::<Vec<_>>(),
                            "passed": ok,
                        }),
                        ok,
                    )
                    .with_text(text))
                }
                (None, Some(_)) => Err(Error::Invalid("--factors needs --u".into())),
                (None, None) => {
                    let metric = YMetric::new(&sub, (*max_length).max(1), cx.g.cap_nodes)?;
                    let s = check_exhaustive(&metric, *max_length, *cap)?;
                    let ok = s.violations.is_empty() && s.truncated == 0;
                    Ok(Outcome::new(
                        json!({
                            "max_length": max_length,
                            "elements": s.elements,
                            "factorizations": s.factorizations,
                            "truncated": s.truncated,
                            "violations": s.violations,
                            "passed": ok,
                        }),
                        ok,
                    ))
                }
            }
        }
        Command::Suite { name } => {
            let name: SuiteName = name.parse()?;
            let report = run_suite(name, cx.g.seed)?;
            Ok(Outcome::new(report.to_json(), report.passed()).with_text(report.to_string()))
        }
    }
}

fn model_and_seeds(model: &str, seeds: &str) -> Result<(FiniteModel, Vec<AlgebraElement<crate::groups::Permutation>>)> {
    let model = FiniteModel::named(model)?;
    let seeds: Vec<_> = read_arg(seeds)?
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_quotient_element(s, model.hom()))
        .collect::<Result<_>>()?;
    if seeds.is_empty() {
        return Err(Error::Invalid("at least one seed is required".into()));
    }
    for s in &seeds {
        for p in s.support() {
            if !model.in_subgroup(p)? {
                return Err(Error::SupportEscapesSubgroup(p.to_string()));
            }
        }
    }
    Ok((model, seeds))
}
