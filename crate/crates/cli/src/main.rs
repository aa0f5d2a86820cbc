//! Command-line front end for the invariant engines.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 resource cap.
//! Output is JSON by default (`--output text` for human-readable forms)
//! and byte-identical across identical invocations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use braidknots::braid::{self, BraidWord};
use braidknots::corpus::{self, TableTag, TaskSet};
use braidknots::homfly::{self, Caps, HomflyError};
use braidknots::semigroup;
use braidknots::sfs;
use braidknots::{alexander, cyclotomic, FamilyParams, IntPoly};

#[derive(Parser)]
#[command(
    name = "braidknots",
    version,
    about = "Exact braid-closure knot invariants and Seifert fibered L-space decisions"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate, and transform braid words
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// HOMFLY-PT polynomial of a braid closure and its normalized matrix
    Homfly(HomflyArgs),
    /// Alexander polynomial via the reduced Burau representation
    Alexander(AlexanderArgs),
    /// Formal semigroup of an L-space knot from its braid word
    Semigroup(SemigroupArgs),
    /// Cyclotomic polynomials and the roots-of-unity test
    Cyclotomic {
        #[command(subcommand)]
        op: CyclotomicOp,
    },
    /// Seifert fibered space calculus and the L-space decision
    Sfs {
        #[command(subcommand)]
        op: SfsOp,
    },
    /// The built-in two-parameter knot family
    Family {
        #[command(subcommand)]
        op: FamilyOp,
    },
    /// Census table loading, validation, and batch invariant runs
    Corpus {
        #[command(subcommand)]
        op: CorpusOp,
    },
}

#[derive(Args)]
struct WordArg {
    /// Braid word, e.g. "[2,1,3,2,-1]"
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Strand count (default: smallest index hosting the word)
    #[arg(long)]
    strands: Option<usize>,
}

impl WordArg {
    fn parse(&self) -> Result<BraidWord, CliError> {
        braid::parse_word(&self.word, self.strands).map_err(CliError::domain)
    }
}

#[derive(Subcommand)]
enum BraidOp {
    /// Parse a word and echo its canonical form
    Parse(WordArg),
    /// Letter counts, exponent sum, and sign class
    Stats(WordArg),
    /// The permutation induced by the closure
    Permutation(WordArg),
    /// Whether the closure is a knot
    IsKnot(WordArg),
    /// Delete adjacent cancelling pairs
    FreeReduce(WordArg),
    /// Conjugate by a generator: k w k^{-1}
    Conjugate {
        #[command(flatten)]
        word: WordArg,
        /// Conjugating letter (nonzero, |k| < strands)
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        by: i64,
    },
    /// Markov stabilization to one more strand
    Stabilize {
        #[command(flatten)]
        word: WordArg,
        /// Sign of the added letter
        #[arg(long, value_enum, default_value_t = StabilizeSign::Positive)]
        sign: StabilizeSign,
    },
    /// Seifert genus of a single-sign knot word
    Genus(WordArg),
}

#[derive(Clone, Copy, ValueEnum)]
enum StabilizeSign {
    Positive,
    Negative,
}

#[derive(Args)]
struct HomflyArgs {
    #[command(flatten)]
    word: WordArg,
    /// Also report the normalized coefficient matrix
    #[arg(long)]
    normalized: bool,
    /// Also report the braid-positivity obstruction
    #[arg(long)]
    obstruction: bool,
    /// Also report the Alexander specialization
    #[arg(long)]
    alexander: bool,
    /// Resource caps, e.g. "strands=8,length=150"
    #[arg(long)]
    caps: Option<String>,
}

#[derive(Args)]
struct AlexanderArgs {
    #[command(flatten)]
    word: WordArg,
    /// Compute through the HOMFLY specialization instead of Burau
    #[arg(long)]
    via_homfly: bool,
    /// Also print the reduced Burau matrix
    #[arg(long)]
    matrix: bool,
    /// Also run the L-space coefficient-shape check
    #[arg(long)]
    form_check: bool,
    /// Also report monicity
    #[arg(long)]
    monic: bool,
    /// Caps for the HOMFLY route
    #[arg(long)]
    caps: Option<String>,
}

#[derive(Args)]
struct SemigroupArgs {
    #[command(flatten)]
    word: WordArg,
}

#[derive(Subcommand)]
enum CyclotomicOp {
    /// The d-th cyclotomic polynomial
    Phi {
        #[arg(short, long)]
        d: u64,
    },
    /// Peel all cyclotomic factors off a polynomial
    Factor(PolyInput),
    /// Decide whether all roots are roots of unity
    Unity(PolyInput),
}

#[derive(Args)]
struct PolyInput {
    /// Polynomial as JSON {"min_degree": d, "coefficients": [...]}
    #[arg(long, conflicts_with = "word")]
    poly: Option<String>,
    /// Braid word whose Alexander polynomial to use
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
}

#[derive(Subcommand)]
enum SfsOp {
    /// Decide L-space status of "e0;p1/q1,p2/q2,p3/q3"
    Decide {
        #[arg(allow_hyphen_values = true)]
        data: String,
    },
    /// Canonical form: fibers folded into (0,1), sorted descending
    Normalize {
        #[arg(allow_hyphen_values = true)]
        data: String,
    },
    /// Orientation reversal -M
    Reverse {
        #[arg(allow_hyphen_values = true)]
        data: String,
    },
    /// Whether the space carries no positive transverse contact structure
    Ptcs {
        #[arg(allow_hyphen_values = true)]
        data: String,
    },
    /// Evaluate a negative continued fraction "[a1,...,ak]"
    Montesinos {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
}

#[derive(Args)]
struct FamilyParamsArg {
    /// Family index n >= 0
    #[arg(short)]
    n: i64,
    /// Family twist m
    #[arg(short, allow_hyphen_values = true)]
    m: i64,
}

impl FamilyParamsArg {
    fn params(&self) -> FamilyParams {
        FamilyParams::new(self.n, self.m)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlexRoute {
    Closed,
    Link,
    Burau,
    All,
}

#[derive(Subcommand)]
enum FamilyOp {
    /// The braid word of K_{n,m}
    Braid(FamilyParamsArg),
    /// Alexander polynomial of K_{n,m}
    Alexander {
        #[command(flatten)]
        params: FamilyParamsArg,
        /// closed form, link-polynomial route, Burau on the word, or all
        #[arg(long, value_enum, default_value_t = AlexRoute::Closed)]
        route: AlexRoute,
        /// Also run the L-space coefficient-shape check
        #[arg(long)]
        form_check: bool,
    },
    /// Surgery description of (8n+6-4m)-surgery on K_{n,m}
    Surgery {
        #[command(flatten)]
        params: FamilyParamsArg,
        /// Also decide L-space status
        #[arg(long)]
        decide: bool,
    },
    /// Formal semigroup of K_{n,m} from the closed-form polynomial
    Semigroup(FamilyParamsArg),
    /// Normalized HOMFLY matrix and obstruction for K_{n,m}
    Homfly {
        #[command(flatten)]
        params: FamilyParamsArg,
        #[arg(long)]
        caps: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Lspace,
    NonLspace,
}

impl TableArg {
    fn tag(self) -> TableTag {
        match self {
            TableArg::Lspace => TableTag::LSpace,
            TableArg::NonLspace => TableTag::NonLSpace,
        }
    }
}

#[derive(Subcommand)]
enum CorpusOp {
    /// Parse a table file and echo entry count and names
    Load {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TableArg::Lspace)]
        table: TableArg,
    },
    /// Sign classes and knot-closure checks for every entry
    Classify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TableArg::Lspace)]
        table: TableArg,
    },
    /// Batch invariants over a table
    Scan {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TableArg::Lspace)]
        table: TableArg,
        /// Comma-separated subset of alexander,semigroup,cyclotomic,genus,homfly
        #[arg(long)]
        tasks: String,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        caps: Option<String>,
    },
}

// ----------------------------------------------------------------------

enum CliError {
    Domain(String),
    Resource(String),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn homfly_error(e: HomflyError) -> CliError {
    match e {
        HomflyError::StrandCap { .. } | HomflyError::LengthCap { .. } => {
            CliError::Resource(e.to_string())
        }
        other => CliError::Domain(other.to_string()),
    }
}

fn parse_caps(text: &Option<String>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    let Some(text) = text else { return Ok(caps) };
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((key, value)) = part.split_once('=') else {
            return Err(CliError::Domain(format!(
                "bad caps entry {part:?}: expected strands=N or length=N"
            )));
        };
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| CliError::Domain(format!("bad caps value in {part:?}")))?;
        match key.trim() {
            "strands" => caps.max_strands = value,
            "length" => caps.max_length = value,
            other => return Err(CliError::Domain(format!("unknown caps key {other:?}"))),
        }
    }
    Ok(caps)
}

fn parse_poly_json(text: &str) -> Result<IntPoly, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Domain(format!("bad polynomial JSON: {e}")))?;
    let min_degree = value
        .get("min_degree")
        .and_then(Value::as_i64)
        .ok_or_else(|| CliError::Domain("polynomial JSON needs integer min_degree".into()))?;
    let coeffs = value
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Domain("polynomial JSON needs a coefficients array".into()))?;
    let mut parsed = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let as_int = match c {
            Value::Number(n) => n.as_i64().map(braidknots::Int::from),
            Value::String(s) => s.parse::<braidknots::Int>().ok(),
            _ => None,
        };
        parsed.push(
            as_int.ok_or_else(|| {
                CliError::Domain(format!("bad coefficient {c} in polynomial JSON"))
            })?,
        );
    }
    Ok(IntPoly::from_coeffs(min_degree, parsed))
}

impl PolyInput {
    fn resolve(&self) -> Result<IntPoly, CliError> {
        match (&self.poly, &self.word) {
            (Some(text), _) => parse_poly_json(text),
            (None, Some(word)) => {
                let word = braid::parse_word(word, self.strands).map_err(CliError::domain)?;
                alexander::alexander(&word).map_err(CliError::domain)
            }
            (None, None) => Err(CliError::Domain("provide --poly JSON or --word".into())),
        }
    }
}

fn alexander_json(delta: &IntPoly) -> Value {
    json!({
        "polynomial": delta.to_json(),
        "text": delta.to_text(),
        "genus": delta.max_degree().unwrap_or(0),
    })
}

fn parse_tuple(text: &str) -> Result<Vec<i64>, CliError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    let mut out = Vec::new();
    for token in inner.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        out.push(
            token
                .parse::<i64>()
                .map_err(|_| CliError::Domain(format!("bad tuple entry {token:?}")))?,
        );
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<(Value, Option<String>), CliError> {
    match &cli.command {
        Command::Braid { op } => run_braid(op),
        Command::Homfly(args) => run_homfly(args),
        Command::Alexander(args) => run_alexander(args),
        Command::Semigroup(args) => run_semigroup(args),
        Command::Cyclotomic { op } => run_cyclotomic(op),
        Command::Sfs { op } => run_sfs(op),
        Command::Family { op } => run_family(op),
        Command::Corpus { op } => run_corpus(op),
    }
}

fn run_braid(op: &BraidOp) -> Result<(Value, Option<String>), CliError> {
    let out = match op {
        BraidOp::Parse(arg) => {
            let w = arg.parse()?;
            json!({ "word": braid::format_word(&w), "strands": w.strands(), "length": w.len() })
        }
        BraidOp::Stats(arg) => {
            let s = arg.parse()?.stats();
            json!({
                "length": s.length,
                "positive_count": s.positive_count,
                "negative_count": s.negative_count,
                "exponent_sum": s.exponent_sum,
                "sign_class": s.sign_class.as_str(),
            })
        }
        BraidOp::Permutation(arg) => {
            let w = arg.parse()?;
            let perm = w.closure_permutation();
            json!({
                "permutation": perm,
                "cycle_type": braid::cycle_type(&perm),
                "is_knot": w.is_knot(),
            })
        }
        BraidOp::IsKnot(arg) => json!({ "is_knot": arg.parse()?.is_knot() }),
        BraidOp::FreeReduce(arg) => {
            let reduced = arg.parse()?.free_reduce();
            json!({ "word": braid::format_word(&reduced), "length": reduced.len() })
        }
        BraidOp::Conjugate { word, by } => {
            let conjugated = word.parse()?.conjugate(*by).map_err(CliError::domain)?;
            json!({ "word": braid::format_word(&conjugated), "strands": conjugated.strands() })
        }
        BraidOp::Stabilize { word, sign } => {
            let stabilized = word
                .parse()?
                .stabilize(matches!(sign, StabilizeSign::Positive));
            json!({ "word": braid::format_word(&stabilized), "strands": stabilized.strands() })
        }
        BraidOp::Genus(arg) => {
            json!({ "genus": arg.parse()?.bennequin_genus().map_err(CliError::domain)? })
        }
    };
    Ok((out, None))
}

fn run_homfly(args: &HomflyArgs) -> Result<(Value, Option<String>), CliError> {
    let word = args.word.parse()?;
    let caps = parse_caps(&args.caps)?;
    let poly = homfly::homfly(&word, &caps).map_err(homfly_error)?;
    let mut out = json!({
        "homfly": poly.to_json(),
        "is_knot": word.is_knot(),
    });
    if args.normalized || args.obstruction {
        let (normalized, mirrored) = homfly::ito_matrix(&word, &caps).map_err(homfly_error)?;
        out["normalized"] = normalized.to_json();
        out["mirrored"] = json!(mirrored);
        if args.obstruction {
            let obstruction = homfly::braid_positivity_obstruction(&normalized);
            out["obstruction"] = json!({
                "obstructed": obstruction.obstructed,
                "witnesses": obstruction.witnesses.iter()
                    .map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            });
        }
    }
    if args.alexander {
        let delta = homfly::alexander_from_homfly(&poly).map_err(homfly_error)?;
        out["alexander"] = alexander_json(&delta);
    }
    Ok((out, None))
}

fn run_alexander(args: &AlexanderArgs) -> Result<(Value, Option<String>), CliError> {
    let word = args.word.parse()?;
    let delta = if args.via_homfly {
        let caps = parse_caps(&args.caps)?;
        let poly = homfly::homfly(&word, &caps).map_err(homfly_error)?;
        homfly::alexander_from_homfly(&poly).map_err(homfly_error)?
    } else {
        alexander::alexander(&word).map_err(CliError::domain)?
    };
    let mut out = alexander_json(&delta);
    if args.matrix {
        let burau = alexander::reduced_burau::<braidknots::Int>(&word).map_err(CliError::domain)?;
        out["burau"] = json!(burau
            .rows()
            .iter()
            .map(|row| row.iter().map(|p| p.to_json()).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    if args.form_check {
        out["form_check"] = form_check_json(&delta);
    }
    if args.monic {
        out["monic"] = json!(alexander::is_monic(&delta));
    }
    Ok((out, Some(delta.to_text())))
}

fn form_check_json(delta: &IntPoly) -> Value {
    let report = alexander::lspace_form_check(delta);
    json!({
        "passes": report.passes,
        "reason": report.reason.as_str(),
        "offending_degree": report.offending_degree,
    })
}

fn semigroup_json(delta: &IntPoly) -> Result<Value, CliError> {
    let s = semigroup::formal_semigroup(delta).map_err(CliError::domain)?;
    let (closed, witness) = semigroup::is_semigroup(&s);
    let generators = if closed {
        Some(semigroup::minimal_generators(&s).map_err(CliError::domain)?)
    } else {
        None
    };
    let mut out = s.to_json();
    out["is_semigroup"] = json!(closed);
    out["witness"] = witness.map(|(a, b)| json!([a, b])).unwrap_or(Value::Null);
    out["generators"] = generators.map(|g| json!(g)).unwrap_or(Value::Null);
    Ok(out)
}

fn run_semigroup(args: &SemigroupArgs) -> Result<(Value, Option<String>), CliError> {
    let word = args.word.parse()?;
    let delta = alexander::alexander(&word).map_err(CliError::domain)?;
    let report = alexander::lspace_form_check(&delta);
    if !report.passes {
        return Err(CliError::Domain(format!(
            "Alexander polynomial is not in L-space form: {}",
            report.reason.as_str()
        )));
    }
    Ok((semigroup_json(&delta)?, None))
}

fn run_cyclotomic(op: &CyclotomicOp) -> Result<(Value, Option<String>), CliError> {
    let out = match op {
        CyclotomicOp::Phi { d } => {
            if *d == 0 {
                return Err(CliError::Domain("d must be positive".into()));
            }
            let phi = cyclotomic::cyclotomic_poly(*d);
            json!({ "d": d, "phi": phi.to_json(), "text": phi.to_text() })
        }
        CyclotomicOp::Factor(input) => {
            let p = input.resolve()?;
            if p.is_zero() {
                return Err(CliError::Domain("cannot factor the zero polynomial".into()));
            }
            cyclotomic::factor_cyclotomic(&p).to_json()
        }
        CyclotomicOp::Unity(input) => {
            let p = input.resolve()?;
            if p.is_zero() {
                return Err(CliError::Domain("zero polynomial has no root set".into()));
            }
            json!({ "all_roots_of_unity": cyclotomic::all_roots_of_unity(&p) })
        }
    };
    Ok((out, None))
}

fn run_sfs(op: &SfsOp) -> Result<(Value, Option<String>), CliError> {
    let out = match op {
        SfsOp::Decide { data } => {
            let s = sfs::parse_seifert(data).map_err(CliError::domain)?;
            let verdict = sfs::decide_lspace(&s).map_err(CliError::domain)?;
            verdict.to_json()
        }
        SfsOp::Normalize { data } => {
            let s = sfs::parse_seifert(data)
                .map_err(CliError::domain)?
                .normalize();
            let mut v = s.to_json();
            v["display"] = json!(s.to_string());
            v
        }
        SfsOp::Reverse { data } => {
            let s = sfs::parse_seifert(data)
                .map_err(CliError::domain)?
                .orientation_reverse();
            let mut v = s.to_json();
            v["display"] = json!(s.to_string());
            v
        }
        SfsOp::Ptcs { data } => {
            let s = sfs::parse_seifert(data)
                .map_err(CliError::domain)?
                .normalize();
            if s.fibers.len() < 3 {
                return Err(CliError::Domain(format!(
                    "the contact-structure search needs 3 exceptional fibers; {s} is a lens \
                     space, use `sfs decide`"
                )));
            }
            let (no_ptcs, witness) = sfs::no_ptcs(&s).map_err(CliError::domain)?;
            json!({
                "no_ptcs": no_ptcs,
                "witness": witness.map(|(a, q)| json!([a.to_string(), q.to_string()])),
            })
        }
        SfsOp::Montesinos { tuple } => {
            let coeffs = parse_tuple(tuple)?;
            let value = sfs::neg_cont_frac(&coeffs).map_err(CliError::domain)?;
            json!({ "value": value.to_string() })
        }
    };
    Ok((out, None))
}

fn run_family(op: &FamilyOp) -> Result<(Value, Option<String>), CliError> {
    match op {
        FamilyOp::Braid(params) => {
            let word = braid::family_braid(params.params()).map_err(CliError::domain)?;
            Ok((
                json!({
                    "word": braid::format_word(&word),
                    "strands": word.strands(),
                    "length": word.len(),
                    "is_knot": word.is_knot(),
                }),
                None,
            ))
        }
        FamilyOp::Alexander {
            params,
            route,
            form_check,
        } => {
            let p = params.params();
            let closed = || alexander::family_alexander_closed(p).map_err(CliError::domain);
            let link = || alexander::family_alexander_via_link(p).map_err(CliError::domain);
            let burau = || {
                let word = braid::family_braid(p).map_err(CliError::domain)?;
                alexander::alexander(&word).map_err(CliError::domain)
            };
            let (delta, agree) = match route {
                AlexRoute::Closed => (closed()?, None),
                AlexRoute::Link => (link()?, None),
                AlexRoute::Burau => (burau()?, None),
                AlexRoute::All => {
                    let (c, l, b) = (closed()?, link()?, burau()?);
                    let agree = c == l && l == b;
                    (c, Some(agree))
                }
            };
            let mut out = alexander_json(&delta);
            if let Some(agree) = agree {
                out["routes_agree"] = json!(agree);
            }
            if *form_check {
                out["form_check"] = form_check_json(&delta);
            }
            Ok((out, Some(delta.to_text())))
        }
        FamilyOp::Surgery { params, decide } => {
            let surgery = sfs::family_surgery(params.params()).map_err(CliError::domain)?;
            let mut out = surgery.data.to_json();
            out["display"] = json!(surgery.data.to_string());
            out["coefficient"] = json!(surgery.coefficient);
            if *decide {
                let verdict = sfs::decide_lspace(&surgery.data).map_err(CliError::domain)?;
                out["verdict"] = verdict.to_json();
            }
            Ok((out, None))
        }
        FamilyOp::Semigroup(params) => {
            let delta =
                alexander::family_alexander_closed(params.params()).map_err(CliError::domain)?;
            let report = alexander::lspace_form_check(&delta);
            if !report.passes {
                return Err(CliError::Domain(format!(
                    "K_{{{},{}}} is not in L-space form: {}",
                    params.n,
                    params.m,
                    report.reason.as_str()
                )));
            }
            Ok((semigroup_json(&delta)?, None))
        }
        FamilyOp::Homfly { params, caps } => {
            let word = braid::family_braid(params.params()).map_err(CliError::domain)?;
            let caps = parse_caps(caps)?;
            let (normalized, mirrored) = homfly::ito_matrix(&word, &caps).map_err(homfly_error)?;
            let obstruction = homfly::braid_positivity_obstruction(&normalized);
            Ok((
                json!({
                    "normalized": normalized.to_json(),
                    "mirrored": mirrored,
                    "obstruction": {
                        "obstructed": obstruction.obstructed,
                        "witnesses": obstruction.witnesses.iter()
                            .map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                    },
                }),
                None,
            ))
        }
    }
}

fn run_corpus(op: &CorpusOp) -> Result<(Value, Option<String>), CliError> {
    match op {
        CorpusOp::Load { file, table } => {
            let entries = corpus::load_corpus(file, table.tag()).map_err(CliError::domain)?;
            Ok((
                json!({
                    "file": file.display().to_string(),
                    "table": table.tag().as_str(),
                    "entries": entries.len(),
                    "names": entries.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
                }),
                None,
            ))
        }
        CorpusOp::Classify { file, table } => {
            let entries = corpus::load_corpus(file, table.tag()).map_err(CliError::domain)?;
            let report = corpus::classify(&entries);
            let text = report
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "{}\t{}\t{}",
                        r.name,
                        r.sign_class.as_str(),
                        if r.is_knot { "knot" } else { "link" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok((report.to_json(), Some(text)))
        }
        CorpusOp::Scan {
            file,
            table,
            tasks,
            jobs,
            caps,
        } => {
            let entries = corpus::load_corpus(file, table.tag()).map_err(CliError::domain)?;
            let tasks = TaskSet::parse(tasks).map_err(CliError::Domain)?;
            let caps = parse_caps(caps)?;
            let report = corpus::batch_invariants(&entries, &tasks, &caps, *jobs);
            let text = report.to_text();
            Ok((report.to_json(), Some(text)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text)) => {
            match cli.output {
                Output::Json => println!("{value}"),
                Output::Text => match text {
                    Some(text) => println!("{text}"),
                    None => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
                },
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Resource(message)) => {
            eprintln!("resource cap: {message}");
            ExitCode::from(3)
        }
    }
}
