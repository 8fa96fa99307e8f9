//! Command-line front end for dendrikit.
//!
//! Exit codes: `0` success or passing verification, `1` failing
//! verification, `2` usage or resource errors.

pub mod literal;

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_traits::{One, Signed};
use serde_json::{json, Value};

use dendrikit::linalg::{Element, TensorElement};
use dendrikit::ncqsym::{coproduct, mm_of_tree, product};
use dendrikit::polyoracle::{expand_element, poly_op, NcPolynomial};
use dendrikit::qsym::qsym_product;
use dendrikit::serial::{
    element_to_doc, format_coeff, format_element, polynomial_to_doc, tensor_to_doc, Basis, BasisKey,
};
use dendrikit::sylvester::{sylv_class_with, SylvesterTable};
use dendrikit::tits::tits_product;
use dendrikit::trees::tree_of_word;
use dendrikit::verify::{
    hilbert, run_suite, HilbertObject, Report, Suite, SuiteOptions, DEFAULT_SEED,
};
use dendrikit::words::{detass, pack, parking_fiber};
use dendrikit::{Error, Limits, NcqElement, PackedWord, TriOp, Word};

pub use literal::{parse_element, Literal};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Degree used by `hilbert` when `--max-degree` is not given.
pub const DEFAULT_HILBERT_DEGREE: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Debug, Parser)]
#[command(name = "dendrikit", version, about = "Packed-word trialgebra toolkit")]
pub struct Cli {
    /// Degree bound for enumerations and verification sweeps.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Maximum number of counterexamples to print.
    #[arg(long, global = true, default_value_t = 20)]
    pub limit: usize,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include wall-clock time in verification reports.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Test hook: verify axioms against a wrong structure constant.
    #[arg(long, global = true, hide = true)]
    pub corrupt_structure_constants: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pack a word: replace each letter by its rank among the letters used.
    Pack { word: String },
    /// The distinguished parking unpacking of a packed word.
    Detass { word: String },
    /// All parking words that pack to a packed word.
    Fiber { word: String },
    /// The plane tree of a nonempty word.
    Tree { word: String },
    /// Product of two element literals.
    Mul {
        #[arg(long, default_value = "full")]
        op: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Coproduct of an element literal.
    Coproduct {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Expand an element literal over a finite alphabet.
    Expand {
        #[arg(long)]
        alphabet: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Face product of two packed words of equal length.
    Tits { u: String, v: String },
    /// Sylvester class of a word.
    SylvClass { word: String },
    /// Graded dimensions of T, NCQSYM, SYL or TREES.
    Hilbert { object: String },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut warnings = Vec::new();
    let result = pool.install(|| execute(&cli, &mut warnings));
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    Ok(s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .parse()?)
}

fn parse_packed(s: &str) -> Result<PackedWord, CliError> {
    Ok(PackedWord::try_from(parse_word(s)?)?)
}

fn letters_json<K: BasisKey>(k: &K) -> Value {
    k.to_json()
}

/// Converts `M`, `MM` and `SYL` literals to the `M` basis.
fn to_m(lit: &Literal) -> Result<NcqElement, CliError> {
    match lit {
        Literal::M(x) | Literal::SYL(x) => Ok(x.clone()),
        Literal::MM(x) => {
            let mut out = Element::zero();
            for (t, c) in x.iter() {
                out.add_scaled(&mm_of_tree(t)?, c);
            }
            Ok(out)
        }
        other => Err(CliError::Usage(format!(
            "this command takes M, MM or SYL literals, not {}",
            other.basis()
        ))),
    }
}

fn max_len<K>(x: &Element<K>, len: impl Fn(&K) -> usize) -> usize
where
    K: Ord + Clone,
{
    x.keys().map(len).max().unwrap_or(0)
}

fn element_output<K: BasisKey>(json: bool, basis: Basis, x: &Element<K>) -> String {
    if json {
        let mut s = element_to_doc(basis, x).to_json_string();
        s.push('\n');
        s
    } else {
        format!("{}\n", format_element(basis, x))
    }
}

fn format_tensor(x: &TensorElement<PackedWord>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, ((a, b), c)) in x.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let abs = c.abs();
        if !abs.is_one() {
            s.push_str(&format_coeff(&abs));
            s.push('*');
        }
        s.push_str(&format!("M[{a}] ⊗ M[{b}]"));
    }
    s
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> Result<(String, i32), CliError> {
    let limits = Limits::global();
    let json = cli.json;
    let checked_len = |n: usize| -> Result<(), CliError> {
        limits.check(n)?;
        if let Some(m) = cli.max_degree {
            Limits::new(m).check(n)?;
        }
        Ok(())
    };
    let text = match &cli.command {
        Command::Pack { word } => {
            let u = pack(&parse_word(word)?);
            if json {
                json_line(&letters_json(&u))
            } else {
                format!("{u}\n")
            }
        }
        Command::Detass { word } => {
            let u = parse_packed(word)?;
            let d = detass(&u)?;
            if json {
                json_line(&Value::from(d.letters().to_vec()))
            } else {
                format!("{d}\n")
            }
        }
        Command::Fiber { word } => {
            let u = parse_packed(word)?;
            checked_len(u.len())?;
            let fiber = parking_fiber(&u);
            if json {
                let v: Vec<Value> = fiber
                    .iter()
                    .map(|a| Value::from(a.letters().to_vec()))
                    .collect();
                json_line(&v)
            } else {
                fiber.iter().map(|a| format!("{a}\n")).collect()
            }
        }
        Command::Tree { word } => {
            let t = tree_of_word(&parse_word(word)?)?;
            if json {
                json_line(&Value::from(t.to_string()))
            } else {
                format!("{t}\n")
            }
        }
        Command::Mul { op, x, y } => {
            let op: TriOp = op.parse()?;
            let (lx, ly) = (parse_element(x)?, parse_element(y)?);
            if lx.basis() != ly.basis() {
                return Err(CliError::Usage(format!(
                    "operands use different bases {} and {}",
                    lx.basis(),
                    ly.basis()
                )));
            }
            match (&lx, &ly) {
                (Literal::QM(a), Literal::QM(b)) => {
                    if op != TriOp::Full {
                        return Err(CliError::Usage("QM supports only --op full".into()));
                    }
                    element_output(json, Basis::QM, &qsym_product(a, b))
                }
                (Literal::Word(a), Literal::Word(b)) => {
                    let n = max_letter(a).max(max_letter(b)).max(1);
                    let p = NcPolynomial::new(n, a.clone())?;
                    let q = NcPolynomial::new(n, b.clone())?;
                    let r = poly_op(op, &p, &q)?;
                    if json {
                        json_line(&polynomial_to_doc(&r))
                    } else {
                        format!("{}\n", format_element(Basis::Word, r.terms()))
                    }
                }
                (Literal::SYL(_), _) => {
                    let (a, b) = (to_m(&lx)?, to_m(&ly)?);
                    let deg = max_len(&a, PackedWord::len) + max_len(&b, PackedWord::len);
                    checked_len(deg)?;
                    let table = SylvesterTable::up_to_with(deg, &limits)?;
                    let z =
                        table.project(&product(op, &table.project(&a)?, &table.project(&b)?)?)?;
                    element_output(json, Basis::SYL, &z)
                }
                _ => {
                    let (a, b) = (to_m(&lx)?, to_m(&ly)?);
                    element_output(json, Basis::M, &product(op, &a, &b)?)
                }
            }
        }
        Command::Coproduct { x } => {
            let d = coproduct(&to_m(&parse_element(x)?)?);
            if json {
                json_line(&tensor_to_doc(Basis::M, &d))
            } else {
                format!("{}\n", format_tensor(&d))
            }
        }
        Command::Expand { alphabet, x } => {
            let a = to_m(&parse_element(x)?)?;
            checked_len(max_len(&a, PackedWord::len))?;
            let p = expand_element(&a, *alphabet);
            if json {
                json_line(&polynomial_to_doc(&p))
            } else {
                format!("{}\n", format_element(Basis::Word, p.terms()))
            }
        }
        Command::Tits { u, v } => {
            let w = tits_product(&parse_packed(u)?, &parse_packed(v)?)?;
            if json {
                json_line(&letters_json(&w))
            } else {
                format!("{w}\n")
            }
        }
        Command::SylvClass { word } => {
            let w = parse_word(word)?;
            checked_len(w.len())?;
            let class = sylv_class_with(&w, &limits)?;
            if json {
                let members: Vec<Value> = class.members.iter().map(letters_json).collect();
                json_line(&json!({
                    "representative": letters_json(&class.representative),
                    "members": members,
                }))
            } else {
                let mut s = format!("representative {}\n", class.representative);
                for m in &class.members {
                    s.push_str(&format!("{m}\n"));
                }
                s
            }
        }
        Command::Hilbert { object } => {
            let obj: HilbertObject = object.parse()?;
            let n = cli.max_degree.unwrap_or(DEFAULT_HILBERT_DEGREE);
            let seq = hilbert(obj, n, &limits)?;
            if json {
                json_line(&json!({
                    "object": obj.name(),
                    "max_degree": n,
                    "sequence": seq,
                }))
            } else {
                json_line(&seq)
            }
        }
        Command::Verify { suite } => return verify(cli, suite, warnings),
    };
    Ok((text, EXIT_PASS))
}

fn max_letter(x: &Element<Word>) -> u32 {
    x.keys()
        .flat_map(|w| w.letters().iter().copied())
        .max()
        .unwrap_or(0)
}

fn verify(cli: &Cli, suite: &str, warnings: &mut Vec<String>) -> Result<(String, i32), CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let opts = SuiteOptions {
        max_degree: cli.max_degree,
        seed: cli.seed,
        limit: cli.limit,
        corrupt: cli.corrupt_structure_constants,
        ..SuiteOptions::default()
    };
    let mut reports: Vec<Report> = Vec::new();
    for s in suites {
        if let Some(m) = cli.max_degree {
            if m > s.default_degree() {
                warnings.push(format!(
                    "{s} at degree {m} exceeds the default {}; this may take a long time",
                    s.default_degree()
                ));
            }
        }
        let start = Instant::now();
        let mut r = run_suite(s, &opts)?;
        if cli.timing {
            r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    let text = if cli.json {
        if reports.len() == 1 {
            json_line(&reports[0])
        } else {
            json_line(&reports)
        }
    } else {
        reports.iter().map(report_text).collect()
    };
    Ok((text, if pass { EXIT_PASS } else { EXIT_FAIL }))
}

fn report_text(r: &Report) -> String {
    let params: Vec<String> = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut s = format!(
        "{}: {} ({} checks; {})\n",
        r.suite,
        if r.pass { "PASS" } else { "FAIL" },
        r.checked,
        params.join(", ")
    );
    for (k, v) in &r.results {
        s.push_str(&format!("  {k}: {v}\n"));
    }
    if !r.pass {
        s.push_str(&format!("  {} counterexamples", r.counterexample_count));
        if r.counterexamples.len() < r.counterexample_count {
            s.push_str(&format!(", first {}", r.counterexamples.len()));
        }
        s.push_str(":\n");
        for c in &r.counterexamples {
            s.push_str(&format!("    {c}\n"));
        }
    }
    if let Some(ms) = r.elapsed_ms {
        s.push_str(&format!("  elapsed: {ms} ms\n"));
    }
    s
}
