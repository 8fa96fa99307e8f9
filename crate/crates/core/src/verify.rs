//! Verification suites.
//!
//! Each suite sweeps a family of identities exhaustively over basis keys up
//! to a degree bound (plus seeded random samples where noted) and returns a
//! [`Report`]. Work is spread over the current rayon pool; counterexamples
//! are sorted and deduplicated before truncation, so a report depends only
//! on its parameters and never on the number of workers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{bilinear, int, rank_of_span, ratio, EchelonBasis, Element};
use crate::ncqsym::{
    abelianize, coproduct, counit, mm_coordinates_with, product, product_keys, tensor_product,
    FreeTrialgebra, NcqElement, TriOp,
};
use crate::polyoracle::{oracle_product, poly_op, NcPolynomial};
use crate::qsym::{qsym_product, QSymElement};
use crate::serial::{format_element, Basis};
use crate::sylvester::SylvesterTable;
use crate::tits::{face_compose, identity, tits_product};
use crate::trees::{enumerate_trees_with, fibers_by_tree_with};
use crate::words::{
    detass, detass_by_fiber, enumerate_packed_with, is_parking, pack, parking_fiber, to_osp,
    Composition, Letter, PackedWord, Word,
};

/// Little Schröder numbers for degrees `1..=8`.
pub const LITTLE_SCHRODER: [usize; 8] = [1, 3, 11, 45, 197, 903, 4279, 20793];

pub const DEFAULT_SEED: u64 = 20_061_016;
pub const DEFAULT_RANDOM_SAMPLES: usize = 200;
pub const RANDOM_TOTAL_DEGREE: usize = 8;
pub const WORD_AXIOM_SAMPLES: usize = 1000;

/// Ordered Bell numbers by the recurrence `a(n) = Σ_{k≥1} C(n,k) a(n−k)`.
pub fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![1u64];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut s = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            s += binom * a[m - k];
        }
        a.push(s);
    }
    a[n]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Oracle,
    Hopf,
    Tits,
    Sylvester,
    Parking,
    Qsym,
    Free,
    Dimensions,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Free,
        Suite::Dimensions,
        Suite::Oracle,
        Suite::Hopf,
        Suite::Qsym,
        Suite::Tits,
        Suite::Sylvester,
        Suite::Parking,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Oracle => "oracle",
            Suite::Hopf => "hopf",
            Suite::Tits => "tits",
            Suite::Sylvester => "sylvester",
            Suite::Parking => "parking",
            Suite::Qsym => "qsym",
            Suite::Free => "free",
            Suite::Dimensions => "dimensions",
        }
    }

    pub fn default_degree(self) -> usize {
        match self {
            Suite::Axioms | Suite::Sylvester | Suite::Free | Suite::Dimensions => 6,
            Suite::Oracle | Suite::Hopf | Suite::Tits | Suite::Parking | Suite::Qsym => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("unknown suite {s:?}"),
            })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_degree: Option<usize>,
    pub seed: u64,
    pub random_samples: usize,
    /// Maximum number of counterexamples kept in the report.
    pub limit: usize,
    /// Test hook: run the axiom sweep against a deliberately wrong product.
    pub corrupt: bool,
    pub limits: Limits,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_degree: None,
            seed: DEFAULT_SEED,
            random_samples: DEFAULT_RANDOM_SAMPLES,
            limit: 20,
            corrupt: false,
            limits: Limits::global(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub pass: bool,
    pub checked: u64,
    pub counterexample_count: usize,
    pub counterexamples: Vec<String>,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Running totals of one sweep.
#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }

    fn sweep<T: Sync>(&mut self, items: &[T], f: impl Fn(&T, &mut Tally) + Sync + Send) {
        let t = items
            .par_iter()
            .map(|item| {
                let mut t = Tally::default();
                f(item, &mut t);
                t
            })
            .reduce(Tally::default, Tally::merge);
        *self = std::mem::take(self).merge(t);
    }
}

struct ReportBuilder {
    suite: Suite,
    parameters: BTreeMap<String, Value>,
    results: BTreeMap<String, Value>,
    tally: Tally,
}

impl ReportBuilder {
    fn new(suite: Suite, degree: usize) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("max_degree".to_string(), Value::from(degree));
        ReportBuilder {
            suite,
            parameters,
            results: BTreeMap::new(),
            tally: Tally::default(),
        }
    }

    fn param(&mut self, k: &str, v: impl Into<Value>) {
        self.parameters.insert(k.to_string(), v.into());
    }

    fn result(&mut self, k: &str, v: impl Into<Value>) {
        self.results.insert(k.to_string(), v.into());
    }

    fn finish(self, limit: usize) -> Report {
        let mut failures = self.tally.failures;
        failures.sort();
        failures.dedup();
        let count = failures.len();
        failures.truncate(limit.max(1));
        Report {
            suite: self.suite.name().to_string(),
            parameters: self.parameters,
            pass: count == 0,
            checked: self.tally.checked,
            counterexample_count: count,
            counterexamples: failures,
            results: self.results,
            elapsed_ms: None,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Report> {
    let degree = opts.max_degree.unwrap_or(suite.default_degree());
    opts.limits.check(degree)?;
    match suite {
        Suite::Axioms => axioms_suite(degree, opts),
        Suite::Oracle => oracle_suite(degree, opts),
        Suite::Hopf => hopf_suite(degree, opts),
        Suite::Tits => tits_suite(degree, opts),
        Suite::Sylvester => sylvester_suite(degree, opts),
        Suite::Parking => parking_suite(degree, opts),
        Suite::Qsym => qsym_suite(degree, opts),
        Suite::Free => free_suite(degree, opts),
        Suite::Dimensions => dimensions_suite(degree, opts),
    }
}

fn m_text(x: &NcqElement) -> String {
    format_element(Basis::M, x)
}

fn packed_by_degree(max: usize, limits: &Limits) -> Result<Vec<Vec<PackedWord>>> {
    (0..=max)
        .map(|n| enumerate_packed_with(n, limits))
        .collect()
}

/// Nonempty packed-word pairs with total degree at most `max`.
fn pairs_up_to(by_degree: &[Vec<PackedWord>], max: usize) -> Vec<(PackedWord, PackedWord)> {
    let mut out = Vec::new();
    for a in 1..max {
        for b in 1..=max - a {
            for u in &by_degree[a] {
                for v in &by_degree[b] {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Trialgebra axioms

/// A provider of the four products on the `M` basis.
pub trait TrialgebraOps: Sync {
    fn apply(&self, op: TriOp, x: &NcqElement, y: &NcqElement) -> NcqElement;
}

/// The packed-word realization.
pub struct PackedWordOps;

impl TrialgebraOps for PackedWordOps {
    fn apply(&self, op: TriOp, x: &NcqElement, y: &NcqElement) -> NcqElement {
        product(op, x, y).expect("axiom sweeps use positive-degree operands")
    }
}

/// The realization with one structure constant removed: `M_1 ≺ M_1 = 0`.
pub struct CorruptedOps;

impl TrialgebraOps for CorruptedOps {
    fn apply(&self, op: TriOp, x: &NcqElement, y: &NcqElement) -> NcqElement {
        bilinear(
            |u: &PackedWord, v: &PackedWord| {
                let unit_pair = u.letters() == [1] && v.letters() == [1];
                if unit_pair && matches!(op, TriOp::Prec | TriOp::Full) {
                    let keep = |w: &PackedWord| w.letters() != [2, 1];
                    return Element::sum_of(product_keys(u, v, op).into_iter().filter(keep));
                }
                Element::sum_of(product_keys(u, v, op))
            },
            x,
            y,
        )
    }
}

/// Names of the identities that fail on `(x, y, z)`. The first seven are
/// the trialgebra axioms; the last is associativity of the full product.
pub fn axiom_failures<E: PartialEq>(
    x: &E,
    y: &E,
    z: &E,
    op: impl Fn(TriOp, &E, &E) -> E,
) -> Vec<&'static str> {
    use TriOp::*;
    let mut bad = Vec::new();
    let mut check = |name: &'static str, lhs: E, rhs: E| {
        if lhs != rhs {
            bad.push(name);
        }
    };
    check(
        "circ-assoc (x∘y)∘z = x∘(y∘z)",
        op(Circ, &op(Circ, x, y), z),
        op(Circ, x, &op(Circ, y, z)),
    );
    check(
        "td1a (x≺y)≺z = x≺(y·z)",
        op(Prec, &op(Prec, x, y), z),
        op(Prec, x, &op(Full, y, z)),
    );
    check(
        "td1b (x≻y)≺z = x≻(y≺z)",
        op(Prec, &op(Succ, x, y), z),
        op(Succ, x, &op(Prec, y, z)),
    );
    check(
        "td1c (x·y)≻z = x≻(y≻z)",
        op(Succ, &op(Full, x, y), z),
        op(Succ, x, &op(Succ, y, z)),
    );
    check(
        "td2a (x≻y)∘z = x≻(y∘z)",
        op(Circ, &op(Succ, x, y), z),
        op(Succ, x, &op(Circ, y, z)),
    );
    check(
        "td2b (x≺y)∘z = x∘(y≻z)",
        op(Circ, &op(Prec, x, y), z),
        op(Circ, x, &op(Succ, y, z)),
    );
    check(
        "td2c (x∘y)≺z = x∘(y≺z)",
        op(Prec, &op(Circ, x, y), z),
        op(Circ, x, &op(Prec, y, z)),
    );
    check(
        "full-assoc (x·y)·z = x·(y·z)",
        op(Full, &op(Full, x, y), z),
        op(Full, x, &op(Full, y, z)),
    );
    bad
}

fn random_packed(rng: &mut ChaCha8Rng, n: usize) -> PackedWord {
    let letters: Vec<Letter> = (0..n).map(|_| rng.gen_range(1..=n as Letter)).collect();
    pack(&Word::from_vec_unchecked(letters))
}

/// A random element with one to three terms of degrees in `1..=max_degree`
/// and small rational coefficients.
fn random_element(rng: &mut ChaCha8Rng, max_degree: usize) -> NcqElement {
    let terms = rng.gen_range(1..=3);
    let mut x = Element::zero();
    for _ in 0..terms {
        let n = rng.gen_range(1..=max_degree);
        let mut p: i64 = rng.gen_range(-9..=8);
        if p >= 0 {
            p += 1;
        }
        let q: i64 = rng.gen_range(1..=5);
        x.add_term(random_packed(rng, n), ratio(p, q));
    }
    if x.is_zero() {
        x.add_term(random_packed(rng, 1), int(1));
    }
    x
}

/// Triples whose degree bounds sum to at most `total`.
fn random_triples(seed: u64, count: usize, total: usize) -> Vec<[NcqElement; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(1..=total - 2);
            let b = rng.gen_range(1..=total - 1 - a);
            let c = rng.gen_range(1..=total - a - b);
            [
                random_element(&mut rng, a),
                random_element(&mut rng, b),
                random_element(&mut rng, c),
            ]
        })
        .collect()
}

fn axioms_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Axioms, degree);
    rb.param("seed", opts.seed);
    rb.param("random_samples", opts.random_samples);
    rb.param("random_total_degree", RANDOM_TOTAL_DEGREE);
    if opts.corrupt {
        rb.param("corrupted", true);
    }
    let ops: &dyn TrialgebraOps = if opts.corrupt {
        &CorruptedOps
    } else {
        &PackedWordOps
    };
    let apply = |op: TriOp, x: &NcqElement, y: &NcqElement| ops.apply(op, x, y);
    let by_degree = packed_by_degree(degree.saturating_sub(2).max(1), &opts.limits)?;
    let basis = |u: &PackedWord| Element::basis(u.clone());

    // Splitting identity on pairs.
    let pairs = pairs_up_to(&by_degree_padded(&by_degree, degree, &opts.limits)?, degree);
    rb.tally.sweep(&pairs, |(u, v), t| {
        let (x, y) = (basis(u), basis(v));
        let split =
            apply(TriOp::Prec, &x, &y) + apply(TriOp::Circ, &x, &y) + apply(TriOp::Succ, &x, &y);
        t.check(split == apply(TriOp::Full, &x, &y), || {
            format!("split x={} y={}", m_text(&x), m_text(&y))
        });
    });

    let mut triples = Vec::new();
    for a in 1..=degree.saturating_sub(2) {
        for b in 1..=degree - 1 - a {
            for c in 1..=degree - a - b {
                for u in &by_degree[a] {
                    for v in &by_degree[b] {
                        for w in &by_degree[c] {
                            triples.push([u.clone(), v.clone(), w.clone()]);
                        }
                    }
                }
            }
        }
    }
    rb.result("basis_triples", triples.len());
    rb.tally.sweep(&triples, |[u, v, w], t| {
        let (x, y, z) = (basis(u), basis(v), basis(w));
        let bad = axiom_failures(&x, &y, &z, apply);
        t.checked += 8;
        for name in bad {
            t.failures.push(format!(
                "{name} x={} y={} z={}",
                m_text(&x),
                m_text(&y),
                m_text(&z)
            ));
        }
    });

    let random = random_triples(opts.seed, opts.random_samples, RANDOM_TOTAL_DEGREE);
    rb.tally.sweep(&random, |[x, y, z], t| {
        let bad = axiom_failures(x, y, z, apply);
        t.checked += 8;
        for name in bad {
            t.failures.push(format!(
                "{name} x={} y={} z={}",
                m_text(x),
                m_text(y),
                m_text(z)
            ));
        }
    });
    Ok(rb.finish(opts.limit))
}

fn by_degree_padded(
    by_degree: &[Vec<PackedWord>],
    degree: usize,
    limits: &Limits,
) -> Result<Vec<Vec<PackedWord>>> {
    let mut v = by_degree.to_vec();
    while v.len() < degree {
        v.push(enumerate_packed_with(v.len(), limits)?);
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Polynomial oracle

fn random_word(rng: &mut ChaCha8Rng, alphabet: u32) -> Word {
    let n = rng.gen_range(1..=3);
    Word::from_vec_unchecked((0..n).map(|_| rng.gen_range(1..=alphabet)).collect())
}

fn oracle_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Oracle, degree);
    rb.param("seed", opts.seed);
    rb.param("word_axiom_samples", WORD_AXIOM_SAMPLES);
    let by_degree = packed_by_degree(degree, &opts.limits)?;
    let pairs = pairs_up_to(&by_degree, degree);
    rb.tally.sweep(&pairs, |(u, v), t| {
        let (x, y) = (Element::basis(u.clone()), Element::basis(v.clone()));
        let n = (u.len() + v.len()) as u32;
        for op in TriOp::ALL {
            let key_level = product(op, &x, &y).unwrap();
            let via_words = oracle_product(op, &x, &y, n);
            t.check(via_words.as_ref() == Ok(&key_level), || {
                format!("{op} u={u} v={v} alphabet={n}")
            });
        }
    });

    // A larger alphabet must give the same projection.
    let small = pairs_up_to(&by_degree, degree - 1);
    rb.tally.sweep(&small, |(u, v), t| {
        let (x, y) = (Element::basis(u.clone()), Element::basis(v.clone()));
        let n = (u.len() + v.len()) as u32;
        for op in TriOp::ALL {
            let a = oracle_product(op, &x, &y, n);
            let b = oracle_product(op, &x, &y, n + 1);
            t.check(a.is_ok() && a == b, || {
                format!(
                    "alphabet-stability {op} u={u} v={v} alphabets={n},{}",
                    n + 1
                )
            });
        }
    });

    // The identities at the level of single words.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let word_triples: Vec<(u32, [Word; 3])> = (0..WORD_AXIOM_SAMPLES)
        .map(|_| {
            let alphabet = rng.gen_range(1..=6);
            let ws = [
                random_word(&mut rng, alphabet),
                random_word(&mut rng, alphabet),
                random_word(&mut rng, alphabet),
            ];
            (alphabet, ws)
        })
        .collect();
    rb.tally.sweep(&word_triples, |(alphabet, ws), t| {
        let poly = |w: &Word| NcPolynomial::new(*alphabet, Element::basis(w.clone())).unwrap();
        let [x, y, z] = [poly(&ws[0]), poly(&ws[1]), poly(&ws[2])];
        let bad = axiom_failures(&x, &y, &z, |op, p, q| poly_op(op, p, q).unwrap());
        t.checked += 8;
        for name in bad {
            t.failures
                .push(format!("words {name} x={} y={} z={}", ws[0], ws[1], ws[2]));
        }
    });
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Hopf structure

type Triple = (PackedWord, PackedWord, PackedWord);

fn delta_left(x: &crate::linalg::TensorElement<PackedWord>) -> Element<Triple> {
    x.map_linear(|(a, b)| {
        coproduct(&Element::basis(a.clone()))
            .map_keys(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
    })
}

fn delta_right(x: &crate::linalg::TensorElement<PackedWord>) -> Element<Triple> {
    x.map_linear(|(a, b)| {
        coproduct(&Element::basis(b.clone()))
            .map_keys(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
    })
}

fn hopf_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Hopf, degree);
    let by_degree = packed_by_degree(degree, &opts.limits)?;
    let all: Vec<PackedWord> = by_degree.iter().flatten().cloned().collect();
    rb.tally.sweep(&all, |u, t| {
        let x = Element::basis(u.clone());
        let d = coproduct(&x);
        t.check(delta_left(&d) == delta_right(&d), || {
            format!("coassociativity u=[{u}]")
        });
        let left_counit = d.map_linear(|(a, b)| {
            Element::basis(b.clone()).scale(&counit(&Element::basis(a.clone())))
        });
        let right_counit = d.map_linear(|(a, b)| {
            Element::basis(a.clone()).scale(&counit(&Element::basis(b.clone())))
        });
        t.check(left_counit == x, || format!("left counit u=[{u}]"));
        t.check(right_counit == x, || format!("right counit u=[{u}]"));
        t.check(d.keys().all(|(a, b)| a.len() + b.len() == u.len()), || {
            format!("coproduct grading u=[{u}]")
        });
    });
    let mut pairs = pairs_up_to(&by_degree, degree);
    for u in &all {
        pairs.push((PackedWord::empty(), u.clone()));
        pairs.push((u.clone(), PackedWord::empty()));
    }
    rb.tally.sweep(&pairs, |(u, v), t| {
        let (x, y) = (Element::basis(u.clone()), Element::basis(v.clone()));
        let xy = product(TriOp::Full, &x, &y).unwrap();
        t.check(xy.keys().all(|w| w.len() == u.len() + v.len()), || {
            format!("product grading u=[{u}] v=[{v}]")
        });
        t.check(
            coproduct(&xy) == tensor_product(&coproduct(&x), &coproduct(&y)),
            || format!("multiplicativity u=[{u}] v=[{v}]"),
        );
    });
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Commutative image

fn qsym_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Qsym, degree);
    let weight = degree + 1;
    rb.param("composition_weight", weight);
    let comps: Vec<Vec<Composition>> = (0..=weight).map(Composition::all_of).collect();
    let mut cpairs = Vec::new();
    let mut ctriples = Vec::new();
    for a in 1..weight {
        for b in 1..=weight - a {
            for i in &comps[a] {
                for j in &comps[b] {
                    cpairs.push((i.clone(), j.clone()));
                    for c in 1..=weight - a - b {
                        for k in &comps[c] {
                            ctriples.push([i.clone(), j.clone(), k.clone()]);
                        }
                    }
                }
            }
        }
    }
    let qm = |c: &Composition| -> QSymElement { Element::basis(c.clone()) };
    rb.tally.sweep(&cpairs, |(i, j), t| {
        t.check(
            qsym_product(&qm(i), &qm(j)) == qsym_product(&qm(j), &qm(i)),
            || format!("qsym commutativity I=({i}) J=({j})"),
        );
    });
    rb.tally.sweep(&ctriples, |[i, j, k], t| {
        let (x, y, z) = (qm(i), qm(j), qm(k));
        t.check(
            qsym_product(&qsym_product(&x, &y), &z) == qsym_product(&x, &qsym_product(&y, &z)),
            || format!("qsym associativity I=({i}) J=({j}) K=({k})"),
        );
    });

    let by_degree = packed_by_degree(degree, &opts.limits)?;
    let pairs = pairs_up_to(&by_degree, degree);
    rb.tally.sweep(&pairs, |(u, v), t| {
        let (x, y) = (Element::basis(u.clone()), Element::basis(v.clone()));
        let target = qsym_product(&abelianize(&x), &abelianize(&y));
        t.check(
            abelianize(&product(TriOp::Full, &x, &y).unwrap()) == target,
            || format!("abelianize morphism u=[{u}] v=[{v}]"),
        );
        let split = TriOp::SPLIT.iter().fold(Element::zero(), |acc, &op| {
            acc + abelianize(&product(op, &x, &y).unwrap())
        });
        t.check(split == target, || {
            format!("abelianized split u=[{u}] v=[{v}]")
        });
    });

    let mut image_dims = Vec::new();
    for n in 1..=degree {
        let images: Vec<QSymElement> = by_degree[n]
            .iter()
            .map(|u| abelianize(&Element::basis(u.clone())))
            .collect();
        let r = rank_of_span(&images);
        image_dims.push(r);
        rb.tally.check(r == 1 << (n - 1), || {
            format!("image dimension n={n}: {r} != {}", 1 << (n - 1))
        });
    }
    rb.result("image_dimensions", image_dims);
    let comp_degree = degree + 2;
    let mut qdims = Vec::new();
    for n in 1..=comp_degree {
        let c = Composition::all_of(n).len();
        qdims.push(c);
        rb.tally
            .check(c == 1 << (n - 1), || format!("dim QSym_{n} = {c}"));
    }
    rb.result("qsym_dimensions", qdims);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Face product

fn tits_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Tits, degree);
    let assoc_degree = degree.saturating_sub(1);
    rb.param("associativity_degree", assoc_degree);
    let mut dims = Vec::new();
    for n in 1..=degree {
        let words = enumerate_packed_with(n, &opts.limits)?;
        dims.push(words.len());
        let index: HashMap<&PackedWord, usize> =
            words.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let k = words.len();
        // Row-major product table on indices, checked against the partition
        // implementation as it is filled.
        let rows: Vec<(Vec<usize>, Tally)> = words
            .par_iter()
            .map(|u| {
                let mut t = Tally::default();
                let osp_u = to_osp(u);
                let row = words
                    .iter()
                    .map(|v| {
                        let w = tits_product(u, v).unwrap();
                        let expect = face_compose(&osp_u, &to_osp(v)).unwrap();
                        t.check(to_osp(&w) == expect, || {
                            format!("face_compose mismatch u=[{u}] v=[{v}]")
                        });
                        index[&w]
                    })
                    .collect();
                (row, t)
            })
            .collect();
        let mut table = Vec::with_capacity(k * k);
        for (row, t) in rows {
            table.extend(row);
            rb.tally = std::mem::take(&mut rb.tally).merge(t);
        }
        let prod = |a: usize, b: usize| table[a * k + b];
        let one = index[&identity(n)];
        for (a, u) in words.iter().enumerate() {
            rb.tally.check(prod(one, a) == a && prod(a, one) == a, || {
                format!("identity u=[{u}]")
            });
            rb.tally
                .check(prod(a, a) == a, || format!("idempotence u=[{u}]"));
            if u.max_letter() as usize == n {
                rb.tally.check((0..k).all(|b| prod(a, b) == a), || {
                    format!("chamber absorption u=[{u}]")
                });
            }
        }
        if n <= assoc_degree {
            let idx: Vec<usize> = (0..k).collect();
            rb.tally.sweep(&idx, |&a, t| {
                for b in 0..k {
                    let ab = prod(a, b);
                    t.check(prod(ab, a) == ab, || {
                        format!("left regular band u=[{}] v=[{}]", words[a], words[b])
                    });
                    for c in 0..k {
                        if prod(ab, c) != prod(a, prod(b, c)) {
                            t.failures.push(format!(
                                "associativity u=[{}] v=[{}] w=[{}]",
                                words[a], words[b], words[c]
                            ));
                        }
                    }
                    t.checked += k as u64;
                }
            });
        }
    }
    if degree >= 3 {
        rb.tally
            .check(dims[2] == 13, || format!("dimension at n=3 is {}", dims[2]));
    }
    rb.result("dimensions", dims);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Sylvester quotient

fn sylvester_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Sylvester, degree);
    let product_degree = degree.saturating_sub(1);
    rb.param("product_degree", product_degree);
    let table = SylvesterTable::up_to_with(degree, &opts.limits)?;
    let mut counts = Vec::new();
    for n in 1..=degree {
        let c = table.class_count(n).unwrap_or(0);
        counts.push(c);
        let trees = enumerate_trees_with(n, &opts.limits)?.len();
        rb.tally.check(c == trees, || {
            format!("class count n={n}: {c} != {trees} trees")
        });
        if let Some(&expected) = LITTLE_SCHRODER.get(n - 1) {
            rb.tally.check(c == expected, || {
                format!("class count n={n}: {c} != {expected}")
            });
        }
    }
    rb.result("class_counts", counts);

    let by_degree = packed_by_degree(product_degree, &opts.limits)?;
    let mut jobs = Vec::new();
    for n in 2..product_degree {
        for (u, v) in table.congruent_pairs(n) {
            for m in 1..=product_degree - n {
                for w in &by_degree[m] {
                    jobs.push((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    rb.result("congruent_pair_jobs", jobs.len());
    rb.tally.sweep(&jobs, |(u, v, w), t| {
        let b = |p: &PackedWord| Element::basis(p.clone());
        for op in TriOp::ALL {
            let right = product(op, &b(u), &b(w)).unwrap() - product(op, &b(v), &b(w)).unwrap();
            t.check(
                table.project(&right).map(|e| e.is_zero()) == Ok(true),
                || format!("{op} right u=[{u}] v=[{v}] w=[{w}]"),
            );
            let left = product(op, &b(w), &b(u)).unwrap() - product(op, &b(w), &b(v)).unwrap();
            t.check(
                table.project(&left).map(|e| e.is_zero()) == Ok(true),
                || format!("{op} left u=[{u}] v=[{v}] w=[{w}]"),
            );
        }
    });

    let free = FreeTrialgebra::up_to_with(product_degree, &opts.limits)?;
    let mut free_ranks = Vec::new();
    let mut full_ranks = Vec::new();
    for n in 1..=product_degree {
        let expected = table.class_count(n).unwrap_or(0);
        let projected: Vec<NcqElement> = free
            .basis(n)
            .iter()
            .map(|x| table.project(x))
            .collect::<Result<_>>()?;
        let r_free = rank_of_span(&projected);
        let all: Vec<NcqElement> = by_degree[n]
            .iter()
            .map(|u| table.project(&Element::basis(u.clone())))
            .collect::<Result<_>>()?;
        let r_all = rank_of_span(&all);
        rb.tally.check(r_free == expected, || {
            format!("rank of projected free basis n={n}: {r_free} != {expected}")
        });
        rb.tally.check(r_all == expected, || {
            format!("rank of projected packed basis n={n}: {r_all} != {expected}")
        });
        rb.tally.check(free.dim(n) == expected, || {
            format!("free dimension n={n}: {} != {expected}", free.dim(n))
        });
        free_ranks.push(r_free);
        full_ranks.push(r_all);
    }
    rb.result("projected_free_ranks", free_ranks);
    rb.result("projected_packed_ranks", full_ranks);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Parking words

/// Counts parking words of length `n` by scanning all of `{1..n}^n`.
fn brute_force_parking_count(n: usize) -> u64 {
    let total = (n as u64).pow(n as u32);
    let mut count = 0;
    let mut digits = vec![1u32; n];
    for _ in 0..total {
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().all(|(i, &b)| b as usize <= i + 1) {
            count += 1;
        }
        for d in digits.iter_mut() {
            if (*d as usize) < n {
                *d += 1;
                break;
            }
            *d = 1;
        }
    }
    count
}

fn parking_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Parking, degree);
    let mut totals = Vec::new();
    for n in 1..=degree {
        let words = enumerate_packed_with(n, &opts.limits)?;
        let fibers: Vec<(PackedWord, usize, Tally)> = words
            .par_iter()
            .map(|u| {
                let mut t = Tally::default();
                let fiber = parking_fiber(u);
                t.check(fiber.iter().any(|a| a.letters() == u.letters()), || {
                    format!("fiber of [{u}] misses the word itself")
                });
                for a in &fiber {
                    let w = a.as_word();
                    t.check(pack(&w) == *u && is_parking(&w) == Ok(true), || {
                        format!("fiber of [{u}] contains [{a}]")
                    });
                }
                let d = detass(u).unwrap();
                t.check(Ok(&d) == detass_by_fiber(u).as_ref(), || {
                    format!("detass([{u}]) = [{d}] is not the fiber maximum")
                });
                let dw = d.as_word();
                t.check(pack(&dw) == *u && is_parking(&dw) == Ok(true), || {
                    format!("detass([{u}]) = [{d}] is not a parking unpacking")
                });
                (u.clone(), fiber.len(), t)
            })
            .collect();
        let mut total = 0u64;
        for (_, size, t) in fibers {
            total += size as u64;
            rb.tally = std::mem::take(&mut rb.tally).merge(t);
        }
        let formula = ((n + 1) as u64).pow(n as u32 - 1);
        let brute = brute_force_parking_count(n);
        rb.tally.check(total == formula && total == brute, || {
            format!("fiber total n={n}: {total}, (n+1)^(n-1) = {formula}, brute force = {brute}")
        });
        totals.push(total);
    }
    rb.result("fiber_totals", totals);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Free trialgebra and MM basis

fn free_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Free, degree);
    let free = FreeTrialgebra::up_to_with(degree, &opts.limits)?;
    let series = free.hilbert_series();
    rb.result("hilbert_series", series.clone());
    let mut tree_counts = Vec::new();
    for n in 1..=degree {
        let trees = enumerate_trees_with(n, &opts.limits)?;
        tree_counts.push(trees.len());
        let dim = series[n - 1];
        rb.tally.check(dim == trees.len(), || {
            format!("dim T_{n} = {dim} but there are {} trees", trees.len())
        });
        if let Some(&expected) = LITTLE_SCHRODER.get(n - 1) {
            rb.tally.check(dim == expected, || {
                format!("dim T_{n} = {dim} != {expected}")
            });
        }

        let fibers = fibers_by_tree_with(n, &opts.limits)?;
        rb.tally.check(fibers.len() == trees.len(), || {
            format!(
                "{} of {} trees have packed-word fibers at n={n}",
                fibers.len(),
                trees.len()
            )
        });
        let fiber_total: usize = fibers.values().map(Vec::len).sum();
        rb.tally.check(fiber_total as u64 == ordered_bell(n), || {
            format!("fiber sizes at n={n} sum to {fiber_total}")
        });
        let mms: Vec<NcqElement> = trees
            .iter()
            .map(|t| Element::sum_of(fibers.get(t).cloned().unwrap_or_default()))
            .collect();
        let mut echelon = EchelonBasis::new();
        let mut independent = true;
        for x in &mms {
            independent &= echelon.insert(x);
        }
        rb.tally
            .check(independent, || format!("MM_T not independent at n={n}"));
        let member_failures: Vec<String> = trees
            .par_iter()
            .zip(mms.par_iter())
            .filter_map(|(t, x)| {
                let member = free.contains(x, n).unwrap_or(false);
                let coords = mm_coordinates_with(x, n, &fibers).ok().flatten();
                let unit = coords == Some(Element::basis(t.clone()));
                (!(member && unit)).then(|| format!("membership of MM_{t}"))
            })
            .collect();
        rb.tally.checked += trees.len() as u64;
        rb.tally.failures.extend(member_failures);
        // Equal dimensions plus inclusion give equal spans.
        rb.tally.check(echelon.rank() == dim, || {
            format!("rank of MM basis at n={n} is {} != {dim}", echelon.rank())
        });
    }
    rb.result("tree_counts", tree_counts);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Packed-word dimensions

fn dimensions_suite(degree: usize, opts: &SuiteOptions) -> Result<Report> {
    let mut rb = ReportBuilder::new(Suite::Dimensions, degree);
    let mut dims = Vec::new();
    for n in 1..=degree {
        let words = enumerate_packed_with(n, &opts.limits)?;
        let c = words.len();
        dims.push(c);
        rb.tally.check(c as u64 == ordered_bell(n), || {
            format!("dim NCQSym_{n} = {c} != {}", ordered_bell(n))
        });
        let sorted = words.windows(2).all(|w| w[0] < w[1]);
        rb.tally.check(sorted, || {
            format!("packed words of length {n} not strictly sorted")
        });
    }
    rb.result("dimensions", dims);
    Ok(rb.finish(opts.limit))
}

// ---------------------------------------------------------------------------
// Hilbert series

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertObject {
    /// Closure of `M_1` under the three operations.
    Free,
    /// All packed words.
    Ncqsym,
    /// Sylvester classes of packed words.
    Sylvester,
    /// Plane trees.
    Trees,
}

impl FromStr for HilbertObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(HilbertObject::Free),
            "NCQSYM" => Ok(HilbertObject::Ncqsym),
            "SYL" => Ok(HilbertObject::Sylvester),
            "TREES" => Ok(HilbertObject::Trees),
            other => Err(Error::Parse {
                offset: 0,
                message: format!("unknown object {other:?}"),
            }),
        }
    }
}

impl HilbertObject {
    pub fn name(self) -> &'static str {
        match self {
            HilbertObject::Free => "T",
            HilbertObject::Ncqsym => "NCQSYM",
            HilbertObject::Sylvester => "SYL",
            HilbertObject::Trees => "TREES",
        }
    }
}

/// Graded dimensions in degrees `1..=max_degree`.
pub fn hilbert(object: HilbertObject, max_degree: usize, limits: &Limits) -> Result<Vec<usize>> {
    limits.check(max_degree)?;
    match object {
        HilbertObject::Free => Ok(FreeTrialgebra::up_to_with(max_degree, limits)?.hilbert_series()),
        HilbertObject::Ncqsym => (1..=max_degree)
            .map(|n| Ok(enumerate_packed_with(n, limits)?.len()))
            .collect(),
        HilbertObject::Sylvester => {
            let t = SylvesterTable::up_to_with(max_degree, limits)?;
            Ok((1..=max_degree)
                .map(|n| t.class_count(n).unwrap_or(0))
                .collect())
        }
        HilbertObject::Trees => (1..=max_degree)
            .map(|n| Ok(enumerate_trees_with(n, limits)?.len()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite, degree: usize) -> Report {
        let opts = SuiteOptions {
            max_degree: Some(degree),
            random_samples: 10,
            ..Default::default()
        };
        run_suite(suite, &opts).unwrap()
    }

    #[test]
    fn ordered_bell_values() {
        let v: Vec<u64> = (0..=6).map(ordered_bell).collect();
        assert_eq!(v, vec![1, 1, 3, 13, 75, 541, 4683]);
    }

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            let r = quick(suite, 4);
            assert!(r.pass, "{suite}: {:?}", r.counterexamples);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let opts = SuiteOptions {
            max_degree: Some(4),
            random_samples: 5,
            corrupt: true,
            ..Default::default()
        };
        let r = run_suite(Suite::Axioms, &opts).unwrap();
        assert!(!r.pass);
        assert!(r.counterexample_count >= 1);
        assert_eq!(
            r.counterexamples.len(),
            r.counterexample_count.min(opts.limit)
        );
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn hilbert_small() {
        let l = Limits::default();
        assert_eq!(hilbert(HilbertObject::Free, 3, &l).unwrap(), vec![1, 3, 11]);
        assert_eq!(
            hilbert(HilbertObject::Ncqsym, 3, &l).unwrap(),
            vec![1, 3, 13]
        );
        assert_eq!(
            hilbert(HilbertObject::Sylvester, 3, &l).unwrap(),
            vec![1, 3, 11]
        );
        assert_eq!(
            hilbert(HilbertObject::Trees, 3, &l).unwrap(),
            vec![1, 3, 11]
        );
        assert!(matches!(
            hilbert(HilbertObject::Trees, 3, &Limits::new(2)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn parking_brute_force_counts() {
        let v: Vec<u64> = (1..=4).map(brute_force_parking_count).collect();
        assert_eq!(v, vec![1, 3, 16, 125]);
    }
}
