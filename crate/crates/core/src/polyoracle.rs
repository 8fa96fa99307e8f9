//! Noncommutative polynomials over the finite alphabet `{a_1, ..., a_N}`.
//!
//! This is a literal, word-by-word computation with no use of packed-word
//! combinatorics beyond `pack` itself. It exists as independent evidence for
//! the basis-level rules in [`crate::ncqsym`]: expand both operands, multiply
//! words, and project back onto the `M_u`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Coeff, Element};
use crate::ncqsym::{NcqElement, TriOp};
use crate::words::{pack_letters, Letter, PackedWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPolynomial {
    alphabet: u32,
    terms: Element<Word>,
}

impl NcPolynomial {
    pub fn new(alphabet: u32, terms: Element<Word>) -> Result<Self> {
        if let Some(w) = terms
            .keys()
            .find(|w| w.letters().iter().any(|&l| l > alphabet))
        {
            return Err(Error::Parse {
                offset: 0,
                message: format!("word {w} uses letters beyond the alphabet of size {alphabet}"),
            });
        }
        Ok(NcPolynomial { alphabet, terms })
    }

    pub fn zero(alphabet: u32) -> Self {
        NcPolynomial {
            alphabet,
            terms: Element::zero(),
        }
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn terms(&self) -> &Element<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn homogeneous_part(&self, n: usize) -> NcPolynomial {
        NcPolynomial {
            alphabet: self.alphabet,
            terms: self.terms.filter(|w| w.len() == n),
        }
    }
}

/// Sum of the words over `{1..N}` that pack to `u`.
pub fn expand(u: &PackedWord, alphabet: u32) -> NcPolynomial {
    let k = u.max_letter();
    let mut terms = Element::zero();
    if k <= alphabet {
        let mut values = Vec::with_capacity(k as usize);
        increasing_maps(k, alphabet, &mut values, &mut |vals| {
            let w: Vec<Letter> = u.letters().iter().map(|&l| vals[l as usize - 1]).collect();
            terms.add_term(Word::from_vec_unchecked(w), crate::linalg::int(1));
        });
    }
    NcPolynomial { alphabet, terms }
}

fn increasing_maps(k: u32, n: u32, values: &mut Vec<Letter>, f: &mut dyn FnMut(&[Letter])) {
    if values.len() == k as usize {
        f(values);
        return;
    }
    let lo = values.last().map_or(1, |&v| v + 1);
    let left = k - values.len() as u32 - 1;
    for v in lo..=n.saturating_sub(left) {
        values.push(v);
        increasing_maps(k, n, values, f);
        values.pop();
    }
}

fn word_rule(op: TriOp, u: &Word, v: &Word) -> Option<Word> {
    if op != TriOp::Full {
        let mu = *u.letters().iter().max()?;
        let mv = *v.letters().iter().max()?;
        let keep = match op {
            TriOp::Prec => mu > mv,
            TriOp::Circ => mu == mv,
            TriOp::Succ => mu < mv,
            TriOp::Full => true,
        };
        if !keep {
            return None;
        }
    }
    Some(u.concat(v))
}

pub fn poly_op(op: TriOp, p: &NcPolynomial, q: &NcPolynomial) -> Result<NcPolynomial> {
    if p.alphabet != q.alphabet {
        return Err(Error::AlphabetMismatch {
            left: p.alphabet,
            right: q.alphabet,
        });
    }
    let empty = Word::empty();
    if op != TriOp::Full && (!p.terms.coeff(&empty).is_zero() || !q.terms.coeff(&empty).is_zero()) {
        return Err(Error::UnitOperand);
    }
    let mut terms = Element::zero();
    for (u, cu) in p.terms.iter() {
        for (v, cv) in q.terms.iter() {
            if let Some(w) = word_rule(op, u, v) {
                terms.add_term(w, cu * cv);
            }
        }
    }
    Ok(NcPolynomial {
        alphabet: p.alphabet,
        terms,
    })
}

pub fn poly_mul(p: &NcPolynomial, q: &NcPolynomial) -> Result<NcPolynomial> {
    poly_op(TriOp::Full, p, q)
}

pub fn poly_prec(p: &NcPolynomial, q: &NcPolynomial) -> Result<NcPolynomial> {
    poly_op(TriOp::Prec, p, q)
}

pub fn poly_circ(p: &NcPolynomial, q: &NcPolynomial) -> Result<NcPolynomial> {
    poly_op(TriOp::Circ, p, q)
}

pub fn poly_succ(p: &NcPolynomial, q: &NcPolynomial) -> Result<NcPolynomial> {
    poly_op(TriOp::Succ, p, q)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Reads a pack-saturated polynomial back in the `M_u` basis.
///
/// Each packing fiber inside `{1..N}`-words must carry one common
/// coefficient; a fiber of `u` has `C(N, max(u))` words.
pub fn project_pack(p: &NcPolynomial) -> Result<NcqElement> {
    let mut groups: BTreeMap<PackedWord, Vec<&Coeff>> = BTreeMap::new();
    for (w, c) in p.terms.iter() {
        if w.len() > p.alphabet as usize {
            return Err(Error::AlphabetTooSmall {
                alphabet: p.alphabet,
                degree: w.len(),
            });
        }
        groups
            .entry(PackedWord::from_vec_unchecked(pack_letters(w.letters())))
            .or_default()
            .push(c);
    }
    let mut out = Element::zero();
    for (u, coeffs) in groups {
        let fiber = binomial(p.alphabet as u64, u.max_letter() as u64);
        let first = coeffs[0];
        if coeffs.len() as u64 != fiber || coeffs.iter().any(|c| *c != first) {
            return Err(Error::NotSaturated(u.to_string()));
        }
        out.add_term(u, first.clone());
    }
    Ok(out)
}

/// Expands an `M`-basis element over `{1..N}`.
pub fn expand_element(x: &NcqElement, alphabet: u32) -> NcPolynomial {
    let mut terms = Element::zero();
    for (u, c) in x.iter() {
        terms.add_scaled(expand(u, alphabet).terms(), c);
    }
    NcPolynomial { alphabet, terms }
}

/// `project_pack(expand(x) op expand(y))` at the given alphabet size.
pub fn oracle_product(
    op: TriOp,
    x: &NcqElement,
    y: &NcqElement,
    alphabet: u32,
) -> Result<NcqElement> {
    let p = expand_element(x, alphabet);
    let q = expand_element(y, alphabet);
    project_pack(&poly_op(op, &p, &q)?)
}
