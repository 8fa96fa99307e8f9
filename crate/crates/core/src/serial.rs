//! JSON documents and text literals for elements.
//!
//! Element documents look like
//! `{"basis":"M","terms":[{"key":[1,2,1],"coeff":"3"}]}` with terms in the
//! canonical key order. Word-like keys are integer arrays, tree keys are
//! their serialization strings, and tensor keys are two-element arrays of
//! keys. Polynomials add an `"alphabet"` field.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{parse_coeff, Coeff, Element};
use crate::polyoracle::NcPolynomial;
use crate::trees::PlaneTree;
use crate::words::{Composition, Letter, PackedWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    M,
    MM,
    Word,
    QM,
    SYL,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::MM => "MM",
            Basis::Word => "Word",
            Basis::QM => "QM",
            Basis::SYL => "SYL",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(Basis::M),
            "MM" => Ok(Basis::MM),
            "Word" => Ok(Basis::Word),
            "QM" => Ok(Basis::QM),
            "SYL" => Ok(Basis::SYL),
            other => Err(Error::Parse {
                offset: 0,
                message: format!("unknown basis {other:?}"),
            }),
        }
    }
}

/// A key type that can appear in element documents and literals.
pub trait BasisKey: Ord + Clone + Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    /// Text between the brackets of a literal such as `M[1,2,1]`.
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Result<Self>;
}

fn letters_from_json(v: &Value) -> Result<Vec<Letter>> {
    let bad = || Error::Parse {
        offset: 0,
        message: format!("expected an array of positive integers, found {v}"),
    };
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|x| {
            x.as_u64()
                .filter(|&l| l >= 1 && l <= Letter::MAX as u64)
                .map(|l| l as Letter)
                .ok_or_else(bad)
        })
        .collect()
}

macro_rules! array_key {
    ($t:ty, $ctor:expr, $get:ident) => {
        impl BasisKey for $t {
            fn to_json(&self) -> Value {
                Value::from(self.$get().to_vec())
            }

            fn from_json(v: &Value) -> Result<Self> {
                $ctor(letters_from_json(v)?)
            }

            fn to_text(&self) -> String {
                self.to_string()
            }

            fn from_text(s: &str) -> Result<Self> {
                s.parse()
            }
        }
    };
}

array_key!(Word, Word::new, letters);
array_key!(PackedWord, PackedWord::new, letters);
array_key!(Composition, Composition::new, parts);

impl BasisKey for PlaneTree {
    fn to_json(&self) -> Value {
        Value::from(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_str()
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("expected a tree string, found {v}"),
            })?
            .parse()
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn from_text(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl<K: BasisKey> BasisKey for (K, K) {
    fn to_json(&self) -> Value {
        Value::from(vec![self.0.to_json(), self.1.to_json()])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((K::from_json(a)?, K::from_json(b)?)),
            _ => Err(Error::Parse {
                offset: 0,
                message: format!("expected a pair of keys, found {v}"),
            }),
        }
    }

    fn to_text(&self) -> String {
        format!("{}|{}", self.0.to_text(), self.1.to_text())
    }

    fn from_text(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').ok_or_else(|| Error::Parse {
            offset: 0,
            message: "expected two keys separated by '|'".into(),
        })?;
        Ok((K::from_text(a)?, K::from_text(b)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub key: Value,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<bool>,
    pub terms: Vec<TermDoc>,
}

impl ElementDoc {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("element documents always serialize")
    }
}

pub fn element_to_doc<K: BasisKey>(basis: Basis, x: &Element<K>) -> ElementDoc {
    ElementDoc {
        basis,
        alphabet: None,
        tensor: None,
        terms: x
            .iter()
            .map(|(k, c)| TermDoc {
                key: k.to_json(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn tensor_to_doc<K: BasisKey>(basis: Basis, x: &Element<(K, K)>) -> ElementDoc {
    ElementDoc {
        tensor: Some(true),
        ..element_to_doc(basis, x)
    }
}

pub fn element_from_doc<K: BasisKey>(doc: &ElementDoc) -> Result<Element<K>> {
    let mut out = Element::zero();
    for t in &doc.terms {
        out.add_term(K::from_json(&t.key)?, parse_coeff(&t.coeff)?);
    }
    Ok(out)
}

pub fn polynomial_to_doc(p: &NcPolynomial) -> ElementDoc {
    ElementDoc {
        alphabet: Some(p.alphabet()),
        ..element_to_doc(Basis::Word, p.terms())
    }
}

pub fn polynomial_from_doc(doc: &ElementDoc) -> Result<NcPolynomial> {
    let alphabet = doc.alphabet.ok_or_else(|| Error::Parse {
        offset: 0,
        message: "polynomial document needs an alphabet".into(),
    })?;
    NcPolynomial::new(alphabet, element_from_doc(doc)?)
}

/// Formats `c*B[key]` terms joined by ` + ` / ` - `; zero prints as `0`.
pub fn format_element<K: BasisKey>(basis: Basis, x: &Element<K>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, c)) in x.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !abs.is_one() {
            s.push_str(&abs.to_string());
            s.push('*');
        }
        s.push_str(basis.tag());
        s.push('[');
        s.push_str(&k.to_text());
        s.push(']');
    }
    s
}

pub fn format_coeff(c: &Coeff) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    fn pw(v: &[Letter]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn element_json_is_canonical() {
        let x = Element::from_terms([(pw(&[1, 1]), ratio(-1, 2)), (pw(&[1, 2, 1]), int(3))]);
        let doc = element_to_doc(Basis::M, &x);
        assert_eq!(
            doc.to_json_string(),
            r#"{"basis":"M","terms":[{"key":[1,1],"coeff":"-1/2"},{"key":[1,2,1],"coeff":"3"}]}"#
        );
        let back: Element<PackedWord> = element_from_doc(&doc).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn tree_and_tensor_keys() {
        let t: PlaneTree = "(o (o o))".parse().unwrap();
        let doc = element_to_doc(Basis::MM, &Element::basis(t));
        assert_eq!(
            doc.to_json_string(),
            r#"{"basis":"MM","terms":[{"key":"(o (o o))","coeff":"1"}]}"#
        );
        let d = Element::basis((pw(&[1]), PackedWord::empty()));
        assert_eq!(
            tensor_to_doc(Basis::M, &d).to_json_string(),
            r#"{"basis":"M","tensor":true,"terms":[{"key":[[1],[]],"coeff":"1"}]}"#
        );
    }

    #[test]
    fn bad_keys_rejected() {
        let doc: ElementDoc =
            serde_json::from_str(r#"{"basis":"M","terms":[{"key":[1,3],"coeff":"1"}]}"#).unwrap();
        assert!(matches!(
            element_from_doc::<PackedWord>(&doc),
            Err(Error::NotPacked(_))
        ));
    }

    #[test]
    fn text_format() {
        let x = Element::from_terms([(pw(&[1, 1]), ratio(-1, 2)), (pw(&[1, 2, 1]), int(3))]);
        assert_eq!(format_element(Basis::M, &x), "-1/2*M[1,1] + 3*M[1,2,1]");
        assert_eq!(
            format_element::<PackedWord>(Basis::M, &Element::zero()),
            "0"
        );
        assert_eq!(
            format_element(Basis::M, &Element::basis(PackedWord::empty())),
            "M[]"
        );
    }
}
