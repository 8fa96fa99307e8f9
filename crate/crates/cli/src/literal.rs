//! Element literals such as `2*M[1,1] - 1/2*M[2,1]`.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! element := "0" | sign? term (sign term)*
//! term    := (coeff "*")? BASIS "[" key "]"
//! coeff   := int ("/" int)?
//! ```
//!
//! All terms must use the same basis. Keys are validated for their basis,
//! so `M[1,3]` is rejected as not packed.

use dendrikit::linalg::{parse_coeff, Coeff, Element};
use dendrikit::qsym::QSymElement;
use dendrikit::serial::{Basis, BasisKey};
use dendrikit::{Composition, Error, NcqElement, PackedWord, PlaneTree, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    M(NcqElement),
    MM(Element<PlaneTree>),
    Word(Element<Word>),
    QM(QSymElement),
    SYL(NcqElement),
}

impl Literal {
    pub fn basis(&self) -> Basis {
        match self {
            Literal::M(_) => Basis::M,
            Literal::MM(_) => Basis::MM,
            Literal::Word(_) => Basis::Word,
            Literal::QM(_) => Basis::QM,
            Literal::SYL(_) => Basis::SYL,
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn coeff(&mut self) -> Result<Option<Coeff>, Error> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let start = self.pos;
        let num = self.take_while(|c| c.is_ascii_digit()).to_string();
        self.skip_ws();
        let mut text = num;
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.take_while(|c| c.is_ascii_digit());
            if den.is_empty() {
                return Err(self.err(self.pos, "expected a denominator"));
            }
            text = format!("{text}/{den}");
        }
        let c =
            parse_coeff(&text).map_err(|_| self.err(start, format!("bad coefficient {text:?}")))?;
        self.skip_ws();
        match self.peek() {
            Some('*') => {
                self.pos += 1;
                Ok(Some(c))
            }
            // A lone coefficient is only meaningful as the literal "0".
            None if c == Coeff::from_integer(0.into()) && start == 0 => Ok(Some(c)),
            _ => Err(self.err(self.pos, "expected '*' after coefficient")),
        }
    }

    fn term(&mut self) -> Result<(Basis, String, usize, Option<Coeff>), Error> {
        let c = self.coeff()?;
        self.skip_ws();
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphabetic());
        if name.is_empty() {
            return Err(self.err(start, "expected a basis name"));
        }
        let basis: Basis = name
            .parse()
            .map_err(|_| self.err(start, format!("unknown basis {name:?}")))?;
        self.skip_ws();
        if self.peek() != Some('[') {
            return Err(self.err(self.pos, "expected '['"));
        }
        self.pos += 1;
        let key_start = self.pos;
        let key = self.take_while(|c| c != ']');
        if self.peek() != Some(']') {
            return Err(self.err(self.pos, "unterminated key, expected ']'"));
        }
        self.pos += 1;
        Ok((basis, key.to_string(), key_start, c))
    }
}

fn key<K: BasisKey>(raw: &str, offset: usize, keep_spaces: bool) -> Result<K, Error> {
    let text: String = if keep_spaces {
        raw.trim().to_string()
    } else {
        raw.chars().filter(|c| !c.is_whitespace()).collect()
    };
    K::from_text(&text).map_err(|e| match e {
        Error::Parse { offset: o, message } => Error::Parse {
            offset: offset + o,
            message,
        },
        other => Error::Parse {
            offset,
            message: other.to_string(),
        },
    })
}

pub fn parse_element(text: &str) -> Result<Literal, Error> {
    let mut p = Parser { text, pos: 0 };
    p.skip_ws();
    if text.trim() == "0" {
        return Ok(Literal::M(Element::zero()));
    }
    let mut terms = Vec::new();
    let mut negate = false;
    if p.peek() == Some('-') {
        p.pos += 1;
        negate = true;
    } else if p.peek() == Some('+') {
        p.pos += 1;
    }
    loop {
        let (basis, raw, offset, c) = p.term()?;
        let mut c = c.unwrap_or_else(|| Coeff::from_integer(1.into()));
        if negate {
            c = -c;
        }
        terms.push((basis, raw, offset, c));
        p.skip_ws();
        match p.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(other) => return Err(p.err(p.pos, format!("unexpected {other:?}"))),
        }
        p.pos += 1;
    }
    let basis = terms[0].0;
    if let Some((b, _, off, _)) = terms.iter().find(|t| t.0 != basis) {
        return Err(p.err(*off, format!("mixed bases {basis} and {b}")));
    }
    fn collect<K: BasisKey>(
        terms: &[(Basis, String, usize, Coeff)],
        keep_spaces: bool,
    ) -> Result<Element<K>, Error> {
        let mut x = Element::zero();
        for (_, raw, off, c) in terms {
            x.add_term(key::<K>(raw, *off, keep_spaces)?, c.clone());
        }
        Ok(x)
    }
    Ok(match basis {
        Basis::M => Literal::M(collect::<PackedWord>(&terms, false)?),
        Basis::SYL => Literal::SYL(collect::<PackedWord>(&terms, false)?),
        Basis::MM => Literal::MM(collect::<PlaneTree>(&terms, true)?),
        Basis::Word => Literal::Word(collect::<Word>(&terms, false)?),
        Basis::QM => Literal::QM(collect::<Composition>(&terms, false)?),
    })
}
