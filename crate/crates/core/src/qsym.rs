//! Quasi-symmetric functions in the monomial basis.

use crate::linalg::{bilinear, Element};
use crate::words::Composition;

pub type QSymElement = Element<Composition>;

/// Quasi-shuffle of two compositions with multiplicities: at each step take
/// the next part of `I`, the next part of `J`, or their sum.
pub fn quasi_shuffle(i: &Composition, j: &Composition) -> QSymElement {
    fn go(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut QSymElement) {
        if a.is_empty() || b.is_empty() {
            let mut parts = prefix.clone();
            parts.extend_from_slice(a);
            parts.extend_from_slice(b);
            out.add_term(
                Composition::from_vec_unchecked(parts),
                crate::linalg::int(1),
            );
            return;
        }
        prefix.push(a[0]);
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0]);
        go(a, &b[1..], prefix, out);
        prefix.pop();
        prefix.push(a[0] + b[0]);
        go(&a[1..], &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = Element::zero();
    go(i.parts(), j.parts(), &mut Vec::new(), &mut out);
    out
}

pub fn qsym_product(x: &QSymElement, y: &QSymElement) -> QSymElement {
    bilinear(quasi_shuffle, x, y)
}

pub fn monomial(parts: &[u32]) -> QSymElement {
    Element::basis(Composition::from_vec_unchecked(parts.to_vec()))
}

/// The unit `M_()`.
pub fn one() -> QSymElement {
    Element::basis(Composition::empty())
}
