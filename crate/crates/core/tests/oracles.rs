//! Brute-force reference computations, written without the library's
//! combinatorics, compared against the library on small degrees.

use std::collections::{BTreeMap, BTreeSet};

use dendrikit::linalg::Element;
use dendrikit::ncqsym::{product, TriOp};
use dendrikit::sylvester::sylv_class_count;
use dendrikit::tits::tits_product;
use dendrikit::trees::{enumerate_trees, fibers_by_tree};
use dendrikit::words::{detass, enumerate_packed, parking_fiber};
use dendrikit::{NcqElement, PackedWord};

/// Every word in `{1..k}^n`, in lexicographic order.
fn all_words(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

fn naive_pack(w: &[u32]) -> Vec<u32> {
    let letters: BTreeSet<u32> = w.iter().copied().collect();
    let rank: BTreeMap<u32, u32> = letters.into_iter().zip(1..).collect();
    w.iter().map(|l| rank[l]).collect()
}

fn naive_is_packed(w: &[u32]) -> bool {
    let letters: BTreeSet<u32> = w.iter().copied().collect();
    letters
        .into_iter()
        .eq(1..=w.iter().copied().max().unwrap_or(0))
}

fn naive_is_parking(w: &[u32]) -> bool {
    let mut s = w.to_vec();
    s.sort();
    s.iter().enumerate().all(|(i, &b)| b as usize <= i + 1)
}

#[test]
fn packed_words_by_filtering() {
    for n in 0..=5 {
        let expect: Vec<Vec<u32>> = all_words(n, n as u32)
            .into_iter()
            .filter(|w| naive_is_packed(w))
            .collect();
        let mut got: Vec<Vec<u32>> = enumerate_packed(n)
            .unwrap()
            .into_iter()
            .map(|u| u.letters().to_vec())
            .collect();
        got.sort();
        assert_eq!(got, expect, "n = {n}");
    }
}

/// `M_u · M_v` as the sum of packed `w` whose prefix packs to `u` and
/// suffix packs to `v`; the three split pieces by comparing maxima.
fn naive_product(op: TriOp, u: &[u32], v: &[u32]) -> NcqElement {
    let n = u.len() + v.len();
    let mut out = Element::zero();
    for w in all_words(n, n as u32) {
        if !naive_is_packed(&w) {
            continue;
        }
        let (p, s) = w.split_at(u.len());
        if naive_pack(p) != u || naive_pack(s) != v {
            continue;
        }
        let (mp, ms) = (p.iter().max().unwrap(), s.iter().max().unwrap());
        let keep = match op {
            TriOp::Full => true,
            TriOp::Prec => mp > ms,
            TriOp::Circ => mp == ms,
            TriOp::Succ => mp < ms,
        };
        if keep {
            out.add_term(PackedWord::new(w).unwrap(), dendrikit::linalg::int(1));
        }
    }
    out
}

#[test]
fn products_against_definition() {
    for total in 2..=5 {
        for a in 1..total {
            for u in enumerate_packed(a).unwrap() {
                for v in enumerate_packed(total - a).unwrap() {
                    let x = Element::basis(u.clone());
                    let y = Element::basis(v.clone());
                    for op in TriOp::ALL {
                        assert_eq!(
                            product(op, &x, &y).unwrap(),
                            naive_product(op, u.letters(), v.letters()),
                            "{op} {u} {v}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn delannoy_term_counts() {
    // Number of quasi-shuffles of value chains of lengths k and l.
    let m = |v: &[u32]| Element::basis(PackedWord::new(v.to_vec()).unwrap());
    let len = |x: &[u32], y: &[u32]| product(TriOp::Full, &m(x), &m(y)).unwrap().len();
    assert_eq!(len(&[1], &[1]), 3);
    assert_eq!(len(&[1, 2], &[1]), 5);
    assert_eq!(len(&[1, 2], &[2, 1]), 13);
    assert_eq!(len(&[1, 2, 3], &[1, 2, 3]), 63);
}

#[test]
fn parking_fibers_by_brute_force() {
    for n in 1..=5usize {
        let mut by_pack: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
        for w in all_words(n, n as u32) {
            if naive_is_parking(&w) {
                by_pack.entry(naive_pack(&w)).or_default().push(w);
            }
        }
        let total: usize = by_pack.values().map(Vec::len).sum();
        assert_eq!(total, (n + 1).pow(n as u32 - 1));
        for u in enumerate_packed(n).unwrap() {
            let expect = &by_pack[u.letters()];
            let got: Vec<Vec<u32>> = parking_fiber(&u)
                .into_iter()
                .map(|a| a.letters().to_vec())
                .collect();
            assert_eq!(&got, expect, "fiber of {u}");
            let lex_max = expect.iter().max().unwrap();
            assert_eq!(detass(&u).unwrap().letters(), &lex_max[..], "detass of {u}");
        }
    }
}

/// Plane trees without unary nodes, counted by leaves.
fn schroeder_by_leaves(max_leaves: usize) -> Vec<u64> {
    // f[m] = trees with m leaves; g[k][m] = ordered forests of k trees.
    let mut f = vec![0u64; max_leaves + 1];
    f[1] = 1;
    for m in 2..=max_leaves {
        // Forests of at least two trees with m leaves in total.
        let mut forests = vec![0u64; m + 1];
        let mut count = 0;
        let mut prev = f.clone();
        for _k in 2..=m {
            for (s, slot) in forests.iter_mut().enumerate() {
                *slot = (1..s).map(|a| prev[a] * f[s - a]).sum();
            }
            count += forests[m];
            prev = forests.clone();
        }
        f[m] = count;
    }
    f
}

#[test]
fn tree_counts_by_recurrence() {
    let f = schroeder_by_leaves(8);
    for n in 1..=7 {
        assert_eq!(
            enumerate_trees(n).unwrap().len() as u64,
            f[n + 1],
            "n = {n}"
        );
    }
    assert_eq!(&f[2..8], &[1, 3, 11, 45, 197, 903]);
}

#[test]
fn tree_fibers_partition_packed_words() {
    for n in 1..=5 {
        let fibers = fibers_by_tree(n).unwrap();
        assert_eq!(fibers.len(), enumerate_trees(n).unwrap().len());
        let mut all: Vec<PackedWord> = fibers.into_values().flatten().collect();
        all.sort();
        assert_eq!(all, enumerate_packed(n).unwrap());
    }
}

#[test]
fn face_product_by_weighted_letters() {
    // Lexicographic pairs are ranked like u_i * (n + 1) + v_i.
    for n in 1..=4 {
        let all = enumerate_packed(n).unwrap();
        for u in &all {
            for v in &all {
                let w: Vec<u32> = u
                    .letters()
                    .iter()
                    .zip(v.letters())
                    .map(|(a, b)| a * (n as u32 + 1) + b)
                    .collect();
                assert_eq!(tits_product(u, v).unwrap().letters(), &naive_pack(&w)[..]);
            }
        }
    }
}

#[test]
fn sylvester_counts_are_frozen() {
    let counts: Vec<usize> = (1..=6).map(|n| sylv_class_count(n).unwrap()).collect();
    assert_eq!(counts, vec![1, 3, 11, 45, 197, 903]);
}
