//! Seeded random alternating diagrams.
//!
//! Every diagram is the closure of a braid in which generator `k` always
//! appears with sign `(-1)^(k+1)`, which makes the closure alternating. Such
//! a closure is a chain of Murasugi sums of `(2, n)` torus-link diagrams
//! glued along the inner braid circles, and the length of an inner circle
//! is the number of times the word switches between the two generators
//! beside it. Filtering on that length gives diagrams for each part of the
//! decomposition theory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linkdiag::{closed_braid, LinkDiagram};
use crate::murasugi::split;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidShape {
    pub strands: usize,
    pub min_crossings: usize,
    pub max_crossings: usize,
}

/// A word on `strands - 1` generators using each at least twice, so the
/// closure is connected and has no nugatory crossing.
pub fn alternating_word(rng: &mut impl Rng, shape: BraidShape) -> Vec<i32> {
    let gens = shape.strands - 1;
    let lo = shape.min_crossings.max(2 * gens);
    let len = rng.gen_range(lo..=shape.max_crossings.max(lo));
    loop {
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let k = rng.gen_range(1..=gens) as i32;
                if k % 2 == 1 {
                    k
                } else {
                    -k
                }
            })
            .collect();
        if (1..=gens as i32).all(|k| word.iter().filter(|g| g.abs() == k).count() >= 2) {
            return word;
        }
    }
}

fn max_t2_length(d: &LinkDiagram) -> usize {
    d.t2_circles().iter().map(|c| d.t2_length(c).unwrap_or(usize::MAX)).max().unwrap_or(0)
}

/// Draws diagrams until `count` of them satisfy `keep`. Names encode the
/// seed and the draw index, so a diagram can be regenerated from its name.
pub fn sample(
    seed: u64,
    count: usize,
    shapes: &[BraidShape],
    keep: impl Fn(&LinkDiagram) -> bool,
) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut draw = 0usize;
    while out.len() < count {
        let shape = shapes[rng.gen_range(0..shapes.len())];
        let word = alternating_word(&mut rng, shape);
        let d = closed_braid(format!("gen-{seed}-{draw}"), shape.strands, &word).expect("braid closures are valid");
        draw += 1;
        if d.is_alternating() && keep(&d) {
            out.push(d);
        }
    }
    out
}

const SMALL: [BraidShape; 2] = [
    BraidShape { strands: 3, min_crossings: 4, max_crossings: 9 },
    BraidShape { strands: 4, min_crossings: 6, max_crossings: 10 },
];

/// Alternating diagrams with at least one T2 circle, all of length at most 2.
pub fn certifiable(seed: u64, count: usize) -> Vec<LinkDiagram> {
    sample(seed, count, &SMALL, |d| !d.t2_circles().is_empty() && max_t2_length(d) <= 2)
}

/// Alternating diagrams whose default split circle has length exactly `l`.
pub fn with_split_length(seed: u64, count: usize, l: usize) -> Vec<LinkDiagram> {
    let shapes = [BraidShape { strands: 3, min_crossings: 2 * l, max_crossings: 2 * l + 6 }];
    sample(seed, count, &shapes, |d| split(d, None).is_ok_and(|s| s.length == l))
}
