//! Construction and recognition of Loebell polyhedra.
//!
//! L(n) is built from two pentagonal flowers (an n-gon surrounded by a ring
//! of n pentagons) glued along their boundary circles with a half-petal
//! offset, the unique gluing that makes every boundary vertex trivalent.
//! L(5) is the dodecahedron.

use std::collections::BTreeMap;

use crate::canonical;
#[cfg(test)]
use crate::circuits;
use crate::error::{RapError, Result};
use crate::polyhedron::Polyhedron;

/// Index of a Loebell polyhedron; `n >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LobellId(pub u64);

/// Builds L(n).
///
/// Vertex layout: `0..n` inner ring of the first flower, `n..2n` inner ring
/// of the second, `2n..4n` the shared boundary circle.  Spokes of the first
/// flower land on even boundary vertices, spokes of the second on odd ones,
/// which is the half-petal offset.  The result has (v, e, f) =
/// (4n, 6n, 2n + 2).
pub fn build_lobell(n: u64) -> Result<Polyhedron> {
    if n < 5 {
        return Err(RapError::NTooSmall { n });
    }
    let a = |i: u64| i % n;
    let b = |i: u64| n + i % n;
    let c = |j: u64| 2 * n + j % (2 * n);

    let mut faces: Vec<Vec<u64>> = Vec::with_capacity(2 * n as usize + 2);
    // First n-gon, counterclockwise seen from outside.
    faces.push((0..n).map(a).collect());
    // Petals of the first flower.
    for i in 0..n {
        faces.push(vec![a(i + 1), a(i), c(2 * i), c(2 * i + 1), c(2 * i + 2)]);
    }
    // Second n-gon, reversed.
    faces.push((0..n).rev().map(b).collect());
    // Petals of the second flower.
    for i in 0..n {
        faces.push(vec![
            b(i),
            b(i + 1),
            c(2 * i + 3),
            c(2 * i + 2),
            c(2 * i + 1),
        ]);
    }
    let p = Polyhedron::from_faces(&faces)?;
    debug_assert!(p.is_trivalent());
    debug_assert_eq!(
        (p.vertex_count(), p.edge_count(), p.face_count()),
        (4 * n as usize, 6 * n as usize, 2 * n as usize + 2)
    );
    Ok(p)
}

/// Recognizes Loebell polyhedra up to isomorphism.
///
/// The face histogram is matched first ({pentagon: 12} with f = 12, or
/// {pentagon: 2n, n-gon: 2} with f = 2n + 2), then the candidate is compared
/// against `build_lobell(n)` by canonical code.
pub fn recognize_lobell(p: &Polyhedron) -> Option<LobellId> {
    let counts = p.counts();
    let candidate: u64 = if counts.faces == 12 && counts.histogram == BTreeMap::from([(5, 12)]) {
        5
    } else {
        let n = (counts.faces.checked_sub(2)? / 2) as u64;
        if n < 6
            || counts.faces != 2 * n as usize + 2
            || counts.histogram != BTreeMap::from([(5, 2 * n as usize), (n as usize, 2)])
        {
            return None;
        }
        n
    };
    let reference = build_lobell(candidate).ok()?;
    if canonical::isomorphic(p, &reference) {
        Some(LobellId(candidate))
    } else {
        None
    }
}

/// The expected pentagon count of L(n): the 2n petals, plus the two n-gons
/// when n = 5.
pub fn lobell_pentagon_count(n: u64) -> usize {
    if n == 5 {
        12
    } else {
        2 * n as usize
    }
}
