//! A reference corpus of polyhedra built from Loebell polyhedra by
//! composition and doubling, plus the classical counterexamples.
//!
//! The admissible corpus is what the test suites sweep for structural
//! invariants; keeping it here makes the same fixtures available to every
//! test target and to demos.

use crate::compose::{compose, double};
use crate::error::Result;
use crate::lobell::build_lobell;
use crate::polyhedron::{FaceId, Polyhedron};
use crate::shapes;

/// A named corpus member.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: Polyhedron,
}

fn entry(name: &str, poly: Polyhedron) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        poly,
    }
}

/// The first face of `p` with `size` edges.
pub fn first_face_of_size(p: &Polyhedron, size: usize) -> Option<FaceId> {
    (0..p.face_count()).find(|&f| p.face_size(f) == size)
}

/// Admissible corpus: the first Loebell polyhedra together with assorted
/// compositions (pentagon and n-gon gluings, varied offsets and flips),
/// doubles, and second-generation compositions.  At least 20 members.
pub fn admissible_corpus() -> Result<Vec<CorpusEntry>> {
    let l5 = build_lobell(5)?;
    let l6 = build_lobell(6)?;
    let l7 = build_lobell(7)?;
    let l8 = build_lobell(8)?;
    let pent = |p: &Polyhedron| first_face_of_size(p, 5).expect("a pentagon face");

    let mut corpus = vec![
        entry("L(5)", l5.clone()),
        entry("L(6)", l6.clone()),
        entry("L(7)", l7.clone()),
        entry("L(8)", l8.clone()),
    ];

    // Pentagon-face compositions with assorted correspondences.
    let pairs: [(&Polyhedron, &Polyhedron, usize, bool, &str); 9] = [
        (&l5, &l5, 0, false, "L(5)*L(5)"),
        (&l5, &l5, 2, true, "L(5)*L(5) offset 2 flip"),
        (&l5, &l6, 1, false, "L(5)*L(6)"),
        (&l5, &l7, 3, true, "L(5)*L(7)"),
        (&l6, &l6, 0, false, "L(6)*L(6)"),
        (&l6, &l7, 4, false, "L(6)*L(7)"),
        (&l7, &l7, 2, true, "L(7)*L(7)"),
        (&l5, &l8, 0, true, "L(5)*L(8)"),
        (&l6, &l8, 1, false, "L(6)*L(8)"),
    ];
    for (p1, p2, offset, flip, name) in pairs {
        let (p, _) = compose(p1, pent(p1), p2, pent(p2), offset, flip)?;
        corpus.push(entry(name, p));
    }

    // Compositions along the big n-gon faces (face 0 is the first n-gon).
    let (hex_comp, _) = compose(&l6, 0, &l6, 0, 0, false)?;
    corpus.push(entry("L(6)*L(6) along hexagons", hex_comp));
    let (hept_comp, _) = compose(&l7, 0, &l7, 0, 3, true)?;
    corpus.push(entry("L(7)*L(7) along heptagons", hept_comp));

    // Doubles.
    corpus.push(entry("double L(5)", double(&l5, 0)?));
    corpus.push(entry("double L(6) across hexagon", double(&l6, 0)?));
    corpus.push(entry("double L(6) across petal", double(&l6, 1)?));
    corpus.push(entry("double L(7) across heptagon", double(&l7, 0)?));
    corpus.push(entry("double L(8) across petal", double(&l8, 3)?));

    // Second generation.
    let (g1, _) = compose(&l5, 0, &l5, 0, 0, false)?;
    let (nested, _) = compose(&g1, pent(&g1), &l5, pent(&l5), 1, false)?;
    corpus.push(entry("(L(5)*L(5))*L(5)", nested));
    let dl6 = double(&l6, 0)?;
    let (nested2, _) = compose(&dl6, pent(&dl6), &l6, pent(&l6), 0, true)?;
    corpus.push(entry("double(L(6))*L(6)", nested2));

    Ok(corpus)
}

/// Non-admissible counterexamples with their failure modes.
pub fn negative_corpus() -> Vec<CorpusEntry> {
    vec![
        entry("tetrahedron", shapes::tetrahedron()),
        entry("triangular prism", shapes::triangular_prism()),
        entry("cube", shapes::cube()),
        entry("pentagonal prism", shapes::pentagonal_prism()),
        entry("hexagonal prism", shapes::prism(6)),
        entry("dodecahedron (hand-entered)", shapes::dodecahedron()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits;

    #[test]
    fn corpus_is_large_and_admissible() {
        let corpus = admissible_corpus().unwrap();
        assert!(corpus.len() >= 20, "corpus has {} members", corpus.len());
        for e in &corpus {
            assert!(
                circuits::admissible(&e.poly).is_admissible(),
                "{} should be admissible",
                e.name
            );
        }
    }

    #[test]
    fn corpus_has_very_good_edges_somewhere() {
        let corpus = admissible_corpus().unwrap();
        let total: usize = corpus
            .iter()
            .map(|e| {
                crate::reduction::classify_edges(&e.poly)
                    .map(|cl| cl.very_good().count())
                    .unwrap_or(0)
            })
            .sum();
        assert!(total > 0, "corpus should exercise very good edges");
    }
}
