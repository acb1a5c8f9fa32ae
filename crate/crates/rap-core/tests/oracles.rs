//! Oracle tests: the library's enumeration and canonicalization paths
//! checked against independent brute-force implementations.

mod common;

use std::collections::BTreeSet;

use rap_core::canonical::{canonical_form, isomorphic};
use rap_core::corpus;
use rap_core::polyhedron::Polyhedron;
use rap_core::prismatic_circuits;

use common::{brute_force_prismatic_circuits, graph_isomorphic};

fn small_corpus() -> Vec<corpus::CorpusEntry> {
    let mut all = corpus::admissible_corpus().unwrap();
    all.extend(corpus::negative_corpus());
    all.retain(|e| e.poly.face_count() <= 20);
    all
}

#[test]
fn circuit_enumeration_matches_brute_force() {
    for entry in small_corpus() {
        for k in 3..=5 {
            let fast: BTreeSet<Vec<usize>> = prismatic_circuits(&entry.poly, k)
                .into_iter()
                .map(|c| c.edge_key())
                .collect();
            let slow = brute_force_prismatic_circuits(&entry.poly, k);
            assert_eq!(fast, slow, "{} k={k}", entry.name);
        }
    }
}

#[test]
fn canonical_code_agrees_with_permutation_search() {
    let members = small_corpus();
    for i in 0..members.len() {
        for j in i..members.len() {
            let a = &members[i].poly;
            let b = &members[j].poly;
            let by_code = isomorphic(a, b);
            let by_search = graph_isomorphic(a, b);
            assert_eq!(
                by_code, by_search,
                "{} vs {}",
                members[i].name, members[j].name
            );
        }
    }
}

#[test]
fn canonical_code_survives_relabeling() {
    // A deterministic scramble: v -> (a*v + b) mod n with gcd(a, n) = 1.
    // This sweep covers the whole corpus (all members are well below 50
    // faces); the permutation-search cross-check runs on the small members.
    let mut all = corpus::admissible_corpus().unwrap();
    all.extend(corpus::negative_corpus());
    for entry in all {
        let p = &entry.poly;
        let n = p.vertex_count() as u64;
        let a = (1..n).rev().find(|x| gcd(*x, n) == 1).unwrap();
        let faces: Vec<Vec<u64>> = p
            .faces()
            .iter()
            .map(|f| f.iter().map(|&v| (a * v as u64 + 3) % n).collect())
            .collect();
        let q = Polyhedron::from_faces(&faces).unwrap();
        assert_eq!(
            canonical_form(p),
            canonical_form(&q),
            "{} relabeled",
            entry.name
        );
        if p.face_count() <= 20 {
            assert!(graph_isomorphic(p, &q));
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn doubles_across_different_faces_agree_with_oracle() {
    let l5 = rap_core::build_lobell(5).unwrap();
    let d0 = rap_core::double(&l5, 0).unwrap();
    let d7 = rap_core::double(&l5, 7).unwrap();
    assert_eq!(canonical_form(&d0), canonical_form(&d7));
    assert!(graph_isomorphic(&d0, &d7));
}
