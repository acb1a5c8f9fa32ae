//! Canonical codes for oriented maps.
//!
//! The polyhedron is viewed as a combinatorial map: a set of darts (directed
//! edges) with two permutations, `next` (successor inside the face cycle) and
//! `twin` (the reverse dart).  Rooting the map at a dart determines a
//! breadth-first numbering of all darts, and the sequence
//! `(number(next(d)), number(twin(d)))` over darts in numbering order
//! reconstructs the rooted map exactly.  Minimizing this sequence over all
//! roots, and over the mirror map as well, yields a code that two polyhedra
//! share if and only if they are isomorphic as maps up to reflection.

use std::collections::VecDeque;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::polyhedron::Polyhedron;

/// A complete isomorphism invariant (mirror images compare equal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode {
    code: Vec<u32>,
}

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.code
    }

    /// Short hex digest of the code, used in traces and CLI output.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for x in &self.code {
            hasher.update(x.to_be_bytes());
        }
        let out = hasher.finalize();
        out[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

struct DartMap {
    next: Vec<u32>,
    twin: Vec<u32>,
}

impl DartMap {
    fn of(p: &Polyhedron) -> DartMap {
        let dart_count = 2 * p.edge_count();
        let mut next = vec![0u32; dart_count];
        let mut twin = vec![0u32; dart_count];
        // Dart id: 2 * edge + 0 for the a->b dart, + 1 for b->a.
        // next(d) = dart leaving the head of d inside the same face.
        let dart_of = |u: usize, v: usize| -> u32 {
            let e = p.edge_id(u, v).expect("face edge exists");
            let edge = p.edge(e).unwrap();
            if edge.a == u {
                (2 * e) as u32
            } else {
                (2 * e + 1) as u32
            }
        };
        for f in 0..p.face_count() {
            let cyc = p.face(f).unwrap();
            let k = cyc.len();
            for i in 0..k {
                let d = dart_of(cyc[i], cyc[(i + 1) % k]);
                let n = dart_of(cyc[(i + 1) % k], cyc[(i + 2) % k]);
                next[d as usize] = n;
            }
        }
        for e in 0..p.edge_count() {
            twin[2 * e] = (2 * e + 1) as u32;
            twin[2 * e + 1] = (2 * e) as u32;
        }
        DartMap { next, twin }
    }

    /// The rooted code: BFS over darts through `next` and `twin`, then the
    /// pair (number of next, number of twin) per dart in discovery order.
    fn rooted_code(&self, root: u32) -> Vec<u32> {
        let n = self.next.len();
        let mut number = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::with_capacity(n);
        number[root as usize] = 0;
        order.push(root);
        queue.push_back(root);
        while let Some(d) = queue.pop_front() {
            for cand in [self.next[d as usize], self.twin[d as usize]] {
                if number[cand as usize] == u32::MAX {
                    number[cand as usize] = order.len() as u32;
                    order.push(cand);
                    queue.push_back(cand);
                }
            }
        }
        let mut code = Vec::with_capacity(2 * n);
        for &d in &order {
            code.push(number[self.next[d as usize] as usize]);
            code.push(number[self.twin[d as usize] as usize]);
        }
        code
    }

    fn min_code(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for root in 0..self.next.len() as u32 {
            let code = self.rooted_code(root);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.expect("at least one dart")
    }
}

/// The canonical code of `p`: minimum rooted code over all darts of `p` and
/// of its mirror image.
pub fn canonical_form(p: &Polyhedron) -> CanonicalCode {
    let direct = DartMap::of(p).min_code();
    let mirrored = DartMap::of(&p.mirror()).min_code();
    CanonicalCode {
        code: direct.min(mirrored),
    }
}

/// Whether two polyhedra are combinatorially isomorphic (mirror images
/// included).
pub fn isomorphic(p: &Polyhedron, q: &Polyhedron) -> bool {
    if p.vertex_count() != q.vertex_count()
        || p.edge_count() != q.edge_count()
        || p.face_count() != q.face_count()
    {
        return false;
    }
    canonical_form(p) == canonical_form(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::Polyhedron;
    use crate::shapes;

    fn relabel(p: &Polyhedron, perm: &[u64]) -> Polyhedron {
        let faces: Vec<Vec<u64>> = p
            .faces()
            .iter()
            .map(|f| f.iter().map(|&v| perm[v]).collect())
            .collect();
        Polyhedron::from_faces(&faces).unwrap()
    }

    #[test]
    fn relabeling_preserves_code() {
        let p = shapes::dodecahedron();
        // An arbitrary fixed permutation of 0..20.
        let perm: Vec<u64> = vec![
            7, 13, 2, 19, 0, 11, 5, 17, 9, 4, 15, 1, 18, 6, 12, 3, 16, 8, 14, 10,
        ];
        let q = relabel(&p, &perm);
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn face_order_and_rotation_preserve_code() {
        let p = shapes::cube();
        let mut faces: Vec<Vec<u64>> = p
            .faces()
            .iter()
            .map(|f| f.iter().map(|&v| v as u64).collect())
            .collect();
        faces.swap(0, 3);
        faces.swap(1, 5);
        faces[2].rotate_left(2);
        let q = Polyhedron::from_faces(&faces).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn mirror_images_compare_equal() {
        let p = shapes::dodecahedron();
        assert_eq!(canonical_form(&p), canonical_form(&p.mirror()));
    }

    #[test]
    fn different_shapes_differ() {
        assert_ne!(
            canonical_form(&shapes::cube()),
            canonical_form(&shapes::dodecahedron())
        );
    }

    #[test]
    fn prisms_of_different_sizes_differ() {
        assert!(!isomorphic(&shapes::prism(5), &shapes::prism(6)));
        assert!(isomorphic(&shapes::cube(), &shapes::prism(4)));
    }
}
