//! Hand-entered classical polyhedra used as fixtures and counterexamples.

use crate::polyhedron::Polyhedron;

/// Tetrahedron: 4 triangles, (v, e, f) = (4, 6, 4).
pub fn tetrahedron() -> Polyhedron {
    let faces = vec![
        vec![0u64, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 1],
        vec![1, 3, 2],
    ];
    Polyhedron::from_faces(&faces).expect("tetrahedron is valid")
}

/// The n-gonal prism: top and bottom n-gons joined by n quadrilaterals.
///
/// Vertices `0..n` on top, `n..2n` on the bottom; top face counterclockwise
/// seen from above.
pub fn prism(n: usize) -> Polyhedron {
    assert!(n >= 3, "prisms need n >= 3");
    let n64 = n as u64;
    let mut faces: Vec<Vec<u64>> = Vec::with_capacity(n + 2);
    faces.push((0..n64).collect());
    faces.push((n64..2 * n64).rev().collect());
    for i in 0..n64 {
        let j = (i + 1) % n64;
        faces.push(vec![j, i, n64 + i, n64 + j]);
    }
    Polyhedron::from_faces(&faces).expect("prism is valid")
}

/// Triangular prism, one of the two types excluded by the right-angled
/// classification.
pub fn triangular_prism() -> Polyhedron {
    prism(3)
}

/// Cube: the square prism.
pub fn cube() -> Polyhedron {
    prism(4)
}

/// Pentagonal prism.
pub fn pentagonal_prism() -> Polyhedron {
    prism(5)
}

/// A regular dodecahedron entered face by face.
///
/// Vertex layout follows the classical coordinates: 0-7 are the cube corners
/// (±1, ±1, ±1), 8-11 are (0, ±1/φ, ±φ), 12-15 are (±1/φ, ±φ, 0) and 16-19
/// are (±φ, 0, ±1/φ).  Cycles run counterclockwise seen from outside.
pub fn dodecahedron() -> Polyhedron {
    let faces = vec![
        vec![0u64, 8, 10, 2, 16],
        vec![0, 12, 14, 4, 8],
        vec![0, 16, 17, 1, 12],
        vec![1, 9, 5, 14, 12],
        vec![1, 17, 3, 11, 9],
        vec![2, 10, 6, 15, 13],
        vec![2, 13, 3, 17, 16],
        vec![3, 13, 15, 7, 11],
        vec![4, 14, 5, 19, 18],
        vec![4, 18, 6, 10, 8],
        vec![5, 9, 11, 7, 19],
        vec![6, 18, 19, 7, 15],
    ];
    Polyhedron::from_faces(&faces).expect("dodecahedron is valid")
}
