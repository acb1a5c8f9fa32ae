//! Composition and doubling of right-angled polyhedra.
//!
//! Composition glues two polyhedra along a pair of faces with the same edge
//! count, deletes the interiors of the identified edges and demotes their
//! endpoints.  The seam vanishes: each pair of faces flanking the glued face
//! merges into one, and the merged spoke edges form the distinguished
//! prismatic k-circuit of the result.  Doubling is self-composition with the
//! mirror image under the identity correspondence.

use crate::circuits::{self, PrismaticCircuit};
use crate::error::{RapError, Result};
use crate::polyhedron::{FaceId, Polyhedron, VertexId};

/// Composes `p1` and `p2` along faces `f1` and `f2` of equal size k.
///
/// The gluing is parametrized by `offset ∈ [0, k)` and `flip`: the lowest-id
/// edge of `f1` is matched to the edge `offset` positions after the
/// lowest-id edge of `f2` in the cycle of `f2` (of the mirror image of `p2`
/// when `flip` is set).  All 2k gluings are reachable.
///
/// Returns the composition together with its distinguished prismatic
/// k-circuit.  Both inputs must be admissible; the result is admissible by
/// construction and this is re-verified.
pub fn compose(
    p1: &Polyhedron,
    f1: FaceId,
    p2: &Polyhedron,
    f2: FaceId,
    offset: usize,
    flip: bool,
) -> Result<(Polyhedron, PrismaticCircuit)> {
    let k1 = p1.face(f1)?.len();
    let k2 = p2.face(f2)?.len();
    if k1 != k2 {
        return Err(RapError::FaceSizeMismatch {
            size1: k1,
            size2: k2,
        });
    }
    circuits::require_admissible(p1)?;
    circuits::require_admissible(p2)?;

    let p2_glued;
    let p2_ref = if flip {
        p2_glued = p2.mirror();
        &p2_glued
    } else {
        p2
    };

    // Identify the vertex cycles u_i of f1 and x_j of f2 by x_{s - i} = u_i.
    // Both stored cycles start at their smallest vertex; anchor instead on
    // the lowest edge id of each face so that the offset is meaningful.
    let u_cycle = rotate_to_lowest_edge(p1, f1);
    let x_cycle = rotate_to_lowest_edge(p2_ref, f2);
    // Edge j of the rotated cycles joins positions j and j+1; edge 0 is the
    // lowest edge of each face.  Pairing edge 0 of f1 with edge `offset` of
    // f2 under the orientation-reversing identification x_{s-i} = u_i means
    // tau(0) = s - 1 = offset, so s = offset + 1.
    let s = (offset % k1) + 1;

    let (poly, circuit) = glue(p1, f1, &u_cycle, p2_ref, f2, &x_cycle, s)?;
    match circuits::admissible(&poly) {
        circuits::Admissibility::Admissible => Ok((poly, circuit)),
        verdict => Err(RapError::Internal(format!(
            "composition of admissible polyhedra is not admissible: {}",
            verdict.witness()
        ))),
    }
}

/// The double of `p` across face `f`: two mirror copies of `p` minus `f`
/// glued so that every boundary vertex of `f` meets its own mirror image.
pub fn double(p: &Polyhedron, f: FaceId) -> Result<Polyhedron> {
    p.face(f)?;
    circuits::require_admissible(p)?;
    let mirror = p.mirror();
    let u_cycle = rotate_to_lowest_edge(p, f);
    // Locate the shift that pins every boundary vertex to itself in the
    // mirror: x_{s - i} = u_i with x the mirror cycle of the same face.
    let x_cycle = rotate_to_lowest_edge(&mirror, f);
    let k = u_cycle.len();
    let pos = x_cycle
        .iter()
        .position(|&x| x == u_cycle[0])
        .ok_or_else(|| RapError::Internal("mirror face lost its vertices".into()))?;
    for i in 0..k {
        if x_cycle[(pos + k - i) % k] != u_cycle[i] {
            return Err(RapError::Internal(
                "mirror face cycle is not the reversal of the original".into(),
            ));
        }
    }
    let (poly, _) = glue(p, f, &u_cycle, &mirror, f, &x_cycle, pos)?;
    match circuits::admissible(&poly) {
        circuits::Admissibility::Admissible => Ok(poly),
        verdict => Err(RapError::Internal(format!(
            "double of an admissible polyhedron is not admissible: {}",
            verdict.witness()
        ))),
    }
}

/// The pairs of faces merged by `compose(p1, f1, p2, f2, offset, ...)`:
/// entry i is (face of `p1`, face of `p2`) glued into the i-th crossed face
/// of the composition.  `p2` must already be mirrored when flip is intended.
pub(crate) fn seam_face_pairing(
    p1: &Polyhedron,
    f1: FaceId,
    p2: &Polyhedron,
    f2: FaceId,
    offset: usize,
) -> Result<Vec<(FaceId, FaceId)>> {
    let k = p1.face(f1)?.len();
    if k != p2.face(f2)?.len() {
        return Err(RapError::FaceSizeMismatch {
            size1: k,
            size2: p2.face(f2)?.len(),
        });
    }
    let u_cycle = rotate_to_lowest_edge(p1, f1);
    let x_cycle = rotate_to_lowest_edge(p2, f2);
    let s = (offset % k) + 1;
    let mut pairs = Vec::with_capacity(k);
    for i in 0..k {
        let tau = (2 * k + s - 1 - i) % k;
        let e1 = p1
            .edge_id(u_cycle[i], u_cycle[(i + 1) % k])
            .ok_or_else(|| RapError::Internal("seam edge missing in p1".into()))?;
        let e2 = p2
            .edge_id(x_cycle[tau], x_cycle[(tau + 1) % k])
            .ok_or_else(|| RapError::Internal("seam edge missing in p2".into()))?;
        pairs.push((
            p1.edge_faces(e1).other(f1),
            p2.edge_faces(e2).other(f2),
        ));
    }
    Ok(pairs)
}

/// Face cycle rotated so that the face's lowest edge id joins positions 0
/// and 1.
fn rotate_to_lowest_edge(p: &Polyhedron, f: FaceId) -> Vec<VertexId> {
    let edges = p.face_edges(f);
    let start = edges
        .iter()
        .enumerate()
        .min_by_key(|&(_, e)| e)
        .map(|(i, _)| i)
        .unwrap();
    let cyc = p.face(f).unwrap();
    let mut out = Vec::with_capacity(cyc.len());
    out.extend_from_slice(&cyc[start..]);
    out.extend_from_slice(&cyc[..start]);
    out
}

/// Core gluing: seam vertex i of `f1` (in `u_cycle` order) is identified
/// with seam vertex (s - i) mod k of `f2` (in `x_cycle` order).
///
/// Face layout of the result: the k merged faces first (merged face i flanks
/// seam edge {u_i, u_{i+1}}), then the untouched faces of `p1`, then those
/// of `p2`.
fn glue(
    p1: &Polyhedron,
    f1: FaceId,
    u_cycle: &[VertexId],
    p2: &Polyhedron,
    f2: FaceId,
    x_cycle: &[VertexId],
    s: usize,
) -> Result<(Polyhedron, PrismaticCircuit)> {
    let k = u_cycle.len();
    let shift = p1.vertex_count() as u64;

    let g_of = |i: usize| -> Result<FaceId> {
        let e = p1
            .edge_id(u_cycle[i], u_cycle[(i + 1) % k])
            .ok_or_else(|| RapError::Internal("seam edge missing in p1".into()))?;
        Ok(p1.edge_faces(e).other(f1))
    };
    let h_of = |j: usize| -> Result<FaceId> {
        let e = p2
            .edge_id(x_cycle[j], x_cycle[(j + 1) % k])
            .ok_or_else(|| RapError::Internal("seam edge missing in p2".into()))?;
        Ok(p2.edge_faces(e).other(f2))
    };

    let mut flank1 = Vec::with_capacity(k);
    let mut flank2 = Vec::with_capacity(k);
    for i in 0..k {
        flank1.push(g_of(i)?);
        flank2.push(h_of(i)?);
    }
    for list in [&flank1, &flank2] {
        let mut sorted = list.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(RapError::Internal(
                "a face flanks the glued face along two edges".into(),
            ));
        }
    }

    let mut faces: Vec<Vec<u64>> = Vec::with_capacity(p1.face_count() + p2.face_count() - 2 - k);
    // Interior path of a flanking face: cycle rotated to start at the seam
    // dart, seam endpoints dropped.
    let interior = |p: &Polyhedron, face: FaceId, from: VertexId| -> Vec<VertexId> {
        let cyc = p.face_cycle_from(face, from);
        cyc[2..].to_vec()
    };
    // Merged faces C_i: interior of G_i walked u_i -> u_{i+1}, then interior
    // of H_{tau(i)} walked x_{tau(i)} -> x_{tau(i)+1}, tau(i) = s - 1 - i.
    for i in 0..k {
        let tau = (2 * k + s - 1 - i) % k;
        // G_i contains the dart u_{i+1} -> u_i, so its cycle from u_{i+1}
        // reads [u_{i+1}, u_i, interior...].
        let a = interior(p1, flank1[i], u_cycle[(i + 1) % k]);
        let b = interior(p2, flank2[tau], x_cycle[(tau + 1) % k]);
        let mut merged: Vec<u64> = a.iter().map(|&v| v as u64).collect();
        merged.extend(b.iter().map(|&v| v as u64 + shift));
        faces.push(merged);
    }
    for f in 0..p1.face_count() {
        if f != f1 && !flank1.contains(&f) {
            faces.push(p1.face(f)?.iter().map(|&v| v as u64).collect());
        }
    }
    for f in 0..p2.face_count() {
        if f != f2 && !flank2.contains(&f) {
            faces.push(p2.face(f)?.iter().map(|&v| v as u64 + shift).collect());
        }
    }

    let (poly, map) = Polyhedron::from_faces_mapped(&faces)?;

    // Distinguished circuit: crossed edge i is the merged spoke through the
    // demoted vertex u_i; its endpoints are the seam neighbors of u_i in p1
    // and of x_{sigma(i)} in p2, sigma(i) = s - i.
    let mut crossed = Vec::with_capacity(k);
    for (i, &u_i) in u_cycle.iter().enumerate() {
        let sigma = (2 * k + s - i) % k;
        let w = seam_neighbor(p1, f1, u_i)?;
        let z = seam_neighbor(p2, f2, x_cycle[sigma])?;
        let a = map[&(w as u64)];
        let b = map[&(z as u64 + shift)];
        let e = poly.edge_id(a, b).ok_or_else(|| {
            RapError::Internal("merged spoke edge missing from the composition".into())
        })?;
        crossed.push(e);
    }
    // Merged face C_i sits between crossed edges i and i+1, which matches
    // the convention edges[i] = faces[i-1] ∩ faces[i] directly.
    let circuit = PrismaticCircuit {
        faces: (0..k).collect(),
        crossed_edges: crossed,
    }
    .normalized();
    circuit.validate(&poly)?;
    Ok((poly, circuit))
}

/// The neighbor of seam vertex `v` along its spoke (the unique edge at `v`
/// not on the glued face).
fn seam_neighbor(p: &Polyhedron, glued: FaceId, v: VertexId) -> Result<VertexId> {
    let face_edges: std::collections::BTreeSet<usize> =
        p.face_edges(glued).iter().copied().collect();
    let spokes: Vec<usize> = p
        .vertex_edges(v)
        .iter()
        .copied()
        .filter(|e| !face_edges.contains(e))
        .collect();
    if spokes.len() != 1 {
        return Err(RapError::Internal(format!(
            "seam vertex {v} has {} spokes, expected 1",
            spokes.len()
        )));
    }
    Ok(p.edges()[spokes[0]].other(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;
    use crate::circuits::side_profile;
    use crate::lobell::build_lobell;
    use std::collections::BTreeMap;

    #[test]
    fn compose_l5_l5() {
        let l5 = build_lobell(5).unwrap();
        let (p, c) = compose(&l5, 0, &l5, 0, 0, false).unwrap();
        let counts = p.counts();
        assert_eq!((counts.vertices, counts.edges, counts.faces), (30, 45, 17));
        assert_eq!(counts.histogram, BTreeMap::from([(5, 12), (6, 5)]));
        assert_eq!(c.len(), 5);
        // The distinguished circuit crosses the hexagon-hexagon edges.
        for &e in &c.crossed_edges {
            let ef = p.edge_faces(e);
            assert_eq!(p.face_size(ef.forward), 6);
            assert_eq!(p.face_size(ef.backward), 6);
        }
        // Roofs on both sides, no flats.
        let profile = side_profile(&p, &c).unwrap();
        for en in profile.entries {
            assert_eq!(en.side[0].edge_count, 2);
            assert_eq!(en.side[1].edge_count, 2);
        }
    }

    #[test]
    fn double_equals_self_composition() {
        let l5 = build_lobell(5).unwrap();
        let d = double(&l5, 3).unwrap();
        let counts = d.counts();
        assert_eq!((counts.vertices, counts.edges, counts.faces), (30, 45, 17));
        let (c, _) = compose(&l5, 3, &l5, 3, 0, false).unwrap();
        assert!(canonical::isomorphic(&d, &c));
    }

    #[test]
    fn doubles_across_any_face_of_l5_agree() {
        let l5 = build_lobell(5).unwrap();
        let d0 = double(&l5, 0).unwrap();
        let d7 = double(&l5, 7).unwrap();
        assert!(canonical::isomorphic(&d0, &d7));
    }

    #[test]
    fn compose_l5_l6_is_admissible() {
        let l5 = build_lobell(5).unwrap();
        let l6 = build_lobell(6).unwrap();
        // Face 1 of each is a petal pentagon.
        let (p, _) = compose(&l5, 1, &l6, 1, 2, true).unwrap();
        let (pentagons, _) = p.pentagon_excess().unwrap();
        assert!(pentagons >= 12);
        assert_eq!(p.face_count(), 12 + 14 - 2 - 5);
    }

    #[test]
    fn size_mismatch_rejected() {
        let l5 = build_lobell(5).unwrap();
        let l6 = build_lobell(6).unwrap();
        // Face 0 of L(6) is the hexagon, face 0 of L(5) a pentagon.
        assert_eq!(
            compose(&l5, 0, &l6, 0, 0, false),
            Err(RapError::FaceSizeMismatch { size1: 5, size2: 6 })
        );
    }

    #[test]
    fn inadmissible_inputs_rejected() {
        let cube = crate::shapes::cube();
        assert!(matches!(
            compose(&cube, 0, &cube, 0, 0, false),
            Err(RapError::NotAdmissible { .. })
        ));
        assert!(matches!(
            double(&cube, 0),
            Err(RapError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn all_gluings_build() {
        let l5 = build_lobell(5).unwrap();
        for offset in 0..5 {
            for flip in [false, true] {
                let (p, c) = compose(&l5, 2, &l5, 4, offset, flip).unwrap();
                assert_eq!(p.face_count(), 17);
                assert_eq!(c.len(), 5);
            }
        }
    }
}
