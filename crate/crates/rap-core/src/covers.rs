//! Reflection-group data for the eightfold manifold covers.
//!
//! The faces of a right-angled polyhedron admit a proper coloring by the
//! four elements of (Z/2Z)²; summing the colors of the two faces containing
//! an edge colors every edge by a nonzero element, and no two equally
//! colored edges share an endpoint.  The edge coloring defines a
//! homomorphism h from the Wirtinger-presented double-cover group onto
//! (Z/2Z)² whose kernel, of index 2·4 = 8 in the full reflection group,
//! is the fundamental group of a manifold cover.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuits;
use crate::error::{RapError, Result};
use crate::polyhedron::{EdgeId, FaceId, Polyhedron};

/// A proper face coloring by elements of (Z/2Z)², encoded 0..3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceColoring {
    /// Color per face id; the boundary face (if any) is `None`.
    pub colors: Vec<Option<u8>>,
    pub boundary_face: Option<FaceId>,
}

impl FaceColoring {
    pub fn color(&self, f: FaceId) -> Option<u8> {
        self.colors.get(f).copied().flatten()
    }

    /// Checks properness against the polyhedron's adjacency.
    pub fn verify(&self, p: &Polyhedron) -> Result<()> {
        if self.colors.len() != p.face_count() {
            return Err(RapError::Internal("coloring has wrong length".into()));
        }
        for e in 0..p.edge_count() {
            let ef = p.edge_faces(e);
            if let (Some(c1), Some(c2)) = (self.color(ef.forward), self.color(ef.backward)) {
                if c1 == c2 {
                    return Err(RapError::ImproperFaceColoring {
                        f1: ef.forward,
                        f2: ef.backward,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A proper 3-edge-coloring by the nonzero elements of (Z/2Z)², derived
/// from a face coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    /// Color per edge id; edges of the boundary face are `None`.
    pub colors: Vec<Option<u8>>,
    /// Result of the endpoint check: no two edges of equal color share a
    /// vertex.  Always true for proper face colorings.
    pub proper: bool,
}

/// Finds a proper face 4-coloring by deterministic backtracking (faces in id
/// order, colors 0..3).  Existence is guaranteed for planar duals; failure
/// is therefore an internal error.
pub fn face_four_coloring(p: &Polyhedron, boundary_face: Option<FaceId>) -> Result<FaceColoring> {
    if let Some(b) = boundary_face {
        p.face(b)?;
    }
    let f = p.face_count();
    let mut adjacency: Vec<Vec<FaceId>> = vec![Vec::new(); f];
    for e in 0..p.edge_count() {
        let ef = p.edge_faces(e);
        adjacency[ef.forward].push(ef.backward);
        adjacency[ef.backward].push(ef.forward);
    }
    let mut colors: Vec<Option<u8>> = vec![None; f];
    let order: Vec<FaceId> = (0..f).filter(|&x| Some(x) != boundary_face).collect();

    fn assign(
        order: &[FaceId],
        pos: usize,
        adjacency: &[Vec<FaceId>],
        colors: &mut Vec<Option<u8>>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let face = order[pos];
        for c in 0..4u8 {
            if adjacency[face].iter().all(|&nb| colors[nb] != Some(c)) {
                colors[face] = Some(c);
                if assign(order, pos + 1, adjacency, colors) {
                    return true;
                }
                colors[face] = None;
            }
        }
        false
    }

    if !assign(&order, 0, &adjacency, &mut colors) {
        return Err(RapError::Internal(
            "backtracking found no proper 4-coloring of a planar dual".into(),
        ));
    }
    let fc = FaceColoring {
        colors,
        boundary_face,
    };
    fc.verify(p)?;
    Ok(fc)
}

/// Colors each edge by the sum of the colors of its two faces and verifies
/// that the result is a proper 3-edge-coloring.
pub fn edge_coloring(p: &Polyhedron, fc: &FaceColoring) -> Result<EdgeColoring> {
    fc.verify(p)?;
    p.require_trivalent()?;
    let mut colors: Vec<Option<u8>> = vec![None; p.edge_count()];
    for (e, slot) in colors.iter_mut().enumerate() {
        let ef = p.edge_faces(e);
        if let (Some(c1), Some(c2)) = (fc.color(ef.forward), fc.color(ef.backward)) {
            let c = c1 ^ c2;
            debug_assert!(c != 0);
            *slot = Some(c);
        }
    }
    // No two equally colored edges may share an endpoint.
    let mut proper = true;
    'outer: for v in 0..p.vertex_count() {
        let es = p.vertex_edges(v);
        for i in 0..es.len() {
            for j in (i + 1)..es.len() {
                if let (Some(a), Some(b)) = (colors[es[i]], colors[es[j]]) {
                    if a == b {
                        proper = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    if !proper {
        return Err(RapError::Internal(
            "derived edge coloring is not proper although the face coloring is".into(),
        ));
    }
    Ok(EdgeColoring { colors, proper })
}

/// Which group a presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    /// Full reflection group (one generator per face).
    Reflection,
    /// Mod-2-length kernel with Wirtinger generators (one per edge).
    WirtingerDoubleCover,
    /// Reflection group of a composition presented as a free product with
    /// amalgamation.
    Amalgam,
}

/// A finite group presentation: named generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub kind: GroupKind,
    pub generators: Vec<String>,
    /// Relators as `*`-joined words, e.g. `r3*r7*r3*r7`.
    pub relators: Vec<String>,
    /// Optional annotations (generator-to-face maps and the like).
    pub notes: Vec<String>,
}

impl GroupPresentation {
    /// Text export: one generator per line, then one relator per line.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            GroupKind::Reflection => "reflection",
            GroupKind::WirtingerDoubleCover => "wirtinger-double-cover",
            GroupKind::Amalgam => "amalgam",
        };
        let _ = writeln!(out, "# group: {kind}");
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        for g in &self.generators {
            let _ = writeln!(out, "gen {g}");
        }
        for r in &self.relators {
            let _ = writeln!(out, "rel {r}");
        }
        out
    }
}

/// The certificate that the edge-coloring homomorphism h is well defined:
/// every relator of the Wirtinger presentation maps to 0 in (Z/2Z)².
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCertificate {
    /// (relator, image) pairs; every image must be 0.
    pub relator_images: Vec<(String, u8)>,
    pub all_zero: bool,
    /// Index bookkeeping for the cover: 2 (double cover) times 4 (kernel of
    /// h) = 8.
    pub cover_index: u32,
}

/// The presentation bundle for one polyhedron and coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationBundle {
    pub gamma: GroupPresentation,
    pub g: GroupPresentation,
    pub h_certificate: HCertificate,
}

/// Builds the standard and Wirtinger presentations plus the h-certificate.
///
/// With a boundary face F the generators of that face (and, for the
/// Wirtinger presentation, its edges and vertices) are omitted, matching
/// the boundary-orbifold variants of the groups.
pub fn presentations(
    p: &Polyhedron,
    fc: &FaceColoring,
    boundary_face: Option<FaceId>,
) -> Result<PresentationBundle> {
    circuits::require_admissible(p)?;
    fc.verify(p)?;
    if fc.boundary_face != boundary_face {
        return Err(RapError::Internal(
            "coloring was built for a different boundary face".into(),
        ));
    }
    let ec = edge_coloring(p, fc)?;

    // Standard presentation: r_i per face, involutions, commuting squares
    // for adjacent pairs (one per edge).
    let mut gamma_gens = Vec::new();
    for f in 0..p.face_count() {
        if Some(f) != boundary_face {
            gamma_gens.push(format!("r{f}"));
        }
    }
    let mut gamma_rels = Vec::new();
    for f in 0..p.face_count() {
        if Some(f) != boundary_face {
            gamma_rels.push(format!("r{f}*r{f}"));
        }
    }
    for e in 0..p.edge_count() {
        let [f1, f2] = p.edge_faces(e).as_pair();
        if Some(f1) == boundary_face || Some(f2) == boundary_face {
            continue;
        }
        gamma_rels.push(format!("r{f1}*r{f2}*r{f1}*r{f2}"));
    }
    let gamma = GroupPresentation {
        kind: GroupKind::Reflection,
        generators: gamma_gens,
        relators: gamma_rels,
        notes: vec!["generator r<i> is the reflection in face <i>".into()],
    };

    // Wirtinger presentation: a_e per edge off the boundary face,
    // involutions, and one relation per vertex off the boundary face.
    let boundary_edges: std::collections::BTreeSet<EdgeId> = boundary_face
        .map(|f| p.face_edges(f).iter().copied().collect())
        .unwrap_or_default();
    let boundary_vertices: std::collections::BTreeSet<usize> = boundary_face
        .map(|f| p.face(f).unwrap().iter().copied().collect())
        .unwrap_or_default();
    let mut g_gens = Vec::new();
    let mut g_rels = Vec::new();
    for e in 0..p.edge_count() {
        if !boundary_edges.contains(&e) {
            g_gens.push(format!("a{e}"));
            g_rels.push(format!("a{e}*a{e}"));
        }
    }
    let mut vertex_relators: Vec<(String, [EdgeId; 3])> = Vec::new();
    for v in 0..p.vertex_count() {
        if boundary_vertices.contains(&v) {
            continue;
        }
        let es = p.vertex_edges(v);
        if es.len() != 3 {
            return Err(RapError::NotTrivalent {
                vertex: v,
                degree: es.len(),
            });
        }
        // Order the three edges by the sorted face pairs they join, which
        // matches a_ij * a_jk = a_ik with i < j < k; with involutions the
        // relator reads a_ij * a_jk * a_ik.
        let mut keyed: Vec<(Vec<FaceId>, EdgeId)> = es
            .iter()
            .map(|&e| {
                let pair = p.edge_faces(e).as_pair();
                (pair.to_vec(), e)
            })
            .collect();
        keyed.sort();
        let (e_ij, e_jk, e_ik) = (keyed[0].1, keyed[2].1, keyed[1].1);
        let word = format!("a{e_ij}*a{e_jk}*a{e_ik}");
        g_rels.push(word.clone());
        vertex_relators.push((word, [e_ij, e_jk, e_ik]));
    }
    let g = GroupPresentation {
        kind: GroupKind::WirtingerDoubleCover,
        generators: g_gens,
        relators: g_rels,
        notes: vec!["generator a<e> is the rotation of pi about edge <e>".into()],
    };

    // h sends a_e to the color of e; check every relator maps to 0.
    let color_of = |e: EdgeId| -> u8 { ec.colors[e].unwrap_or(0) };
    let mut relator_images = Vec::new();
    for e in 0..p.edge_count() {
        if !boundary_edges.contains(&e) {
            relator_images.push((format!("a{e}*a{e}"), color_of(e) ^ color_of(e)));
        }
    }
    for (word, [e1, e2, e3]) in &vertex_relators {
        relator_images.push((word.clone(), color_of(*e1) ^ color_of(*e2) ^ color_of(*e3)));
    }
    let all_zero = relator_images.iter().all(|(_, img)| *img == 0);
    if !all_zero {
        return Err(RapError::Internal(
            "an h-relator image is nonzero for a proper coloring".into(),
        ));
    }
    Ok(PresentationBundle {
        gamma,
        g,
        h_certificate: HCertificate {
            relator_images,
            all_zero,
            cover_index: 8,
        },
    })
}

/// Presentation of the composition's reflection group as a free product
/// with amalgamation.
///
/// Generators `s_j` and `t_j` run over the faces of `p1` minus `f1` and of
/// `p2` minus `f2`; for j = 1..k they are indexed so that `s_j` and `t_j`
/// are the faces glued into the j-th merged face of the composition under
/// the correspondence `(offset, flip)`.  Relators: involutions, commuting
/// squares per adjacency within each factor, and the identifications
/// `s_j = t_j`.
pub fn amalgam_presentation(
    p1: &Polyhedron,
    f1: FaceId,
    p2: &Polyhedron,
    f2: FaceId,
    offset: usize,
    flip: bool,
) -> Result<GroupPresentation> {
    let k1 = p1.face(f1)?.len();
    let k2 = p2.face(f2)?.len();
    if k1 != k2 {
        return Err(RapError::FaceSizeMismatch {
            size1: k1,
            size2: k2,
        });
    }
    let k = k1;
    let p2_glued;
    let p2_ref = if flip {
        p2_glued = p2.mirror();
        &p2_glued
    } else {
        p2
    };
    let pairing = crate::compose::seam_face_pairing(p1, f1, p2_ref, f2, offset)?;

    // Index faces: flag faces (adjacent to the seam) first, in merged-face
    // order, then the remaining faces in id order.
    let order_for = |p: &Polyhedron, skip: FaceId, flagged: &[FaceId]| -> Vec<FaceId> {
        let mut order = flagged.to_vec();
        for f in 0..p.face_count() {
            if f != skip && !flagged.contains(&f) {
                order.push(f);
            }
        }
        order
    };
    let flank1: Vec<FaceId> = pairing.iter().map(|&(g, _)| g).collect();
    let flank2: Vec<FaceId> = pairing.iter().map(|&(_, h)| h).collect();
    let order1 = order_for(p1, f1, &flank1);
    let order2 = order_for(p2_ref, f2, &flank2);

    let name1: BTreeMap<FaceId, String> = order1
        .iter()
        .enumerate()
        .map(|(j, &f)| (f, format!("s{}", j + 1)))
        .collect();
    let name2: BTreeMap<FaceId, String> = order2
        .iter()
        .enumerate()
        .map(|(j, &f)| (f, format!("t{}", j + 1)))
        .collect();

    let mut generators: Vec<String> = order1.iter().map(|f| name1[f].clone()).collect();
    generators.extend(order2.iter().map(|f| name2[f].clone()));

    let mut relators = Vec::new();
    for g in &generators {
        relators.push(format!("{g}*{g}"));
    }
    let squares = |p: &Polyhedron, skip: FaceId, names: &BTreeMap<FaceId, String>| -> Vec<String> {
        let mut out = Vec::new();
        for e in 0..p.edge_count() {
            let [a, b] = p.edge_faces(e).as_pair();
            if a == skip || b == skip {
                continue;
            }
            out.push(format!("{0}*{1}*{0}*{1}", names[&a], names[&b]));
        }
        out
    };
    relators.extend(squares(p1, f1, &name1));
    relators.extend(squares(p2_ref, f2, &name2));
    // Identifications s_j = t_j; with involutions the relator is s_j*t_j.
    for j in 1..=k {
        relators.push(format!("s{j}*t{j}"));
    }

    let mut notes = vec![
        format!(
            "s1..s{k} and t1..t{k} are the faces glued pairwise into the composition's crossed faces"
        ),
        format!("correspondence: offset {offset}, flip {flip}"),
    ];
    for (j, (g, h)) in pairing.iter().enumerate() {
        notes.push(format!(
            "s{0} = face {g} of the first factor, t{0} = face {h} of the second",
            j + 1
        ));
    }
    Ok(GroupPresentation {
        kind: GroupKind::Amalgam,
        generators,
        relators,
        notes,
    })
}
