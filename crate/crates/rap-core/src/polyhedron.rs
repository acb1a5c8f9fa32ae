//! Combinatorial polyhedra: oriented cell decompositions of the 2-sphere.
//!
//! A polyhedron is stored as its list of faces, each face a cyclic list of
//! vertex ids traversed counterclockwise as seen from outside.  Everything
//! else (edges, incidences, degrees) is derived at construction time and the
//! structural invariants are checked then: every edge lies in exactly two
//! faces traversed in opposite directions, the Euler relation holds, the
//! 1-skeleton is simple and connected, and every face has at least 3 edges.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{RapError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// An undirected edge, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    /// The endpoint other than `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, o: &Edge) -> bool {
        self.touches(o.a) || self.touches(o.b)
    }
}

/// The two faces of an edge, keyed by traversal direction: `forward` is the
/// face whose cycle contains the dart `a -> b`, `backward` contains `b -> a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeFaces {
    pub forward: FaceId,
    pub backward: FaceId,
}

impl EdgeFaces {
    pub fn as_pair(&self) -> [FaceId; 2] {
        let mut p = [self.forward, self.backward];
        p.sort_unstable();
        p
    }

    pub fn other(&self, f: FaceId) -> FaceId {
        if f == self.forward {
            self.backward
        } else {
            self.forward
        }
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.forward == f || self.backward == f
    }
}

/// A combinatorial polyhedron with all incidence data derived and verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    faces: Vec<Vec<VertexId>>,
    vertex_count: usize,
    edges: Vec<Edge>,
    edge_faces: Vec<EdgeFaces>,
    /// `face_edges[f][i]` joins `faces[f][i]` and `faces[f][i+1]` (cyclic).
    face_edges: Vec<Vec<EdgeId>>,
    vertex_edges: Vec<Vec<EdgeId>>,
}

impl Polyhedron {
    /// Builds a polyhedron from face lists with arbitrary (distinct,
    /// non-negative) vertex labels.  Labels are compacted to `0..v`.
    pub fn from_faces(face_lists: &[Vec<u64>]) -> Result<Polyhedron> {
        Ok(Self::from_faces_mapped(face_lists)?.0)
    }

    /// Like [`from_faces`](Self::from_faces) but also returns the map from
    /// input vertex labels to compacted ids.
    pub fn from_faces_mapped(
        face_lists: &[Vec<u64>],
    ) -> Result<(Polyhedron, HashMap<u64, VertexId>)> {
        if face_lists.len() < 4 {
            return Err(RapError::TooFewFaces {
                count: face_lists.len(),
            });
        }
        for (fid, f) in face_lists.iter().enumerate() {
            if f.len() < 3 {
                return Err(RapError::FaceTooSmall { face: fid });
            }
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(RapError::RepeatedVertex { face: fid });
            }
        }

        // Compact vertex labels in sorted order.
        let mut labels: Vec<u64> = face_lists.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let map: HashMap<u64, VertexId> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let vertex_count = labels.len();

        let faces: Vec<Vec<VertexId>> = face_lists
            .iter()
            .map(|f| normalize_cycle(f.iter().map(|l| map[l]).collect()))
            .collect();

        // Each directed edge must appear exactly once, and its reverse in
        // another face.
        let mut darts: HashMap<(VertexId, VertexId), FaceId> = HashMap::new();
        for (fid, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                let u = f[i];
                let v = f[(i + 1) % f.len()];
                if darts.insert((u, v), fid).is_some() {
                    return Err(RapError::OrientationMismatch {
                        u: labels[u] as usize,
                        v: labels[v] as usize,
                    });
                }
            }
        }
        for &(u, v) in darts.keys() {
            if !darts.contains_key(&(v, u)) {
                return Err(RapError::EdgeNotSharedByTwoFaces {
                    u: labels[u] as usize,
                    v: labels[v] as usize,
                });
            }
        }

        let mut edges: Vec<Edge> = darts
            .keys()
            .filter(|&&(u, v)| u < v)
            .map(|&(u, v)| Edge::new(u, v))
            .collect();
        edges.sort_unstable();
        let edge_faces: Vec<EdgeFaces> = edges
            .iter()
            .map(|e| EdgeFaces {
                forward: darts[&(e.a, e.b)],
                backward: darts[&(e.b, e.a)],
            })
            .collect();

        let v = vertex_count;
        let e = edges.len();
        let f = faces.len();
        if v + f != e + 2 {
            return Err(RapError::EulerViolation { v, e, f });
        }

        let edge_index: HashMap<Edge, EdgeId> =
            edges.iter().enumerate().map(|(i, &ed)| (ed, i)).collect();
        let face_edges: Vec<Vec<EdgeId>> = faces
            .iter()
            .map(|fc| {
                (0..fc.len())
                    .map(|i| edge_index[&Edge::new(fc[i], fc[(i + 1) % fc.len()])])
                    .collect()
            })
            .collect();
        let mut vertex_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); v];
        for (eid, ed) in edges.iter().enumerate() {
            vertex_edges[ed.a].push(eid);
            vertex_edges[ed.b].push(eid);
        }

        // Connectivity of the 1-skeleton.
        let mut seen = vec![false; v];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &eid in &vertex_edges[x] {
                let y = edges[eid].other(x);
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != v {
            return Err(RapError::DisconnectedSkeleton);
        }

        Ok((
            Polyhedron {
                faces,
                vertex_count,
                edges,
                edge_faces,
                face_edges,
                vertex_edges,
            },
            map,
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> Result<&[VertexId]> {
        self.faces
            .get(f)
            .map(|v| v.as_slice())
            .ok_or(RapError::NoSuchFace { face: f })
    }

    pub fn face_size(&self, f: FaceId) -> usize {
        self.faces[f].len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<Edge> {
        self.edges
            .get(e)
            .copied()
            .ok_or(RapError::NoSuchEdge { edge: e })
    }

    pub fn edge_faces(&self, e: EdgeId) -> EdgeFaces {
        self.edge_faces[e]
    }

    pub fn face_edges(&self, f: FaceId) -> &[EdgeId] {
        &self.face_edges[f]
    }

    pub fn vertex_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.vertex_edges[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_edges[v].len()
    }

    /// Looks up the edge id of the pair `{u, v}`, if present.
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    /// The edge shared by two adjacent faces, if any.  Polyhedra in this
    /// crate's scope share at most one edge per face pair.
    pub fn shared_edge(&self, f1: FaceId, f2: FaceId) -> Option<EdgeId> {
        self.face_edges[f1]
            .iter()
            .copied()
            .find(|&e| self.edge_faces[e].contains(f2))
    }

    pub fn faces_adjacent(&self, f1: FaceId, f2: FaceId) -> bool {
        f1 != f2 && self.shared_edge(f1, f2).is_some()
    }

    /// The distinct faces incident to a vertex.
    pub fn vertex_faces(&self, v: VertexId) -> Vec<FaceId> {
        let mut fs: Vec<FaceId> = self.vertex_edges[v]
            .iter()
            .flat_map(|&e| {
                let ef = self.edge_faces[e];
                [ef.forward, ef.backward]
            })
            .collect();
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    pub fn is_trivalent(&self) -> bool {
        self.vertex_edges.iter().all(|es| es.len() == 3)
    }

    /// Errors with the first offending vertex when not trivalent.
    pub fn require_trivalent(&self) -> Result<()> {
        for (v, es) in self.vertex_edges.iter().enumerate() {
            if es.len() != 3 {
                return Err(RapError::NotTrivalent {
                    vertex: v,
                    degree: es.len(),
                });
            }
        }
        Ok(())
    }

    /// Vertex/edge/face counts together with the face-size histogram.
    pub fn counts(&self) -> Counts {
        let mut histogram = BTreeMap::new();
        for f in &self.faces {
            *histogram.entry(f.len()).or_insert(0usize) += 1;
        }
        Counts {
            vertices: self.vertex_count,
            edges: self.edges.len(),
            faces: self.faces.len(),
            histogram,
        }
    }

    /// Pentagon count and excess `c = sum over faces of (size - 5) = 2e - 5f`
    /// for a trivalent polyhedron.  The identity `f - c = 12` is forced by
    /// the Euler relation and trivalence and is re-checked here.
    pub fn pentagon_excess(&self) -> Result<(usize, i64)> {
        self.require_trivalent()?;
        let pentagons = self.faces.iter().filter(|f| f.len() == 5).count();
        let c = 2 * self.edges.len() as i64 - 5 * self.faces.len() as i64;
        if self.faces.len() as i64 - c != 12 {
            return Err(RapError::Internal(format!(
                "f - c = {} - {} != 12 on a trivalent polyhedron",
                self.faces.len(),
                c
            )));
        }
        Ok((pentagons, c))
    }

    /// The mirror image: every face cycle reversed.
    pub fn mirror(&self) -> Polyhedron {
        let reversed: Vec<Vec<u64>> = self
            .faces
            .iter()
            .map(|f| f.iter().rev().map(|&v| v as u64).collect())
            .collect();
        Polyhedron::from_faces(&reversed).expect("mirror of a valid polyhedron is valid")
    }

    /// At a trivalent vertex `v` of edge `e`, the face incident to `v` that
    /// does not contain `e`.
    pub fn opposite_face_at(&self, v: VertexId, e: EdgeId) -> Result<FaceId> {
        let ef = self.edge_faces[e];
        let fs = self.vertex_faces(v);
        if fs.len() != 3 {
            return Err(RapError::NotTrivalent {
                vertex: v,
                degree: self.degree(v),
            });
        }
        fs.into_iter()
            .find(|&f| !ef.contains(f))
            .ok_or_else(|| RapError::Internal(format!("no face opposite edge {e} at vertex {v}")))
    }

    /// The face cycle rotated so that it starts at `start`.
    pub(crate) fn face_cycle_from(&self, f: FaceId, start: VertexId) -> Vec<VertexId> {
        let cyc = &self.faces[f];
        let k = cyc
            .iter()
            .position(|&v| v == start)
            .expect("start vertex must lie on the face");
        let mut out = Vec::with_capacity(cyc.len());
        out.extend_from_slice(&cyc[k..]);
        out.extend_from_slice(&cyc[..k]);
        out
    }
}

/// Vertex/edge/face counts plus the face-size histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Rotates a cycle so that it starts at its smallest element.
fn normalize_cycle(cycle: Vec<VertexId>) -> Vec<VertexId> {
    let k = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[k..]);
    out.extend_from_slice(&cycle[..k]);
    out
}
