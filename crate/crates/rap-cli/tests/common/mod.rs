//! Independent brute-force circuit oracle for the acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rap_core::polyhedron::{EdgeId, Polyhedron};

/// Enumerates prismatic k-circuits by trying every k-subset of faces in
/// every cyclic order; returns the sorted crossed-edge id sets.
pub fn brute_force_prismatic_circuits(p: &Polyhedron, k: usize) -> BTreeSet<Vec<EdgeId>> {
    let f = p.face_count();
    let mut out = BTreeSet::new();
    if k < 3 || k > f {
        return out;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    combinations(f, k, 0, &mut subset, &mut |faces: &[usize]| {
        let rest: Vec<usize> = faces[1..].to_vec();
        permute(&rest, &mut |order: &[usize]| {
            if k > 2 && order[0] > order[k - 2] {
                return;
            }
            let mut cycle = Vec::with_capacity(k);
            cycle.push(faces[0]);
            cycle.extend_from_slice(order);
            let mut edges = Vec::with_capacity(k);
            for i in 0..k {
                match p.shared_edge(cycle[(i + k - 1) % k], cycle[i]) {
                    Some(e) => edges.push(e),
                    None => return,
                }
            }
            for i in 0..k {
                for j in (i + 1)..k {
                    if p.edges()[edges[i]].shares_endpoint(&p.edges()[edges[j]]) {
                        return;
                    }
                }
            }
            edges.sort_unstable();
            out.insert(edges);
        });
    });
    out
}

fn combinations(
    n: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if acc.len() == k {
        f(acc);
        return;
    }
    let need = k - acc.len();
    for x in start..=(n - need) {
        acc.push(x);
        combinations(n, k, x + 1, acc, f);
        acc.pop();
    }
}

fn permute(items: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut v = items.to_vec();
    let n = v.len();
    heap_permute(n, &mut v, f);
}

fn heap_permute(n: usize, v: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if n <= 1 {
        f(v);
        return;
    }
    for i in 0..n {
        heap_permute(n - 1, v, f);
        if n.is_multiple_of(2) {
            v.swap(i, n - 1);
        } else {
            v.swap(0, n - 1);
        }
    }
}

/// A tiny deterministic generator (SplitMix64) for reproducible sample
/// angles without extra dependencies.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let x = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + x * (hi - lo)
    }
}
