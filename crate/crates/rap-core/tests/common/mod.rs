//! Brute-force oracles, independent of the library's implementation paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rap_core::polyhedron::{EdgeId, Polyhedron};

/// Enumerates prismatic k-circuits the slow way: every k-subset of faces,
/// every cyclic order, checked pairwise for adjacency and the distinct
/// endpoint condition.  Returns the set of sorted crossed-edge id sets.
pub fn brute_force_prismatic_circuits(p: &Polyhedron, k: usize) -> BTreeSet<Vec<EdgeId>> {
    let f = p.face_count();
    let mut out = BTreeSet::new();
    if k < 3 || k > f {
        return out;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    combinations(f, k, 0, &mut subset, &mut |faces: &[usize]| {
        // Fix faces[0] first, permute the rest; halve by requiring the
        // second element to be smaller than the last.
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

fn combinations(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
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
    heap_permute(v.len(), &mut v, f);
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

/// Abstract 1-skeleton isomorphism by backtracking permutation search.
///
/// Independent of canonical codes: for 3-connected planar graphs (all corpus
/// members), graph isomorphism coincides with map isomorphism up to
/// reflection, which is what canonical codes decide.
pub fn graph_isomorphic(p: &Polyhedron, q: &Polyhedron) -> bool {
    let n = p.vertex_count();
    if n != q.vertex_count() || p.edge_count() != q.edge_count() {
        return false;
    }
    let adj = |poly: &Polyhedron| -> Vec<BTreeSet<usize>> {
        let mut a = vec![BTreeSet::new(); poly.vertex_count()];
        for e in poly.edges() {
            a[e.a].insert(e.b);
            a[e.b].insert(e.a);
        }
        a
    };
    let pa = adj(p);
    let qa = adj(q);

    // Order p's vertices so each one (after the first) has an earlier
    // neighbor; candidates then come from the partner's neighborhood.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    order.push(0);
    placed[0] = true;
    while order.len() < n {
        let next = (0..n)
            .find(|&v| !placed[v] && pa[v].iter().any(|&u| placed[u]))
            .or_else(|| (0..n).find(|&v| !placed[v]))
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    fn extend(
        pos: usize,
        order: &[usize],
        pa: &[BTreeSet<usize>],
        qa: &[BTreeSet<usize>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let candidates: Vec<usize> = match pa[v].iter().find_map(|&u| map[u]) {
            Some(partner_nb) => qa[partner_nb].iter().copied().collect(),
            None => (0..qa.len()).collect(),
        };
        'cands: for c in candidates {
            if used[c] || qa[c].len() != pa[v].len() {
                continue;
            }
            for &u in &pa[v] {
                if let Some(img) = map[u] {
                    if !qa[c].contains(&img) {
                        continue 'cands;
                    }
                }
            }
            map[v] = Some(c);
            used[c] = true;
            if extend(pos + 1, order, pa, qa, map, used) {
                return true;
            }
            map[v] = None;
            used[c] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(0, &order, &pa, &qa, &mut map, &mut used)
}
