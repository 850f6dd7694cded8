//! Constructions on complexes: products, gluing, subdivision, cones,
//! and canonical-form isomorphism testing.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::{ComplexError, Dsu, SimplicialComplex, SimplicialMap, VertexId};

/// Staircase triangulation of a product.
///
/// Vertices of the product are pairs (a, b), encoded as consecutive ids in
/// row-major order. Top simplices are monotone staircase paths through each
/// cell (sigma, tau) of top simplices of the factors. Returns the product
/// together with both projections.
pub fn product(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> (SimplicialComplex, SimplicialMap, SimplicialMap) {
    let na = a.vertices().len();
    let nb = b.vertices().len();
    let aidx: HashMap<VertexId, usize> = a
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let bidx: HashMap<VertexId, usize> = b
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let enc = |va: VertexId, vb: VertexId| -> VertexId { (aidx[&va] * nb + bidx[&vb]) as VertexId };

    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for sa in a.top_simplices() {
        for sb in b.top_simplices() {
            // monotone paths from (0,0) to (p,q) in the (p+1) x (q+1) grid
            let p = sa.len() - 1;
            let q = sb.len() - 1;
            let mut path = vec![(0usize, 0usize)];
            staircases(&mut tops, &mut path, p, q, &sa, &sb, &enc);
        }
    }
    let verts: Vec<VertexId> = (0..(na * nb) as VertexId).collect();
    // isolated product vertices only arise from isolated factor vertices; keep
    // just the ones that appear
    let used: BTreeSet<VertexId> = tops.iter().flatten().copied().collect();
    let verts: Vec<VertexId> = verts.into_iter().filter(|v| used.contains(v)).collect();
    let prod = SimplicialComplex::from_top_simplices(verts.clone(), tops).expect("product closure");

    let mut pa = BTreeMap::new();
    let mut pb = BTreeMap::new();
    for &v in &verts {
        let i = (v as usize) / nb;
        let j = (v as usize) % nb;
        pa.insert(v, a.vertices()[i]);
        pb.insert(v, b.vertices()[j]);
    }
    (prod, SimplicialMap::new(pa), SimplicialMap::new(pb))
}

fn staircases(
    out: &mut Vec<Vec<VertexId>>,
    path: &mut Vec<(usize, usize)>,
    p: usize,
    q: usize,
    sa: &[VertexId],
    sb: &[VertexId],
    enc: &impl Fn(VertexId, VertexId) -> VertexId,
) {
    let &(i, j) = path.last().unwrap();
    if i == p && j == q {
        out.push(path.iter().map(|&(x, y)| enc(sa[x], sb[y])).collect());
        return;
    }
    if i < p {
        path.push((i + 1, j));
        staircases(out, path, p, q, sa, sb, enc);
        path.pop();
    }
    if j < q {
        path.push((i, j + 1));
        staircases(out, path, p, q, sa, sb, enc);
        path.pop();
    }
}

/// Identification data for `glue`: pairs of vertices to be identified
/// (possibly chained across several pieces).
#[derive(Clone, Debug, Default)]
pub struct GluingTable {
    pub pairs: Vec<(usize, VertexId, usize, VertexId)>,
}

/// Disjoint union of `pieces` followed by vertex identifications.
///
/// Returns the glued complex plus one inclusion map per piece (vertex ids of
/// the piece to ids of the result). Identified vertices must not collapse a
/// simplex (no two vertices of one simplex may end in the same class).
pub fn glue(
    pieces: &[&SimplicialComplex],
    table: &GluingTable,
) -> Result<(SimplicialComplex, Vec<SimplicialMap>), ComplexError> {
    // offset the pieces into one id space
    let mut offsets = Vec::with_capacity(pieces.len());
    let mut next: u64 = 0;
    for p in pieces {
        offsets.push(next);
        let max = p.vertices().last().copied().unwrap_or(0) as u64;
        next += max + 1;
    }
    let total = next as usize;
    let mut dsu = Dsu::new(total);
    for &(pi, v, qi, w) in &table.pairs {
        if pi >= pieces.len() || qi >= pieces.len() {
            return Err(ComplexError::Gluing(format!(
                "piece index out of range in pair ({pi},{v})~({qi},{w})"
            )));
        }
        if pieces[pi].vertices().binary_search(&v).is_err() {
            return Err(ComplexError::Gluing(format!("vertex {v} not in piece {pi}")));
        }
        if pieces[qi].vertices().binary_search(&w).is_err() {
            return Err(ComplexError::Gluing(format!("vertex {w} not in piece {qi}")));
        }
        dsu.union((offsets[pi] + v as u64) as usize, (offsets[qi] + w as u64) as usize);
    }
    // canonical class reps, renumbered densely in order of first appearance
    let mut rep_id: BTreeMap<usize, VertexId> = BTreeMap::new();
    let mut maps: Vec<SimplicialMap> = Vec::new();
    for (pi, p) in pieces.iter().enumerate() {
        let mut m = BTreeMap::new();
        for &v in p.vertices() {
            let root = dsu.find((offsets[pi] + v as u64) as usize);
            let n = rep_id.len() as VertexId;
            let id = *rep_id.entry(root).or_insert(n);
            m.insert(v, id);
        }
        maps.push(SimplicialMap::new(m));
    }
    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for (pi, p) in pieces.iter().enumerate() {
        for t in p.top_simplices() {
            let img: Vec<VertexId> = t.iter().map(|v| maps[pi].apply(*v)).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != t.len() {
                return Err(ComplexError::Gluing(format!(
                    "identification collapses simplex {:?} of piece {}",
                    t, pi
                )));
            }
            tops.push(img);
        }
    }
    let verts: BTreeSet<VertexId> = maps
        .iter()
        .flat_map(|m| m.map.values().copied())
        .collect();
    let mut glued = SimplicialComplex::from_top_simplices(verts, tops)?;
    // tags come along where unambiguous; later pieces win on conflicts
    for (pi, p) in pieces.iter().enumerate() {
        for (&v, t) in p.tags() {
            glued.set_tag(maps[pi].apply(v), t.clone());
        }
    }
    Ok((glued, maps))
}

/// Barycentric subdivision. Returns the subdivision and the carrier map that
/// sends each barycenter to the smallest vertex of its simplex (a simplicial
/// approximation of the identity).
pub fn barycentric_subdivision(c: &SimplicialComplex) -> (SimplicialComplex, SimplicialMap) {
    // vertex per simplex, numbered by (dim, index) in canonical order
    let dim = c.dim().max(0) as usize;
    let mut id_of: Vec<Vec<VertexId>> = Vec::with_capacity(dim + 1);
    let mut next: VertexId = 0;
    let mut carrier = BTreeMap::new();
    for k in 0..=dim {
        let mut ids = Vec::with_capacity(c.count(k));
        for s in c.simplices(k) {
            ids.push(next);
            carrier.insert(next, s[0]);
            next += 1;
        }
        id_of.push(ids);
    }
    // top simplices: flags of faces of each top simplex
    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for t in c.top_simplices() {
        let mut chain: Vec<VertexId> = Vec::new();
        flags(c, &t, &mut chain, &id_of, &mut tops);
    }
    let sd = SimplicialComplex::from_top_simplices(0..next, tops).expect("subdivision closure");
    (sd, SimplicialMap::new(carrier))
}

fn flags(
    c: &SimplicialComplex,
    top: &[VertexId],
    chain: &mut Vec<VertexId>,
    id_of: &[Vec<VertexId>],
    out: &mut Vec<Vec<VertexId>>,
) {
    // enumerate strictly increasing chains of faces of `top` ending at `top`
    fn rec(
        c: &SimplicialComplex,
        face: &[VertexId],
        chain: &mut Vec<VertexId>,
        id_of: &[Vec<VertexId>],
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let k = face.len() - 1;
        let (_, idx) = c.index_of(face).expect("face present");
        chain.push(id_of[k][idx]);
        if k == 0 {
            out.push(chain.clone());
        } else {
            // all proper faces one dimension down
            for i in 0..face.len() {
                let mut f = face.to_vec();
                f.remove(i);
                rec(c, &f, chain, id_of, out);
            }
        }
        chain.pop();
    }
    rec(c, top, chain, id_of, out);
    debug_assert!(chain.is_empty());
}

/// Cone: new apex joined to every simplex. Apex id is max vertex + 1.
pub fn cone(c: &SimplicialComplex) -> (SimplicialComplex, VertexId) {
    let apex = c.vertices().last().copied().map_or(0, |v| v + 1);
    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for t in c.top_simplices() {
        let mut s = t.clone();
        s.push(apex);
        tops.push(s);
    }
    if tops.is_empty() {
        tops.push(vec![apex]);
    }
    let mut verts: Vec<VertexId> = c.vertices().to_vec();
    verts.push(apex);
    (
        SimplicialComplex::from_top_simplices(verts, tops).expect("cone closure"),
        apex,
    )
}

/// Suspension: two cones glued along the base. Returns the complex and the
/// two apex ids.
pub fn suspension(c: &SimplicialComplex) -> (SimplicialComplex, VertexId, VertexId) {
    let north = c.vertices().last().copied().map_or(0, |v| v + 1);
    let south = north + 1;
    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for t in c.top_simplices() {
        let mut up = t.clone();
        up.push(north);
        tops.push(up);
        let mut down = t.clone();
        down.push(south);
        tops.push(down);
    }
    let mut verts: Vec<VertexId> = c.vertices().to_vec();
    verts.push(north);
    verts.push(south);
    (
        SimplicialComplex::from_top_simplices(verts, tops).expect("suspension closure"),
        north,
        south,
    )
}

/// Canonical relabeling for small complexes (<= 200 vertices), by
/// individualization over degree refinement. Two complexes are isomorphic
/// iff their canonical forms have equal top simplex lists.
pub fn canonical_form(c: &SimplicialComplex) -> Option<Vec<Vec<VertexId>>> {
    let n = c.vertices().len();
    if n > 200 {
        return None;
    }
    // initial colors: vector of per-dimension incidence counts
    let idx: HashMap<VertexId, usize> = c
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let dim = c.dim().max(0) as usize;
    let mut color: Vec<Vec<usize>> = vec![vec![0; dim + 1]; n];
    for k in 0..=dim {
        for s in c.simplices(k) {
            for &v in s {
                color[idx[&v]][k] += 1;
            }
        }
    }
    // refine: append multiset of neighbor colors until stable
    let adj: Vec<Vec<usize>> = {
        let mut adj = vec![Vec::new(); n];
        if dim >= 1 {
            for e in c.simplices(1) {
                let (a, b) = (idx[&e[0]], idx[&e[1]]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    };
    let mut classes = assign_classes(&color);
    loop {
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let mut nb: Vec<usize> = adj[i].iter().map(|&j| classes[j]).collect();
            nb.sort_unstable();
            next[i] = std::iter::once(classes[i]).chain(nb).collect();
        }
        let refined = assign_classes(&next);
        if refined == classes {
            break;
        }
        classes = refined;
    }
    // individualize: try each vertex of the smallest non-singleton class, recurse
    fn search(
        c: &SimplicialComplex,
        idx: &HashMap<VertexId, usize>,
        classes: &[usize],
        adj: &[Vec<usize>],
        best: &mut Option<Vec<Vec<VertexId>>>,
        depth: usize,
    ) {
        let n = classes.len();
        // find smallest non-singleton class
        let mut counts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &cl) in classes.iter().enumerate() {
            counts.entry(cl).or_default().push(i);
        }
        let target = counts.values().find(|v| v.len() > 1);
        match target {
            None => {
                // discrete coloring: read off the labeling
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&i| classes[i]);
                let mut relabel: HashMap<VertexId, VertexId> = HashMap::new();
                for (newid, &i) in order.iter().enumerate() {
                    relabel.insert(c.vertices()[i], newid as VertexId);
                }
                let mut tops: Vec<Vec<VertexId>> = c
                    .top_simplices()
                    .iter()
                    .map(|t| {
                        let mut s: Vec<VertexId> = t.iter().map(|v| relabel[v]).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                tops.sort();
                match best {
                    None => *best = Some(tops),
                    Some(b) => {
                        if tops < *b {
                            *best = Some(tops);
                        }
                    }
                }
            }
            Some(cells) => {
                if depth > 12 {
                    // give up on pathological symmetry; fall back to first choice only
                    let i = cells[0];
                    let mut split = classes.to_vec();
                    split[i] = usize::MAX;
                    let refined = refine_from(&split, adj);
                    search(c, idx, &refined, adj, best, depth + 1);
                    return;
                }
                for &i in cells {
                    let mut split = classes.to_vec();
                    split[i] = usize::MAX;
                    let refined = refine_from(&split, adj);
                    search(c, idx, &refined, adj, best, depth + 1);
                }
            }
        }
    }
    let mut best = None;
    search(c, &idx, &classes, &adj, &mut best, 0);
    best
}

fn assign_classes<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    let rank: BTreeMap<&T, usize> = sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| rank[k]).collect()
}

fn refine_from(classes: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let n = classes.len();
    let mut cur = assign_classes(classes);
    loop {
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let mut nb: Vec<usize> = adj[i].iter().map(|&j| cur[j]).collect();
            nb.sort_unstable();
            next[i] = std::iter::once(cur[i]).chain(nb).collect();
        }
        let refined = assign_classes(&next);
        if refined == cur {
            return cur;
        }
        cur = refined;
    }
}

/// Isomorphism test via canonical forms. None if either side is too big.
pub fn isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<bool> {
    if a.vertices().len() != b.vertices().len() {
        return Some(false);
    }
    let dim = a.dim();
    if dim != b.dim() {
        return Some(false);
    }
    for k in 0..=dim.max(0) as usize {
        if a.count(k) != b.count(k) {
            return Some(false);
        }
    }
    let ca = canonical_form(a)?;
    let cb = canonical_form(b)?;
    Some(ca == cb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimplicialComplex {
        let tops: Vec<Vec<VertexId>> = (0..n)
            .map(|i| vec![i as VertexId, ((i + 1) % n) as VertexId])
            .collect();
        SimplicialComplex::from_top_simplices(0..n as VertexId, tops).unwrap()
    }

    #[test]
    fn torus_product() {
        let (t, pa, pb) = product(&cycle(3), &cycle(3));
        assert_eq!(t.count(0), 9);
        assert_eq!(t.count(1), 27);
        assert_eq!(t.count(2), 18);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_closed_surface());
        assert_eq!(t.orientable_surface(), Some(true));
        pa.validate(&t, &cycle(3)).unwrap();
        pb.validate(&t, &cycle(3)).unwrap();
    }

    #[test]
    fn glued_cones_make_sphere() {
        let base = cycle(6);
        let (up, _) = cone(&base);
        let (down, _) = cone(&base);
        let table = GluingTable {
            pairs: (0..6).map(|v| (0, v as VertexId, 1, v as VertexId)).collect(),
        };
        let (s, incl) = glue(&[&up, &down], &table).unwrap();
        assert_eq!(s.count(0), 8);
        assert!(s.is_two_sphere());
        assert_eq!(incl.len(), 2);
        incl[0].validate(&up, &s).unwrap();
    }

    #[test]
    fn glue_rejects_collapse() {
        let tri =
            SimplicialComplex::from_top_simplices(0..3, vec![vec![0, 1, 2]]).unwrap();
        let table = GluingTable {
            pairs: vec![(0, 0, 0, 1)],
        };
        assert!(glue(&[&tri], &table).is_err());
    }

    #[test]
    fn barycentric_triangle() {
        let tri =
            SimplicialComplex::from_top_simplices(0..3, vec![vec![0, 1, 2]]).unwrap();
        let (sd, carrier) = barycentric_subdivision(&tri);
        assert_eq!(sd.count(0), 7);
        assert_eq!(sd.count(2), 6);
        assert_eq!(sd.euler_characteristic(), 1);
        carrier.validate(&sd, &tri).unwrap();
    }

    #[test]
    fn suspension_of_cycle_is_sphere() {
        let (s, _, _) = suspension(&cycle(4));
        assert!(s.is_two_sphere());
    }

    #[test]
    fn iso_detects_relabeling() {
        let a = cycle(5);
        let relabel = [9u32, 2, 14, 0, 7];
        let tops: Vec<Vec<VertexId>> = (0..5)
            .map(|i| vec![relabel[i], relabel[(i + 1) % 5]])
            .collect();
        let b = SimplicialComplex::from_top_simplices(relabel, tops).unwrap();
        assert_eq!(isomorphic(&a, &b), Some(true));
        assert_eq!(isomorphic(&a, &cycle(6)), Some(false));
    }
}
