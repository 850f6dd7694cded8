//! Immersion analysis for simplicial maps: star-injectivity, fiber
//! multiplicities over maximal simplices, mod-2 pushforward cycle tests,
//! multiplicity semicontinuity over the face poset, and classification of
//! vertex links against the small zoo of local models.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, SimplicialComplex, SimplicialMap, VertexId};

/// Outcome of the immersion test. Degeneracy is an error, not a verdict:
/// a map that crushes a simplex is outside the scope of the question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImmersionVerdict {
    Immersion,
    /// Two vertices of the closed star of `vertex` share an image.
    StarNotInjective {
        vertex: VertexId,
        pair: (VertexId, VertexId),
    },
}

impl ImmersionVerdict {
    pub fn is_immersion(&self) -> bool {
        matches!(self, ImmersionVerdict::Immersion)
    }
}

/// Addresses of maximal simplices (any dimension).
fn maximal_simplices(c: &SimplicialComplex) -> Vec<(usize, usize)> {
    c.maximal_simplices()
}

/// Is the map injective on every closed vertex star? Fails with an error on
/// non-simplicial or degenerate input.
pub fn is_pl_immersion(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> Result<ImmersionVerdict, ComplexError> {
    f.validate(source, target)?;
    if !f.is_nondegenerate(source) {
        let d = source.dim().max(0) as usize;
        for k in 1..=d {
            for s in source.simplices(k) {
                if f.image_simplex(s).len() != s.len() {
                    return Err(ComplexError::Map(format!(
                        "map collapses simplex {:?}",
                        s
                    )));
                }
            }
        }
        unreachable!("degeneracy reported without witness");
    }

    // Closed-star vertex sets via maximal simplices: every simplex through v
    // lies in a maximal one, so their vertices cover the closed star.
    let vpos: BTreeMap<VertexId, usize> = source
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut star_verts: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); source.vertices().len()];
    for (k, i) in maximal_simplices(source) {
        let s = source.simplex(k, i);
        for &v in s {
            star_verts[vpos[&v]].extend(s.iter().copied());
        }
    }

    for (&v, &pi) in &vpos {
        let mut seen: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for &w in &star_verts[pi] {
            let img = f.apply(w);
            if let Some(&prev) = seen.get(&img) {
                return Ok(ImmersionVerdict::StarNotInjective { vertex: v, pair: (prev, w) });
            }
            seen.insert(img, w);
        }
    }
    Ok(ImmersionVerdict::Immersion)
}

/// Fiber count over every maximal simplex of the target: how many maximal
/// source simplices map onto it exactly.
pub fn multiplicity(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> BTreeMap<(usize, usize), usize> {
    let mut counts: BTreeMap<(usize, usize), usize> = maximal_simplices(target)
        .into_iter()
        .map(|a| (a, 0))
        .collect();
    for (k, i) in maximal_simplices(source) {
        let img = f.image_simplex(source.simplex(k, i));
        let addr = target
            .index_of(&img)
            .expect("validated map sends simplices into the target");
        if let Some(slot) = counts.get_mut(&addr) {
            *slot += 1;
        }
    }
    counts
}

/// Multiplicity of every target simplex (exact-image fiber count), checked
/// to be monotone under the face relation: a face carries at least the
/// multiplicity of any coface. Returns the offending pair on failure.
pub fn multiplicity_semicontinuous(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> Result<(), (Vec<VertexId>, Vec<VertexId>)> {
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let sd = source.dim().max(0) as usize;
    for k in 0..=sd {
        for s in source.simplices(k) {
            let img = f.image_simplex(s);
            if img.len() == s.len() {
                if let Some(addr) = target.index_of(&img) {
                    *mult.entry(addr).or_insert(0) += 1;
                }
            }
        }
    }
    let td = target.dim().max(0) as usize;
    for k in 1..=td {
        for (i, s) in target.simplices(k).enumerate() {
            let m = mult.get(&(k, i)).copied().unwrap_or(0);
            for drop in 0..s.len() {
                let face: Vec<VertexId> = s
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let fa = target.index_of(&face).expect("closure contains faces");
                if mult.get(&fa).copied().unwrap_or(0) < m {
                    return Err((face, s.to_vec()));
                }
            }
        }
    }
    Ok(())
}

/// Parity balance at ridges: every codimension-one face of a weighted
/// maximal simplex must see an even total weight from its maximal cofaces.
/// Returns the first unbalanced ridge.
pub fn additivity_check(
    target: &SimplicialComplex,
    weights: &BTreeMap<(usize, usize), usize>,
) -> Result<(), Vec<VertexId>> {
    let mut parity: BTreeMap<Vec<VertexId>, usize> = BTreeMap::new();
    for (&(k, i), &w) in weights {
        if k == 0 {
            continue;
        }
        let s = target.simplex(k, i);
        for drop in 0..s.len() {
            let face: Vec<VertexId> = s
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != drop)
                .map(|(_, &v)| v)
                .collect();
            *parity.entry(face).or_insert(0) += w;
        }
    }
    for (face, total) in parity {
        if total % 2 != 0 {
            return Err(face);
        }
    }
    Ok(())
}

/// Vertex-link shapes arising in a two-dimensional complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkClass2 {
    Circle,
    Theta,
    K4,
    Other,
}

/// Vertex-link shapes arising in a three-dimensional complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinkClass3 {
    Sphere,
    SuspendedTheta,
    SuspendedK4,
    Other,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Census<C: Ord> {
    pub by_class: BTreeMap<C, Vec<VertexId>>,
}

impl<C: Ord + Copy> Census<C> {
    pub fn count(&self, class: C) -> usize {
        self.by_class.get(&class).map_or(0, |v| v.len())
    }

    pub fn vertices(&self, class: C) -> &[VertexId] {
        self.by_class.get(&class).map_or(&[], |v| v.as_slice())
    }
}

/// Contract all degree-two chains of a graph. Returns (node count, edges as
/// node index pairs, self-loops allowed) or None when the graph is a
/// disjoint union of cycles or is empty.
fn contract_chains(edges: &[(VertexId, VertexId)]) -> Option<(usize, Vec<(usize, usize)>)> {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &(a, b) in edges {
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
    }
    let nodes: Vec<VertexId> = deg
        .iter()
        .filter(|&(_, &d)| d != 2)
        .map(|(&v, _)| v)
        .collect();
    if nodes.is_empty() {
        return None;
    }
    let node_ix: BTreeMap<VertexId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: BTreeMap<VertexId, Vec<(VertexId, usize)>> = BTreeMap::new();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push((b, ei));
        adj.entry(b).or_default().push((a, ei));
    }
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    for &n in &nodes {
        let starts = adj[&n].clone();
        for (mut cur, via) in starts {
            if used[via] {
                continue;
            }
            used[via] = true;
            let mut prev = n;
            while !node_ix.contains_key(&cur) {
                let (next, edge) = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&(w, e)| !used[e] && (w != prev || edges[e].0 == edges[e].1))
                    .expect("degree-two vertex continues the chain");
                used[edge] = true;
                prev = cur;
                cur = next;
            }
            out.push((node_ix[&n], node_ix[&cur]));
        }
    }
    Some((nodes.len(), out))
}

/// Classify the link of a vertex of a 2-complex.
pub fn classify_link_2(link: &SimplicialComplex) -> LinkClass2 {
    if link.is_single_cycle() {
        return LinkClass2::Circle;
    }
    if link.dim() != 1 || link.connected_components() != 1 {
        return LinkClass2::Other;
    }
    let edges: Vec<(VertexId, VertexId)> = link.simplices(1).map(|e| (e[0], e[1])).collect();
    // Isolated vertices disqualify the graph shapes.
    let touched: BTreeSet<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    if touched.len() != link.vertices().len() {
        return LinkClass2::Other;
    }
    let Some((n, medges)) = contract_chains(&edges) else {
        return LinkClass2::Other;
    };
    let loops = medges.iter().filter(|&&(a, b)| a == b).count();
    if loops > 0 {
        return LinkClass2::Other;
    }
    if n == 2 && medges.len() == 3 {
        return LinkClass2::Theta;
    }
    if n == 4 && medges.len() == 6 {
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in &medges {
            pairs.insert((a.min(b), a.max(b)));
        }
        if pairs.len() == 6 {
            return LinkClass2::K4;
        }
    }
    LinkClass2::Other
}

/// Classify the link of a vertex of a 3-complex.
pub fn classify_link_3(link: &SimplicialComplex) -> LinkClass3 {
    if link.is_two_sphere() {
        return LinkClass3::Sphere;
    }
    if link.dim() != 2 || link.connected_components() != 1 || !link.is_pure() {
        return LinkClass3::Other;
    }
    // Edges that fail to be two-sided are the singular set.
    let mut singular: Vec<(VertexId, VertexId)> = Vec::new();
    for e in link.simplices(1) {
        let n = link.top_cofaces_of(e).len();
        match n {
            2 => {}
            3 => singular.push((e[0], e[1])),
            _ => return LinkClass3::Other,
        }
    }
    if singular.is_empty() {
        return LinkClass3::Other;
    }
    let chi = link.euler_characteristic();
    match contract_chains(&singular) {
        None => {
            // Singular set is a union of cycles; the suspended theta has a
            // single one through both cone points.
            let sub: Vec<Vec<VertexId>> = singular.iter().map(|&(a, b)| vec![a, b]).collect();
            let verts: BTreeSet<VertexId> = singular.iter().flat_map(|&(a, b)| [a, b]).collect();
            let graph = SimplicialComplex::from_top_simplices(verts, sub)
                .expect("singular edges form a graph");
            if graph.is_single_cycle() && chi == 3 {
                LinkClass3::SuspendedTheta
            } else {
                LinkClass3::Other
            }
        }
        Some((n, medges)) => {
            let loops = medges.iter().filter(|&&(a, b)| a == b).count();
            if n == 2 && medges.len() == 4 && loops == 0 && chi == 4 {
                LinkClass3::SuspendedK4
            } else {
                LinkClass3::Other
            }
        }
    }
}

pub fn census_2(c: &SimplicialComplex) -> Census<LinkClass2> {
    let mut by_class: BTreeMap<LinkClass2, Vec<VertexId>> = BTreeMap::new();
    for (v, lk) in c.links() {
        by_class.entry(classify_link_2(&lk)).or_default().push(v);
    }
    Census { by_class }
}

pub fn census_3(c: &SimplicialComplex) -> Census<LinkClass3> {
    let mut by_class: BTreeMap<LinkClass3, Vec<VertexId>> = BTreeMap::new();
    for (v, lk) in c.links() {
        by_class.entry(classify_link_3(&lk)).or_default().push(v);
    }
    Census { by_class }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{is_z2_cycle, pushforward_z2};

    fn complex(tops: &[&[VertexId]]) -> SimplicialComplex {
        let verts: std::collections::BTreeSet<VertexId> =
            tops.iter().flat_map(|s| s.iter().copied()).collect();
        SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
    }

    fn map(pairs: &[(VertexId, VertexId)]) -> SimplicialMap {
        SimplicialMap::new(pairs.iter().copied().collect())
    }

    fn hexagon() -> SimplicialComplex {
        complex(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]])
    }

    fn triangle_cycle() -> SimplicialComplex {
        complex(&[&[0, 1], &[1, 2], &[0, 2]])
    }

    fn double_cover() -> SimplicialMap {
        map(&[(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)])
    }

    #[test]
    fn identity_is_an_immersion() {
        let c = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let f = SimplicialMap::identity(&c);
        assert!(is_pl_immersion(&f, &c, &c).unwrap().is_immersion());
        let m = multiplicity(&f, &c, &c);
        assert!(m.values().all(|&n| n == 1));
        assert!(multiplicity_semicontinuous(&f, &c, &c).is_ok());
    }

    #[test]
    fn double_cover_is_a_two_to_one_immersion() {
        let (src, tgt) = (hexagon(), triangle_cycle());
        let f = double_cover();
        assert!(is_pl_immersion(&f, &src, &tgt).unwrap().is_immersion());
        let m = multiplicity(&f, &src, &tgt);
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&n| n == 2));
        assert!(multiplicity_semicontinuous(&f, &src, &tgt).is_ok());
        // Even multiplicities push the fundamental class to zero, a cycle.
        let ones = vec![1u64; src.count(1)];
        let push = pushforward_z2(&f, &src, &tgt, 1, &ones).unwrap();
        assert!(push.iter().all(|&x| x % 2 == 0));
        assert!(is_z2_cycle(&tgt, 1, &push));
    }

    #[test]
    fn collapsing_map_is_an_error() {
        let src = complex(&[&[0, 1]]);
        let tgt = complex(&[&[5]]);
        let f = map(&[(0, 5), (1, 5)]);
        assert!(matches!(
            is_pl_immersion(&f, &src, &tgt),
            Err(ComplexError::Map(_))
        ));
    }

    #[test]
    fn suspension_of_a_cover_fails_at_the_poles() {
        // Suspend the hexagon -> triangle double cover; the poles map 1-1
        // but their closed stars pick up both sheets.
        let mut src_tops: Vec<Vec<VertexId>> = Vec::new();
        for i in 0..6u32 {
            let j = (i + 1) % 6;
            src_tops.push(vec![i, j, 6]);
            src_tops.push(vec![i, j, 7]);
        }
        let refs: Vec<&[VertexId]> = src_tops.iter().map(|t| t.as_slice()).collect();
        let src = complex(&refs);
        let mut tgt_tops: Vec<Vec<VertexId>> = Vec::new();
        for (i, j) in [(0u32, 1u32), (1, 2), (0, 2)] {
            tgt_tops.push(vec![i, j, 3]);
            tgt_tops.push(vec![i, j, 4]);
        }
        let refs: Vec<&[VertexId]> = tgt_tops.iter().map(|t| t.as_slice()).collect();
        let tgt = complex(&refs);
        let f = map(&[(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2), (6, 3), (7, 4)]);
        match is_pl_immersion(&f, &src, &tgt).unwrap() {
            ImmersionVerdict::StarNotInjective { vertex, pair } => {
                assert!(vertex == 6 || vertex == 7);
                let d = pair.0.abs_diff(pair.1);
                assert_eq!(d, 3);
            }
            ImmersionVerdict::Immersion => panic!("pole stars overlap, not an immersion"),
        }
    }

    #[test]
    fn link_classifier_two_dimensional() {
        // Octahedron: every link is a circle.
        let oct = complex(&[
            &[0, 2, 4],
            &[0, 2, 5],
            &[0, 3, 4],
            &[0, 3, 5],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 3, 4],
            &[1, 3, 5],
        ]);
        let census = census_2(&oct);
        assert_eq!(census.count(LinkClass2::Circle), 6);
        assert_eq!(census.count(LinkClass2::Other), 0);

        // Cone over a subdivided theta graph: apex link is the theta.
        let theta_cone = complex(&[
            &[6, 0, 2],
            &[6, 2, 1],
            &[6, 0, 3],
            &[6, 3, 1],
            &[6, 0, 4],
            &[6, 4, 1],
        ]);
        assert_eq!(classify_link_2(&theta_cone.link(6)), LinkClass2::Theta);

        // Cone over the complete graph on four vertices.
        let k4_cone = complex(&[
            &[9, 0, 1],
            &[9, 0, 2],
            &[9, 0, 3],
            &[9, 1, 2],
            &[9, 1, 3],
            &[9, 2, 3],
        ]);
        assert_eq!(classify_link_2(&k4_cone.link(9)), LinkClass2::K4);

        // A cone over an interval is none of the above.
        let fan = complex(&[&[5, 0, 1], &[5, 1, 2]]);
        assert_eq!(classify_link_2(&fan.link(5)), LinkClass2::Other);
    }

    #[test]
    fn link_classifier_three_dimensional() {
        // Cone over the octahedron: apex link is a sphere.
        let oct_tops: Vec<Vec<VertexId>> = vec![
            vec![0, 2, 4],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![0, 3, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
        ];
        let cone: Vec<Vec<VertexId>> = oct_tops.iter().map(|t| {
            let mut s = t.clone();
            s.push(6);
            s
        }).collect();
        let refs: Vec<&[VertexId]> = cone.iter().map(|t| t.as_slice()).collect();
        let c = complex(&refs);
        assert_eq!(classify_link_3(&c.link(6)), LinkClass3::Sphere);

        // Suspension of a subdivided theta: 0/1 theta nodes, 2/3/4 arc
        // midpoints, 5/6 suspension points.
        let mut stheta: Vec<Vec<VertexId>> = Vec::new();
        for pole in [5u32, 6] {
            for mid in [2u32, 3, 4] {
                stheta.push(vec![0, mid, pole]);
                stheta.push(vec![mid, 1, pole]);
            }
        }
        let cone: Vec<Vec<VertexId>> = stheta.iter().map(|t| {
            let mut s = t.clone();
            s.push(9);
            s
        }).collect();
        let refs: Vec<&[VertexId]> = cone.iter().map(|t| t.as_slice()).collect();
        let c = complex(&refs);
        assert_eq!(classify_link_3(&c.link(9)), LinkClass3::SuspendedTheta);

        // Suspension of the complete graph on 0..3 with poles 4/5.
        let mut sk4: Vec<Vec<VertexId>> = Vec::new();
        for pole in [4u32, 5] {
            for (a, b) in [(0u32, 1u32), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                sk4.push(vec![a, b, pole]);
            }
        }
        let cone: Vec<Vec<VertexId>> = sk4.iter().map(|t| {
            let mut s = t.clone();
            s.push(9);
            s
        }).collect();
        let refs: Vec<&[VertexId]> = cone.iter().map(|t| t.as_slice()).collect();
        let c = complex(&refs);
        assert_eq!(classify_link_3(&c.link(9)), LinkClass3::SuspendedK4);
    }
}
