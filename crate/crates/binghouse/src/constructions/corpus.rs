//! Reference complexes with independently known topology, used to cross-check
//! the homology, group, and collapse engines before they are pointed at the
//! house models.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::grid::{pt, solid_box, triangulate, GridCell};
use crate::ops::{product, suspension};

fn from_tops(tops: &[&[u32]]) -> SimplicialComplex {
    let verts: std::collections::BTreeSet<u32> = tops.iter().flat_map(|s| s.iter().copied()).collect();
    SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
}

pub fn point() -> SimplicialComplex {
    from_tops(&[&[0]])
}

pub fn segment() -> SimplicialComplex {
    from_tops(&[&[0, 1]])
}

pub fn circle() -> SimplicialComplex {
    from_tops(&[&[0, 1], &[1, 2], &[0, 2]])
}

pub fn theta_graph() -> SimplicialComplex {
    from_tops(&[&[0, 2], &[2, 1], &[0, 3], &[3, 1], &[0, 4], &[4, 1]])
}

pub fn wedge_two_circles() -> SimplicialComplex {
    from_tops(&[&[0, 1], &[1, 2], &[0, 2], &[0, 3], &[3, 4], &[0, 4]])
}

/// Complete graph on four vertices, the link of a Bing house pinch point.
pub fn k4_graph() -> SimplicialComplex {
    from_tops(&[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]])
}

pub fn cone_over_k4() -> SimplicialComplex {
    crate::ops::cone(&k4_graph()).0
}

pub fn sphere_2() -> SimplicialComplex {
    from_tops(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

pub fn ball_3() -> SimplicialComplex {
    from_tops(&[&[0, 1, 2, 3]])
}

pub fn sphere_3() -> SimplicialComplex {
    from_tops(&[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4], &[0, 2, 3, 4], &[1, 2, 3, 4]])
}

pub fn sphere_4() -> SimplicialComplex {
    let all: Vec<u32> = (0..6).collect();
    let tops: Vec<Vec<u32>> = (0..6)
        .map(|drop| all.iter().copied().filter(|&v| v != drop).collect())
        .collect();
    SimplicialComplex::from_top_simplices(all, tops).unwrap()
}

/// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn torus_7() -> SimplicialComplex {
    let mut tops = Vec::new();
    for i in 0..7u32 {
        tops.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tops.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_top_simplices(0..7, tops).unwrap()
}

/// The 6-vertex projective plane (antipodal quotient of the icosahedron).
pub fn projective_plane() -> SimplicialComplex {
    from_tops(&[
        &[1, 2, 3],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 5, 6],
        &[1, 2, 6],
        &[2, 3, 5],
        &[3, 4, 6],
        &[4, 5, 2],
        &[5, 6, 3],
        &[6, 2, 4],
    ])
}

/// The 5-vertex Moebius band: triangles {i, i+1, i+2} mod 5.
pub fn moebius_band() -> SimplicialComplex {
    let tops: Vec<Vec<u32>> = (0..5u32).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    SimplicialComplex::from_top_simplices(0..5, tops).unwrap()
}

/// Two concentric triangles joined by six triangles.
pub fn annulus() -> SimplicialComplex {
    from_tops(&[
        &[0, 1, 3],
        &[1, 3, 4],
        &[1, 2, 4],
        &[2, 4, 5],
        &[0, 2, 5],
        &[0, 3, 5],
    ])
}

/// Klein bottle on a 4x4 grid: columns wrap straight, the top row is the
/// bottom row reversed.
pub fn klein_bottle() -> SimplicialComplex {
    let n = 4u32;
    let v = |i: u32, j: u32| -> u32 {
        let i = i % n;
        if j == n {
            (n - i) % n
        } else {
            j * n + i
        }
    };
    let mut tops = Vec::new();
    for j in 0..n {
        for i in 0..n {
            tops.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tops.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    SimplicialComplex::from_top_simplices(0..n * n, tops).unwrap()
}

/// Dunce hat: a triangle with its three edges glued along A->B ~ B->C ~ A->C.
///
/// Built as the second barycentric subdivision of a triangle (coordinates
/// scaled by 36 keep every midpoint and barycenter integral), with the rim
/// arcs then identified position by position. The subdivision is fine enough
/// that no triangle touches two identified rim vertices, so all 36 triangles
/// survive. Contractible, but every rim edge has three cofaces, so there is
/// no free edge to start a collapse from.
pub fn dunce_hat() -> SimplicialComplex {
    type P = (i64, i64);
    fn mid(p: P, q: P) -> P {
        assert_eq!((p.0 + q.0) % 2, 0);
        assert_eq!((p.1 + q.1) % 2, 0);
        ((p.0 + q.0) / 2, (p.1 + q.1) / 2)
    }
    fn sd(tris: Vec<[P; 3]>) -> Vec<[P; 3]> {
        let mut out = Vec::with_capacity(tris.len() * 6);
        for [a, b, c] in tris {
            let sum = (a.0 + b.0 + c.0, a.1 + b.1 + c.1);
            assert_eq!(sum.0 % 3, 0);
            assert_eq!(sum.1 % 3, 0);
            let m = (sum.0 / 3, sum.1 / 3);
            for (p, q) in [(a, b), (b, a), (b, c), (c, b), (a, c), (c, a)] {
                out.push([p, mid(p, q), m]);
            }
        }
        out
    }
    let tris = sd(sd(vec![[(0, 0), (36, 0), (0, 36)]]));
    assert_eq!(tris.len(), 36);

    // Quarter-position along whichever oriented arc the point lies on:
    // A->B is y = 0, A->C is x = 0, B->C is x + y = 36. Positions 0 and 4
    // are the corners, which the gluing merges into one point.
    fn key(p: P) -> P {
        let pos = if p.1 == 0 {
            Some(p.0)
        } else if p.0 == 0 {
            Some(p.1)
        } else if p.0 + p.1 == 36 {
            Some(p.1)
        } else {
            None
        };
        match pos {
            Some(t) => {
                assert_eq!(t % 9, 0, "rim vertex off the quarter lattice");
                let k = if t == 0 || t == 36 { 0 } else { t / 9 };
                (-1, k)
            }
            None => p,
        }
    }

    let mut ids: BTreeMap<P, u32> = BTreeMap::new();
    for t in &tris {
        for &p in t {
            let n = ids.len() as u32;
            ids.entry(key(p)).or_insert(n);
        }
    }
    let mut tops = Vec::with_capacity(tris.len());
    for t in &tris {
        let mut s: Vec<u32> = t.iter().map(|&p| ids[&key(p)]).collect();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 3, "rim identification degenerated a triangle");
        tops.push(s);
    }
    SimplicialComplex::from_top_simplices(ids.values().copied().collect::<Vec<_>>(), tops).unwrap()
}

/// Boundary of a thickened plate with two holes: the orientable genus-2
/// surface.
pub fn genus_two_surface() -> SimplicialComplex {
    let mut plate = solid_box(&[0, 1], pt(&[0, 0]), pt(&[5, 3]));
    plate.cells.remove(&GridCell::new(pt(&[1, 1]), 0b011));
    plate.cells.remove(&GridCell::new(pt(&[3, 1]), 0b011));
    triangulate(&plate.product_interval(2, 0, 1).boundary()).complex
}

pub fn suspended_torus() -> SimplicialComplex {
    suspension(&torus_7()).0
}

pub fn suspended_projective_plane() -> SimplicialComplex {
    suspension(&projective_plane()).0
}

pub fn torus_interval() -> SimplicialComplex {
    product(&torus_7(), &segment()).0
}

pub fn solid_torus() -> SimplicialComplex {
    product(&circle(), &from_tops(&[&[0, 1, 2]])).0
}

/// One reference complex with its frozen integral homology.
pub struct CorpusEntry {
    pub name: &'static str,
    pub complex: SimplicialComplex,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
}

fn entry(
    name: &'static str,
    complex: SimplicialComplex,
    betti: &[usize],
    torsion_at: &[(usize, &str)],
) -> CorpusEntry {
    let mut torsion = vec![Vec::new(); betti.len()];
    for &(k, t) in torsion_at {
        torsion[k].push(t.to_string());
    }
    CorpusEntry { name, complex, betti: betti.to_vec(), torsion }
}

/// Every reference complex, with its expected profile.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry("point", point(), &[1], &[]),
        entry("segment", segment(), &[1, 0], &[]),
        entry("circle", circle(), &[1, 1], &[]),
        entry("theta-graph", theta_graph(), &[1, 2], &[]),
        entry("wedge-of-two-circles", wedge_two_circles(), &[1, 2], &[]),
        entry("k4-graph", k4_graph(), &[1, 3], &[]),
        entry("cone-over-k4", cone_over_k4(), &[1, 0, 0], &[]),
        entry("two-sphere", sphere_2(), &[1, 0, 1], &[]),
        entry("three-ball", ball_3(), &[1, 0, 0, 0], &[]),
        entry("three-sphere", sphere_3(), &[1, 0, 0, 1], &[]),
        entry("four-sphere", sphere_4(), &[1, 0, 0, 0, 1], &[]),
        entry("torus", torus_7(), &[1, 2, 1], &[]),
        entry("projective-plane", projective_plane(), &[1, 0, 0], &[(1, "2")]),
        entry("moebius-band", moebius_band(), &[1, 1, 0], &[]),
        entry("annulus", annulus(), &[1, 1, 0], &[]),
        entry("klein-bottle", klein_bottle(), &[1, 1, 0], &[(1, "2")]),
        entry("dunce-hat", dunce_hat(), &[1, 0, 0], &[]),
        entry("genus-two-surface", genus_two_surface(), &[1, 4, 1], &[]),
        entry("suspended-torus", suspended_torus(), &[1, 0, 2, 1], &[]),
        entry(
            "suspended-projective-plane",
            suspended_projective_plane(),
            &[1, 0, 0, 0],
            &[(2, "2")],
        ),
        entry("torus-interval", torus_interval(), &[1, 2, 1, 0], &[]),
        entry("solid-torus", solid_torus(), &[1, 1, 0, 0], &[]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::free_faces;
    use crate::homology::{homology_z, homology_z2};
    use crate::ops::canonical_form;

    #[test]
    fn frozen_profiles() {
        let all = corpus();
        assert!(all.len() >= 20);
        for e in &all {
            let h = homology_z(&e.complex);
            assert_eq!(h.betti, e.betti, "{} betti", e.name);
            assert_eq!(h.torsion, e.torsion, "{} torsion", e.name);
        }
    }

    #[test]
    fn surface_recognition_and_euler_characteristics() {
        assert_eq!(torus_7().euler_characteristic(), 0);
        assert_eq!(klein_bottle().euler_characteristic(), 0);
        assert_eq!(projective_plane().euler_characteristic(), 1);
        assert_eq!(dunce_hat().euler_characteristic(), 1);
        assert_eq!(genus_two_surface().euler_characteristic(), -2);
        for s in [torus_7(), klein_bottle(), projective_plane(), genus_two_surface()] {
            assert!(s.is_closed_surface());
        }
        assert!(torus_7().orientable_surface() == Some(true));
        assert!(klein_bottle().orientable_surface() == Some(false));
        assert!(projective_plane().orientable_surface() == Some(false));
        assert!(genus_two_surface().orientable_surface() == Some(true));
        assert!(sphere_2().is_two_sphere());
        assert!(!torus_7().is_two_sphere());
        assert_ne!(canonical_form(&torus_7()), canonical_form(&klein_bottle()));
    }

    #[test]
    fn mod_two_sees_orientation_classes() {
        // Over GF(2) the Klein bottle matches the torus and the projective
        // plane gains a top class.
        assert_eq!(homology_z2(&klein_bottle()).betti, vec![1, 2, 1]);
        assert_eq!(homology_z2(&projective_plane()).betti, vec![1, 1, 1]);
        assert_eq!(homology_z2(&dunce_hat()).betti, vec![1, 0, 0]);
    }

    #[test]
    fn dunce_hat_has_no_free_edge() {
        let d = dunce_hat();
        assert_eq!(d.count(2), 36);
        assert!(free_faces(&d).is_empty());
        assert!(homology_z(&d).is_point());
    }
}
