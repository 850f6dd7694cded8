//! The three-dimensional analogue of the two-room house: a contractible
//! 3-complex Y with no free 2-face, built from nine blocks of lattice
//! 3-cells inside the 4-manifold W = S3 x [-4,4].
//!
//! S3 is the boundary of a 4-box in (x,y,z,u); the extra coordinate is w.
//! A genus-2 handlebody H (a plate with two hollows, thickened in z) sits in
//! the u = 0 face of S3. The two rooms are copies of H pushed to w = 1 and
//! w = -1, each with a ring-shaped channel block deleted; the shell is the
//! closure of the complement of H in S3 at w = 0, with two ring blocks of
//! its own deleted; the collars Sigma x [0,1] and Sigma x [-1,0] join the
//! rooms to the shell along the genus-2 surface Sigma = boundary of H. Each
//! deleted ring is the mouth of a tube: an open-ended hose that leaves one
//! room, arcs over it in w, and descends into the shell. A membrane (annulus
//! over the ring's inner circle) seals each tube. Room, tube, and membrane
//! come in upper (w > 0) and lower (w < 0) versions; swapping them is the
//! model's w-mirror symmetry composed with the x-mirror that swaps the two
//! hollows of the plate.

use std::collections::BTreeMap;

use crate::double::{neighborhood_boundary, NeighborhoodBoundary};
use crate::grid::{pt, solid_box, triangulate_centered, CenteredGrid, GridCell, GridSet};

/// The nine blocks of the spine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    UpperRoom,
    LowerRoom,
    Shell,
    UpperTube,
    LowerTube,
    UpperCollar,
    LowerCollar,
    UpperMembrane,
    LowerMembrane,
}

pub const PIECES: [Piece; 9] = [
    Piece::UpperRoom,
    Piece::LowerRoom,
    Piece::Shell,
    Piece::UpperTube,
    Piece::LowerTube,
    Piece::UpperCollar,
    Piece::LowerCollar,
    Piece::UpperMembrane,
    Piece::LowerMembrane,
];

impl Piece {
    /// Stable label used in data files.
    pub fn name(self) -> &'static str {
        match self {
            Piece::UpperRoom => "upper-room",
            Piece::LowerRoom => "lower-room",
            Piece::Shell => "shell",
            Piece::UpperTube => "upper-tube",
            Piece::LowerTube => "lower-tube",
            Piece::UpperCollar => "upper-collar",
            Piece::LowerCollar => "lower-collar",
            Piece::UpperMembrane => "upper-membrane",
            Piece::LowerMembrane => "lower-membrane",
        }
    }
}

/// The plate: [0,13] x [0,7] minus the two hollows at (3,3) and (9,3).
fn plate() -> GridSet {
    let mut p = solid_box(&[0, 1], pt(&[0, 0]), pt(&[13, 7]));
    p.cells.remove(&GridCell::new(pt(&[3, 3]), 0b011));
    p.cells.remove(&GridCell::new(pt(&[9, 3]), 0b011));
    p
}

/// Genus-2 handlebody: the plate thickened to z in [1,4], in the u = 0 face.
pub fn handlebody() -> GridSet {
    plate().product_interval(2, 1, 4)
}

/// The genus-2 surface bounding the handlebody (322 squares).
pub fn cross_section() -> GridSet {
    handlebody().boundary()
}

/// Square ring at Chebyshev distance two around the hollow at (hx, 3).
fn ring(hx: i32) -> GridSet {
    let outer = solid_box(&[0, 1], pt(&[hx - 2, 1]), pt(&[hx + 3, 6]));
    let inner = solid_box(&[0, 1], pt(&[hx - 1, 2]), pt(&[hx + 2, 5]));
    outer.difference(&inner)
}

/// The ring's inner boundary circle (12 edges).
fn inner_circle(hx: i32) -> GridSet {
    solid_box(&[0, 1], pt(&[hx - 1, 2]), pt(&[hx + 2, 5])).boundary()
}

/// The channel block deleted from each room: its ring, thickened to
/// z in [2,3].
fn channel_block(hx: i32) -> GridSet {
    ring(hx).product_interval(2, 2, 3)
}

/// Tube cross-section in the (z,w) plane: chimney up from the room level,
/// bridge across, shaft down to the shell level.
fn tube_profile() -> GridSet {
    let zw = [(2, 1), (2, 2), (3, 2), (4, 2), (5, 2), (5, 1), (5, 0)];
    GridSet::from_cells(zw.map(|(z, w)| GridCell::new(pt(&[0, 0, z, 0, w]), 0b10100)))
}

/// The two profile edges where the tube opens into a deleted block rather
/// than carrying a wall: chimney mouth at w = 1, shaft mouth at w = 0.
fn tube_mouths() -> GridSet {
    GridSet::from_cells([
        GridCell::new(pt(&[0, 0, 2, 0, 1]), 0b00100),
        GridCell::new(pt(&[0, 0, 5, 0, 0]), 0b00100),
    ])
}

/// Membrane cross-section in the (z,w) plane: a three-cell strip from the
/// bridge level down to the shell level.
fn membrane_profile() -> GridSet {
    let zw = [(3, 1), (4, 1), (4, 0)];
    GridSet::from_cells(zw.map(|(z, w)| GridCell::new(pt(&[0, 0, z, 0, w]), 0b10100)))
}

fn upper_tube() -> GridSet {
    let a = ring(3);
    let walls = tube_profile().boundary().difference(&tube_mouths());
    a.boundary().product(&tube_profile()).union(&a.product(&walls))
}

fn upper_membrane() -> GridSet {
    inner_circle(3).product(&membrane_profile())
}

fn to_lower(upper: &GridSet) -> GridSet {
    upper.translate(pt(&[6])).reflect(4, 0)
}

/// One block of the spine, in its final position.
pub fn piece(p: Piece) -> GridSet {
    match p {
        Piece::UpperRoom => handlebody()
            .difference(&channel_block(3))
            .translate(pt(&[0, 0, 0, 0, 1])),
        Piece::LowerRoom => handlebody()
            .difference(&channel_block(9))
            .translate(pt(&[0, 0, 0, 0, -1])),
        Piece::Shell => sphere_shell()
            .difference(&handlebody())
            .difference(&ring(3).product_interval(2, 5, 6))
            .difference(&ring(9).product_interval(2, 5, 6)),
        Piece::UpperTube => upper_tube(),
        Piece::LowerTube => to_lower(&upper_tube()),
        Piece::UpperCollar => cross_section().product_interval(4, 0, 1),
        Piece::LowerCollar => cross_section().product_interval(4, -1, 0),
        Piece::UpperMembrane => upper_membrane(),
        Piece::LowerMembrane => to_lower(&upper_membrane()),
    }
}

fn four_box() -> GridSet {
    solid_box(&[0, 1, 2, 3], pt(&[-1, -1, 0, 0]), pt(&[14, 8, 7, 1]))
}

/// The 3-sphere: boundary cells of the 4-box (2496 cells).
pub fn sphere_shell() -> GridSet {
    four_box().boundary()
}

/// Ambient 4-manifold W = S3 x [-4,4]; the spine stays at |w| <= 3, one cell
/// clear of the w boundary.
pub fn ambient() -> GridSet {
    sphere_shell().product_interval(4, -4, 4)
}

/// The whole spine: 4311 cells, the disjoint union of the nine blocks.
pub fn cells() -> GridSet {
    let mut all = GridSet::new();
    let mut total = 0;
    for p in PIECES {
        let block = piece(p);
        total += block.len();
        all = all.union(&block);
    }
    assert_eq!(all.len(), total, "spine blocks overlap");
    all
}

/// Block owning each spine cell.
pub fn piece_table() -> BTreeMap<GridCell, Piece> {
    let mut table = BTreeMap::new();
    for p in PIECES {
        for c in piece(p).cells {
            table.insert(c, p);
        }
    }
    table
}

/// Union of the named blocks.
pub fn assembly(parts: &[Piece]) -> GridSet {
    let mut out = GridSet::new();
    for &p in parts {
        out = out.union(&piece(p));
    }
    out
}

/// Center-cone triangulation of the spine: 103,464 tetrahedra.
pub fn complex() -> CenteredGrid {
    triangulate_centered(&cells())
}

/// The covering 3-sphere and its 2-to-1 quotient map onto the spine.
pub fn sphere() -> NeighborhoodBoundary {
    neighborhood_boundary(&cells(), &ambient()).expect("spine lies in the ambient interior")
}

/// The two tori where the tubes open into the rooms' deleted blocks. Cutting
/// the covering sphere's sheet gluings along them splits it into the three
/// stacks of block copies.
pub fn attachment_tori() -> GridSet {
    let t1 = channel_block(3).translate(pt(&[0, 0, 0, 0, 1])).boundary();
    let t2 = channel_block(9).translate(pt(&[0, 0, 0, 0, -1])).boundary();
    t1.union(&t2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_z;

    #[test]
    fn block_counts() {
        let sizes: Vec<usize> = PIECES.iter().map(|&p| piece(p).len()).collect();
        assert_eq!(sizes, vec![251, 251, 2197, 448, 448, 322, 322, 36, 36]);
        assert_eq!(cells().len(), 4311);
        assert_eq!(sphere_shell().len(), 2496);
        assert_eq!(ambient().len(), 19968);
        assert_eq!(cross_section().len(), 322);
        assert_eq!(attachment_tori().len(), 128);
        for c in &cells().cells {
            assert_eq!(c.dim(), 3);
        }
    }

    #[test]
    fn mirror_symmetry_swaps_upper_and_lower() {
        // x-mirror about 13/2 swaps the hollows; w-mirror about 0 swaps the
        // levels. Together they carry each upper block onto its lower twin.
        let mirror = |s: &GridSet| s.reflect(0, 13).reflect(4, 0);
        for (a, b) in [
            (Piece::UpperRoom, Piece::LowerRoom),
            (Piece::UpperTube, Piece::LowerTube),
            (Piece::UpperCollar, Piece::LowerCollar),
            (Piece::UpperMembrane, Piece::LowerMembrane),
        ] {
            assert_eq!(mirror(&piece(a)), piece(b));
        }
        assert_eq!(mirror(&piece(Piece::Shell)), piece(Piece::Shell));
        assert_eq!(mirror(&cells()), cells());
    }

    #[test]
    fn ambient_is_a_closed_times_interval_manifold() {
        let s3 = sphere_shell();
        let t = triangulate_centered(&s3);
        assert!(t.complex.is_closed_pseudomanifold(3));
        let h = homology_z(&t.complex);
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert!(h.torsion_free());
    }

    #[test]
    fn cross_section_is_a_genus_two_surface() {
        let sigma = triangulate_centered(&cross_section());
        assert!(sigma.complex.is_closed_surface());
        assert_eq!(sigma.complex.euler_characteristic(), -2);
        assert_eq!(sigma.complex.orientable_surface(), Some(true));
        assert_eq!(sigma.complex.connected_components(), 1);
    }

    #[test]
    fn rooms_retract_to_a_torus_wedge_circle() {
        // Handlebody minus an interior solid-torus channel: H1 = Z^3.
        let room = triangulate_centered(&piece(Piece::UpperRoom));
        let h = homology_z(&room.complex);
        assert_eq!(h.betti, vec![1, 3, 1, 0]);
        assert!(h.torsion_free());
    }

    #[test]
    fn tube_and_membrane_profiles() {
        assert_eq!(tube_profile().len(), 7);
        assert_eq!(tube_profile().boundary().len(), 16);
        assert_eq!(membrane_profile().len(), 3);
        // Tube: hose over the ring, S1 x annulus up to homotopy.
        let tube = triangulate_centered(&piece(Piece::UpperTube));
        let h = homology_z(&tube.complex);
        assert_eq!(h.betti, vec![1, 2, 1, 0]);
        // Membrane: circle x strip.
        let mem = triangulate_centered(&piece(Piece::UpperMembrane));
        let h = homology_z(&mem.complex);
        assert_eq!(h.betti, vec![1, 1, 0, 0]);
    }
}
