//! The house with two rooms: a contractible 2-complex with no free edge.
//!
//! Box [0,3]x[0,5]x[0,2], lower room z in [0,1], upper room z in [1,2]. The
//! lower room is entered through a shaft that descends through the upper
//! room (footprint [1,2]x[1,2], z in [1,2]); the upper room through a shaft
//! rising through the lower room (footprint [1,2]x[3,4], z in [0,1]). Each
//! shaft wall is tied to the x = 0 outer wall by one partition square, which
//! seals the room it crosses and pins the two K4 corners of the singular
//! set. Swapping (y, z) -> (5-y, 2-z) is a self-symmetry.

use crate::complex::VertexId;
use crate::double::{neighborhood_boundary, NeighborhoodBoundary};
use crate::grid::{pt, solid_box, triangulate_centered, CenteredGrid, GridCell, GridSet};

/// The 83 squares of the house.
pub fn cells() -> GridSet {
    let mut walls = GridSet::new();

    let floor_plan = solid_box(&[0, 1], pt(&[0, 0]), pt(&[3, 5]));
    let mouth_a = GridCell::new(pt(&[1, 1]), 0b011);
    let mouth_b = GridCell::new(pt(&[1, 3]), 0b011);

    // Bottom (shaft B enters here), middle (both shafts pierce it), top
    // (shaft A enters here), each lifted to its z level.
    for (z, holes) in [(0, vec![mouth_b]), (1, vec![mouth_a, mouth_b]), (2, vec![mouth_a])] {
        let mut level = floor_plan.clone();
        for h in holes {
            level.cells.remove(&h);
        }
        walls = walls.union(&level.translate(pt(&[0, 0, z])));
    }

    // Outer walls.
    walls = walls.union(&solid_box(&[1, 2], pt(&[0, 0, 0]), pt(&[0, 5, 2])));
    walls = walls.union(&solid_box(&[1, 2], pt(&[3, 0, 0]), pt(&[3, 5, 2])));
    walls = walls.union(&solid_box(&[0, 2], pt(&[0, 0, 0]), pt(&[3, 0, 2])));
    walls = walls.union(&solid_box(&[0, 2], pt(&[0, 5, 0]), pt(&[3, 5, 2])));

    // Shaft walls: A around [1,2]x[1,2] in the upper room, B around
    // [1,2]x[3,4] in the lower room.
    for (y0, z0) in [(1, 1), (3, 0)] {
        walls.insert(GridCell::new(pt(&[1, y0, z0]), 0b110));
        walls.insert(GridCell::new(pt(&[2, y0, z0]), 0b110));
        walls.insert(GridCell::new(pt(&[1, y0, z0]), 0b101));
        walls.insert(GridCell::new(pt(&[1, y0 + 1, z0]), 0b101));
    }

    // Partitions from each shaft to the x = 0 wall.
    walls.insert(GridCell::new(pt(&[0, 1, 1]), 0b101));
    walls.insert(GridCell::new(pt(&[0, 4, 0]), 0b101));

    walls
}

/// Center-cone triangulation of the house: 332 triangles.
pub fn complex() -> CenteredGrid {
    triangulate_centered(&cells())
}

/// Solid box with a one-cell margin around the house.
pub fn ambient() -> GridSet {
    solid_box(&[0, 1, 2], pt(&[-1, -1, -1]), pt(&[4, 6, 3]))
}

/// The sphere double covering the house, with its quotient map.
pub fn sphere() -> NeighborhoodBoundary {
    neighborhood_boundary(&cells(), &ambient()).expect("house lies inside its ambient box")
}

/// The two K4 corners of the singular set.
pub fn k4_corners() -> [GridCell; 2] {
    [
        GridCell::vertex(pt(&[0, 1, 1])),
        GridCell::vertex(pt(&[0, 4, 1])),
    ]
}

/// Generic sheet count of the quotient map over every maximal simplex.
pub const SHEETS: usize = 2;

pub fn vertex_id(grid: &CenteredGrid, p: &[i32]) -> Option<VertexId> {
    grid.id_of_cell(&GridCell::vertex(pt(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::free_faces;
    use crate::group::{fundamental_group, Pi1Status, DEFAULT_PI1_BUDGET};
    use crate::homology::homology_z;
    use crate::immersion::{census_2, is_pl_immersion, multiplicity, LinkClass2};

    #[test]
    fn square_count_and_symmetry() {
        let c = cells();
        assert_eq!(c.len(), 83);
        let mirrored = c.reflect(1, 5).reflect(2, 2);
        assert_eq!(mirrored, c);
    }

    #[test]
    fn contractible_but_not_collapsible() {
        let house = complex();
        assert_eq!(house.complex.count(2), 332);
        assert!(homology_z(&house.complex).is_point());
        assert!(free_faces(&house.complex).is_empty());
        let pi1 = fundamental_group(&house.complex, DEFAULT_PI1_BUDGET).unwrap();
        assert_eq!(pi1.status, Pi1Status::CertifiedTrivial);
    }

    #[test]
    fn singular_set_census() {
        let house = complex();
        let census = census_2(&house.complex);
        assert_eq!(census.count(LinkClass2::Theta), 20);
        assert_eq!(census.count(LinkClass2::K4), 2);
        assert_eq!(census.count(LinkClass2::Other), 0);
        let mut expected: Vec<VertexId> = k4_corners()
            .iter()
            .map(|c| house.id_of_cell(c).unwrap())
            .collect();
        expected.sort_unstable();
        assert_eq!(census.vertices(LinkClass2::K4), expected);
    }

    #[test]
    fn covering_sphere() {
        let nb = sphere();
        assert!(nb.complex.is_two_sphere());
        assert_eq!(nb.complex.count(2), 664);
        let verdict = is_pl_immersion(&nb.map, &nb.complex, &nb.target.complex).unwrap();
        assert!(verdict.is_immersion());
        assert!(multiplicity(&nb.map, &nb.complex, &nb.target.complex)
            .values()
            .all(|&m| m == SHEETS));
    }
}
