//! Axis-aligned lattice cells in up to five integer coordinates, cell-set
//! algebra on them, and the standard triangulation of a cube complex into
//! simplices (d! per d-cell, consistent across shared faces because the
//! splitting order is the global coordinate order).

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexId};

pub const COORDS: usize = 5;
pub type Point = [i32; COORDS];

/// A unit cell: the product of unit intervals along the axes in the bitmask
/// and single points elsewhere, anchored at `corner`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridCell {
    pub corner: Point,
    pub axes: u8,
}

impl GridCell {
    pub fn new(corner: Point, axes: u8) -> Self {
        debug_assert_eq!(axes >> COORDS, 0);
        GridCell { corner, axes }
    }

    pub fn vertex(p: Point) -> Self {
        GridCell { corner: p, axes: 0 }
    }

    pub fn dim(&self) -> usize {
        self.axes.count_ones() as usize
    }

    pub fn axis_list(&self) -> Vec<usize> {
        (0..COORDS).filter(|&a| self.axes & (1 << a) != 0).collect()
    }

    /// The 2^dim corner points.
    pub fn vertices(&self) -> Vec<Point> {
        let axes = self.axis_list();
        let mut out = Vec::with_capacity(1 << axes.len());
        for mask in 0..(1u32 << axes.len()) {
            let mut p = self.corner;
            for (bit, &a) in axes.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    p[a] += 1;
                }
            }
            out.push(p);
        }
        out
    }

    /// The 2*dim codimension-one faces.
    pub fn facets(&self) -> Vec<GridCell> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for a in self.axis_list() {
            let axes = self.axes & !(1 << a);
            out.push(GridCell { corner: self.corner, axes });
            let mut c = self.corner;
            c[a] += 1;
            out.push(GridCell { corner: c, axes });
        }
        out
    }

    /// Every subcell, including the cell itself.
    pub fn subcells(&self) -> Vec<GridCell> {
        let axes = self.axis_list();
        let d = axes.len();
        let mut out = Vec::new();
        // Choose a sub-mask of spanned axes; the dropped axes pick a side.
        for keep in 0..(1u32 << d) {
            let mut sub_axes = 0u8;
            let dropped: Vec<usize> = axes
                .iter()
                .enumerate()
                .filter_map(|(bit, &a)| {
                    if keep & (1 << bit) != 0 {
                        sub_axes |= 1 << a;
                        None
                    } else {
                        Some(a)
                    }
                })
                .collect();
            for side in 0..(1u32 << dropped.len()) {
                let mut corner = self.corner;
                for (bit, &a) in dropped.iter().enumerate() {
                    if side & (1 << bit) != 0 {
                        corner[a] += 1;
                    }
                }
                out.push(GridCell { corner, axes: sub_axes });
            }
        }
        out
    }

    pub fn has_subcell(&self, other: &GridCell) -> bool {
        if other.axes & !self.axes != 0 {
            return false;
        }
        for a in 0..COORDS {
            let inside = if self.axes & (1 << a) != 0 {
                if other.axes & (1 << a) != 0 {
                    other.corner[a] == self.corner[a]
                } else {
                    other.corner[a] == self.corner[a] || other.corner[a] == self.corner[a] + 1
                }
            } else {
                other.corner[a] == self.corner[a]
            };
            if !inside {
                return false;
            }
        }
        true
    }

    /// Cellwise product on disjoint axis sets: corners add, spans unite.
    pub fn product(&self, other: &GridCell) -> GridCell {
        assert_eq!(self.axes & other.axes, 0, "product factors share an axis");
        let mut corner = self.corner;
        for (a, v) in corner.iter_mut().enumerate() {
            *v += other.corner[a];
        }
        GridCell { corner, axes: self.axes | other.axes }
    }

    pub fn translate(&self, delta: Point) -> GridCell {
        let mut corner = self.corner;
        for a in 0..COORDS {
            corner[a] += delta[a];
        }
        GridCell { corner, axes: self.axes }
    }

    /// Mirror across the hyperplane axis = doubled_center / 2.
    pub fn reflect(&self, axis: usize, doubled_center: i32) -> GridCell {
        let mut corner = self.corner;
        corner[axis] = if self.axes & (1 << axis) != 0 {
            doubled_center - self.corner[axis] - 1
        } else {
            doubled_center - self.corner[axis]
        };
        GridCell { corner, axes: self.axes }
    }
}

/// A set of lattice cells. Most uses keep only top cells of one dimension,
/// but nothing enforces purity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSet {
    pub cells: BTreeSet<GridCell>,
}

impl GridSet {
    pub fn new() -> Self {
        GridSet::default()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = GridCell>) -> Self {
        GridSet { cells: cells.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &GridCell) -> bool {
        self.cells.contains(c)
    }

    pub fn insert(&mut self, c: GridCell) {
        self.cells.insert(c);
    }

    pub fn union(&self, other: &GridSet) -> GridSet {
        GridSet { cells: self.cells.union(&other.cells).copied().collect() }
    }

    pub fn difference(&self, other: &GridSet) -> GridSet {
        GridSet { cells: self.cells.difference(&other.cells).copied().collect() }
    }

    pub fn intersection(&self, other: &GridSet) -> GridSet {
        GridSet { cells: self.cells.intersection(&other.cells).copied().collect() }
    }

    pub fn translate(&self, delta: Point) -> GridSet {
        GridSet::from_cells(self.cells.iter().map(|c| c.translate(delta)))
    }

    pub fn reflect(&self, axis: usize, doubled_center: i32) -> GridSet {
        GridSet::from_cells(self.cells.iter().map(|c| c.reflect(axis, doubled_center)))
    }

    /// All subcells of all cells.
    pub fn closure(&self) -> GridSet {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            out.extend(c.subcells());
        }
        GridSet { cells: out }
    }

    /// Codimension-one cells lying in exactly one cell of the set. The set is
    /// treated as a pure collection of top cells.
    pub fn boundary(&self) -> GridSet {
        let mut count: BTreeMap<GridCell, u32> = BTreeMap::new();
        for c in &self.cells {
            for f in c.facets() {
                *count.entry(f).or_insert(0) += 1;
            }
        }
        GridSet::from_cells(count.into_iter().filter(|&(_, n)| n == 1).map(|(f, _)| f))
    }

    /// Immediate cofaces of `cell` inside this set.
    pub fn cofaces_of(&self, cell: &GridCell) -> Vec<GridCell> {
        let mut out = Vec::new();
        for a in 0..COORDS {
            if cell.axes & (1 << a) != 0 {
                continue;
            }
            let axes = cell.axes | (1 << a);
            let up = GridCell { corner: cell.corner, axes };
            if self.contains(&up) {
                out.push(up);
            }
            let mut c = cell.corner;
            c[a] -= 1;
            let down = GridCell { corner: c, axes };
            if self.contains(&down) {
                out.push(down);
            }
        }
        out
    }

    /// Cellwise product of two sets on disjoint axes.
    pub fn product(&self, other: &GridSet) -> GridSet {
        let mut out = BTreeSet::new();
        for a in &self.cells {
            for b in &other.cells {
                out.insert(a.product(b));
            }
        }
        GridSet { cells: out }
    }

    /// Product with the lattice interval [lo, hi] along `axis`, which the
    /// cells must not already span.
    pub fn product_interval(&self, axis: usize, lo: i32, hi: i32) -> GridSet {
        assert!(lo < hi);
        let mut out = BTreeSet::new();
        for c in &self.cells {
            assert_eq!(c.axes & (1 << axis), 0, "cell already spans the product axis");
            for t in lo..hi {
                let mut corner = c.corner;
                corner[axis] = t;
                out.insert(GridCell { corner, axes: c.axes | (1 << axis) });
            }
        }
        GridSet { cells: out }
    }
}

/// Top cells tiling the geometric box [lo, hi] along the given axes; all
/// other coordinates stay at their `lo` value.
pub fn solid_box(axes: &[usize], lo: Point, hi: Point) -> GridSet {
    let mut axes_mask = 0u8;
    for &a in axes {
        assert!(hi[a] > lo[a], "degenerate box along axis {a}");
        axes_mask |= 1 << a;
    }
    let mut cells = vec![GridCell { corner: lo, axes: axes_mask }];
    for &a in axes {
        cells = cells
            .into_iter()
            .flat_map(|c| {
                (lo[a]..hi[a]).map(move |v| {
                    let mut corner = c.corner;
                    corner[a] = v;
                    GridCell { corner, axes: c.axes }
                })
            })
            .collect();
    }
    GridSet::from_cells(cells)
}

/// A triangulated cube complex, with the lattice point of each vertex.
pub struct TriangulatedGrid {
    pub complex: SimplicialComplex,
    /// Vertex id -> lattice point, in id order.
    pub points: Vec<Point>,
    pub point_ids: BTreeMap<Point, VertexId>,
}

impl TriangulatedGrid {
    pub fn id_of(&self, p: &Point) -> Option<VertexId> {
        self.point_ids.get(p).copied()
    }
}

/// Triangulate each d-cell into d! simplices: a simplex per order in which
/// the spanned axes step from the low corner to the high one. Restriction to
/// a shared face yields the same simplices on both sides, so the union is a
/// simplicial complex.
pub fn triangulate(set: &GridSet) -> TriangulatedGrid {
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for c in &set.cells {
        points.extend(c.vertices());
    }
    let points: Vec<Point> = points.into_iter().collect();
    let point_ids: BTreeMap<Point, VertexId> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as VertexId))
        .collect();

    let mut tops: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for c in &set.cells {
        let axes = c.axis_list();
        if axes.is_empty() {
            tops.insert(vec![point_ids[&c.corner]]);
            continue;
        }
        for perm in axes.iter().permutations(axes.len()) {
            let mut p = c.corner;
            let mut simplex = vec![point_ids[&p]];
            for &&a in &perm {
                p[a] += 1;
                simplex.push(point_ids[&p]);
            }
            simplex.sort_unstable();
            tops.insert(simplex);
        }
    }

    let complex = SimplicialComplex::from_top_simplices(
        (0..points.len() as VertexId).collect::<Vec<_>>(),
        tops,
    )
    .expect("triangulated grid cells are valid simplices");
    TriangulatedGrid { complex, points, point_ids }
}

/// Center of a cell in doubled lattice coordinates: corner*2 plus one for
/// each spanned axis. Parity recovers the spanned axes, so distinct cells
/// have distinct centers.
pub fn center_point(c: &GridCell) -> Point {
    let mut p = c.corner;
    for (a, v) in p.iter_mut().enumerate() {
        *v *= 2;
        if c.axes & (1 << a) != 0 {
            *v += 1;
        }
    }
    p
}

/// Center-cone decomposition of one cell: cone from the cell's center over
/// the decomposed facets, with 1-cells kept whole. Every simplex is a chain
/// of cells (top center, facet center, ..., two lattice corners); 2^(d-1) d!
/// simplices in dimension d >= 1. Unlike the diagonal rule this never puts a
/// simplex inside the union of two facets, so separately built copies of a
/// cell can be glued along any part of their boundary.
pub fn cell_simplices(c: &GridCell) -> Vec<Vec<GridCell>> {
    match c.dim() {
        0 => vec![vec![*c]],
        1 => {
            let a = c.axis_list()[0];
            let mut hi = c.corner;
            hi[a] += 1;
            vec![vec![GridCell::vertex(c.corner), GridCell::vertex(hi)]]
        }
        _ => {
            let mut out = Vec::new();
            for f in c.facets() {
                for mut s in cell_simplices(&f) {
                    s.insert(0, *c);
                    out.push(s);
                }
            }
            out
        }
    }
}

/// A cube complex triangulated by center cones, with a vertex for every
/// lattice point and every face of dimension two or more.
pub struct CenteredGrid {
    pub complex: SimplicialComplex,
    /// Vertex id -> doubled lattice point, in id order.
    pub points: Vec<Point>,
    pub cell_ids: BTreeMap<GridCell, VertexId>,
}

impl CenteredGrid {
    /// Vertex over a closure cell; None for 1-cells, which get no center.
    pub fn id_of_cell(&self, c: &GridCell) -> Option<VertexId> {
        self.cell_ids.get(c).copied()
    }
}

pub fn triangulate_centered(set: &GridSet) -> CenteredGrid {
    let mut centers: BTreeSet<Point> = BTreeSet::new();
    let mut carriers: BTreeMap<Point, GridCell> = BTreeMap::new();
    for c in &set.closure().cells {
        if c.dim() == 1 {
            continue;
        }
        let p = center_point(c);
        centers.insert(p);
        carriers.insert(p, *c);
    }
    let points: Vec<Point> = centers.into_iter().collect();
    let mut cell_ids: BTreeMap<GridCell, VertexId> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        cell_ids.insert(carriers[p], i as VertexId);
    }

    let mut tops: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for c in &set.cells {
        for chain in cell_simplices(c) {
            let mut simplex: Vec<VertexId> =
                chain.iter().map(|f| cell_ids[f]).collect();
            simplex.sort_unstable();
            tops.insert(simplex);
        }
    }

    let complex = SimplicialComplex::from_top_simplices(
        (0..points.len() as VertexId).collect::<Vec<_>>(),
        tops,
    )
    .expect("center cones of grid cells are valid simplices");
    CenteredGrid { complex, points, cell_ids }
}

/// Shorthand: point fully specified by its first coordinates, rest zero.
pub fn pt(coords: &[i32]) -> Point {
    let mut p = [0; COORDS];
    p[..coords.len()].copy_from_slice(coords);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_z;

    #[test]
    fn cell_combinatorics() {
        let c4 = GridCell::new(pt(&[0, 0, 0, 0]), 0b1111);
        assert_eq!(c4.dim(), 4);
        assert_eq!(c4.vertices().len(), 16);
        assert_eq!(c4.facets().len(), 8);
        assert_eq!(
            c4.subcells().iter().filter(|s| s.dim() == 2).count(),
            24
        );
        let sq = GridCell::new(pt(&[3, 5]), 0b011);
        assert!(c4.dim() > sq.dim());
        for f in sq.facets() {
            assert!(sq.has_subcell(&f));
            assert!(!f.has_subcell(&sq));
        }
        assert_eq!(sq.subcells().len(), 9);
    }

    #[test]
    fn reflection_is_an_involution() {
        let s = solid_box(&[0, 1], pt(&[2, 3]), pt(&[5, 9]));
        assert_eq!(s.reflect(0, 13).reflect(0, 13), s);
        // Mirroring [2,5] across x = 6.5 gives [8,11].
        let m = s.reflect(0, 13);
        let xs: BTreeSet<i32> = m.cells.iter().map(|c| c.corner[0]).collect();
        assert_eq!(xs, (8..11).collect());
    }

    #[test]
    fn box_boundary_counts() {
        let cube = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[1, 1, 1]));
        assert_eq!(cube.len(), 1);
        assert_eq!(cube.boundary().len(), 6);
        let b3 = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[2, 2, 2]));
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.boundary().len(), 24);
        let b4 = solid_box(&[0, 1, 2, 3], pt(&[0, 0, 0, 0]), pt(&[2, 2, 2, 2]));
        assert_eq!(b4.len(), 16);
        assert_eq!(b4.boundary().len(), 64);
    }

    #[test]
    fn triangulation_counts_and_consistency() {
        let square = solid_box(&[0, 1], pt(&[0, 0]), pt(&[1, 1]));
        assert_eq!(triangulate(&square).complex.count(2), 2);
        let cube = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[1, 1, 1]));
        assert_eq!(triangulate(&cube).complex.count(3), 6);
        let c4 = solid_box(&[0, 1, 2, 3], pt(&[0; 4]), pt(&[1, 1, 1, 1]));
        assert_eq!(triangulate(&c4).complex.count(4), 24);

        // Two adjacent cubes triangulate to a ball: same shared-face
        // triangles on both sides.
        let two = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[2, 1, 1]));
        let t = triangulate(&two);
        assert_eq!(t.complex.count(3), 12);
        let h = homology_z(&t.complex);
        assert!(h.is_point());
    }

    #[test]
    fn boundary_spheres_triangulate_correctly() {
        let b3 = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[2, 2, 2]));
        let s2 = triangulate(&b3.boundary());
        assert!(s2.complex.is_two_sphere());

        let b4 = solid_box(&[0, 1, 2, 3], pt(&[0; 4]), pt(&[2, 2, 2, 2]));
        let s3 = triangulate(&b4.boundary());
        assert!(s3.complex.is_closed_pseudomanifold(3));
        let h = homology_z(&s3.complex);
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert!(h.torsion_free());
    }

    #[test]
    fn centered_triangulation_counts_and_topology() {
        let square = solid_box(&[0, 1], pt(&[0, 0]), pt(&[1, 1]));
        assert_eq!(triangulate_centered(&square).complex.count(2), 4);
        let cube = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[1, 1, 1]));
        assert_eq!(triangulate_centered(&cube).complex.count(3), 24);

        let two = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[2, 1, 1]));
        let t = triangulate_centered(&two);
        assert_eq!(t.complex.count(3), 48);
        assert!(homology_z(&t.complex).is_point());

        let s2 = triangulate_centered(&solid_box(&[0, 1, 2], pt(&[0; 3]), pt(&[2, 2, 2])).boundary());
        assert!(s2.complex.is_two_sphere());

        let b4 = solid_box(&[0, 1, 2, 3], pt(&[0; 4]), pt(&[2, 2, 2, 2]));
        let s3 = triangulate_centered(&b4.boundary());
        assert!(s3.complex.is_closed_pseudomanifold(3));
        let h = homology_z(&s3.complex);
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert!(h.torsion_free());
    }

    #[test]
    fn product_and_cofaces() {
        let square = solid_box(&[0, 1], pt(&[0, 0]), pt(&[2, 2]));
        let slab = square.product_interval(2, 0, 2);
        assert_eq!(slab.len(), 8);
        let inner_face = GridCell::new(pt(&[0, 0, 1]), 0b011);
        let cofs = slab.cofaces_of(&inner_face);
        assert_eq!(cofs.len(), 2);
        for c in cofs {
            assert!(c.has_subcell(&inner_face));
        }
    }
}
