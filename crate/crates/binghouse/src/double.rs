//! Boundary of a cell neighborhood. Given a pure d-dimensional cell set Y
//! inside a (d+1)-dimensional ambient cell manifold W, thickening Y slightly
//! inside W and taking the frontier yields a d-manifold that covers each
//! cell of Y once from every side. This module builds that frontier
//! combinatorially:
//!
//! * one sheet cube per pair (cell of Y, ambient cell over it), two per cell
//!   away from the ambient boundary;
//! * sheet facets glued in pairs by walking the transverse circle around
//!   each codimension-one face of Y, skipping ambient cells until the next
//!   cell of Y is hit; a free face pairs the two sheets of its own cell,
//!   which folds the frontier around the rim;
//! * triangulation by center cones, so glued sheets never share a whole
//!   simplex no matter how the folds chain up.
//!
//! The projection to Y (forget the sheet) comes out as a simplicial map onto
//! the center-cone triangulation of Y.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{SimplicialComplex, SimplicialMap, VertexId};
use crate::grid::{cell_simplices, triangulate_centered, CenteredGrid, GridCell, GridSet};

#[derive(Debug, Error)]
pub enum DoubleError {
    #[error("cells to double must all have the same dimension")]
    NotPure,
    #[error("ambient cells must sit one dimension above the doubled cells")]
    AmbientDim,
    #[error("cell {0:?} is not a face of any ambient cell")]
    NotInAmbient(GridCell),
    #[error("cell {0:?} touches the ambient boundary")]
    AtAmbientBoundary(GridCell),
    #[error("ambient set is not a manifold near {0:?}")]
    AmbientNotManifold(GridCell),
}

/// The doubled complex with its projection.
pub struct NeighborhoodBoundary {
    pub complex: SimplicialComplex,
    /// Center-cone triangulation of the doubled cell set.
    pub target: CenteredGrid,
    /// Sheet-forgetting projection onto `target.complex`.
    pub map: SimplicialMap,
    /// One entry per sheet cube: the underlying cell and its ambient side.
    pub sheets: Vec<(GridCell, GridCell)>,
    /// Top simplices of each sheet, parallel to `sheets`; together they
    /// partition the top simplices of `complex`.
    pub sheet_tops: Vec<Vec<Vec<VertexId>>>,
    /// Every glued facet pair, once: the two sheet indices and the shared
    /// codimension-one face.
    pub gluings: Vec<(usize, usize, GridCell)>,
}

impl NeighborhoodBoundary {
    /// Connected component of each sheet after severing the gluings whose
    /// shared face lies in `cut`. Labels count up from zero in sheet order.
    pub fn components_cut_along(&self, cut: &GridSet) -> Vec<usize> {
        let mut uf = UnionFind::new(self.sheets.len());
        for &(a, b, gamma) in &self.gluings {
            if !cut.contains(&gamma) {
                uf.union(a as u32, b as u32);
            }
        }
        let mut labels: BTreeMap<u32, usize> = BTreeMap::new();
        (0..self.sheets.len())
            .map(|i| {
                let r = uf.find(i as u32);
                let n = labels.len();
                *labels.entry(r).or_insert(n)
            })
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// The two facets of `e` containing `gamma` are `tau` and the returned cell.
fn other_facet_containing(e: &GridCell, tau: &GridCell, gamma: &GridCell) -> GridCell {
    debug_assert!(e.has_subcell(gamma) && e.has_subcell(tau));
    for a in e.axis_list() {
        if gamma.axes & (1 << a) != 0 {
            continue;
        }
        let mut corner = e.corner;
        corner[a] = gamma.corner[a];
        let f = GridCell::new(corner, e.axes & !(1 << a));
        if f != *tau {
            debug_assert!(f.has_subcell(gamma));
            return f;
        }
    }
    unreachable!("a facet of e other than tau contains gamma");
}

/// Walk the transverse circle around `gamma` away from the sheet
/// (`delta`, `side`) until the next cell of `y`; that cell, entered through
/// the last ambient cell, carries the glued partner facet.
fn facet_partner(
    y: &GridSet,
    w: &GridSet,
    delta: &GridCell,
    side: &GridCell,
    gamma: &GridCell,
) -> Result<(GridCell, GridCell), DoubleError> {
    let (mut tau, mut e) = (*delta, *side);
    loop {
        let next = other_facet_containing(&e, &tau, gamma);
        if y.contains(&next) {
            return Ok((next, e));
        }
        let cofs = w.cofaces_of(&next);
        if cofs.len() > 2 {
            return Err(DoubleError::AmbientNotManifold(next));
        }
        let e2 = cofs
            .into_iter()
            .find(|x| *x != e)
            .ok_or(DoubleError::AtAmbientBoundary(next))?;
        tau = next;
        e = e2;
    }
}

pub fn neighborhood_boundary(
    y: &GridSet,
    w: &GridSet,
) -> Result<NeighborhoodBoundary, DoubleError> {
    let mut dims = y.cells.iter().map(|c| c.dim());
    let d = dims.next().ok_or(DoubleError::NotPure)?;
    if dims.any(|k| k != d) {
        return Err(DoubleError::NotPure);
    }
    if w.cells.iter().any(|c| c.dim() != d + 1) {
        return Err(DoubleError::AmbientDim);
    }

    let mut sheets: Vec<(GridCell, GridCell)> = Vec::new();
    for delta in &y.cells {
        let cofs = w.cofaces_of(delta);
        match cofs.len() {
            0 => return Err(DoubleError::NotInAmbient(*delta)),
            1 => return Err(DoubleError::AtAmbientBoundary(*delta)),
            2 => sheets.extend(cofs.into_iter().map(|c| (*delta, c))),
            _ => return Err(DoubleError::AmbientNotManifold(*delta)),
        }
    }
    let sheet_index: BTreeMap<(GridCell, GridCell), usize> = sheets
        .iter()
        .enumerate()
        .map(|(i, &(delta, c))| ((delta, c), i))
        .collect();

    // Slot per (sheet, face of its cell); gluing identifies whole facets,
    // so it identifies every slot underneath them.
    let mut slot_index: BTreeMap<(usize, GridCell), u32> = BTreeMap::new();
    for (t, &(delta, _)) in sheets.iter().enumerate() {
        for sub in delta.subcells() {
            let n = slot_index.len() as u32;
            slot_index.insert((t, sub), n);
        }
    }
    let mut uf = UnionFind::new(slot_index.len());

    let mut gluings: Vec<(usize, usize, GridCell)> = Vec::new();
    for (t, &(delta, side)) in sheets.iter().enumerate() {
        for gamma in delta.facets() {
            let (pd, pc) = facet_partner(y, w, &delta, &side, &gamma)?;
            let p = sheet_index[&(pd, pc)];
            debug_assert_ne!(p, t, "the transverse walk re-enters from the far side");
            if t < p {
                gluings.push((t, p, gamma));
            }
            for sub in gamma.subcells() {
                uf.union(slot_index[&(t, sub)], slot_index[&(p, sub)]);
            }
        }
    }

    // Vertex classes: slot orbits over faces of every dimension except one.
    // Identified slots always share their underlying face.
    let mut class_of_root: BTreeMap<u32, VertexId> = BTreeMap::new();
    let mut class_slots: Vec<(usize, GridCell)> = Vec::new();
    for (&(t, sub), &s) in &slot_index {
        if sub.dim() == 1 {
            continue;
        }
        let root = uf.find(s);
        class_of_root.entry(root).or_insert_with(|| {
            class_slots.push((t, sub));
            (class_slots.len() - 1) as VertexId
        });
    }

    let mut tops: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut sheet_tops: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(sheets.len());
    for (t, &(delta, _)) in sheets.iter().enumerate() {
        let mut mine = Vec::new();
        for chain in cell_simplices(&delta) {
            let mut simplex: Vec<VertexId> = chain
                .iter()
                .map(|sub| class_of_root[&uf.find(slot_index[&(t, *sub)])])
                .collect();
            simplex.sort_unstable();
            simplex.dedup();
            assert_eq!(simplex.len(), d + 1, "sheet simplex degenerated");
            let fresh = tops.insert(simplex.clone());
            assert!(fresh, "two sheets produced the same simplex");
            mine.push(simplex);
        }
        sheet_tops.push(mine);
    }
    let per_cell = cell_simplices(&sheets[0].0).len();
    assert_eq!(tops.len(), sheets.len() * per_cell);

    let complex = SimplicialComplex::from_top_simplices(
        (0..class_slots.len() as VertexId).collect::<Vec<_>>(),
        tops,
    )
    .expect("sheet simplices form a complex");

    let target = triangulate_centered(y);
    let map = SimplicialMap::new(
        class_slots
            .iter()
            .enumerate()
            .map(|(id, (_, sub))| {
                let image = target
                    .id_of_cell(sub)
                    .expect("class face lies in the doubled set's closure");
                (id as VertexId, image)
            })
            .collect(),
    );
    map.validate(&complex, &target.complex)
        .expect("projection is simplicial");

    Ok(NeighborhoodBoundary { complex, target, map, sheets, sheet_tops, gluings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{pt, solid_box};
    use crate::homology::homology_z;
    use crate::immersion::{
        census_2, is_pl_immersion, multiplicity, ImmersionVerdict, LinkClass2,
    };

    #[test]
    fn lone_square_doubles_to_a_sphere() {
        let y = solid_box(&[0, 1], pt(&[0, 0, 0]), pt(&[1, 1]));
        let w = solid_box(&[0, 1, 2], pt(&[-1, -1, -1]), pt(&[2, 2, 1]));
        let nb = neighborhood_boundary(&y, &w).unwrap();
        assert_eq!(nb.complex.count(2), 8);
        assert!(nb.complex.is_two_sphere());
        // Folding around the free rim is not a local embedding.
        let verdict = is_pl_immersion(&nb.map, &nb.complex, &nb.target.complex).unwrap();
        assert!(!verdict.is_immersion());
    }

    #[test]
    fn closed_surface_doubles_to_two_spheres() {
        let y = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[1, 1, 1])).boundary();
        let w = solid_box(&[0, 1, 2], pt(&[-1, -1, -1]), pt(&[2, 2, 2]));
        let nb = neighborhood_boundary(&y, &w).unwrap();
        assert_eq!(nb.complex.count(2), 48);
        assert_eq!(nb.complex.connected_components(), 2);
        let h = homology_z(&nb.complex);
        assert_eq!(h.betti, vec![2, 0, 2]);
        let verdict = is_pl_immersion(&nb.map, &nb.complex, &nb.target.complex).unwrap();
        assert_eq!(verdict, ImmersionVerdict::Immersion);
        assert!(multiplicity(&nb.map, &nb.complex, &nb.target.complex)
            .values()
            .all(|&n| n == 2));
    }

    #[test]
    fn box_with_midwall_doubles_to_three_spheres() {
        let mut y = solid_box(&[0, 1, 2], pt(&[0, 0, 0]), pt(&[2, 1, 1])).boundary();
        y.insert(GridCell::new(pt(&[1, 0, 0]), 0b110));
        let w = solid_box(&[0, 1, 2], pt(&[-1, -1, -1]), pt(&[3, 2, 2]));
        let nb = neighborhood_boundary(&y, &w).unwrap();
        assert_eq!(nb.complex.count(2), 2 * 11 * 4);
        assert_eq!(nb.complex.connected_components(), 3);
        let h = homology_z(&nb.complex);
        assert_eq!(h.betti, vec![3, 0, 3]);
        let verdict = is_pl_immersion(&nb.map, &nb.complex, &nb.target.complex).unwrap();
        assert_eq!(verdict, ImmersionVerdict::Immersion);
        assert!(multiplicity(&nb.map, &nb.complex, &nb.target.complex)
            .values()
            .all(|&n| n == 2));
        // The wall rim is a circle of four triple edges; its corners carry
        // theta links in the target.
        let census = census_2(&nb.target.complex);
        assert_eq!(census.count(LinkClass2::Theta), 4);
        assert_eq!(census.count(LinkClass2::K4), 0);
        assert_eq!(census.count(LinkClass2::Other), 0);
    }

    #[test]
    fn solid_ball_doubles_to_a_three_sphere() {
        let y = solid_box(&[0, 1, 2], pt(&[0, 0, 0, 0]), pt(&[1, 1, 1]));
        let w = solid_box(&[0, 1, 2, 3], pt(&[-1, -1, -1, -1]), pt(&[2, 2, 2, 2]));
        let nb = neighborhood_boundary(&y, &w).unwrap();
        assert_eq!(nb.complex.count(3), 48);
        assert!(nb.complex.is_closed_pseudomanifold(3));
        let h = homology_z(&nb.complex);
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert!(h.torsion_free());
    }

    #[test]
    fn closed_three_manifold_doubles_to_two_copies() {
        let y = solid_box(&[0, 1, 2, 3], pt(&[0; 4]), pt(&[1, 1, 1, 1])).boundary();
        let w = solid_box(&[0, 1, 2, 3], pt(&[-1, -1, -1, -1]), pt(&[2, 2, 2, 2]));
        let nb = neighborhood_boundary(&y, &w).unwrap();
        assert_eq!(nb.sheets.len(), 16);
        assert_eq!(nb.complex.connected_components(), 2);
        let h = homology_z(&nb.complex);
        assert_eq!(h.betti, vec![2, 0, 0, 2]);
        let verdict = is_pl_immersion(&nb.map, &nb.complex, &nb.target.complex).unwrap();
        assert_eq!(verdict, ImmersionVerdict::Immersion);
    }

    #[test]
    fn ambient_boundary_contact_is_rejected() {
        let y = solid_box(&[0, 1], pt(&[0, 0, 0]), pt(&[1, 1]));
        let w = solid_box(&[0, 1, 2], pt(&[-1, -1, 0]), pt(&[2, 2, 2]));
        match neighborhood_boundary(&y, &w) {
            Err(DoubleError::AtAmbientBoundary(_)) => {}
            other => panic!("expected a boundary-contact error, got {:?}", other.is_ok()),
        }
    }
}
