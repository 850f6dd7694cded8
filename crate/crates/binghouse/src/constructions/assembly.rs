//! Decomposition of the covering sphere into block copies.
//!
//! Every sheet of the covering sphere lies over exactly one block of the
//! spine. Joining sheets only through gluings interior to a single block
//! cuts the sphere along the block boundaries; each connected group of
//! sheets is a copy of its block, covering each block cell exactly once.
//!
//! A copy need not embed its block: where another block presses into this
//! block's interior (the membranes land on annuli inside the rooms, the
//! shell, and the collars), the copy on that side is the block slit along
//! the annulus, and both flaps survive as separate vertices. The doubled
//! block vertices form the copy's seam; the projection is still injective
//! on every simplex and a bijection on top simplices. Gluing the eighteen
//! puzzle pieces back along shared sphere vertices rebuilds the sphere,
//! which `rebuild_check` verifies cell for cell.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, VertexId};
use crate::double::{NeighborhoodBoundary, UnionFind};
use crate::grid::{cell_simplices, CenteredGrid, GridCell, GridSet};
use crate::ops::{glue, GluingTable};

use super::house3d::{piece, piece_table, Piece, PIECES};

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("expected two copies of {0:?}, found {1}")]
    CopyCount(Piece, usize),
    #[error("a copy of {0:?} covers cell {1:?} {2} times")]
    Coverage(Piece, GridCell, usize),
    #[error("a copy of {0:?} has {2} vertices over block vertex {1}")]
    Preimages(Piece, VertexId, usize),
    #[error("a copy of {0:?} misses block vertex {1}")]
    Missing(Piece, VertexId),
    #[error("a copy of {0:?} does not cover the block's top cells one for one")]
    Tops(Piece),
    #[error("rebuild gluing failed: {0}")]
    Glue(#[from] ComplexError),
    #[error("rebuilt complex disagrees with the sphere: {0}")]
    Rebuild(String),
}

/// One of the eighteen puzzle pieces: a block copy inside the covering
/// sphere.
pub struct BlockCopy {
    pub piece: Piece,
    /// Sheets forming the copy, ascending.
    pub sheets: Vec<usize>,
    /// The puzzle piece itself: the subcomplex of the sphere spanned by the
    /// copy's sheets, keeping sphere vertex ids.
    pub complex: SimplicialComplex,
    /// Sphere vertex to block vertex: the projection restricted to the copy.
    pub cover: BTreeMap<VertexId, VertexId>,
    /// Block vertices covered twice. Nonempty exactly where another block
    /// presses into this block's interior and the copy is slit.
    pub seam: BTreeSet<VertexId>,
}

/// Two copies of each block plus the identifications that rebuild the
/// sphere from them.
pub struct AssemblyPlan {
    /// Sorted by block, then by first sheet.
    pub copies: Vec<BlockCopy>,
    /// Vertex identifications between copies. Copies keep sphere vertex
    /// ids, so the pairs chain (copy index, sphere vertex) slots of every
    /// vertex shared by two or more copies.
    pub table: GluingTable,
}

impl AssemblyPlan {
    /// Copies per block.
    pub fn usage(&self) -> BTreeMap<Piece, usize> {
        let mut u = BTreeMap::new();
        for c in &self.copies {
            *u.entry(c.piece).or_insert(0) += 1;
        }
        u
    }
}

/// The block's subcomplex of the spine triangulation, in spine vertex ids.
pub fn block_complex(grid: &CenteredGrid, p: Piece) -> SimplicialComplex {
    let mut verts = BTreeSet::new();
    let mut tops = Vec::new();
    for delta in &piece(p).cells {
        for chain in cell_simplices(delta) {
            let t: Vec<VertexId> = chain
                .iter()
                .map(|sub| grid.id_of_cell(sub).expect("block cell is triangulated"))
                .collect();
            verts.extend(t.iter().copied());
            tops.push(t);
        }
    }
    SimplicialComplex::from_top_simplices(verts, tops).expect("block simplices nest")
}

/// Group the sphere's sheets into block copies and certify each one.
pub fn extract_plan(nb: &NeighborhoodBoundary) -> Result<AssemblyPlan, AssemblyError> {
    let owner = piece_table();
    let label: Vec<Piece> = nb.sheets.iter().map(|&(c, _)| owner[&c]).collect();

    let mut uf = UnionFind::new(nb.sheets.len());
    for &(a, b, _) in &nb.gluings {
        if label[a] == label[b] {
            uf.union(a as u32, b as u32);
        }
    }
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for t in 0..nb.sheets.len() {
        groups.entry(uf.find(t as u32)).or_default().push(t);
    }
    let mut raw: Vec<(Piece, Vec<usize>)> =
        groups.into_values().map(|sheets| (label[sheets[0]], sheets)).collect();
    raw.sort_by(|a, b| (a.0, a.1[0]).cmp(&(b.0, b.1[0])));

    for p in PIECES {
        let n = raw.iter().filter(|(q, _)| *q == p).count();
        if n != 2 {
            return Err(AssemblyError::CopyCount(p, n));
        }
    }

    let mut copies = Vec::with_capacity(raw.len());
    for (p, sheets) in raw {
        // each block cell is doubled exactly once per copy
        let mut seen: BTreeMap<GridCell, usize> =
            piece(p).cells.iter().map(|&c| (c, 0)).collect();
        for &t in &sheets {
            *seen.get_mut(&nb.sheets[t].0).expect("sheet lies over its block") += 1;
        }
        for (c, n) in seen {
            if n != 1 {
                return Err(AssemblyError::Coverage(p, c, n));
            }
        }

        let mut verts: BTreeSet<VertexId> = BTreeSet::new();
        let mut tops: Vec<Vec<VertexId>> = Vec::new();
        let mut image_tops: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        for &t in &sheets {
            for top in &nb.sheet_tops[t] {
                verts.extend(top.iter().copied());
                tops.push(top.clone());
                let mut im: Vec<VertexId> = top.iter().map(|&w| nb.map.apply(w)).collect();
                im.sort_unstable();
                im.dedup();
                if im.len() != top.len() {
                    return Err(AssemblyError::Tops(p));
                }
                image_tops.insert(im);
            }
        }

        // top cells must correspond one for one
        let block = block_complex(&nb.target, p);
        let block_tops: BTreeSet<Vec<VertexId>> = block.top_simplices().into_iter().collect();
        if image_tops != block_tops || tops.len() != block_tops.len() {
            return Err(AssemblyError::Tops(p));
        }

        // every block vertex is covered once, or twice along the seam
        let cover: BTreeMap<VertexId, VertexId> =
            verts.iter().map(|&w| (w, nb.map.apply(w))).collect();
        let mut pre: BTreeMap<VertexId, usize> =
            block.vertices().iter().map(|&v| (v, 0)).collect();
        for &y in cover.values() {
            *pre.get_mut(&y).expect("copy vertex lies over its block") += 1;
        }
        let mut seam = BTreeSet::new();
        for (v, n) in pre {
            match n {
                1 => {}
                2 => {
                    seam.insert(v);
                }
                0 => return Err(AssemblyError::Missing(p, v)),
                _ => return Err(AssemblyError::Preimages(p, v, n)),
            }
        }

        let complex =
            SimplicialComplex::from_top_simplices(verts, tops).expect("copy simplices nest");
        copies.push(BlockCopy { piece: p, sheets, complex, cover, seam });
    }

    // chain the copies sharing each sphere vertex
    let mut slots: BTreeMap<VertexId, Vec<(usize, VertexId)>> = BTreeMap::new();
    for (ci, copy) in copies.iter().enumerate() {
        for &w in copy.cover.keys() {
            slots.entry(w).or_default().push((ci, w));
        }
    }
    let mut table = GluingTable::default();
    for shared in slots.values() {
        for pair in shared.windows(2) {
            table.pairs.push((pair[0].0, pair[0].1, pair[1].0, pair[1].1));
        }
    }

    Ok(AssemblyPlan { copies, table })
}

/// Glue the eighteen puzzle pieces by the plan's table and compare with the
/// sphere: the correspondence matching each glued vertex with the sphere
/// vertex its copies came from must be a simplicial isomorphism.
pub fn rebuild_check(plan: &AssemblyPlan, nb: &NeighborhoodBoundary) -> Result<(), AssemblyError> {
    let pieces: Vec<&SimplicialComplex> = plan.copies.iter().map(|c| &c.complex).collect();
    let (glued, into_glued) = glue(&pieces, &plan.table)?;

    let mut phi: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (copy, g) in plan.copies.iter().zip(&into_glued) {
        for &w in copy.cover.keys() {
            let gv = g.apply(w);
            match phi.get(&gv) {
                Some(&prev) if prev != w => {
                    return Err(AssemblyError::Rebuild(format!(
                        "glued vertex {gv} answers to sphere vertices {prev} and {w}"
                    )))
                }
                Some(_) => {}
                None => {
                    phi.insert(gv, w);
                }
            }
        }
    }
    if phi.len() != glued.vertices().len() || phi.len() != nb.complex.vertices().len() {
        return Err(AssemblyError::Rebuild(format!(
            "vertex counts differ: {} glued, {} matched, {} in the sphere",
            glued.vertices().len(),
            phi.len(),
            nb.complex.vertices().len()
        )));
    }
    let distinct: BTreeSet<VertexId> = phi.values().copied().collect();
    if distinct.len() != phi.len() {
        return Err(AssemblyError::Rebuild("vertex match is not injective".into()));
    }
    let mapped: BTreeSet<Vec<VertexId>> = glued
        .top_simplices()
        .into_iter()
        .map(|t| {
            let mut m: Vec<VertexId> = t.iter().map(|v| phi[v]).collect();
            m.sort_unstable();
            m
        })
        .collect();
    let sphere_tops: BTreeSet<Vec<VertexId>> = nb.complex.top_simplices().into_iter().collect();
    if mapped.len() != glued.count(3) || mapped != sphere_tops {
        return Err(AssemblyError::Rebuild("top cells do not correspond".into()));
    }
    Ok(())
}

/// A connected union of sheets left after severing the gluings along a cut.
pub struct CutRegion {
    /// Sheets per block.
    pub census: BTreeMap<Piece, usize>,
    pub complex: SimplicialComplex,
}

/// Split the sphere along the given codimension-one spine cells. The regions
/// keep their boundary faces and their vertex ids from the sphere.
pub fn cut_regions(nb: &NeighborhoodBoundary, cut: &GridSet) -> Vec<CutRegion> {
    let owner = piece_table();
    let labels = nb.components_cut_along(cut);
    let regions = labels.iter().max().map_or(0, |m| m + 1);
    let mut out = Vec::with_capacity(regions);
    for r in 0..regions {
        let mut census: BTreeMap<Piece, usize> = BTreeMap::new();
        let mut verts = BTreeSet::new();
        let mut tops = Vec::new();
        for (t, &lab) in labels.iter().enumerate() {
            if lab != r {
                continue;
            }
            *census.entry(owner[&nb.sheets[t].0]).or_insert(0) += 1;
            for top in &nb.sheet_tops[t] {
                verts.extend(top.iter().copied());
                tops.push(top.clone());
            }
        }
        let complex =
            SimplicialComplex::from_top_simplices(verts, tops).expect("region simplices nest");
        out.push(CutRegion { census, complex });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::house3d;
    use crate::homology::homology_z;

    #[test]
    fn blocks_match_their_cell_counts() {
        let grid = house3d::complex();
        for p in PIECES {
            let block = block_complex(&grid, p);
            assert_eq!(block.count(3), 24 * piece(p).len());
            assert!(block.is_pure());
        }
    }

    #[test]
    fn eighteen_copies_glue_back_to_the_sphere() {
        let nb = house3d::sphere();
        let plan = extract_plan(&nb).expect("copies certify");
        assert_eq!(plan.copies.len(), 18);
        assert!(plan.usage().values().all(|&n| n == 2));
        // the membranes press into the rooms, the shell, the collars, and
        // the tubes; one copy on each pressed side is slit there
        let seamed: Vec<(Piece, usize)> = plan
            .copies
            .iter()
            .filter(|c| !c.seam.is_empty())
            .map(|c| (c.piece, c.seam.len()))
            .collect();
        assert_eq!(
            seamed,
            vec![
                (Piece::UpperRoom, 36),
                (Piece::LowerRoom, 36),
                (Piece::Shell, 36),
                (Piece::Shell, 36),
                (Piece::UpperTube, 132),
                (Piece::LowerTube, 132),
                (Piece::UpperCollar, 36),
                (Piece::LowerCollar, 36),
            ]
        );
        rebuild_check(&plan, &nb).expect("rebuild matches");
    }

    #[test]
    fn cutting_along_the_attachment_tori_leaves_three_regions() {
        let nb = house3d::sphere();
        let regions = cut_regions(&nb, &house3d::attachment_tori());
        assert_eq!(regions.len(), 3);
        let mut sizes: Vec<usize> = regions.iter().map(|r| r.complex.count(3) / 24).collect();
        sizes.sort_unstable();
        assert_eq!(sizes.iter().sum::<usize>(), nb.sheets.len());
        for r in &regions {
            let h = homology_z(&r.complex);
            assert_eq!(h.betti[0], 1, "regions are connected");
        }
    }
}
