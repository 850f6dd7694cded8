//! Simplicial mapping cylinders. The cylinder of f: S -> T triangulates
//! S x [0,1] / (v,1) ~ f(v) without new vertices: for a source simplex
//! {v_0 < ... < v_k} and 0 <= i <= k, the cylinder has the cell
//!
//!     D(sigma, i) = f({v_0..v_i}) u {v_i..v_k}
//!
//! with target vertices shifted into their own id range and ordered below
//! the source ones. Faces of these cells agree across shared source faces,
//! so the union is a complex containing the target copy and the source copy.
//!
//! When f is injective on closed vertex stars the cylinder collapses onto
//! the target copy through an explicit sequence written down here and
//! machine-verified by replay; the construction never trusts the formula.

use serde::{Deserialize, Serialize};

use crate::collapse::{replay, CollapseSequence};
use crate::complex::{ComplexError, SimplicialComplex, SimplicialMap, VertexId};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CylinderReport {
    pub cells: usize,
    pub certificate_steps: usize,
    pub certificate_verified: bool,
}

pub struct MappingCylinder {
    pub complex: SimplicialComplex,
    /// Added to every target vertex id inside the cylinder.
    pub offset: VertexId,
    /// Source copy, vertex ids unchanged.
    pub source_inclusion: SimplicialMap,
    /// Target copy, vertex ids shifted by `offset`.
    pub target_inclusion: SimplicialMap,
    /// Retraction cylinder -> target (original target ids).
    pub projection: SimplicialMap,
    /// Collapse of the cylinder onto the target copy, already replayed
    /// against `complex` when `verified` holds.
    pub certificate: CollapseSequence,
    pub verified: bool,
}

impl MappingCylinder {
    pub fn report(&self) -> CylinderReport {
        let d = self.complex.dim().max(0) as usize;
        CylinderReport {
            cells: (0..=d).map(|k| self.complex.count(k)).sum(),
            certificate_steps: self.certificate.steps.len(),
            certificate_verified: self.verified,
        }
    }
}

/// Shift target ids above every source id.
fn cylinder_offset(source: &SimplicialComplex) -> VertexId {
    source.vertices().last().map_or(0, |&v| v + 1)
}

fn dcell(
    f: &SimplicialMap,
    sigma: &[VertexId],
    i: usize,
    offset: VertexId,
) -> Vec<VertexId> {
    let mut cell: Vec<VertexId> = sigma[..=i].iter().map(|&v| f.apply(v) + offset).collect();
    cell.extend_from_slice(&sigma[i..]);
    cell.sort_unstable();
    cell.dedup();
    cell
}

pub fn mapping_cylinder(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> Result<MappingCylinder, ComplexError> {
    f.validate(source, target)?;
    let offset = cylinder_offset(source);
    let last_target = target.vertices().last().copied().unwrap_or(0);
    assert!(
        offset.checked_add(last_target).is_some(),
        "vertex id ranges collide"
    );

    let sd = source.dim().max(0) as usize;
    let mut tops: Vec<Vec<VertexId>> = Vec::new();
    for k in 0..=sd {
        for s in source.simplices(k) {
            for i in 0..=k {
                tops.push(dcell(f, s, i, offset));
            }
        }
    }
    let td = target.dim().max(0) as usize;
    for k in 0..=td {
        for t in target.simplices(k) {
            tops.push(t.iter().map(|&v| v + offset).collect());
        }
    }
    let mut vertices: Vec<VertexId> = source.vertices().to_vec();
    vertices.extend(target.vertices().iter().map(|&v| v + offset));
    let complex = SimplicialComplex::from_top_simplices(vertices, tops)?;

    // Collapse schedule: source simplices from the top dimension down, lex
    // within a dimension; free pair at step i pairs the cell missing
    // f(v_i) with the cell containing it.
    let mut steps: Vec<(Vec<VertexId>, Vec<VertexId>)> = Vec::new();
    for k in (0..=sd).rev() {
        for s in source.simplices(k) {
            for i in 0..=k {
                let tau = dcell(f, s, i, offset);
                let mut sig: Vec<VertexId> = if i == 0 {
                    s.to_vec()
                } else {
                    let mut c: Vec<VertexId> =
                        s[..i].iter().map(|&v| f.apply(v) + offset).collect();
                    c.extend_from_slice(&s[i..]);
                    c
                };
                sig.sort_unstable();
                sig.dedup();
                steps.push((sig, tau));
            }
        }
    }
    let certificate = CollapseSequence { steps };

    let verified = match replay(&complex, &certificate) {
        Ok(core) => {
            let shifted: std::collections::BTreeSet<Vec<VertexId>> = (0..=td)
                .flat_map(|k| {
                    target
                        .simplices(k)
                        .map(|t| t.iter().map(|&v| v + offset).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .collect();
            let core_all: std::collections::BTreeSet<Vec<VertexId>> = (0..=core.dim().max(0)
                as usize)
                .flat_map(|k| core.simplices(k).map(|s| s.to_vec()).collect::<Vec<_>>())
                .collect();
            core_all == shifted
        }
        Err(_) => false,
    };

    let source_inclusion = SimplicialMap::identity(source);
    let target_inclusion = SimplicialMap::new(
        target.vertices().iter().map(|&v| (v, v + offset)).collect(),
    );
    let mut proj = std::collections::BTreeMap::new();
    for &v in source.vertices() {
        proj.insert(v, f.apply(v));
    }
    for &w in target.vertices() {
        proj.insert(w + offset, w);
    }
    let projection = SimplicialMap::new(proj);

    Ok(MappingCylinder {
        complex,
        offset,
        source_inclusion,
        target_inclusion,
        projection,
        certificate,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_z;

    fn complex(tops: &[&[VertexId]]) -> SimplicialComplex {
        let verts: std::collections::BTreeSet<VertexId> =
            tops.iter().flat_map(|s| s.iter().copied()).collect();
        SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn identity_cylinder_is_a_prism() {
        let c = complex(&[&[0, 1, 2]]);
        let f = SimplicialMap::identity(&c);
        let cyl = mapping_cylinder(&f, &c, &c).unwrap();
        assert!(cyl.verified);
        assert_eq!(cyl.complex.count(3), 3);
        assert!(homology_z(&cyl.complex).is_point());
        cyl.source_inclusion.validate(&c, &cyl.complex).unwrap();
        cyl.target_inclusion.validate(&c, &cyl.complex).unwrap();
        cyl.projection.validate(&cyl.complex, &c).unwrap();
    }

    #[test]
    fn cylinder_retracts_to_the_target() {
        // Torus target, identity map: the cylinder must have torus homology.
        let torus = complex(&[
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 6],
            &[4, 5, 7],
            &[5, 6, 1],
            &[6, 7, 2],
            &[7, 1, 3],
            &[1, 3, 4],
            &[2, 4, 5],
            &[3, 5, 6],
            &[4, 6, 7],
            &[5, 7, 1],
            &[6, 1, 2],
            &[7, 2, 3],
        ]);
        let f = SimplicialMap::identity(&torus);
        let cyl = mapping_cylinder(&f, &torus, &torus).unwrap();
        assert!(cyl.verified);
        let h = homology_z(&cyl.complex);
        assert_eq!(h.betti, vec![1, 2, 1, 0]);
        assert!(h.torsion_free());
    }

    #[test]
    fn cover_cylinder_certificate_replays() {
        let src = complex(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let tgt = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
        let f = SimplicialMap::new(
            [(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)]
                .into_iter()
                .collect(),
        );
        let cyl = mapping_cylinder(&f, &src, &tgt).unwrap();
        assert!(cyl.verified);
        let core = replay(&cyl.complex, &cyl.certificate).unwrap();
        assert_eq!(core.count(1), 3);
        let h = homology_z(&cyl.complex);
        assert_eq!(h.betti, vec![1, 1, 0]);
        // The certificate eats both copies' worth of cells.
        let report = cyl.report();
        assert_eq!(report.certificate_steps * 2 + core_cells(&core), report.cells);
    }

    fn core_cells(c: &SimplicialComplex) -> usize {
        (0..=c.dim().max(0) as usize).map(|k| c.count(k)).sum()
    }

    #[test]
    fn tampered_certificates_fail() {
        let c = complex(&[&[0, 1, 2]]);
        let f = SimplicialMap::identity(&c);
        let cyl = mapping_cylinder(&f, &c, &c).unwrap();
        let mut missing = cyl.certificate.clone();
        missing.steps.remove(0);
        assert!(replay(&cyl.complex, &missing).is_err());
        let mut reordered = cyl.certificate.clone();
        reordered.steps.reverse();
        assert!(replay(&cyl.complex, &reordered).is_err());
    }

    #[test]
    fn mild_folds_can_still_verify() {
        // 0 and 2 both map to 0; not star-injective at 1, yet the schedule
        // happens to stay free all the way down. Verification decides.
        let src = complex(&[&[0, 1], &[1, 2]]);
        let tgt = complex(&[&[0, 1]]);
        let f = SimplicialMap::new([(0, 0), (1, 1), (2, 0)].into_iter().collect());
        let cyl = mapping_cylinder(&f, &src, &tgt).unwrap();
        assert!(cyl.verified);
    }

    #[test]
    fn star_overlap_breaks_the_schedule_honestly() {
        // Two edges share their top vertex and fold onto one target edge,
        // so their upper cylinder cells coincide and freeness fails. The
        // construction must report the broken certificate, not panic.
        let src = complex(&[&[0, 2], &[1, 2]]);
        let tgt = complex(&[&[0, 1]]);
        let f = SimplicialMap::new([(0, 0), (1, 0), (2, 1)].into_iter().collect());
        let cyl = mapping_cylinder(&f, &src, &tgt).unwrap();
        assert!(!cyl.verified);
    }
}
