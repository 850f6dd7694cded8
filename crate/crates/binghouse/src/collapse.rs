//! Elementary collapses: free-face detection, greedy collapsing, a budgeted
//! exhaustive search for collapsibility, and replayable collapse
//! certificates.
//!
//! A simplex is a free face when it has exactly one proper coface. Removing
//! the pair is an elementary collapse; a complex that collapses to a single
//! vertex is collapsible. The search here is one-sided in both directions:
//! `Collapsible` carries a certificate, `NotCollapsible` means the complete
//! choice tree was exhausted, and `Unknown` means the budget ran out first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;

use crate::complex::{ComplexError, SimplicialComplex, VertexId};

/// A verified or verifiable sequence of elementary collapses, recorded as
/// (free face, unique coface) vertex tuples in collapse order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub steps: Vec<(Vec<VertexId>, Vec<VertexId>)>,
}

#[derive(Debug, Clone)]
pub enum Collapsibility {
    Collapsible(CollapseSequence),
    /// Complete search ended without reaching a point.
    NotCollapsible,
    /// Budget exhausted with branches unexplored.
    Unknown,
}

/// Simplex address: (dimension, index within that dimension).
type Addr = (usize, u32);

/// Mutable view of a complex under collapse. Indices refer to the original
/// complex; collapse only ever deletes, so the tables stay valid.
pub struct CollapseState<'a> {
    complex: &'a SimplicialComplex,
    alive: Vec<Vec<bool>>,
    /// Count of alive immediate cofaces per simplex.
    cnt: Vec<Vec<u32>>,
    /// Static immediate coface lists.
    cof: Vec<Vec<Vec<u32>>>,
    /// Static immediate face lists.
    faces: Vec<Vec<Vec<u32>>>,
    alive_total: usize,
    /// Deletion log for undo, most recent last.
    log: Vec<Addr>,
}

impl<'a> CollapseState<'a> {
    pub fn new(c: &'a SimplicialComplex) -> Self {
        let top_dim = c.dim().max(0) as usize;
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top_dim + 1);
        let mut cof: Vec<Vec<Vec<u32>>> = (0..=top_dim).map(|k| vec![Vec::new(); c.count(k)]).collect();
        let mut cnt: Vec<Vec<u32>> = (0..=top_dim).map(|k| vec![0; c.count(k)]).collect();
        for k in 0..=top_dim {
            let mut level = Vec::with_capacity(c.count(k));
            for (i, s) in c.simplices(k).enumerate() {
                let mut fl = Vec::new();
                if k > 0 {
                    for drop in 0..s.len() {
                        let face: Vec<VertexId> = s
                            .iter()
                            .enumerate()
                            .filter(|&(p, _)| p != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        let (_, fi) = self_index(c, &face);
                        fl.push(fi);
                        cof[k - 1][fi as usize].push(i as u32);
                        cnt[k - 1][fi as usize] += 1;
                    }
                }
                level.push(fl);
            }
            faces.push(level);
        }
        let alive: Vec<Vec<bool>> = (0..=top_dim).map(|k| vec![true; c.count(k)]).collect();
        let alive_total = alive.iter().map(|l| l.len()).sum();
        CollapseState { complex: c, alive, cnt, cof, faces, alive_total, log: Vec::new() }
    }

    pub fn alive_total(&self) -> usize {
        self.alive_total
    }

    fn is_alive(&self, (k, i): Addr) -> bool {
        self.alive[k][i as usize]
    }

    /// The unique coface if (k, i) is currently a free face.
    fn free_partner(&self, (k, i): Addr) -> Option<Addr> {
        if !self.alive[k][i as usize] || self.cnt[k][i as usize] != 1 {
            return None;
        }
        let j = *self.cof[k][i as usize]
            .iter()
            .find(|&&j| self.alive[k + 1][j as usize])
            .expect("coface count says one is alive");
        if self.cnt[k + 1][j as usize] == 0 {
            Some((k + 1, j))
        } else {
            None
        }
    }

    /// Remove the pair and report simplices whose freeness may have changed.
    fn delete_pair(&mut self, sigma: Addr, tau: Addr, touched: &mut Vec<Addr>) {
        debug_assert_eq!(self.free_partner(sigma), Some(tau));
        for &(k, i) in &[tau, sigma] {
            self.alive[k][i as usize] = false;
            self.log.push((k, i));
            self.alive_total -= 1;
            if k > 0 {
                for &f in &self.faces[k][i as usize] {
                    let c = &mut self.cnt[k - 1][f as usize];
                    *c -= 1;
                    touched.push((k - 1, f));
                    if *c == 0 {
                        // Newly maximal: its faces may have become free.
                        if k >= 2 {
                            for &e in &self.faces[k - 1][f as usize] {
                                touched.push((k - 2, e));
                            }
                        }
                    }
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (k, i) = self.log.pop().unwrap();
            self.alive[k][i as usize] = true;
            self.alive_total += 1;
            if k > 0 {
                for &f in &self.faces[k][i as usize] {
                    self.cnt[k - 1][f as usize] += 1;
                }
            }
        }
    }

    fn all_free_faces(&self) -> Vec<Addr> {
        let mut out = Vec::new();
        for k in 0..self.alive.len().saturating_sub(1) {
            for i in 0..self.alive[k].len() {
                let a = (k, i as u32);
                if self.free_partner(a).is_some() {
                    out.push(a);
                }
            }
        }
        out
    }

    fn word(&self, (k, i): Addr) -> Vec<VertexId> {
        self.complex.simplex(k, i as usize).to_vec()
    }

    /// Packed bitmask of the alive set, usable as a state key.
    fn alive_key(&self) -> Vec<u64> {
        let total: usize = self.alive.iter().map(|l| l.len()).sum();
        let mut key = vec![0u64; total.div_ceil(64)];
        let mut bit = 0usize;
        for level in &self.alive {
            for &a in level {
                if a {
                    key[bit / 64] |= 1 << (bit % 64);
                }
                bit += 1;
            }
        }
        key
    }

    /// Rebuild the surviving complex from alive maximal simplices.
    fn core(&self) -> SimplicialComplex {
        let mut tops: Vec<Vec<VertexId>> = Vec::new();
        let mut verts: Vec<VertexId> = Vec::new();
        for k in 0..self.alive.len() {
            for i in 0..self.alive[k].len() {
                if !self.alive[k][i as usize] {
                    continue;
                }
                if k == 0 {
                    verts.push(self.complex.simplex(0, i)[0]);
                }
                if self.cnt[k][i as usize] == 0 {
                    tops.push(self.complex.simplex(k, i).to_vec());
                }
            }
        }
        SimplicialComplex::from_top_simplices(verts, tops)
            .expect("collapse core is a valid complex")
    }
}

fn self_index(c: &SimplicialComplex, s: &[VertexId]) -> (usize, u32) {
    let (k, i) = c.index_of(s).expect("face of a simplex is in the closure");
    (k, i as u32)
}

/// All free faces of the complex, as vertex tuples with their cofaces.
pub fn free_faces(c: &SimplicialComplex) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
    let state = CollapseState::new(c);
    state
        .all_free_faces()
        .into_iter()
        .map(|a| {
            let t = state.free_partner(a).unwrap();
            (state.word(a), state.word(t))
        })
        .collect()
}

/// Collapse greedily with seeded random tie-breaking until no free face
/// remains. Returns the core and the performed sequence.
pub fn greedy_collapse(c: &SimplicialComplex, seed: u64) -> (SimplicialComplex, CollapseSequence) {
    let mut state = CollapseState::new(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut heap: BinaryHeap<(u64, usize, u32)> = BinaryHeap::new();
    for (k, i) in state.all_free_faces() {
        heap.push((rng.gen(), k, i));
    }
    let mut seq = CollapseSequence::default();
    let mut touched = Vec::new();
    while let Some((_, k, i)) = heap.pop() {
        let a = (k, i);
        let Some(t) = state.free_partner(a) else { continue };
        seq.steps.push((state.word(a), state.word(t)));
        touched.clear();
        state.delete_pair(a, t, &mut touched);
        for &b in &touched {
            if state.is_alive(b) && state.free_partner(b).is_some() {
                heap.push((rng.gen(), b.0, b.1));
            }
        }
    }
    (state.core(), seq)
}

/// Exhaustive backtracking search for a collapse to a point, cut off after
/// `budget` node expansions.
pub fn is_collapsible(c: &SimplicialComplex, budget: u64, seed: u64) -> Collapsibility {
    let mut state = CollapseState::new(c);
    if state.alive_total() == 1 {
        return Collapsibility::Collapsible(CollapseSequence::default());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = budget;
    let mut seq = Vec::new();
    // Dead-state cache turns the ordering tree into a state DAG; only states
    // whose full subtree was explored are recorded.
    let mut dead = std::collections::HashSet::new();
    match search(&mut state, &mut rng, &mut remaining, &mut seq, &mut dead) {
        SearchResult::Found => {
            // Addresses index the original complex, so the words survive any
            // state the search left behind.
            let steps = seq
                .iter()
                .map(|&(a, t)| (state.word(a), state.word(t)))
                .collect();
            Collapsibility::Collapsible(CollapseSequence { steps })
        }
        SearchResult::DeadEnd => Collapsibility::NotCollapsible,
        SearchResult::BudgetCut => Collapsibility::Unknown,
    }
}

enum SearchResult {
    Found,
    /// Every branch below was explored.
    DeadEnd,
    BudgetCut,
}

fn search(
    state: &mut CollapseState<'_>,
    rng: &mut ChaCha8Rng,
    budget: &mut u64,
    seq: &mut Vec<(Addr, Addr)>,
    dead: &mut std::collections::HashSet<Vec<u64>>,
) -> SearchResult {
    if state.alive_total() == 1 {
        return SearchResult::Found;
    }
    let key = state.alive_key();
    if dead.contains(&key) {
        return SearchResult::DeadEnd;
    }
    let mut frees = state.all_free_faces();
    if frees.is_empty() {
        dead.insert(key);
        return SearchResult::DeadEnd;
    }
    // Shuffle: collapsibility is order-sensitive, a fixed order can stall.
    for i in (1..frees.len()).rev() {
        frees.swap(i, rng.gen_range(0..=i));
    }
    let mut cut = false;
    for a in frees {
        if *budget == 0 {
            return SearchResult::BudgetCut;
        }
        *budget -= 1;
        let Some(t) = state.free_partner(a) else { continue };
        let mark = state.log.len();
        let mut touched = Vec::new();
        state.delete_pair(a, t, &mut touched);
        seq.push((a, t));
        match search(state, rng, budget, seq, dead) {
            SearchResult::Found => return SearchResult::Found,
            SearchResult::DeadEnd => {}
            SearchResult::BudgetCut => cut = true,
        }
        seq.pop();
        state.undo_to(mark);
    }
    if cut {
        SearchResult::BudgetCut
    } else {
        dead.insert(key);
        SearchResult::DeadEnd
    }
}

/// Replay a recorded sequence against the complex, verifying every step is a
/// legal elementary collapse. Returns the resulting core.
pub fn replay(c: &SimplicialComplex, seq: &CollapseSequence) -> Result<SimplicialComplex, ComplexError> {
    let mut state = CollapseState::new(c);
    let mut touched = Vec::new();
    for (n, (sigma, tau)) in seq.steps.iter().enumerate() {
        let sa = c
            .index_of(sigma)
            .map(|(k, i)| (k, i as u32))
            .ok_or_else(|| ComplexError::Map(format!("step {n}: unknown simplex {sigma:?}")))?;
        let ta = c
            .index_of(tau)
            .map(|(k, i)| (k, i as u32))
            .ok_or_else(|| ComplexError::Map(format!("step {n}: unknown simplex {tau:?}")))?;
        match state.free_partner(sa) {
            Some(p) if p == ta => {
                touched.clear();
                state.delete_pair(sa, ta, &mut touched);
            }
            Some(p) => {
                return Err(ComplexError::Map(format!(
                    "step {n}: {sigma:?} is free but its coface is {:?}, not {tau:?}",
                    state.word(p)
                )));
            }
            None => {
                return Err(ComplexError::Map(format!(
                    "step {n}: {sigma:?} is not a free face at this point"
                )));
            }
        }
    }
    Ok(state.core())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology_z, HomologyProfile};

    fn complex(tops: &[&[VertexId]]) -> SimplicialComplex {
        let verts: std::collections::BTreeSet<VertexId> =
            tops.iter().flat_map(|s| s.iter().copied()).collect();
        SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn closed_surfaces_have_no_free_faces() {
        let sphere = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert!(free_faces(&sphere).is_empty());
        assert!(matches!(
            is_collapsible(&sphere, 10_000, 1),
            Collapsibility::NotCollapsible
        ));
    }

    #[test]
    fn solid_simplices_collapse() {
        let tet = complex(&[&[0, 1, 2, 3]]);
        let (core, seq) = greedy_collapse(&tet, 7);
        assert_eq!(core.vertices().len(), 1);
        assert_eq!(core.dim(), 0);
        assert_eq!(seq.steps.len(), (15 - 1) / 2);
        match is_collapsible(&tet, 10_000, 7) {
            Collapsibility::Collapsible(cert) => {
                let replayed = replay(&tet, &cert).unwrap();
                assert_eq!(replayed.vertices().len(), 1);
                assert_eq!(replayed.dim(), 0);
            }
            _ => panic!("solid simplex must collapse"),
        }
    }

    #[test]
    fn annulus_core_is_a_circle() {
        // Triangulated annulus: outer 0..3, inner 4..7.
        let c = complex(&[
            &[0, 1, 4],
            &[1, 4, 5],
            &[1, 2, 5],
            &[2, 5, 6],
            &[2, 3, 6],
            &[3, 6, 7],
            &[0, 3, 7],
            &[0, 4, 7],
        ]);
        let (core, _) = greedy_collapse(&c, 3);
        assert_eq!(core.dim(), 1);
        let h = homology_z(&core);
        assert_eq!(h.betti, vec![1, 1]);
        assert!(matches!(
            is_collapsible(&c, 100_000, 3),
            Collapsibility::NotCollapsible
        ));
    }

    #[test]
    fn greedy_preserves_homology() {
        // 2x2 grid of squares, each split into two triangles.
        let v = |x: u32, y: u32| y * 3 + x;
        let mut tops: Vec<Vec<VertexId>> = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                tops.push(vec![v(x, y), v(x + 1, y), v(x + 1, y + 1)]);
                tops.push(vec![v(x, y), v(x, y + 1), v(x + 1, y + 1)]);
            }
        }
        let refs: Vec<&[VertexId]> = tops.iter().map(|t| t.as_slice()).collect();
        let c = complex(&refs);
        let before = homology_z(&c);
        let (core, seq) = greedy_collapse(&c, 11);
        assert_eq!(core.vertices().len(), 1);
        assert!(!seq.steps.is_empty());
        let after: HomologyProfile = homology_z(&core);
        assert!(before.is_point());
        assert!(after.is_point());
    }

    #[test]
    fn replay_rejects_tampering() {
        let tet = complex(&[&[0, 1, 2, 3]]);
        let (_, seq) = greedy_collapse(&tet, 5);
        // Reversing the order makes an early step illegal.
        let mut bad = seq.clone();
        bad.steps.reverse();
        assert!(replay(&tet, &bad).is_err());
        // A fabricated pair with a non-coface must be rejected.
        let mut forged = seq.clone();
        forged.steps[0] = (vec![0], vec![1, 2]);
        assert!(replay(&tet, &forged).is_err());
        // The genuine sequence verifies.
        assert!(replay(&tet, &seq).is_ok());
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let tet = complex(&[&[0, 1, 2, 3, 4]]);
        assert!(matches!(is_collapsible(&tet, 2, 1), Collapsibility::Unknown));
    }
}
