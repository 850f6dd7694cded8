//! Fundamental group machinery: edge-path presentations read off a spanning
//! tree, a Tietze simplification engine, and abelianized invariants.
//!
//! The engine only ever reports one-sided answers. A presentation that
//! reduces to zero generators certifies a trivial group; anything else is
//! inconclusive, never a claim of nontriviality.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, SimplicialComplex, VertexId};
use crate::homology::smith_normal_form_bigint;

/// A finite group presentation. Words are sequences of nonzero symbols:
/// `+k` is generator `k-1`, `-k` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Status {
    /// The presentation reduced to zero generators.
    CertifiedTrivial,
    /// Simplification stalled or ran out of budget. Says nothing either way.
    Inconclusive,
}

/// Outcome of a full fundamental-group run on a complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupAnalysis {
    pub initial_generators: usize,
    pub initial_relators: usize,
    pub status: Pi1Status,
    pub final_generators: usize,
    pub final_relators: usize,
    pub final_total_length: usize,
    /// Rank of the abelianized group.
    pub abelian_rank: usize,
    /// Torsion coefficients of the abelianization, smallest first.
    pub abelian_torsion: Vec<String>,
}

pub const DEFAULT_PI1_BUDGET: u64 = 50_000_000;

/// Edge-path presentation of the fundamental group: one generator per edge
/// outside a breadth-first spanning tree, one relator per triangle. Only the
/// 2-skeleton matters, so higher-dimensional input is fine.
pub fn edge_path_presentation(c: &SimplicialComplex) -> Result<Presentation, ComplexError> {
    let comps = c.connected_components();
    if comps > 1 {
        return Err(ComplexError::Disconnected(comps));
    }
    if c.vertices().is_empty() || c.count(1) == 0 {
        return Ok(Presentation { generators: 0, relators: Vec::new() });
    }

    let verts = c.vertices();
    let vpos: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
    let edges: Vec<(usize, usize)> = c
        .simplices(1)
        .map(|e| (vpos[&e[0]], vpos[&e[1]]))
        .collect();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, ei));
        adj[b].push((a, ei));
    }

    // BFS tree from the first vertex; tree edges carry the empty word.
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; verts.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, ei) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[ei] = true;
                queue.push_back(w);
            }
        }
    }

    let mut gen_of_edge: Vec<Option<i32>> = vec![None; edges.len()];
    let mut generators = 0usize;
    for (ei, t) in in_tree.iter().enumerate() {
        if !t {
            generators += 1;
            gen_of_edge[ei] = Some(generators as i32);
        }
    }

    let edge_index = |a: VertexId, b: VertexId| -> usize {
        let s = if a < b { [a, b] } else { [b, a] };
        c.index_of(&s).expect("triangle edge must be present").1
    };

    let mut relators = Vec::new();
    for tri in c.simplices(2) {
        let (u, v, w) = (tri[0], tri[1], tri[2]);
        let mut word = Vec::new();
        for (sym, ei) in [
            (1, edge_index(u, v)),
            (1, edge_index(v, w)),
            (-1, edge_index(u, w)),
        ] {
            if let Some(g) = gen_of_edge[ei] {
                word.push(sym * g);
            }
        }
        if !word.is_empty() {
            relators.push(word);
        }
    }

    Ok(Presentation { generators, relators })
}

fn invert_word(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&s| -s).collect()
}

/// Cancel adjacent inverse pairs.
fn free_reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &s in w.iter() {
        if out.last() == Some(&-s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    *w = out;
}

/// Free reduction plus trimming inverse pairs off the two ends.
fn cyclic_reduce(w: &mut Vec<i32>) {
    free_reduce(w);
    while w.len() >= 2 && w.first() == w.last().map(|&s| -s).as_ref() {
        w.remove(0);
        w.pop();
        free_reduce(w);
    }
}

/// Canonical representative of a cyclic word up to rotation and inversion.
fn cyclic_canonical(w: &[i32]) -> Vec<i32> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<i32>> = None;
    for cand in [w.to_vec(), invert_word(w)] {
        for r in 0..cand.len() {
            let mut rot: Vec<i32> = cand[r..].to_vec();
            rot.extend_from_slice(&cand[..r]);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

struct Simplifier {
    /// Relator words; empty entries are tombstones.
    relators: Vec<Vec<i32>>,
    alive: Vec<bool>,
    /// Generator -> superset of relator indices mentioning it.
    occ: Vec<Vec<u32>>,
    gen_alive: Vec<bool>,
    budget: u64,
    spent: u64,
}

impl Simplifier {
    fn new(p: &Presentation, budget: u64) -> Self {
        let mut s = Simplifier {
            relators: Vec::new(),
            alive: Vec::new(),
            occ: vec![Vec::new(); p.generators],
            gen_alive: vec![true; p.generators],
            budget,
            spent: 0,
        };
        for r in &p.relators {
            s.push_relator(r.clone());
        }
        s
    }

    fn push_relator(&mut self, mut w: Vec<i32>) {
        cyclic_reduce(&mut w);
        if w.is_empty() {
            return;
        }
        let idx = self.relators.len() as u32;
        for &sym in &w {
            self.occ[sym.unsigned_abs() as usize - 1].push(idx);
        }
        self.spent += w.len() as u64;
        self.relators.push(w);
        self.alive.push(true);
    }

    fn kill_relator(&mut self, i: usize) {
        self.alive[i] = false;
        self.relators[i].clear();
    }

    /// Exact relator indices containing generator g, refreshing the index.
    fn occurrences(&mut self, g: usize) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.occ[g]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&i| {
            self.alive[i as usize]
                && self.relators[i as usize].iter().any(|&s| s.unsigned_abs() as usize == g + 1)
        });
        self.occ[g] = list.clone();
        list
    }

    /// Replace generator g by the word `sub` everywhere. `sub` must not
    /// mention g.
    fn substitute(&mut self, g: usize, sub: &[i32]) {
        debug_assert!(sub.iter().all(|&s| s.unsigned_abs() as usize != g + 1));
        let targets = self.occurrences(g);
        let inv = invert_word(sub);
        for i in targets {
            let old = std::mem::take(&mut self.relators[i as usize]);
            let mut new = Vec::with_capacity(old.len() + sub.len());
            for &s in &old {
                if s.unsigned_abs() as usize == g + 1 {
                    new.extend_from_slice(if s > 0 { sub } else { &inv });
                } else {
                    new.push(s);
                }
            }
            cyclic_reduce(&mut new);
            self.spent += new.len() as u64 + 1;
            for &sym in &new {
                self.occ[sym.unsigned_abs() as usize - 1].push(i);
            }
            if new.is_empty() {
                self.kill_relator(i as usize);
            } else {
                self.relators[i as usize] = new;
            }
        }
        self.gen_alive[g] = false;
        self.occ[g].clear();
    }

    fn out_of_budget(&self) -> bool {
        self.spent > self.budget
    }

    /// One pass of cheap moves: drop duplicate relators, kill generators
    /// forced trivial by length-1 relators, merge pairs tied by length-2
    /// relators. Returns true if anything changed.
    fn cheap_pass(&mut self) -> bool {
        let mut changed = false;
        let mut seen: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
        for i in 0..self.relators.len() {
            if !self.alive[i] {
                continue;
            }
            let canon = cyclic_canonical(&self.relators[i]);
            self.spent += canon.len() as u64;
            match seen.get(&canon) {
                Some(_) => {
                    self.kill_relator(i);
                    changed = true;
                }
                None => {
                    seen.insert(canon, i);
                }
            }
        }
        for i in 0..self.relators.len() {
            if !self.alive[i] || self.out_of_budget() {
                continue;
            }
            match self.relators[i].len() {
                1 => {
                    let g = self.relators[i][0].unsigned_abs() as usize - 1;
                    self.kill_relator(i);
                    self.substitute(g, &[]);
                    changed = true;
                }
                2 => {
                    let (a, b) = (self.relators[i][0], self.relators[i][1]);
                    let (ga, gb) = (a.unsigned_abs() as usize - 1, b.unsigned_abs() as usize - 1);
                    if ga == gb {
                        continue; // g^2 or similar; not a cheap kill
                    }
                    // a * b = 1, so gb = word in ga.
                    let sub = if b > 0 { vec![-a] } else { vec![a] };
                    self.kill_relator(i);
                    self.substitute(gb, &sub);
                    changed = true;
                }
                _ => {}
            }
        }
        changed
    }

    /// Eliminate a generator that occurs exactly once in some relator,
    /// preferring short relators and few external occurrences. Growth per
    /// step is capped. Returns true if an elimination happened.
    fn eliminate_pass(&mut self) -> bool {
        let mut best: Option<(usize, usize, usize, usize)> = None; // (cost, rlen, ri, g)
        for g in 0..self.gen_alive.len() {
            if !self.gen_alive[g] {
                continue;
            }
            let occs = self.occurrences(g);
            for &ri in &occs {
                let r = &self.relators[ri as usize];
                let inside = r.iter().filter(|&&s| s.unsigned_abs() as usize == g + 1).count();
                if inside != 1 {
                    continue;
                }
                let external: usize = occs
                    .iter()
                    .filter(|&&o| o != ri)
                    .map(|&o| {
                        self.relators[o as usize]
                            .iter()
                            .filter(|&&s| s.unsigned_abs() as usize == g + 1)
                            .count()
                    })
                    .sum();
                let cost = external * r.len().saturating_sub(1);
                if best.map_or(true, |(bc, bl, _, _)| (cost, r.len()) < (bc, bl)) {
                    best = Some((cost, r.len(), ri as usize, g));
                }
            }
            self.spent += occs.len() as u64 + 1;
            if self.out_of_budget() {
                return false;
            }
        }
        let Some((cost, _, ri, g)) = best else { return false };
        if cost > 65_536 {
            return false;
        }
        // Rotate the relator so the single +-g symbol leads, then g equals
        // the inverse of the remainder.
        let r = self.relators[ri].clone();
        let pos = r.iter().position(|&s| s.unsigned_abs() as usize == g + 1).unwrap();
        let mut rot: Vec<i32> = r[pos..].to_vec();
        rot.extend_from_slice(&r[..pos]);
        let head = rot[0];
        let rest = &rot[1..];
        let sub = if head > 0 {
            invert_word(rest)
        } else {
            rest.to_vec()
        };
        self.kill_relator(ri);
        self.substitute(g, &sub);
        true
    }

    /// Shorten long relators against shorter ones: if more than half of a
    /// short relator (or its inverse) appears as a cyclic subword of a longer
    /// one, replace the overlap with the short relator's complement.
    fn overlap_pass(&mut self) -> bool {
        let mut live: Vec<usize> = (0..self.relators.len()).filter(|&i| self.alive[i]).collect();
        live.sort_by_key(|&i| self.relators[i].len());
        let mut changed = false;
        for si in 0..live.len() {
            let s = live[si];
            if !self.alive[s] {
                continue;
            }
            let short = self.relators[s].clone();
            let need = short.len() / 2 + 1;
            for &l in &live {
                if l == s || !self.alive[l] || self.relators[l].len() < short.len() {
                    continue;
                }
                if self.out_of_budget() {
                    return changed;
                }
                if let Some(new) = overlap_rewrite(&short, &self.relators[l], need) {
                    self.spent += new.len() as u64 + self.relators[l].len() as u64;
                    let old = std::mem::take(&mut self.relators[l]);
                    let _ = old;
                    let mut w = new;
                    cyclic_reduce(&mut w);
                    if w.is_empty() {
                        self.kill_relator(l);
                    } else {
                        for &sym in &w {
                            self.occ[sym.unsigned_abs() as usize - 1].push(l as u32);
                        }
                        self.relators[l] = w;
                    }
                    changed = true;
                }
            }
        }
        changed
    }

    fn finish(self) -> (Presentation, bool) {
        let mut gen_map = vec![0i32; self.gen_alive.len()];
        let mut next = 0i32;
        for (g, &alive) in self.gen_alive.iter().enumerate() {
            if alive {
                next += 1;
                gen_map[g] = next;
            }
        }
        let relators: Vec<Vec<i32>> = self
            .relators
            .into_iter()
            .zip(self.alive)
            .filter(|(w, a)| *a && !w.is_empty())
            .map(|(w, _)| {
                w.into_iter()
                    .map(|s| gen_map[s.unsigned_abs() as usize - 1] * s.signum())
                    .collect()
            })
            .collect();
        let exhausted = self.spent > self.budget;
        (Presentation { generators: next as usize, relators }, exhausted)
    }
}

/// Replace a long cyclic subword of `long` that matches `short` (or its
/// inverse) in at least `need` symbols by the complementary part of `short`.
/// Returns the strictly shorter replacement, or None.
fn overlap_rewrite(short: &[i32], long: &[i32], need: usize) -> Option<Vec<i32>> {
    for cand in [short.to_vec(), invert_word(short)] {
        let doubled: Vec<i32> = cand.iter().chain(cand.iter()).copied().collect();
        for rot in 0..cand.len() {
            let pat = &doubled[rot..rot + cand.len()];
            // Longest prefix of pat occurring contiguously in long (cyclically).
            let ldoubled: Vec<i32> = long.iter().chain(long.iter()).copied().collect();
            for start in 0..long.len() {
                let mut k = 0;
                while k < cand.len() && k < long.len() && ldoubled[start + k] == pat[k] {
                    k += 1;
                }
                if k >= need && k > cand.len() - k {
                    // long = A . pat[..k] . B  (cyclically, starting at `start`)
                    // pat[..k] = inverse(pat[k..]) modulo the relator `cand`,
                    // so splice in that inverse, which is shorter.
                    let tail_inv = invert_word(&pat[k..]);
                    let mut new = tail_inv;
                    new.extend_from_slice(&ldoubled[start + k..start + long.len()]);
                    if new.len() < long.len() {
                        return Some(new);
                    }
                }
            }
        }
    }
    None
}

/// Run Tietze simplification under a budget. Returns the reduced
/// presentation and whether it certifies the trivial group.
pub fn simplify(p: &Presentation, budget: u64) -> (Presentation, Pi1Status) {
    let mut s = Simplifier::new(p, budget);
    loop {
        if s.out_of_budget() {
            break;
        }
        if s.cheap_pass() {
            continue;
        }
        if s.eliminate_pass() {
            continue;
        }
        if s.overlap_pass() {
            continue;
        }
        break;
    }
    let (reduced, _) = s.finish();
    let status = if reduced.generators == 0 {
        Pi1Status::CertifiedTrivial
    } else {
        Pi1Status::Inconclusive
    };
    (reduced, status)
}

/// Abelianization invariants (rank, torsion coefficients) from the exponent
/// sum matrix of the relators.
pub fn abelianization(p: &Presentation) -> (usize, Vec<BigInt>) {
    if p.generators == 0 {
        return (0, Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = vec![];
    for r in &p.relators {
        let mut row = vec![BigInt::from(0); p.generators];
        for &s in r {
            let g = s.unsigned_abs() as usize - 1;
            row[g] += s.signum();
        }
        m.push(row);
    }
    if m.is_empty() {
        return (p.generators, Vec::new());
    }
    let snf = smith_normal_form_bigint(m, false);
    let nontrivial: Vec<BigInt> = snf.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (p.generators - snf.rank, nontrivial)
}

/// Full fundamental-group run: present, simplify, and report together with
/// abelianized invariants (computed on the reduced presentation, which
/// defines the same group).
pub fn fundamental_group(c: &SimplicialComplex, budget: u64) -> Result<GroupAnalysis, ComplexError> {
    let p = edge_path_presentation(c)?;
    Ok(analyze_presentation(&p, budget))
}

/// Simplify an arbitrary presentation and package the outcome.
pub fn analyze_presentation(p: &Presentation, budget: u64) -> GroupAnalysis {
    let (reduced, status) = simplify(p, budget);
    let (rank, torsion) = abelianization(&reduced);
    GroupAnalysis {
        initial_generators: p.generators,
        initial_relators: p.relators.len(),
        status,
        final_generators: reduced.generators,
        final_relators: reduced.relators.len(),
        final_total_length: reduced.relators.iter().map(|r| r.len()).sum(),
        abelian_rank: rank,
        abelian_torsion: torsion.iter().map(|t| t.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology_z, Coefficients};

    fn complex(tops: &[&[VertexId]]) -> SimplicialComplex {
        let verts: std::collections::BTreeSet<VertexId> =
            tops.iter().flat_map(|s| s.iter().copied()).collect();
        SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        complex(&[
            &[1, 2, 3],
            &[2, 3, 4],
            &[3, 4, 5],
            &[4, 5, 1],
            &[5, 1, 2],
            &[1, 3, 6],
            &[2, 4, 6],
            &[3, 5, 6],
            &[4, 1, 6],
            &[5, 2, 6],
        ])
    }

    #[test]
    fn sphere_certified_trivial() {
        let c = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let a = fundamental_group(&c, 1_000_000).unwrap();
        assert_eq!(a.status, Pi1Status::CertifiedTrivial);
        assert_eq!(a.final_generators, 0);
        assert_eq!(a.abelian_rank, 0);
        assert!(a.abelian_torsion.is_empty());
    }

    #[test]
    fn single_simplex_and_graph_cases() {
        let pt = complex(&[&[7]]);
        let a = fundamental_group(&pt, 1000).unwrap();
        assert_eq!(a.status, Pi1Status::CertifiedTrivial);

        // Theta graph: free of rank 2, so inconclusive with abelian rank 2.
        let theta = complex(&[&[0, 1], &[0, 2], &[1, 2], &[0, 3], &[1, 3]]);
        let a = fundamental_group(&theta, 1000).unwrap();
        assert_eq!(a.status, Pi1Status::Inconclusive);
        assert_eq!(a.final_generators, 2);
        assert_eq!(a.abelian_rank, 2);

        // A tree certifies.
        let tree = complex(&[&[0, 1], &[1, 2]]);
        let a = fundamental_group(&tree, 1000).unwrap();
        assert_eq!(a.status, Pi1Status::CertifiedTrivial);
    }

    #[test]
    fn disconnected_is_an_error() {
        let c = complex(&[&[0, 1, 2], &[5, 6, 7]]);
        assert!(matches!(
            fundamental_group(&c, 1000),
            Err(ComplexError::Disconnected(2))
        ));
    }

    #[test]
    fn torus_inconclusive_with_rank_two() {
        // Seven-vertex triangulated torus with K7 as 1-skeleton.
        let c = complex(&[
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
        assert!(c.is_closed_surface());
        let a = fundamental_group(&c, 5_000_000).unwrap();
        assert_eq!(a.status, Pi1Status::Inconclusive);
        assert_eq!(a.abelian_rank, 2);
        assert!(a.abelian_torsion.is_empty());
        // Cross-check against first homology.
        let h = homology_z(&c);
        assert_eq!(h.betti[1], a.abelian_rank);
    }

    #[test]
    fn projective_plane_torsion() {
        let a = fundamental_group(&rp2(), 5_000_000).unwrap();
        assert_eq!(a.status, Pi1Status::Inconclusive);
        assert_eq!(a.abelian_rank, 0);
        assert_eq!(a.abelian_torsion, vec!["2".to_string()]);
        let h = homology_z(&rp2());
        assert_eq!(h.coefficients, Coefficients::Z);
        assert_eq!(h.torsion[1], vec!["2".to_string()]);
    }

    #[test]
    fn knot_group_presentation_stays_inconclusive() {
        // Trefoil-like relator; the group is nontrivial with infinite
        // abelianization, so certification must not fire.
        let p = Presentation {
            generators: 2,
            relators: vec![vec![1, 2, 1, -2, -1, -2]],
        };
        let a = analyze_presentation(&p, 1_000_000);
        assert_eq!(a.status, Pi1Status::Inconclusive);
        assert_eq!(a.abelian_rank, 1);
        assert!(a.abelian_torsion.is_empty());
    }

    #[test]
    fn presentation_word_hygiene() {
        let mut w = vec![1, 2, -2, -1, 3];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
        let mut w = vec![1, 2, 3, -1];
        cyclic_reduce(&mut w);
        assert_eq!(w, vec![2, 3]);
        assert_eq!(cyclic_canonical(&[2, 3]), cyclic_canonical(&[3, 2]));
        assert_eq!(cyclic_canonical(&[1, 2]), cyclic_canonical(&[-2, -1]));
    }

    #[test]
    fn cheap_moves_collapse_redundant_presentations() {
        // b = a and a = 1 forces everything trivial.
        let p = Presentation {
            generators: 2,
            relators: vec![vec![1, -2], vec![1]],
        };
        let (reduced, status) = simplify(&p, 10_000);
        assert_eq!(status, Pi1Status::CertifiedTrivial);
        assert_eq!(reduced.generators, 0);

        // Duplicate relators up to rotation and inversion are dropped.
        let p = Presentation {
            generators: 2,
            relators: vec![vec![1, 2], vec![2, 1], vec![-1, -2]],
        };
        let (reduced, _) = simplify(&p, 10_000);
        assert!(reduced.relators.len() <= 1);
    }
}
