//! Integral and mod-2 homology of simplicial complexes.
//!
//! Boundary matrices are eliminated in two stages. A sparse stage pivots only
//! on entries equal to ±1, using unimodular row and column operations, so the
//! Smith normal form of the input equals an identity block plus the Smith
//! normal form of whatever survives. The survivors (usually nothing, or a
//! matrix a few dozen entries wide) go through a dense big-integer Smith
//! normal form that also yields torsion coefficients. Mod-2 ranks use plain
//! column reduction over GF(2).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, SimplicialComplex, SimplicialMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Z,
    Z2,
}

/// Betti numbers by degree, plus torsion coefficients (decimal strings, one
/// list per degree). Over Z2 the torsion lists are empty by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
}

impl HomologyProfile {
    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Homology of a point: betti (1, 0, ..., 0) and no torsion.
    pub fn is_point(&self) -> bool {
        self.betti.first() == Some(&1)
            && self.betti[1..].iter().all(|&b| b == 0)
            && self.torsion_free()
    }

    pub fn euler_characteristic(&self) -> i64 {
        // Valid over a field; over Z it agrees because torsion cancels.
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Column-major sparse integer matrix. Entries within a column are sorted by
/// row and carry no zeros.
#[derive(Debug, Clone)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

/// The boundary operator from k-chains to (k-1)-chains. Signs follow the
/// ascending vertex order stored in the complex.
pub fn boundary_matrix(c: &SimplicialComplex, k: usize) -> SparseIntMatrix {
    assert!(k >= 1, "boundary_matrix wants k >= 1");
    let cols = c.count(k);
    let rows = c.count(k - 1);
    let mut columns = Vec::with_capacity(cols);
    let mut face = Vec::with_capacity(k);
    for s in c.simplices(k) {
        let mut col = Vec::with_capacity(k + 1);
        for drop in 0..=k {
            face.clear();
            face.extend(s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v));
            let (_, idx) = c
                .index_of(&face)
                .expect("face of a stored simplex must be stored");
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            col.push((idx as u32, sign));
        }
        col.sort_unstable_by_key(|&(r, _)| r);
        columns.push(col);
    }
    SparseIntMatrix { rows, cols, columns }
}

// ---------------------------------------------------------------------------
// GF(2)

/// Symmetric difference of two ascending index lists.
fn xor_merge(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank over GF(2) by column reduction: each column is reduced against the
/// stored column with the same lowest (largest-index) entry until it either
/// dies or claims a pivot row.
pub fn gf2_rank(rows: usize, columns: Vec<Vec<u32>>) -> usize {
    let mut pivot_col: Vec<Option<Vec<u32>>> = vec![None; rows];
    let mut rank = 0;
    for mut col in columns {
        loop {
            let Some(&low) = col.last() else { break };
            match &pivot_col[low as usize] {
                Some(other) => col = xor_merge(&col, other),
                None => {
                    pivot_col[low as usize] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

pub fn rank_z2(m: &SparseIntMatrix) -> usize {
    let columns = m
        .columns
        .iter()
        .map(|col| col.iter().filter(|&&(_, v)| v % 2 != 0).map(|&(r, _)| r).collect())
        .collect();
    gf2_rank(m.rows, columns)
}

// ---------------------------------------------------------------------------
// Integer rank and torsion

/// Sparse elimination state. Rows are sorted by column id; `col_rows` keeps a
/// superset of the rows touching each column and is cleaned lazily.
struct SparseElim {
    rows: Vec<Vec<(u32, i64)>>,
    col_rows: Vec<Vec<u32>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    queue: BTreeSet<(u32, u32)>,
    stalled: Vec<u32>,
    rank: usize,
}

fn row_value(row: &[(u32, i64)], col: u32) -> Option<i64> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| row[i].1)
}

/// target - m * pivot, skipping `drop` (the pivot column, which cancels by
/// construction). None signals i64 overflow; the caller falls back to the
/// dense path with the matrix still in a valid intermediate state.
fn row_sub(target: &[(u32, i64)], pivot: &[(u32, i64)], m: i64, drop: u32) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let tc = target.get(i).map(|&(c, _)| c);
        let pc = pivot.get(j).map(|&(c, _)| c);
        let take_target = match (tc, pc) {
            (Some(a), Some(b)) => {
                if a == b {
                    if a != drop {
                        let v = target[i].1.checked_sub(m.checked_mul(pivot[j].1)?)?;
                        if v != 0 {
                            out.push((a, v));
                        }
                    }
                    i += 1;
                    j += 1;
                    continue;
                }
                a < b
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => unreachable!(),
        };
        if take_target {
            debug_assert_ne!(target[i].0, drop);
            out.push(target[i]);
            i += 1;
        } else {
            let b = pivot[j].0;
            if b != drop {
                let v = m.checked_mul(pivot[j].1)?.checked_neg()?;
                out.push((b, v));
            }
            j += 1;
        }
    }
    Some(out)
}

impl SparseElim {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); m.rows];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
        for (j, col) in m.columns.iter().enumerate() {
            for &(r, v) in col {
                debug_assert_ne!(v, 0);
                rows[r as usize].push((j as u32, v));
                col_rows[j].push(r);
            }
        }
        let mut queue = BTreeSet::new();
        for (j, cr) in col_rows.iter().enumerate() {
            if !cr.is_empty() {
                queue.insert((cr.len() as u32, j as u32));
            }
        }
        SparseElim {
            rows,
            col_rows,
            row_alive: vec![true; m.rows],
            col_alive: vec![true; m.cols],
            queue,
            stalled: Vec::new(),
            rank: 0,
        }
    }

    fn clean_col(&mut self, c: u32) -> u32 {
        let rows = &self.rows;
        let alive = &self.row_alive;
        let list = &mut self.col_rows[c as usize];
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| alive[r as usize] && row_value(&rows[r as usize], c).is_some());
        list.len() as u32
    }

    /// Returns false when i64 arithmetic overflowed and the caller should
    /// hand the live submatrix to the dense path.
    fn eliminate(&mut self, r: u32, c: u32, v: i64) -> bool {
        debug_assert!(v == 1 || v == -1);
        let pivot_row = std::mem::take(&mut self.rows[r as usize]);
        let touched = self.col_rows[c as usize].clone();
        for t in touched {
            if t == r || !self.row_alive[t as usize] {
                continue;
            }
            let Some(a) = row_value(&self.rows[t as usize], c) else { continue };
            let m = a * v;
            match row_sub(&self.rows[t as usize], &pivot_row, m, c) {
                Some(new_row) => {
                    for &(cc, _) in &pivot_row {
                        if cc != c {
                            self.col_rows[cc as usize].push(t);
                        }
                    }
                    self.rows[t as usize] = new_row;
                }
                None => {
                    self.rows[r as usize] = pivot_row;
                    return false;
                }
            }
        }
        self.row_alive[r as usize] = false;
        self.col_alive[c as usize] = false;
        for &(cc, _) in &pivot_row {
            if cc != c && self.col_alive[cc as usize] {
                let key = self.col_rows[cc as usize].len() as u32;
                self.queue.insert((key, cc));
            }
        }
        self.rank += 1;
        true
    }

    fn run(&mut self) {
        while let Some(&(nnz, c)) = self.queue.iter().next() {
            self.queue.remove(&(nnz, c));
            if !self.col_alive[c as usize] {
                continue;
            }
            let n = self.clean_col(c);
            if n == 0 {
                self.col_alive[c as usize] = false;
                continue;
            }
            if n != nnz {
                self.queue.insert((n, c));
                continue;
            }
            let mut best: Option<(usize, u32, i64)> = None;
            for &r in &self.col_rows[c as usize] {
                let row = &self.rows[r as usize];
                if let Some(v) = row_value(row, c) {
                    if v == 1 || v == -1 {
                        let key = (row.len(), r, v);
                        if best.map_or(true, |(l, br, _)| (l, br) > (key.0, key.1)) {
                            best = Some(key);
                        }
                    }
                }
            }
            match best {
                Some((_, r, v)) => {
                    if !self.eliminate(r, c, v) {
                        return; // overflow; dense path takes over
                    }
                }
                None => self.stalled.push(c),
            }
        }
    }

    /// Live submatrix, densified for the Smith normal form core.
    fn residue(&self) -> Vec<Vec<i64>> {
        let live_cols: Vec<u32> = (0..self.col_alive.len() as u32)
            .filter(|&c| self.col_alive[c as usize])
            .collect();
        if live_cols.is_empty() {
            return Vec::new();
        }
        let col_pos: std::collections::HashMap<u32, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_alive[r] || row.is_empty() {
                continue;
            }
            let mut dense = vec![0i64; live_cols.len()];
            let mut any = false;
            for &(c, v) in row {
                if let Some(&i) = col_pos.get(&c) {
                    dense[i] = v;
                    any = true;
                }
            }
            if any {
                out.push(dense);
            }
        }
        out
    }
}

/// Rank over Z together with the torsion coefficients (diagonal entries > 1
/// of the Smith normal form), smallest first.
pub fn rank_and_torsion(m: &SparseIntMatrix) -> (usize, Vec<BigInt>) {
    let mut elim = SparseElim::new(m);
    elim.run();
    let residue = elim.residue();
    if residue.is_empty() {
        return (elim.rank, Vec::new());
    }
    let dense: Vec<Vec<BigInt>> = residue
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let snf = smith_normal_form_bigint(dense, false);
    let torsion = snf.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    (elim.rank + snf.rank, torsion)
}

pub fn rank_z(m: &SparseIntMatrix) -> usize {
    rank_and_torsion(m).0
}

// ---------------------------------------------------------------------------
// Dense Smith normal form

#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    /// Nonzero diagonal, each dividing the next, all positive.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// Row transform, present on request. u * a * v == diag(diag).
    pub u: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form over Z for an i64 matrix. With `with_transforms`, the
/// returned u (m x m) and v (n x n) are unimodular and satisfy u*a*v = d.
pub fn smith_normal_form(a: &[Vec<i64>], with_transforms: bool) -> SnfDecomposition {
    let big: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    smith_normal_form_bigint(big, with_transforms)
}

pub fn smith_normal_form_bigint(mut a: Vec<Vec<BigInt>>, with_transforms: bool) -> SnfDecomposition {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut u = with_transforms.then(|| identity(m));
    let mut v = with_transforms.then(|| identity(n));
    let mut t = 0;
    while t < m && t < n {
        let Some((pr, pc)) = pivot_position(&a, t) else { break };
        swap_rows(&mut a, u.as_mut(), t, pr);
        swap_cols(&mut a, v.as_mut(), t, pc);
        // Each round clears column t, then row t. Clearing the row can refill
        // the column, but only after replacing the pivot by a proper divisor,
        // so the pivot's divisor chain bounds the number of rounds.
        loop {
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    row_gcd_step(&mut a, u.as_mut(), t, i);
                }
            }
            let mut refilled = false;
            for j in t + 1..n {
                if !a[t][j].is_zero() && col_gcd_step(&mut a, v.as_mut(), t, j) {
                    refilled = true;
                }
            }
            if !refilled {
                break;
            }
        }
        // Divisibility: fold an offending row into the pivot row, then the
        // next round shrinks the pivot to a divisor of both.
        let p = a[t][t].clone();
        let offender = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
        if let Some((i, _)) = offender {
            let neg = -BigInt::one();
            row_op(&mut a, u.as_mut(), t, i, &neg); // row t += row i
            continue;
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, u.as_mut(), t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    SnfDecomposition { rank: t, diag, u, v }
}

/// Bezout coefficients normalized so the gcd is positive.
fn bezout(p: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let eg = p.extended_gcd(b);
    if eg.gcd.is_negative() {
        (-eg.gcd, -eg.x, -eg.y)
    } else {
        (eg.gcd, eg.x, eg.y)
    }
}

/// Zero a[i][t] against the pivot. Exact multiples use a single row
/// subtraction; otherwise a unimodular mix of rows t and i leaves
/// gcd(a[t][t], a[i][t]) in the pivot slot.
fn row_gcd_step(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, t: usize, i: usize) {
    let p = a[t][t].clone();
    let b = a[i][t].clone();
    if (&b % &p).is_zero() {
        let q = &b / &p;
        row_op(a, u, i, t, &q);
        return;
    }
    let (g, x, y) = bezout(&p, &b);
    let z = -(&b / &g);
    let w = &p / &g;
    two_row_mix(a, t, i, &x, &y, &z, &w);
    if let Some(u) = u {
        two_row_mix(u, t, i, &x, &y, &z, &w);
    }
}

/// Zero a[t][j] against the pivot. Returns true when the mix may have
/// refilled column t below the pivot.
fn col_gcd_step(a: &mut [Vec<BigInt>], v: Option<&mut Vec<Vec<BigInt>>>, t: usize, j: usize) -> bool {
    let p = a[t][t].clone();
    let b = a[t][j].clone();
    if (&b % &p).is_zero() {
        let q = &b / &p;
        col_op(a, v, j, t, &q);
        return false;
    }
    let (g, x, y) = bezout(&p, &b);
    let z = -(&b / &g);
    let w = &p / &g;
    two_col_mix(a, t, j, &x, &y, &z, &w);
    if let Some(v) = v {
        two_col_mix(v, t, j, &x, &y, &z, &w);
    }
    true
}

/// rows (t, i) <- (x*t + y*i, z*t + w*i); the caller picks a determinant-one block.
fn two_row_mix(a: &mut [Vec<BigInt>], t: usize, i: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
    for j in 0..a[t].len() {
        let rt = a[t][j].clone();
        let ri = a[i][j].clone();
        a[t][j] = x * &rt + y * &ri;
        a[i][j] = z * &rt + w * &ri;
    }
}

/// cols (t, j) <- (x*t + y*j, z*t + w*j), applied to every row.
fn two_col_mix(a: &mut [Vec<BigInt>], t: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
    for row in a.iter_mut() {
        let ct = row[t].clone();
        let cj = row[j].clone();
        row[t] = x * &ct + y * &cj;
        row[j] = z * &ct + w * &cj;
    }
}

fn pivot_position(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, val) in row.iter().enumerate().skip(t) {
            if val.is_zero() {
                continue;
            }
            let mag = val.abs();
            match &best {
                Some((m, _, _)) if *m <= mag => {}
                _ => best = Some((mag, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_rows(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        if let Some(u) = u {
            u.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: Option<&mut Vec<Vec<BigInt>>>, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

/// row i -= q * row t (on v: col j -= q * col t, matching right-multiplication).
fn row_op(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, i: usize, t: usize, q: &BigInt) {
    let (ri, rt) = if i < t {
        let (lo, hi) = a.split_at_mut(t);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&mut hi[0], &lo[t])
    };
    for (x, y) in ri.iter_mut().zip(rt.iter()) {
        *x -= q * y;
    }
    if let Some(u) = u {
        let (ri, rt) = if i < t {
            let (lo, hi) = u.split_at_mut(t);
            (&mut lo[i], &hi[0])
        } else {
            let (lo, hi) = u.split_at_mut(i);
            (&mut hi[0], &lo[t])
        };
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            *x -= q * y;
        }
    }
}

fn col_op(a: &mut [Vec<BigInt>], v: Option<&mut Vec<Vec<BigInt>>>, j: usize, t: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
    if let Some(v) = v {
        for row in v.iter_mut() {
            let delta = q * &row[t];
            row[j] -= delta;
        }
    }
}

fn negate_row(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, t: usize) {
    for x in a[t].iter_mut() {
        *x = -&*x;
    }
    if let Some(u) = u {
        for x in u[t].iter_mut() {
            *x = -&*x;
        }
    }
}

// ---------------------------------------------------------------------------
// Profiles

pub fn homology(c: &SimplicialComplex, coeffs: Coefficients) -> HomologyProfile {
    match coeffs {
        Coefficients::Z => homology_z(c),
        Coefficients::Z2 => homology_z2(c),
    }
}

pub fn homology_z(c: &SimplicialComplex) -> HomologyProfile {
    let d = c.dim().max(0) as usize;
    // ranks[k] and torsion of boundary_k for k in 1..=d
    let mut ranks = vec![0usize; d + 2];
    let mut torsions: Vec<Vec<BigInt>> = vec![Vec::new(); d + 2];
    for k in 1..=d {
        if c.count(k) == 0 {
            continue;
        }
        let (r, t) = rank_and_torsion(&boundary_matrix(c, k));
        ranks[k] = r;
        torsions[k] = t;
    }
    let mut betti = Vec::with_capacity(d + 1);
    let mut torsion = Vec::with_capacity(d + 1);
    for k in 0..=d {
        betti.push(c.count(k) - ranks[k] - ranks[k + 1]);
        torsion.push(torsions[k + 1].iter().map(|t| t.to_string()).collect());
    }
    HomologyProfile { coefficients: Coefficients::Z, betti, torsion }
}

pub fn homology_z2(c: &SimplicialComplex) -> HomologyProfile {
    let d = c.dim().max(0) as usize;
    let mut ranks = vec![0usize; d + 2];
    for k in 1..=d {
        if c.count(k) > 0 {
            ranks[k] = rank_z2(&boundary_matrix(c, k));
        }
    }
    let betti = (0..=d).map(|k| c.count(k) - ranks[k] - ranks[k + 1]).collect();
    HomologyProfile {
        coefficients: Coefficients::Z2,
        betti,
        torsion: vec![Vec::new(); d + 1],
    }
}

// ---------------------------------------------------------------------------
// Chains

/// Support of the mod-2 boundary of a k-chain given by weights on k-simplices.
pub fn z2_chain_boundary(c: &SimplicialComplex, k: usize, weights: &[u64]) -> Vec<usize> {
    assert_eq!(weights.len(), c.count(k), "one weight per k-simplex");
    assert!(k >= 1);
    let mut toggles = vec![false; c.count(k - 1)];
    let mut face = Vec::with_capacity(k);
    for (s, &w) in c.simplices(k).zip(weights) {
        if w % 2 == 0 {
            continue;
        }
        for drop in 0..=k {
            face.clear();
            face.extend(s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v));
            let (_, idx) = c.index_of(&face).expect("stored face");
            toggles[idx] = !toggles[idx];
        }
    }
    toggles
        .iter()
        .enumerate()
        .filter_map(|(i, &t)| t.then_some(i))
        .collect()
}

pub fn is_z2_cycle(c: &SimplicialComplex, k: usize, weights: &[u64]) -> bool {
    z2_chain_boundary(c, k, weights).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleFailure {
    /// A (d-1)-simplex with the wrong top-coface parity/count; the witness
    /// carries its vertices and how many top cofaces it has.
    Ridge { ridge: Vec<u32>, cofaces: usize },
    /// Coherent orientation impossible (found while propagating signs).
    NonOrientable { ridge: Vec<u32> },
}

/// The all-ones top chain over Z2, when it is a cycle.
pub fn fundamental_cycle_z2(c: &SimplicialComplex) -> Result<Vec<u64>, CycleFailure> {
    let d = c.dim();
    assert!(d >= 1);
    let d = d as usize;
    let table = c.ridge_coface_table();
    for (i, cofs) in table.iter().enumerate() {
        if cofs.len() % 2 != 0 {
            return Err(CycleFailure::Ridge {
                ridge: c.simplex(d - 1, i).to_vec(),
                cofaces: cofs.len(),
            });
        }
    }
    Ok(vec![1; c.count(d)])
}

/// A coherent ±1 top chain over Z. Requires every ridge to have exactly two
/// top cofaces and a consistent sign propagation (closed orientable
/// pseudomanifold, possibly disconnected).
pub fn fundamental_cycle_z(c: &SimplicialComplex) -> Result<Vec<i64>, CycleFailure> {
    let d = c.dim();
    assert!(d >= 1);
    let d = d as usize;
    let table = c.ridge_coface_table();
    for (i, cofs) in table.iter().enumerate() {
        if cofs.len() != 2 {
            return Err(CycleFailure::Ridge {
                ridge: c.simplex(d - 1, i).to_vec(),
                cofaces: cofs.len(),
            });
        }
    }
    // sign of ridge (top minus vertex at position p): (-1)^p
    let position_sign = |top: &[u32], ridge_idx: usize| -> i64 {
        let ridge = c.simplex(d - 1, ridge_idx);
        let extra = top
            .iter()
            .position(|v| !ridge.contains(v))
            .expect("ridge is a face of its coface");
        if extra % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let n = c.count(d);
    let mut sign = vec![0i64; n];
    let mut ridge_of_top: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ri, cofs) in table.iter().enumerate() {
        for &t in cofs {
            ridge_of_top[t as usize].push(ri);
        }
    }
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &ri in &ridge_of_top[t] {
                let cofs = &table[ri];
                let other = if cofs[0] as usize == t { cofs[1] as usize } else { cofs[0] as usize };
                let st = position_sign(c.simplex(d, t), ri) * sign[t];
                let want = -st * position_sign(c.simplex(d, other), ri);
                if sign[other] == 0 {
                    sign[other] = want;
                    stack.push(other);
                } else if sign[other] != want {
                    return Err(CycleFailure::NonOrientable {
                        ridge: c.simplex(d - 1, ri).to_vec(),
                    });
                }
            }
        }
    }
    Ok(sign)
}

/// Push a mod-2 k-chain forward along a simplicial map. Simplices whose image
/// degenerates contribute nothing.
pub fn pushforward_z2(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    k: usize,
    weights: &[u64],
) -> Result<Vec<u64>, ComplexError> {
    assert_eq!(weights.len(), source.count(k));
    let mut out = vec![0u64; target.count(k)];
    for (s, &w) in source.simplices(k).zip(weights) {
        if w % 2 == 0 {
            continue;
        }
        let img = f.image_simplex(s);
        if img.len() != k + 1 {
            continue;
        }
        let (kk, idx) = target
            .index_of(&img)
            .ok_or_else(|| ComplexError::Map(format!("image simplex {img:?} missing from target")))?;
        debug_assert_eq!(kk, k);
        out[idx] = (out[idx] + 1) % 2;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
