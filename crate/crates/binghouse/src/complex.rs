//! Finite abstract simplicial complexes with explicit closure storage.
//!
//! A complex is stored one dimension at a time as a sorted flat table of
//! vertex tuples, so simplex lookup is a binary search and iteration order
//! is canonical everywhere. Vertices are `u32` ids; optional string tags
//! carry provenance (which construction piece a vertex came from).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use smallvec::SmallVec;

pub type VertexId = u32;

/// Sorted vertex tuple. Always strictly increasing.
pub type Simplex = SmallVec<[VertexId; 6]>;

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("simplex {0:?} has repeated vertices")]
    RepeatedVertex(Vec<VertexId>),
    #[error("simplex {0:?} uses vertex {1} which is not declared")]
    UnknownVertex(Vec<VertexId>, VertexId),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("orientation list length {0} does not match top simplex count {1}")]
    OrientationLength(usize, usize),
    #[error("complex has no simplices")]
    Empty,
    #[error("gluing: {0}")]
    Gluing(String),
    #[error("map: {0}")]
    Map(String),
    #[error("complex is not connected ({0} components)")]
    Disconnected(usize),
}

fn sorted_simplex(mut v: Vec<VertexId>) -> Result<Simplex, ComplexError> {
    if v.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    v.sort_unstable();
    for w in v.windows(2) {
        if w[0] == w[1] {
            return Err(ComplexError::RepeatedVertex(v.clone()));
        }
    }
    Ok(Simplex::from_vec(v))
}

/// One dimension level: `arity` vertices per row, rows sorted lexicographically.
#[derive(Clone, Default)]
struct Level {
    arity: usize,
    flat: Vec<VertexId>,
}

impl Level {
    fn len(&self) -> usize {
        if self.arity == 0 {
            0
        } else {
            self.flat.len() / self.arity
        }
    }
    fn row(&self, i: usize) -> &[VertexId] {
        &self.flat[i * self.arity..(i + 1) * self.arity]
    }
    fn find(&self, s: &[VertexId]) -> Option<usize> {
        if s.len() != self.arity || self.arity == 0 {
            return None;
        }
        let n = self.len();
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

#[derive(Clone, Default)]
pub struct SimplicialComplex {
    /// Sorted list of vertex ids in use.
    vertices: Vec<VertexId>,
    /// Sparse provenance tags.
    tags: BTreeMap<VertexId, String>,
    /// levels[k] holds the k-simplices.
    levels: Vec<Level>,
    /// Optional signs for top simplices, aligned with `levels.last()` rows.
    orientation: Option<Vec<i8>>,
    /// Optional embedding coordinates (for OFF export), aligned with `vertices`.
    coords: Option<Vec<[f64; 3]>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(dim {}", self.dim())?;
        for k in 0..=self.dim().max(0) as usize {
            write!(f, ", {} {}-cells", self.count(k), k)?;
        }
        write!(f, ")")
    }
}

impl SimplicialComplex {
    /// Build from top simplices; all faces are generated by closure.
    /// `vertices` declares every id that may appear (isolated vertices allowed).
    pub fn from_top_simplices(
        vertices: impl IntoIterator<Item = VertexId>,
        tops: impl IntoIterator<Item = Vec<VertexId>>,
    ) -> Result<Self, ComplexError> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        let vset: BTreeSet<VertexId> = vs.iter().copied().collect();

        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for t in tops {
            let s = sorted_simplex(t)?;
            for &v in s.iter() {
                if !vset.contains(&v) {
                    return Err(ComplexError::UnknownVertex(s.to_vec(), v));
                }
            }
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
        // closure: every face of a simplex is a simplex
        for d in (1..by_dim.len()).rev() {
            let lower: Vec<Simplex> = by_dim[d]
                .iter()
                .flat_map(|s| {
                    (0..s.len()).map(move |i| {
                        let mut f = s.clone();
                        f.remove(i);
                        f
                    })
                })
                .collect();
            for f in lower {
                by_dim[d - 1].insert(f);
            }
        }
        if !by_dim.is_empty() {
            for &v in &vs {
                by_dim[0].insert(SmallVec::from_slice(&[v]));
            }
        } else if !vs.is_empty() {
            let mut zero = BTreeSet::new();
            for &v in &vs {
                zero.insert(SmallVec::from_slice(&[v]));
            }
            by_dim.push(zero);
        }

        let levels = by_dim
            .into_iter()
            .enumerate()
            .map(|(d, set)| {
                let arity = d + 1;
                let mut flat = Vec::with_capacity(set.len() * arity);
                for s in set {
                    flat.extend_from_slice(&s);
                }
                Level { arity, flat }
            })
            .collect();

        Ok(SimplicialComplex {
            vertices: vs,
            tags: BTreeMap::new(),
            levels,
            orientation: None,
            coords: None,
        })
    }

    pub fn set_tag(&mut self, v: VertexId, tag: impl Into<String>) {
        self.tags.insert(v, tag.into());
    }
    pub fn tag(&self, v: VertexId) -> Option<&str> {
        self.tags.get(&v).map(|s| s.as_str())
    }
    pub fn tags(&self) -> &BTreeMap<VertexId, String> {
        &self.tags
    }
    pub fn set_tags(&mut self, tags: BTreeMap<VertexId, String>) {
        self.tags = tags;
    }

    pub fn set_orientation(&mut self, signs: Vec<i8>) -> Result<(), ComplexError> {
        let n = self.count(self.dim().max(0) as usize);
        if signs.len() != n {
            return Err(ComplexError::OrientationLength(signs.len(), n));
        }
        self.orientation = Some(signs);
        Ok(())
    }
    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    pub fn set_coords(&mut self, coords: Vec<[f64; 3]>) {
        assert_eq!(coords.len(), self.vertices.len());
        self.coords = Some(coords);
    }
    pub fn coords(&self) -> Option<&[[f64; 3]]> {
        self.coords.as_deref()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i32 {
        self.levels.len() as i32 - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.len())
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[VertexId]> + '_ {
        let level = self.levels.get(k);
        (0..level.map_or(0, |l| l.len())).map(move |i| level.unwrap().row(i))
    }

    pub fn simplex(&self, k: usize, idx: usize) -> &[VertexId] {
        self.levels[k].row(idx)
    }

    pub fn index_of(&self, s: &[VertexId]) -> Option<(usize, usize)> {
        if s.is_empty() {
            return None;
        }
        let k = s.len() - 1;
        self.levels.get(k).and_then(|l| l.find(s)).map(|i| (k, i))
    }

    pub fn contains(&self, s: &[VertexId]) -> bool {
        self.index_of(s).is_some()
    }

    /// Invariant check: sorted unique rows, closure present, vertices declared.
    pub fn validate(&self) -> Result<(), ComplexError> {
        if self.levels.is_empty() {
            return Err(ComplexError::Empty);
        }
        let vset: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        for (k, level) in self.levels.iter().enumerate() {
            let mut prev: Option<&[VertexId]> = None;
            for i in 0..level.len() {
                let row = level.row(i);
                for w in row.windows(2) {
                    if w[0] >= w[1] {
                        return Err(ComplexError::RepeatedVertex(row.to_vec()));
                    }
                }
                for &v in row {
                    if !vset.contains(&v) {
                        return Err(ComplexError::UnknownVertex(row.to_vec(), v));
                    }
                }
                if let Some(p) = prev {
                    if p >= row {
                        return Err(ComplexError::Gluing(format!(
                            "level {k} rows out of order at {i}"
                        )));
                    }
                }
                prev = Some(row);
                if k > 0 {
                    let mut face: Simplex = SmallVec::from_slice(row);
                    for j in 0..row.len() {
                        let v = face.remove(j);
                        if self.levels[k - 1].find(&face).is_none() {
                            return Err(ComplexError::Gluing(format!(
                                "face {:?} of {:?} missing",
                                face, row
                            )));
                        }
                        face.insert(j, v);
                    }
                }
            }
        }
        if let Some(signs) = &self.orientation {
            let n = self.count(self.levels.len() - 1);
            if signs.len() != n {
                return Err(ComplexError::OrientationLength(signs.len(), n));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (k, l) in self.levels.iter().enumerate() {
            if k % 2 == 0 {
                chi += l.len() as i64;
            } else {
                chi -= l.len() as i64;
            }
        }
        chi
    }

    /// All simplices containing `s` (proper cofaces), as (dim, index) pairs.
    pub fn cofaces(&self, s: &[VertexId]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in s.len()..self.levels.len() {
            for (i, row) in self.simplices(k).enumerate() {
                if is_subset(s, row) {
                    out.push((k, i));
                }
            }
        }
        out
    }

    /// Top-dimensional cofaces of a codimension-1 simplex, by index scan.
    /// Used in hot paths via the precomputed table instead; see `ridge_cofaces`.
    pub fn top_cofaces_of(&self, s: &[VertexId]) -> Vec<usize> {
        let d = self.levels.len() - 1;
        let mut out = Vec::new();
        for (i, row) in self.simplices(d).enumerate() {
            if is_subset(s, row) {
                out.push(i);
            }
        }
        out
    }

    /// Addresses (dimension, index) of every maximal simplex, found by one
    /// downward sweep marking each proper face as covered.
    pub fn maximal_simplices(&self) -> Vec<(usize, usize)> {
        let d = self.levels.len() - 1;
        let mut covered: Vec<Vec<bool>> = (0..=d).map(|k| vec![false; self.count(k)]).collect();
        let mut face: Simplex = SmallVec::new();
        for k in 1..=d {
            for s in self.simplices(k) {
                for drop in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(p, _)| p != drop).map(|(_, &v)| v));
                    let fi = self.levels[k - 1].find(&face).expect("closure");
                    covered[k - 1][fi] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, cov) in covered.iter().enumerate() {
            for (i, &c) in cov.iter().enumerate() {
                if !c {
                    out.push((k, i));
                }
            }
        }
        out
    }

    /// For each (d-1)-simplex, the indices of d-simplices containing it.
    pub fn ridge_coface_table(&self) -> Vec<Vec<u32>> {
        let d = self.levels.len() - 1;
        if d == 0 {
            return vec![Vec::new(); self.count(0)];
        }
        let mut table = vec![Vec::new(); self.count(d - 1)];
        for (i, row) in self.simplices(d).enumerate() {
            let mut face: Simplex = SmallVec::from_slice(row);
            for j in 0..row.len() {
                let v = face.remove(j);
                let fi = self.levels[d - 1].find(&face).expect("closure");
                table[fi].push(i as u32);
                face.insert(j, v);
            }
        }
        table
    }

    /// Closed star of a vertex: all simplices containing v, plus their faces.
    pub fn star(&self, v: VertexId) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        for k in 0..self.levels.len() {
            for row in self.simplices(k) {
                if row.contains(&v) {
                    out.push(row.to_vec());
                }
            }
        }
        out
    }

    /// Link of a vertex as a new complex (with the same vertex ids).
    pub fn link(&self, v: VertexId) -> SimplicialComplex {
        // {σ \ v : σ ∋ v} is the whole link already (closed under faces);
        // closure in the constructor dedups the redundant entries.
        let mut tops: Vec<Vec<VertexId>> = Vec::new();
        let mut verts: BTreeSet<VertexId> = BTreeSet::new();
        for k in 1..self.levels.len() {
            for row in self.simplices(k) {
                if !row.contains(&v) {
                    continue;
                }
                let face: Vec<VertexId> = row.iter().copied().filter(|&u| u != v).collect();
                verts.extend(face.iter().copied());
                tops.push(face);
            }
        }
        SimplicialComplex::from_top_simplices(verts, tops).expect("link is a valid complex")
    }

    /// Links of all vertices, in vertex order. One maximality sweep feeds
    /// every link, so a full pass is far cheaper than per-vertex `link`.
    pub fn links(&self) -> impl Iterator<Item = (VertexId, SimplicialComplex)> + '_ {
        let vpos: HashMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut star: Vec<Vec<Vec<VertexId>>> = vec![Vec::new(); self.vertices.len()];
        for (k, i) in self.maximal_simplices() {
            if k == 0 {
                continue;
            }
            let s = self.simplex(k, i);
            for (p, &v) in s.iter().enumerate() {
                let face: Vec<VertexId> = s
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .map(|(_, &u)| u)
                    .collect();
                star[vpos[&v]].push(face);
            }
        }
        self.vertices.iter().zip(star).map(|(&v, tops)| {
            let verts: BTreeSet<VertexId> = tops.iter().flatten().copied().collect();
            let lk = SimplicialComplex::from_top_simplices(verts, tops)
                .expect("link is a valid complex");
            (v, lk)
        })
    }

    /// Connected components of the 1-skeleton; isolated vertices count.
    pub fn connected_components(&self) -> usize {
        if self.vertices.is_empty() {
            return 0;
        }
        let idx: HashMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut dsu = Dsu::new(self.vertices.len());
        if self.levels.len() > 1 {
            for e in self.simplices(1) {
                dsu.union(idx[&e[0]], idx[&e[1]]);
            }
        }
        let mut roots = BTreeSet::new();
        for i in 0..self.vertices.len() {
            roots.insert(dsu.find(i));
        }
        roots.len()
    }

    /// Pure: every maximal simplex has top dimension.
    pub fn is_pure(&self) -> bool {
        let d = self.levels.len() - 1;
        self.maximal_simplices().iter().all(|&(k, _)| k == d)
    }

    /// Closed pseudomanifold test for d <= 3.
    ///
    /// True iff the complex is pure of dimension d, every (d-1)-simplex lies in
    /// exactly two d-simplices, and the d-simplices are strongly connected
    /// through (d-1)-faces. For d = 3 every vertex link must in addition be a
    /// 2-sphere.
    pub fn is_closed_pseudomanifold(&self, d: usize) -> bool {
        if self.levels.len() != d + 1 || self.count(d) == 0 {
            return false;
        }
        if !self.is_pure() {
            return false;
        }
        let table = self.ridge_coface_table();
        if table.iter().any(|c| c.len() != 2) {
            return false;
        }
        // strong connectivity across ridges
        let n = self.count(d);
        let mut dsu = Dsu::new(n);
        for c in &table {
            dsu.union(c[0] as usize, c[1] as usize);
        }
        let root = dsu.find(0);
        if (1..n).any(|i| dsu.find(i) != root) {
            return false;
        }
        if d == 3 {
            for (_, lk) in self.links() {
                if !lk.is_two_sphere() {
                    return false;
                }
            }
        }
        true
    }

    /// Closed surface check: pure 2-dimensional, every edge in exactly two
    /// triangles, connected.
    pub fn is_closed_surface(&self) -> bool {
        if self.levels.len() != 3 || self.count(2) == 0 {
            return false;
        }
        if !self.is_pure() {
            return false;
        }
        let table = self.ridge_coface_table();
        if table.iter().any(|c| c.len() != 2) {
            return false;
        }
        // vertex links must be single cycles
        for (_, lk) in self.links() {
            if !lk.is_single_cycle() {
                return false;
            }
        }
        self.connected_components() == 1
    }

    /// Graph check: is this complex a single closed cycle?
    pub fn is_single_cycle(&self) -> bool {
        if self.levels.len() != 2 {
            return false;
        }
        let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in self.simplices(1) {
            *deg.entry(e[0]).or_insert(0) += 1;
            *deg.entry(e[1]).or_insert(0) += 1;
        }
        if self.vertices.iter().any(|v| deg.get(v) != Some(&2)) {
            return false;
        }
        self.connected_components() == 1 && self.count(1) == self.count(0)
    }

    /// S^2 recognition: closed connected orientable surface with chi = 2.
    /// chi = 2 forces orientability for closed surfaces; both are checked.
    pub fn is_two_sphere(&self) -> bool {
        self.is_closed_surface()
            && self.euler_characteristic() == 2
            && self.orientable_surface() == Some(true)
    }

    /// Orientability of a pure 2- or 3-dimensional complex in which every
    /// ridge has exactly two cofaces, by sign propagation. None if the
    /// complex is not of that shape.
    pub fn orientable_surface(&self) -> Option<bool> {
        let d = self.levels.len() - 1;
        if d == 0 {
            return None;
        }
        let table = self.ridge_coface_table();
        if table.iter().any(|c| c.len() > 2) {
            return None;
        }
        let n = self.count(d);
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let row: Simplex = SmallVec::from_slice(self.simplex(d, i));
                let mut face: Simplex = row.clone();
                for j in 0..row.len() {
                    let v = face.remove(j);
                    let fi = self.levels[d - 1].find(&face).expect("closure");
                    for &other in &table[fi] {
                        let o = other as usize;
                        if o == i {
                            continue;
                        }
                        // relative orientation: signs of the shared face in both
                        let orow = self.simplex(d, o);
                        let oj = orow
                            .iter()
                            .position(|u| !face.contains(u))
                            .expect("codim 1");
                        let rel = if (j + oj) % 2 == 0 { -1 } else { 1 };
                        let want = sign[i] * rel;
                        if sign[o] == 0 {
                            sign[o] = want;
                            stack.push(o);
                        } else if sign[o] != want {
                            return Some(false);
                        }
                    }
                    face.insert(j, v);
                }
            }
        }
        Some(true)
    }

    /// Top simplices as owned vectors, in canonical order.
    pub fn top_simplices(&self) -> Vec<Vec<VertexId>> {
        let d = self.levels.len() - 1;
        self.simplices(d).map(|s| s.to_vec()).collect()
    }

    /// Subcomplex generated by the given top simplices (must be present).
    pub fn subcomplex(&self, tops: &[Vec<VertexId>]) -> Result<SimplicialComplex, ComplexError> {
        for t in tops {
            let mut s = t.clone();
            s.sort_unstable();
            if !self.contains(&s) {
                return Err(ComplexError::Gluing(format!(
                    "subcomplex generator {:?} not in complex",
                    t
                )));
            }
        }
        let verts: BTreeSet<VertexId> = tops.iter().flatten().copied().collect();
        let mut sub = SimplicialComplex::from_top_simplices(verts, tops.to_vec())?;
        for (&v, t) in &self.tags {
            if sub.vertices.binary_search(&v).is_ok() {
                sub.set_tag(v, t.clone());
            }
        }
        Ok(sub)
    }
}

pub fn is_subset(small: &[VertexId], big: &[VertexId]) -> bool {
    let mut it = big.iter();
    'outer: for &s in small {
        for &b in it.by_ref() {
            if b == s {
                continue 'outer;
            }
            if b > s {
                return false;
            }
        }
        return false;
    }
    true
}

pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    pub fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = i;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// A simplicial map, given on vertices. Validated to send simplices to
/// simplices. `nondegenerate` means injective on every simplex.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new(map: BTreeMap<VertexId, VertexId>) -> Self {
        SimplicialMap { map }
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[&v]
    }

    pub fn image_simplex(&self, s: &[VertexId]) -> Simplex {
        let mut img: Simplex = s.iter().map(|v| self.map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Check the map is simplicial from `source` to `target`.
    pub fn validate(
        &self,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
    ) -> Result<(), ComplexError> {
        for &v in source.vertices() {
            let w = *self
                .map
                .get(&v)
                .ok_or_else(|| ComplexError::Map(format!("vertex {v} unmapped")))?;
            if target.vertices().binary_search(&w).is_err() {
                return Err(ComplexError::Map(format!("image vertex {w} not in target")));
            }
        }
        for k in 0..=source.dim().max(0) as usize {
            for s in source.simplices(k) {
                let img = self.image_simplex(s);
                if !target.contains(&img) {
                    return Err(ComplexError::Map(format!(
                        "image {:?} of simplex {:?} not in target",
                        img, s
                    )));
                }
            }
        }
        Ok(())
    }

    /// Injective on every simplex of the source?
    pub fn is_nondegenerate(&self, source: &SimplicialComplex) -> bool {
        let d = source.dim().max(0) as usize;
        source.simplices(d).all(|s| {
            let img = self.image_simplex(s);
            img.len() == s.len()
        }) && (0..d).all(|k| {
            source
                .simplices(k)
                .all(|s| self.image_simplex(s).len() == s.len())
        })
    }

    pub fn compose(&self, then: &SimplicialMap) -> SimplicialMap {
        let map = self
            .map
            .iter()
            .map(|(&v, &w)| (v, then.map[&w]))
            .collect();
        SimplicialMap { map }
    }

    pub fn identity(c: &SimplicialComplex) -> SimplicialMap {
        SimplicialMap {
            map: c.vertices().iter().map(|&v| (v, v)).collect(),
        }
    }

    /// Vertex assignment in source order.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.map.iter().map(|(&v, &w)| (v, w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(
            0..4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let c = tetra_boundary();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.count(0), 4);
        assert_eq!(c.count(1), 6);
        assert_eq!(c.count(2), 4);
        assert_eq!(c.euler_characteristic(), 2);
        c.validate().unwrap();
    }

    #[test]
    fn sphere_recognition() {
        let c = tetra_boundary();
        assert!(c.is_closed_surface());
        assert!(c.is_two_sphere());
        assert!(c.is_closed_pseudomanifold(2));
    }

    #[test]
    fn repeated_vertex_rejected() {
        let r = SimplicialComplex::from_top_simplices(0..3, vec![vec![0, 1, 1]]);
        assert!(r.is_err());
    }

    #[test]
    fn link_of_tetra_vertex_is_cycle() {
        let c = tetra_boundary();
        let lk = c.link(0);
        assert!(lk.is_single_cycle());
    }

    #[test]
    fn moebius_not_closed() {
        // five-triangle Moebius strip
        let c = SimplicialComplex::from_top_simplices(
            0..5,
            vec![
                vec![0, 1, 2],
                vec![1, 2, 3],
                vec![2, 3, 4],
                vec![3, 4, 0],
                vec![4, 0, 1],
            ],
        )
        .unwrap();
        assert!(!c.is_closed_surface());
        assert!(!c.is_closed_pseudomanifold(2));
        assert_eq!(c.orientable_surface(), Some(false));
    }

    #[test]
    fn solid_tetra_pseudomanifold_check() {
        let c = SimplicialComplex::from_top_simplices(0..4, vec![vec![0, 1, 2, 3]]).unwrap();
        // a single 3-simplex is not closed
        assert!(!c.is_closed_pseudomanifold(3));
    }

    #[test]
    fn star_link_consistency() {
        let c = tetra_boundary();
        let star = c.star(0);
        assert!(star.iter().all(|s| s.contains(&0)));
        assert_eq!(star.len(), 1 + 3 + 3);
    }
}
