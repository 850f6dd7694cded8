//! File formats: complexes and simplicial maps as JSON, OFF export for
//! complexes carrying embedding coordinates, and SHA-256 checksums over the
//! shipped data tree.
//!
//! Complex files hold vertices (with optional tags), top simplices, and an
//! optional orientation; faces are regenerated by closure on load. Map files
//! name their source and target complex files by path relative to the map
//! file and list the vertex assignment. All writers emit stable output:
//! sorted keys, fixed field order, a single trailing newline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, SimplicialMap, VertexId};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Complex {
        path: PathBuf,
        source: ComplexError,
    },
    #[error("checksum mismatch in {file}")]
    Checksum { file: String },
    #[error("{file} is not listed in {manifest}")]
    Unlisted { file: String, manifest: String },
    #[error("OFF export needs embedding coordinates")]
    NoCoordinates,
    #[error("OFF export needs a two-dimensional complex, got dimension {0}")]
    OffDimension(i32),
}

fn read(path: &Path) -> Result<Vec<u8>, IoError> {
    fs::read(path).map_err(|source| IoError::File { path: path.to_path_buf(), source })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .map_err(|source| IoError::File { path: path.to_path_buf(), source })?;
    }
    fs::write(path, bytes).map_err(|source| IoError::File { path: path.to_path_buf(), source })
}

// ---------------------------------------------------------------------------
// Complex files

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: VertexId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tag: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    vertices: Vec<VertexRecord>,
    top_simplices: Vec<Vec<VertexId>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    orientation: Option<Vec<i8>>,
    /// Embedding coordinates for OFF export; never read by any verifier.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coords: Option<Vec<[f64; 3]>>,
}

fn to_file(c: &SimplicialComplex) -> ComplexFile {
    ComplexFile {
        vertices: c
            .vertices()
            .iter()
            .map(|&v| VertexRecord { id: v, tag: c.tag(v).map(str::to_owned) })
            .collect(),
        top_simplices: c
            .maximal_simplices()
            .into_iter()
            .map(|(k, i)| c.simplex(k, i).to_vec())
            .collect(),
        orientation: c.orientation().map(|s| s.to_vec()),
        coords: c.coords().map(|s| s.to_vec()),
    }
}

fn from_file(f: ComplexFile, path: &Path) -> Result<SimplicialComplex, IoError> {
    let ids: Vec<VertexId> = f.vertices.iter().map(|r| r.id).collect();
    let mut c = SimplicialComplex::from_top_simplices(ids, f.top_simplices)
        .map_err(|source| IoError::Complex { path: path.to_path_buf(), source })?;
    let tags: BTreeMap<VertexId, String> = f
        .vertices
        .into_iter()
        .filter_map(|r| r.tag.map(|t| (r.id, t)))
        .collect();
    c.set_tags(tags);
    if let Some(orientation) = f.orientation {
        c.set_orientation(orientation)
            .map_err(|source| IoError::Complex { path: path.to_path_buf(), source })?;
    }
    if let Some(coords) = f.coords {
        c.set_coords(coords);
    }
    Ok(c)
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    let mut s = serde_json::to_string(&to_file(c)).expect("complex serializes");
    s.push('\n');
    s
}

pub fn save_complex(c: &SimplicialComplex, path: &Path) -> Result<(), IoError> {
    write(path, complex_to_json(c).as_bytes())
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex, IoError> {
    let bytes = read(path)?;
    let f: ComplexFile = serde_json::from_slice(&bytes)
        .map_err(|source| IoError::Format { path: path.to_path_buf(), source })?;
    from_file(f, path)
}

// ---------------------------------------------------------------------------
// Map files

#[derive(Serialize, Deserialize)]
struct MapFile {
    /// Complex file paths, relative to this file's directory.
    source: String,
    target: String,
    vertex_map: Vec<(VertexId, VertexId)>,
}

/// A simplicial map together with the complexes its file points at.
pub struct LoadedMap {
    pub map: SimplicialMap,
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub source_path: PathBuf,
    pub target_path: PathBuf,
}

pub fn save_map(
    f: &SimplicialMap,
    source_rel: &str,
    target_rel: &str,
    path: &Path,
) -> Result<(), IoError> {
    let file = MapFile {
        source: source_rel.to_owned(),
        target: target_rel.to_owned(),
        vertex_map: f.pairs(),
    };
    let mut s = serde_json::to_string(&file).expect("map serializes");
    s.push('\n');
    write(path, s.as_bytes())
}

pub fn load_map(path: &Path) -> Result<LoadedMap, IoError> {
    let bytes = read(path)?;
    let f: MapFile = serde_json::from_slice(&bytes)
        .map_err(|source| IoError::Format { path: path.to_path_buf(), source })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let source_path = dir.join(&f.source);
    let target_path = dir.join(&f.target);
    let source = load_complex(&source_path)?;
    let target = load_complex(&target_path)?;
    let map = SimplicialMap::new(f.vertex_map.into_iter().collect());
    map.validate(&source, &target)
        .map_err(|source| IoError::Complex { path: path.to_path_buf(), source })?;
    Ok(LoadedMap { map, source, target, source_path, target_path })
}

// ---------------------------------------------------------------------------
// OFF export

/// OFF text for a two-dimensional complex with coordinates. Triangles are
/// written in stored order; vertex lines follow the complex's vertex order.
pub fn to_off(c: &SimplicialComplex) -> Result<String, IoError> {
    let coords = c.coords().ok_or(IoError::NoCoordinates)?;
    if c.dim() != 2 {
        return Err(IoError::OffDimension(c.dim()));
    }
    let index: BTreeMap<VertexId, usize> = c
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", c.count(0), c.count(2), c.count(1)));
    for p in coords {
        out.push_str(&format!("{} {} {}\n", p[0], p[1], p[2]));
    }
    for t in c.simplices(2) {
        out.push_str(&format!("3 {} {} {}\n", index[&t[0]], index[&t[1]], index[&t[2]]));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Checksums

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Relative path -> SHA-256 of every regular file under `dir`, skipping the
/// manifest itself. Paths use forward slashes.
pub fn checksum_tree(dir: &Path, manifest_name: &str) -> Result<BTreeMap<String, String>, IoError> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let entries =
            fs::read_dir(&d).map_err(|source| IoError::File { path: d.clone(), source })?;
        for entry in entries {
            let entry = entry.map_err(|source| IoError::File { path: d.clone(), source })?;
            let path = entry.path();
            if path.is_dir() {
                stack.push(path);
                continue;
            }
            let rel = path
                .strip_prefix(dir)
                .expect("entry lies under the walk root")
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            if rel == manifest_name {
                continue;
            }
            out.insert(rel, sha256_hex(&read(&path)?));
        }
    }
    Ok(out)
}

pub const MANIFEST_NAME: &str = "checksums.json";

/// Write `checksums.json` under `dir` covering every other file in the tree.
pub fn write_manifest(dir: &Path) -> Result<BTreeMap<String, String>, IoError> {
    let sums = checksum_tree(dir, MANIFEST_NAME)?;
    let mut s = serde_json::to_string_pretty(&sums).expect("manifest serializes");
    s.push('\n');
    write(&dir.join(MANIFEST_NAME), s.as_bytes())?;
    Ok(sums)
}

/// Compare the tree against its manifest. Returns the manifest map when every
/// file matches; names the first offender otherwise (missing, modified, or
/// not listed).
pub fn verify_manifest(dir: &Path) -> Result<BTreeMap<String, String>, IoError> {
    let manifest_path = dir.join(MANIFEST_NAME);
    let bytes = read(&manifest_path)?;
    let listed: BTreeMap<String, String> = serde_json::from_slice(&bytes)
        .map_err(|source| IoError::Format { path: manifest_path, source })?;
    let actual = checksum_tree(dir, MANIFEST_NAME)?;
    for (file, sum) in &listed {
        match actual.get(file) {
            Some(s) if s == sum => {}
            _ => return Err(IoError::Checksum { file: file.clone() }),
        }
    }
    for file in actual.keys() {
        if !listed.contains_key(file) {
            return Err(IoError::Unlisted {
                file: file.clone(),
                manifest: MANIFEST_NAME.to_owned(),
            });
        }
    }
    Ok(listed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(tops: &[&[VertexId]]) -> SimplicialComplex {
        let verts: std::collections::BTreeSet<VertexId> =
            tops.iter().flat_map(|s| s.iter().copied()).collect();
        SimplicialComplex::from_top_simplices(verts, tops.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn complex_round_trip_keeps_everything() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = complex(&[&[0, 1, 2], &[1, 2, 3], &[3, 4]]);
        c.set_tag(0, "corner");
        c.set_tag(4, "tail");
        let path = dir.path().join("c.json");
        save_complex(&c, &path).unwrap();
        let back = load_complex(&path).unwrap();
        assert_eq!(back.vertices(), c.vertices());
        for k in 0..=2 {
            let a: Vec<_> = c.simplices(k).collect();
            let b: Vec<_> = back.simplices(k).collect();
            assert_eq!(a, b);
        }
        assert_eq!(back.tag(0), Some("corner"));
        assert_eq!(back.tag(4), Some("tail"));
        assert_eq!(back.tag(1), None);
        // byte-stable across a save/load/save cycle
        let again = dir.path().join("c2.json");
        save_complex(&back, &again).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());
    }

    #[test]
    fn map_round_trip_validates() {
        let dir = tempfile::tempdir().unwrap();
        let src = complex(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let tgt = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
        save_complex(&src, &dir.path().join("src.json")).unwrap();
        save_complex(&tgt, &dir.path().join("tgt.json")).unwrap();
        let f = SimplicialMap::new(
            [(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)].into_iter().collect(),
        );
        let map_path = dir.path().join("f.json");
        save_map(&f, "src.json", "tgt.json", &map_path).unwrap();
        let loaded = load_map(&map_path).unwrap();
        assert_eq!(loaded.map.pairs(), f.pairs());
        assert_eq!(loaded.source.count(1), 6);
        assert_eq!(loaded.target.count(1), 3);
    }

    #[test]
    fn off_export_wants_coords_and_dimension_two() {
        let mut c = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert!(matches!(to_off(&c), Err(IoError::NoCoordinates)));
        c.set_coords(vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let off = to_off(&c).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("4 4 6"));
        assert_eq!(off.lines().count(), 2 + 4 + 4);

        let mut edge = complex(&[&[0, 1]]);
        edge.set_coords(vec![[0.0; 3], [1.0, 0.0, 0.0]]);
        assert!(matches!(to_off(&edge), Err(IoError::OffDimension(1))));
    }

    #[test]
    fn manifest_catches_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        fs::create_dir(root.join("sub")).unwrap();
        fs::write(root.join("a.json"), b"{\"n\": 1}\n").unwrap();
        fs::write(root.join("sub/b.json"), b"[2, 3]\n").unwrap();
        write_manifest(root).unwrap();
        let ok = verify_manifest(root).unwrap();
        assert_eq!(ok.len(), 2);
        assert!(ok.contains_key("sub/b.json"));

        fs::write(root.join("sub/b.json"), b"[2, 4]\n").unwrap();
        match verify_manifest(root) {
            Err(IoError::Checksum { file }) => assert_eq!(file, "sub/b.json"),
            other => panic!("expected a checksum failure, got ok={}", other.is_ok()),
        }

        fs::write(root.join("sub/b.json"), b"[2, 3]\n").unwrap();
        fs::write(root.join("stray.json"), b"{}\n").unwrap();
        assert!(matches!(verify_manifest(root), Err(IoError::Unlisted { .. })));
    }
}
