//! Graph files: JSON artifacts, DOT export and an on-disk cache.
//!
//! Weights are written as doubled coordinates (`weight_scale` is 2), so spin
//! weights stay integral and a load reproduces the graph exactly.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{AffineType, CartanError, Weight};
use crate::crystal::{CrystalError, CrystalGraph, RootDatum};
use crate::kr::{build_kr, KrCrystal, KrError, KrSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("i/o on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("malformed artifact: {0}")]
    Format(String),
    #[error("schema version {found}, expected {SCHEMA_VERSION}")]
    Version { found: u32 },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Kr(#[from] KrError),
}

impl ArtifactError {
    pub fn is_resource(&self) -> bool {
        matches!(self, ArtifactError::Kr(e) if e.is_resource())
    }

    fn io(path: &Path, source: io::Error) -> Self {
        ArtifactError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    #[serde(rename = "type")]
    pub ty: String,
    pub r: usize,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: u32,
    pub serialization: String,
    pub weight: Vec<i32>,
    pub eps: Vec<u32>,
    pub phi: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: u32,
    pub to: u32,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphArtifact {
    pub schema_version: u32,
    pub spec: Option<SpecRecord>,
    /// Root datum name, `C1:2` style for affine and `C2` style for classical.
    pub datum: String,
    pub colors: Vec<usize>,
    pub weight_scale: u32,
    pub nodes: Vec<NodeRecord>,
    /// f-arrows, sorted by color and then source.
    pub edges: Vec<EdgeRecord>,
}

impl GraphArtifact {
    pub fn from_graph(g: &CrystalGraph, spec: Option<&KrSpec>) -> Self {
        let colors = g.colors().to_vec();
        let nodes = g
            .ids()
            .map(|b| NodeRecord {
                id: b,
                serialization: g.label(b).to_string(),
                weight: g.weight(b).doubled().to_vec(),
                eps: colors.iter().map(|&c| g.eps(c, b)).collect(),
                phi: colors.iter().map(|&c| g.phi(c, b)).collect(),
            })
            .collect();
        let mut edges = Vec::new();
        for &c in &colors {
            for b in g.ids() {
                if let Some(t) = g.f(c, b) {
                    edges.push(EdgeRecord {
                        from: b,
                        to: t,
                        color: c,
                    });
                }
            }
        }
        GraphArtifact {
            schema_version: SCHEMA_VERSION,
            spec: spec.map(|sp| SpecRecord {
                ty: sp.ty.to_string(),
                r: sp.r,
                s: sp.s,
            }),
            datum: g.datum().name.clone(),
            colors,
            weight_scale: 2,
            nodes,
            edges,
        }
    }

    pub fn kr_spec(&self) -> Result<Option<KrSpec>, ArtifactError> {
        match &self.spec {
            None => Ok(None),
            Some(rec) => {
                let ty: AffineType = rec.ty.parse()?;
                Ok(Some(KrSpec::new(ty, rec.r, rec.s)?))
            }
        }
    }

    /// Rebuild the graph, checking ids, ε and φ against the edges.
    pub fn to_graph(&self) -> Result<CrystalGraph, ArtifactError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ArtifactError::Version {
                found: self.schema_version,
            });
        }
        if self.weight_scale != 2 {
            return Err(ArtifactError::Format(format!(
                "weight_scale {} (only 2 is written)",
                self.weight_scale
            )));
        }
        let datum = RootDatum::from_name(&self.datum)?;
        if datum.colors != self.colors {
            return Err(ArtifactError::Format(format!(
                "colors {:?} do not match {}",
                self.colors, self.datum
            )));
        }
        let n = self.nodes.len();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id as usize != i {
                return Err(ArtifactError::Format(format!(
                    "node {i} has id {}",
                    node.id
                )));
            }
            if node.weight.len() != datum.dim {
                return Err(ArtifactError::Format(format!("node {i}: weight length")));
            }
        }
        let mut f = vec![vec![None; n]; self.colors.len()];
        for e in &self.edges {
            let pos = datum
                .pos(e.color)
                .ok_or_else(|| ArtifactError::Format(format!("edge color {}", e.color)))?;
            if e.from as usize >= n || e.to as usize >= n {
                return Err(ArtifactError::Format(format!(
                    "edge {} -> {} out of range",
                    e.from, e.to
                )));
            }
            if f[pos][e.from as usize].replace(e.to).is_some() {
                return Err(ArtifactError::Format(format!(
                    "two {}-arrows leave node {}",
                    e.color, e.from
                )));
            }
        }
        let labels = self.nodes.iter().map(|x| x.serialization.clone()).collect();
        let weights = self
            .nodes
            .iter()
            .map(|x| Weight::from_doubled(x.weight.clone()))
            .collect();
        let (g, perm) = CrystalGraph::from_tables_perm(datum, labels, weights, f)?;
        if perm.iter().enumerate().any(|(i, &p)| p as usize != i) {
            return Err(ArtifactError::Format(
                "ids are not in canonical order".into(),
            ));
        }
        for node in &self.nodes {
            for (k, &c) in self.colors.iter().enumerate() {
                if g.eps(c, node.id) != node.eps[k] || g.phi(c, node.id) != node.phi[k] {
                    return Err(ArtifactError::Format(format!(
                        "node {}: eps/phi for color {c} disagree with the edges",
                        node.id
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ArtifactError> {
        serde_json::from_str(text).map_err(|e| ArtifactError::Format(e.to_string()))
    }
}

pub fn to_json(g: &CrystalGraph, spec: Option<&KrSpec>) -> String {
    GraphArtifact::from_graph(g, spec).to_json()
}

/// DOT digraph: node labels are serializations, edge labels are colors.
pub fn to_dot(g: &CrystalGraph, name: &str) -> String {
    let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", esc(name)).unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for b in g.ids() {
        writeln!(out, "  {b} [label=\"{}\"];", esc(g.label(b))).unwrap();
    }
    for &c in g.colors() {
        for b in g.ids() {
            if let Some(t) = g.f(c, b) {
                writeln!(out, "  {b} -> {t} [label=\"{c}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ArtifactError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| ArtifactError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| ArtifactError::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| ArtifactError::io(path, e))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(fs::Permissions::from_mode(0o644))
            .map_err(|e| ArtifactError::io(path, e))?;
    }
    tmp.persist(path)
        .map_err(|e| ArtifactError::io(path, e.error))?;
    Ok(())
}

pub fn save(path: &Path, g: &CrystalGraph, spec: Option<&KrSpec>) -> Result<(), ArtifactError> {
    write_atomic(path, &to_json(g, spec))
}

pub fn load(path: &Path) -> Result<(GraphArtifact, CrystalGraph), ArtifactError> {
    let text = fs::read_to_string(path).map_err(|e| ArtifactError::io(path, e))?;
    let art = GraphArtifact::from_json(&text)?;
    let g = art.to_graph()?;
    Ok((art, g))
}

/// Built KR crystals on disk, one JSON file per (family, n, r, s, schema).
#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn path(&self, spec: &KrSpec) -> PathBuf {
        let tag = spec.ty.to_string().replace(':', "-");
        self.root
            .join(format!("v{SCHEMA_VERSION}"))
            .join(format!("{tag}-{}-{}.json", spec.r, spec.s))
    }

    /// Load from the cache, or build and store. A cached file that does not
    /// load cleanly is rebuilt and overwritten.
    pub fn get(&self, spec: &KrSpec, budget: usize) -> Result<KrCrystal, ArtifactError> {
        let path = self.path(spec);
        if path.exists() {
            if let Ok((art, graph)) = load(&path) {
                if art.kr_spec()?.as_ref() == Some(spec) {
                    return Ok(KrCrystal { spec: *spec, graph });
                }
            }
        }
        let kr = build_kr(spec, budget)?;
        save(&path, &kr.graph, Some(spec))?;
        Ok(kr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::AffineFamily;

    fn spec(f: AffineFamily, n: usize, r: usize, s: usize) -> KrSpec {
        KrSpec::new(AffineType::new(f, n).unwrap(), r, s).unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        for sp in [
            spec(AffineFamily::A1, 3, 1, 2),
            spec(AffineFamily::B1, 2, 2, 1),
            spec(AffineFamily::D2, 2, 2, 2),
        ] {
            let kr = build_kr(&sp, 10_000).unwrap();
            let text = to_json(&kr.graph, Some(&sp));
            let art = GraphArtifact::from_json(&text).unwrap();
            assert_eq!(art.to_graph().unwrap(), kr.graph, "{sp}");
            assert_eq!(art.kr_spec().unwrap(), Some(sp));
            assert_eq!(art.to_json(), text);
        }
    }

    #[test]
    fn tampered_eps_is_rejected() {
        let sp = spec(AffineFamily::A1, 3, 1, 1);
        let kr = build_kr(&sp, 1000).unwrap();
        let mut art = GraphArtifact::from_graph(&kr.graph, Some(&sp));
        art.nodes[0].eps[0] += 1;
        assert!(matches!(art.to_graph(), Err(ArtifactError::Format(_))));
    }

    #[test]
    fn dot_has_nodes_and_colored_edges() {
        let sp = spec(AffineFamily::A1, 3, 1, 1);
        let kr = build_kr(&sp, 1000).unwrap();
        let dot = to_dot(&kr.graph, &sp.to_string());
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 6);
    }

    #[test]
    fn cache_reuses_files() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let sp = spec(AffineFamily::C1, 2, 1, 1);
        let a = cache.get(&sp, 1000).unwrap();
        assert!(cache.path(&sp).exists());
        let b = cache.get(&sp, 1000).unwrap();
        assert_eq!(a.graph, b.graph);
    }
}
