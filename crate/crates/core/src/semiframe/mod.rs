//! Semi-frame check on combinatorial maps.
//!
//! A system of arcs between punctures is drawn as a graph: punctures are
//! vertices, arcs are edges, and transversal crossings between arcs are
//! planarized into degree-4 crossing vertices. The system admits disjoint
//! access arcs from one point to every puncture, meeting the drawing only at
//! their endpoints, exactly when some face of the drawing touches every
//! puncture. With several connected components each component needs such a
//! face; the components are then placed side by side with those faces merged.
//!
//! Edge ends ("darts") are numbered `2·edge_id + end`, where `end` is the
//! index into the edge's `ends` pair. Each vertex lists its darts in
//! counterclockwise order. Faces are traced by stepping from a dart to the
//! rotation successor of its twin, which keeps the face on the right.

mod drawing;
mod faces;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use drawing::{band_subgraph_map, planarize, random_map, remove_arc, Point};
pub use faces::{trace_faces, FaceWalk};

use faces::Embedding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Puncture,
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: u32,
    pub ends: [u32; 2],
}

/// How the face holding the common access point is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only the designated face of each component may serve.
    Fixed,
    /// Any face may serve.
    #[default]
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombMap {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Vertex id to its darts in counterclockwise order.
    pub rotations: BTreeMap<u32, Vec<u32>>,
    /// Component index to the index (into [`trace_faces`] output) of the
    /// face holding the access point. Required in fixed mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<BTreeMap<usize, usize>>,
    #[serde(default)]
    pub mode: Mode,
}

pub fn dart(edge_id: u32, end: usize) -> u32 {
    2 * edge_id + end as u32
}

pub fn twin(d: u32) -> u32 {
    d ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u32),
    #[error("edge {0} listed twice")]
    DuplicateEdge(u32),
    #[error("edge id {0} too large")]
    EdgeIdTooLarge(u32),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: u32, vertex: u32 },
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: u32, vertex: u32 },
    #[error("crossing vertex {vertex} has degree {degree}, expected 4")]
    CrossingDegree { vertex: u32, degree: usize },
    #[error("rotation given for unknown vertex {0}")]
    RotationForUnknownVertex(u32),
    #[error("dart {dart} in the rotation of vertex {vertex} does not exist")]
    UnknownDart { vertex: u32, dart: u32 },
    #[error("dart {dart} listed at vertex {vertex} but belongs to vertex {expected}")]
    DartAtWrongVertex {
        dart: u32,
        vertex: u32,
        expected: u32,
    },
    #[error("dart {0} appears more than once in the rotations")]
    DuplicateDart(u32),
    #[error("dart {0} appears in no rotation")]
    MissingDart(u32),
    #[error("component {component} is not embedded in the sphere (V - E + F = {euler})")]
    NonPlanar { component: usize, euler: i64 },
    #[error("fixed mode needs a designated face for component {0}")]
    MissingOuter(usize),
    #[error("designated face {face} does not belong to component {component}")]
    BadOuter { component: usize, face: usize },
}

/// Checks vertex/edge/rotation consistency and that every component is a
/// sphere embedding.
pub fn validate_map(m: &CombMap) -> Result<(), MapError> {
    let emb = Embedding::build(m)?;
    let faces = emb.faces();
    emb.check_euler(&faces)?;
    if m.mode == Mode::Fixed {
        check_outer(m, &emb, &faces)?;
    }
    Ok(())
}

fn check_outer(m: &CombMap, emb: &Embedding, faces: &[FaceWalk]) -> Result<(), MapError> {
    let outer = m.outer.clone().unwrap_or_default();
    for c in 0..emb.components() {
        let &face = outer.get(&c).ok_or(MapError::MissingOuter(c))?;
        if faces.get(face).map(|f| f.component) != Some(c) {
            return Err(MapError::BadOuter { component: c, face });
        }
    }
    for (&c, &face) in &outer {
        if c >= emb.components() {
            return Err(MapError::BadOuter { component: c, face });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub component: usize,
    pub face: usize,
    pub walk: FaceWalk,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// One face per component, touching all of that component's punctures.
    Accept {
        witnesses: Vec<Witness>,
    },
    Reject {
        reason: String,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

pub fn check_semiframe(m: &CombMap) -> Result<Verdict, MapError> {
    let emb = Embedding::build(m)?;
    let faces = emb.faces();
    emb.check_euler(&faces)?;
    if m.mode == Mode::Fixed {
        check_outer(m, &emb, &faces)?;
    }
    let outer = m.outer.clone().unwrap_or_default();
    let mut witnesses = Vec::new();
    for c in 0..emb.components() {
        let punctures: BTreeSet<u32> = emb.punctures_of(c).collect();
        let covers = |f: &FaceWalk| {
            punctures
                .iter()
                .all(|p| f.vertices.binary_search(p).is_ok())
        };
        match m.mode {
            Mode::Free => {
                let found = faces
                    .iter()
                    .enumerate()
                    .find(|(_, f)| f.component == c && covers(f));
                match found {
                    Some((i, f)) => witnesses.push(Witness {
                        component: c,
                        face: i,
                        walk: f.clone(),
                    }),
                    None => {
                        return Ok(Verdict::Reject {
                            reason: format!(
                                "no face of component {c} touches all of its punctures {:?}",
                                punctures
                            ),
                        })
                    }
                }
            }
            Mode::Fixed => {
                let i = outer[&c];
                let f = &faces[i];
                if let Some(p) = punctures
                    .iter()
                    .find(|p| f.vertices.binary_search(p).is_err())
                {
                    return Ok(Verdict::Reject {
                        reason: format!("designated face {i} of component {c} misses puncture {p}"),
                    });
                }
                witnesses.push(Witness {
                    component: c,
                    face: i,
                    walk: f.clone(),
                });
            }
        }
    }
    Ok(Verdict::Accept { witnesses })
}
