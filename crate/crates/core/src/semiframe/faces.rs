use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{twin, CombMap, MapError, VertexKind};

/// One face: its boundary darts in walk order and the ids of the vertices
/// it touches (sorted). An isolated vertex has a single face with no darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub component: usize,
    pub darts: Vec<u32>,
    pub vertices: Vec<u32>,
}

/// Index structures over a checked map.
pub(super) struct Embedding {
    vertex_ids: Vec<u32>,
    kinds: Vec<VertexKind>,
    component_of: Vec<usize>,
    components: usize,
    edge_count: Vec<usize>,
    dart_vertex: BTreeMap<u32, usize>,
    successor: HashMap<u32, u32>,
}

impl Embedding {
    pub(super) fn build(m: &CombMap) -> Result<Self, MapError> {
        let mut order: Vec<(u32, VertexKind)> = Vec::with_capacity(m.vertices.len());
        for v in &m.vertices {
            order.push((v.id, v.kind));
        }
        order.sort_by_key(|&(id, _)| id);
        for w in order.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(MapError::DuplicateVertex(w[0].0));
            }
        }
        let vertex_ids: Vec<u32> = order.iter().map(|&(id, _)| id).collect();
        let kinds: Vec<VertexKind> = order.iter().map(|&(_, k)| k).collect();
        let index_of = |id: u32| vertex_ids.binary_search(&id).ok();

        let mut dart_vertex = BTreeMap::new();
        let mut adjacency = vec![Vec::new(); vertex_ids.len()];
        let mut seen_edges = std::collections::HashSet::new();
        for e in &m.edges {
            if !seen_edges.insert(e.id) {
                return Err(MapError::DuplicateEdge(e.id));
            }
            if e.id >= u32::MAX / 2 {
                return Err(MapError::EdgeIdTooLarge(e.id));
            }
            let mut idx = [0usize; 2];
            for (end, &v) in e.ends.iter().enumerate() {
                idx[end] = index_of(v).ok_or(MapError::UnknownVertex {
                    edge: e.id,
                    vertex: v,
                })?;
                dart_vertex.insert(super::dart(e.id, end), idx[end]);
            }
            if idx[0] == idx[1] {
                return Err(MapError::Loop {
                    edge: e.id,
                    vertex: e.ends[0],
                });
            }
            adjacency[idx[0]].push(idx[1]);
            adjacency[idx[1]].push(idx[0]);
        }

        for &v in m.rotations.keys() {
            if index_of(v).is_none() {
                return Err(MapError::RotationForUnknownVertex(v));
            }
        }
        let mut successor = HashMap::new();
        let mut listed = std::collections::HashSet::new();
        for (vi, &vid) in vertex_ids.iter().enumerate() {
            let rot = m.rotations.get(&vid).map(Vec::as_slice).unwrap_or(&[]);
            for &d in rot {
                let &owner = dart_vertex.get(&d).ok_or(MapError::UnknownDart {
                    vertex: vid,
                    dart: d,
                })?;
                if owner != vi {
                    return Err(MapError::DartAtWrongVertex {
                        dart: d,
                        vertex: vid,
                        expected: vertex_ids[owner],
                    });
                }
                if !listed.insert(d) {
                    return Err(MapError::DuplicateDart(d));
                }
            }
            for (k, &d) in rot.iter().enumerate() {
                successor.insert(d, rot[(k + 1) % rot.len()]);
            }
            if kinds[vi] == VertexKind::Crossing && rot.len() != 4 {
                return Err(MapError::CrossingDegree {
                    vertex: vid,
                    degree: rot.len(),
                });
            }
        }
        if let Some(&d) = dart_vertex.keys().find(|d| !listed.contains(d)) {
            return Err(MapError::MissingDart(d));
        }

        // components, numbered by smallest vertex id
        let mut component_of = vec![usize::MAX; vertex_ids.len()];
        let mut components = 0;
        for start in 0..vertex_ids.len() {
            if component_of[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component_of[start] = components;
            while let Some(v) = stack.pop() {
                for &w in &adjacency[v] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = components;
                        stack.push(w);
                    }
                }
            }
            components += 1;
        }
        let mut edge_count = vec![0; components];
        for e in &m.edges {
            let v = index_of(e.ends[0]).expect("checked above");
            edge_count[component_of[v]] += 1;
        }

        Ok(Embedding {
            vertex_ids,
            kinds,
            component_of,
            components,
            edge_count,
            dart_vertex,
            successor,
        })
    }

    pub(super) fn components(&self) -> usize {
        self.components
    }

    pub(super) fn punctures_of(&self, c: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_ids.len())
            .filter(move |&v| self.component_of[v] == c && self.kinds[v] == VertexKind::Puncture)
            .map(|v| self.vertex_ids[v])
    }

    /// Face walks, grouped by component; within a component, in order of
    /// their smallest dart.
    pub(super) fn faces(&self) -> Vec<FaceWalk> {
        let mut faces = Vec::new();
        let mut done = std::collections::HashSet::new();
        for (&start, &v) in &self.dart_vertex {
            if done.contains(&start) {
                continue;
            }
            let mut darts = Vec::new();
            let mut vertices = Vec::new();
            let mut d = start;
            loop {
                done.insert(d);
                darts.push(d);
                vertices.push(self.vertex_ids[self.dart_vertex[&d]]);
                d = self.successor[&twin(d)];
                if d == start {
                    break;
                }
            }
            vertices.sort_unstable();
            vertices.dedup();
            faces.push(FaceWalk {
                component: self.component_of[v],
                darts,
                vertices,
            });
        }
        for (v, &id) in self.vertex_ids.iter().enumerate() {
            if !self.dart_vertex.values().any(|&owner| owner == v) {
                faces.push(FaceWalk {
                    component: self.component_of[v],
                    darts: Vec::new(),
                    vertices: vec![id],
                });
            }
        }
        faces.sort_by_key(|f| f.component);
        faces
    }

    pub(super) fn check_euler(&self, faces: &[FaceWalk]) -> Result<(), MapError> {
        let mut v = vec![0i64; self.components];
        for &c in &self.component_of {
            v[c] += 1;
        }
        let mut f = vec![0i64; self.components];
        for face in faces {
            f[face.component] += 1;
        }
        for c in 0..self.components {
            let euler = v[c] - self.edge_count[c] as i64 + f[c];
            if euler != 2 {
                return Err(MapError::NonPlanar {
                    component: c,
                    euler,
                });
            }
        }
        Ok(())
    }
}

/// All faces of a valid map, grouped by component.
pub fn trace_faces(m: &CombMap) -> Result<Vec<FaceWalk>, MapError> {
    let emb = Embedding::build(m)?;
    let faces = emb.faces();
    emb.check_euler(&faces)?;
    Ok(faces)
}
