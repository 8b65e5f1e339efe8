//! Building maps from straight-line drawings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dart, trace_faces, twin, CombMap, Edge, Mode, Vertex, VertexKind};
use crate::band::BandGenerator;
use crate::braid::StrandCount;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn sub(a: Point, b: Point) -> Point {
    Point::new(a.x - b.x, a.y - b.y)
}

const EPS: f64 = 1e-12;

struct Planarized {
    map: CombMap,
    coords: HashMap<u32, Point>,
}

/// Planarizes straight segments between points. Point `k` becomes puncture
/// `k + 1`; proper crossings become crossing vertices numbered after the
/// punctures. Segments are assumed in general position (no three through
/// one point, no segment through a third point).
pub fn planarize(points: &[Point], segments: &[(usize, usize)]) -> Result<CombMap> {
    Ok(planarize_inner(points, segments)?.map)
}

fn planarize_inner(points: &[Point], segments: &[(usize, usize)]) -> Result<Planarized> {
    for &(a, b) in segments {
        if a >= points.len() || b >= points.len() || a == b {
            return Err(Error::Input(format!("bad segment ({a}, {b})")));
        }
    }
    let mut coords: HashMap<u32, Point> = HashMap::new();
    let mut vertices = Vec::new();
    for (k, &p) in points.iter().enumerate() {
        let id = k as u32 + 1;
        vertices.push(Vertex {
            id,
            kind: VertexKind::Puncture,
        });
        coords.insert(id, p);
    }
    let mut along: Vec<Vec<(f64, u32)>> = segments
        .iter()
        .map(|&(a, b)| vec![(0.0, a as u32 + 1), (1.0, b as u32 + 1)])
        .collect();
    let mut next_id = points.len() as u32 + 1;
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (a, b) = segments[i];
            let (c, d) = segments[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (p, r) = (points[a], sub(points[b], points[a]));
            let (q, s) = (points[c], sub(points[d], points[c]));
            let denom = cross(r, s);
            if denom.abs() < EPS {
                continue;
            }
            let t = cross(sub(q, p), s) / denom;
            let u = cross(sub(q, p), r) / denom;
            if t > EPS && t < 1.0 - EPS && u > EPS && u < 1.0 - EPS {
                let id = next_id;
                next_id += 1;
                vertices.push(Vertex {
                    id,
                    kind: VertexKind::Crossing,
                });
                coords.insert(id, Point::new(p.x + t * r.x, p.y + t * r.y));
                along[i].push((t, id));
                along[j].push((u, id));
            }
        }
    }
    let mut edges = Vec::new();
    let mut spokes: BTreeMap<u32, Vec<(f64, u32)>> =
        vertices.iter().map(|v| (v.id, Vec::new())).collect();
    for stops in &mut along {
        stops.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in stops.windows(2) {
            let (u, v) = (w[0].1, w[1].1);
            let id = edges.len() as u32;
            edges.push(Edge { id, ends: [u, v] });
            let (pu, pv) = (coords[&u], coords[&v]);
            spokes
                .get_mut(&u)
                .expect("known vertex")
                .push(((pv.y - pu.y).atan2(pv.x - pu.x), dart(id, 0)));
            spokes
                .get_mut(&v)
                .expect("known vertex")
                .push(((pu.y - pv.y).atan2(pu.x - pv.x), dart(id, 1)));
        }
    }
    let rotations = spokes
        .into_iter()
        .map(|(v, mut s)| {
            s.sort_by(|x, y| x.0.total_cmp(&y.0));
            (v, s.into_iter().map(|(_, d)| d).collect())
        })
        .collect();
    Ok(Planarized {
        map: CombMap {
            vertices,
            edges,
            rotations,
            outer: None,
            mode: Mode::Free,
        },
        coords,
    })
}

/// Puncture positions for band drawings: on a parabola, so in convex
/// position, with an irrational shift to avoid concurrent chords.
fn puncture_points(strands: StrandCount) -> Vec<Point> {
    let golden = 0.618_033_988_749_895_f64;
    (1..=strands.as_usize())
        .map(|k| {
            let x = k as f64 + 0.3 * (k as f64 * golden).fract();
            Point::new(x, x * x)
        })
        .collect()
}

/// The drawing of a set of band generators: each `a(t,s)` is the chord
/// from puncture `s` to puncture `t`, punctures in convex position. The map
/// is in fixed mode with the unbounded face of each component designated.
pub fn band_subgraph_map(strands: StrandCount, set: &[BandGenerator]) -> Result<CombMap> {
    let mut chords = BTreeSet::new();
    for g in set {
        if g.strands() != strands {
            return Err(Error::StrandMismatch {
                left: strands.get(),
                right: g.strands().get(),
            });
        }
        chords.insert((g.s() as usize - 1, g.t() as usize - 1));
    }
    let segments: Vec<_> = chords.into_iter().collect();
    let Planarized { mut map, coords } = planarize_inner(&puncture_points(strands), &segments)?;
    let ends: HashMap<u32, [u32; 2]> = map.edges.iter().map(|e| (e.id, e.ends)).collect();
    let faces = trace_faces(&map)?;
    // faces lie to the right of their darts: bounded faces are walked
    // clockwise and the unbounded one has the largest signed area
    let mut outer: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        let area: f64 = f
            .darts
            .iter()
            .map(|&d| {
                let e = ends[&(d / 2)];
                let (from, to) = (e[(d & 1) as usize], e[(twin(d) & 1) as usize]);
                cross(coords[&from], coords[&to])
            })
            .sum();
        let entry = outer.entry(f.component).or_insert((area, i));
        if area > entry.0 {
            *entry = (area, i);
        }
    }
    map.outer = Some(outer.into_iter().map(|(c, (_, i))| (c, i)).collect());
    map.mode = Mode::Fixed;
    Ok(map)
}

/// A random straight-line drawing with `punctures` points in the unit square
/// and up to `arcs` distinct segments between them.
pub fn random_map(seed: u64, punctures: usize, arcs: usize) -> Result<CombMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..punctures)
        .map(|_| Point::new(rng.gen(), rng.gen()))
        .collect();
    let mut chosen = BTreeSet::new();
    let possible = punctures * punctures.saturating_sub(1) / 2;
    while chosen.len() < arcs.min(possible) {
        let a = rng.gen_range(0..punctures);
        let b = rng.gen_range(0..punctures);
        if a != b {
            chosen.insert((a.min(b), a.max(b)));
        }
    }
    planarize(&points, &chosen.into_iter().collect::<Vec<_>>())
}

/// Deletes the whole arc containing `edge`, following it straight through
/// crossing vertices, and smooths crossings left with two darts. The result
/// is in free mode (face indices of the old map no longer apply).
pub fn remove_arc(m: &CombMap, edge: u32) -> Result<CombMap> {
    let mut ends: BTreeMap<u32, [u32; 2]> = m.edges.iter().map(|e| (e.id, e.ends)).collect();
    let kinds: BTreeMap<u32, VertexKind> = m.vertices.iter().map(|v| (v.id, v.kind)).collect();
    let mut rotations = m.rotations.clone();
    if !ends.contains_key(&edge) {
        return Err(Error::Input(format!("no edge {edge}")));
    }
    let mut arc = BTreeSet::from([edge]);
    for end in 0..2 {
        let mut d = dart(edge, end);
        let mut v = ends[&edge][end];
        while kinds.get(&v) == Some(&VertexKind::Crossing) {
            let rot = &rotations[&v];
            let i = rot
                .iter()
                .position(|&x| x == d)
                .ok_or_else(|| Error::Input(format!("dart {d} missing at vertex {v}")))?;
            let straight = rot[(i + 2) % rot.len()];
            let e = straight / 2;
            if !arc.insert(e) {
                break;
            }
            d = twin(straight);
            v = ends[&e][(d & 1) as usize];
        }
    }
    for &e in &arc {
        let [u, v] = ends.remove(&e).expect("arc edge exists");
        for (x, dd) in [(u, dart(e, 0)), (v, dart(e, 1))] {
            if let Some(r) = rotations.get_mut(&x) {
                r.retain(|&y| y != dd);
            }
        }
    }
    let mut removed = BTreeSet::new();
    let crossings: Vec<u32> = kinds
        .iter()
        .filter(|(_, &k)| k == VertexKind::Crossing)
        .map(|(&v, _)| v)
        .collect();
    for c in crossings {
        let rot = rotations[&c].clone();
        match rot.len() {
            0 => {
                removed.insert(c);
            }
            2 => {
                let (d1, d2) = (rot[0], rot[1]);
                let (e1, e2) = (d1 / 2, d2 / 2);
                let (o1, o2) = (twin(d1), twin(d2));
                let v1 = ends[&e1][(o1 & 1) as usize];
                let v2 = ends[&e2][(o2 & 1) as usize];
                ends.remove(&e2);
                ends.insert(e1, [v1, v2]);
                for (x, old, new) in [(v1, o1, dart(e1, 0)), (v2, o2, dart(e1, 1))] {
                    let r = rotations.get_mut(&x).expect("vertex has rotation");
                    if let Some(slot) = r.iter_mut().find(|y| **y == old) {
                        *slot = new;
                    }
                }
                removed.insert(c);
            }
            _ => {}
        }
    }
    for c in &removed {
        rotations.remove(c);
    }
    Ok(CombMap {
        vertices: m
            .vertices
            .iter()
            .filter(|v| !removed.contains(&v.id))
            .cloned()
            .collect(),
        edges: ends
            .into_iter()
            .map(|(id, ends)| Edge { id, ends })
            .collect(),
        rotations,
        outer: None,
        mode: Mode::Free,
    })
}
