//! Combinatorial arcs on a decorated surface, described as face paths:
//! a start point on a dividing-set edge, a sequence of transversally crossed
//! edges, and an end point on a dividing-set edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};

/// An embedded arc with endpoints on the dividing set, recorded by the edges
/// it meets. `start` is the dividing-set dart whose face the arc departs
/// into; each crossing dart names the side approached from (its face is the
/// face the arc occupies before crossing); `end`'s face is the face the arc
/// arrives from. When several points land on one original edge, later points
/// lie on the piece toward that dart's origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceArc {
    pub start: Dart,
    pub crossings: Vec<Dart>,
    pub end: Dart,
}

/// Side of the surface carrying the bypass half-disc.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum HalfDiscSide {
    Front,
    Back,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BypassSpec {
    pub arc: SurfaceArc,
    pub side: HalfDiscSide,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcKind {
    /// Interior crosses the dividing set exactly once (bypass arc).
    Admissible,
    /// Interior disjoint from the dividing set (stabilisation arc).
    DividingFree,
}

impl SurfaceArc {
    /// Face-coherence and label checks; returns the arc kind.
    pub fn classify(&self, map: &CombinatorialMap) -> Result<ArcKind> {
        for d in [self.start, self.end] {
            if !map.contains(d) || *map.label(d) != EdgeLabel::Gamma {
                return Err(MapError::NotAdmissible(format!(
                    "arc endpoint {d:?} is not on the dividing set"
                )));
            }
        }
        let mut face = map.face_id(self.start);
        let mut gamma_crossings = 0usize;
        for d in &self.crossings {
            if !map.contains(*d) {
                return Err(MapError::NotAdmissible(format!("crossing dart {d:?} missing")));
            }
            if map.face_id(*d) != face {
                return Err(MapError::NotAdmissible(format!(
                    "crossing {d:?} does not border the arc's current face"
                )));
            }
            match map.label(*d) {
                EdgeLabel::Gamma => gamma_crossings += 1,
                EdgeLabel::Frame => {}
                other => {
                    return Err(MapError::NotAdmissible(format!(
                        "arc crosses a decorated edge ({other}); clear obstructions first"
                    )));
                }
            }
            face = map.face_id(map.opposite(*d));
        }
        if map.face_id(self.end) != face {
            return Err(MapError::NotAdmissible("arc end does not border its face".into()));
        }
        match gamma_crossings {
            0 => Ok(ArcKind::DividingFree),
            1 => Ok(ArcKind::Admissible),
            n => Err(MapError::NotAdmissible(format!(
                "arc interior meets the dividing set {n} times"
            ))),
        }
    }

    /// Position of the unique interior dividing-set crossing.
    pub fn gamma_position(&self, map: &CombinatorialMap) -> Option<usize> {
        self.crossings.iter().position(|d| *map.label(*d) == EdgeLabel::Gamma)
    }
}

/// Enumerates admissible arcs whose interiors cross at most
/// `max_extra_crossings` scaffolding edges in total (on top of the one
/// dividing-set crossing). Arcs are produced in deterministic dart order.
pub fn enumerate_admissible_arcs(
    map: &CombinatorialMap,
    max_extra_crossings: usize,
) -> Vec<SurfaceArc> {
    enumerate_arcs(map, max_extra_crossings, true)
}

/// Enumerates arcs with dividing-set-free interiors (stabilisation arcs).
pub fn enumerate_dividing_free_arcs(
    map: &CombinatorialMap,
    max_extra_crossings: usize,
) -> Vec<SurfaceArc> {
    enumerate_arcs(map, max_extra_crossings, false)
}

fn enumerate_arcs(
    map: &CombinatorialMap,
    max_extra: usize,
    need_gamma: bool,
) -> Vec<SurfaceArc> {
    let gamma_darts: Vec<Dart> =
        map.darts().filter(|d| *map.label(*d) == EdgeLabel::Gamma).collect();
    let mut out = Vec::new();
    for &start in &gamma_darts {
        // Depth-first over (face, crossings so far, gamma used).
        let mut stack: Vec<(Dart, Vec<Dart>, bool, usize)> =
            vec![(map.face_id(start), Vec::new(), false, 0)];
        while let Some((face, path, used_gamma, extra)) = stack.pop() {
            if used_gamma == need_gamma {
                for &end in &gamma_darts {
                    if map.face_id(end) == face {
                        let arc = SurfaceArc { start, crossings: path.clone(), end };
                        if arc.classify(map).is_ok() {
                            out.push(arc);
                        }
                    }
                }
            }
            // Extend.
            let mut face_darts: BTreeSet<Dart> = BTreeSet::new();
            for d in map.face_cycle(face) {
                face_darts.insert(d);
            }
            for d in face_darts {
                match map.label(d) {
                    EdgeLabel::Gamma if !used_gamma && need_gamma => {
                        let mut p = path.clone();
                        p.push(d);
                        stack.push((map.face_id(map.opposite(d)), p, true, extra));
                    }
                    EdgeLabel::Frame if extra < max_extra => {
                        let mut p = path.clone();
                        p.push(d);
                        stack.push((map.face_id(map.opposite(d)), p, used_gamma, extra + 1));
                    }
                    _ => {}
                }
            }
        }
    }
    out.sort_by(|a, b| (a.start, &a.crossings, a.end).cmp(&(b.start, &b.crossings, b.end)));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn enumerate_on_two_gamma_torus() {
        let m = build::torus_parallel_circles(2, EdgeLabel::Gamma);
        let arcs = enumerate_admissible_arcs(&m, 1);
        assert!(!arcs.is_empty());
        for a in &arcs {
            assert_eq!(a.classify(&m).unwrap(), ArcKind::Admissible);
        }
    }

    #[test]
    fn stab_arcs_on_sphere() {
        let m = build::sphere_one_circle(EdgeLabel::Gamma);
        let arcs = enumerate_dividing_free_arcs(&m, 0);
        assert!(!arcs.is_empty());
        for a in &arcs {
            assert_eq!(a.classify(&m).unwrap(), ArcKind::DividingFree);
        }
    }
}
