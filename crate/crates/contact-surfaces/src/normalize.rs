//! Bigon reduction: the engine's stand-in for small convex isotopies.
//!
//! An inessential bigon is a disc piece of an overlay bounded by one dividing
//! strand and one alpha/beta/aux strand meeting at two transversal crossings,
//! with nothing else of that overlay inside. Removing it slides the strand
//! across the dividing arc; strands of the other overlay and scaffolding in
//! the way are crossed anew on the far side. Detection is innermost-first by
//! construction (bigons are complementary pieces) and deterministic (lowest
//! strand dart).

use serde::{Deserialize, Serialize};

use crate::map::{CombinatorialMap, Dart, EdgeLabel, SystemKind};
use crate::reduce::{overlay, reduced_face_next, OverlaySide};
use crate::surgery::{sever, transverse_pair, Router};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BigonRemoval {
    pub gamma_label: EdgeLabel,
    pub other_label: EdgeLabel,
    pub corner1: Dart,
    pub corner2: Dart,
}

/// One detected bigon: the two boundary runs in full darts.
struct Bigon {
    /// Dividing-set run, directed from corner1 to corner2.
    gamma_run: Vec<Dart>,
    /// Other-strand run, directed from corner2 to corner1.
    other_run: Vec<Dart>,
}

fn find_bigon(map: &CombinatorialMap, side: OverlaySide) -> Option<Bigon> {
    let ov = overlay(map, side, None);
    let mut best: Option<(Dart, Bigon)> = None;
    for piece in ov.pieces.values() {
        if piece.is_hole || piece.genus != 0 || piece.boundary_cycles != 1 {
            continue;
        }
        // A free circle bordering this piece rules it out.
        if ov
            .free_circles
            .iter()
            .any(|fc| fc.left_piece == piece.id || fc.right_piece == piece.id)
        {
            continue;
        }
        // Walk the boundary cycle; find a visible dart on it.
        let Some(start) = piece
            .faces
            .iter()
            .flat_map(|f| map.face_cycle(*f))
            .find(|d| side.sees(map.label(*d)))
        else {
            continue;
        };
        let mut walk = vec![start];
        let mut cur = reduced_face_next(map, side, start);
        while cur != start {
            walk.push(cur);
            cur = reduced_face_next(map, side, cur);
        }
        // Corners: positions where the label system changes.
        let n = walk.len();
        let corners: Vec<usize> = (0..n)
            .filter(|&i| {
                map.label(walk[i]).system() != map.label(walk[(i + n - 1) % n]).system()
            })
            .collect();
        if corners.len() != 2 {
            continue;
        }
        let (i, j) = (corners[0], corners[1]);
        let run1: Vec<Dart> = (i..j).map(|k| walk[k]).collect();
        let run2: Vec<Dart> = (j..j + n - (j - i)).map(|k| walk[k % n]).collect();
        let sys1 = map.label(run1[0]).system();
        let sys2 = map.label(run2[0]).system();
        let (gamma_run, other_run) = match (sys1, sys2) {
            (SystemKind::Gamma, SystemKind::Alpha | SystemKind::Beta | SystemKind::Aux) => {
                (run1, run2)
            }
            (SystemKind::Alpha | SystemKind::Beta | SystemKind::Aux, SystemKind::Gamma) => {
                (run2, run1)
            }
            _ => continue,
        };
        // Corner vertices must be plain degree-4 crossings.
        let c1 = gamma_run[0];
        let c2 = other_run[0];
        if map.degree(c1) != 4 || map.degree(c2) != 4 {
            continue;
        }
        let key = *other_run.iter().min().unwrap();
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, Bigon { gamma_run, other_run }));
        }
    }
    best.map(|(_, b)| b)
}

fn remove_bigon(map: &mut CombinatorialMap, bigon: &Bigon) -> BigonRemoval {
    let Bigon { gamma_run, other_run } = bigon;
    let record = BigonRemoval {
        gamma_label: map.label(gamma_run[0]).clone(),
        other_label: map.label(other_run[0]).clone(),
        corner1: map.vertex_id(gamma_run[0]),
        corner2: map.vertex_id(other_run[0]),
    };
    let other_label = map.label(other_run[0]).clone();

    // Continuations of the other strand beyond the two corners. The walk
    // direction gives: other_run starts at corner2 and ends entering corner1.
    // At corner2 the strand arrives from outside via the dart opposite to the
    // continuation; the outward continuation at corner2 is the other
    // same-label dart at that vertex.
    let at_c2 = other_run[0];
    let out2 = map
        .vertex_cycle(at_c2)
        .into_iter()
        .find(|x| *x != at_c2 && *map.label(*x) == other_label)
        .expect("strand continues past corner");
    let last = *other_run.last().unwrap();
    let arrive_c1 = map.opposite(last);
    let out1 = map
        .vertex_cycle(arrive_c1)
        .into_iter()
        .find(|x| *x != arrive_c1 && *map.label(*x) == other_label)
        .expect("strand continues past corner");

    // The far-side transverse sub-edges along the gamma run, in order from
    // corner1 to corner2. Pieces lie right of their boundary walk, so the
    // bigon is right of the gamma run and the far side is left.
    let mut cross_list: Vec<Dart> = Vec::new();
    for w in 1..gamma_run.len() {
        let onward = gamma_run[w];
        let backward = map.opposite(gamma_run[w - 1]);
        if let Ok((left, _right)) = transverse_pair(map, onward, backward) {
            cross_list.push(map.opposite(left));
        }
        // Non-crossing pass-through vertices (subdivisions) cross nothing.
    }

    // Retire the inner run to frame scaffolding so the underlying surface
    // keeps its shape, then detach the strand continuations.
    for d in other_run {
        map.set_label(*d, EdgeLabel::Frame);
    }
    let anchor1 = map.prev_at_vertex(out1);
    sever(map, out1);
    sever(map, out2);

    // Route the replacement on the far side, from corner1's stub to corner2's.
    let mut router = Router::start(map, out1, other_label);
    for q in &cross_list {
        router.cross(*q);
    }
    router.finish(out2);
    // Tether the rerouted strand into the vacated corner slot so it cannot
    // float off the surface when it crosses nothing.
    tether(map, out2, anchor1);
    map.smooth_all();
    record
}

/// Adds a frame edge from the vertex of `at` to the vertex of `anchor_after`
/// (inserted after it). The rotational slot at the first vertex is not
/// determined by combinatorics alone, so the placement that preserves the
/// Euler characteristic is selected.
pub(crate) fn tether(map: &mut CombinatorialMap, at: Dart, anchor_after: Dart) {
    let chi_before = euler_of(map);
    let (t1, t2) = map.add_edge(EdgeLabel::Frame);
    let n2 = map.next_at_vertex(anchor_after);
    map.set_next(anchor_after, t2);
    map.set_next(t2, n2);
    let slots: Vec<Dart> = map
        .vertex_cycle(at)
        .into_iter()
        .filter(|d| *d != t1 && *d != t2)
        .collect();
    for slot in slots {
        let n1 = map.next_at_vertex(slot);
        map.set_next(slot, t1);
        map.set_next(t1, n1);
        if euler_of(map) == chi_before {
            return;
        }
        // Undo and try the next slot.
        map.set_next(slot, n1);
        map.set_next(t1, t1);
    }
    // Fall back to the first slot; validation downstream will object.
    let n1 = map.next_at_vertex(at);
    map.set_next(at, t1);
    map.set_next(t1, n1);
}

/// Euler characteristic of a possibly mid-surgery map (holes excluded).
pub fn euler_of_pub(map: &CombinatorialMap) -> i64 {
    euler_of(map)
}

fn euler_of(map: &CombinatorialMap) -> i64 {
    let mut v = std::collections::BTreeSet::new();
    let mut f = std::collections::BTreeSet::new();
    let mut e = 0i64;
    for d in map.darts() {
        v.insert(map.vertex_id(d));
        if !map.is_outer(d) {
            f.insert(map.face_id(d));
        }
        if d < map.opposite(d) {
            e += 1;
        }
    }
    v.len() as i64 - e + f.len() as i64
}

/// Removes inessential bigons between the dividing set and each decorated
/// system until none remain; also smooths subdivision vertices. Idempotent
/// up to isomorphism.
pub fn normalize(map: &CombinatorialMap) -> (CombinatorialMap, Vec<BigonRemoval>) {
    let mut m = map.clone();
    m.smooth_all();
    let mut trace = Vec::new();
    loop {
        let found = find_bigon(&m, OverlaySide::A)
            .map(|b| (OverlaySide::A, b))
            .or_else(|| find_bigon(&m, OverlaySide::B).map(|b| (OverlaySide::B, b)));
        match found {
            Some((_side, bigon)) => {
                trace.push(remove_bigon(&mut m, &bigon));
                m.smooth_all();
            }
            None => break,
        }
    }
    debug_assert!(m.validate().is_ok());
    (m, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::map::{EdgeLabel, MapBuilder};

    /// Sphere with a gamma circle and an alpha circle crossing it twice,
    /// bounding an empty bigon.
    fn sphere_with_bigon() -> CombinatorialMap {
        let mut b = MapBuilder::new();
        // gamma circle through crossings X, Y: edges (0,1) X->Y north, (2,3) Y->X south
        // alpha circle: edges (4,5) X->Y inside the bigon, (6,7) Y->X outside
        b.edge(0, 1).edge(2, 3).edge(4, 5).edge(6, 7);
        b.label(EdgeLabel::Gamma, &[0, 2]);
        b.label(EdgeLabel::Alpha(0), &[4, 6]);
        // X: ccw (gamma upper out 0, alpha outer 7, gamma lower 3, alpha inner 4)
        b.vertex(&[0, 7, 3, 4]);
        // Y: ccw (gamma upper in 1, alpha inner in 5, alpha outer out 6, gamma lower out 2)
        b.vertex(&[1, 5, 2, 6]);
        b.finish().expect("bigon sphere")
    }

    #[test]
    fn removes_empty_bigon() {
        let m = sphere_with_bigon();
        assert_eq!(m.euler_and_genus().unwrap(), (2, 0, 1));
        let (n, trace) = normalize(&m);
        assert_eq!(trace.len(), 1);
        n.validate().unwrap();
        assert_eq!(n.euler_and_genus().unwrap(), (2, 0, 1));
        // After removal the curves are disjoint: no alpha-gamma crossings.
        let crossings = n
            .darts()
            .filter(|d| {
                let cyc = n.vertex_cycle(*d);
                cyc.iter().any(|x| matches!(n.label(*x), EdgeLabel::Alpha(_)))
                    && cyc.iter().any(|x| *n.label(*x) == EdgeLabel::Gamma)
            })
            .count();
        assert_eq!(crossings, 0);
        // Component counts survive.
        assert_eq!(n.component_count(|l| *l == EdgeLabel::Gamma), 1);
        assert_eq!(n.component_count(|l| matches!(l, EdgeLabel::Alpha(_))), 1);
    }

    #[test]
    fn normalize_is_idempotent_and_conservative() {
        let m = build::genus1_s3_map();
        let (n, trace) = normalize(&m);
        assert!(trace.is_empty(), "reduced diagram has no bigons");
        assert_eq!(n.euler_and_genus().unwrap(), m.euler_and_genus().unwrap());
        let (n2, trace2) = normalize(&n);
        assert!(trace2.is_empty());
        assert_eq!(n2.euler_and_genus().unwrap(), (0, 1, 1));
    }
}
