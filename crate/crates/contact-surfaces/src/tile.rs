//! Planar tiles built from integer-coordinate polylines.
//!
//! Local rewrites (bypass attachment, stabilisation tubes, handle models)
//! are installed by cutting out a corridor disc and gluing in a replacement
//! tile. Building the tile from explicit coordinates makes every rotation a
//! geometric fact: out-darts at each vertex are sorted by angle, so no
//! orientation bookkeeping is left to convention.

use std::collections::BTreeMap;

use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};

pub type Pt = (i64, i64);

/// One strand of a tile: an open polyline with a label. Endpoints become
/// loose stubs to be threaded into the seam (or into portal circles).
#[derive(Clone, Debug)]
pub struct Strand {
    pub label: EdgeLabel,
    pub points: Vec<Pt>,
}

/// A tile assembled from strands: the loose stub darts at each polyline
/// endpoint, keyed by the endpoint coordinate.
#[derive(Clone, Debug)]
pub struct Tile {
    pub map: CombinatorialMap,
    /// Stub dart at each open endpoint (dart points away from the endpoint
    /// into the tile).
    pub stubs: BTreeMap<Pt, Dart>,
}

fn seg_dir(a: Pt, b: Pt) -> (i64, i64) {
    ((b.0 - a.0).signum(), (b.1 - a.1).signum())
}

fn angle_rank(d: (i64, i64)) -> usize {
    // Counterclockwise order starting from east.
    match d {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => panic!("degenerate direction"),
    }
}

fn on_segment(p: Pt, a: Pt, b: Pt) -> bool {
    if a.0 == b.0 {
        p.0 == a.0 && p.1 > a.1.min(b.1) && p.1 < a.1.max(b.1)
    } else if a.1 == b.1 {
        p.1 == a.1 && p.0 > a.0.min(b.0) && p.0 < a.0.max(b.0)
    } else {
        false
    }
}

fn seg_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> Option<Pt> {
    // Axis-aligned transversal crossings only.
    if a.0 == b.0 && c.1 == d.1 {
        let p = (a.0, c.1);
        if on_segment(p, a, b) && on_segment(p, c, d) {
            return Some(p);
        }
    } else if a.1 == b.1 && c.0 == d.0 {
        let p = (c.0, a.1);
        if on_segment(p, a, b) && on_segment(p, c, d) {
            return Some(p);
        }
    }
    None
}

/// Builds the planar map of an arrangement of axis-aligned polylines.
/// Polylines must meet transversally at interior points (no shared
/// endpoints, no overlapping segments, no triple points).
pub fn build_tile(strands: &[Strand]) -> Result<Tile> {
    // Collect all vertices: polyline corners and endpoints, plus crossings.
    let mut points: BTreeMap<Pt, ()> = BTreeMap::new();
    for s in strands {
        for p in &s.points {
            points.insert(*p, ());
        }
    }
    let mut segs: Vec<(usize, Pt, Pt)> = Vec::new();
    for (si, s) in strands.iter().enumerate() {
        for w in s.points.windows(2) {
            segs.push((si, w[0], w[1]));
        }
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if let Some(p) = seg_cross(segs[i].1, segs[i].2, segs[j].1, segs[j].2) {
                points.insert(p, ());
            }
        }
    }
    // Split each polyline at every point lying on it; emit darts.
    let mut m = CombinatorialMap::new();
    // at each vertex: (direction -> dart)
    let mut at_vertex: BTreeMap<Pt, Vec<((i64, i64), Dart)>> = BTreeMap::new();
    let mut endpoints: BTreeMap<Pt, Dart> = BTreeMap::new();
    for s in strands {
        // Walk the polyline, collecting the ordered point sequence.
        let mut walk: Vec<Pt> = Vec::new();
        for w in s.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut on: Vec<Pt> =
                points.keys().copied().filter(|p| on_segment(*p, a, b)).collect();
            on.sort_by_key(|p| (p.0 - a.0).abs() + (p.1 - a.1).abs());
            if walk.is_empty() {
                walk.push(a);
            }
            walk.extend(on);
            walk.push(b);
        }
        for w in walk.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (d1, d2) = m.add_edge(s.label.clone());
            at_vertex.entry(a).or_default().push((seg_dir(a, b), d1));
            at_vertex.entry(b).or_default().push((seg_dir(b, a), d2));
        }
        let first = *walk.first().unwrap();
        let last = *walk.last().unwrap();
        for p in [first, last] {
            let dirs = at_vertex.get(&p).map(|v| v.len()).unwrap_or(0);
            let _ = dirs;
        }
        let fdart = at_vertex[&first]
            .iter()
            .find(|(dir, _)| *dir == seg_dir(walk[0], walk[1]))
            .unwrap()
            .1;
        let ldart = at_vertex[&last]
            .iter()
            .find(|(dir, _)| *dir == seg_dir(walk[walk.len() - 1], walk[walk.len() - 2]))
            .unwrap()
            .1;
        endpoints.insert(first, fdart);
        endpoints.insert(last, ldart);
    }
    // Rotations: counterclockwise by angle.
    for (p, darts) in &at_vertex {
        let mut ds = darts.clone();
        ds.sort_by_key(|(dir, _)| angle_rank(*dir));
        let cycle: Vec<Dart> = ds.iter().map(|(_, d)| *d).collect();
        if cycle.len() == 1 {
            m.set_next(cycle[0], cycle[0]);
        } else {
            m.set_vertex_cycle(&cycle);
        }
        let _ = p;
    }
    // Sanity: endpoints must be degree-1 (true stubs).
    for (p, d) in &endpoints {
        if at_vertex[p].len() != 1 {
            return Err(MapError::InvalidMap(format!(
                "tile endpoint {p:?} is not loose (degree {})",
                at_vertex[p].len()
            )));
        }
        let _ = d;
    }
    Ok(Tile { map: m, stubs: endpoints })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_strands_build_a_valid_tile() {
        let t = build_tile(&[
            Strand { label: EdgeLabel::Gamma, points: vec![(0, -10), (0, 10)] },
            Strand { label: EdgeLabel::Frame, points: vec![(-10, 0), (10, 0)] },
        ])
        .unwrap();
        t.map.validate().unwrap();
        assert_eq!(t.stubs.len(), 4);
        assert_eq!(t.map.dart_count(), 8);
        // One degree-4 crossing with alternating labels.
        let v = t.map.vertex_cycle(t.map.vertex_id(t.map.darts().next().unwrap()));
        let _ = v;
    }

    #[test]
    fn bent_polyline_has_two_stubs() {
        let t = build_tile(&[Strand {
            label: EdgeLabel::Gamma,
            points: vec![(0, 0), (10, 0), (10, 10)],
        }])
        .unwrap();
        t.map.validate().unwrap();
        assert_eq!(t.stubs.len(), 2);
    }
}

/// Cuts out a disc neighbourhood of an arc (the corridor) and installs a
/// replacement tile.
///
/// `north_qs` lists, in corridor order, the crossing darts for the fence's
/// pass along one side: each dart's face is the side the fence approaches
/// from. The fence crosses each strand once more on the return pass through
/// the old opposite darts, then closes. The tile provides replacement
/// strands; `seam_coords` lists its stub coordinates in fence order (the
/// outward pass, then the return pass in reverse corridor order).
///
/// Returns the new map plus the translation of tile darts into it.
pub fn replace_corridor(
    map: &CombinatorialMap,
    north_qs: &[Dart],
    tile: &Tile,
    seam_coords: &[Pt],
) -> Result<(CombinatorialMap, BTreeMap<Dart, Dart>)> {
    use crate::cutglue::{build_seam, cut_along_component, SeamItem};
    use crate::surgery::Router;

    let mut m = map.clone();
    let south_qs: Vec<Dart> = north_qs.iter().rev().map(|q| m.opposite(*q)).collect();
    let labels: Vec<EdgeLabel> = north_qs.iter().map(|q| m.label(*q).clone()).collect();

    // Route the closed fence: dummy west cap, outward pass, return pass.
    let fence_label = EdgeLabel::Aux("corridor-fence".into());
    let (t_a, t_b) = m.add_edge(fence_label.clone());
    m.set_next(t_a, t_a);
    m.set_next(t_b, t_b);
    let mut router = Router::start(&mut m, t_b, fence_label.clone());
    for q in north_qs {
        router.cross(*q);
    }
    for q in &south_qs {
        router.cross(*q);
    }
    let first_laid = router.laid[0];
    router.finish(t_a);

    // Cut along the fence; its left side is the main piece.
    let (cut, trace) = cut_along_component(&m, first_laid)?;
    let mut m = cut;
    // Delete the corridor component (right side).
    let mut corridor_darts = std::collections::BTreeSet::new();
    for comp in m.components() {
        if trace.stubs.iter().flatten().any(|s| comp.contains(&s.right)) {
            corridor_darts.extend(comp.iter().copied());
        }
    }
    if corridor_darts.is_empty() {
        return Err(MapError::InvalidMap("corridor side not found after cutting".into()));
    }
    // The corridor must be a disc and must not contain main-side stubs.
    for s in trace.stubs.iter().flatten() {
        if corridor_darts.contains(&s.left) {
            return Err(MapError::InvalidMap(
                "fence does not separate a disc corridor".into(),
            ));
        }
    }
    for d in &corridor_darts {
        m.remove_dart(*d);
    }

    // Install the tile.
    let (mut m2, tr) = m.disjoint_union(&tile.map);
    let n = trace.stubs.len();
    if seam_coords.len() != n {
        return Err(MapError::InvalidMap(format!(
            "seam coordinate count {} does not match fence crossings {n}",
            seam_coords.len()
        )));
    }
    // Dissolve the hole circle on the main side, collecting stubs in fence
    // order via the trace.
    let mut items: Vec<SeamItem> = Vec::new();
    let mut doomed = std::collections::BTreeSet::new();
    for (i, s) in trace.stubs.iter().enumerate() {
        let s = s.as_ref().ok_or_else(|| {
            MapError::InvalidMap("fence vertex without a transverse strand".into())
        })?;
        let tile_stub = tile
            .stubs
            .get(&seam_coords[i])
            .ok_or_else(|| {
                MapError::InvalidMap(format!("tile has no stub at {:?}", seam_coords[i]))
            })?;
        let a = s.left;
        let b = tr[tile_stub];
        let expect = &labels[if i < north_qs.len() { i } else { n - 1 - i }];
        if m2.label(a) != expect || m2.label(b) != expect {
            return Err(MapError::InvalidMap(format!(
                "seam position {i}: strand labels disagree ({} vs {} vs {expect})",
                m2.label(a),
                m2.label(b)
            )));
        }
        items.push(SeamItem { a_stub: Some(a), b_stub: Some(b) });
    }
    // Free the stubs and drop the boundary circle of the main side.
    for d in &trace.hole_left {
        if m2.contains(*d) {
            doomed.insert(*d);
            doomed.insert(m2.opposite(*d));
        }
    }
    for it in &items {
        for s in [it.a_stub.unwrap(), it.b_stub.unwrap()] {
            m2.set_next(s, s);
        }
    }
    for d in doomed {
        m2.remove_dart(d);
    }
    build_seam(&mut m2, &items);
    m2.smooth_all();
    m2.validate()?;
    Ok((m2, tr))
}
