//! Reduced views of a decorated map.
//!
//! Equivalence of decorated surfaces must not see scaffolding: frame edges,
//! subdivision vertices, and the crossing positions of the alpha system with
//! the beta system are all artifacts of construction. The reduced view keeps
//! only *events* (vertices where visible curves genuinely interact), threads
//! curve strands through everything else, and annotates the complementary
//! pieces of each overlay with their genus so that non-disc complements stay
//! distinguishable without frame edges.

use std::collections::{BTreeMap, BTreeSet};

use crate::map::{CombinatorialMap, Dart, EdgeLabel, SystemKind};

/// Which labels an overlay sees.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OverlaySide {
    /// Gamma + alpha + aux + boundary (beta invisible).
    A,
    /// Gamma + beta + aux + boundary (alpha invisible).
    B,
    /// Everything except frame.
    Full,
    /// Gamma + aux + boundary only.
    GammaOnly,
}

impl OverlaySide {
    pub fn sees(&self, label: &EdgeLabel) -> bool {
        match label.system() {
            SystemKind::Frame => false,
            SystemKind::Gamma | SystemKind::Aux | SystemKind::Boundary => true,
            SystemKind::Alpha => matches!(self, OverlaySide::A | OverlaySide::Full),
            SystemKind::Beta => matches!(self, OverlaySide::B | OverlaySide::Full),
        }
    }
}

/// Complementary piece of an overlay: a component of the surface minus the
/// overlay-visible curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    /// Canonical id: minimal full-map face representative.
    pub id: Dart,
    pub faces: BTreeSet<Dart>,
    pub genus: i64,
    /// Number of boundary cycles (reduced faces plus free-circle sides plus holes).
    pub boundary_cycles: usize,
    /// True if this piece is a hole of a surface with boundary.
    pub is_hole: bool,
    /// Sign from a 2-coloring, when one is attached to the map.
    pub color: Option<bool>,
}

/// A visible curve component carrying no events: invisible to the dart-level
/// search, recorded as an annotation between its two side pieces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeCircle {
    pub label: EdgeLabel,
    pub left_piece: Dart,
    pub right_piece: Dart,
}

/// Overlay of one side: pieces plus free circles.
#[derive(Clone, Debug)]
pub struct Overlay {
    pub side: OverlaySide,
    /// full-face representative -> piece id
    pub piece_of_face: BTreeMap<Dart, Dart>,
    pub pieces: BTreeMap<Dart, Piece>,
    pub free_circles: Vec<FreeCircle>,
}

impl Overlay {
    pub fn piece_left_of(&self, map: &CombinatorialMap, d: Dart) -> Dart {
        self.piece_of_face[&map.face_id(d)]
    }
}

/// Computes the set of event vertices shared by both overlays. A vertex is an
/// event if, in the A overlay or in the B overlay, its visible darts are not
/// just one strand passing through (exactly two darts of equal label).
pub fn event_vertices(map: &CombinatorialMap) -> BTreeSet<Dart> {
    let mut events = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for d in map.darts() {
        let v = map.vertex_id(d);
        if !seen.insert(v) {
            continue;
        }
        if is_event(map, v) {
            events.insert(v);
        }
    }
    events
}

fn anchored_in(map: &CombinatorialMap, v: Dart, side: OverlaySide) -> bool {
    let vis: Vec<Dart> =
        map.vertex_cycle(v).into_iter().filter(|x| side.sees(map.label(*x))).collect();
    if vis.is_empty() {
        return false;
    }
    !(vis.len() == 2 && map.label(vis[0]) == map.label(vis[1]))
}

pub fn is_event(map: &CombinatorialMap, v: Dart) -> bool {
    anchored_in(map, v, OverlaySide::A) || anchored_in(map, v, OverlaySide::B)
}

/// Follows the strand of `d` (same label) through non-event vertices;
/// returns the arrival dart (out-dart at the first event vertex reached), or
/// None if the strand closes up without meeting an event (free circle).
pub fn thread(map: &CombinatorialMap, events: &BTreeSet<Dart>, d: Dart) -> Option<Dart> {
    let mut cur = map.opposite(d);
    loop {
        if events.contains(&map.vertex_id(cur)) {
            return Some(cur);
        }
        let lab = map.label(cur);
        let nxt = map
            .vertex_cycle(cur)
            .into_iter()
            .find(|x| *x != cur && map.label(*x) == lab)?;
        cur = map.opposite(nxt);
        if cur == map.opposite(d) {
            return None;
        }
    }
}

/// The visible out-darts at an event vertex, in rotation order, for one side.
pub fn visible_at(map: &CombinatorialMap, side: OverlaySide, v: Dart) -> Vec<Dart> {
    map.vertex_cycle(v).into_iter().filter(|x| side.sees(map.label(*x))).collect()
}

/// Builds the overlay piece structure for one side.
pub fn overlay(map: &CombinatorialMap, side: OverlaySide, colors: Option<&BTreeMap<Dart, bool>>) -> Overlay {
    // Union-find over non-hole faces, merging across invisible edges.
    let faces = map.faces();
    let mut face_rep: BTreeMap<Dart, Dart> = BTreeMap::new();
    let mut hole: BTreeMap<Dart, bool> = BTreeMap::new();
    for f in &faces {
        let id = *f.iter().min().unwrap();
        face_rep.insert(id, id);
        hole.insert(id, map.is_outer(f[0]));
    }
    fn find(rep: &mut BTreeMap<Dart, Dart>, x: Dart) -> Dart {
        let mut r = x;
        while rep[&r] != r {
            r = rep[&r];
        }
        let mut cur = x;
        while rep[&cur] != r {
            let nxt = rep[&cur];
            rep.insert(cur, r);
            cur = nxt;
        }
        r
    }
    for d in map.darts() {
        if side.sees(map.label(d)) {
            continue;
        }
        let f1 = map.face_id(d);
        let f2 = map.face_id(map.opposite(d));
        if hole[&f1] || hole[&f2] {
            continue;
        }
        let (r1, r2) = (find(&mut face_rep, f1), find(&mut face_rep, f2));
        if r1 != r2 {
            let lo = r1.min(r2);
            let hi = r1.max(r2);
            face_rep.insert(hi, lo);
        }
    }
    let mut piece_faces: BTreeMap<Dart, BTreeSet<Dart>> = BTreeMap::new();
    let mut piece_of_face = BTreeMap::new();
    let ids: Vec<Dart> = face_rep.keys().copied().collect();
    for f in ids {
        let r = find(&mut face_rep, f);
        piece_faces.entry(r).or_default().insert(f);
        piece_of_face.insert(f, r);
    }

    // Free circles: visible curve components with no event vertex.
    let events = event_vertices(map);
    let mut free_circles = Vec::new();
    let mut seen: BTreeSet<Dart> = BTreeSet::new();
    for d in map.darts() {
        if seen.contains(&d) || !side.sees(map.label(d)) || !map.label(d).is_curve() {
            continue;
        }
        let (seq, closed) = map.curve_component(d);
        let mut has_event = false;
        for x in &seq {
            seen.insert(*x);
            seen.insert(map.opposite(*x));
            if events.contains(&map.vertex_id(*x))
                || events.contains(&map.vertex_id(map.opposite(*x)))
            {
                has_event = true;
            }
        }
        if closed && !has_event {
            let lp = piece_of_face[&map.face_id(seq[0])];
            let rp = piece_of_face[&map.face_id(map.opposite(seq[0]))];
            free_circles.push(FreeCircle {
                label: map.label(seq[0]).clone(),
                left_piece: lp.min(rp),
                right_piece: lp.max(rp),
            });
        }
    }
    free_circles.sort();

    // Piece shapes: Euler characteristic of the closure.
    let mut pieces = BTreeMap::new();
    for (id, pfaces) in &piece_faces {
        if hole[id] {
            pieces.insert(
                *id,
                Piece {
                    id: *id,
                    faces: pfaces.clone(),
                    genus: 0,
                    boundary_cycles: 1,
                    is_hole: true,
                    color: None,
                },
            );
            continue;
        }
        let mut vset = BTreeSet::new();
        let mut eset = BTreeSet::new();
        for f in pfaces {
            for d in map.face_cycle(*f) {
                vset.insert(map.vertex_id(d));
                let e = d.min(map.opposite(d));
                eset.insert(e);
            }
        }
        let chi = vset.len() as i64 - eset.len() as i64 + pfaces.len() as i64;
        // Boundary cycles of the closure: count via reduced face walks.
        let b = piece_boundary_cycles(map, side, pfaces, &piece_of_face, *id);
        let genus = (2 - chi - b as i64) / 2;
        let color = colors.and_then(|c| c.get(&pfaces.iter().next().copied().unwrap()).copied());
        pieces.insert(
            *id,
            Piece {
                id: *id,
                faces: pfaces.clone(),
                genus,
                boundary_cycles: b,
                is_hole: false,
                color,
            },
        );
    }

    Overlay { side, piece_of_face, pieces, free_circles }
}

/// Counts boundary cycles of one piece: orbits of the overlay face walk
/// among visible darts bordering the piece, plus free-circle sides.
fn piece_boundary_cycles(
    map: &CombinatorialMap,
    side: OverlaySide,
    pfaces: &BTreeSet<Dart>,
    piece_of_face: &BTreeMap<Dart, Dart>,
    pid: Dart,
) -> usize {
    // Visible darts whose left face lies in this piece.
    let mut border: BTreeSet<Dart> = BTreeSet::new();
    for f in pfaces {
        for d in map.face_cycle(*f) {
            if side.sees(map.label(d)) {
                border.insert(d);
            }
        }
    }
    let _ = (piece_of_face, pid);
    let mut cycles = 0usize;
    let mut seen: BTreeSet<Dart> = BTreeSet::new();
    for &d in &border {
        if seen.contains(&d) {
            continue;
        }
        let mut cur = d;
        loop {
            seen.insert(cur);
            cur = reduced_face_next(map, side, cur);
            if cur == d {
                break;
            }
        }
        cycles += 1;
    }
    cycles
}

/// Successor of `d` along its piece-boundary circle: the next visible dart in
/// rotation order at the far vertex (scaffolding corners are passed over).
pub fn reduced_face_next(map: &CombinatorialMap, side: OverlaySide, d: Dart) -> Dart {
    let mut z = map.next_at_vertex(map.opposite(d));
    while !side.sees(map.label(z)) {
        z = map.next_at_vertex(z);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::map::EdgeLabel;

    #[test]
    fn torus_two_gammas_pieces_are_annuli() {
        let m = build::torus_parallel_circles(2, EdgeLabel::Gamma);
        let ov = overlay(&m, OverlaySide::Full, None);
        assert_eq!(ov.pieces.len(), 2);
        for p in ov.pieces.values() {
            assert_eq!((p.genus, p.boundary_cycles), (0, 2));
        }
        // The circles only cross frame, so they carry no events.
        assert_eq!(ov.free_circles.len(), 2);
    }

    #[test]
    fn bare_frame_torus_is_one_piece_of_genus_one() {
        let m = build::torus_square();
        let ov = overlay(&m, OverlaySide::Full, None);
        assert_eq!(ov.pieces.len(), 1);
        let p = ov.pieces.values().next().unwrap();
        assert_eq!(p.genus, 1);
        assert_eq!(p.boundary_cycles, 0);
    }

    #[test]
    fn genus1_s3_full_overlay_pieces_are_discs() {
        let m = build::genus1_s3_map();
        let ov = overlay(&m, OverlaySide::Full, None);
        for p in ov.pieces.values() {
            assert_eq!((p.genus, p.boundary_cycles), (0, 1), "piece {:?}", p);
        }
        assert_eq!(ov.pieces.len(), 5);
    }
}
