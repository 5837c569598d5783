//! Low-level dart surgery shared by the rewrite operations: severing strands,
//! routing new curve paths across existing edges, and welding boundary
//! circles with the dividing-set rounding rule.

use std::collections::BTreeSet;

use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};

/// Builds a new curve path through the map. The path starts at a loose dart
/// (one severed from its vertex), crosses a sequence of edges transversally,
/// and ends by splicing onto another loose dart.
///
/// Orientation convention: rotations are counterclockwise, so `face_next`
/// walks the face on the *right* of a dart. `cross(q)` crosses the edge of
/// `q` approaching from the face right of `q` (the face of `q`); at the new
/// degree-4 vertex the counterclockwise rotation is
/// `[onward, toward q's origin, backward, toward q's terminus]`.
pub struct Router<'a> {
    map: &'a mut CombinatorialMap,
    cur: Dart,
    label: EdgeLabel,
    /// Darts of the new edges laid down, in travel order.
    pub laid: Vec<Dart>,
}

impl<'a> Router<'a> {
    /// Starts a path at the loose dart `start` (its vertex must be a
    /// singleton; the dart points away from the loose position).
    pub fn start(map: &'a mut CombinatorialMap, start: Dart, label: EdgeLabel) -> Self {
        debug_assert_eq!(map.vertex_cycle(start), vec![start]);
        Router { map, cur: start, label, laid: Vec::new() }
    }

    /// Crosses the edge of `q`, approaching from the face of `q` (its right
    /// side). Returns the new crossing vertex's canonical dart.
    pub fn cross(&mut self, q: Dart) -> Dart {
        let (c1, c2) = self.map.subdivide(q);
        // After subdivide: q -- c2 | c1 -- old opposite; at the new point the
        // out-darts are c2 (toward q's origin) and c1 (toward q's terminus).
        let (f, f_back) = self.map.add_edge(self.label.clone());
        self.map.set_vertex_cycle(&[f, c2, self.cur, c1]);
        self.laid.push(f);
        self.cur = f_back;
        f.min(c1).min(self.cur).min(c2)
    }

    /// Ends the path by splicing onto the loose dart `end`.
    pub fn finish(self, end: Dart) {
        debug_assert_eq!(self.map.vertex_cycle(end), vec![end]);
        self.map.set_vertex_cycle(&[self.cur, end]);
    }

    /// Ends the path by incorporating `cur` into an existing vertex: `cur`
    /// is inserted into the rotation immediately after `after` (ccw).
    pub fn finish_at_vertex(self, after: Dart) {
        let nxt = self.map.next_at_vertex(after);
        self.map.set_next(after, self.cur);
        self.map.set_next(self.cur, nxt);
    }

    /// The dart that will be spliced next (points back along the path).
    pub fn pending(&self) -> Dart {
        self.cur
    }
}

/// Severs the dart `d` from its vertex, leaving it as a loose singleton.
/// The remaining darts keep their cyclic order.
pub fn sever(map: &mut CombinatorialMap, d: Dart) {
    let cycle = map.vertex_cycle(d);
    if cycle.len() == 1 {
        return;
    }
    let rest: Vec<Dart> = cycle.into_iter().filter(|x| *x != d).collect();
    map.set_vertex_cycle(&rest);
    map.set_next(d, d);
}

/// Deletes the edges of a consecutive strand path (given as directed darts)
/// and dissolves the crossings left behind: interior vertices that kept
/// exactly two darts of one transverse strand are smoothed.
pub fn delete_path(map: &mut CombinatorialMap, path: &[Dart]) {
    let mut doomed: BTreeSet<Dart> = BTreeSet::new();
    for d in path {
        doomed.insert(*d);
        doomed.insert(map.opposite(*d));
    }
    let mut vstubs: Vec<Vec<Dart>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &x in &doomed {
        let v = map.vertex_id(x);
        if !seen.insert(v) {
            continue;
        }
        let rest: Vec<Dart> =
            map.vertex_cycle(v).into_iter().filter(|y| !doomed.contains(y)).collect();
        vstubs.push(rest);
    }
    for rest in vstubs {
        if !rest.is_empty() {
            map.set_vertex_cycle(&rest);
        }
    }
    for x in doomed {
        map.remove_dart(x);
    }
}

/// The two transverse out-darts at a degree-4 crossing vertex `v`, given the
/// strand darts `onward` and `backward` at `v`: returns `(left, right)`
/// relative to travel in the `onward` direction.
pub fn transverse_pair(
    map: &CombinatorialMap,
    onward: Dart,
    backward: Dart,
) -> Result<(Dart, Dart)> {
    let cycle = map.vertex_cycle(onward);
    if cycle.len() != 4 {
        return Err(MapError::InvalidMap(format!(
            "expected degree-4 crossing at {onward:?}, found degree {}",
            cycle.len()
        )));
    }
    let pos = cycle.iter().position(|x| *x == onward).unwrap();
    let rot: Vec<Dart> = (0..4).map(|i| cycle[(pos + i) % 4]).collect();
    if rot[2] != backward {
        return Err(MapError::InvalidMap(format!(
            "strands at {onward:?} do not pair opposite darts"
        )));
    }
    // ccw rotation [onward, left, backward, right]
    Ok((rot[1], rot[3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::map::EdgeLabel;

    #[test]
    fn route_and_delete_roundtrip_keeps_shape() {
        // Lay an aux chord across the square face of the torus, then remove it.
        let mut m = build::torus_square();
        let d = m.darts().next().unwrap();
        // Build two loose stubs by adding an edge and severing... simpler:
        // route an aux arc from a subdivision of one frame edge to another.
        let (c1, _c2) = m.subdivide(d);
        // Make a loose aux edge starting at a fresh position: sever trick.
        let (a, b) = m.add_edge(EdgeLabel::Aux("t".into()));
        // Attach a's end into the vertex at the subdivision point and leave b loose,
        // then delete the aux edge again.
        let nxt = m.next_at_vertex(c1);
        m.set_next(c1, a);
        m.set_next(a, nxt);
        // Pendant aux edge with a loose end: still a legal embedded graph.
        m.validate().unwrap();
        let _ = b;
        delete_path(&mut m, &[a]);
        m.smooth_all();
        m.validate().unwrap();
        assert_eq!(m.euler_and_genus().unwrap(), (0, 1, 1));
    }
}
