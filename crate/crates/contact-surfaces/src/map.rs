//! Rotation-system encoding of oriented surfaces with labeled curve systems.
//!
//! A surface is a set of darts (half-edges) together with a fixed-point-free
//! involution `opposite` pairing the two sides of each edge and a permutation
//! `next_at_vertex` giving the counterclockwise order of out-darts around each
//! vertex.  Faces are the orbits of `next_at_vertex ∘ opposite`; every face of
//! the dart structure is a disc, so non-disc complementary regions of the
//! labeled curves are carried by `Frame` scaffolding edges.  Holes (boundary
//! circles of a surface with boundary) are face orbits explicitly flagged via
//! the `outer` marker on their darts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a half-edge. Ids are stable across operations: surgeries
/// allocate fresh ids and never renumber survivors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub u32);

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-edge label. Both darts of an edge carry the same label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum EdgeLabel {
    /// Dividing-set edge.
    Gamma,
    /// Boundary curve of the i-th compressing disc of the U handlebody.
    Alpha(u32),
    /// Boundary curve of the j-th compressing disc of the V handlebody.
    Beta(u32),
    /// Named auxiliary embedded graph (test graphs for non-isolation etc.).
    Aux(String),
    /// Boundary of a surface with boundary.
    Boundary,
    /// Scaffolding edge carrying surface topology; invisible to equivalence.
    Frame,
}

impl EdgeLabel {
    /// Coarse system of the label: curves of the same system may not cross.
    pub fn system(&self) -> SystemKind {
        match self {
            EdgeLabel::Gamma => SystemKind::Gamma,
            EdgeLabel::Alpha(_) => SystemKind::Alpha,
            EdgeLabel::Beta(_) => SystemKind::Beta,
            EdgeLabel::Aux(_) => SystemKind::Aux,
            EdgeLabel::Boundary => SystemKind::Boundary,
            EdgeLabel::Frame => SystemKind::Frame,
        }
    }

    /// True for labels that form embedded curves (cycles or arcs).
    pub fn is_curve(&self) -> bool {
        matches!(
            self,
            EdgeLabel::Gamma | EdgeLabel::Alpha(_) | EdgeLabel::Beta(_) | EdgeLabel::Boundary
        )
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Gamma => write!(f, "gamma"),
            EdgeLabel::Alpha(i) => write!(f, "alpha {i}"),
            EdgeLabel::Beta(j) => write!(f, "beta {j}"),
            EdgeLabel::Aux(n) => write!(f, "aux {n}"),
            EdgeLabel::Boundary => write!(f, "boundary"),
            EdgeLabel::Frame => write!(f, "frame"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SystemKind {
    Gamma,
    Alpha,
    Beta,
    Aux,
    Boundary,
    Frame,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DartRec {
    opposite: Dart,
    next: Dart,
    label: EdgeLabel,
    /// True on the hole side of a Boundary edge.
    outer: bool,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("curve system not embedded: {0}")]
    NotEmbedded(String),
    #[error("gamma endpoints do not correspond across the seam: {0}")]
    GammaMismatch(String),
    #[error("gamma endpoints fail to alternate along the seam: {0}")]
    NoAlternation(String),
    #[error("isomorphism search budget exceeded ({0} nodes)")]
    SearchBudgetExceeded(usize),
    #[error("arc is not admissible: {0}")]
    NotAdmissible(String),
    #[error("surface is not transverse to the curve: {0}")]
    NotTransverse(String),
    #[error("univalent graph vertex off the dividing set: {0}")]
    BadVertex(String),
    #[error("attaching region violates the handle model: {0}")]
    BadAttachingRegion(String),
    #[error("stabilisation arc has twisting {0}, expected -1/2")]
    BadTwisting(String),
    #[error("disc has no chords")]
    NoChords,
    #[error("x-arc meets a chord")]
    ArcMeetsChord,
    #[error("arcs are not adjacent (no shared endpoint)")]
    NotAdjacent,
    #[error("local model violation: {0}")]
    LocalModelViolation(String),
    #[error("witness verification failed: {0}")]
    WitnessFailed(String),
    #[error("script step {index} rejected: {reason}")]
    StepRejected { index: usize, reason: String },
    #[error("diagram is not a certified convex splitting")]
    NotConvexSplitting,
    #[error("non-crossing chord condition violated: {0}")]
    NonCrossingViolation(String),
}

pub type Result<T> = std::result::Result<T, MapError>;

/// An oriented surface with labeled embedded curve/arc systems, encoded as a
/// rotation system on darts. Immutable through the public API; operations
/// return fresh maps.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CombinatorialMap {
    darts: BTreeMap<Dart, DartRec>,
    next_id: u32,
}

impl CombinatorialMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.darts.keys().copied()
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.darts.contains_key(&d)
    }

    pub fn opposite(&self, d: Dart) -> Dart {
        self.darts[&d].opposite
    }

    pub fn next_at_vertex(&self, d: Dart) -> Dart {
        self.darts[&d].next
    }

    /// Inverse of the vertex rotation.
    pub fn prev_at_vertex(&self, d: Dart) -> Dart {
        let mut cur = d;
        loop {
            let nxt = self.next_at_vertex(cur);
            if nxt == d {
                return cur;
            }
            cur = nxt;
        }
    }

    pub fn label(&self, d: Dart) -> &EdgeLabel {
        &self.darts[&d].label
    }

    pub fn is_outer(&self, d: Dart) -> bool {
        self.darts[&d].outer
    }

    /// Successor along the face of `d` (the face on its right; rotations are
    /// counterclockwise).
    pub fn face_next(&self, d: Dart) -> Dart {
        self.next_at_vertex(self.opposite(d))
    }

    pub fn face_prev(&self, d: Dart) -> Dart {
        self.opposite(self.prev_at_vertex(d))
    }

    /// The rotation cycle at the vertex of `d`, starting at `d`.
    pub fn vertex_cycle(&self, d: Dart) -> Vec<Dart> {
        self.orbit(d, |m, x| m.next_at_vertex(x))
    }

    /// The face cycle containing `d`, starting at `d`.
    pub fn face_cycle(&self, d: Dart) -> Vec<Dart> {
        self.orbit(d, |m, x| m.face_next(x))
    }

    pub fn degree(&self, d: Dart) -> usize {
        self.vertex_cycle(d).len()
    }

    fn orbit(&self, start: Dart, step: impl Fn(&Self, Dart) -> Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut cur = step(self, start);
        while cur != start {
            out.push(cur);
            cur = step(self, cur);
        }
        out
    }

    /// All vertices as canonical (minimum-dart) representatives.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.all_orbits(|m, d| m.next_at_vertex(d))
    }

    /// All faces as canonical cycles.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.all_orbits(|m, d| m.face_next(d))
    }

    fn all_orbits(&self, step: impl Fn(&Self, Dart) -> Dart + Copy) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let orbit = self.orbit(d, step);
            for x in &orbit {
                seen.insert(*x);
            }
            out.push(orbit);
        }
        out
    }

    /// Canonical representative (minimum dart) of the vertex of `d`.
    pub fn vertex_id(&self, d: Dart) -> Dart {
        *self.vertex_cycle(d).iter().min().unwrap()
    }

    /// Canonical representative of the face of `d`.
    pub fn face_id(&self, d: Dart) -> Dart {
        *self.face_cycle(d).iter().min().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    /// Edges as (min-dart, max-dart) pairs.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        self.darts()
            .filter(|d| *d < self.opposite(*d))
            .map(|d| (d, self.opposite(d)))
            .collect()
    }

    /// Connected components of the underlying graph; each is the set of darts.
    pub fn components(&self) -> Vec<BTreeSet<Dart>> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![d];
            while let Some(x) = stack.pop() {
                if !comp.insert(x) {
                    continue;
                }
                stack.push(self.opposite(x));
                stack.push(self.next_at_vertex(x));
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Face orbits that are holes (marked outer).
    pub fn holes(&self) -> Vec<Vec<Dart>> {
        self.faces()
            .into_iter()
            .filter(|f| self.is_outer(f[0]))
            .collect()
    }

    /// Checks all structural invariants.
    pub fn validate(&self) -> Result<()> {
        for (d, rec) in &self.darts {
            let o = rec.opposite;
            let Some(orec) = self.darts.get(&o) else {
                return Err(MapError::InvalidMap(format!("{d:?}: opposite {o:?} missing")));
            };
            if o == *d {
                return Err(MapError::InvalidMap(format!("{d:?}: opposite is a fixed point")));
            }
            if orec.opposite != *d {
                return Err(MapError::InvalidMap(format!("{d:?}: opposite not involutive")));
            }
            if orec.label != rec.label {
                return Err(MapError::InvalidMap(format!(
                    "{d:?}: labels differ across the edge ({} vs {})",
                    rec.label, orec.label
                )));
            }
            if !self.darts.contains_key(&rec.next) {
                return Err(MapError::InvalidMap(format!("{d:?}: next {:?} missing", rec.next)));
            }
            if rec.outer && rec.label != EdgeLabel::Boundary {
                return Err(MapError::InvalidMap(format!("{d:?}: outer dart on non-boundary edge")));
            }
        }
        // next must be a permutation: injective.
        let mut img = BTreeSet::new();
        for rec in self.darts.values() {
            if !img.insert(rec.next) {
                return Err(MapError::InvalidMap("next_at_vertex is not a permutation".into()));
            }
        }
        // Boundary edges: exactly one outer dart; outer set is a union of faces.
        for (d, rec) in &self.darts {
            if rec.label == EdgeLabel::Boundary {
                let o = self.opposite(*d);
                if rec.outer == self.darts[&o].outer {
                    return Err(MapError::InvalidMap(format!(
                        "boundary edge {d:?}/{o:?} must have exactly one outer dart"
                    )));
                }
            }
            if rec.outer {
                let f = self.face_next(*d);
                if !self.darts[&f].outer {
                    return Err(MapError::InvalidMap(format!(
                        "outer dart {d:?}: face continues into non-outer {f:?}"
                    )));
                }
            }
        }
        self.validate_curves()?;
        Ok(())
    }

    /// Embeddedness of the curve systems: at any vertex, a curve label occurs
    /// on at most two darts; degree-4 vertices with two strands must pair
    /// opposite darts (transversal crossings, no tangencies); crossings only
    /// between different systems.
    fn validate_curves(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for d in self.darts() {
            let v = self.vertex_id(d);
            if !seen.insert(v) {
                continue;
            }
            let cycle = self.vertex_cycle(v);
            let mut per_label: BTreeMap<&EdgeLabel, Vec<usize>> = BTreeMap::new();
            for (i, x) in cycle.iter().enumerate() {
                let lab = self.label(*x);
                if lab.is_curve() {
                    per_label.entry(lab).or_default().push(i);
                }
            }
            for (lab, positions) in &per_label {
                if positions.len() > 2 {
                    return Err(MapError::NotEmbedded(format!(
                        "vertex {v:?}: {} occurs {} times",
                        lab,
                        positions.len()
                    )));
                }
            }
            // Transversality at degree-4 two-strand vertices.
            if cycle.len() == 4 {
                let curve_pairs: Vec<(&EdgeLabel, &Vec<usize>)> =
                    per_label.iter().filter(|(_, p)| p.len() == 2).map(|(l, p)| (*l, p)).collect();
                if curve_pairs.len() == 2 {
                    for (lab, pos) in &curve_pairs {
                        if (pos[1] + 4 - pos[0]) % 4 != 2 {
                            return Err(MapError::NotEmbedded(format!(
                                "vertex {v:?}: tangency of {lab} strands"
                            )));
                        }
                    }
                    let (l1, l2) = (curve_pairs[0].0, curve_pairs[1].0);
                    if l1.system() == l2.system() && l1.system() != SystemKind::Frame {
                        return Err(MapError::NotEmbedded(format!(
                            "vertex {v:?}: crossing within one system ({l1} x {l2})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Euler characteristic (holes excluded from the face count), total genus
    /// over components, and component count.
    pub fn euler_and_genus(&self) -> Result<(i64, i64, usize)> {
        self.validate()?;
        let comps = self.components();
        let mut euler_total = 0i64;
        let mut genus_total = 0i64;
        for comp in &comps {
            let (chi, g, _b) = self.component_shape(comp);
            euler_total += chi;
            genus_total += g;
        }
        Ok((euler_total, genus_total, comps.len()))
    }

    /// (euler, genus, hole count) of one component given as its dart set.
    pub fn component_shape(&self, comp: &BTreeSet<Dart>) -> (i64, i64, usize) {
        let mut vset = BTreeSet::new();
        let mut fset = BTreeSet::new();
        let mut holes = BTreeSet::new();
        let mut edges = 0i64;
        for &d in comp {
            vset.insert(self.vertex_id(d));
            let f = self.face_id(d);
            if self.is_outer(d) {
                holes.insert(f);
            } else {
                fset.insert(f);
            }
            if d < self.opposite(d) {
                edges += 1;
            }
        }
        let chi = vset.len() as i64 - edges + fset.len() as i64;
        let b = holes.len() as i64;
        let genus = (2 - chi - b) / 2;
        (chi, genus, holes.len())
    }

    // ------------------------------------------------------------------
    // Mutation (crate-internal; public operations clone first).
    // ------------------------------------------------------------------

    pub(crate) fn fresh_dart(&mut self) -> Dart {
        let d = Dart(self.next_id);
        self.next_id += 1;
        d
    }

    /// Inserts an isolated edge: both darts are their own vertex fixed points.
    pub(crate) fn add_edge(&mut self, label: EdgeLabel) -> (Dart, Dart) {
        let a = self.fresh_dart();
        let b = self.fresh_dart();
        self.darts.insert(a, DartRec { opposite: b, next: a, label: label.clone(), outer: false });
        self.darts.insert(b, DartRec { opposite: a, next: b, label, outer: false });
        (a, b)
    }

    pub(crate) fn set_next(&mut self, d: Dart, n: Dart) {
        self.darts.get_mut(&d).unwrap().next = n;
    }

    pub(crate) fn set_label(&mut self, d: Dart, label: EdgeLabel) {
        let o = self.opposite(d);
        self.darts.get_mut(&d).unwrap().label = label.clone();
        self.darts.get_mut(&o).unwrap().label = label;
    }

    pub(crate) fn set_outer(&mut self, d: Dart, outer: bool) {
        self.darts.get_mut(&d).unwrap().outer = outer;
    }

    pub(crate) fn set_opposite(&mut self, d: Dart, o: Dart) {
        self.darts.get_mut(&d).unwrap().opposite = o;
    }

    pub(crate) fn remove_dart(&mut self, d: Dart) {
        self.darts.remove(&d);
    }

    /// Installs a full vertex rotation given the cyclic order of out-darts.
    pub(crate) fn set_vertex_cycle(&mut self, cycle: &[Dart]) {
        for i in 0..cycle.len() {
            self.set_next(cycle[i], cycle[(i + 1) % cycle.len()]);
        }
    }

    /// Subdivides the edge of `d` with a new degree-2 vertex. Returns the new
    /// darts `(c1, c2)` where `c1` continues from `d` (same direction) and
    /// `c2` is its opposite, adjacent to `opposite(d)`'s end.
    ///
    /// After the call the edge `d--opp` becomes `d--c2 | c1--opp`: walking
    /// from the origin of `d` one traverses `d`, arrives at the new vertex,
    /// and continues via `c1`.
    pub(crate) fn subdivide(&mut self, d: Dart) -> (Dart, Dart) {
        let o = self.opposite(d);
        let label = self.label(d).clone();
        let outer_d = self.is_outer(d);
        let outer_o = self.is_outer(o);
        let c1 = self.fresh_dart();
        let c2 = self.fresh_dart();
        self.darts.insert(
            c1,
            DartRec { opposite: o, next: c2, label: label.clone(), outer: outer_d },
        );
        self.darts.insert(c2, DartRec { opposite: d, next: c1, label, outer: outer_o });
        self.set_opposite(d, c2);
        self.set_opposite(o, c1);
        (c1, c2)
    }

    /// Merges the degree-2 vertex at `d`'s terminus if both edges share the
    /// label; the two edges fuse into one. `d` must point at the vertex, i.e.
    /// the vertex is `vertex(opposite(d))`. Returns false if not applicable.
    pub(crate) fn smooth_at(&mut self, d: Dart) -> bool {
        let od = self.opposite(d);
        let cycle = self.vertex_cycle(od);
        if cycle.len() != 2 {
            return false;
        }
        let other = if cycle[0] == od { cycle[1] } else { cycle[0] };
        if other == d || other == od {
            return false;
        }
        if self.label(od) != self.label(other) {
            return false;
        }
        if self.is_outer(od) != self.is_outer(self.opposite(other)) {
            return false;
        }
        let far = self.opposite(other);
        // Fuse: d -- far becomes one edge.
        self.set_opposite(d, far);
        self.set_opposite(far, d);
        self.remove_dart(od);
        self.remove_dart(other);
        true
    }

    /// Smooths every degree-2 vertex whose two edges carry equal labels,
    /// except that each closed curve keeps at least one vertex.
    pub(crate) fn smooth_all(&mut self) {
        loop {
            let mut target = None;
            'outer: for d in self.darts() {
                let od = self.opposite(d);
                let cycle = self.vertex_cycle(od);
                if cycle.len() != 2 || cycle[0] == cycle[1] {
                    continue;
                }
                let other = if cycle[0] == od { cycle[1] } else { cycle[0] };
                if other == d || other == od {
                    continue;
                }
                if self.label(od) != self.label(other)
                    || self.is_outer(od) != self.is_outer(self.opposite(other))
                {
                    continue;
                }
                // Keep one vertex on a closed 2-vertex curve (can't smooth to nothing).
                if self.opposite(other) == d {
                    continue 'outer;
                }
                target = Some(d);
                break;
            }
            match target {
                Some(d) => {
                    self.smooth_at(d);
                }
                None => break,
            }
        }
    }

    // ------------------------------------------------------------------
    // Curve traversal.
    // ------------------------------------------------------------------

    /// Given an out-dart `d` on a curve, the out-dart continuing the curve at
    /// the far vertex, or None at an arc endpoint.
    pub fn curve_continue(&self, d: Dart) -> Option<Dart> {
        let arrive = self.opposite(d);
        let lab = self.label(d);
        let mut cands: Vec<Dart> = self
            .vertex_cycle(arrive)
            .into_iter()
            .filter(|x| *x != arrive && self.label(*x) == lab)
            .collect();
        if cands.len() > 1 {
            // Crossing of two arcs of one aux graph; continue straight.
            let cycle = self.vertex_cycle(arrive);
            let pos = cycle.iter().position(|x| *x == arrive).unwrap();
            let straight = cycle[(pos + cycle.len() / 2) % cycle.len()];
            cands.retain(|x| *x == straight);
        }
        cands.into_iter().next()
    }

    /// The directed dart sequence of the curve component through `d`,
    /// together with whether it is closed. For open arcs the sequence runs
    /// from one endpoint to the other.
    pub fn curve_component(&self, d: Dart) -> (Vec<Dart>, bool) {
        // Walk forward.
        let mut fwd = vec![d];
        let mut cur = d;
        loop {
            match self.curve_continue(cur) {
                Some(n) => {
                    if n == d {
                        return (fwd, true);
                    }
                    fwd.push(n);
                    cur = n;
                }
                None => break,
            }
        }
        // Open: walk backward from d.
        let mut back = Vec::new();
        let mut cur = self.opposite(d);
        while let Some(n) = self.curve_continue(cur) {
            back.push(n);
            cur = n;
        }
        let mut out: Vec<Dart> = back.iter().rev().map(|x| self.opposite(*x)).collect();
        out.extend(fwd);
        (out, false)
    }

    /// All components of a label class, each as a directed dart sequence.
    pub fn curve_components(&self, pred: impl Fn(&EdgeLabel) -> bool) -> Vec<(Vec<Dart>, bool)> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) || !pred(self.label(d)) {
                continue;
            }
            let (seq, closed) = self.curve_component(d);
            for x in &seq {
                seen.insert(*x);
                seen.insert(self.opposite(*x));
            }
            out.push((seq, closed));
        }
        out
    }

    /// Number of components of a label class.
    pub fn component_count(&self, pred: impl Fn(&EdgeLabel) -> bool) -> usize {
        self.curve_components(pred).len()
    }

    /// All alpha indices present.
    pub fn alpha_indices(&self) -> BTreeSet<u32> {
        self.darts()
            .filter_map(|d| match self.label(d) {
                EdgeLabel::Alpha(i) => Some(*i),
                _ => None,
            })
            .collect()
    }

    pub fn beta_indices(&self) -> BTreeSet<u32> {
        self.darts()
            .filter_map(|d| match self.label(d) {
                EdgeLabel::Beta(j) => Some(*j),
                _ => None,
            })
            .collect()
    }

    /// Removes an entire curve component through `d`, dissolving its
    /// crossings (transverse strands reconnect straight through).
    pub(crate) fn remove_curve(&mut self, d: Dart) {
        let (seq, _closed) = self.curve_component(d);
        let mut doomed: BTreeSet<Dart> = BTreeSet::new();
        for x in &seq {
            doomed.insert(*x);
            doomed.insert(self.opposite(*x));
        }
        // Collect affected vertices (canonical ids picked fresh each time).
        let mut vstubs: Vec<Vec<Dart>> = Vec::new();
        let mut seenv = BTreeSet::new();
        for &x in &doomed {
            let v = self.vertex_id(x);
            if !seenv.insert(v) {
                continue;
            }
            let cycle = self.vertex_cycle(v);
            let rest: Vec<Dart> = cycle.iter().copied().filter(|y| !doomed.contains(y)).collect();
            vstubs.push(rest);
        }
        for rest in vstubs {
            match rest.len() {
                0 => {}
                _ => self.set_vertex_cycle(&rest),
            }
        }
        for x in doomed {
            self.remove_dart(x);
        }
        // Dissolved crossings leave degree-2 same-label vertices behind.
        self.smooth_all();
    }

    /// Disjoint union: darts of `other` are re-numbered into `self`.
    /// Returns the dart translation table.
    pub fn disjoint_union(&self, other: &CombinatorialMap) -> (CombinatorialMap, BTreeMap<Dart, Dart>) {
        let mut out = self.clone();
        let mut tr = BTreeMap::new();
        for d in other.darts() {
            let nd = out.fresh_dart();
            tr.insert(d, nd);
        }
        for (d, rec) in &other.darts {
            out.darts.insert(
                tr[d],
                DartRec {
                    opposite: tr[&rec.opposite],
                    next: tr[&rec.next],
                    label: rec.label.clone(),
                    outer: rec.outer,
                },
            );
        }
        (out, tr)
    }
}

/// Convenience builder mirroring the text format: edges, vertex rotations,
/// labels, holes.
#[derive(Default)]
pub struct MapBuilder {
    map: CombinatorialMap,
    declared: BTreeMap<u32, Dart>,
    edges: Vec<(u32, u32)>,
    cycles: Vec<Vec<u32>>,
    labels: Vec<(EdgeLabel, Vec<u32>)>,
    holes: Vec<u32>,
}

impl MapBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge(&mut self, d1: u32, d2: u32) -> &mut Self {
        self.edges.push((d1, d2));
        self
    }

    pub fn vertex(&mut self, cycle: &[u32]) -> &mut Self {
        self.cycles.push(cycle.to_vec());
        self
    }

    pub fn label(&mut self, label: EdgeLabel, darts: &[u32]) -> &mut Self {
        self.labels.push((label, darts.to_vec()));
        self
    }

    pub fn hole(&mut self, dart: u32) -> &mut Self {
        self.holes.push(dart);
        self
    }

    pub fn finish(mut self) -> Result<CombinatorialMap> {
        // Materialize declared darts in numeric order for stable ids.
        let mut ids: BTreeSet<u32> = BTreeSet::new();
        for (a, b) in &self.edges {
            ids.insert(*a);
            ids.insert(*b);
        }
        for c in &self.cycles {
            ids.extend(c.iter().copied());
        }
        for (_, ds) in &self.labels {
            ids.extend(ds.iter().copied());
        }
        for raw in ids {
            let d = self.map.fresh_dart();
            self.declared.insert(raw, d);
            self.map.darts.insert(
                d,
                DartRec { opposite: d, next: d, label: EdgeLabel::Frame, outer: false },
            );
        }
        let lookup = |raw: u32, what: &str| -> Result<Dart> {
            self.declared
                .get(&raw)
                .copied()
                .ok_or_else(|| MapError::InvalidMap(format!("{what}: unknown dart {raw}")))
        };
        for (a, b) in &self.edges {
            let da = lookup(*a, "edge")?;
            let db = lookup(*b, "edge")?;
            if da == db {
                return Err(MapError::InvalidMap(format!("edge {a} {b}: darts coincide")));
            }
            self.map.set_opposite(da, db);
            self.map.set_opposite(db, da);
        }
        for cyc in &self.cycles {
            let darts: Vec<Dart> =
                cyc.iter().map(|r| lookup(*r, "vertex")).collect::<Result<_>>()?;
            self.map.set_vertex_cycle(&darts);
        }
        for (label, ds) in &self.labels {
            for r in ds {
                let d = lookup(*r, "label")?;
                let lab = self.map.label(d).clone();
                if lab != EdgeLabel::Frame && lab != *label {
                    return Err(MapError::InvalidMap(format!("dart {r}: conflicting labels")));
                }
                self.map.darts.get_mut(&d).unwrap().label = label.clone();
            }
        }
        // Edge label consistency: propagate across opposites, complain on conflict.
        for d in self.map.darts().collect::<Vec<_>>() {
            let o = self.map.opposite(d);
            let (ld, lo) = (self.map.label(d).clone(), self.map.label(o).clone());
            if ld != lo {
                if ld == EdgeLabel::Frame {
                    self.map.darts.get_mut(&d).unwrap().label = lo;
                } else if lo == EdgeLabel::Frame {
                    self.map.darts.get_mut(&o).unwrap().label = ld;
                } else {
                    return Err(MapError::InvalidMap(format!(
                        "edge {d:?}/{o:?}: labels differ"
                    )));
                }
            }
        }
        for h in &self.holes {
            let d = lookup(*h, "hole")?;
            for x in self.map.face_cycle(d) {
                self.map.set_outer(x, true);
            }
        }
        // Involution totality check before full validation.
        for d in self.map.darts().collect::<Vec<_>>() {
            if self.map.opposite(d) == d {
                return Err(MapError::InvalidMap(format!("{d:?} has no opposite (unpaired)")));
            }
        }
        self.map.validate()?;
        Ok(self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn torus_schema() {
        let m = build::torus_square();
        let (chi, g, c) = m.euler_and_genus().unwrap();
        assert_eq!((chi, g, c), (0, 1, 1));
    }

    #[test]
    fn sphere_from_two_discs() {
        let m = build::sphere_two_discs();
        let (chi, g, c) = m.euler_and_genus().unwrap();
        assert_eq!((chi, g, c), (2, 0, 1));
    }

    #[test]
    fn disjoint_union_is_additive() {
        let t = build::torus_square();
        let s = build::sphere_two_discs();
        let (u, _) = t.disjoint_union(&s);
        let (chi, g, c) = u.euler_and_genus().unwrap();
        assert_eq!((chi, g, c), (2, 1, 2));
    }

    #[test]
    fn subdivide_preserves_shape() {
        let mut m = build::torus_square();
        let d = m.darts().next().unwrap();
        m.subdivide(d);
        m.validate().unwrap();
        let (chi, g, c) = m.euler_and_genus().unwrap();
        assert_eq!((chi, g, c), (0, 1, 1));
    }

    #[test]
    fn smooth_inverts_subdivide() {
        let mut m = build::torus_square();
        let n0 = m.dart_count();
        let d = m.darts().next().unwrap();
        m.subdivide(d);
        assert!(m.smooth_at(d));
        m.validate().unwrap();
        assert_eq!(m.dart_count(), n0);
    }
}
