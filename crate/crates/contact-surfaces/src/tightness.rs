//! Decorated Heegaard diagrams and the cut-and-smooth tightness certificate:
//! cut the surface along one side's full disc system, cap each copy with the
//! disc's chord diagram, round, and demand a connected dividing set on every
//! resulting sphere.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::chord::{cap_with_chords, ChordDiagram, DiscId};
use crate::convex::ConvexSurfaceData;
use crate::cutglue::cut_along_component;
use crate::equiv::{maps_equivalent_colored, MapEquivalenceReport, SymmetryPolicy};
use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};
use crate::normalize::normalize;

/// Which handlebody a computation refers to: U is cut along the alpha
/// system, V along the beta system.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::U => write!(f, "U"),
            Side::V => write!(f, "V"),
        }
    }
}

/// Genus-g splitting surface with dividing set, disc systems and per-disc
/// chord diagrams. Beta data nominally lives on a parallel copy of the
/// surface; it is stored here with alpha-beta crossing positions treated as
/// immaterial by the equivalence test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecoratedHeegaardDiagram {
    pub surface: ConvexSurfaceData,
    pub discs: BTreeMap<DiscId, ChordDiagram>,
    /// Orientation dart of each disc boundary curve.
    pub orient: BTreeMap<DiscId, Dart>,
}

impl DecoratedHeegaardDiagram {
    pub fn map(&self) -> &CombinatorialMap {
        &self.surface.map
    }

    pub fn genus(&self) -> i64 {
        self.surface.map.euler_and_genus().map(|(_, g, _)| g).unwrap_or(-1)
    }

    pub fn alpha_count(&self) -> usize {
        self.discs.keys().filter(|d| d.is_alpha()).count()
    }

    pub fn beta_count(&self) -> usize {
        self.discs.keys().filter(|d| !d.is_alpha()).count()
    }

    /// Crossing vertices of a disc boundary with the dividing set, in the
    /// order along the stored orientation.
    pub fn crossing_points(&self, disc: DiscId) -> Result<Vec<Dart>> {
        let map = &self.surface.map;
        let start = self.orient.get(&disc).copied().ok_or_else(|| {
            MapError::InvalidMap(format!("disc {disc} has no orientation dart"))
        })?;
        let (seq, closed) = map.curve_component(start);
        if !closed {
            return Err(MapError::InvalidMap(format!("disc boundary {disc} is not closed")));
        }
        let mut pts = Vec::new();
        for d in &seq {
            let v = map.vertex_id(*d);
            let gammas = map
                .vertex_cycle(v)
                .iter()
                .filter(|x| *map.label(**x) == EdgeLabel::Gamma)
                .count();
            if gammas == 2 {
                pts.push(v);
            }
        }
        Ok(pts)
    }

    /// Whether every dividing-set component meets both disc systems. Holds
    /// for tight diagrams; encodings of overtwisted examples may fail it,
    /// which cut_and_smooth then reports as a disconnected sphere.
    pub fn gamma_meets_both_systems(&self) -> bool {
        let map = &self.surface.map;
        for (seq, _) in map.curve_components(|l| *l == EdgeLabel::Gamma) {
            let mut hits_alpha = false;
            let mut hits_beta = false;
            for d in &seq {
                for end in [*d, map.opposite(*d)] {
                    for x in map.vertex_cycle(end) {
                        match map.label(x) {
                            EdgeLabel::Alpha(_) => hits_alpha = true,
                            EdgeLabel::Beta(_) => hits_beta = true,
                            _ => {}
                        }
                    }
                }
            }
            if (self.alpha_count() > 0 && !hits_alpha) || (self.beta_count() > 0 && !hits_beta) {
                return false;
            }
        }
        true
    }

    pub fn validate(&self) -> Result<()> {
        self.surface.validate()?;
        let map = &self.surface.map;
        let (_, genus, _comps) = map.euler_and_genus()?;
        let g = genus as usize;
        if self.alpha_count() != g || self.beta_count() != g {
            return Err(MapError::InvalidMap(format!(
                "genus {g} diagram needs {g} discs per side, found {}/{}",
                self.alpha_count(),
                self.beta_count()
            )));
        }
        let alpha_idx = map.alpha_indices();
        let beta_idx = map.beta_indices();
        for id in self.discs.keys() {
            let present = match id {
                DiscId::Alpha(i) => alpha_idx.contains(i),
                DiscId::Beta(j) => beta_idx.contains(j),
            };
            if !present {
                return Err(MapError::InvalidMap(format!("disc {id} has no curve in the map")));
            }
        }
        if alpha_idx.len() != g || beta_idx.len() != g {
            return Err(MapError::InvalidMap("curve systems do not match the genus".into()));
        }
        // Each disc boundary meets the dividing set positively and evenly,
        // with chord data matching the crossing sequence.
        for (id, cd) in &self.discs {
            cd.validate()?;
            if cd.disc != *id {
                return Err(MapError::InvalidMap(format!("disc {id} chord data mislabeled")));
            }
            let pts = self.crossing_points(*id)?;
            if pts.is_empty() {
                return Err(MapError::InvalidMap(format!(
                    "disc {id} boundary misses the dividing set"
                )));
            }
            if !cyclically_equal(&pts, &cd.points) {
                return Err(MapError::InvalidMap(format!(
                    "disc {id}: chord points {:?} do not match the map {:?}",
                    cd.points, pts
                )));
            }
        }
        // Systems are complement-connected (the cut handlebody is a ball).
        for side in [Side::U, Side::V] {
            if g > 0 && !system_complement_connected(map, side) {
                return Err(MapError::InvalidMap(format!(
                    "{side}-side system does not cut the surface to a connected piece"
                )));
            }
        }
        Ok(())
    }
}

fn cyclically_equal(a: &[Dart], b: &[Dart]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

fn system_complement_connected(map: &CombinatorialMap, side: Side) -> bool {
    let is_cut = |l: &EdgeLabel| match side {
        Side::U => matches!(l, EdgeLabel::Alpha(_)),
        Side::V => matches!(l, EdgeLabel::Beta(_)),
    };
    let mut rep: BTreeMap<Dart, Dart> = BTreeMap::new();
    let faces = map.faces();
    for f in &faces {
        let id = *f.iter().min().unwrap();
        rep.insert(id, id);
    }
    fn find(rep: &mut BTreeMap<Dart, Dart>, x: Dart) -> Dart {
        let mut r = x;
        while rep[&r] != r {
            r = rep[&r];
        }
        r
    }
    for d in map.darts() {
        if is_cut(map.label(d)) {
            continue;
        }
        let (a, b) = (map.face_id(d), map.face_id(map.opposite(d)));
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if ra != rb {
            let lo = ra.min(rb);
            rep.insert(ra.max(rb), lo);
        }
    }
    let mut roots = BTreeSet::new();
    let ids: Vec<Dart> = rep.keys().copied().collect();
    for f in ids {
        let r = find(&mut rep, f);
        roots.insert(r);
    }
    roots.len() == 1
}

/// Normalizes the underlying map (bigon reduction) and transports the chord
/// data: each removed bigon retracts a finger of one disc boundary, dropping
/// the boundary-parallel chord trapped beside it.
pub fn diagram_normalize(diag: &DecoratedHeegaardDiagram) -> Result<DecoratedHeegaardDiagram> {
    let (nmap, trace) = normalize(&diag.surface.map);
    let mut discs = diag.discs.clone();
    for removal in &trace {
        let disc = match &removal.other_label {
            EdgeLabel::Alpha(i) => DiscId::Alpha(*i),
            EdgeLabel::Beta(j) => DiscId::Beta(*j),
            _ => continue,
        };
        let Some(cd) = discs.get_mut(&disc) else { continue };
        let n = cd.points.len();
        let i1 = cd.points.iter().position(|v| *v == removal.corner1);
        let i2 = cd.points.iter().position(|v| *v == removal.corner2);
        let (Some(i1), Some(i2)) = (i1, i2) else {
            return Err(MapError::LocalModelViolation(format!(
                "bigon corners {:?}/{:?} not on disc {disc}",
                removal.corner1, removal.corner2
            )));
        };
        // The two crossings must be adjacent along the boundary.
        let (lo, hi) = (i1.min(i2), i1.max(i2));
        let first = if (lo + 1) % n == hi {
            lo
        } else if (hi + 1) % n == lo {
            hi
        } else {
            return Err(MapError::LocalModelViolation(format!(
                "bigon crossings at {i1}/{i2} are not adjacent on {disc}"
            )));
        };
        let second = (first + 1) % n;
        // Chord with an end in the enclosed gap (after `first`) must pair
        // with a flanking gap; it vanishes with the finger.
        let enclosed = first;
        let chord_pos = cd
            .chords
            .iter()
            .position(|(a, b)| *a == enclosed || *b == enclosed)
            .ok_or_else(|| MapError::LocalModelViolation("no chord in the bigon gap".into()))?;
        let (a, b) = cd.chords[chord_pos];
        let other = if a == enclosed { b } else { a };
        let prev_gap = (first + n - 1) % n;
        let next_gap = second;
        if other != prev_gap && other != next_gap {
            return Err(MapError::LocalModelViolation(
                "bigon chord is not boundary-parallel".into(),
            ));
        }
        // Re-anchor gap references by vertex and rebuild indices.
        let verts_of_gap: Vec<Dart> = cd.points.clone();
        let mut vertex_chords: Vec<(Dart, Dart)> = Vec::new();
        for (k, (a, b)) in cd.chords.iter().enumerate() {
            if k == chord_pos {
                continue;
            }
            let anchor = |g: usize| -> Dart {
                if g == first || g == second {
                    verts_of_gap[prev_gap]
                } else {
                    verts_of_gap[g]
                }
            };
            vertex_chords.push((anchor(*a), anchor(*b)));
        }
        let new_points: Vec<Dart> = cd
            .points
            .iter()
            .copied()
            .filter(|v| *v != removal.corner1 && *v != removal.corner2)
            .collect();
        let gap_of = |v: Dart| -> Result<usize> {
            new_points
                .iter()
                .position(|x| *x == v)
                .ok_or_else(|| MapError::LocalModelViolation("chord anchor vanished".into()))
        };
        let mut new_chords = Vec::new();
        for (va, vb) in vertex_chords {
            new_chords.push((gap_of(va)?, gap_of(vb)?));
        }
        cd.points = new_points;
        cd.chords = new_chords;
        cd.validate()?;
    }
    // Repair orientation darts and rebuild the surface.
    let surface = ConvexSurfaceData::inherit(nmap, &diag.surface)?;
    let mut orient = BTreeMap::new();
    for (id, d) in &diag.orient {
        let label = id.label();
        let candidate = if surface.map.contains(*d) && surface.map.label(*d) == &label {
            *d
        } else if let Some(alt) = surface.map.darts().find(|x| surface.map.label(*x) == &label) {
            alt
        } else {
            return Err(MapError::InvalidMap(format!("disc {id} vanished in normalization")));
        };
        orient.insert(*id, candidate);
    }
    let mut out = DecoratedHeegaardDiagram { surface, discs, orient };
    // Align each orientation with the stored point sequence where possible.
    for id in out.discs.keys().copied().collect::<Vec<_>>() {
        let pts = out.crossing_points(id)?;
        let want = out.discs[&id].points.clone();
        if !cyclically_equal(&pts, &want) {
            let d = out.orient[&id];
            let flipped = out.surface.map.opposite(d);
            out.orient.insert(id, flipped);
            let pts2 = out.crossing_points(id)?;
            if !cyclically_equal(&pts2, &want) {
                return Err(MapError::InvalidMap(format!(
                    "disc {id}: crossing sequence lost in normalization"
                )));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    Tight,
    NotCertified,
}

/// Result of cutting one handlebody open and rounding: the dividing-set
/// component count of every resulting sphere, with the full trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightnessCertificate {
    pub side: Side,
    pub sphere_gamma_components: Vec<usize>,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// Cuts the chosen handlebody along its full disc system, caps both copies
/// of each disc with its chords, rounds, and counts dividing-set components
/// on the resulting spheres.
pub fn cut_and_smooth(diag: &DecoratedHeegaardDiagram, side: Side) -> Result<TightnessCertificate> {
    let mut trace = Vec::new();
    // Intersections count essentially: reduce bigons before cutting.
    let diag = diagram_normalize(diag)?;
    trace.push(format!("normalized ({} crossings remain essential)", {
        let mut n = 0usize;
        for cd in diag.discs.values() {
            n += cd.points.len();
        }
        n
    }));
    let mut m = diag.surface.map.clone();
    // The other side's curves are irrelevant on this side's cut sphere.
    let retire = |l: &EdgeLabel| match side {
        Side::U => matches!(l, EdgeLabel::Beta(_)),
        Side::V => matches!(l, EdgeLabel::Alpha(_)),
    };
    let doomed: Vec<Dart> = m.darts().filter(|d| retire(m.label(*d))).collect();
    for d in doomed {
        m.set_label(d, EdgeLabel::Frame);
    }
    let discs: Vec<(DiscId, &ChordDiagram)> = diag
        .discs
        .iter()
        .filter(|(id, _)| id.is_alpha() == matches!(side, Side::U))
        .map(|(id, cd)| (*id, cd))
        .collect();
    for (id, cd) in discs {
        let start = diag.orient[&id];
        if !m.contains(start) {
            return Err(MapError::InvalidMap(format!("orientation dart of {id} vanished")));
        }
        let (cut, tr) = cut_along_component(&m, start)?;
        m = cut;
        trace.push(format!("cut along {id} ({} crossings)", cd.points.len()));
        // Stub maps: original crossing vertex -> left/right stub darts.
        let mut left_of: BTreeMap<Dart, Dart> = BTreeMap::new();
        let mut right_of: BTreeMap<Dart, Dart> = BTreeMap::new();
        for s in tr.stubs.iter().flatten() {
            if *m.label(s.left) == EdgeLabel::Gamma {
                left_of.insert(s.orig_vertex, s.left);
                right_of.insert(s.orig_vertex, s.right);
            }
        }
        for (pick_left, stub_of, reversed) in [(true, &left_of, false), (false, &right_of, true)] {
            // Smoothing during the first cap may renumber boundary darts;
            // locate the hole freshly. After cutting one disc exactly two
            // holes exist, and after its first cap exactly one.
            let hole = if pick_left {
                tr.hole_left[0]
            } else {
                let holes = m.holes();
                if holes.len() != 1 {
                    return Err(MapError::InvalidMap(format!(
                        "expected one remaining hole, found {}",
                        holes.len()
                    )));
                }
                holes[0][0]
            };
            let gaps = orbit_gap_indices(&m, hole, stub_of)?;
            let chords: Vec<(usize, usize)> = cd
                .chords
                .iter()
                .map(|(a, b)| {
                    let va = cd.points[*a];
                    let vb = cd.points[*b];
                    let n = cd.points.len();
                    let ga = gap_index(&gaps, va, reversed, n);
                    let gb = gap_index(&gaps, vb, reversed, n);
                    (ga, gb)
                })
                .collect();
            m = cap_with_chords(&m, hole, &chords, false)?;
            trace.push(format!(
                "cap {} copy of {id} with {} chords",
                if reversed { "right" } else { "left" },
                chords.len()
            ));
        }
    }
    // Count dividing-set components per resulting component (spheres for a
    // full system).
    let mut counts = Vec::new();
    for comp in m.components() {
        let (_chi, genus, holes) = m.component_shape(&comp);
        if genus != 0 || holes != 0 {
            return Err(MapError::InvalidMap(format!(
                "cut result is not a sphere (genus {genus}, holes {holes})"
            )));
        }
        let gammas = m
            .curve_components(|l| *l == EdgeLabel::Gamma)
            .into_iter()
            .filter(|(seq, _)| comp.contains(&seq[0]))
            .count();
        counts.push(gammas);
    }
    counts.sort_unstable();
    let verdict =
        if counts.iter().all(|c| *c == 1) { Verdict::Tight } else { Verdict::NotCertified };
    trace.push(format!("sphere dividing-set components: {counts:?}"));
    Ok(TightnessCertificate { side, sphere_gamma_components: counts, verdict, trace })
}

/// Walks the hole orbit and returns, per gamma stub in orbit order, the
/// original crossing vertex it came from.
fn orbit_gap_indices(
    m: &CombinatorialMap,
    hole: Dart,
    stub_of: &BTreeMap<Dart, Dart>,
) -> Result<Vec<Dart>> {
    let rev: BTreeMap<Dart, Dart> = stub_of.iter().map(|(v, s)| (*s, *v)).collect();
    let orbit = m.face_cycle(hole);
    let mut out = Vec::new();
    for d in &orbit {
        let joint = m.opposite(*d);
        for x in m.vertex_cycle(joint) {
            if *m.label(x) == EdgeLabel::Gamma {
                let v = rev.get(&x).ok_or_else(|| {
                    MapError::InvalidMap(format!("unexpected gamma stub {x:?} on cut circle"))
                })?;
                out.push(*v);
            }
        }
    }
    Ok(out)
}

/// Index of the gap following crossing `v` in the hole-orbit numbering.
/// On the reversed copy the orbit runs against the curve, so the gap that
/// follows `v` along the curve precedes its stub in orbit order.
fn gap_index(orbit_vertices: &[Dart], v: Dart, reversed: bool, _n: usize) -> usize {
    let n = orbit_vertices.len();
    let j = orbit_vertices.iter().position(|x| *x == v).expect("crossing on the circle");
    if reversed {
        (j + n - 1) % n
    } else {
        j
    }
}

/// Essential intersection count of a disc boundary with the dividing set:
/// crossings that survive bigon reduction.
pub fn essential_gamma_crossings(diag: &DecoratedHeegaardDiagram, disc: DiscId) -> Result<usize> {
    let (n, _) = normalize(&diag.surface.map);
    let label = disc.label();
    let Some(start) = n.darts().find(|d| *n.label(*d) == label) else {
        return Err(MapError::InvalidMap(format!("disc {disc} missing after reduction")));
    };
    let (seq, _) = n.curve_component(start);
    let mut count = 0;
    for d in &seq {
        let gammas = n
            .vertex_cycle(*d)
            .iter()
            .filter(|x| *n.label(**x) == EdgeLabel::Gamma)
            .count();
        if gammas == 2 {
            count += 1;
        }
    }
    Ok(count)
}

/// A disc is a product disc when its boundary meets the dividing set twice
/// essentially.
pub fn is_product_disc(diag: &DecoratedHeegaardDiagram, disc: DiscId) -> Result<bool> {
    Ok(essential_gamma_crossings(diag, disc)? == 2)
}

/// Bundled convexity certificate: tight on both sides plus product-disc
/// systems.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexityCertificate {
    pub tight_u: TightnessCertificate,
    pub tight_v: TightnessCertificate,
    pub product_discs: BTreeMap<String, bool>,
    pub convex: bool,
}

pub fn is_convex_splitting(diag: &DecoratedHeegaardDiagram) -> Result<ConvexityCertificate> {
    let tight_u = cut_and_smooth(diag, Side::U)?;
    let tight_v = cut_and_smooth(diag, Side::V)?;
    let mut product_discs = BTreeMap::new();
    let mut all_product = true;
    for id in diag.discs.keys() {
        let p = is_product_disc(diag, *id)?;
        all_product &= p;
        product_discs.insert(id.to_string(), p);
    }
    let convex = all_product
        && tight_u.verdict == Verdict::Tight
        && tight_v.verdict == Verdict::Tight;
    Ok(ConvexityCertificate { tight_u, tight_v, product_discs, convex })
}

/// Diagram-level equivalence: label-preserving isomorphism of the decorated
/// maps with sign data respected.
pub fn diagrams_equivalent(
    a: &DecoratedHeegaardDiagram,
    b: &DecoratedHeegaardDiagram,
    pol: &SymmetryPolicy,
) -> Result<MapEquivalenceReport> {
    maps_equivalent_colored(
        &a.surface.map,
        Some(&a.surface.colors),
        &b.surface.map,
        Some(&b.surface.colors),
        pol,
    )
}
