//! Labeled-map equivalence: the engine's surrogate for convex isotopy.
//!
//! Two decorated maps are equivalent when, after bigon reduction, their
//! reduced structures admit a label-preserving bijection of anchored darts
//! conjugating strand threading and the per-overlay rotations, and inducing a
//! piece bijection that preserves genus, boundary count, colors and free
//! circles. Alpha-beta crossing positions never enter the reduced structure,
//! so they are immaterial, while the interleaving of alpha and beta crossings
//! along each dividing curve is retained through threading.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result, SystemKind};
use crate::normalize::{normalize, BigonRemoval};
use crate::reduce::{event_vertices, overlay, thread, visible_at, Overlay, OverlaySide};

/// Which relabelings a witness may use.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SymmetryPolicy {
    pub permute_alpha_indices: bool,
    pub permute_beta_indices: bool,
    /// Compare the attached 2-coloring (when both maps carry one).
    pub respect_signs: bool,
    /// Also try orientation-reversed witnesses.
    pub allow_reflection: bool,
    /// Node budget for the backtracking search.
    pub max_nodes: usize,
}

impl Default for SymmetryPolicy {
    fn default() -> Self {
        SymmetryPolicy {
            permute_alpha_indices: false,
            permute_beta_indices: false,
            respect_signs: true,
            allow_reflection: false,
            max_nodes: 2_000_000,
        }
    }
}

impl SymmetryPolicy {
    /// Exact labels: auditing a single named disc.
    pub fn strict() -> Self {
        Self::default()
    }

    /// Disc-system comparison: alpha and beta indices are permutable.
    pub fn systems() -> Self {
        SymmetryPolicy {
            permute_alpha_indices: true,
            permute_beta_indices: true,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapEquivalenceReport {
    pub equivalent: bool,
    /// Label-preserving bijection of reduced darts, when equivalent.
    pub witness: Option<BTreeMap<Dart, Dart>>,
    pub reduction_trace_left: Vec<BigonRemoval>,
    pub reduction_trace_right: Vec<BigonRemoval>,
}

/// Normalized label used in invariants: index stripped when permutable.
fn norm_label(l: &EdgeLabel, pol: &SymmetryPolicy) -> EdgeLabel {
    match l {
        EdgeLabel::Alpha(_) if pol.permute_alpha_indices => EdgeLabel::Alpha(u32::MAX),
        EdgeLabel::Beta(_) if pol.permute_beta_indices => EdgeLabel::Beta(u32::MAX),
        other => other.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PieceSig {
    genus: i64,
    boundary_cycles: usize,
    is_hole: bool,
    color: Option<bool>,
    free: Vec<EdgeLabel>,
}

struct Reduced {
    darts: Vec<Dart>,
    idx: BTreeMap<Dart, usize>,
    label: Vec<EdgeLabel>,
    thr: Vec<usize>,
    next_a: Vec<Option<usize>>,
    next_b: Vec<Option<usize>>,
    piece_a: Vec<Option<usize>>,
    piece_b: Vec<Option<usize>>,
    sig_a: Vec<PieceSig>,
    sig_b: Vec<PieceSig>,
    /// Free circles per overlay as (label, piece, piece) with piece indices.
    free_a: Vec<(EdgeLabel, usize, usize)>,
    free_b: Vec<(EdgeLabel, usize, usize)>,
}

fn piece_signatures(ov: &Overlay, pol: &SymmetryPolicy, respect: bool) -> (BTreeMap<Dart, usize>, Vec<PieceSig>) {
    let mut index = BTreeMap::new();
    let mut sigs = Vec::new();
    for (id, p) in &ov.pieces {
        let mut free: Vec<EdgeLabel> = ov
            .free_circles
            .iter()
            .filter(|fc| fc.left_piece == *id || fc.right_piece == *id)
            .map(|fc| norm_label(&fc.label, pol))
            .collect();
        free.sort();
        index.insert(*id, sigs.len());
        sigs.push(PieceSig {
            genus: p.genus,
            boundary_cycles: p.boundary_cycles,
            is_hole: p.is_hole,
            color: if respect { p.color } else { None },
            free,
        });
    }
    (index, sigs)
}

fn build_reduced(
    map: &CombinatorialMap,
    colors: Option<&BTreeMap<Dart, bool>>,
    pol: &SymmetryPolicy,
) -> Reduced {
    let events = event_vertices(map);
    let mut darts: Vec<Dart> = Vec::new();
    for &v in &events {
        for d in map.vertex_cycle(v) {
            if OverlaySide::Full.sees(map.label(d)) {
                darts.push(d);
            }
        }
    }
    darts.sort();
    let idx: BTreeMap<Dart, usize> = darts.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    let label: Vec<EdgeLabel> = darts.iter().map(|d| map.label(*d).clone()).collect();
    let thr: Vec<usize> = darts
        .iter()
        .map(|d| {
            let t = thread(map, &events, *d).expect("anchored strand reaches an event");
            idx[&t]
        })
        .collect();
    let next_in = |side: OverlaySide, d: Dart| -> Option<usize> {
        if !side.sees(map.label(d)) {
            return None;
        }
        let vis = visible_at(map, side, d);
        let pos = vis.iter().position(|x| *x == d).unwrap();
        Some(idx[&vis[(pos + 1) % vis.len()]])
    };
    let next_a: Vec<Option<usize>> = darts.iter().map(|d| next_in(OverlaySide::A, *d)).collect();
    let next_b: Vec<Option<usize>> = darts.iter().map(|d| next_in(OverlaySide::B, *d)).collect();

    let ov_a = overlay(map, OverlaySide::A, colors);
    let ov_b = overlay(map, OverlaySide::B, colors);
    let (pia, sig_a) = piece_signatures(&ov_a, pol, pol.respect_signs);
    let (pib, sig_b) = piece_signatures(&ov_b, pol, pol.respect_signs);
    let piece_a: Vec<Option<usize>> = darts
        .iter()
        .map(|d| {
            if OverlaySide::A.sees(map.label(*d)) {
                Some(pia[&ov_a.piece_left_of(map, *d)])
            } else {
                None
            }
        })
        .collect();
    let piece_b: Vec<Option<usize>> = darts
        .iter()
        .map(|d| {
            if OverlaySide::B.sees(map.label(*d)) {
                Some(pib[&ov_b.piece_left_of(map, *d)])
            } else {
                None
            }
        })
        .collect();
    let free_a: Vec<(EdgeLabel, usize, usize)> = ov_a
        .free_circles
        .iter()
        .map(|fc| (norm_label(&fc.label, pol), pia[&fc.left_piece], pia[&fc.right_piece]))
        .collect();
    let free_b: Vec<(EdgeLabel, usize, usize)> = ov_b
        .free_circles
        .iter()
        .map(|fc| (norm_label(&fc.label, pol), pib[&fc.left_piece], pib[&fc.right_piece]))
        .collect();

    Reduced {
        darts,
        idx,
        label,
        thr,
        next_a,
        next_b,
        piece_a,
        piece_b,
        sig_a,
        sig_b,
        free_a,
        free_b,
    }
}

/// Iterated local refinement: the invariant color of each reduced dart.
fn wl_colors(r: &Reduced, pol: &SymmetryPolicy) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let n = r.darts.len();
    let mut col: Vec<u64> = (0..n)
        .map(|i| {
            let mut h = DefaultHasher::new();
            norm_label(&r.label[i], pol).hash(&mut h);
            r.piece_a[i].map(|p| r.sig_a[p].clone()).hash(&mut h);
            r.piece_b[i].map(|p| r.sig_b[p].clone()).hash(&mut h);
            h.finish()
        })
        .collect();
    for _ in 0..6 {
        let mut nxt = Vec::with_capacity(n);
        for i in 0..n {
            let mut h = DefaultHasher::new();
            col[i].hash(&mut h);
            col[r.thr[i]].hash(&mut h);
            r.next_a[i].map(|j| col[j]).hash(&mut h);
            r.next_b[i].map(|j| col[j]).hash(&mut h);
            nxt.push(h.finish());
        }
        col = nxt;
    }
    col
}

struct Search<'a> {
    r1: &'a Reduced,
    r2: &'a Reduced,
    pol: &'a SymmetryPolicy,
    col1: Vec<u64>,
    col2: Vec<u64>,
    m12: Vec<Option<usize>>,
    m21: Vec<Option<usize>>,
    alpha_map: BTreeMap<u32, u32>,
    alpha_rev: BTreeMap<u32, u32>,
    beta_map: BTreeMap<u32, u32>,
    beta_rev: BTreeMap<u32, u32>,
    nodes: usize,
}

impl<'a> Search<'a> {
    fn labels_compatible(&mut self, i: usize, j: usize) -> Option<Vec<(bool, u32, u32)>> {
        // Returns index-bindings added, or None if incompatible.
        let (l1, l2) = (&self.r1.label[i], &self.r2.label[j]);
        match (l1, l2) {
            (EdgeLabel::Alpha(a), EdgeLabel::Alpha(b)) => {
                if self.pol.permute_alpha_indices {
                    match (self.alpha_map.get(a), self.alpha_rev.get(b)) {
                        (Some(x), _) if x != b => None,
                        (_, Some(y)) if y != a => None,
                        (Some(_), Some(_)) => Some(vec![]),
                        _ => {
                            self.alpha_map.insert(*a, *b);
                            self.alpha_rev.insert(*b, *a);
                            Some(vec![(true, *a, *b)])
                        }
                    }
                } else if a == b {
                    Some(vec![])
                } else {
                    None
                }
            }
            (EdgeLabel::Beta(a), EdgeLabel::Beta(b)) => {
                if self.pol.permute_beta_indices {
                    match (self.beta_map.get(a), self.beta_rev.get(b)) {
                        (Some(x), _) if x != b => None,
                        (_, Some(y)) if y != a => None,
                        (Some(_), Some(_)) => Some(vec![]),
                        _ => {
                            self.beta_map.insert(*a, *b);
                            self.beta_rev.insert(*b, *a);
                            Some(vec![(false, *a, *b)])
                        }
                    }
                } else if a == b {
                    Some(vec![])
                } else {
                    None
                }
            }
            (a, b) if a == b => Some(vec![]),
            _ => None,
        }
    }

    fn unbind(&mut self, binds: &[(bool, u32, u32)]) {
        for (is_alpha, a, b) in binds {
            if *is_alpha {
                self.alpha_map.remove(a);
                self.alpha_rev.remove(b);
            } else {
                self.beta_map.remove(a);
                self.beta_rev.remove(b);
            }
        }
    }

    /// Tries to extend the partial map with i -> j plus all consequences.
    /// Returns the list of assignments made (for rollback), or None.
    fn assign(&mut self, i: usize, j: usize) -> Option<(Vec<usize>, Vec<(bool, u32, u32)>)> {
        let mut made = Vec::new();
        let mut binds = Vec::new();
        let mut queue = vec![(i, j)];
        while let Some((x, y)) = queue.pop() {
            match (self.m12[x], self.m21[y]) {
                (Some(z), _) => {
                    if z != y {
                        self.rollback(&made, &binds);
                        return None;
                    }
                    continue;
                }
                (None, Some(_)) => {
                    self.rollback(&made, &binds);
                    return None;
                }
                (None, None) => {}
            }
            if self.col1[x] != self.col2[y] {
                self.rollback(&made, &binds);
                return None;
            }
            match self.labels_compatible(x, y) {
                Some(bs) => binds.extend(bs),
                None => {
                    self.rollback(&made, &binds);
                    return None;
                }
            }
            // Structural compatibility.
            let ok = self.r1.next_a[x].is_some() == self.r2.next_a[y].is_some()
                && self.r1.next_b[x].is_some() == self.r2.next_b[y].is_some();
            if !ok {
                self.rollback(&made, &binds);
                return None;
            }
            self.m12[x] = Some(y);
            self.m21[y] = Some(x);
            made.push(x);
            self.nodes += 1;
            queue.push((self.r1.thr[x], self.r2.thr[y]));
            if let (Some(nx), Some(ny)) = (self.r1.next_a[x], self.r2.next_a[y]) {
                queue.push((nx, ny));
            }
            if let (Some(nx), Some(ny)) = (self.r1.next_b[x], self.r2.next_b[y]) {
                queue.push((nx, ny));
            }
        }
        Some((made, binds))
    }

    fn rollback(&mut self, made: &[usize], binds: &[(bool, u32, u32)]) {
        for &x in made {
            let y = self.m12[x].take().unwrap();
            self.m21[y] = None;
        }
        self.unbind(binds);
    }

    fn solve(&mut self) -> Result<bool> {
        if self.nodes > self.pol.max_nodes {
            return Err(MapError::SearchBudgetExceeded(self.nodes));
        }
        let Some(i) = (0..self.r1.darts.len()).find(|x| self.m12[*x].is_none()) else {
            return Ok(self.final_checks());
        };
        for j in 0..self.r2.darts.len() {
            if self.m21[j].is_some() || self.col1[i] != self.col2[j] {
                continue;
            }
            if let Some((made, binds)) = self.assign(i, j) {
                match self.solve() {
                    Ok(true) => return Ok(true),
                    Ok(false) => self.rollback(&made, &binds),
                    Err(e) => return Err(e),
                }
            }
            if self.nodes > self.pol.max_nodes {
                return Err(MapError::SearchBudgetExceeded(self.nodes));
            }
        }
        Ok(false)
    }

    /// After a complete dart assignment: piece partition and free-circle
    /// consistency, and matching of structure unseen by darts.
    fn final_checks(&self) -> bool {
        let check_side = |pieces1: &[Option<usize>],
                          pieces2: &[Option<usize>],
                          sig1: &[PieceSig],
                          sig2: &[PieceSig],
                          free1: &[(EdgeLabel, usize, usize)],
                          free2: &[(EdgeLabel, usize, usize)]|
         -> bool {
            let mut p12: BTreeMap<usize, usize> = BTreeMap::new();
            let mut p21: BTreeMap<usize, usize> = BTreeMap::new();
            for x in 0..self.r1.darts.len() {
                let y = self.m12[x].unwrap();
                match (pieces1[x], pieces2[y]) {
                    (None, None) => {}
                    (Some(p), Some(q)) => {
                        if *p12.entry(p).or_insert(q) != q || *p21.entry(q).or_insert(p) != p {
                            return false;
                        }
                        if sig1[p] != sig2[q] {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
            // Unmatched pieces: match by signature + free-circle adjacency.
            let un1: Vec<usize> = (0..sig1.len()).filter(|p| !p12.contains_key(p)).collect();
            let un2: Vec<usize> = (0..sig2.len()).filter(|q| !p21.contains_key(q)).collect();
            if un1.len() != un2.len() {
                return false;
            }
            // Backtracking over the small remainder.
            fn rec(
                un1: &[usize],
                un2: &[usize],
                taken: &mut Vec<Option<usize>>,
                used: &mut BTreeSet<usize>,
                k: usize,
                sig1: &[PieceSig],
                sig2: &[PieceSig],
                p12: &BTreeMap<usize, usize>,
                free1: &[(EdgeLabel, usize, usize)],
                free2: &[(EdgeLabel, usize, usize)],
            ) -> bool {
                if k == un1.len() {
                    // Verify free circles correspond under the full piece map.
                    let full = |p: usize| -> usize {
                        if let Some(q) = p12.get(&p) {
                            *q
                        } else {
                            let pos = un1.iter().position(|x| *x == p).unwrap();
                            taken[pos].unwrap()
                        }
                    };
                    let mut f1: Vec<(EdgeLabel, usize, usize)> = free1
                        .iter()
                        .map(|(l, p, q)| {
                            let (a, b) = (full(*p), full(*q));
                            (l.clone(), a.min(b), a.max(b))
                        })
                        .collect();
                    let mut f2: Vec<(EdgeLabel, usize, usize)> = free2
                        .iter()
                        .map(|(l, p, q)| (l.clone(), *p.min(q), *p.max(q)))
                        .collect();
                    f1.sort();
                    f2.sort();
                    return f1 == f2;
                }
                for &q in un2 {
                    if used.contains(&q) || sig1[un1[k]] != sig2[q] {
                        continue;
                    }
                    taken[k] = Some(q);
                    used.insert(q);
                    if rec(un1, un2, taken, used, k + 1, sig1, sig2, p12, free1, free2) {
                        return true;
                    }
                    taken[k] = None;
                    used.remove(&q);
                }
                false
            }
            let mut taken = vec![None; un1.len()];
            let mut used = BTreeSet::new();
            rec(&un1, &un2, &mut taken, &mut used, 0, sig1, sig2, &p12, free1, free2)
        };
        check_side(
            &self.r1.piece_a,
            &self.r2.piece_a,
            &self.r1.sig_a,
            &self.r2.sig_a,
            &self.r1.free_a,
            &self.r2.free_a,
        ) && check_side(
            &self.r1.piece_b,
            &self.r2.piece_b,
            &self.r1.sig_b,
            &self.r2.sig_b,
            &self.r1.free_b,
            &self.r2.free_b,
        )
    }
}

fn quick_reject(r1: &Reduced, r2: &Reduced, col1: &[u64], col2: &[u64]) -> bool {
    if r1.darts.len() != r2.darts.len() {
        return true;
    }
    let mut c1 = col1.to_vec();
    let mut c2 = col2.to_vec();
    c1.sort_unstable();
    c2.sort_unstable();
    if c1 != c2 {
        return true;
    }
    let sigs = |r: &Reduced| {
        let mut v: Vec<&PieceSig> = r.sig_a.iter().chain(r.sig_b.iter()).collect();
        v.sort();
        v.iter().map(|s| (*s).clone()).collect::<Vec<_>>()
    };
    sigs(r1) != sigs(r2)
}

fn try_iso(
    m1: &CombinatorialMap,
    c1: Option<&BTreeMap<Dart, bool>>,
    m2: &CombinatorialMap,
    c2: Option<&BTreeMap<Dart, bool>>,
    pol: &SymmetryPolicy,
) -> Result<Option<BTreeMap<Dart, Dart>>> {
    let r1 = build_reduced(m1, c1, pol);
    let r2 = build_reduced(m2, c2, pol);
    let col1 = wl_colors(&r1, pol);
    let col2 = wl_colors(&r2, pol);
    if quick_reject(&r1, &r2, &col1, &col2) {
        return Ok(None);
    }
    let n = r1.darts.len();
    let mut s = Search {
        r1: &r1,
        r2: &r2,
        pol,
        col1,
        col2,
        m12: vec![None; n],
        m21: vec![None; n],
        alpha_map: BTreeMap::new(),
        alpha_rev: BTreeMap::new(),
        beta_map: BTreeMap::new(),
        beta_rev: BTreeMap::new(),
        nodes: 0,
    };
    if s.solve()? {
        let witness: BTreeMap<Dart, Dart> = (0..n)
            .map(|i| (r1.darts[i], r2.darts[s.m12[i].unwrap()]))
            .collect();
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

/// Orientation-preserving labeled-map equivalence of normalized maps.
/// Colors, when supplied, must be respected by the witness.
pub fn maps_equivalent_colored(
    a: &CombinatorialMap,
    colors_a: Option<&BTreeMap<Dart, bool>>,
    b: &CombinatorialMap,
    colors_b: Option<&BTreeMap<Dart, bool>>,
    pol: &SymmetryPolicy,
) -> Result<MapEquivalenceReport> {
    let (na, trace_a) = normalize(a);
    let (nb, trace_b) = normalize(b);
    // Colors refer to faces of the original maps; recompute on the
    // normalized maps by region propagation when requested.
    let ca = colors_a.map(|c| transport_colors(a, &na, c));
    let cb = colors_b.map(|c| transport_colors(b, &nb, c));
    let mut witness = try_iso(&na, ca.as_ref(), &nb, cb.as_ref(), pol)?;
    if witness.is_none() && pol.allow_reflection {
        let nb_mirror = mirrored(&nb);
        let cbm = cb.as_ref().map(|c| transport_colors(&nb, &nb_mirror, c));
        witness = try_iso(&na, ca.as_ref(), &nb_mirror, cbm.as_ref(), pol)?;
    }
    Ok(MapEquivalenceReport {
        equivalent: witness.is_some(),
        witness,
        reduction_trace_left: trace_a,
        reduction_trace_right: trace_b,
    })
}

/// Plain map comparison without color data.
pub fn maps_equivalent(
    a: &CombinatorialMap,
    b: &CombinatorialMap,
    pol: &SymmetryPolicy,
) -> Result<MapEquivalenceReport> {
    maps_equivalent_colored(a, None, b, None, pol)
}

/// Transports a face-color assignment through an operation by matching
/// surviving darts: the new map's faces get the color of any old face that
/// shares a dart with them. Colors spread to faces in the same
/// gamma-complement region.
pub fn transport_colors(
    old: &CombinatorialMap,
    new: &CombinatorialMap,
    colors: &BTreeMap<Dart, bool>,
) -> BTreeMap<Dart, bool> {
    let mut out: BTreeMap<Dart, bool> = BTreeMap::new();
    for d in new.darts() {
        if old.contains(d) && !new.is_outer(d) {
            if let Some(c) = lookup_color(old, colors, d) {
                out.insert(new.face_id(d), c);
            }
        }
    }
    // Spread within gamma-complement regions.
    let ov = overlay(new, OverlaySide::GammaOnly, None);
    let mut region_color: BTreeMap<Dart, bool> = BTreeMap::new();
    for (f, c) in &out {
        let r = ov.piece_of_face[f];
        region_color.entry(r).or_insert(*c);
    }
    let mut full = BTreeMap::new();
    for (f, r) in &ov.piece_of_face {
        if let Some(c) = region_color.get(r) {
            full.insert(*f, *c);
        }
    }
    full
}

fn lookup_color(map: &CombinatorialMap, colors: &BTreeMap<Dart, bool>, d: Dart) -> Option<bool> {
    colors.get(&map.face_id(d)).copied()
}

/// The same surface with reversed orientation (rotations inverted).
pub fn mirrored(map: &CombinatorialMap) -> CombinatorialMap {
    let mut out = map.clone();
    let verts = map.vertices();
    for cyc in verts {
        let rev: Vec<Dart> = cyc.iter().rev().copied().collect();
        out.set_vertex_cycle(&rev);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::map::EdgeLabel;

    #[test]
    fn map_equals_itself() {
        for m in [build::torus_square(), build::genus1_s3_map(), build::disconn_map()] {
            let rep = maps_equivalent(&m, &m, &SymmetryPolicy::strict()).unwrap();
            assert!(rep.equivalent);
            assert!(rep.witness.is_some());
        }
    }

    #[test]
    fn relabeled_map_is_equivalent() {
        // Same torus built with shifted dart numbers.
        let m1 = build::torus_parallel_circles(2, EdgeLabel::Gamma);
        let m2 = {
            use crate::map::MapBuilder;
            let mut b = MapBuilder::new();
            for i in [7u32, 3] {
                b.edge(4 * i, 4 * i + 1);
                b.edge(4 * i + 2, 4 * i + 3);
                b.label(EdgeLabel::Gamma, &[4 * i]);
            }
            b.vertex(&[28, 30, 29, 15]);
            b.vertex(&[12, 14, 13, 31]);
            b.finish().unwrap()
        };
        let rep = maps_equivalent(&m1, &m2, &SymmetryPolicy::strict()).unwrap();
        assert!(rep.equivalent);
    }

    #[test]
    fn different_gamma_counts_differ() {
        let m1 = build::torus_parallel_circles(2, EdgeLabel::Gamma);
        let m2 = build::torus_parallel_circles(4, EdgeLabel::Gamma);
        let rep = maps_equivalent(&m1, &m2, &SymmetryPolicy::strict()).unwrap();
        assert!(!rep.equivalent);
    }

    #[test]
    fn torus_and_sphere_differ() {
        let m1 = build::torus_square();
        let m2 = build::sphere_two_discs();
        let rep = maps_equivalent(&m1, &m2, &SymmetryPolicy::strict()).unwrap();
        assert!(!rep.equivalent);
    }

    #[test]
    fn subdivision_is_invisible() {
        let m1 = build::genus1_s3_map();
        let mut m2 = m1.clone();
        let d = m2.darts().next().unwrap();
        m2.subdivide(d);
        let rep = maps_equivalent(&m1, &m2, &SymmetryPolicy::strict()).unwrap();
        assert!(rep.equivalent);
    }

    #[test]
    fn bigon_pair_is_equivalent_to_reduced() {
        // A sphere with crossing curves that reduce away vs disjoint curves.
        use crate::map::MapBuilder;
        let with_bigon = {
            let mut b = MapBuilder::new();
            b.edge(0, 1).edge(2, 3).edge(4, 5).edge(6, 7);
            b.label(EdgeLabel::Gamma, &[0, 2]);
            b.label(EdgeLabel::Alpha(0), &[4, 6]);
            b.vertex(&[0, 7, 3, 4]);
            b.vertex(&[1, 5, 2, 6]);
            b.finish().unwrap()
        };
        let disjoint = {
            let mut b = MapBuilder::new();
            // gamma loop, alpha loop, frame arc joining them on a sphere
            b.edge(0, 1).edge(2, 3).edge(4, 5);
            b.label(EdgeLabel::Gamma, &[0]);
            b.label(EdgeLabel::Alpha(0), &[2]);
            b.vertex(&[0, 4, 1]);
            b.vertex(&[2, 5, 3]);
            b.finish().unwrap()
        };
        let rep = maps_equivalent(&with_bigon, &disjoint, &SymmetryPolicy::strict()).unwrap();
        assert!(rep.equivalent, "bigon reduction should make these equal");
        assert_eq!(rep.reduction_trace_left.len(), 1);
    }

    #[test]
    fn alpha_index_permutation_policy() {
        let m1 = build::torus_parallel_circles(2, EdgeLabel::Alpha(0));
        let m2 = build::torus_parallel_circles(2, EdgeLabel::Alpha(5));
        assert!(!maps_equivalent(&m1, &m2, &SymmetryPolicy::strict()).unwrap().equivalent);
        assert!(maps_equivalent(&m1, &m2, &SymmetryPolicy::systems()).unwrap().equivalent);
    }
}
