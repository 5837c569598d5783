//! Chord diagrams: the dividing-arc data of one compressing disc, recorded
//! as a non-crossing matching on the gaps between the boundary's crossings
//! with the surface dividing set.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cutglue::{build_seam, dissolve_hole, round_seam, SeamItem};
use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};

/// Identity of a compressing disc.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum DiscId {
    Alpha(u32),
    Beta(u32),
}

impl DiscId {
    pub fn label(&self) -> EdgeLabel {
        match self {
            DiscId::Alpha(i) => EdgeLabel::Alpha(*i),
            DiscId::Beta(j) => EdgeLabel::Beta(*j),
        }
    }

    pub fn is_alpha(&self) -> bool {
        matches!(self, DiscId::Alpha(_))
    }
}

impl std::fmt::Display for DiscId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiscId::Alpha(i) => write!(f, "A{i}"),
            DiscId::Beta(j) => write!(f, "B{j}"),
        }
    }
}

/// Dividing-set data of one disc. `points` lists the crossings of the disc
/// boundary with the surface dividing set, in order along the curve's stored
/// orientation, as canonical vertex ids. `chords` pairs gap indices: gap `i`
/// is the stretch just after crossing `i`. Exactly one chord end per gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDiagram {
    pub disc: DiscId,
    pub points: Vec<Dart>,
    pub chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    /// Validates structure: even point count, one chord end per gap, chords
    /// non-crossing as arcs in a disc.
    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        if n % 2 != 0 {
            return Err(MapError::InvalidMap(format!(
                "disc {} has an odd number of dividing-set crossings",
                self.disc
            )));
        }
        if self.chords.len() * 2 != n {
            return Err(MapError::NoChords);
        }
        let mut used = BTreeSet::new();
        for (a, b) in &self.chords {
            for g in [a, b] {
                if *g >= n || !used.insert(*g) {
                    return Err(MapError::InvalidMap(format!(
                        "disc {}: gap {} reused or out of range",
                        self.disc, g
                    )));
                }
            }
        }
        // Non-crossing: interleaving chords are forbidden.
        for (a, b) in &self.chords {
            let (a, b) = (*a.min(b), *a.max(b));
            for (c, d) in &self.chords {
                let (c, d) = (*c.min(d), *c.max(d));
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(MapError::NonCrossingViolation(format!(
                        "disc {}: chords ({a} {b}) and ({c} {d}) interleave",
                        self.disc
                    )));
                }
            }
        }
        Ok(())
    }

    /// Crossings lying in the same complementary region as crossing `i`.
    /// The chord with ends in gaps (a, b), a < b, encloses the crossings
    /// a+1..=b; two crossings share a region exactly when every chord
    /// encloses both or neither.
    pub fn crossing_region(&self, i: usize) -> BTreeSet<usize> {
        let n = self.points.len();
        let sig = |x: usize| -> Vec<bool> {
            self.chords
                .iter()
                .map(|(a, b)| {
                    let (a, b) = (*a.min(b), *a.max(b));
                    x > a && x <= b
                })
                .collect()
        };
        let base = sig(i);
        (0..n).filter(|x| sig(*x) == base).collect()
    }

    /// True when two distinct crossings cobound an embedded arc in the disc
    /// interior disjoint from all chords.
    pub fn same_region(&self, i: usize, j: usize) -> bool {
        i != j && self.crossing_region(i).contains(&j)
    }

    /// Renumbers gaps after point removal/insertion: helper for surgeries.
    pub fn gap_of_point(&self, v: Dart) -> Option<usize> {
        self.points.iter().position(|p| *p == v)
    }
}

/// Fills the hole through `hole` with a disc carrying the given chords.
/// The stubs on the circle must all be dividing-set ends; `chords` pairs
/// gap indices counted along the hole orbit (gap i follows stub i). The
/// dividing arcs join by edge rounding: each chord end connects to the next
/// surface end along the seam, oriented as the boundary of the cap.
pub fn cap_with_chords(
    map: &CombinatorialMap,
    hole: Dart,
    chords: &[(usize, usize)],
    mirror: bool,
) -> Result<CombinatorialMap> {
    let mut m = map.clone();
    if !m.is_outer(hole) {
        return Err(MapError::InvalidMap(format!("{hole:?} is not a hole dart")));
    }
    // Peek for stubs; structure-free circles get a pendant anchor so the
    // surface does not fall apart when the circle is rebuilt.
    let has_stub = m.face_cycle(hole).iter().any(|d| {
        m.vertex_cycle(m.opposite(*d)).iter().any(|x| *m.label(*x) != EdgeLabel::Boundary)
    });
    if !has_stub {
        crate::cutglue::ensure_stub(&mut m, hole);
    }
    let stubs = dissolve_hole(&mut m, hole)?;
    let n_gamma = stubs.iter().filter(|s| *m.label(**s) == EdgeLabel::Gamma).count();
    for s in &stubs {
        if !matches!(m.label(*s), EdgeLabel::Gamma | EdgeLabel::Frame) {
            return Err(MapError::NoAlternation(format!(
                "cap over a circle with stub {s:?} labeled {}",
                m.label(*s)
            )));
        }
    }
    if chords.len() * 2 != n_gamma {
        return Err(MapError::InvalidMap(format!(
            "cap chords ({}) do not match circle crossings ({n_gamma})",
            chords.len()
        )));
    }
    // Chord ends: one new loose gamma edge end per gap.
    let mut chord_end: Vec<Option<Dart>> = vec![None; n_gamma];
    for (a, b) in chords {
        let (e1, e2) = m.add_edge(EdgeLabel::Gamma);
        if *a >= n_gamma || *b >= n_gamma || chord_end[*a].is_some() || chord_end[*b].is_some() {
            return Err(MapError::InvalidMap("bad chord gap indices".into()));
        }
        chord_end[*a] = Some(e1);
        chord_end[*b] = Some(e2);
    }
    // Seam in hole-orbit order: each gamma stub is followed by its gap's
    // chord end on the cap side; frame anchors thread through alone.
    let mut items = Vec::new();
    let mut gap = 0usize;
    for s in &stubs {
        items.push(SeamItem { a_stub: Some(*s), b_stub: None });
        if *m.label(*s) == EdgeLabel::Gamma {
            items.push(SeamItem { a_stub: None, b_stub: Some(chord_end[gap].unwrap()) });
            gap += 1;
        }
    }
    let seam = build_seam(&mut m, &items);
    round_seam(&mut m, &seam, mirror);
    m.smooth_all();
    m.validate()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_validation() {
        let good = ChordDiagram { disc: DiscId::Alpha(0), points: vec![Dart(0), Dart(1), Dart(2), Dart(3)], chords: vec![(0, 1), (2, 3)] };
        good.validate().unwrap();
        let crossing = ChordDiagram {
            disc: DiscId::Alpha(0),
            points: vec![Dart(0), Dart(1), Dart(2), Dart(3)],
            chords: vec![(0, 2), (1, 3)],
        };
        assert!(matches!(crossing.validate(), Err(MapError::NonCrossingViolation(_))));
    }

    #[test]
    fn regions_of_nested_chords() {
        // Chords (0,1),(2,5),(3,4): chord spans enclose crossings {1},
        // {3,4,5}, {4}. Crossings 0 and 2 share the outermost region,
        // 3 and 5 the middle one, 4 sits alone inside.
        let cd = ChordDiagram {
            disc: DiscId::Alpha(0),
            points: (0..6).map(Dart).collect(),
            chords: vec![(0, 1), (2, 5), (3, 4)],
        };
        cd.validate().unwrap();
        assert!(cd.same_region(0, 2));
        assert!(cd.same_region(3, 5));
        assert!(!cd.same_region(3, 4));
        assert!(!cd.same_region(1, 0));
    }
}
