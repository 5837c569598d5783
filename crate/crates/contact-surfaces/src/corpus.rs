//! Reference decorated diagrams used by tests, the acceptance suite, and the
//! bundled example files.

use std::collections::BTreeMap;

use crate::chord::{ChordDiagram, DiscId};
use crate::convex::ConvexSurfaceData;
use crate::map::{CombinatorialMap, Dart, EdgeLabel, MapError, Result};
use crate::tightness::DecoratedHeegaardDiagram;
use crate::{build, tightness};

/// Assembles a diagram from a decorated map: walks each disc boundary from
/// its orientation dart, reads the crossing sequence, and attaches the given
/// chord matchings (gap indices counted from the first crossing reached).
pub fn diagram_from_map(
    map: CombinatorialMap,
    discs: &[(DiscId, Dart, Vec<(usize, usize)>)],
) -> Result<DecoratedHeegaardDiagram> {
    let surface = ConvexSurfaceData::new(map)?;
    let mut diag = DecoratedHeegaardDiagram {
        surface,
        discs: BTreeMap::new(),
        orient: BTreeMap::new(),
    };
    for (id, start, chords) in discs {
        if diag.map().label(*start) != &id.label() {
            return Err(MapError::InvalidMap(format!(
                "orientation dart of {id} carries label {}",
                diag.map().label(*start)
            )));
        }
        diag.orient.insert(*id, *start);
        let points = diag.crossing_points(*id)?;
        let cd = ChordDiagram { disc: *id, points, chords: chords.clone() };
        diag.discs.insert(*id, cd);
    }
    diag.validate()?;
    Ok(diag)
}

/// Genus-0 convex diagram of the three-sphere: a sphere with connected
/// dividing set and empty disc systems.
pub fn genus0_s3() -> DecoratedHeegaardDiagram {
    let map = build::sphere_one_circle(EdgeLabel::Gamma);
    diagram_from_map(map, &[]).expect("genus-0 diagram")
}

/// Standard genus-1 convex diagram of the three-sphere (Hopf-band diagram):
/// meridian and longitude meeting once, two diagonal dividing curves, both
/// discs product discs.
pub fn genus1_s3() -> DecoratedHeegaardDiagram {
    let map = build::genus1_s3_map();
    diagram_from_map(
        map,
        &[
            (DiscId::Alpha(0), Dart(0), vec![(0, 1)]),
            (DiscId::Beta(0), Dart(6), vec![(0, 1)]),
        ],
    )
    .expect("genus-1 diagram")
}

/// Overtwisted-side torus: dividing set two parallel meridians, the
/// meridian disc crossing one of them twice inessentially.
pub fn ot_torus() -> DecoratedHeegaardDiagram {
    let map = build::ot_torus_map();
    diagram_from_map(
        map,
        &[
            (DiscId::Alpha(0), Dart(0), vec![(0, 1)]),
            (DiscId::Beta(0), Dart(6), vec![(0, 1)]),
        ],
    )
    .expect("overtwisted torus diagram")
}

/// Tight-but-not-convex torus diagram: four diagonal dividing curves, each
/// disc crossing them four times, chords chosen per the figure so that both
/// cut-open balls have connected dividing sets.
pub fn disconn(alpha_chords: Vec<(usize, usize)>, beta_chords: Vec<(usize, usize)>) -> Result<DecoratedHeegaardDiagram> {
    let map = build::disconn_map();
    diagram_from_map(
        map,
        &[
            (DiscId::Alpha(0), Dart(0), alpha_chords),
            (DiscId::Beta(0), Dart(10), beta_chords),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tightness::{cut_and_smooth, is_convex_splitting, Side, Verdict};

    #[test]
    fn genus1_s3_is_convex() {
        let d = genus1_s3();
        let cert = is_convex_splitting(&d).unwrap();
        assert_eq!(cert.tight_u.verdict, Verdict::Tight, "{:?}", cert.tight_u);
        assert_eq!(cert.tight_u.sphere_gamma_components, vec![1]);
        assert_eq!(cert.tight_v.verdict, Verdict::Tight, "{:?}", cert.tight_v);
        assert!(cert.convex);
    }

    #[test]
    fn genus0_s3_is_convex() {
        let d = genus0_s3();
        let cert = is_convex_splitting(&d).unwrap();
        assert!(cert.convex);
        assert_eq!(cert.tight_u.sphere_gamma_components, vec![1]);
    }

    #[test]
    fn ot_torus_u_side_not_certified() {
        let d = ot_torus();
        let u = cut_and_smooth(&d, Side::U).unwrap();
        assert_eq!(u.verdict, Verdict::NotCertified, "{:?}", u);
        assert_eq!(u.sphere_gamma_components, vec![2]);
        let v = cut_and_smooth(&d, Side::V).unwrap();
        assert_eq!(v.verdict, Verdict::Tight, "{:?}", v);
        let cert = is_convex_splitting(&d).unwrap();
        assert!(!cert.convex);
    }

    #[test]
    fn disconn_chord_options() {
        // Of the four chord combinations, the figure's encoding is tight on
        // both sides; check that at least one combination certifies tight
        // and record it, and that the certified diagram is not convex.
        let mut tight_combos = Vec::new();
        for (ac, bc) in [
            (vec![(0, 1), (2, 3)], vec![(0, 1), (2, 3)]),
            (vec![(0, 1), (2, 3)], vec![(1, 2), (3, 0)]),
            (vec![(1, 2), (3, 0)], vec![(0, 1), (2, 3)]),
            (vec![(1, 2), (3, 0)], vec![(1, 2), (3, 0)]),
        ] {
            let d = disconn(ac.clone(), bc.clone()).unwrap();
            let u = cut_and_smooth(&d, Side::U).unwrap();
            let v = cut_and_smooth(&d, Side::V).unwrap();
            if u.verdict == Verdict::Tight && v.verdict == Verdict::Tight {
                tight_combos.push((ac, bc));
            }
        }
        assert!(!tight_combos.is_empty(), "some chord choice realizes the tight figure");
        let (ac, bc) = tight_combos[0].clone();
        let d = disconn(ac, bc).unwrap();
        let cert = is_convex_splitting(&d).unwrap();
        assert!(!cert.convex, "four essential crossings per disc");
        assert_eq!(crate::tightness::essential_gamma_crossings(&d, DiscId::Alpha(0)).unwrap(), 4);
    }
}
