//! Hand-rolled constructors for small reference surfaces.
//!
//! Dart layouts follow the plane pictures: rotations list out-darts
//! counterclockwise, so faces lie to the left of their darts.

use crate::map::{CombinatorialMap, EdgeLabel, MapBuilder};

/// Torus from a square with opposite sides identified: one vertex, two loop
/// edges, one square face.
pub fn torus_square() -> CombinatorialMap {
    let mut b = MapBuilder::new();
    b.edge(0, 1).edge(2, 3);
    b.vertex(&[0, 2, 1, 3]);
    b.label(EdgeLabel::Frame, &[0, 2]);
    b.finish().expect("torus schema")
}

/// Sphere: a single loop edge, two disc faces.
pub fn sphere_two_discs() -> CombinatorialMap {
    let mut b = MapBuilder::new();
    b.edge(0, 1);
    b.vertex(&[0, 1]);
    b.label(EdgeLabel::Frame, &[0]);
    b.finish().expect("sphere schema")
}

/// Sphere with one embedded circle of the given label.
pub fn sphere_one_circle(label: EdgeLabel) -> CombinatorialMap {
    let mut b = MapBuilder::new();
    b.edge(0, 1);
    b.vertex(&[0, 1]);
    b.label(label, &[0]);
    b.finish().expect("sphere with circle")
}

/// Sphere with `n >= 2` parallel circles of the given label, scaffolded by
/// frame arcs joining consecutive circles.
pub fn sphere_parallel_circles(n: usize, label: EdgeLabel) -> CombinatorialMap {
    assert!(n >= 2);
    let mut b = MapBuilder::new();
    // Circle i: loop edge (4i, 4i+1) at a vertex; frame arc i (4i+2, 4i+3)
    // from circle i to circle i+1, for i in 0..n-1.
    for i in 0..n as u32 {
        b.edge(4 * i, 4 * i + 1);
        b.label(label.clone(), &[4 * i]);
    }
    for i in 0..(n as u32 - 1) {
        b.edge(4 * i + 2, 4 * i + 3);
    }
    // Vertex on circle i: loop darts plus frame stubs to previous/next.
    for i in 0..n as u32 {
        let mut cyc = vec![4 * i, 4 * i + 1];
        // frame dart toward circle i+1 sits on one side, toward i-1 on the other
        if i + 1 < n as u32 {
            cyc.insert(1, 4 * i + 2);
        }
        if i > 0 {
            cyc.push(4 * (i - 1) + 3);
        }
        b.vertex(&cyc);
    }
    b.finish().expect("sphere with parallel circles")
}

/// Torus with `n >= 1` parallel essential circles of the given label and one
/// transverse frame circle crossing each once.
pub fn torus_parallel_circles(n: usize, label: EdgeLabel) -> CombinatorialMap {
    assert!(n >= 1);
    let n = n as u32;
    let mut b = MapBuilder::new();
    for i in 0..n {
        b.edge(4 * i, 4 * i + 1); // circle i loop at vertex i
        b.edge(4 * i + 2, 4 * i + 3); // frame from vertex i to vertex i+1
        b.label(label.clone(), &[4 * i]);
    }
    for i in 0..n {
        let prev = (i + n - 1) % n;
        b.vertex(&[4 * i, 4 * i + 2, 4 * i + 1, 4 * prev + 3]);
    }
    b.finish().expect("torus with parallel circles")
}

/// Genus-1 Heegaard surface of the three-sphere with the Hopf-band
/// decorations: alpha meridian, beta longitude meeting it once, and two
/// diagonal dividing curves each crossing alpha once and beta once.
///
/// Plane model on the unit square (sides identified): alpha is the left
/// side, beta the bottom, the dividing curves run in direction (1,1).
pub fn genus1_s3_map() -> CombinatorialMap {
    let mut b = MapBuilder::new();
    // Edge darts: name+direction encoded in the comments.
    // alpha: P->A2 (0,1), A2->A1 (2,3), A1->P (4,5)
    // beta:  P->B1 (6,7), B1->B2 (8,9), B2->P (10,11)
    // gamma1: A1->B1 (12,13), B1->A1 (14,15)
    // gamma2: A2->B2 (16,17), B2->A2 (18,19)
    b.edge(0, 1).edge(2, 3).edge(4, 5);
    b.edge(6, 7).edge(8, 9).edge(10, 11);
    b.edge(12, 13).edge(14, 15);
    b.edge(16, 17).edge(18, 19);
    b.label(EdgeLabel::Alpha(0), &[0, 2, 4]);
    b.label(EdgeLabel::Beta(0), &[6, 8, 10]);
    b.label(EdgeLabel::Gamma, &[12, 14, 16, 18]);
    // P = alpha x beta: (b1+@0, a1+@90, b3-@180, a3-@270)
    b.vertex(&[6, 0, 11, 5]);
    // A1 = alpha x gamma1: (g11+@45, a3+@90, g12-@225, a2-@270)
    b.vertex(&[12, 4, 15, 3]);
    // A2 = alpha x gamma2: (g21+@45, a2+@90, g22-@225, a1-@270)
    b.vertex(&[16, 2, 19, 1]);
    // B1 = beta x gamma1: (b2+@0, g12+@45, b1-@180, g11-@225)
    b.vertex(&[8, 14, 7, 13]);
    // B2 = beta x gamma2: (b3+@0, g22+@45, b2-@180, g21-@225)
    b.vertex(&[10, 18, 9, 17]);
    b.finish().expect("genus-1 diagram of S^3")
}

/// Overtwisted-side torus: dividing set two parallel meridians, alpha a
/// meridian with a finger crossing one of them twice, beta a longitude.
///
/// Square model: beta = bottom side; dividing curves at x=1/3 and x=2/3;
/// alpha = left side with a rightward finger across the x=1/3 curve.
pub fn ot_torus_map() -> CombinatorialMap {
    let mut b = MapBuilder::new();
    // Vertices: P (alpha x beta), Q1, Q2 (alpha x gamma1, finger), R1 (beta x
    // gamma1), R2 (beta x gamma2).
    // alpha: P->Q1 (0,1), Q1->Q2 (2,3), Q2->P (4,5)   [going up the left side,
    //   with the finger detour between Q1 and Q2]
    // beta:  P->R1 (6,7), R1->R2 (8,9), R2->P (10,11)
    // gamma1: R1->Q1 (12,13), Q1->Q2 (14,15), Q2->R1 (16,17)
    // gamma2: loop at R2 (18,19)
    b.edge(0, 1).edge(2, 3).edge(4, 5);
    b.edge(6, 7).edge(8, 9).edge(10, 11);
    b.edge(12, 13).edge(14, 15).edge(16, 17);
    b.edge(18, 19);
    b.label(EdgeLabel::Alpha(0), &[0, 2, 4]);
    b.label(EdgeLabel::Beta(0), &[6, 8, 10]);
    b.label(EdgeLabel::Gamma, &[12, 14, 16, 18]);
    // P: (beta-out@0, alpha-out@90, beta-in@180, alpha-in@270)
    b.vertex(&[6, 0, 11, 5]);
    // Q1: alpha runs up then pokes right; gamma1 runs up through it.
    // Out-darts: alpha finger segment east (2), gamma1 up (14), alpha down
    // toward P (1), gamma1 down toward R1 (13).
    b.vertex(&[2, 14, 1, 13]);
    // Q2: finger tip turns back; alpha continues up (4), gamma1 up toward R1
    // (16), alpha finger west (3), gamma1 down (15).
    b.vertex(&[16, 4, 15, 3]);
    // R1: (beta-east 8, gamma1-up 12, beta-west 7, gamma1-down 17)
    b.vertex(&[8, 12, 7, 17]);
    // R2: (beta-east 10, gamma2-up 18, beta-west 9, gamma2-down 19)
    b.vertex(&[10, 18, 9, 19]);
    b.finish().expect("overtwisted torus")
}

/// Tight-but-not-convex torus: four parallel (1,1) dividing curves against
/// the meridian/longitude pair.
pub fn disconn_map() -> CombinatorialMap {
    let mut b = MapBuilder::new();
    // alpha = left side (x=0) upward, beta = bottom (y=0) rightward,
    // gamma_k = line x - y = (2k+1)/8 for k=0..3 in direction (1,1).
    // Along alpha from P=(0,0) upward we meet gamma at y = 1-(2k+1)/8:
    // gamma3 (y=1/8... ) order: y=1/8 -> k=3? 1-(2k+1)/8 = 1/8 gives k=3.
    // So upward order: G3, G2, G1, G0. Along beta rightward: x=(2k+1)/8:
    // order G0, G1, G2, G3.
    // alpha edges: P->A3 (0,1), A3->A2 (2,3), A2->A1 (4,5), A1->A0 (6,7), A0->P (8,9)
    // beta edges:  P->B0 (10,11), B0->B1 (12,13), B1->B2 (14,15), B2->B3 (16,17), B3->P (18,19)
    // gamma_k edges: A_k -> B_k (20+4k, 21+4k), B_k -> A_k (22+4k, 23+4k)
    b.edge(0, 1).edge(2, 3).edge(4, 5).edge(6, 7).edge(8, 9);
    b.edge(10, 11).edge(12, 13).edge(14, 15).edge(16, 17).edge(18, 19);
    for k in 0..4u32 {
        b.edge(20 + 4 * k, 21 + 4 * k);
        b.edge(22 + 4 * k, 23 + 4 * k);
        b.label(EdgeLabel::Gamma, &[20 + 4 * k, 22 + 4 * k]);
    }
    b.label(EdgeLabel::Alpha(0), &[0, 2, 4, 6, 8]);
    b.label(EdgeLabel::Beta(0), &[10, 12, 14, 16, 18]);
    // P: (beta-out 10, alpha-out 0, beta-in 19, alpha-in 9)
    b.vertex(&[10, 0, 19, 9]);
    // A_k at (0, 1-(2k+1)/8): rotation (gamma-out@45, alpha-up@90,
    // gamma-in@225, alpha-down@270).
    // alpha-up dart at A3 is 2, at A2 is 4, at A1 is 6, at A0 is 8.
    // alpha-down (incoming edge's return dart): at A3 it is 1, A2: 3, A1: 5, A0: 7.
    b.vertex(&[32, 2, 35, 1]); // A3
    b.vertex(&[28, 4, 31, 3]); // A2
    b.vertex(&[24, 6, 27, 5]); // A1
    b.vertex(&[20, 8, 23, 7]); // A0
    // B_k at ((2k+1)/8, 0): rotation (beta-east@0, gamma-out@45, beta-west@180, gamma-in@225).
    // beta-east dart at B0: 12, B1: 14, B2: 16, B3: 18.
    // beta-west: at B0: 11, B1: 13, B2: 15, B3: 17.
    b.vertex(&[12, 22, 11, 21]); // B0
    b.vertex(&[14, 26, 13, 25]); // B1
    b.vertex(&[16, 30, 15, 29]); // B2
    b.vertex(&[18, 34, 17, 33]); // B3
    b.finish().expect("disconn torus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::EdgeLabel;

    #[test]
    fn reference_surfaces_have_expected_shape() {
        assert_eq!(torus_square().euler_and_genus().unwrap(), (0, 1, 1));
        assert_eq!(sphere_two_discs().euler_and_genus().unwrap(), (2, 0, 1));
        assert_eq!(
            sphere_one_circle(EdgeLabel::Gamma).euler_and_genus().unwrap(),
            (2, 0, 1)
        );
        assert_eq!(
            sphere_parallel_circles(2, EdgeLabel::Gamma).euler_and_genus().unwrap(),
            (2, 0, 1)
        );
        assert_eq!(
            sphere_parallel_circles(3, EdgeLabel::Gamma).euler_and_genus().unwrap(),
            (2, 0, 1)
        );
        assert_eq!(
            torus_parallel_circles(2, EdgeLabel::Gamma).euler_and_genus().unwrap(),
            (0, 1, 1)
        );
    }

    #[test]
    fn genus1_s3_shape() {
        let m = genus1_s3_map();
        assert_eq!(m.euler_and_genus().unwrap(), (0, 1, 1));
        let gammas = m.curve_components(|l| *l == EdgeLabel::Gamma);
        assert_eq!(gammas.len(), 2);
        assert!(gammas.iter().all(|(_, closed)| *closed));
    }

    #[test]
    fn ot_torus_shape() {
        let m = ot_torus_map();
        assert_eq!(m.euler_and_genus().unwrap(), (0, 1, 1));
        assert_eq!(m.curve_components(|l| *l == EdgeLabel::Gamma).len(), 2);
    }

    #[test]
    fn disconn_shape() {
        let m = disconn_map();
        assert_eq!(m.euler_and_genus().unwrap(), (0, 1, 1));
        assert_eq!(m.curve_components(|l| *l == EdgeLabel::Gamma).len(), 4);
    }
}
