use contact_surfaces::build;
use contact_surfaces::normalize::normalize;
use contact_surfaces::map::EdgeLabel;
use contact_surfaces::cutglue::cut_along_component;
fn main() {
    let m = build::ot_torus_map();
    let (n, tr) = normalize(&m);
    println!("trace: {:?}", tr);
    println!("shape: {:?}", n.euler_and_genus().unwrap());
    for (seq, closed) in n.curve_components(|l| matches!(l, EdgeLabel::Alpha(_))) {
        println!("alpha comp: len {} closed {}", seq.len(), closed);
        // cut along it
        let (cut, _t) = cut_along_component(&n, seq[0]).unwrap();
        for c in cut.components() {
            println!("  piece: {:?}", cut.component_shape(&c));
        }
    }
    for (seq, closed) in n.curve_components(|l| *l == EdgeLabel::Gamma) {
        println!("gamma comp: len {} closed {}", seq.len(), closed);
    }
}
