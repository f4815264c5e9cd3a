// shrink the trefoil mapping torus and print the best gluing table found
use knotkit::complex::*;
use knotkit::fixtures::*;

fn main() {
    let t = trefoil_mapping_torus();
    println!("start: {} tets", t.tets());
    let mut best = t.clone();
    for seed in 0..20u64 {
        let s = simplify(&t, seed, 60).unwrap();
        if s.tets() < best.tets() {
            best = s.clone();
            println!("seed {seed}: {} tets", best.tets());
            if validate_trefoil_exterior(&best).is_ok() {
                println!("  (validates as trefoil exterior)");
            } else {
                println!("  VALIDATION FAILED");
            }
        }
        if best.tets() <= 6 { break; }
    }
    println!("best: {} tets", best.tets());
    validate_trefoil_exterior(&best).unwrap();
    println!("{}", serialize_triangulation(&best));
}
