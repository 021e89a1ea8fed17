//! Invariants of diagonal forms, isometry, and realizing a profile.

use quadext::arith::Place;
use quadext::qform::{isometric, realize_form, QuadraticForm};

fn main() {
    for s in ["1,-1", "1,1,1", "2,3,6", "1,2,-3", "1,1,1,1,1,1,1,1,1,1,2,2"] {
        let q: QuadraticForm = s.parse().unwrap();
        let pr = q.profile();
        println!(
            "{q}  d± = {}  sig = {}  hasse = {:?}  clifford(inf) = {:+}",
            pr.signed_disc(),
            pr.signature(),
            pr.hasse_support(),
            q.clifford_invariant(&Place::Real)
        );
        println!("  profile json: {}", serde_json::to_string(&pr).unwrap());
        let r = realize_form(&pr).unwrap();
        println!("  realized as {r}, isometric: {}", isometric(&q, &r));
    }
    let a: QuadraticForm = "1,1".parse().unwrap();
    let b: QuadraticForm = "2,2".parse().unwrap();
    let c: QuadraticForm = "1,3".parse().unwrap();
    println!(
        "<1,1> ~ <2,2>: {}   <1,1> ~ <1,3>: {}",
        isometric(&a, &b),
        isometric(&a, &c)
    );
}
