//! Witt indices, hyperbolicity, and membership in I³.

use quadext::qform::QuadraticForm;

fn main() {
    for s in [
        "1,-1,2",
        "1,1,1,-1,-1,-1",
        "1,2,-3,-6",
        "1,1,1,1,-7",
        "1,1,1,1,1,1,1,1,-1,-1,-1,-1",
    ] {
        let q: QuadraticForm = s.parse().unwrap();
        println!(
            "{q}  witt index {}  hyperbolic {}  in I3 {}  obstruction {:?}",
            q.witt_index(),
            q.is_hyperbolic(),
            q.in_i3(),
            q.profile().i3_obstruction()
        );
    }
    let q: QuadraticForm = "1,1,1,1,1,1,1,1".parse().unwrap();
    println!("<1^8>: e3 at the real place = {}", q.e3_real().unwrap());
}
