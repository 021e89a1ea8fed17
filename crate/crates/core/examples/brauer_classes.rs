//! 2-torsion Brauer classes of Q as local-invariant profiles.

use quadext::arith::SquareClass;
use quadext::brauer::{BrauerClass2, QuaternionSymbol};

fn sc(n: i64) -> SquareClass {
    SquareClass::of_int(n).unwrap()
}

fn main() {
    let h = BrauerClass2::symbol(sc(-1), sc(-1));
    let c = BrauerClass2::symbol(sc(2), sc(5));
    println!("(-1,-1): {h}, index bound {}", h.index_bound());
    println!("(2,5): {c}");
    println!("(-1,-1) + (2,5): {}", h.add(&c));
    println!("(-1,-1) + (-1,-1) trivial: {}", h.add(&h).is_trivial());
    println!(
        "(-1,-1) = 0 mod (2,5): {}",
        h.equal_mod(&BrauerClass2::trivial(), &c)
    );
    for d in [-1, 17, 5, 1] {
        println!("split by Q(sqrt({d})): {}", h.is_split_by(&sc(d)));
    }
    let mixed = BrauerClass2::class_of(vec![
        QuaternionSymbol::new(sc(-1), sc(3)),
        QuaternionSymbol::new(sc(3), sc(-3)),
    ]);
    println!("(-1,3)(3,-3): {mixed}");
    println!("json: {}", serde_json::to_string(&mixed).unwrap());
}
