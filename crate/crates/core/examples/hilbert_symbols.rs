//! Hilbert symbols at every place, and the product formula.

use quadext::arith::{hilbert_reciprocity_check, hilbert_symbol, rat, symbol_support, Place, SquareClass};

fn main() {
    let places = [
        Place::Real,
        Place::two(),
        Place::prime(3u32).unwrap(),
        Place::prime(5u32).unwrap(),
    ];
    for (a, b) in [(-1, -1), (2, 5), (3, 7), (-2, 5)] {
        let row: Vec<String> = places
            .iter()
            .map(|v| format!("{v}:{:+}", hilbert_symbol(&rat(a), &rat(b), v).unwrap()))
            .collect();
        let support: Vec<String> =
            symbol_support(&SquareClass::of_int(a).unwrap(), &SquareClass::of_int(b).unwrap())
                .iter()
                .map(ToString::to_string)
                .collect();
        println!(
            "({a}, {b})  {}  ramified at {{{}}}  reciprocity {}",
            row.join(" "),
            support.join(", "),
            hilbert_reciprocity_check(&rat(a), &rat(b)).unwrap()
        );
    }
}
