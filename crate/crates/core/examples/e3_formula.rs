//! e3 of Ad_ψ ⊗ (Q, γ) against the e3 of the companion form ⟨1, -d⟩ ⊗ ψ.

use quadext::arith::SquareClass;
use quadext::involution::{e3_of_extension, OrthogonalExtensionDesc};

fn main() {
    let one = SquareClass::one();
    for (d, psi) in [
        (-1, "1,1,1,1,1,-1"),
        (-1, "1,1,1,-1,-1,-1"),
        (-3, "-1,-1,-1,-1,-1,1"),
        (5, "1,1,1,1,1,-1"),
    ] {
        let x =
            OrthogonalExtensionDesc::new(SquareClass::of_int(d).unwrap(), psi.parse().unwrap(), one.clone());
        let e3 = e3_of_extension(&x).unwrap();
        let direct = x.companion_form().e3_real().unwrap();
        println!(
            "d = {d:>2}  psi = <{psi}>  e3 = {}  via companion form = {direct}",
            e3.value
        );
    }
    let x = OrthogonalExtensionDesc::new(
        SquareClass::of_int(-1).unwrap(),
        "1,1,1,1,1,-1".parse().unwrap(),
        SquareClass::of_int(-1).unwrap(),
    );
    println!("Q = (-1,-1): {:?}", e3_of_extension(&x).unwrap());
}
