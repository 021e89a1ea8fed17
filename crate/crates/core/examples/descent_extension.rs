//! Orthogonal quadratic extensions of a unitary descent and their invariants.

use quadext::arith::SquareClass;
use quadext::brauer::BrauerClass2;
use quadext::involution::{
    discriminant_algebra, invariants_of_extension, orthogonal_extension, UnitaryDescent,
};

fn main() {
    let d = SquareClass::of_int(-1).unwrap();
    let u = UnitaryDescent::new(d.clone(), "1,1,1,1,1,2".parse().unwrap());
    let delta = discriminant_algebra(&u).unwrap();
    println!("discriminant algebra of (M_6(K), ad{} x bar): {delta}", u.psi0);

    // with beta = Δ the extension has trivial discriminant and Clifford invariant mod beta
    let x = orthogonal_extension(&u, &delta).unwrap();
    let inv = invariants_of_extension(&x).unwrap();
    println!("extension {}", serde_json::to_string(&x).unwrap());
    println!(
        "degree {}  [A] = {}  disc {}  clifford = 0 mod [A]: {}",
        inv.degree,
        inv.brauer,
        inv.discriminant,
        inv.clifford.equal_mod(&BrauerClass2::trivial(), &inv.brauer)
    );

    let bad = BrauerClass2::symbol(SquareClass::of_int(-1).unwrap(), SquareClass::of_int(-1).unwrap());
    let u17 = UnitaryDescent::new(SquareClass::of_int(17).unwrap(), "1,1".parse().unwrap());
    println!(
        "(-1,-1) over Q(sqrt(17)): {:?}",
        orthogonal_extension(&u17, &bad).err().map(|e| e.code())
    );
}
