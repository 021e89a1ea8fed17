//! Twisting a descent by λ: the discriminant algebra of the new descent is [Q].

use quadext::arith::SquareClass;
use quadext::involution::{invariants_of_extension, twist_descent, OrthogonalExtensionDesc};

fn main() {
    let sc = |n| SquareClass::of_int(n).unwrap();
    for (d, lambda) in [(-1, 3), (-1, -1), (-3, 2), (7, -1)] {
        let x = OrthogonalExtensionDesc::new(sc(d), "1,1,1,1,1,-1".parse().unwrap(), sc(lambda));
        let t = twist_descent(&x).unwrap();
        println!(
            "d = {d:>2}, lambda = {lambda:>2}: [Q] = {}  psi' = {}  Delta = {}  match: {}",
            x.quaternion_class(),
            t.descent.psi0,
            t.delta,
            t.delta_matches_q
        );
        let same = invariants_of_extension(&x).unwrap();
        println!("  invariants: disc {}  [A] = {}", same.discriminant, same.brauer);
    }
}
