//! The algebra B ⊕ Bz over B = M_m(K) with its involution, built and verified.
//!
//! Usage: crossed_product [m] [d]

use quadext::arith::SquareClass;
use quadext::crossed::{build_extension, hyperbolicity_witness, verify_extension, InvolutionType};
use quadext::involution::UnitaryDescent;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let m = args.first().copied().unwrap_or(2) as usize;
    let d = SquareClass::of_int(args.get(1).copied().unwrap_or(-3)).unwrap();
    let psi0 = (1..=m as i64)
        .map(|i| if i % 2 == 0 { -i } else { i }.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let u = UnitaryDescent::new(d, psi0.parse().unwrap());
    for kind in [InvolutionType::Orthogonal, InvolutionType::Symplectic] {
        let alg = match build_extension(&u, kind, &SquareClass::one()) {
            Ok(a) => a,
            Err(e) => {
                println!("{kind}: {e}");
                continue;
            }
        };
        let report = verify_extension(&alg);
        println!(
            "{kind}, m = {m}, dim A = {}, dim Sym = {}",
            report.dim, report.sym_dim
        );
        for c in &report.checks {
            println!(
                "  {:<18} {}  {}",
                c.name,
                if c.passed { "ok" } else { "FAILED" },
                c.detail
            );
        }
        if kind == InvolutionType::Orthogonal {
            match hyperbolicity_witness(&alg) {
                Ok(Some(_)) => println!("  hyperbolic: idempotent e with sigma(e) = 1 - e found"),
                Ok(None) => println!("  not hyperbolic"),
                Err(e) => println!("  {e}"),
            }
        }
    }
}
