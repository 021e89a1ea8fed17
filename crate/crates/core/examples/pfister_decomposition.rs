//! Twelve-dimensional forms in I³ written as ⟨1, -d⟩ ⊗ ψ.

use quadext::fixtures::gen_i3_12;
use quadext::pfister12::decompose12;
use quadext::qform::{isometric, QuadraticForm};

fn main() {
    let mut forms: Vec<QuadraticForm> = vec![
        "1,1,1,-1,-1,-1,1,1,1,-1,-1,-1".parse().unwrap(),
        QuadraticForm::from_ints(&[1, 2])
            .unwrap()
            .tensor(&"1,1,1,1,1,-1".parse().unwrap()),
    ];
    forms.extend((0..3).map(|s| gen_i3_12(s, 10).unwrap()));
    for q in forms {
        let r = decompose12(&q).unwrap();
        println!("q = {q}");
        println!(
            "  d = {}  psi = {}  isometric: {}",
            r.d,
            r.psi,
            isometric(&q, &r.product())
        );
        for c in &r.certificate.checks {
            let place = c.place.as_ref().map_or("global".to_string(), |p| p.to_string());
            println!("    {place:>6}: {} [{}]", c.condition, c.holds);
        }
    }
    let bad: QuadraticForm = "1,1,1,1,1,1,1,1,1,1,2,2".parse().unwrap();
    println!("{bad}: {}", decompose12(&bad).unwrap_err());
}
