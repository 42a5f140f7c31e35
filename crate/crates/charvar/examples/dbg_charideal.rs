use charvar::groebner::{elimination_ideal};
use charvar::knot::KnotPresentation;
use charvar::variety::character_system_for_validation;
use charvar::groebner::groebner_basis;

fn main() {
    let kp = KnotPresentation::figure_eight();
    let sys = character_system_for_validation(&kp).unwrap();
    let t0 = std::time::Instant::now();
    let gb = groebner_basis(&sys);
    println!("block GB in {:?}", t0.elapsed());
    for g in gb.elements() {
        let maxbits = g
            .terms()
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0);
        println!(
            "  elem: terms {} deg {:?} max_coeff_bits {}",
            g.n_terms(),
            g.total_degree(),
            maxbits
        );
    }
    let t1 = std::time::Instant::now();
    let _ = elimination_ideal(&sys, &["s", "t"]).unwrap();
    println!("elimination again in {:?}", t1.elapsed());
}
