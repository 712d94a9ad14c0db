//! Germ groupoid of a partial action and its exact amenability certificate.

use amenact::action::instance_e1;
use amenact::groupoid::{amenability_certificate, build_germ_groupoid, verify_groupoid};
use amenact::ratio::rat_to_string;

fn main() {
    let e1 = instance_e1();
    let gg = build_germ_groupoid(&e1).unwrap();
    println!("arrows (x, t):");
    for (i, &(x, t)) in gg.germs.iter().enumerate() {
        println!(
            "  #{i}: ({x},{t})  s = {}, r = {}, inverse = #{}",
            gg.groupoid.source[i], gg.groupoid.range[i], gg.groupoid.inverse[i]
        );
    }
    let report = verify_groupoid(&gg.groupoid);
    println!("groupoid axioms: {}", if report.is_valid() { "valid" } else { "INVALID" });

    let (cert, verification) = amenability_certificate(&gg.groupoid).unwrap();
    println!("normalized counting measures on range fibers:");
    for (u, m) in cert.measures.iter().enumerate() {
        let entries: Vec<String> =
            m.iter().map(|(a, v)| format!("#{a} ↦ {}", rat_to_string(v))).collect();
        println!("  m^{u}: {}", entries.join(", "));
    }
    println!(
        "transport defect: {} (exact), fiber masses in [{}, {}]",
        rat_to_string(&verification.defect),
        rat_to_string(&verification.total_mass_min),
        rat_to_string(&verification.total_mass_max),
    );
}
