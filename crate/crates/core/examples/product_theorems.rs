// Products: spaces multiply their distribution functions pointwise,
// neighborhood systems multiply as boxes, and each construction keeps the
// structure of its factors.
//
// ```bash
// cargo run -p smtop --example product_theorems
// ```

use std::error::Error;

use smtop::neighborhood::{sphere_system, Elem, GEcart};
use smtop::product::{
    box_system, check_preservation, product_ecart, product_space, verify_product_axioms, verify_product_menger,
    verify_r_product, GeneratorBounds,
};
use smtop::gtop::SystemType;
use smtop::smspace::{MetricKind, SmSpace};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let coin = SmSpace::integer_line(2, MetricKind::Step);
    let dice = SmSpace::integer_line(6, MetricKind::Step);

    let cd = product_space(&coin, &dice);
    println!("coin × dice has {} points", cd.len());
    println!("F_(1,1)(2,6) = {}", cd.dist_by_label("(1,1)", "(2,6)")?);
    println!("axioms hold on the product: {}", verify_product_axioms(&coin, &dice).passed());
    println!("Menger with T(a, b) = ab on the product: {}", verify_product_menger(&coin, &dice).passed());

    let boxed = box_system(&sphere_system(&coin), &sphere_system(&coin));
    println!("box system of the coin spheres, verdict {}", boxed.classify().verdict);

    for t in SystemType::ALL {
        let run = check_preservation(t, 200, 1, GeneratorBounds::default());
        println!("{t}: {}/{} random box products keep the type", run.preserved, run.trials);
    }

    let g = GEcart::worked_example();
    let gg = product_ecart(&g, &g);
    let p = gg.ground().class_of("(1,1)").ok_or("no such point")?;
    let f = Elem::pair(Elem::Nat(2), Elem::Nat(2));
    println!("N_(1,1)((2,2)) = {}", gg.ground().render(&gg.sphere(p, &f)?));

    let r = verify_r_product(&coin, &dice);
    println!(
        "r-spheres of coin × dice: verdict {}, compared with the box system: {}",
        r.classification.verdict, r.versus_box.relation
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
