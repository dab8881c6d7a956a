// f-spheres of a generalized écart on the natural numbers.
//
// The ground set is infinite; all numbers outside `A = {1, 2, 3}` behave
// alike, so sets print as `S \ {..}` together with a finite window.
//
// ```bash
// cargo run -p smtop --example ecart_spheres
// ```

use std::error::Error;

use smtop::neighborhood::{Elem, GEcart};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = GEcart::worked_example();
    let ground = g.ground();
    for p in ["1", "2", "3", "4"] {
        let class = ground.class_of(p).ok_or("point not in ground")?;
        println!("p = {p}");
        let mut last = None;
        for f in 0..=8 {
            let s = g.sphere(class, &Elem::Nat(f))?;
            if last.as_ref() != Some(&s) {
                println!("  f = {f}: {:<12} window 1..8: {:?}", ground.render(&s), ground.window_view(&s, 8));
            }
            last = Some(s);
        }
    }
    let sys = g.system(&Elem::Nat(10))?;
    println!("classification of the f-sphere system:");
    for line in sys.classify().lines() {
        println!("  {line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
