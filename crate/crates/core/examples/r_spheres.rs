// r-spheres `N_p(r; u) = {q : G_pq(u) < G_pr(u)}` on the ramp space
// `F_pq(x) = min(x / |p - q|, 1)` over `{1, ..., 10}`.
//
// ```bash
// cargo run -p smtop --example r_spheres
// ```

use std::error::Error;

use smtop::neighborhood::{r_family, r_sphere};
use smtop::rational::{rat, Show};
use smtop::smspace::{MetricKind, SmSpace};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ramp = SmSpace::integer_line(10, MetricKind::Ramp);
    let g = ramp.ground();
    let u = rat(1, 4);
    let g12 = ramp.dist(0, 1).tail().eval(&u)?;
    println!("G_12(1/4) = {}", Show(&g12));
    println!("N_1(2; 1/4) = {}", g.render(&r_sphere(&ramp, 0, 1, &u)?));
    println!("N_1(1; 1/4) = {}", g.render(&r_sphere(&ramp, 0, 0, &u)?));

    let dice = SmSpace::integer_line(6, MetricKind::Step);
    let fam: Vec<String> = r_family(&dice, 0).iter().map(|s| dice.ground().render(s)).collect();
    println!("r-spheres at 1 in the dice space: {}", fam.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
