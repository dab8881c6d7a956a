// Entourages of the dice space `F_pq = step(|p - q|)` on `{1, ..., 6}`:
// they grow through the bands `|p - q| ≤ k`.
//
// ```bash
// cargo run -p smtop --example dice_entourages
// ```

use std::error::Error;

use smtop::neighborhood::entourage;
use smtop::rational::{parse_rational, rat};
use smtop::smspace::{MetricKind, SmSpace};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dice = SmSpace::integer_line(6, MetricKind::Step);
    let half = rat(1, 2);
    for u in ["1/2", "3/2", "5/2", "7/2", "9/2", "6"] {
        let e = entourage(&dice, &parse_rational(u)?, &half)?;
        let widest = e
            .iter()
            .map(|(p, q)| p.abs_diff(q))
            .max()
            .unwrap_or(0);
        println!("U({u}, 1/2): {:>2} pairs, widest band |p - q| = {widest}", e.len());
    }
    let e = entourage(&dice, &rat(3, 2), &half)?;
    println!("U(3/2, 1/2) = {}", e.render(dice.labels()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
