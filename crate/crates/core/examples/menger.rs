// t-norms and the Menger triangle inequality
// `F_pr(x + y) ≥ T(F_pq(x), F_qr(y))`.
//
// ```bash
// cargo run -p smtop --example menger
// ```

use std::error::Error;

use smtop::distfn::DistFn;
use smtop::rational::{int, rat};
use smtop::smspace::SmSpace;
use smtop::tnorm::{default_grid, TNorm, TableTNorm};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = default_grid();
    for t in [TNorm::Product, TNorm::Minimum] {
        println!("{t}: T-I..T-V hold on the 1/8 grid: {}", t.check_axioms(&grid)?.passed());
    }
    // a table t-norm that is zero at (1, 1)
    let bad = TNorm::Table(TableTNorm::new(
        vec![int(0), int(1)],
        vec![vec![int(0), int(0)], vec![int(0), int(0)]],
    )?);
    let report = bad.check_axioms(&grid)?;
    for a in &report.axioms {
        if let Some(w) = &a.witness {
            println!("{bad}: {} fails {w}", a.axiom);
        }
    }

    let step = |a| DistFn::step(&int(a));
    let triangle = SmSpace::build(
        vec!["p".into(), "q".into(), "r".into()],
        vec![
            ("p".into(), "q".into(), step(1)?),
            ("q".into(), "r".into(), step(1)?),
            ("p".into(), "r".into(), step(10)?),
        ],
    )?;
    match triangle.check_menger(&TNorm::Product).witness {
        Some(w) => println!("violation: {w}"),
        None => println!("no violation"),
    }
    let ramp = DistFn::ramp(&int(2))?;
    println!("T(F(1), F(1)) for F = ramp(2): {}", TNorm::Product.apply(&ramp.eval(&int(1))?, &ramp.eval(&int(1))?)?);
    println!("T(1/2, 1/2) = {}", TNorm::Product.apply(&rat(1, 2), &rat(1, 2))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
