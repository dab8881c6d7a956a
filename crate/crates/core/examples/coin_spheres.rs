// (u,v)-spheres of the coin-toss space: two outcomes at distance "step at 1".
//
// ```bash
// cargo run -p smtop --example coin_spheres
// ```

use std::error::Error;

use smtop::distfn::DistFn;
use smtop::neighborhood::{sphere, sphere_family};
use smtop::rational::{parse_rational, Show};
use smtop::smspace::SmSpace;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let step = DistFn::step(&parse_rational("1")?)?;
    println!("F_01 = {step}");
    let coin = SmSpace::build(
        vec!["0".into(), "1".into()],
        vec![("0".into(), "1".into(), step.clone())],
    )?;
    let g = coin.ground();

    let params = ["1/2", "1", "3/2", "2"];
    println!("N_0(u, v):");
    print!("{:>8}", "u \\ v");
    for v in params {
        print!("{v:>10}");
    }
    println!();
    for u in params {
        print!("{u:>8}");
        for v in params {
            let s = sphere(&coin, 0, &parse_rational(u)?, &parse_rational(v)?)?;
            print!("{:>10}", g.render(&s));
        }
        println!();
    }

    let family: Vec<String> = sphere_family(&coin, 0).iter().map(|s| g.render(s)).collect();
    println!("all spheres at 0: {}", family.join(" "));

    let tail = step.tail();
    for x in ["0", "1", "2"] {
        let x = parse_rational(x)?;
        println!("G_01({}) = {}", Show(&x), Show(&tail.eval(&x)?));
    }
    println!("threshold(0, 1) = {}", coin.threshold("0", "1")?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
