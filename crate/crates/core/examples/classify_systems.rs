// Checking neighborhood systems against N0, N1 and N2, and the closure
// operator they induce.
//
// ```bash
// cargo run -p smtop --example classify_systems
// ```

use std::error::Error;

use smtop::gtop::NeighborhoodSystem;
use smtop::neighborhood::sphere_system;
use smtop::smspace::{MetricKind, SmSpace};

fn system(points: &[&str], families: &[(&str, &[&[&str]])]) -> Result<NeighborhoodSystem, Box<dyn Error>> {
    let families = families
        .iter()
        .map(|(p, sets)| {
            let sets = sets.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect();
            (p.to_string(), sets)
        })
        .collect();
    Ok(NeighborhoodSystem::from_labels(
        points.iter().map(|p| p.to_string()).collect(),
        families,
    )?)
}

fn report(name: &str, sys: &NeighborhoodSystem) {
    println!("{name}");
    for line in sys.render() {
        println!("  {line}");
    }
    for line in sys.classify().lines() {
        println!("  {line}");
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dice = sphere_system(&SmSpace::integer_line(6, MetricKind::Step));
    report("(u,v)-spheres of the dice space", &dice);

    // b's only neighborhood is not inside a's, so N1 fails at a
    let chain = system(&["a", "b", "c"], &[("a", &[&["a", "b"]]), ("b", &[&["b", "c"]]), ("c", &[&["c"]])])?;
    report("three points", &chain);

    let wedge = system(&["p", "a", "b"], &[("p", &[&["p", "a"], &["p", "b"]]), ("a", &[&["a"]]), ("b", &[&["b"]])])?;
    report("two neighborhoods with no common refinement", &wedge);

    let lopsided = system(&["a", "b"], &[("a", &[&["a", "b"]]), ("b", &[&["b"]])])?;
    let g = lopsided.ground();
    let b = g.set_of(&["b"]).map_err(|p| format!("unknown point {p}"))?;
    println!("closure of {{b}}: {}", g.render(&lopsided.closure(&b)));
    println!("interior of {{b}}: {}", g.render(&lopsided.interior(&b)));
    match lopsided.is_symmetric().witness {
        None => println!("symmetric"),
        Some((p, q)) => println!("not symmetric: {p} ∈ cl{{{q}}} but {q} ∉ cl{{{p}}}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
