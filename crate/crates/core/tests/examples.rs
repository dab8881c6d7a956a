//! Every cargo example runs to completion.

mod classify_systems {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/classify_systems.rs"));
}

#[test]
fn classify_systems_runs() {
    classify_systems::run_example().expect("classify_systems should run");
}

mod coin_spheres {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/coin_spheres.rs"));
}

#[test]
fn coin_spheres_runs() {
    coin_spheres::run_example().expect("coin_spheres should run");
}

mod dice_entourages {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dice_entourages.rs"));
}

#[test]
fn dice_entourages_runs() {
    dice_entourages::run_example().expect("dice_entourages should run");
}

mod ecart_spheres {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ecart_spheres.rs"));
}

#[test]
fn ecart_spheres_runs() {
    ecart_spheres::run_example().expect("ecart_spheres should run");
}

mod menger {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/menger.rs"));
}

#[test]
fn menger_runs() {
    menger::run_example().expect("menger should run");
}

mod product_theorems {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/product_theorems.rs"));
}

#[test]
fn product_theorems_runs() {
    product_theorems::run_example().expect("product_theorems should run");
}

mod r_spheres {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/r_spheres.rs"));
}

#[test]
fn r_spheres_runs() {
    r_spheres::run_example().expect("r_spheres should run");
}
