// Generating set for a nullspace modulo 12, checked against enumeration.
//
// cargo run --example nullspace_composite

use lincong::oracle::{brute_force_solve, subgroup_closure};
use lincong::{nullspace, Error, MatModK, Modulus, VecModK};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(12)?;
    let b = MatModK::from_rows(&[vec![2, 4, 6], vec![3, 3, 0], vec![0, 6, 6]], &k)?;
    let gens = nullspace(&b)?;
    println!("Null(B) mod 12 is generated by:");
    for g in &gens {
        println!("  {g}");
        assert!(b.mat_vec_mul(g)?.is_zero());
    }
    let span = subgroup_closure(&gens)?;
    let truth = brute_force_solve(&b, &VecModK::zeros(3, &k))?;
    assert_eq!(span, truth);
    println!(
        "span has {} elements, matching exhaustive search",
        span.len()
    );
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
