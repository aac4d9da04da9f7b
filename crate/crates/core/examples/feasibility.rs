// Decide whether linear congruences have solutions for a composite modulus.
//
// cargo run --example feasibility

use lincong::{feasible, Error, MatModK, Modulus, VecModK};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(12)?;
    let a = MatModK::from_rows(&[vec![2, 4], vec![6, 3]], &k)?;
    for rhs in [[2, 3], [1, 0], [0, 9]] {
        let y = VecModK::from_i64(&rhs, &k);
        let ok = feasible(&a, &y)?;
        println!(
            "A x = {y} (mod 12): {}",
            if ok { "feasible" } else { "infeasible" }
        );
    }
    // the first row is even, so an odd first coordinate can never be reached
    assert!(!feasible(&a, &VecModK::from_i64(&[1, 0], &k))?);
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
