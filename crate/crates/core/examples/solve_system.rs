// Solve a rectangular system modulo 30 and verify the answer.
//
// cargo run --example solve_system

use lincong::{solve, Error, MatModK, Modulus, SolveOutcome, VecModK};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(30)?;
    let a = MatModK::from_rows(&[vec![6, 10, 15], vec![4, -1, 7]], &k)?;
    let y = VecModK::from_i64(&[1, 2], &k);
    match solve(&a, &y)? {
        SolveOutcome::Solution(x) => {
            println!("x = {x}");
            assert_eq!(a.mat_vec_mul(&x)?, y);
            println!("A x = {} = y (mod 30)", a.mat_vec_mul(&x)?);
        }
        SolveOutcome::Infeasible => unreachable!("6, 10 and 15 generate Z/30Z"),
    }

    let even = MatModK::from_rows(&[vec![2, 4]], &k)?;
    let odd = VecModK::from_i64(&[5], &k);
    assert_eq!(solve(&even, &odd)?, SolveOutcome::Infeasible);
    println!("2 x1 + 4 x2 = 5 (mod 30): infeasible");
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
