// Scale a system modulo a prime divisor into an equivalent one modulo k.
//
// cargo run --example embedding

use lincong::{embed_lower_modulus, feasible, Error, MatModK, Modulus, VecModK};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(12)?;
    let three = Modulus::new(3)?;
    let a = MatModK::from_rows(&[vec![1, 1], vec![1, 1]], &three)?;
    for rhs in [[1, 1], [1, 2]] {
        let y = VecModK::from_i64(&rhs, &three);
        let (a12, y12) = embed_lower_modulus(&a, &y, &k)?;
        let small = feasible(&a, &y)?;
        let big = feasible(&a12, &y12)?;
        println!("mod 3: y = {y} feasible = {small}; scaled mod 12: y = {y12} feasible = {big}");
        assert_eq!(small, big);
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
