// Determinant and inverse modulo 6 of a matrix with no unit entries.
//
// cargo run --example determinant_inverse

use lincong::{Error, MatModK, Modulus};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(6)?;
    let a = MatModK::from_rows(&[vec![2, 3], vec![3, 2]], &k)?;
    let det = a.determinant_mod_k()?;
    println!("det A = {det} (mod 6)");
    let inv = a.inverse_mod_k()?;
    print!("A^-1 =\n{inv}");
    assert_eq!(a.mat_mul(&inv)?, MatModK::identity(2, &k)?);

    let singular = MatModK::from_rows(&[vec![2, 0], vec![0, 1]], &k)?;
    match singular.inverse_mod_k() {
        Err(Error::NotInvertible { det, .. }) => {
            println!("diag(2, 1) has det {det}: not invertible")
        }
        other => panic!("unexpected {other:?}"),
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
