// Factor a modulus, invert units, and reassemble residues with the CRT.
//
// cargo run --example residues_and_crt

use lincong::{crt_reconstruct, factorize, mod_inverse, Error};

pub fn run_example() -> Result<(), Error> {
    let k = factorize(360)?;
    let parts: Vec<String> = k
        .factors()
        .iter()
        .map(|f| format!("{}^{}", f.p, f.e))
        .collect();
    println!("360 = {}", parts.join(" * "));

    let inv = mod_inverse(7, &k)?;
    println!("7^-1 mod 360 = {inv}");
    assert_eq!(7 * inv.value() % 360, 1);

    match mod_inverse(15, &k) {
        Err(Error::NotAUnit { gcd, .. }) => println!("15 is not a unit mod 360 (gcd {gcd})"),
        other => panic!("unexpected {other:?}"),
    }

    // x = 3 (mod 8), 2 (mod 9), 4 (mod 5)
    let x = crt_reconstruct(&[(3, 8), (2, 9), (4, 5)], &k)?;
    println!("CRT: x = {x} (mod 360)");
    assert_eq!((x.value() % 8, x.value() % 9, x.value() % 5), (3, 2, 4));
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
