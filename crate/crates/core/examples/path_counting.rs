// Matrix-product entries as path counts through a layered graph.
//
// cargo run --example path_counting

use lincong::{Error, LayeredProgram, Modulus};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(5)?;
    let program = LayeredProgram::new(&[
        vec![vec![1, 2, 0], vec![0, 1, 1], vec![3, 0, 1]],
        vec![vec![0, 1, 1], vec![2, 0, 0], vec![1, 1, 1]],
        vec![vec![1, 0, 2], vec![1, 1, 0], vec![0, 3, 1]],
    ])?;
    let mats = program.matrices(&k);
    let product = mats[0].mat_mul(&mats[1])?.mat_mul(&mats[2])?;
    print!("M1 M2 M3 mod 5 =\n{product}");
    for start in 0..3 {
        for end in 0..3 {
            let dp = program.count_paths_entry(start, end, &k)?;
            let walked = program.count_paths_explicit(start, end, &k)?;
            assert_eq!(dp.value(), product.get(end, start));
            assert_eq!(dp, walked);
        }
    }
    println!("path counts from every start to every end agree with the product");
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
