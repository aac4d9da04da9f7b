// Watch a nullspace basis mod 3 lift to mod 9 and mod 27.
//
// cargo run --example prime_power_lifting

use lincong::{build_lifted_constraint, nullspace_levels, Error, MatModK, Modulus};

pub fn run_example() -> Result<(), Error> {
    let k = Modulus::new(27)?;
    let b = MatModK::from_rows(&[vec![3, 9, 12], vec![6, 0, 3], vec![9, 18, 0]], &k)?;
    let levels = nullspace_levels(&b, 3, 3)?;
    for (i, level) in levels.iter().enumerate() {
        let t = i as u32 + 1;
        println!(
            "level t = {t}: {} generators of Null(B) mod 3^{t}",
            level.len()
        );
        for v in level {
            let bv = b.mat_vec_mul(v)?;
            assert!(bv.entries().iter().all(|x| x % 3u64.pow(t) == 0));
            println!("  {v}   B v = {bv}");
        }
        if t < 3 {
            let bbar = build_lifted_constraint(&b, level, 3, t)?;
            println!(
                "  constraint matrix over F_3 ({}x{}):",
                bbar.rows(),
                bbar.cols()
            );
            print!("{}", indent(&bbar.to_string()));
        }
    }
    Ok(())
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

fn main() {
    run_example().expect("example failed");
}
