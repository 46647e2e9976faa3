//! Exact linear algebra on finite strings: the rank of the coefficient
//! matrix of the `F_k` and the polynomial window for the `a = 0` Gauss
//! family.

use qism_ladder::ladder::{check_prop54, finite_string_rank};
use qism_ladder::symcore::qf;

fn main() {
    for n in 1..=4 {
        let r = finite_string_rank(n, 128).expect("n in range");
        println!(
            "n = {n}: {} functions span a space of dimension {} (shifts exact: {}, pass: {})",
            2 * n + 1,
            r.rank,
            r.exact_shifts_ok,
            r.pass()
        );
    }
    let r = check_prop54(&qf(2, 5), &qf(7, 4), 4).expect("c is not an integer");
    println!("\nwindow u = 0..-{}: rank {} of {}, Q1 = {}, Q0 = {}", r.m, r.rank, r.m + 1, r.q1, r.q0);
    for (name, cols, ok) in &r.relations {
        println!("  {name:<14} on {cols} columns: {}", if *ok { "holds" } else { "FAILS" });
    }
}
