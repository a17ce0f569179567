//! Running the built-in checks with a filter and a bound.

use forge::suite::{exit_code, run_suite, to_json, to_text, Config};

fn main() {
    let pattern = std::env::args().nth(1);
    let cfg = Config { bound: 16, timing: false };
    let results = run_suite(pattern.as_deref(), &cfg);
    print!("{}", to_text(&results));
    println!("exit code would be {}", exit_code(&results));
    if let Some(first) = results.first() {
        let json = to_json(std::slice::from_ref(first));
        println!("first entry as JSON:\n{json}");
    }
}
