use std::process::ExitCode;

use mahler::suite::run_all;

fn main() -> ExitCode {
    let outcomes = run_all(42);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if outcomes.len() == 11 && passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
