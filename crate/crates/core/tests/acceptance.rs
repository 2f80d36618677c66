use std::process::ExitCode;

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let reports = nilq::acceptance::run_all(jobs);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", reports.len() - failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
