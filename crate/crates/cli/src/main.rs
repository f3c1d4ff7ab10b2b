use std::io::Write;

fn main() {
    let response = stmatch_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    // a closed pipe downstream is not our failure; keep the exit status
    let _ = writeln!(std::io::stdout().lock(), "{}", response.stdout.trim_end());
    std::process::exit(response.code);
}
