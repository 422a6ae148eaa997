use std::io::Write;

fn main() {
    let out = fri_cli::run_command(std::env::args_os().skip(1));
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stderr.write_all(out.stderr.as_bytes());
    let _ = stdout.flush();
    let _ = stderr.flush();
    std::process::exit(out.exit);
}
