use std::process::exit;

fn main() {
    exit(bombieri_cli::run(std::env::args_os()));
}
