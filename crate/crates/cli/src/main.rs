fn main() {
    std::process::exit(confign_cli::run_from(std::env::args_os()));
}
