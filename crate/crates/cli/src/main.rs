fn main() {
    std::process::exit(eaco_cli::run_cli(std::env::args_os()));
}
