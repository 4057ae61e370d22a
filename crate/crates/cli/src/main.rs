fn main() {
    std::process::exit(intcollab_cli::run_cli(std::env::args_os()));
}
