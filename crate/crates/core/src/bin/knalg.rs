fn main() {
    std::process::exit(kn_algebra::cli::run_from_args(std::env::args_os()));
}
