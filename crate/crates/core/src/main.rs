fn main() {
    std::process::exit(restricted_core::cli::run(std::env::args_os()));
}
