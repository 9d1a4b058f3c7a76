fn main() {
    std::process::exit(qha_core::cli::run(std::env::args()));
}
