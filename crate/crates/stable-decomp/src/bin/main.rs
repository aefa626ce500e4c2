fn main() {
    std::process::exit(stable_decomp::cli::run())
}
