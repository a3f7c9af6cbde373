fn main() {
    std::process::exit(zequiv::cli::main_with_args());
}
