fn main() {
    std::process::exit(affquerm::cli::main());
}
