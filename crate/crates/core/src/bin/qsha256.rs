fn main() {
    std::process::exit(qsha256::cli::main());
}
