fn main() {
    std::process::exit(lempert::cli::main());
}
