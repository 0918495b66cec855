fn main() {
    std::process::exit(anncat::cli::main());
}
