fn main() {
    std::process::exit(isotropy::cli::main());
}
