fn main() {
    std::process::exit(taylor_morse::cli::main());
}
