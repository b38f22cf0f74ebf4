fn main() {
    std::process::exit(linesing::cli::main_with(std::env::args().collect()));
}
