fn main() {
    std::process::exit(raf::cli::run());
}
