fn main() {
    std::process::exit(steiner_core::cli::run());
}
