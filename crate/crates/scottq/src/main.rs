fn main() {
    std::process::exit(scottq::cli::run());
}
