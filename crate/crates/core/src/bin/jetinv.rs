fn main() {
    std::process::exit(jetinv::cli::run());
}
