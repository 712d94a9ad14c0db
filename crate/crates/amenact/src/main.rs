fn main() {
    std::process::exit(amenact::cli::run());
}
