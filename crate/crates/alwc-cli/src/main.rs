fn main() {
    std::process::exit(alwc_cli::run());
}
