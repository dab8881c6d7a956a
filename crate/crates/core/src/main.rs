fn main() {
    std::process::exit(smtop::cli::run());
}
