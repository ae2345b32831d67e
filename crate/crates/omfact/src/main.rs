fn main() {
    std::process::exit(omfact::cli::run_from_args());
}
