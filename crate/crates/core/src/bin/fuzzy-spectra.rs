fn main() {
    std::process::exit(fuzzy_spectra::cli::run());
}
