fn main() {
    std::process::exit(nls_spectra::cli::run(std::env::args()));
}
