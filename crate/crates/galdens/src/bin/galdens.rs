fn main() {
    std::process::exit(galdens::cli::run(std::env::args_os()));
}
