fn main() {
    std::process::exit(cusp_bidisk::cli::run_from(std::env::args_os()));
}
