fn main() {
    std::process::exit(omconf::cli::run(std::env::args_os()));
}
