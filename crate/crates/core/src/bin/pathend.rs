fn main() {
    std::process::exit(pathend::cli::main_with_args(std::env::args_os()));
}
