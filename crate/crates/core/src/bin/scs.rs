fn main() {
    std::process::exit(subconj::cli::main_with_args(std::env::args_os()));
}
