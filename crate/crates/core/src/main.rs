fn main() {
    std::process::exit(beurling::cli::main_with_args(std::env::args_os()));
}
