fn main() {
    std::process::exit(maxrigidity::cli::main_with_args(std::env::args_os()));
}
