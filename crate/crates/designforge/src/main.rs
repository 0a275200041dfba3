fn main() {
    std::process::exit(designforge::cli::main_with_args(std::env::args_os()));
}
