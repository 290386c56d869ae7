fn main() {
    std::process::exit(orthoarray::cli::main_with_args(std::env::args_os()));
}
