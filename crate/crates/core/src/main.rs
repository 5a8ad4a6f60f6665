fn main() {
    std::process::exit(pqvir_core::cli::main_with_args(std::env::args_os()));
}
