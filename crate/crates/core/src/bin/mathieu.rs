fn main() {
    std::process::exit(mathieu_wavelets::cli::main_from_args(std::env::args_os()));
}
