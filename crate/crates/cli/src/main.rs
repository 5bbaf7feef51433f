fn main() {
    std::process::exit(fwlab_cli::main_with_args(std::env::args_os()));
}
