fn main() {
    std::process::exit(graphpde_cli::main_with_args(std::env::args_os()));
}
