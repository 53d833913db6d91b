fn main() {
    std::process::exit(omtrace_cli::main_with_args(std::env::args_os()));
}
