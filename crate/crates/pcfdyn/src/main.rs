fn main() -> std::process::ExitCode {
    pcfdyn::cli::main_with_args(std::env::args_os())
}
