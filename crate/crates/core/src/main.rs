fn main() -> std::process::ExitCode {
    ontolint::cli::run(std::env::args_os())
}
