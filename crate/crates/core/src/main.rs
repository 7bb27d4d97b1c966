fn main() -> std::process::ExitCode {
    dqir::cli::main()
}
