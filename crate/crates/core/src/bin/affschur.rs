fn main() -> std::process::ExitCode {
    affschur::cli::main()
}
