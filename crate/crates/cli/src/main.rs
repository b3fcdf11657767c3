fn main() -> std::process::ExitCode {
    extbranch_cli::run()
}
