fn main() {
    std::process::exit(selfadjoint::cli::run(std::env::args_os()));
}
