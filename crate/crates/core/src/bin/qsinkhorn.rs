fn main() {
    std::process::exit(qsinkhorn::cli::run(std::env::args_os()));
}
