fn main() {
    std::process::exit(terwilliger::cli::run(std::env::args_os()));
}
