fn main() {
    std::process::exit(hyperweight::cli::run(std::env::args_os()));
}
