fn main() {
    std::process::exit(infalg::cli::run(std::env::args_os()));
}
