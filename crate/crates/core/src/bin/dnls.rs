fn main() {
    std::process::exit(dnls::cli::run(std::env::args_os()));
}
