fn main() {
    std::process::exit(gazetopo::cli::run(std::env::args_os()));
}
