fn main() {
    std::process::exit(yieldshape_cli::run(std::env::args_os()));
}
