fn main() {
    std::process::exit(zolo_cli::run(std::env::args_os()));
}
