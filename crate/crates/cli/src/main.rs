fn main() {
    std::process::exit(dh_cli::run(std::env::args_os()));
}
