fn main() {
    std::process::exit(selink_cli::main_with_args(std::env::args().collect()));
}
