fn main() {
    std::process::exit(recolor_cli::run(std::env::args_os()));
}
