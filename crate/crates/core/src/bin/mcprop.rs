fn main() {
    std::process::exit(mcprop::cli::run(std::env::args_os()));
}
