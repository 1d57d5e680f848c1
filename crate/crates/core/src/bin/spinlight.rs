fn main() { std::process::exit(spinlight::cli::run(std::env::args_os())); }
