fn main() {
    std::process::exit(ncmd::cli::run(std::env::args_os()));
}
