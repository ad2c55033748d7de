fn main() {
    std::process::exit(dirmix::cli::run(std::env::args_os()));
}
