fn main() {
    std::process::exit(mesoscope::cli::run(std::env::args_os()));
}
