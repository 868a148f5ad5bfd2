fn main() {
    std::process::exit(gdcount::run_cli(std::env::args_os()));
}
