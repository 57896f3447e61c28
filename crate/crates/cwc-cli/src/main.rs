fn main() {
    std::process::exit(cwc_cli::cmd_dispatch(std::env::args_os()));
}
