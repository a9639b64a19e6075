fn main() {
    std::process::exit(flipgroupoid_cli::main_with(std::env::args_os()));
}
