fn main() {
    std::process::exit(quantstab::run(std::env::args_os()));
}
