fn main() {
    std::process::exit(skewheyting::cli::run());
}
