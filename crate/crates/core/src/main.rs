fn main() {
    std::process::exit(anagram_group::cli::main_with_args(std::env::args_os()));
}
