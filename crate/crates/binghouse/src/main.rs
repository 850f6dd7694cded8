fn main() {
    // CLI wired up after the library lands; see report module.
    eprintln!("binghouse: command-line interface not built yet");
    std::process::exit(2);
}
