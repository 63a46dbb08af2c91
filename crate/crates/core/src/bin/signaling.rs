fn main() {
    let (code, out) = signaling::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
