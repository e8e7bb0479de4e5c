fn main() {
    let (code, out) = picf::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
