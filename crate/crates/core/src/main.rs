fn main() {
    let (code, out) = latpair::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
