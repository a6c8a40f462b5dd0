use clap::Parser;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = jacfact::Cli::parse();
    let (text, code) = jacfact::run(&cli, &argv[1..]);
    print!("{text}");
    std::process::exit(code);
}
