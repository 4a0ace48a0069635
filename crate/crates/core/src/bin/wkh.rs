fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let as_json = args.iter().any(|a| a == "--json");
    let outcome = wkh::cli::run(args);
    let text = outcome.rendered(as_json);
    if outcome.code == wkh::cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(outcome.code);
}
