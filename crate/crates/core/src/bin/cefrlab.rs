fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(cefrlab::cli::run_cli(&args));
}
