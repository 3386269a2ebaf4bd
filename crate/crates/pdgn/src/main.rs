fn main() {
    std::process::exit(pdgn::run_cli());
}
