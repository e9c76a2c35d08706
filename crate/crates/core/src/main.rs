fn main() { std::process::exit(treegh::cli::main_exit_code()); }
