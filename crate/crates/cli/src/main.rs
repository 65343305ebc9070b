use std::process::ExitCode;

fn main() -> ExitCode {
    let env_seed = std::env::var(lgsim_cli::SEED_ENV).ok();
    let code = lgsim_cli::main_with(
        std::env::args_os(),
        env_seed,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
