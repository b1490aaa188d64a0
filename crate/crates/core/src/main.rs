use std::io::Write;

fn main() -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = dualfive::cli::run(std::env::args_os(), &mut out, &mut err);
    out.flush()?;
    err.flush()?;
    std::process::exit(code)
}
