//! Times building and checking simplex models: `timing <n> <order>`.
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (n, order) = match args.as_slice() {
        [a, b] => match (a.parse::<usize>(), b.parse::<u32>()) {
            (Ok(n), Ok(o)) => (n, o),
            _ => {
                eprintln!("usage: timing <n> <order>");
                return ExitCode::from(1);
            }
        },
        _ => {
            eprintln!("usage: timing <n> <order>");
            return ExitCode::from(1);
        }
    };
    let t = Instant::now();
    let m = match lietower::lscosimplicial::simplex_model(n, order) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let build = t.elapsed();
    let t = Instant::now();
    let ok = lietower::lscosimplicial::check_simplex_model(&m);
    let words = m.cdgl().d_gen(m.top()).words().count();
    println!("n={n} N={order} build={build:?} check={:?} ok={} top_words={words}", t.elapsed(), ok.is_ok());
    ExitCode::SUCCESS
}
