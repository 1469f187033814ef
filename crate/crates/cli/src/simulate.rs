use std::fs;
use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use kekule::switch::FunctionalCell;

const HELP: &str = "commands: state | open | signal <channel> | socket <name> | reach | check | reset | trace | trace dump <file> | help | quit";

enum Flow {
    Continue,
    Refused,
    Quit,
}

fn open_text(fc: &FunctionalCell) -> String {
    let open: Vec<String> = fc
        .open_channel_report()
        .into_iter()
        .filter(|(_, o)| *o)
        .map(|(n, _)| n)
        .collect();
    if open.is_empty() {
        "open: none".into()
    } else {
        format!("open: {}", open.join(" "))
    }
}

/// Sockets violating the exactly-one-open rule at the current state.
fn socket_violations(fc: &FunctionalCell) -> anyhow::Result<Vec<String>> {
    let mut bad = Vec::new();
    for (name, (a, b)) in fc.sockets() {
        let open = usize::from(fc.is_open(a)?) + usize::from(fc.is_open(b)?);
        if open != 1 {
            bad.push(format!("socket {name}: {open} channels open at {}", fc.format(fc.current())));
        }
    }
    Ok(bad)
}

fn step(fc: &mut FunctionalCell, line: &str, out: &mut impl Write) -> anyhow::Result<Flow> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        [] => {}
        [w, ..] if w.starts_with('#') => {}
        ["state"] => writeln!(out, "{}", fc.format(fc.current()))?,
        ["open"] => writeln!(out, "{}", open_text(fc))?,
        ["signal", name] => {
            let s = fc.signal(name)?;
            if s.accepted {
                writeln!(out, "{name}: {} -> {}", fc.format(&s.before), fc.format(&s.after))?;
            } else {
                writeln!(out, "{name}: refused at {}", fc.format(&s.before))?;
                return Ok(Flow::Refused);
            }
        }
        ["socket", name] => {
            let (channel, s) = fc.signal_socket(name)?;
            writeln!(out, "{name} via {channel}: {} -> {}", fc.format(&s.before), fc.format(&s.after))?;
        }
        ["reach"] => {
            for k in fc.reachable_states() {
                writeln!(out, "{}", fc.format(&k))?;
            }
        }
        ["check"] => {
            fc.check_socket_invariant()?;
            writeln!(out, "socket invariant holds in every reachable state")?;
        }
        ["reset"] => {
            fc.reset();
            writeln!(out, "{}", fc.format(fc.current()))?;
        }
        ["trace"] => write!(out, "{}", fc.trace_script())?,
        ["trace", "dump", file] => {
            fs::write(file, fc.trace_script()).with_context(|| format!("cannot write {file}"))?;
        }
        ["help"] => writeln!(out, "{HELP}")?,
        ["quit"] | ["exit"] => return Ok(Flow::Quit),
        _ => bail!("unrecognised command `{line}`; {HELP}"),
    }
    Ok(Flow::Continue)
}

/// Runs every line; stops with status 1 at the first refusal, error or
/// socket violation.
pub fn script(mut fc: FunctionalCell, text: &str) -> anyhow::Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (n, line) in text.lines().enumerate() {
        let flow = step(&mut fc, line, &mut out).with_context(|| format!("script line {}", n + 1))?;
        match flow {
            Flow::Quit => break,
            Flow::Refused => return Ok(ExitCode::from(1)),
            Flow::Continue => {}
        }
        let bad = socket_violations(&fc)?;
        if !bad.is_empty() {
            for b in bad {
                eprintln!("error: script line {}: {b}", n + 1);
            }
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn repl(mut fc: FunctionalCell) -> anyhow::Result<ExitCode> {
    let stdin = io::stdin();
    let stdout = io::stdout();
    println!("{HELP}");
    println!("{}", fc.format(fc.current()));
    let mut lines = stdin.lock().lines();
    loop {
        print!("> ");
        stdout.lock().flush()?;
        let Some(line) = lines.next() else { break };
        let line = line?;
        match step(&mut fc, &line, &mut stdout.lock()) {
            Ok(Flow::Quit) => break,
            Ok(_) => {
                for b in socket_violations(&fc)? {
                    println!("warning: {b}");
                }
            }
            Err(e) => println!("error: {e:#}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}
