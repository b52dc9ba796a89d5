mod args;
mod pipeline;

use std::fs::OpenOptions;
use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use enhance_core::raster::write_pgm;

use args::{parse_step, split_steps, Cli, EdgeMethod, EdgeOutput, Step};
use pipeline::{load_gray, report_line, PipelineStep};

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Parses the step list; grammar problems exit with status 2.
fn parse_steps(tokens: &[String]) -> Result<Vec<Step>, ExitCode> {
    let groups = split_steps(tokens).map_err(|msg| usage_error(&msg))?;
    let steps = groups
        .iter()
        .map(|g| parse_step(g))
        .collect::<Result<Vec<_>, _>>()
        .unwrap_or_else(|e| e.exit());
    if let Some(pos) = steps.iter().position(|s| *s == Step::Spectrum) {
        if pos + 1 != steps.len() {
            return Err(usage_error("'spectrum' must be the last step"));
        }
    }
    let laplacian_with_output = steps.iter().any(|s| {
        matches!(s, Step::Edges(e) if e.method == EdgeMethod::Laplacian && e.output != EdgeOutput::Magnitude)
    });
    if laplacian_with_output {
        return Err(usage_error(
            "laplacian has a single response; --output gx|gy|direction needs sobel or prewitt",
        ));
    }
    Ok(steps)
}

fn run(cli: &Cli, steps: Vec<Step>) -> anyhow::Result<()> {
    let steps = steps
        .into_iter()
        .map(PipelineStep::from_args)
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut image = load_gray(&cli.input)?.to_field();
    let mut lines = Vec::with_capacity(steps.len());
    for step in &steps {
        let out = step.run(&image).with_context(|| step.name())?;
        lines.push(report_line(step, &out));
        image = out.image;
        if cli.quantize_between {
            image = image.to_gray().to_field();
        }
    }

    std::fs::write(&cli.output, write_pgm(&image.to_gray()))
        .with_context(|| format!("cannot write {}", cli.output.display()))?;

    if let Some(path) = &cli.report {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("cannot open report {}", path.display()))?;
        for line in &lines {
            writeln!(file, "{line}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let steps = match parse_steps(&cli.steps) {
        Ok(steps) => steps,
        Err(code) => return code,
    };
    match run(&cli, steps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
