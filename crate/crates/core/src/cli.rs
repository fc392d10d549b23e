//! The `zstr` command line.

use crate::cache::{cached, Cache};
use crate::config::{env_overrides, load_config_file, parse_bool, Overrides, Settings};
use crate::error::{Error, Result};
use crate::eta::{eta, zeta_from_eta, EtaArgument, PrecisionSpec, Strategy, TruncationPlan};
use crate::figures::{family_cached, fixed_family_cached, preset, PRESETS};
use crate::geometry::{classify_flare, self_crossings, FlareKind, SigmaWindow};
use crate::render::{csv_string, format_float, render_svg, OutputFormat, RenderSpec};
use crate::strings::{grid_count, SigmaGrid, StringFamily};
use crate::zeros::{scan_zeros, ScanConfig, ZeroKind, DEFAULT_SCAN_PRECISION};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `start:stop:step`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg {
    pub start: f64,
    pub stop: f64,
    pub step: Option<f64>,
}

fn parse_range(s: &str) -> std::result::Result<RangeArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(format!("expected start:stop[:step], got '{s}'"));
    }
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("'{p}' is not a number"))
    };
    let start = num(parts[0])?;
    let stop = num(parts[1])?;
    let step = parts.get(2).map(|p| num(p)).transpose()?;
    if let Some(st) = step {
        if st <= 0.0 {
            return Err(format!("step must be positive in '{s}'"));
        }
    }
    if stop < start {
        return Err(format!("stop below start in '{s}'"));
    }
    Ok(RangeArg { start, stop, step })
}

impl RangeArg {
    fn triple(&self, what: &str) -> Result<(f64, f64, f64)> {
        match self.step {
            Some(step) => Ok((self.start, self.stop, step)),
            None => Err(Error::Usage(format!("{what} needs start:stop:step"))),
        }
    }

    fn grid(&self) -> Result<SigmaGrid> {
        let (a, b, c) = self.triple("--sigma")?;
        SigmaGrid::new(a, b, c).map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Debug, Parser)]
#[command(name = "zstr", version, about = "Dirichlet eta t strings: values, zeros and string geometry")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Digits of precision relative to the n = 2 term.
    #[arg(long, global = true)]
    precision: Option<f64>,
    /// truncated or accelerated.
    #[arg(long, global = true)]
    strategy: Option<String>,
    /// Extended-precision phase t ln n mod 2pi (optionally =false).
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    compensated_phase: Option<String>,
    /// key = value settings file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore any configured cache directory.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 800)]
    height: u32,
    #[arg(long, default_value_t = 2.0)]
    dot_radius: f64,
    /// Let the two axes scale independently.
    #[arg(long)]
    unequal_axes: bool,
    /// Plot eta - 1.
    #[arg(long)]
    subtract_one: bool,
    /// Sum exactly this many series terms at every point.
    #[arg(long)]
    terms: Option<u64>,
}

impl OutputArgs {
    fn render_spec(&self) -> RenderSpec {
        RenderSpec {
            format: match self.format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Svg => OutputFormat::Svg,
            },
            width: self.width,
            height: self.height,
            equal_axes: !self.unequal_axes,
            dot_radius: self.dot_radius,
            subtract_one: self.subtract_one,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    All,
    Nontrivial,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureFormat {
    Csv,
    Svg,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print eta (or zeta) at sigma + t i as "re im".
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        zeta: bool,
    },
    /// One t string over a sigma grid.
    String {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_parser = parse_range)]
        sigma: RangeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// A family of t strings.
    Family {
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        t: RangeArg,
        #[arg(long, value_parser = parse_range)]
        sigma: RangeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Zeros on sigma = 1/2 and sigma = 1 between two heights.
    Zeros {
        /// start:stop (a third field overrides --step).
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        t: RangeArg,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
        #[arg(long)]
        detect_threshold: Option<f64>,
        #[arg(long)]
        refine_tolerance: Option<f64>,
        #[arg(long)]
        classify_tolerance: Option<f64>,
    },
    /// Classify a family's windowed segments as parallel, radial or jumbled.
    Flare {
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        t: RangeArg,
        #[arg(long, value_parser = parse_range)]
        sigma: RangeArg,
        /// lo:hi
        #[arg(long, value_parser = parse_range)]
        window: RangeArg,
    },
    /// Self-crossings of one t string.
    Crossings {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_parser = parse_range)]
        sigma: RangeArg,
        /// Also report non-adjacent segments closer than this.
        #[arg(long, default_value_t = 0.0)]
        gap: f64,
    },
    /// Write one of the preset figures.
    RenderFigure {
        /// Figure number (1-4, 6-31).
        #[arg(long, required_unless_present_any = ["all", "list"])]
        figure: Option<u32>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: FigureFormat,
    },
}

struct Context {
    settings: Settings,
    cache: Option<Cache>,
}

impl Context {
    fn new(global: &GlobalArgs, env: &dyn Fn(&str) -> Option<String>) -> Result<Context> {
        let mut flags = Overrides {
            precision: global.precision,
            cache_dir: global.cache_dir.clone(),
            ..Overrides::default()
        };
        if let Some(p) = flags.precision {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::Usage(format!("--precision must be positive, got {p}")));
            }
        }
        if let Some(s) = &global.strategy {
            flags.strategy = Some(s.parse::<Strategy>()?);
        }
        if let Some(b) = &global.compensated_phase {
            flags.compensated_phase = Some(parse_bool(b).ok_or_else(|| {
                Error::Usage(format!("--compensated-phase expects a boolean, got '{b}'"))
            })?);
        }
        let envs = env_overrides(env)?;
        let file = match &global.config {
            Some(p) => load_config_file(p)?,
            None => Overrides::default(),
        };
        let settings = Settings::resolve(flags, envs, file);
        let cache = match (&settings.cache_dir, global.no_cache) {
            (Some(dir), false) => Some(Cache::new(dir)?),
            _ => None,
        };
        Ok(Context { settings, cache })
    }

    fn spec(&self) -> PrecisionSpec {
        self.settings.spec()
    }
}

fn write_output(body: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(stdout.write_all(body.as_bytes())?),
    }
}

fn emit_family(
    family: &StringFamily,
    out: &OutputArgs,
    title: &str,
    stdout: &mut dyn Write,
) -> Result<()> {
    let spec = out.render_spec();
    let body = match spec.format {
        OutputFormat::Csv => csv_string(&family.strings),
        OutputFormat::Svg => render_svg(&family.strings, &spec, Some(title))?,
    };
    write_output(&body, out.output.as_deref(), stdout)
}

fn build(
    ctx: &Context,
    t: (f64, f64, f64),
    grid: &SigmaGrid,
    terms: Option<u64>,
) -> Result<StringFamily> {
    match terms {
        Some(n) => {
            let plan = TruncationPlan::new(n).map_err(|e| Error::Usage(e.to_string()))?;
            fixed_family_cached(ctx.cache.as_ref(), t, grid, plan, ctx.settings.compensated_phase)
        }
        None => family_cached(ctx.cache.as_ref(), t, grid, &ctx.spec()),
    }
}

fn cmd_eval(ctx: &Context, sigma: f64, t: f64, zeta: bool, stdout: &mut dyn Write) -> Result<()> {
    let s = EtaArgument::new(sigma, t)?;
    let spec = ctx.spec();
    let v = if zeta {
        zeta_from_eta(s, &spec)?
    } else {
        eta(s, &spec)?
    };
    writeln!(stdout, "{} {}", format_float(v.re), format_float(v.im))?;
    Ok(())
}

fn cmd_zeros(
    ctx: &Context,
    t: RangeArg,
    step: f64,
    kind: KindArg,
    thresholds: (Option<f64>, Option<f64>, Option<f64>),
    stdout: &mut dyn Write,
) -> Result<()> {
    let step = t.step.unwrap_or(step);
    let mut config = ScanConfig::new(t.start, t.stop, step).map_err(|e| Error::Usage(e.to_string()))?;
    config.spec = ctx.settings.spec_with_default(DEFAULT_SCAN_PRECISION);
    if let Some(x) = thresholds.0 {
        config.detect_threshold = x;
    }
    if let Some(x) = thresholds.1 {
        config.refine_tolerance = x;
    }
    if let Some(x) = thresholds.2 {
        config.classify_tolerance = x;
    }
    config.validate().map_err(|e| Error::Usage(e.to_string()))?;
    let args = serde_json::to_value(config).map_err(|e| Error::Io(e.to_string()))?;
    let zeros = cached(ctx.cache.as_ref(), "zeros", &args, Some(&config.spec), || {
        scan_zeros(&config)
    })?;
    let mut body = String::from("t,kind,sigma,residual,k\n");
    for z in zeros {
        let keep = match kind {
            KindArg::All => true,
            KindArg::Nontrivial => z.kind == ZeroKind::NonTrivial,
            KindArg::Trivial => z.kind == ZeroKind::TrivialEta,
        };
        if keep {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                format_float(z.t),
                z.kind,
                format_float(z.sigma),
                format_float(z.residual),
                z.k.map(|k| k.to_string()).unwrap_or_default()
            ));
        }
    }
    stdout.write_all(body.as_bytes())?;
    Ok(())
}

fn cmd_flare(
    ctx: &Context,
    t: RangeArg,
    sigma: RangeArg,
    window: RangeArg,
    stdout: &mut dyn Write,
) -> Result<()> {
    let t = t.triple("--t")?;
    let grid = sigma.grid()?;
    let n_strings = grid_count(t.0, t.1, t.2);
    if n_strings < 3 {
        return Err(Error::Usage(format!(
            "flare needs at least 3 strings, the t range gives {n_strings}"
        )));
    }
    if window.step.is_some() {
        return Err(Error::Usage("--window takes lo:hi".into()));
    }
    let window = SigmaWindow::new(window.start, window.stop).map_err(|e| Error::Usage(e.to_string()))?;
    let in_window = grid.points().filter(|&s| window.contains(s)).count();
    if in_window < 3 {
        return Err(Error::Usage(format!(
            "the window holds {in_window} grid points, need at least 3"
        )));
    }
    let family = build(ctx, t, &grid, None)?;
    let r = classify_flare(&family.strings, &window)?;
    let line = match r.kind {
        FlareKind::Parallel => format!(
            "Parallel direction={:.3}deg spread={:.3}deg",
            r.direction.unwrap_or(f64::NAN),
            r.spread_deg
        ),
        FlareKind::Radial => {
            let c = r.center.expect("radial flare has a center");
            format!(
                "Radial center≈({:.6},{:.6}) residual={} ratio={:.4} spread={:.3}deg",
                c.re,
                c.im,
                format_float(r.residual.unwrap_or(f64::NAN)),
                r.concurrency_ratio.unwrap_or(f64::NAN),
                r.spread_deg
            )
        }
        FlareKind::Jumble => format!(
            "Jumble spread={:.3}deg ratio={}",
            r.spread_deg,
            r.concurrency_ratio
                .map(|x| format!("{x:.4}"))
                .unwrap_or_else(|| "n/a".into())
        ),
    };
    writeln!(stdout, "{line}")?;
    Ok(())
}

fn cmd_crossings(
    ctx: &Context,
    t: f64,
    sigma: RangeArg,
    gap: f64,
    stdout: &mut dyn Write,
) -> Result<()> {
    let grid = sigma.grid()?;
    let family = build(ctx, (t, t, 1.0), &grid, None)?;
    let mut body = String::from("sigma_a,sigma_b,re,im,gap\n");
    for x in self_crossings(&family.strings[0], gap) {
        body.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(x.sigma_pair.0),
            format_float(x.sigma_pair.1),
            format_float(x.point.re),
            format_float(x.point.im),
            format_float(x.gap)
        ));
    }
    stdout.write_all(body.as_bytes())?;
    Ok(())
}

fn cmd_render_figure(
    ctx: &Context,
    figure: Option<u32>,
    all: bool,
    list: bool,
    output_dir: &Path,
    format: FigureFormat,
    stdout: &mut dyn Write,
) -> Result<()> {
    if list {
        for p in PRESETS.iter() {
            let terms = p.fixed_terms.map(|n| format!(" terms={n}")).unwrap_or_default();
            writeln!(
                stdout,
                "{:>2}  t {}:{}:{}  sigma {}:{}:{}{}  {}",
                p.id, p.t.0, p.t.1, p.t.2, p.sigma.0, p.sigma.1, p.sigma.2, terms, p.title
            )?;
        }
        return Ok(());
    }
    let chosen: Vec<_> = if all {
        PRESETS.iter().collect()
    } else {
        vec![preset(figure.expect("clap enforces --figure"))?]
    };
    std::fs::create_dir_all(output_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", output_dir.display())))?;
    for p in chosen {
        let family = p.build(&ctx.spec(), ctx.cache.as_ref())?;
        let title = format!("figure {}: {}", p.id, p.title);
        if matches!(format, FigureFormat::Csv | FigureFormat::Both) {
            let path = output_dir.join(format!("figure-{:02}.csv", p.id));
            write_output(&csv_string(&family.strings), Some(&path), stdout)?;
            writeln!(stdout, "{}", path.display())?;
        }
        if matches!(format, FigureFormat::Svg | FigureFormat::Both) {
            let spec = RenderSpec {
                format: OutputFormat::Svg,
                ..RenderSpec::default()
            };
            let path = output_dir.join(format!("figure-{:02}.svg", p.id));
            write_output(&render_svg(&family.strings, &spec, Some(&title))?, Some(&path), stdout)?;
            writeln!(stdout, "{}", path.display())?;
        }
    }
    Ok(())
}

fn dispatch(cli: Cli, env: &dyn Fn(&str) -> Option<String>, stdout: &mut dyn Write) -> Result<()> {
    let ctx = Context::new(&cli.global, env)?;
    match cli.command {
        Command::Eval { sigma, t, zeta } => cmd_eval(&ctx, sigma, t, zeta, stdout),
        Command::String { t, sigma, out } => {
            out.render_spec().validate()?;
            let family = build(&ctx, (t, t, 1.0), &sigma.grid()?, out.terms)?;
            emit_family(&family, &out, &format!("t = {t}"), stdout)
        }
        Command::Family { t, sigma, out } => {
            out.render_spec().validate()?;
            let range = t.triple("--t")?;
            let family = build(&ctx, range, &sigma.grid()?, out.terms)?;
            emit_family(
                &family,
                &out,
                &format!("t {}:{}:{}", range.0, range.1, range.2),
                stdout,
            )
        }
        Command::Zeros {
            t,
            step,
            kind,
            detect_threshold,
            refine_tolerance,
            classify_tolerance,
        } => cmd_zeros(
            &ctx,
            t,
            step,
            kind,
            (detect_threshold, refine_tolerance, classify_tolerance),
            stdout,
        ),
        Command::Flare { t, sigma, window } => cmd_flare(&ctx, t, sigma, window, stdout),
        Command::Crossings { t, sigma, gap } => cmd_crossings(&ctx, t, sigma, gap, stdout),
        Command::RenderFigure {
            figure,
            all,
            list,
            output_dir,
            format,
        } => cmd_render_figure(&ctx, figure, all, list, &output_dir, format, stdout),
    }
}

/// Runs the command line with an explicit environment and output streams; returns the exit code.
pub fn run_with<I, T>(
    args: I,
    env: &dyn Fn(&str) -> Option<String>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, env, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "zstr: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                _ => EXIT_RUNTIME,
            }
        }
    }
}

/// Runs with the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = |k: &str| std::env::var(k).ok();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(args, &env, &mut out, &mut err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let env = |_: &str| None;
        let mut argv = vec!["zstr"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &env, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn range_syntax() {
        assert_eq!(
            parse_range("0:1:0.05").unwrap(),
            RangeArg {
                start: 0.0,
                stop: 1.0,
                step: Some(0.05)
            }
        );
        assert_eq!(parse_range("-3:2").unwrap().step, None);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:x:1").is_err());
        assert!(parse_range("0").is_err());
    }

    #[test]
    fn eval_prints_two_numbers() {
        let (code, out, _) = run_capture(&["eval", "--sigma", "1", "--t", "0", "--precision", "13"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0.69314718056 0.0\n");
        let (_, out, _) = run_capture(&["eval", "--sigma", "1", "--t", "0"]);
        assert!(out.starts_with("0.693147"), "{out}");
        let (code, out, _) = run_capture(&["eval", "--sigma", "2", "--t", "0", "--zeta"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1.644934"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["eval", "--sigma", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["eval", "--sigma", "-1", "--t", "0"]).0, EXIT_RUNTIME);
        assert_eq!(
            run_capture(&["eval", "--sigma", "1", "--t", "0", "--zeta"]).0,
            EXIT_RUNTIME
        );
        assert_eq!(
            run_capture(&["--strategy", "fast", "eval", "--sigma", "1", "--t", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["eval", "--sigma", "1", "--t", "0", "--precision", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }
}
