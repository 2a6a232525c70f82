//! The `dcc` command line. Every subcommand reads one JSON document from a file
//! argument or stdin and writes JSON (SVG for `render`). Domain and input
//! errors exit 1 with `{"error":{"kind":..,"message":..}}` on stdout; usage
//! errors exit 2.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::category::{self, window_arcs, Arc, CanonicalMorphism, FormalObject};
use crate::completion::{self, completion_member};
use crate::error::{Error, Result};
use crate::io::{from_json, to_json};
use crate::metric::{self, FanSequence, MetricSpec};
use crate::render::{render_svg, Scene};
use crate::tstructure::{self, DecoratedNC, NCPartition, TStructure};

#[derive(Parser, Debug)]
#[command(
    name = "dcc",
    version,
    about = "Discrete cluster categories with several accumulation points"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Number of accumulation points, used to validate inputs that do not carry it.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Half-width of the index window for enumerations.
    #[arg(long, global = true, default_value_t = 8)]
    pub window: i64,
    /// Search bound for metric radii.
    #[arg(long, global = true, default_value_t = 5)]
    pub tmax: u32,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// JSON input file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// `{"x": arc, "y": arc}` → `{"dim": 0|1}`
    Hom(Input),
    /// `{"f": morphism, "g": morphism}` → the composite `g∘f`
    Compose(Input),
    /// `{"f": morphism}` → cone object
    Cone(Input),
    /// `{"object": object, "times"?: int}` → `Σ^times object`
    Suspend(Input),
    /// Decorated partitions and their aisles
    #[command(subcommand)]
    Tstruct(TstructCmd),
    /// Morphism lengths and balls of a metric
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Criteria and colimits of fan sequences
    #[command(subcommand)]
    Fan(FanCmd),
    /// The completed category
    #[command(subcommand)]
    Complete(CompleteCmd),
    /// scene → SVG
    Render(Input),
}

#[derive(Subcommand, Debug)]
pub enum TstructCmd {
    /// decorated partition → `{"valid": true}`
    Check(Input),
    /// partition → its Kreweras complement
    Kreweras(Input),
    /// `{"tstructure", "arc", "side": "aisle"|"coaisle", "shift"?}` → `{"member", "block"}`
    Member(Input),
    /// t-structure → the largest aisle inside its coaisle
    LargestAisle(Input),
    /// `{"a", "b"}` → `{"equivalent": bool}`
    Equiv(Input),
}

#[derive(Subcommand, Debug)]
pub enum MetricCmd {
    /// `{"metric", "morphism"}` → length
    Length(Input),
    /// `{"metric", "t"}` → window arcs in `B_t`
    Ball(Input),
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// `{"fan", "tstructure"}` → `{"cauchy": bool}`
    Cauchy(Input),
    /// `{"fan", "tstructure"}` → `{"supported": bool}`
    Support(Input),
    /// `{"fan"}` with `--n` → module colimit
    Colimit(Input),
    /// `{"fan", "m", "m2"}` → cone of the map from entry `m` to entry `m2`
    Cone(Input),
}

#[derive(Subcommand, Debug)]
pub enum CompleteCmd {
    /// `{"tstructure", "arc"}` → `{"member", "block"}`
    Member(Input),
    /// `{"x", "y"}` → `{"dim"}`
    Hom(Input),
    /// `{"f", "g", "h"}` → `{"nonzero": bool}` for `F → G → H`
    Compose(Input),
    /// `{"x", "y"}` → cone of `X → Y`
    Cone(Input),
    /// `{"arc"}` with `--n` → a double fan realising the arc
    Fan(Input),
}

/// Result of one dispatch: exit code and the text to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair<A, B> {
    x: A,
    y: B,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposeIn {
    f: CanonicalMorphism,
    g: CanonicalMorphism,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismIn {
    f: CanonicalMorphism,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuspendIn {
    object: FormalObject,
    #[serde(default = "one")]
    times: i64,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Side {
    Aisle,
    Coaisle,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberIn {
    tstructure: TStructure,
    arc: Arc,
    side: Side,
    #[serde(default)]
    shift: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivIn {
    a: TStructure,
    b: TStructure,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LengthIn {
    metric: MetricSpec,
    morphism: CanonicalMorphism,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallIn {
    metric: MetricSpec,
    t: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanIn {
    fan: FanSequence,
    tstructure: TStructure,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanOnly {
    fan: FanSequence,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanConeIn {
    fan: FanSequence,
    m: u64,
    m2: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompleteMemberIn {
    tstructure: TStructure,
    arc: Arc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleIn {
    f: Arc,
    g: Arc,
    h: Arc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcOnly {
    arc: Arc,
}

#[derive(Serialize)]
struct BallOut {
    window: i64,
    arcs: Vec<Arc>,
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn read<T: DeserializeOwned>(&mut self, input: &Input) -> Result<T> {
        let text = match input.input.as_deref() {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
                .map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Malformed(format!("stdin: {e}")))?;
                s
            }
        };
        from_json(&text)
    }

    fn check_arcs<'b>(&self, arcs: impl IntoIterator<Item = &'b Arc>) -> Result<()> {
        match self.opts.n {
            Some(n) => arcs.into_iter().try_for_each(|a| a.validate(n)),
            None => Ok(()),
        }
    }

    fn need_n(&self) -> Result<u32> {
        self.opts
            .n
            .ok_or_else(|| Error::Malformed("this command needs --n".into()))
    }
}

fn check_against(t: &TStructure, arcs: &[&Arc]) -> Result<()> {
    arcs.iter().try_for_each(|a| a.validate(t.n()))
}

fn run(cmd: &Command, ctx: &mut Ctx) -> Result<String> {
    let out = match cmd {
        Command::Hom(i) => {
            let Pair { x, y }: Pair<Arc, Arc> = ctx.read(i)?;
            ctx.check_arcs([&x, &y])?;
            to_json(&json!({ "dim": category::hom_dim(&x, &y) }))
        }
        Command::Compose(i) => {
            let ComposeIn { f, g } = ctx.read(i)?;
            ctx.check_arcs([&f.src(), &f.tgt(), &g.src(), &g.tgt()])?;
            to_json(&category::compose(&f, &g)?)
        }
        Command::Cone(i) => {
            let MorphismIn { f } = ctx.read(i)?;
            ctx.check_arcs([&f.src(), &f.tgt()])?;
            to_json(&category::cone(&f))
        }
        Command::Suspend(i) => {
            let SuspendIn { object, times } = ctx.read(i)?;
            ctx.check_arcs(object.summands())?;
            to_json(&object.suspend(times))
        }
        Command::Tstruct(c) => tstruct(c, ctx)?,
        Command::Metric(c) => metric_cmd(c, ctx)?,
        Command::Fan(c) => fan(c, ctx)?,
        Command::Complete(c) => complete(c, ctx)?,
        Command::Render(i) => {
            let scene: Scene = ctx.read(i)?;
            return render_svg(&scene);
        }
    };
    Ok(out + "\n")
}

fn tstruct(cmd: &TstructCmd, ctx: &mut Ctx) -> Result<String> {
    Ok(match cmd {
        TstructCmd::Check(i) => {
            let d: DecoratedNC = ctx.read(i)?;
            d.validate()?;
            to_json(&json!({ "valid": true }))
        }
        TstructCmd::Kreweras(i) => {
            let p: NCPartition = ctx.read(i)?;
            to_json(&tstructure::kreweras(&p))
        }
        TstructCmd::Member(i) => {
            let MemberIn {
                tstructure: t,
                arc,
                side,
                shift,
            } = ctx.read(i)?;
            check_against(&t, &[&arc])?;
            let [u, v] = arc.endpoints();
            let block = |z| match side {
                Side::Aisle => t.aisle_block(z, shift),
                Side::Coaisle => t.coaisle_block(z, shift),
            };
            let block = match (block(u), block(v)) {
                (Some(b), Some(c)) if b == c => Some(b),
                _ => None,
            };
            to_json(&json!({ "member": block.is_some(), "block": block }))
        }
        TstructCmd::LargestAisle(i) => {
            let t: TStructure = ctx.read(i)?;
            to_json(&tstructure::largest_aisle_in_coaisle(&t))
        }
        TstructCmd::Equiv(i) => {
            let EquivIn { a, b } = ctx.read(i)?;
            to_json(&json!({ "equivalent": tstructure::tstructs_equivalent(&a, &b) }))
        }
    })
}

fn metric_cmd(cmd: &MetricCmd, ctx: &mut Ctx) -> Result<String> {
    Ok(match cmd {
        MetricCmd::Length(i) => {
            let LengthIn {
                metric: m,
                morphism,
            } = ctx.read(i)?;
            check_against(m.tstructure(), &[&morphism.src(), &morphism.tgt()])?;
            to_json(&metric::morphism_length(&morphism, &m, ctx.opts.tmax))
        }
        MetricCmd::Ball(i) => {
            let BallIn { metric: m, t } = ctx.read(i)?;
            let arcs: Vec<Arc> = window_arcs(m.tstructure().n(), ctx.opts.window)
                .into_iter()
                .filter(|a| m.ball_arc(a, t))
                .collect();
            to_json(&BallOut {
                window: ctx.opts.window,
                arcs,
            })
        }
    })
}

fn fan(cmd: &FanCmd, ctx: &mut Ctx) -> Result<String> {
    Ok(match cmd {
        FanCmd::Cauchy(i) => {
            let FanIn { fan, tstructure: t } = ctx.read(i)?;
            to_json(&json!({ "cauchy": metric::is_cauchy_fan(&fan, &t) }))
        }
        FanCmd::Support(i) => {
            let FanIn { fan, tstructure: t } = ctx.read(i)?;
            to_json(&json!({ "supported": metric::is_compactly_supported_fan(&fan, &t) }))
        }
        FanCmd::Colimit(i) => {
            let FanOnly { fan } = ctx.read(i)?;
            to_json(&fan.mocolim(ctx.need_n()?))
        }
        FanCmd::Cone(i) => {
            let FanConeIn { fan, m, m2 } = ctx.read(i)?;
            to_json(&fan.cone(m, m2)?)
        }
    })
}

fn complete(cmd: &CompleteCmd, ctx: &mut Ctx) -> Result<String> {
    Ok(match cmd {
        CompleteCmd::Member(i) => {
            let CompleteMemberIn { tstructure: t, arc } = ctx.read(i)?;
            check_against(&t, &[&arc])?;
            let block = completion_member(&arc, &t);
            to_json(&json!({ "member": block.is_some(), "block": block }))
        }
        CompleteCmd::Hom(i) => {
            let Pair { x, y }: Pair<Arc, Arc> = ctx.read(i)?;
            ctx.check_arcs([&x, &y])?;
            to_json(&json!({ "dim": completion::hom_completed_dim(&x, &y) }))
        }
        CompleteCmd::Compose(i) => {
            let TripleIn { f, g, h } = ctx.read(i)?;
            ctx.check_arcs([&f, &g, &h])?;
            to_json(&json!({ "nonzero": completion::compose_completed_nonzero(&f, &g, &h) }))
        }
        CompleteCmd::Cone(i) => {
            let Pair { x, y }: Pair<Arc, Arc> = ctx.read(i)?;
            ctx.check_arcs([&x, &y])?;
            to_json(&completion::cone_completed(&x, &y)?)
        }
        CompleteCmd::Fan(i) => {
            let ArcOnly { arc } = ctx.read(i)?;
            let n = ctx.need_n()?;
            arc.validate(n)?;
            to_json(&completion::realize_as_fan(&arc, n))
        }
    })
}

fn error_report(e: &Error) -> String {
    to_json(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } })) + "\n"
}

/// Parse `argv` (program name first) and run the command against `stdin`.
/// `--out` is honoured only for successful runs.
pub fn dispatch<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.render().to_string(),
            };
        }
    };
    let mut ctx = Ctx {
        opts: &cli.opts,
        stdin,
    };
    match run(&cli.command, &mut ctx) {
        Ok(output) => match &cli.opts.out {
            Some(path) => match std::fs::write(path, &output) {
                Ok(()) => Outcome {
                    code: 0,
                    output: String::new(),
                },
                Err(e) => Outcome {
                    code: 1,
                    output: error_report(&Error::Malformed(format!("{}: {e}", path.display()))),
                },
            },
            None => Outcome { code: 0, output },
        },
        Err(e) => Outcome {
            code: 1,
            output: error_report(&e),
        },
    }
}
