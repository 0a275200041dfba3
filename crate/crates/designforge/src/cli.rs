//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use designforge_core::action::DEFAULT_ORBIT_CAP;
use designforge_core::atlas::{self, GroupRecipe, Pgl2Variant};
use designforge_core::aut::{aut_group, s_of_i_order};
use designforge_core::cases::{
    self, run_examples, run_involution_example, run_mathieu_row, run_psl2_family,
    verify_stabilizer_structure, CaseOptions, Check, MATHIEU_ROWS,
};
use designforge_core::construct::{coset_action, method1_design, method2_design, OrbitSelector};
use designforge_core::design::{DesignParams, TDesignOutcome};
use designforge_core::util::{prime_power, rng, DEFAULT_SEED};
use designforge_core::{PermGroup, Permutation};
use serde::Serialize;

use crate::design_file::DesignFile;
use crate::error::{read_file, write_file, CliError, CliResult};
use crate::report::{compare_golden, Report};
use crate::resolver::FileResolver;

pub const SEED_ENV: &str = "DESIGNFORGE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "designforge",
    version,
    about = "Block designs from permutation groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for random group elements; defaults to $DESIGNFORGE_SEED.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node budget for automorphism searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget_nodes: u64,
    /// Largest orbit enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,
    /// Increments allowed when tallying t-subsets.
    #[arg(long, global = true, default_value_t = 1 << 28)]
    pub tally_budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Compare the JSON report with the file of the same name in DIR.
    #[arg(long, global = true, value_name = "DIR")]
    pub golden: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// a<n>, s<n>, psl2, psl2-frobenius, m22, m23, m24 or a generator file.
    #[arg(long)]
    pub group: String,
    /// Field size for psl2 groups.
    #[arg(long)]
    pub q: Option<u64>,
    /// pgl2:squared, pgl2:non-squared, point:<p>, normalizer:<order>,
    /// s4-transitive or a generator file.
    #[arg(long)]
    pub maximal: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a design from a group.
    Construct {
        /// 1: blocks are images of a stabilizer orbit; 2: points are a
        /// conjugacy class.
        #[arg(long)]
        method: u8,
        #[command(flatten)]
        group: GroupArgs,
        /// Element order for method 2.
        #[arg(long)]
        ord: Option<u64>,
        /// Base point for method 1.
        #[arg(long, default_value_t = 0)]
        point: u32,
        /// Stabilizer orbit size for method 1.
        #[arg(long)]
        orbit_size: Option<usize>,
        /// Which orbit of that size, counting from 0.
        #[arg(long, default_value_t = 0)]
        orbit_index: usize,
        /// Design file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient of a 1-design by its I-classes.
    Reduce {
        design: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transposed incidence structure.
    Dual {
        design: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group of a design.
    Aut { design: PathBuf },
    /// Count the blocks through every t-subset.
    Tdesign {
        design: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Search the largest t for which the count is uniform.
        #[arg(long)]
        max_t: bool,
    },
    /// Designs from the Mathieu groups M22, M23, M24.
    Table1 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ord: Option<u64>,
    },
    /// PSL(2,q^2) with its two classes of PGL(2,q).
    Psl2 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5])]
        q: Vec<u64>,
    },
    /// Stabilizer-orbit examples and the PSL(2,9) involution design.
    Examples34,
    /// Stabilizer of a reduced point of a conjugacy-class design.
    Stab {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ord: u64,
    },
}

pub struct Context {
    pub opts: CaseOptions,
    pub resolver: FileResolver,
}

fn seed_from_env() -> CliResult<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{SEED_ENV}=`{s}` is not an integer"))),
        Err(_) => Ok(None),
    }
}

impl Common {
    pub fn options(&self) -> CliResult<CaseOptions> {
        if self.budget_nodes == 0 || self.orbit_cap == 0 || self.tally_budget == 0 {
            return Err(CliError::Input("budgets must be positive".into()));
        }
        let seed = match self.seed {
            Some(s) => s,
            None => seed_from_env()?.unwrap_or(DEFAULT_SEED),
        };
        Ok(CaseOptions {
            seed,
            orbit_cap: self.orbit_cap,
            aut_budget: self.budget_nodes,
            tally_budget: self.tally_budget,
        })
    }
}

/// Parses and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let ctx = Context {
        opts: cli.common.options()?,
        resolver: FileResolver::default(),
    };
    let out = match &cli.command {
        Command::Construct {
            method,
            group,
            ord,
            point,
            orbit_size,
            orbit_index,
            out,
        } => cmd_construct(
            &ctx,
            *method,
            group,
            *ord,
            *point,
            *orbit_size,
            *orbit_index,
            out.as_ref(),
        )?,
        Command::Reduce { design, out } => cmd_reduce(&ctx, design, out.as_ref())?,
        Command::Dual { design, out } => cmd_dual(&ctx, design, out.as_ref())?,
        Command::Aut { design } => cmd_aut(&ctx, design)?,
        Command::Tdesign { design, t, max_t } => cmd_tdesign(&ctx, design, *t, *max_t)?,
        Command::Table1 { n, ord } => cmd_table1(&ctx, *n, *ord)?,
        Command::Psl2 { q } => cmd_psl2(&ctx, q)?,
        Command::Examples34 => cmd_examples(&ctx)?,
        Command::Stab { group, ord } => cmd_stab(&ctx, group, *ord)?,
    };
    emit(&cli.common, out)
}

/// A finished command: its JSON, a text rendering, and a golden name.
pub struct Output {
    pub name: String,
    pub json: String,
    pub text: String,
    pub failed: usize,
}

impl Output {
    fn new<T: Serialize>(name: String, report: &Report<T>, text: String) -> CliResult<Self> {
        Ok(Output {
            name,
            json: report.to_json()?,
            text,
            failed: report.failed(),
        })
    }
}

fn emit(common: &Common, out: Output) -> CliResult<()> {
    match common.format {
        Format::Json => print!("{}", out.json),
        Format::Text => print!("{}", out.text),
    }
    if let Some(path) = &common.report {
        write_file(path, &out.json)?;
    }
    if let Some(dir) = &common.golden {
        compare_golden(dir, &out.name, &out.json)?;
    }
    if out.failed > 0 {
        return Err(CliError::ChecksFailed(out.failed));
    }
    Ok(())
}

fn render_checks(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        s.push_str(&format!(
            "  {mark} {}: expected {}, observed {}\n",
            c.claim, c.expected, c.observed
        ));
    }
    s
}

fn params(p: &DesignParams) -> String {
    format!("1-({},{},{})", p.v, p.k, p.lambda)
}

/// Group recipe from `--group` and `--q`.
pub fn group_recipe(args: &GroupArgs) -> CliResult<GroupRecipe> {
    let name = args.group.to_ascii_lowercase();
    let need_q = || {
        args.q
            .ok_or_else(|| CliError::Input(format!("--group {name} needs --q")))
    };
    let numbered = |prefix: char| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 2)
    };
    Ok(if let Some(n) = numbered('a') {
        GroupRecipe::Alternating { n }
    } else if let Some(n) = numbered('s') {
        GroupRecipe::Symmetric { n }
    } else if name == "psl2" {
        GroupRecipe::Psl2 { q: need_q()? }
    } else if name == "psl2-frobenius" {
        GroupRecipe::Psl2Frobenius { q: need_q()? }
    } else {
        GroupRecipe::FromFile {
            name: args.group.clone(),
        }
    })
}

/// Subgroup recipe from `--maximal`, relative to `parent`.
pub fn subgroup_recipe(
    ctx: &Context,
    parent: &GroupRecipe,
    group: &PermGroup,
    spec: &str,
) -> CliResult<GroupRecipe> {
    let bad = || CliError::Input(format!("unrecognised --maximal `{spec}`"));
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match kind {
        "pgl2" => {
            let variant = match arg {
                "squared" => Pgl2Variant::Squared,
                "non-squared" => Pgl2Variant::NonSquared,
                _ => return Err(bad()),
            };
            let q = match parent {
                GroupRecipe::Psl2 { q } => *q,
                _ => return Err(CliError::Input("pgl2 subgroups need --group psl2".into())),
            };
            let (p, k) = prime_power(q).ok_or_else(bad)?;
            if k % 2 != 0 {
                return Err(CliError::Input(format!("q = {q} is not a square")));
            }
            GroupRecipe::Pgl2InPsl2Sq {
                q: p.pow(k / 2),
                variant,
            }
        }
        "point" => GroupRecipe::PointStabilizer {
            parent: Box::new(parent.clone()),
            point: arg.parse().map_err(|_| bad())?,
        },
        "normalizer" => {
            let ord: u64 = arg.parse().map_err(|_| bad())?;
            let mut r = rng(ctx.opts.seed);
            let element = group.element_of_order(ord, None, &mut r, 100_000)?;
            GroupRecipe::NormalizerOfCyclic {
                parent: Box::new(parent.clone()),
                element,
            }
        }
        "s4-transitive" => {
            let s4 = atlas::a6_transitive_s4()?;
            GroupRecipe::Explicit {
                name: "S4 transitive on 6 points".into(),
                degree: 6,
                generators: s4.generators().to_vec(),
            }
        }
        _ => GroupRecipe::FromFile { name: spec.into() },
    })
}

#[derive(Debug, Serialize)]
struct ConstructBody {
    method: u8,
    group: String,
    subgroup: Option<String>,
    element: Option<Permutation>,
    base_point: Option<u32>,
    orbit: Option<Vec<u32>>,
    params: DesignParams,
    blocks: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    ctx: &Context,
    method: u8,
    gargs: &GroupArgs,
    ord: Option<u64>,
    point: u32,
    orbit_size: Option<usize>,
    orbit_index: usize,
    out: Option<&PathBuf>,
) -> CliResult<Output> {
    let recipe = group_recipe(gargs)?;
    let group = recipe.build(&ctx.resolver)?;
    let sub_recipe = gargs
        .maximal
        .as_deref()
        .map(|m| subgroup_recipe(ctx, &recipe, &group, m))
        .transpose()?;
    let sub = sub_recipe
        .as_ref()
        .map(|r| r.build(&ctx.resolver))
        .transpose()?;
    let cap = ctx.opts.orbit_cap;
    let index = sub.as_ref().map(|s| group.order() / s.order());
    let (design, body, checks) = match method {
        1 => {
            let size =
                orbit_size.ok_or_else(|| CliError::Input("method 1 needs --orbit-size".into()))?;
            let acting = match &sub {
                Some(s) => coset_action(&group, s, cap)?.group,
                None => group.clone(),
            };
            if point as usize >= acting.degree() {
                return Err(CliError::Input(format!("point {point} out of range")));
            }
            let d = method1_design(
                &acting,
                point,
                OrbitSelector {
                    size,
                    index: orbit_index,
                },
                cap,
            )?;
            let checks = vec![
                Check::eq("method1.blocks-equal-degree", acting.degree(), d.design.b()),
                Check::eq("method1.block-size", size, d.params.k),
                Check::eq("method1.replication", size as u64, d.params.lambda),
            ];
            let body = ConstructBody {
                method,
                group: recipe.name(),
                subgroup: sub_recipe.as_ref().map(GroupRecipe::name),
                element: None,
                base_point: Some(point),
                orbit: Some(d.delta.clone()),
                params: d.params,
                blocks: d.design.b(),
            };
            (d.design, body, checks)
        }
        2 => {
            let ord = ord.ok_or_else(|| CliError::Input("method 2 needs --ord".into()))?;
            let sub = sub
                .as_ref()
                .ok_or_else(|| CliError::Input("method 2 needs --maximal".into()))?;
            let mut r = rng(ctx.opts.seed);
            let g = sub.element_of_order(ord, None, &mut r, 100_000)?;
            let d = method2_design(&group, sub, &g, cap)?;
            let checks = vec![
                Check::eq(
                    "method2.blocks-equal-index",
                    index.unwrap_or(0),
                    d.design.b() as u128,
                ),
                Check::eq("method2.points-equal-class", d.class.len(), d.params.v),
                Check::eq("method2.block-size", d.base_block.len(), d.params.k),
            ];
            let body = ConstructBody {
                method,
                group: recipe.name(),
                subgroup: sub_recipe.as_ref().map(GroupRecipe::name),
                element: Some(g),
                base_point: None,
                orbit: None,
                params: d.params,
                blocks: d.design.b(),
            };
            (d.design, body, checks)
        }
        m => return Err(CliError::Input(format!("--method must be 1 or 2, got {m}"))),
    };
    let comment = vec![format!(
        "# method {method}, {}{}",
        recipe.name(),
        sub_recipe
            .as_ref()
            .map(|s| format!(", {}", s.name()))
            .unwrap_or_default()
    )];
    let file = DesignFile::from_structure(design, comment);
    if let Some(path) = out {
        write_file(path, &file.render())?;
    }
    let text = format!(
        "{} with {} blocks\n{}",
        params(&body.params),
        body.blocks,
        render_checks(&checks)
    );
    let name = format!("construct-m{method}");
    let report = Report::new("construct", ctx.opts.seed, checks, body)
        .with_recipes(Some(recipe), sub_recipe);
    Output::new(name, &report, text)
}

fn load_design(path: &Path) -> CliResult<DesignFile> {
    DesignFile::parse(&read_file(path)?)
}

#[derive(Debug, Serialize)]
struct ReduceBody {
    original: DesignParams,
    i_x: usize,
    classes: Vec<Vec<u32>>,
    reduced: Option<DesignParams>,
    s_of_i_order: String,
}

fn cmd_reduce(ctx: &Context, path: &Path, out: Option<&PathBuf>) -> CliResult<Output> {
    let file = load_design(path)?;
    let original = file.structure.validate_1design()?;
    let r = file.structure.reduce()?;
    let reduced = r.quotient.validate_1design().ok();
    let checks = vec![Check::eq(
        "reduce.classes-partition",
        original.v,
        r.classes.len() * r.class_size,
    )];
    if let Some(p) = out {
        let f = DesignFile::from_structure(
            r.quotient.clone(),
            vec![format!("# reduced, |I_x| = {}", r.class_size)],
        );
        write_file(p, &f.render())?;
    }
    let text = format!(
        "|I_x| = {}, {} classes, reduced {}\n{}",
        r.class_size,
        r.classes.len(),
        reduced.as_ref().map_or("(not a 1-design)".into(), params),
        render_checks(&checks)
    );
    let body = ReduceBody {
        original,
        i_x: r.class_size,
        s_of_i_order: s_of_i_order(&r).to_string(),
        classes: r.classes,
        reduced,
    };
    Output::new(
        "reduce".into(),
        &Report::new("reduce", ctx.opts.seed, checks, body),
        text,
    )
}

#[derive(Debug, Serialize)]
struct DualBody {
    v: usize,
    b: usize,
    block_sizes: Vec<usize>,
    max_multiplicity: usize,
}

fn cmd_dual(ctx: &Context, path: &Path, out: Option<&PathBuf>) -> CliResult<Output> {
    let file = load_design(path)?;
    let dual = file.structure.dual();
    let checks = vec![
        Check::eq("dual.points-are-blocks", file.structure.b(), dual.v()),
        Check::eq("dual.blocks-are-points", file.structure.v(), dual.b()),
    ];
    let mut sizes: Vec<usize> = dual.blocks().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let body = DualBody {
        v: dual.v(),
        b: dual.b(),
        block_sizes: sizes,
        max_multiplicity: dual.max_multiplicity(),
    };
    if let Some(p) = out {
        write_file(
            p,
            &DesignFile::from_structure(dual, vec!["# dual".into()]).render(),
        )?;
    }
    let text = format!(
        "dual: {} points, {} blocks\n{}",
        body.v,
        body.b,
        render_checks(&checks)
    );
    Output::new(
        "dual".into(),
        &Report::new("dual", ctx.opts.seed, checks, body),
        text,
    )
}

#[derive(Debug, Serialize)]
struct AutBody {
    order: String,
    complete: bool,
    nodes: u64,
    point_transitive: bool,
    block_transitive: bool,
    /// Generators on the points, 0-based cycles.
    generators: Vec<String>,
}

fn cmd_aut(ctx: &Context, path: &Path) -> CliResult<Output> {
    let file = load_design(path)?;
    let a = aut_group(&file.structure, ctx.opts.aut_budget)?;
    let gens: Vec<String> = a.point_generators.iter().map(|g| g.to_string()).collect();
    let checks = vec![Check::holds(
        "aut.generators-preserve-blocks",
        a.point_generators
            .iter()
            .all(|g| designforge_core::aut::is_design_automorphism(&file.structure, g)),
    )];
    let body = AutBody {
        order: a.order.to_string(),
        complete: a.complete,
        nodes: a.nodes,
        point_transitive: a.point_transitive,
        block_transitive: a.block_transitive,
        generators: gens,
    };
    let mut text = format!(
        "|Aut| = {}{}\n",
        body.order,
        if a.complete {
            ""
        } else {
            " (search incomplete)"
        }
    );
    for g in &body.generators {
        text.push_str(&format!("  {g}\n"));
    }
    text.push_str(&render_checks(&checks));
    let out = Output::new(
        "aut".into(),
        &Report::new("aut", ctx.opts.seed, checks, body),
        text,
    )?;
    if !a.complete {
        print!("{}", out.text);
        return Err(designforge_core::Error::BudgetExceeded(a.nodes).into());
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct TdesignBody {
    /// `(t, lambda_t)` for every t tried with a uniform count.
    uniform: Vec<(usize, u64)>,
    not_uniform_at: Option<usize>,
}

fn cmd_tdesign(ctx: &Context, path: &Path, t: usize, max_t: bool) -> CliResult<Output> {
    let file = load_design(path)?;
    let s = &file.structure;
    let min_k = s.blocks().iter().map(Vec::len).min().unwrap_or(0);
    let range: Vec<usize> = if max_t {
        (1..=min_k).collect()
    } else {
        vec![t]
    };
    let mut uniform = Vec::new();
    let mut not_uniform_at = None;
    for t in range {
        match s.t_design_lambda(t, ctx.opts.tally_budget)? {
            TDesignOutcome::Uniform { lambda } => uniform.push((t, lambda)),
            TDesignOutcome::NotUniform { .. } => {
                not_uniform_at = Some(t);
                break;
            }
        }
    }
    let text = match (uniform.last(), max_t) {
        (Some((t, l)), true) => format!("largest t = {t}: {t}-({},{},{l})\n", s.v(), min_k),
        (Some((t, l)), false) => format!("{t}-design, lambda = {l}\n"),
        (None, _) => format!("not a {t}-design\n"),
    };
    let checks = if max_t {
        vec![]
    } else {
        vec![Check::holds("tdesign.uniform", !uniform.is_empty())]
    };
    let body = TdesignBody {
        uniform,
        not_uniform_at,
    };
    Output::new(
        "tdesign".into(),
        &Report::new("tdesign", ctx.opts.seed, checks, body),
        text,
    )
}

fn cmd_table1(ctx: &Context, n: Option<usize>, ord: Option<u64>) -> CliResult<Output> {
    let rows: Vec<_> = MATHIEU_ROWS
        .iter()
        .filter(|e| n.is_none_or(|n| n == e.n) && ord.is_none_or(|o| o == e.ord))
        .collect();
    if rows.is_empty() {
        return Err(CliError::Input(
            "no row with that n and order (n in 22..24, order 2 or 3)".into(),
        ));
    }
    let mut out = Vec::new();
    let mut checks = Vec::new();
    let mut text = String::from("n   ord  |I_x|  dual design        |Aut|       |Stab(b)|\n");
    for e in rows {
        let name = format!("m{}", e.n);
        let group = ctx.resolver.load(&name)?;
        let row = run_mathieu_row(&name.to_ascii_uppercase(), &group, e.ord, &ctx.opts)?;
        let dual = format!(
            "{}-({},{},{})",
            row.dual_t,
            row.dual_v,
            row.dual_k,
            row.dual_lambda_t.map_or("-".into(), |l| l.to_string())
        );
        text.push_str(&format!(
            "{:<3} {:<4} {:<6} {:<18} {:<11} {}{}\n",
            e.n,
            e.ord,
            row.i_x,
            dual,
            row.aut_order,
            row.dual_block_stabilizer_order,
            if row.aut_complete {
                ""
            } else {
                "  (aut search incomplete)"
            }
        ));
        checks.extend(row.checks.iter().cloned());
        out.push(row);
    }
    text.push_str(&render_checks(&checks));
    let name = match (n, ord) {
        (Some(n), Some(o)) => format!("table1-{n}-{o}"),
        (Some(n), None) => format!("table1-{n}"),
        _ => "table1".into(),
    };
    Output::new(
        name,
        &Report::new("table1", ctx.opts.seed, checks, out),
        text,
    )
}

fn cmd_psl2(ctx: &Context, qs: &[u64]) -> CliResult<Output> {
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    let mut text = String::new();
    for &q in qs {
        let r = run_psl2_family(q, &ctx.opts)?;
        text.push_str(&format!("PSL(2,{}) of order {}\n", q * q, r.group_order));
        for v in &r.variants {
            text.push_str(&format!(
                "  {:?}: printed character formula {}, torus reading {}\n",
                v.variant,
                if v.printed_formula_matches {
                    "matches"
                } else {
                    "differs"
                },
                if v.torus_formula_matches {
                    "matches"
                } else {
                    "differs"
                },
            ));
            for d in &v.designs {
                text.push_str(&format!(
                    "    {:?} order {}: {} |I_x| = {} reduced {}\n",
                    d.kind,
                    d.order,
                    params(&d.params),
                    d.i_x,
                    params(&d.reduced)
                ));
            }
        }
        checks.extend(r.checks().cloned());
        reports.push(r);
    }
    text.push_str(&render_checks(&checks));
    let name = format!(
        "psl2-{}",
        qs.iter().map(u64::to_string).collect::<Vec<_>>().join("-")
    );
    Output::new(
        name,
        &Report::new("psl2", ctx.opts.seed, checks, reports),
        text,
    )
}

#[derive(Debug, Serialize)]
struct ExamplesBody {
    involution_example: cases::InvolutionExampleReport,
    stabilizer_orbit_examples: cases::ExamplesReport,
}

fn cmd_examples(ctx: &Context) -> CliResult<Output> {
    let inv = run_involution_example(&ctx.opts)?;
    let ex = run_examples(&ctx.opts)?;
    let mut checks = inv.checks.clone();
    checks.extend(ex.checks.iter().cloned());
    let mut text = render_checks(&checks);
    text.push_str("stretch goals (not gating):\n");
    text.push_str(&render_checks(&ex.stretch_checks));
    let body = ExamplesBody {
        involution_example: inv,
        stabilizer_orbit_examples: ex,
    };
    Output::new(
        "examples34".into(),
        &Report::new("examples34", ctx.opts.seed, checks, body),
        text,
    )
}

fn cmd_stab(ctx: &Context, gargs: &GroupArgs, ord: u64) -> CliResult<Output> {
    let recipe = group_recipe(gargs)?;
    let group = recipe.build(&ctx.resolver)?;
    let spec = gargs.maximal.clone().unwrap_or_else(|| "point:0".into());
    let sub_recipe = subgroup_recipe(ctx, &recipe, &group, &spec)?;
    let sub = sub_recipe.build(&ctx.resolver)?;
    let mut r = rng(ctx.opts.seed);
    let g = sub.element_of_order(ord, None, &mut r, 100_000)?;
    let d = method2_design(&group, &sub, &g, ctx.opts.orbit_cap)?;
    let red = d.design.reduce()?;
    let stab = verify_stabilizer_structure(&group, &sub, &d, &red, &ctx.opts)?;
    let text = format!(
        "|I_x| = {}, |C_G(x)| = {}, |S_x| = {}, |A_x| = {}\n{}",
        stab.i_x_size,
        stab.centralizer_order,
        stab.s_x_order,
        stab.a_x_order
            .map_or("not computed".into(), |a| a.to_string()),
        render_checks(&stab.checks)
    );
    let name = format!("stab-{}-{ord}", gargs.group.to_ascii_lowercase());
    let checks = stab.checks.clone();
    let report = Report::new("stab", ctx.opts.seed, checks, stab)
        .with_recipes(Some(recipe), Some(sub_recipe));
    Output::new(name, &report, text)
}
