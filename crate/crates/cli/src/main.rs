//! `phopf`: command-line front end for the planar rooted-tree Hopf algebra.

mod output;

use std::cmp::Ordering;
use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use planar_hopf::algebra::{format_coeff, parse_coeff, Coeff};
use planar_hopf::cm::{self, Coproduct, Family};
use planar_hopf::forest::{compare_forests, enumerate_forests_capped, enumerate_trees_capped, mirror};
use planar_hopf::frabetti::{coproduct_fr_cuts, coproduct_fr_recursive};
use planar_hopf::hopf::{antipode_cuts_capped, coproduct_forest, RecursiveAntipode};
use planar_hopf::liealg::{bracket_cuts, bracket_graft};
use planar_hopf::nonplanar::{graft_average, project, RForest};
use planar_hopf::pairing::{gram_matrix, pair_combinatorial_capped, DualBasis, Pairing};
use planar_hopf::series::{dims, tau_series, tv_series};
use planar_hopf::shuffle::{self, Generator};
use planar_hopf::{selfcheck, DecorationSet, Element, Error, Forest, PlanarTree};
use serde_json::{json, Value};

const AFTER_HELP: &str = "\
Environment:
  PLANAR_HOPF_MAX_ITEMS   bound on the size of any single enumeration (default 1000000)

Exit codes:
  0 success, 1 parse or usage error, 2 resource limit, 3 disagreement or failed invariant";

#[derive(Parser, Debug)]
#[command(name = "phopf", version, about = "Exact computations with planar decorated rooted forests", after_help = AFTER_HELP)]
struct Cli {
    /// Decoration tokens, comma separated.
    #[arg(short = 'D', long = "decorations", global = true, default_value = "*", value_delimiter = ',')]
    decorations: Vec<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Bound on the size of any single enumeration.
    #[arg(long, global = true, env = "PLANAR_HOPF_MAX_ITEMS", default_value_t = planar_hopf::error::DEFAULT_CAP)]
    max_items: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Trees,
    Forests,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AntipodeMethod {
    Rec,
    Cuts,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairMethod {
    Rec,
    Comb,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BracketMethod {
    Cuts,
    Graft,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CmQuantity {
    U,
    V,
    Z,
    W,
    Delta,
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// Coefficients of the tree-count series up to order N.
    Tau {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Dimensions of the weight-N component and of its primitives.
    Dims {
        #[arg(short = 'n')]
        n: u32,
        /// Number of decorations.
        #[arg(long = "colors", default_value_t = 1)]
        colors: u32,
    },
    /// Series of the tensor coalgebra on a graded space.
    Tv {
        /// Dimensions of the grades 0, 1, 2, ...; the first must be 0.
        #[arg(long, value_delimiter = ',', required = true)]
        grades: Vec<String>,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List trees or forests of weight N in ascending order.
    #[command(name = "enum")]
    Enumerate {
        kind: Kind,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Coproduct by admissible cuts.
    Coproduct { forest: String },
    /// Coproduct by left-admissible cuts.
    #[command(name = "coproduct-fr")]
    CoproductFr {
        forest: String,
        /// Also run the recursive definition and compare.
        #[arg(long)]
        check: bool,
    },
    /// Antipode.
    Antipode {
        forest: String,
        #[arg(long, value_enum, default_value_t = AntipodeMethod::Rec)]
        method: AntipodeMethod,
    },
    /// Hopf pairing of two forests.
    Pair {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = PairMethod::Rec)]
        method: PairMethod,
    },
    /// Gram matrix of the pairing in weight N.
    Gram {
        #[arg(short = 'n')]
        n: usize,
        /// Print the inverse matrix instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Every dual-basis element of weight N in forest coordinates.
    #[command(name = "dual-basis")]
    DualBasis {
        #[arg(short = 'n')]
        n: usize,
    },
    /// One dual-basis element in forest coordinates.
    Dual { forest: String },
    /// The partner forest of the pairing involution.
    Mirror { forest: String },
    /// Compare two forests in the total order.
    Order { left: String, right: String },
    /// Bracket of two dual-basis tree elements.
    Bracket {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = BracketMethod::Graft)]
        method: BracketMethod,
    },
    /// Tree sums of weight N and their coproduct formulas.
    Cm {
        quantity: CmQuantity,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Shuffle product of two words.
    Shuffle {
        left: String,
        right: String,
        /// Generators as name:grade, comma separated; defaults to every
        /// token of the two words with grade 1.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
    },
    /// Forget the planar embedding.
    Project { forest: String },
    /// Averaged grafting of the first forest onto the second.
    #[command(name = "graft-average")]
    GraftAverage { left: String, right: String },
    /// Generating functions.
    Series {
        #[command(subcommand)]
        which: SeriesCommand,
    },
    /// Run the invariant suite.
    Selfcheck {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
}

/// Reasons for a nonzero exit.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Resource(String),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Disagreement(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Resource(m) => write!(f, "resource limit: {m}"),
            Failure::Disagreement(m) => write!(f, "disagreement: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// What a command produced: text lines, a JSON value, and whether a
/// comparison disagreed.
struct Outcome {
    text: String,
    json: Value,
    disagreement: Option<String>,
}

impl Outcome {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, disagreement: None }
    }

    fn compare(text: String, json: Value, agree: bool, what: &str) -> Self {
        let disagreement = (!agree).then(|| format!("{what} methods disagree"));
        Outcome { text, json, disagreement }
    }
}

struct Context {
    set: DecorationSet,
    cap: u128,
}

impl Context {
    fn forest(&self, text: &str) -> Result<Forest, Failure> {
        Ok(self.set.parse_forest(text)?)
    }

    fn tree(&self, text: &str) -> Result<PlanarTree, Failure> {
        Ok(self.set.parse_tree(text)?)
    }

    fn render(&self, x: &Element) -> String {
        x.render(&self.set)
    }

    fn element_json(&self, x: &Element) -> Value {
        output::element(x, |f| self.set.render(f))
    }

    fn tensor_json(&self, t: &planar_hopf::ForestTensor) -> Value {
        output::tensor(t, |f| json!(self.set.render(f)))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            match out.disagreement {
                Some(m) => {
                    eprintln!("{}", Failure::Disagreement(m));
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    if cli.max_items == 0 {
        return Err(Failure::Usage("--max-items must be positive".into()));
    }
    let ctx = Context { set: DecorationSet::new(cli.decorations.iter().map(String::as_str))?, cap: cli.max_items };
    match cli.command {
        Command::Enumerate { kind, n } => enumerate(&ctx, kind, n),
        Command::Coproduct { forest } => {
            let d = coproduct_forest(&ctx.forest(&forest)?)?;
            Ok(Outcome::new(d.render(&ctx.set), ctx.tensor_json(&d)))
        }
        Command::CoproductFr { forest, check } => {
            let f = ctx.forest(&forest)?;
            let d = coproduct_fr_cuts(&f, ctx.cap)?;
            let agree = !check || d == coproduct_fr_recursive(&Element::forest(f));
            Ok(Outcome::compare(d.render(&ctx.set), ctx.tensor_json(&d), agree, "coproduct"))
        }
        Command::Antipode { forest, method } => antipode(&ctx, &forest, method),
        Command::Pair { left, right, method } => pair(&ctx, &left, &right, method),
        Command::Gram { n, inverse } => {
            let g = gram_matrix(n, &ctx.set, ctx.cap)?;
            let m = if inverse { g.matrix.inverse_unimodular()? } else { g.matrix };
            let header: Vec<String> = g.basis.iter().enumerate().map(|(i, f)| format!("{i}: {}", ctx.set.render(f))).collect();
            Ok(Outcome::new(format!("{}\n{m}", header.join("\n")), output::matrix(&g.basis, &m, &ctx.set)))
        }
        Command::DualBasis { n } => {
            let mut db = DualBasis::new(&ctx.set, ctx.cap);
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for f in enumerate_forests_capped(n, &ctx.set, ctx.cap)? {
                let e = db.e(&f)?;
                lines.push(format!("e({}) = {}", ctx.set.render(&f), ctx.render(&e)));
                items.push(json!({"forest": ctx.set.render(&f), "value": ctx.element_json(&e)}));
            }
            Ok(Outcome::new(lines.join("\n"), json!({"basis": "e", "weight": n, "elements": items})))
        }
        Command::Dual { forest } => {
            let e = DualBasis::new(&ctx.set, ctx.cap).e(&ctx.forest(&forest)?)?;
            Ok(Outcome::new(ctx.render(&e), ctx.element_json(&e)))
        }
        Command::Mirror { forest } => {
            let f = ctx.forest(&forest)?;
            let m = mirror(&f);
            let p = Pairing::new().forests(&f, &m);
            Ok(Outcome::new(
                ctx.set.render(&m),
                json!({"forest": ctx.set.render(&f), "mirror": ctx.set.render(&m), "pairing": p.to_string()}),
            ))
        }
        Command::Order { left, right } => {
            let (f, g) = (ctx.forest(&left)?, ctx.forest(&right)?);
            let (sym, word) = match compare_forests(&f, &g) {
                Ordering::Less => ("<", "less"),
                Ordering::Equal => ("=", "equal"),
                Ordering::Greater => (">", "greater"),
            };
            Ok(Outcome::new(sym, json!({ "cmp": word })))
        }
        Command::Bracket { left, right, method } => bracket(&ctx, &left, &right, method),
        Command::Cm { quantity, n } => cm_command(&ctx, quantity, n),
        Command::Shuffle { left, right, generators } => shuffle_command(&left, &right, &generators),
        Command::Project { forest } => {
            let r = project(&ctx.forest(&forest)?);
            let lift = r.lift();
            Ok(Outcome::new(
                r.render(&ctx.set),
                json!({"forest": r.render(&ctx.set), "tree": output::forest_json(&ctx.set, &lift)}),
            ))
        }
        Command::GraftAverage { left, right } => {
            let (f, g) = (RForest::parse(&left, &ctx.set)?, RForest::parse(&right, &ctx.set)?);
            let x = graft_average(&f, &g);
            Ok(Outcome::new(x.render_with(|h| h.render(&ctx.set)), output::element(&x, |h| h.render(&ctx.set))))
        }
        Command::Series { which } => series_command(which),
        Command::Selfcheck { max_weight } => {
            let report = selfcheck::run(max_weight, ctx.cap)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"module": c.module, "name": c.name, "passed": c.passed(), "failure": c.failure}))
                .collect();
            let json = json!({"max_weight": max_weight, "passed": report.passed(), "checks": checks});
            let disagreement = (!report.passed()).then(|| format!("{} invariant(s) failed", report.failures()));
            Ok(Outcome { text: report.to_string(), json, disagreement })
        }
    }
}

fn enumerate(ctx: &Context, kind: Kind, n: usize) -> Result<Outcome, Failure> {
    let forests: Vec<Forest> = match kind {
        Kind::Trees => enumerate_trees_capped(n, &ctx.set, ctx.cap)?.into_iter().map(Forest::from).collect(),
        Kind::Forests => enumerate_forests_capped(n, &ctx.set, ctx.cap)?,
    };
    let lines: Vec<String> = forests.iter().map(|f| ctx.set.render(f)).collect();
    let items: Vec<Value> = forests.iter().map(|f| output::forest_json(&ctx.set, f)).collect();
    let json = json!({"weight": n, "count": forests.len(), "text": lines, "structure": items});
    Ok(Outcome::new(lines.join("\n"), json))
}

fn antipode(ctx: &Context, forest: &str, method: AntipodeMethod) -> Result<Outcome, Failure> {
    let f = ctx.forest(forest)?;
    let rec = || RecursiveAntipode::new().forest(&f);
    let cuts = || antipode_cuts_capped(&f, ctx.cap);
    Ok(match method {
        AntipodeMethod::Rec => {
            let s = rec()?;
            Outcome::new(ctx.render(&s), ctx.element_json(&s))
        }
        AntipodeMethod::Cuts => {
            let s = cuts()?;
            Outcome::new(ctx.render(&s), ctx.element_json(&s))
        }
        AntipodeMethod::Both => {
            let (a, b) = (rec()?, cuts()?);
            let text = if a == b { ctx.render(&a) } else { format!("rec:  {}\ncuts: {}", ctx.render(&a), ctx.render(&b)) };
            Outcome::compare(text, json!({"rec": ctx.element_json(&a), "cuts": ctx.element_json(&b)}), a == b, "antipode")
        }
    })
}

fn pair(ctx: &Context, left: &str, right: &str, method: PairMethod) -> Result<Outcome, Failure> {
    let (f, g) = (ctx.forest(left)?, ctx.forest(right)?);
    let rec = || Pairing::new().forests(&f, &g);
    Ok(match method {
        PairMethod::Rec => {
            let v = rec().to_string();
            Outcome::new(v.clone(), json!({ "value": v }))
        }
        PairMethod::Comb => {
            let v = pair_combinatorial_capped(&f, &g, ctx.cap)?.to_string();
            Outcome::new(v.clone(), json!({ "value": v }))
        }
        PairMethod::Both => {
            let (a, b) = (rec(), pair_combinatorial_capped(&f, &g, ctx.cap)?);
            let text = if a == b { a.to_string() } else { format!("rec:  {a}\ncomb: {b}") };
            Outcome::compare(text, json!({"rec": a.to_string(), "comb": b.to_string()}), a == b, "pairing")
        }
    })
}

fn bracket(ctx: &Context, left: &str, right: &str, method: BracketMethod) -> Result<Outcome, Failure> {
    let (a, b) = (ctx.tree(left)?, ctx.tree(right)?);
    let cuts = || bracket_cuts(&a, &b, &ctx.set, ctx.cap);
    let graft = || bracket_graft(&a, &b, ctx.cap);
    let one = |x: planar_hopf::pairing::DualElement| Outcome::new(x.render(&ctx.set), output::e_basis(&x.0, &ctx.set));
    Ok(match method {
        BracketMethod::Cuts => one(cuts()?),
        BracketMethod::Graft => one(graft()?),
        BracketMethod::Both => {
            let (x, y) = (cuts()?, graft()?);
            let text = if x == y { x.render(&ctx.set) } else { format!("cuts:  {}\ngraft: {}", x.render(&ctx.set), y.render(&ctx.set)) };
            let json = json!({"cuts": output::e_basis(&x.0, &ctx.set), "graft": output::e_basis(&y.0, &ctx.set)});
            Outcome::compare(text, json, x == y, "bracket")
        }
    })
}

fn cm_command(ctx: &Context, quantity: CmQuantity, n: usize) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(Failure::Usage("-n must be at least 1".into()));
    }
    if ctx.set.len() != 1 {
        return Err(Failure::Usage("cm works with a single decoration".into()));
    }
    let with_poly = |poly: cm::VPolynomial, value: Element| {
        let text = format!("{}\n= {}", poly.render_with(|w| w.to_string()), ctx.render(&value));
        Outcome::new(text, json!({"polynomial": output::v_polynomial(&poly), "element": ctx.element_json(&value)}))
    };
    Ok(match quantity {
        CmQuantity::U => {
            let x = cm::u(n, ctx.cap)?;
            Outcome::new(ctx.render(&x), ctx.element_json(&x))
        }
        CmQuantity::V => {
            let x = cm::v(n, ctx.cap)?;
            Outcome::new(ctx.render(&x), ctx.element_json(&x))
        }
        CmQuantity::Z => with_poly(cm::z_poly(n), cm::z(n, ctx.cap)?),
        CmQuantity::W => with_poly(cm::w_poly(n), cm::w(n, ctx.cap)?),
        CmQuantity::Delta => {
            let mut lines = Vec::new();
            let mut items = Vec::new();
            let mut agree = true;
            for family in [Family::U, Family::V] {
                for which in [Coproduct::Standard, Coproduct::Frabetti] {
                    let formula = cm::coproduct_formula(family, which, n);
                    let ok = cm::formula_holds(family, which, n, ctx.cap)?;
                    agree &= ok;
                    let name = format!(
                        "{}({}{n})",
                        if which == Coproduct::Standard { "Δ~" } else { "Δ~Fr" },
                        if family == Family::U { "u" } else { "v" }
                    );
                    let status = if ok { "" } else { "  [MISMATCH]" };
                    lines.push(format!("{name} = {}{status}", formula.render_with(|w| w.to_string())));
                    items.push(json!({"name": name, "formula": output::tensor(&formula, output::cm_word), "matches": ok}));
                }
            }
            Outcome::compare(lines.join("\n"), Value::Array(items), agree, "closed form and brute force")
        }
    })
}

fn shuffle_command(left: &str, right: &str, generators: &[String]) -> Result<Outcome, Failure> {
    let gens: Vec<Generator> = if generators.is_empty() {
        let mut names: Vec<&str> = left.split_whitespace().chain(right.split_whitespace()).filter(|t| *t != "1").collect();
        names.sort_unstable();
        names.dedup();
        names.into_iter().map(|n| Generator::new(n, 1)).collect::<Result<_, _>>()?
    } else {
        generators
            .iter()
            .map(|spec| {
                let (name, grade) = spec.split_once(':').unwrap_or((spec.as_str(), "1"));
                let grade = grade.parse().map_err(|_| Failure::Usage(format!("bad grade in `{spec}`")))?;
                Ok(Generator::new(name, grade)?)
            })
            .collect::<Result<_, Failure>>()?
    };
    let (a, b) = (shuffle::Word::parse(left, &gens)?, shuffle::Word::parse(right, &gens)?);
    let x = shuffle::shuffle(&a, &b);
    Ok(Outcome::new(x.render_with(|w| w.to_string()), output::word_element(&x)))
}

fn series_command(which: SeriesCommand) -> Result<Outcome, Failure> {
    Ok(match which {
        SeriesCommand::Tau { n } => {
            let s = tau_series(n);
            Outcome::new(output::series_text(&s), output::series(&s))
        }
        SeriesCommand::Dims { n, colors } => {
            if n == 0 || colors == 0 {
                return Err(Failure::Usage("-n and --colors must be positive".into()));
            }
            let (r, p) = dims(n, colors);
            Outcome::new(format!("r = {r}\np = {p}"), json!({"n": n, "colors": colors, "r": r.to_string(), "p": p.to_string()}))
        }
        SeriesCommand::Tv { grades, n } => {
            let grades: Vec<Coeff> = grades
                .iter()
                .map(|g| parse_coeff(g).ok_or_else(|| Failure::Usage(format!("bad grade dimension `{g}`"))))
                .collect::<Result<_, _>>()?;
            let t = tv_series(&grades, n)?;
            let h: Vec<Vec<String>> = (0..=n).map(|i| (0..=n).map(|m| format_coeff(&t.h.coeff(i, m))).collect()).collect();
            let rows: Vec<String> = h.iter().enumerate().map(|(i, r)| format!("h[{i}] = {}", r.join(" "))).collect();
            let text = format!("R = {}\n{}", output::series_text(&t.r), rows.join("\n"));
            let consistent = t.h == t.h_closed;
            let json = json!({"r": output::series(&t.r), "p": output::series(&t.p), "h": {"order": n, "coeffs": h}});
            Outcome::compare(text, json, consistent, "series closed form and expansion")
        }
    })
}
