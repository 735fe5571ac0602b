use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use isodist::census::{build_census, verify_deuring_counts, Census, CensusReport, IsogenyClassSummary};
use isodist::classfield::{
    chebotarev_scan, cm_channels, cm_existence, hilbert_entry, representation_test, ExistenceRecord,
};
use isodist::distributions::{compare_with_census, exact_density, DistributionReport};
use isodist::finitefield::PrimeField;
use isodist::quadforms::{class_number, weighted_decomposition, Discriminant};
use isodist::verify::{cm_equivalence_suite, deuring_suite, volcano_suite, PrimeSelection, SuiteReport};
use isodist::volcano::{build_component, to_dot, verify_class, StructureReport, VolcanoComponent};
use isodist::Error;

#[derive(Parser, Debug)]
#[command(name = "isodist", version, about = "Endomorphism rings in ordinary isogeny classes over F_p")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Largest prime for which a census may be built.
    #[arg(long, global = true, default_value_t = isodist::census::DEFAULT_CENSUS_BOUND,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub census_bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discriminants and class numbers.
    #[command(subcommand)]
    Quad(QuadCommand),
    /// Exhaustive isogeny-class census over F_p.
    Census(ClassArgs),
    /// ℓ-isogeny volcanoes in one isogeny class.
    Volcano(VolcanoArgs),
    /// Weighted densities of endomorphism rings.
    Dist(DistArgs),
    /// CM existence per prime and Chebotarev scans.
    #[command(subcommand)]
    Cheb(ChebCommand),
    /// Embedded Hilbert class polynomials.
    #[command(subcommand)]
    Hilbert(HilbertCommand),
    /// Range-wide verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum QuadCommand {
    /// h(D), w(D) and h*(D).
    ClassNumber(DiscArg),
    /// Δ = v² D_K with class data per conductor.
    Decompose(DeltaArg),
}

#[derive(Args, Debug)]
pub struct DiscArg {
    #[arg(short = 'D', long = "disc", allow_hyphen_values = true)]
    pub disc: i64,
}

#[derive(Args, Debug)]
pub struct DeltaArg {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: i64,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
}

#[derive(Args, Debug)]
pub struct VolcanoArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub t: i64,
    #[arg(long)]
    pub ell: u64,
    /// Restrict to the component containing this j-invariant.
    #[arg(long)]
    pub j: Option<u64>,
    /// Also write the graph in DOT format.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["p", "t"])]
    pub delta: Option<i64>,
    #[arg(long, requires = "t")]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true, requires = "p")]
    pub t: Option<i64>,
    #[arg(long)]
    pub ell: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ChebCommand {
    /// All CM-existence channels for one (D, p).
    Test(ChebTestArgs),
    /// Density of primes p ≤ x with CM by O_D.
    Scan(ChebScanArgs),
}

#[derive(Args, Debug)]
pub struct ChebTestArgs {
    #[arg(short = 'D', long = "disc", allow_hyphen_values = true)]
    pub disc: i64,
    #[arg(long)]
    pub p: u64,
}

#[derive(Args, Debug)]
pub struct ChebScanArgs {
    #[arg(short = 'D', long = "disc", allow_hyphen_values = true)]
    pub disc: i64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(2..=100_000_000))]
    pub xmax: u64,
}

#[derive(Subcommand, Debug)]
pub enum HilbertCommand {
    /// Integer coefficients of H_D.
    Show(DiscArg),
    /// Factorisation pattern of H_D mod p.
    Split(ChebTestArgs),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Per-order j-counts against h(D_f) for 5 ≤ p ≤ pmax.
    Deuring(RangeArgs),
    /// Volcano degree and level laws for 5 ≤ p ≤ pmax.
    Volcano(VolcanoRangeArgs),
    /// Agreement of the representation, splitting and census channels.
    CmEquivalence(CmRangeArgs),
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 500)]
    pub pmax: u64,
}

#[derive(Args, Debug)]
pub struct VolcanoRangeArgs {
    #[arg(long, default_value_t = 500)]
    pub pmax: u64,
    /// Isogeny degrees to check (repeatable).
    #[arg(long, default_values_t = [2, 3])]
    pub ell: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct CmRangeArgs {
    #[arg(long, default_value_t = 2000)]
    pub pmax: u64,
    /// Consult the census channel up to this prime.
    #[arg(long, default_value_t = 500)]
    pub census_max: u64,
    /// Only primes split in the quadratic field.
    #[arg(long)]
    pub split_only: bool,
}

pub struct Emitted {
    pub text: String,
    /// Report produced, but it records a verification failure.
    pub failed: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub verification: bool,
    pub partial: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.code(), verification: e.is_verification_failure(), message: e.to_string(), partial: None }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: "E_USAGE", message, verification: false, partial: None }
}

type Run = Result<Emitted, Failure>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn ok(text: String) -> Run {
    Ok(Emitted { text, failed: false })
}

fn only(cli: &Cli, allowed: &[Output]) -> Result<(), Failure> {
    if allowed.contains(&cli.output) {
        Ok(())
    } else {
        Err(usage(format!("--output {:?} is not available for this command", cli.output).to_lowercase()))
    }
}

pub fn run(cli: &Cli) -> Run {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Quad(QuadCommand::ClassNumber(a)) => {
            only(cli, &[Output::Json, Output::Text])?;
            let data = class_number(Discriminant::new(a.disc)?);
            match cli.output {
                Output::Text => ok(format!("D={} h={} w={} h*={}\n", data.disc, data.h, data.w, data.h_star)),
                _ => ok(json(&data)),
            }
        }
        Command::Quad(QuadCommand::Decompose(a)) => {
            only(cli, &[Output::Json, Output::Text])?;
            decompose_report(cli, Discriminant::new(a.delta)?)
        }
        Command::Census(a) => census_cmd(cli, a),
        Command::Volcano(a) => volcano_cmd(cli, a),
        Command::Dist(a) => dist_cmd(cli, a),
        Command::Cheb(ChebCommand::Test(a)) => cheb_test(cli, a),
        Command::Cheb(ChebCommand::Scan(a)) => {
            only(cli, &[Output::Json, Output::Csv, Output::Text])?;
            let report = chebotarev_scan(Discriminant::new(a.disc)?, a.xmax);
            match cli.output {
                Output::Json => ok(json(&report)),
                _ => ok(report.to_csv()),
            }
        }
        Command::Hilbert(HilbertCommand::Show(a)) => {
            only(cli, &[Output::Json, Output::Text])?;
            let entry = hilbert_entry(Discriminant::new(a.disc)?)?;
            match cli.output {
                Output::Text => ok(format!("{}\n", entry.coefficients.join(" "))),
                _ => ok(json(entry)),
            }
        }
        Command::Hilbert(HilbertCommand::Split(a)) => hilbert_split(cli, a),
        Command::Verify(v) => verify_cmd(cli, v),
    }
}

#[derive(Serialize)]
struct DecomposeReport {
    delta: i64,
    v: u64,
    #[serde(rename = "D_K")]
    d_k: i64,
    per_f: Vec<DecomposePerF>,
    kronecker_sum: u64,
    weighted_total: isodist::Exact,
    classical_hurwitz: isodist::Exact,
}

#[derive(Serialize)]
struct DecomposePerF {
    f: u64,
    #[serde(rename = "D_f")]
    d_f: i64,
    h: u64,
    w: u32,
    h_star: isodist::Exact,
}

fn decompose_report(cli: &Cli, delta: Discriminant) -> Run {
    let wd = weighted_decomposition(delta);
    let report = DecomposeReport {
        delta: delta.value(),
        v: wd.decomposition.conductor_bound,
        d_k: wd.decomposition.fundamental.value(),
        per_f: wd
            .per_f
            .iter()
            .map(|(&f, c)| DecomposePerF { f, d_f: c.disc.value(), h: c.h, w: c.w, h_star: c.h_star })
            .collect(),
        kronecker_sum: wd.kronecker_sum,
        weighted_total: wd.total,
        classical_hurwitz: wd.classical_hurwitz,
    };
    if cli.output == Output::Text {
        let mut s = format!("Δ={} = {}²·{}\n", report.delta, report.v, report.d_k);
        for r in &report.per_f {
            s.push_str(&format!("f={} D_f={} h={} w={} h*={}\n", r.f, r.d_f, r.h, r.w, r.h_star));
        }
        return ok(s);
    }
    ok(json(&report))
}

fn classified_census(cli: &Cli, p: u64) -> Result<Census, Failure> {
    let mut census = build_census(PrimeField::new(p)?, cli.census_bound)?;
    census.classify()?;
    Ok(census)
}

#[derive(Serialize)]
struct ClassWithCounts {
    #[serde(flatten)]
    class: CensusReport,
    deuring_holds: bool,
}

#[derive(Serialize)]
struct FullCensus {
    p: u64,
    ordinary_classes: usize,
    supersingular_classes: usize,
    isomorphism_classes: usize,
    classes: Vec<ClassWithCounts>,
}

fn census_cmd(cli: &Cli, a: &ClassArgs) -> Run {
    only(cli, &[Output::Json, Output::Text])?;
    let census = classified_census(cli, a.p)?;
    let summaries: Vec<&IsogenyClassSummary> = match a.t {
        Some(t) => vec![census.class(t)?],
        None => census.classes.values().collect(),
    };
    let mut failed = false;
    let mut classes = Vec::new();
    for s in summaries {
        let holds = match verify_deuring_counts(s) {
            Ok(_) => true,
            Err(e) if e.is_verification_failure() => {
                eprintln!("error[{}]: {e}", e.code());
                false
            }
            Err(e) => return Err(e.into()),
        };
        failed |= !holds;
        classes.push(ClassWithCounts { class: CensusReport::new(s), deuring_holds: holds });
    }
    let text = if cli.output == Output::Text {
        let mut s = String::new();
        for c in &classes {
            s.push_str(&format!("t={} Δ={} v={} D_K={} #j={}", c.class.t, c.class.delta, c.class.v, c.class.d_k, c.class.j_invariants.len()));
            for f in &c.class.per_f {
                s.push_str(&format!(" f={}:{}/{}", f.f, f.j_count, f.h));
            }
            s.push('\n');
        }
        s
    } else if a.t.is_some() {
        json(&classes[0])
    } else {
        json(&FullCensus {
            p: a.p,
            ordinary_classes: census.classes.len(),
            supersingular_classes: census.supersingular.len(),
            isomorphism_classes: census.total_isomorphism_classes(),
            classes,
        })
    };
    Ok(Emitted { text, failed })
}

#[derive(Serialize)]
struct VolcanoReport {
    p: u64,
    t: i64,
    ell: u64,
    depth: u32,
    ring_of: std::collections::BTreeMap<u64, u64>,
    components: Vec<ComponentReport>,
}

#[derive(Serialize)]
struct ComponentReport {
    #[serde(flatten)]
    component: VolcanoComponent,
    structure: StructureReport,
}

fn volcano_cmd(cli: &Cli, a: &VolcanoArgs) -> Run {
    only(cli, &[Output::Json, Output::Dot, Output::Text])?;
    let census = classified_census(cli, a.p)?;
    let summary = census.class(a.t)?;
    let components: Vec<(VolcanoComponent, StructureReport)> = match a.j {
        Some(j) => {
            let c = build_component(j, a.ell, summary)?;
            let r = isodist::volcano::verify_structure(&c, summary);
            vec![(c, r)]
        }
        None => verify_class(summary, a.ell)?,
    };
    let graphs: Vec<VolcanoComponent> = components.iter().map(|(c, _)| c.clone()).collect();
    let dot = to_dot(&graphs, summary);
    if let Some(path) = &a.dot {
        std::fs::write(path, &dot).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    let failed = components.iter().any(|(_, r)| !r.holds());
    let text = match cli.output {
        Output::Dot => dot,
        Output::Text => {
            let mut s = String::new();
            for (c, r) in &components {
                s.push_str(&format!(
                    "component of {} vertices, level sizes {:?}{}{}\n",
                    c.vertices.len(),
                    r.level_sizes,
                    if r.exempt { ", exempt (contains j = 0 or 1728)" } else { "" },
                    if r.holds() { "" } else { ", VIOLATED" }
                ));
                for v in &r.violations {
                    s.push_str(&format!("  {v}\n"));
                }
            }
            s
        }
        _ => json(&VolcanoReport {
            p: a.p,
            t: a.t,
            ell: a.ell,
            depth: components.first().map_or(0, |(c, _)| c.depth),
            ring_of: summary.ring_of.clone(),
            components: components
                .into_iter()
                .map(|(component, structure)| ComponentReport { component, structure })
                .collect(),
        }),
    };
    if failed {
        return Err(Failure {
            code: "E_VOLCANO",
            message: format!("volcano laws violated for p={} t={} ℓ={}", a.p, a.t, a.ell),
            verification: true,
            partial: Some(text),
        });
    }
    ok(text)
}

#[derive(Serialize)]
struct DistWithCensus {
    #[serde(flatten)]
    report: DistributionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<Vec<isodist::distributions::ComparisonRow>>,
}

fn dist_cmd(cli: &Cli, a: &DistArgs) -> Run {
    only(cli, &[Output::Json, Output::Text])?;
    let (delta, census) = match (a.delta, a.p, a.t) {
        (Some(d), _, _) => (Discriminant::new(d)?, None),
        (None, Some(p), Some(t)) => {
            let census = classified_census(cli, p)?;
            let summary = census.class(t)?.clone();
            (summary.delta, Some(summary))
        }
        _ => return Err(usage("dist needs --delta or both --p and --t".into())),
    };
    let report = DistributionReport::new(delta, a.ell);
    let comparison = census.as_ref().map(|s| compare_with_census(&exact_density(delta), s));
    if cli.output == Output::Text {
        let mut s = format!("Δ={} v={} D_K={} total mass {}\n", report.delta, report.v, report.d_k, report.total_mass);
        for f in &report.per_f {
            s.push_str(&format!("f={} exact={} containment={}\n", f.f, f.exact, f.containment));
        }
        if let Some(levels) = &report.levels {
            for (i, p) in &levels.law {
                s.push_str(&format!("P[v_{}(f)={i}]={p}\n", levels.ell));
            }
        }
        for row in comparison.iter().flatten() {
            s.push_str(&format!(
                "f={} weighted={} j-frequency={} aut-weighted={}{}\n",
                row.f,
                row.weighted_density,
                row.j_frequency,
                row.aut_weighted_frequency,
                if row.differs { " (differs)" } else { "" }
            ));
        }
        return ok(s);
    }
    ok(json(&DistWithCensus { report, census: comparison }))
}

fn cheb_test(cli: &Cli, a: &ChebTestArgs) -> Run {
    only(cli, &[Output::Json, Output::Text])?;
    let disc = Discriminant::new(a.disc)?;
    let field = PrimeField::new(a.p)?;
    let census = if a.p <= cli.census_bound { Some(classified_census(cli, a.p)?) } else { None };
    let render = |r: &ExistenceRecord| match cli.output {
        Output::Text => {
            let channels: Vec<String> = r.channels().iter().map(|(n, b)| format!("{n}={b}")).collect();
            format!("D={} p={} {}\n", r.disc, r.p, channels.join(" "))
        }
        _ => json(r),
    };
    match cm_existence(disc, field, census.as_ref()) {
        Ok(r) => ok(render(&r)),
        Err(e) if e.is_verification_failure() => {
            let partial = cm_channels(disc, field, census.as_ref()).ok().map(|r| render(&r));
            Err(Failure { partial, ..e.into() })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct SplitReport {
    disc: i64,
    p: u64,
    degree: usize,
    reduced: Vec<u64>,
    squarefree: bool,
    distinct_roots: usize,
    roots: Vec<u64>,
    splits_completely: bool,
    representation: Option<(u64, u64)>,
}

fn hilbert_split(cli: &Cli, a: &ChebTestArgs) -> Run {
    only(cli, &[Output::Json, Output::Text])?;
    let disc = Discriminant::new(a.disc)?;
    let field = PrimeField::new(a.p)?;
    let entry = hilbert_entry(disc)?;
    let poly = entry.reduce(field);
    let roots = poly.roots();
    let representation = if disc.abs() % a.p == 0 { None } else { representation_test(disc, a.p)? };
    let report = SplitReport {
        disc: disc.value(),
        p: a.p,
        degree: entry.degree(),
        reduced: poly.coefficients().to_vec(),
        squarefree: poly.is_squarefree(),
        distinct_roots: roots.len(),
        splits_completely: poly.is_squarefree() && roots.len() == entry.degree(),
        roots,
        representation,
    };
    if cli.output == Output::Text {
        return ok(format!(
            "H_{} mod {}: {} of {} roots {:?}, squarefree={}\n",
            report.disc, report.p, report.distinct_roots, report.degree, report.roots, report.squarefree
        ));
    }
    ok(json(&report))
}

fn suite_result(cli: &Cli, report: &SuiteReport, json_text: String) -> Run {
    let text = if cli.output == Output::Text {
        let mut s = format!(
            "{}: {} checked, {} exempt, {} failures\n",
            report.name,
            report.checked,
            report.exempt,
            report.failures.len()
        );
        for f in &report.failures {
            s.push_str(&format!("  {f}\n"));
        }
        s
    } else {
        json_text
    };
    if report.passed() {
        return ok(text);
    }
    Err(Failure {
        code: "E_VERIFY",
        message: format!("{} suite: {} failures", report.name, report.failures.len()),
        verification: true,
        partial: Some(text),
    })
}

fn verify_cmd(cli: &Cli, v: &VerifyCommand) -> Run {
    only(cli, &[Output::Json, Output::Text])?;
    match v {
        VerifyCommand::Deuring(a) => {
            check_census_range(cli, a.pmax)?;
            let r = deuring_suite(5..=a.pmax)?;
            suite_result(cli, &r, json(&r))
        }
        VerifyCommand::Volcano(a) => {
            check_census_range(cli, a.pmax)?;
            let r = volcano_suite(5..=a.pmax, &a.ell)?;
            suite_result(cli, &r, json(&r))
        }
        VerifyCommand::CmEquivalence(a) => {
            check_census_range(cli, a.census_max)?;
            let selection = if a.split_only { PrimeSelection::Split } else { PrimeSelection::All };
            let r = cm_equivalence_suite(a.pmax, a.census_max, selection)?;
            suite_result(cli, &r.suite, json(&r))
        }
    }
}

fn check_census_range(cli: &Cli, pmax: u64) -> Result<(), Failure> {
    if pmax > cli.census_bound {
        return Err(Error::CensusBound { p: pmax, bound: cli.census_bound }.into());
    }
    Ok(())
}
