use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use selfmap_core::algebra::{parse_poly, primitive_vector, Vars};
use selfmap_core::comitants::Form;
use selfmap_core::geometry::richelot::{find_rational_point, sigma_map_on, ConicParam};
use selfmap_core::geometry::{
    coble_identity_check, q_construction, richelot_forward, richelot_inverse, Conic, PointPair,
    ProjectivePoint,
};
use selfmap_core::invariants::{
    binary_quartic_i2, binary_quartic_i3, evaluate_invariant, quintic_invariants, ternary_cubic_s,
    ternary_cubic_t, ternary_quartic_i3, InvariantDescriptor,
};
use selfmap_core::moduli_maps::assoc::associated_form;
use selfmap_core::moduli_maps::fiber::sample_fibers;
use selfmap_core::moduli_maps::hammond::{hammond_mod_map, C35Path};
use selfmap_core::moduli_maps::{
    descend_map, hesse_cover, hesse_self_map, quartic_cover, quartic_self_map, RationalMapP1,
};
use selfmap_core::quartic_comitants::{clebsch_covariant, salmon_contravariant};
use selfmap_core::verify::{run_verifications, VerifyConfig, DEFAULT_SEED, DEFAULT_TRIALS};

/// Search box for a rational point when a conic is given without one.
const RATIONAL_POINT_BOUND: i64 = 30;

#[derive(Parser)]
#[command(name = "selfmap", version, about = "Exact covariants, self-maps of moduli lines and conic constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered claims and print a report.
    Verify {
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "101,10007")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Write the structured (JSON) report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print JSON instead of text on stdout.
        #[arg(long)]
        json: bool,
        /// Zero the timings so repeated runs are byte-identical.
        #[arg(long)]
        omit_timings: bool,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Rational maps of the projective line in t0, t1.
    Map {
        #[command(subcommand)]
        op: MapOp,
    },
    /// Fibers of a map reduced modulo a prime, at random source points.
    FiberCount {
        #[arg(long, value_enum)]
        map: FiberMap,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Associated form of a binary quartic or ternary cubic.
    AssocForm {
        /// `2,4` or `3,3`.
        #[arg(long)]
        space: String,
        #[arg(long)]
        form: PathBuf,
    },
    /// Evaluate a named invariant, or print its formula when no form is given.
    Invariant {
        /// `n,d`: 2,4 (I2, I3), 2,5 (I4, I8, I12), 3,3 (S, T), 3,4 (I3).
        #[arg(long)]
        space: String,
        #[arg(long)]
        name: String,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Point-pair constructions on conics.
    Geometry {
        #[command(subcommand)]
        op: GeometryOp,
    },
    /// Comitants of ternary quartics.
    Quartic {
        #[command(subcommand)]
        op: QuarticOp,
    },
}

#[derive(Subcommand)]
enum MapOp {
    /// Degree of a map. A map is `hesse`, `quartic`, `hesse-cover`,
    /// `quartic-cover`, or `NUM : DEN` in t0, t1.
    Degree { map: String },
    /// `outer o inner`.
    Compose { outer: String, inner: String },
    /// The map `R` with `R o cover = composite`.
    Descend {
        cover: String,
        composite: String,
        /// Degree of `R`; defaults to deg(composite) / deg(cover).
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FiberMap {
    Hesse,
    Quartic,
    Hammond,
}

#[derive(Subcommand)]
enum GeometryOp {
    /// The six q-points of a conic `a,b,c,d,e,f`, i.e.
    /// `a x^2 + b y^2 + c z^2 + 2d xy + 2e xz + 2f yz`.
    QPoints {
        #[arg(long, allow_hyphen_values = true)]
        conic: String,
    },
    /// The bracket identity and the eight minors, symbolically.
    CobleCheck,
    /// Richelot construction on x z - y^2 parametrized by [s^2, s t, t^2].
    Richelot {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// The q-point map on three pairs of a conic.
    Sigma {
        /// Defaults to x z - y^2. Other conics are parametrized by projection
        /// from a small rational point, found by search.
        #[arg(long, allow_hyphen_values = true)]
        conic: Option<String>,
        #[arg(long)]
        pairs: PathBuf,
    },
}

#[derive(Subcommand)]
enum QuarticOp {
    Clebsch {
        #[arg(long)]
        form: PathBuf,
    },
    Salmon {
        #[arg(long)]
        form: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Verify { only, seed, primes, trials, report, json, omit_timings, list } => {
            if list {
                for c in selfmap_core::verify::registry() {
                    println!("{}\t{}", c.id, c.description);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = VerifyConfig { only, seed, primes, trials };
            let mut rep = run_verifications(&cfg)?;
            if omit_timings {
                rep = rep.without_timings();
            }
            if let Some(path) = report {
                fs::write(&path, rep.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.render_text(!omit_timings));
            }
            Ok(if rep.has_failures() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::Map { op } => {
            map_command(op)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FiberCount { map, prime, samples, seed } => {
            let m = match map {
                FiberMap::Hesse => hesse_self_map()?.reduce_mod(prime)?,
                FiberMap::Quartic => quartic_self_map()?.reduce_mod(prime)?,
                FiberMap::Hammond => hammond_mod_map(prime, C35Path::Jacobian)?,
            };
            print!("{}", sample_fibers(&m, samples, seed).render());
            Ok(ExitCode::SUCCESS)
        }
        Command::AssocForm { space, form } => {
            let (n, d) = parse_space(&space)?;
            if (n, d) != (2, 4) && (n, d) != (3, 3) {
                bail!("assoc-form supports --space 2,4 and 3,3");
            }
            let f = read_form(&form, n, d)?;
            let r = associated_form(&f)?;
            println!("{}", r.form.poly());
            println!("scale: {}", r.scale);
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant { space, name, form } => {
            let (n, d) = parse_space(&space)?;
            let inv = named_invariant(n, d, &name)?;
            match form {
                Some(path) => {
                    let f = read_form(&path, n, d)?;
                    println!("{}", evaluate_invariant(&inv, &f)?);
                }
                None => println!("{}", inv.formula),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Geometry { op } => {
            geometry_command(op)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Quartic { op } => {
            let (path, clebsch) = match op {
                QuarticOp::Clebsch { form } => (form, true),
                QuarticOp::Salmon { form } => (form, false),
            };
            let f = read_form(&path, 3, 4)?;
            let out = if clebsch { clebsch_covariant(&f)? } else { salmon_contravariant(&f)? };
            println!("{}", out.poly());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_space(s: &str) -> Result<(usize, u32)> {
    let (n, d) = s.split_once(',').ok_or_else(|| anyhow!("space must be n,d"))?;
    Ok((n.trim().parse()?, d.trim().parse()?))
}

/// Reads a form in `x, y(, z)`, falling back to upper-case names.
fn read_form(path: &Path, n: usize, d: u32) -> Result<Form> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let text = text.trim();
    let lower: &[&str] = if n == 2 { &["x", "y"] } else { &["x", "y", "z"] };
    let upper: &[&str] = if n == 2 { &["X", "Y"] } else { &["X", "Y", "Z"] };
    let first = parse_poly(text, &Vars::new(lower)?);
    let (poly, names) = match first {
        Ok(p) => (p, lower),
        Err(e) => match parse_poly(text, &Vars::new(upper)?) {
            Ok(p) => (p, upper),
            Err(_) => return Err(e).with_context(|| format!("parsing {}", path.display())),
        },
    };
    let f = Form::named(poly, names)?;
    if !f.poly().is_zero() && f.degree() != d {
        bail!("expected a form of degree {d}, got degree {}", f.degree());
    }
    Ok(Form::new(f.into_poly(), (0..n).collect(), d)?)
}

fn named_invariant(n: usize, d: u32, name: &str) -> Result<InvariantDescriptor> {
    let inv = match (n, d, name) {
        (3, 3, "S") => ternary_cubic_s()?,
        (3, 3, "T") => ternary_cubic_t()?,
        (2, 4, "I2") => binary_quartic_i2()?,
        (2, 4, "I3") => binary_quartic_i3()?,
        (3, 4, "I3") => ternary_quartic_i3()?,
        (2, 5, "I4") => &quintic_invariants()?.i4,
        (2, 5, "I8") => &quintic_invariants()?.i8,
        (2, 5, "I12") => &quintic_invariants()?.i12,
        _ => bail!("no invariant named {name} on V({n},{d})"),
    };
    Ok(inv.clone())
}

fn read_map(spec: &str) -> Result<RationalMapP1> {
    Ok(match spec.trim() {
        "hesse" => hesse_self_map()?,
        "quartic" => quartic_self_map()?,
        "hesse-cover" => hesse_cover()?,
        "quartic-cover" => quartic_cover()?,
        other => {
            let (num, den) = other
                .split_once(':')
                .ok_or_else(|| anyhow!("a map is a name or `NUM : DEN`, got {other:?}"))?;
            RationalMapP1::parse(num.trim(), den.trim())?
        }
    })
}

fn map_command(op: MapOp) -> Result<()> {
    match op {
        MapOp::Degree { map } => {
            let m = read_map(&map)?;
            println!("{}", m.degree());
        }
        MapOp::Compose { outer, inner } => {
            let m = RationalMapP1::compose(&read_map(&outer)?, &read_map(&inner)?)?;
            println!("{} : {}", m.num(), m.den());
            println!("degree: {}", m.degree());
        }
        MapOp::Descend { cover, composite, degree } => {
            let c = read_map(&cover)?;
            let comp = read_map(&composite)?;
            let d = match degree {
                Some(d) => d,
                None => {
                    if comp.degree() % c.degree() != 0 {
                        bail!("deg(composite) = {} is not a multiple of deg(cover) = {}", comp.degree(), c.degree());
                    }
                    comp.degree() / c.degree()
                }
            };
            let r = descend_map(&c, &comp, d)?;
            println!("{} : {}", r.num(), r.den());
            println!("degree: {}", r.degree());
        }
    }
    Ok(())
}

fn read_pairs(path: &Path) -> Result<[PointPair; 3]> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pairs: Vec<PointPair> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(PointPair::parse)
        .collect::<Result<_, _>>()?;
    pairs.try_into().map_err(|v: Vec<PointPair>| anyhow!("expected three pairs, found {}", v.len()))
}

/// Integer coordinates with gcd 1.
fn show_point(p: &ProjectivePoint) -> String {
    let v: Vec<String> = primitive_vector(p.coords()).iter().map(|c| c.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn print_pairs(pairs: &[PointPair]) {
    for p in pairs {
        println!("{}", p.normalized());
    }
}

fn geometry_command(op: GeometryOp) -> Result<()> {
    match op {
        GeometryOp::QPoints { conic } => {
            let c = Conic::parse_coeffs(&conic)?;
            for (i, q) in q_construction(&c)?.iter().enumerate() {
                println!("q{} = {}", i + 1, show_point(q));
            }
        }
        GeometryOp::CobleCheck => {
            let c = coble_identity_check()?;
            println!("identity: {}", c.identity);
            for (name, value, ok) in &c.minors {
                println!("{name} = {value} {}", if *ok { "ok" } else { "MISMATCH" });
            }
            println!("with extra factor (123): {}", c.extra_factor_variant);
            if !c.all_hold() {
                bail!("bracket identity check failed");
            }
        }
        GeometryOp::Richelot { pairs, inverse } => {
            let p = read_pairs(&pairs)?;
            let out = if inverse { richelot_inverse(&p)? } else { richelot_forward(&p)? };
            print_pairs(&out);
        }
        GeometryOp::Sigma { conic, pairs } => {
            let param = match conic {
                None => ConicParam::standard(),
                Some(text) => {
                    let c = Conic::parse_coeffs(&text)?;
                    let pt = find_rational_point(&c, RATIONAL_POINT_BOUND)
                        .ok_or_else(|| anyhow!("no rational point with coordinates up to {RATIONAL_POINT_BOUND}"))?;
                    eprintln!("parametrizing by projection from {pt}");
                    ConicParam::from_point(&c, &pt)?
                }
            };
            let r = sigma_map_on(&param, &read_pairs(&pairs)?)?;
            print_pairs(&r.pairs);
            println!("conic: {}", r.conic);
            for (i, q) in r.points.iter().enumerate() {
                println!("q{} = {}", i + 1, show_point(q));
            }
        }
    }
    Ok(())
}

