//! charvar: exact characteristic varieties, singular loci, and
//! holonomicity verdicts for hypergeometric systems and binomial modules.
//!
//! Input files are JSON system specifications (see the repository README).
//! Exit codes: 0 success, 1 internal or input error, 2 unsupported input
//! (e.g. characters needing roots of unity), 3 verification mismatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;

use charvar_core::binom::BinomialModuleSpec;
use charvar_core::error::Error;
use charvar_core::exact::{parse_rat, PointedMatrix};
use charvar_core::geom::l_umbrella;
use charvar_core::hyper::{
    a_discriminant, char_variety_gkz, euler_operators, sing_locus_gkz, toric_ideal,
    torus_component_witness, TruncatedSystem,
};
use charvar_core::io::{parse_system, SystemSpec};
use charvar_core::poly::{divisorial_part, parse_poly, Poly, PolyIdeal, PolyRing};
use charvar_core::report::{self, CharVarReport, SingLocusReport, WeightReport};
use charvar_core::weyl::{
    gr_ideal, has_finite_rank, singular_locus, ProjectiveWeight, WeylElement, WeylIdeal,
};
use charvar_core::Rat;

#[derive(Parser)]
#[command(
    name = "charvar",
    about = "Exact singular loci and L-characteristic varieties of hypergeometric and binomial systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON system specification file
    input: PathBuf,
    /// Projective weight "Lx;Ld" (comma-separated halves), overriding the
    /// file's L_x/L_d; defaults to the order filtration
    #[arg(long)]
    weight: Option<String>,
    /// Parameter vector, comma-separated rationals, overriding the file
    #[arg(long)]
    beta: Option<String>,
    /// Emit the report as JSON on stdout
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Faces and facets of the L-umbrella of A
    Umbrella(CommonArgs),
    /// Generators of the toric ideal of A
    Toric(CommonArgs),
    /// Components of the L-characteristic variety (closed form)
    Charvar {
        #[command(flatten)]
        common: CommonArgs,
        /// Cross-check against the direct Weyl-algebra gr computation
        #[arg(long)]
        verify: bool,
    },
    /// The defining polynomial of the divisorial singular locus
    Singlocus {
        #[command(flatten)]
        common: CommonArgs,
        /// Use the discriminant product instead of the direct Weyl route
        #[arg(long)]
        gkz: bool,
        /// Run both routes and require agreement
        #[arg(long)]
        verify: bool,
    },
    /// The A-discriminant of the matrix
    Discriminant(CommonArgs),
    /// Holonomicity of the binomial module (combinatorial route)
    Holonomic {
        #[command(flatten)]
        common: CommonArgs,
        /// Cross-check against the singular-locus criterion
        #[arg(long)]
        verify: bool,
    },
    /// Finite-rank test via the properness of the singular locus
    Rankfinite(CommonArgs),
    /// gr^L of the assembled Weyl ideal (direct engine)
    Grweyl(CommonArgs),
    /// Oversized torus component of a truncated system (needs breve_A)
    Witness(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Unsupported(_) | Error::NonBinomial(_) => ExitCode::from(2),
                Error::VerificationMismatch(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<SystemSpec, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_system(&text)
}

fn parse_weight_flag(s: &str, n: usize) -> Result<ProjectiveWeight, Error> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let parts: Vec<&str> = cleaned.split(';').collect();
    let (lx, ld): (Vec<Rat>, Vec<Rat>) = if parts.len() == 2 {
        let lx = parts[0]
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        let ld = parts[1]
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        (lx, ld)
    } else {
        let all: Vec<Rat> = cleaned
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if all.len() != 2 * n {
            return Err(Error::Parse(format!(
                "--weight needs 2n = {} entries or an \"Lx;Ld\" pair, got {}",
                2 * n,
                all.len()
            )));
        }
        (all[..n].to_vec(), all[n..].to_vec())
    };
    ProjectiveWeight::new(lx, ld)
}

fn weight_of(common: &CommonArgs, spec: &SystemSpec, n: usize) -> Result<ProjectiveWeight, Error> {
    if let Some(w) = &common.weight {
        return parse_weight_flag(w, n);
    }
    match (&spec.lx, &spec.ld) {
        (Some(lx), Some(ld)) => ProjectiveWeight::new(lx.clone(), ld.clone()),
        (None, None) => Ok(ProjectiveWeight::order_filtration(n)),
        _ => Err(Error::Parse(
            "a weight needs both L_x and L_d in the input file".into(),
        )),
    }
}

fn beta_of(common: &CommonArgs, spec: &SystemSpec, d: usize) -> Result<Vec<Rat>, Error> {
    let beta = if let Some(b) = &common.beta {
        b.split(',')
            .map(|s| parse_rat(s.trim()))
            .collect::<Result<Vec<_>, _>>()?
    } else if let Some(b) = &spec.beta {
        b.clone()
    } else {
        vec![Rat::zero(); d]
    };
    if beta.len() != d {
        return Err(Error::Parse(format!(
            "beta needs {d} entries, got {}",
            beta.len()
        )));
    }
    Ok(beta)
}

fn pointed(spec: &SystemSpec) -> Result<PointedMatrix, Error> {
    PointedMatrix::new(spec.a.clone())
}

/// The binomial generators of the system: the explicit "I" strings, the
/// toric ideal of "breve_A" (a truncated system), or the toric ideal of A.
fn binomial_generators(spec: &SystemSpec, n: usize) -> Result<Vec<Poly>, Error> {
    let ring = PolyRing::ds(n);
    if let Some(strings) = &spec.binomial_gens {
        return strings
            .iter()
            .map(|s| parse_poly(&ring, s))
            .collect::<Result<Vec<_>, _>>();
    }
    if let Some(breve) = &spec.breve_a {
        if breve.cols() != n {
            return Err(Error::Parse(
                "breve_A must have the same number of columns as A".into(),
            ));
        }
        return Ok(toric_ideal(breve).gens().to_vec());
    }
    Ok(toric_ideal(&spec.a).gens().to_vec())
}

fn binomial_module(
    spec: &SystemSpec,
    common: &CommonArgs,
) -> Result<BinomialModuleSpec, Error> {
    let a = pointed(spec)?;
    let beta = beta_of(common, spec, a.rows())?;
    let gens = binomial_generators(spec, a.cols())?;
    BinomialModuleSpec::new(a, gens, beta)
}

fn assembled_ideal(spec: &SystemSpec, common: &CommonArgs) -> Result<(WeylIdeal, usize), Error> {
    let a = pointed(spec)?;
    let beta = beta_of(common, spec, a.rows())?;
    let n = a.cols();
    let mut gens: Vec<WeylElement> = binomial_generators(spec, n)?
        .iter()
        .map(WeylElement::from_d_poly)
        .collect();
    gens.extend(euler_operators(a.matrix(), &beta)?);
    Ok((WeylIdeal::new(n, gens), n))
}

fn emit<T: serde::Serialize>(json: bool, report: &T, human: impl FnOnce()) {
    if json {
        println!(
            "{}",
            serde_json::to_string(report).expect("reports serialize")
        );
    } else {
        human();
    }
}

fn face_string(face: &[usize]) -> String {
    if face.is_empty() {
        "{}".into()
    } else {
        format!(
            "{{{}}}",
            face.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Umbrella(common) => {
            let spec = load(&common.input)?;
            let a = pointed(&spec)?;
            let l = weight_of(&common, &spec, a.cols())?;
            let u = l_umbrella(&a, &l)?;
            let rep = report::umbrella_report(&u, &l);
            emit(common.json, &rep, || {
                println!("L-umbrella with {} faces:", rep.faces.len());
                for (f, &is_facet) in rep.faces.iter().zip(&rep.facet_flags) {
                    println!(
                        "  {}{}",
                        face_string(f),
                        if is_facet { "  (facet)" } else { "" }
                    );
                }
                println!(
                    "chart: h = ({}), epsilon = {}",
                    rep.chart.h.join(", "),
                    rep.chart.epsilon
                );
            });
        }
        Cmd::Toric(common) => {
            let spec = load(&common.input)?;
            let i = toric_ideal(&spec.a);
            let rep = report::ToricReport {
                generators: i
                    .canonical_gens()
                    .iter()
                    .map(|g| g.to_string_canonical())
                    .collect(),
            };
            emit(common.json, &rep, || {
                if rep.generators.is_empty() {
                    println!("toric ideal: 0");
                } else {
                    println!("toric ideal generators:");
                    for g in &rep.generators {
                        println!("  {g}");
                    }
                }
            });
        }
        Cmd::Charvar { common, verify } => {
            let spec = load(&common.input)?;
            let a = pointed(&spec)?;
            let n = a.cols();
            let l = weight_of(&common, &spec, n)?;
            let components: Vec<report::ComponentReport> = if spec.binomial_gens.is_some() {
                let s = binomial_module(&spec, &common)?;
                s.char_variety(&l)?
                    .iter()
                    .map(report::binomial_component_report)
                    .collect()
            } else {
                char_variety_gkz(&a, &l)?
                    .iter()
                    .map(report::conormal_component_report)
                    .collect()
            };
            let holonomic = components.iter().all(|c| c.dimension == n as i64);
            let verified = if verify {
                verify_charvar(&spec, &common, &l)?;
                Some(true)
            } else {
                None
            };
            let rep = CharVarReport {
                weight: WeightReport::of(&l),
                ambient_dimension: 2 * n,
                holonomic,
                components,
                verified,
            };
            emit(common.json, &rep, || {
                println!(
                    "L-characteristic variety: {} component(s), holonomic: {}",
                    rep.components.len(),
                    rep.holonomic
                );
                for c in &rep.components {
                    println!(
                        "  face {} dim {}{}{}",
                        face_string(&c.face),
                        c.dimension,
                        if c.meets_torus { ", meets torus" } else { "" },
                        match &c.cell {
                            Some(cell) => format!(", cell {}", face_string(cell)),
                            None => String::new(),
                        }
                    );
                    for g in &c.generators {
                        println!("    {g}");
                    }
                }
                if let Some(v) = rep.verified {
                    println!("verified against the Weyl engine: {v}");
                }
            });
        }
        Cmd::Singlocus { common, gkz, verify } => {
            let spec = load(&common.input)?;
            let closed_form = |spec: &SystemSpec, common: &CommonArgs| -> Result<Poly, Error> {
                if spec.binomial_gens.is_some() {
                    binomial_module(spec, common)?.sing_locus()
                } else {
                    sing_locus_gkz(&pointed(spec)?)
                }
            };
            let direct = |spec: &SystemSpec, common: &CommonArgs| -> Result<Poly, Error> {
                let (ideal, n) = assembled_ideal(spec, common)?;
                let sing = singular_locus(&ideal);
                if sing.is_zero_ideal() {
                    return Ok(Poly::zero(&PolyRing::xs(n)));
                }
                divisorial_part(&sing)
            };
            let poly = if gkz {
                closed_form(&spec, &common)?
            } else {
                direct(&spec, &common)?
            };
            let verified = if verify {
                let a = closed_form(&spec, &common)?;
                let b = direct(&spec, &common)?;
                let same = if a.is_zero() || b.is_zero() {
                    a.is_zero() && b.is_zero()
                } else {
                    a.primitive() == b.primitive()
                };
                if !same {
                    return Err(Error::VerificationMismatch(format!(
                        "closed-form locus {} differs from the direct route {}",
                        a.to_string_canonical(),
                        b.to_string_canonical()
                    )));
                }
                Some(true)
            } else {
                None
            };
            let rep = SingLocusReport {
                route: if gkz { "discriminants".into() } else { "weyl".into() },
                polynomial: poly.to_string_canonical(),
                verified,
            };
            emit(common.json, &rep, || {
                println!("divisorial singular locus: {}", rep.polynomial);
                if rep.polynomial == "0" {
                    println!("(the singular locus is the whole space)");
                }
                if let Some(v) = rep.verified {
                    println!("routes agree: {v}");
                }
            });
        }
        Cmd::Discriminant(common) => {
            let spec = load(&common.input)?;
            let d = a_discriminant(&spec.a);
            let rep = report::discriminant_report(&d);
            emit(common.json, &rep, || {
                println!("A-discriminant: {}", rep.polynomial);
            });
        }
        Cmd::Holonomic { common, verify } => {
            let spec = load(&common.input)?;
            let s = binomial_module(&spec, &common)?;
            let r = s.holonomy_report()?;
            let verified = if verify {
                let finite = has_finite_rank(&s.weyl_ideal());
                if finite != r.holonomic {
                    return Err(Error::VerificationMismatch(format!(
                        "combinatorial verdict {} but finite-rank check gives {}",
                        r.holonomic, finite
                    )));
                }
                Some(true)
            } else {
                None
            };
            let rep = report::holonomic_report(&r, s.beta(), verified);
            emit(common.json, &rep, || {
                println!("holonomic: {}", rep.holonomic);
                println!("components:");
                for c in &rep.components {
                    println!(
                        "  cell {} [{}]{}",
                        face_string(&c.cell),
                        c.class,
                        if c.multiple_characters {
                            " (multiple characters; arrangement uses the cellular quasidegrees)"
                        } else {
                            ""
                        }
                    );
                    for g in &c.generators {
                        println!("    {g}");
                    }
                }
                if !rep.andean_arrangement.is_empty() {
                    println!("Andean arrangement pieces:");
                    for p in &rep.andean_arrangement {
                        println!(
                            "  offset ({}) + span{{{}}}",
                            p.offset.join(", "),
                            p.directions
                                .iter()
                                .map(|d| format!("({})", d.join(", ")))
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                    }
                }
                if let Some(v) = rep.verified {
                    println!("verified against the singular-locus criterion: {v}");
                }
            });
        }
        Cmd::Rankfinite(common) => {
            let spec = load(&common.input)?;
            let (ideal, _) = assembled_ideal(&spec, &common)?;
            let sing = singular_locus(&ideal);
            let rep = report::RankReport {
                finite_rank: !sing.is_zero_ideal(),
                singular_locus_generators: sing
                    .canonical_gens()
                    .iter()
                    .map(|g| g.to_string_canonical())
                    .collect(),
            };
            emit(common.json, &rep, || {
                println!("finite rank: {}", rep.finite_rank);
            });
        }
        Cmd::Grweyl(common) => {
            let spec = load(&common.input)?;
            let (ideal, n) = assembled_ideal(&spec, &common)?;
            let l = weight_of(&common, &spec, n)?;
            let gr = gr_ideal(&ideal, &l);
            let dim = gr.dimension();
            let rep = report::GrReport {
                weight: WeightReport::of(&l),
                generators: gr
                    .canonical_gens()
                    .iter()
                    .map(|g| g.to_string_canonical())
                    .collect(),
                dimension: dim,
                l_holonomic: dim == -1 || dim == n as i64,
            };
            emit(common.json, &rep, || {
                println!("gr^L generators:");
                for g in &rep.generators {
                    println!("  {g}");
                }
                println!(
                    "dimension {} in {} variables; L-holonomic: {}",
                    rep.dimension,
                    2 * n,
                    rep.l_holonomic
                );
            });
        }
        Cmd::Witness(common) => {
            let spec = load(&common.input)?;
            let breve = spec
                .breve_a
                .clone()
                .ok_or_else(|| Error::Parse("witness needs \"breve_A\"".into()))?;
            let d = spec.a.rows();
            let beta = beta_of(&common, &spec, d)?;
            let t = TruncatedSystem::new(breve, d, beta)?;
            let l = weight_of(&common, &spec, t.n())?;
            let w = torus_component_witness(&t, &l)?;
            let rep = report::witness_report(&w);
            emit(common.json, &rep, || {
                println!(
                    "torus component witness at facet {}: dimension {}, proper: {}",
                    face_string(&rep.facet),
                    rep.dimension,
                    rep.proper
                );
                for g in &rep.generators {
                    println!("  {g}");
                }
            });
        }
    }
    Ok(())
}

/// --verify for charvar: two-sided radical membership between the direct
/// gr^L and the closed-form components.
fn verify_charvar(
    spec: &SystemSpec,
    common: &CommonArgs,
    l: &ProjectiveWeight,
) -> Result<(), Error> {
    let (ideal, _) = assembled_ideal(spec, common)?;
    let gr = gr_ideal(&ideal, l);
    let component_ideals: Vec<PolyIdeal> = if spec.binomial_gens.is_some() {
        let s = binomial_module(spec, common)?;
        s.char_variety(l)?.into_iter().map(|c| c.ideal).collect()
    } else {
        let a = pointed(spec)?;
        char_variety_gkz(&a, l)?.into_iter().map(|c| c.ideal).collect()
    };
    if component_ideals.is_empty() {
        if gr.is_unit() {
            return Ok(());
        }
        return Err(Error::VerificationMismatch(
            "no components but gr^L is proper".into(),
        ));
    }
    for c in &component_ideals {
        for g in gr.gens() {
            if !c.radical_contains(g) {
                return Err(Error::VerificationMismatch(format!(
                    "gr^L generator {} does not vanish on a closed-form component",
                    g.to_string_canonical()
                )));
            }
        }
    }
    let mut inter = component_ideals[0].clone();
    for c in &component_ideals[1..] {
        inter = inter.intersect(c);
    }
    for g in inter.gens() {
        if !gr.radical_contains(g) {
            return Err(Error::VerificationMismatch(format!(
                "component function {} does not vanish on Char^L",
                g.to_string_canonical()
            )));
        }
    }
    Ok(())
}
