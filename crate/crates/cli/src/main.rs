//! `ffindex`: exact index decompositions, character sums, bound
//! verification sweeps, Artin-Schreier counts and cyclic-code weights over
//! small finite fields.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ffindex_cli::jsonout::{
    cv_json_with_abs, elem_json, field_json, index_form_json, report_json,
};
use ffindex_cli::parse::{parse_field, parse_poly, parse_u64_list, prime_power};
use ffindex_cli::sweep::{run_campaign, CampaignConfig, FamilySpec};
use ffindex_core::artin::ASInstance;
use ffindex_core::bounds::{
    binomial_report, cyclo_report, index_report, weil_report, CycloVariant, HoldsStatus,
};
use ffindex_core::codes::CodeSpec;
use ffindex_core::index::{index_form, mapping_from_index};
use ffindex_core::charsum::{char_sum_full, char_sum_nonzero};
use ffindex_core::{FieldElement, FieldSpec};

#[derive(Parser)]
#[command(name = "ffindex", version, about = "index decompositions and character-sum bounds over small finite fields")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldPoly {
    /// Field literal, e.g. q=7, q=3^2, q=3^2;mod=2,1,1
    #[arg(long)]
    field: String,
    /// Polynomial, e.g. "x^5+x^3+x", "5*x^4+2", "[1,2]*x^3"
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a field: canonical modulus, primitive element
    Field {
        #[arg(long)]
        field: String,
    },
    /// Print the unique decomposition a*x^r*f(x^s) + b
    Index {
        #[command(flatten)]
        fp: FieldPoly,
    },
    /// Exact character sum (vector in Z[zeta_p] and magnitude)
    Charsum {
        #[command(flatten)]
        fp: FieldPoly,
        /// Sum over nonzero elements only
        #[arg(long)]
        nonzero: bool,
    },
    /// Bound reports for one polynomial, or flag-driven sweeps
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// The binomial bound for x^n + a x^r, with both root tests
    Binomial {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Coefficient a (integer, or coordinates like [1,2])
        #[arg(long)]
        a: String,
    },
    /// Count points on y^q - y = g(x) over F_{q^m}, two ways
    Ascurve {
        /// Base field size q (a prime power)
        #[arg(long)]
        q: u64,
        /// Extension degree m
        #[arg(long)]
        m: u32,
        /// Polynomial over F_{q^m}
        #[arg(long)]
        poly: String,
        /// Also report the index-based interval
        #[arg(long)]
        bound: bool,
    },
    /// Trace-represented cyclic code: weights, windows, minimum weight
    Code {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Code length N with N | q^m - 1
        #[arg(long = "N")]
        n_len: u64,
        /// Check set J, comma-separated
        #[arg(long = "J")]
        check_set: String,
        /// Exhaustive (or sampled) minimum-weight search
        #[arg(long)]
        min_weight: bool,
        /// Verify the weight windows for every enumerated codeword
        #[arg(long)]
        verify_bounds: bool,
        /// Enumeration budget for the search
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-codeword CSV here
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a campaign from a JSON config file
    Sweep {
        #[arg(long)]
        config: String,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Weil, index and cyclotomic-variant reports for one polynomial
    Report {
        #[command(flatten)]
        fp: FieldPoly,
    },
    /// Flag-driven campaign (equivalent to a config-file sweep)
    Sweep {
        /// Comma-separated field sizes, e.g. 5,7,9,11
        #[arg(long)]
        fields: String,
        /// binomials | monomials | trinomials | random
        #[arg(long)]
        family: String,
        /// Bounds to verify
        #[arg(long, default_value = "weil,index,binomial")]
        bounds: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family size for random families
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
        /// Output CSV path
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Field { field } => {
            let spec = parse_field(&field)?;
            if cli.json {
                println!("{}", field_json(&spec));
            } else {
                println!("F_{} = F_{}^{}", spec.q(), spec.p(), spec.m());
                println!("modulus (ascending): {:?}", spec.modulus());
                println!("gamma = {}", spec.elem_to_string(spec.gamma()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Index { fp } => {
            let spec = parse_field(&fp.field)?;
            let g = parse_poly(&spec, &fp.poly)?;
            let form = index_form(&spec, &g).map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!("{}", index_form_json(&spec, &form));
            } else {
                println!(
                    "g = {} * x^{} * f(x^{}) + {} with f = {}",
                    spec.elem_to_string(form.a),
                    form.r,
                    form.s,
                    spec.elem_to_string(form.b),
                    form.f.to_display(&spec),
                );
                println!("index ell = {}, n0 = {}", form.ell, form.n0);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Charsum { fp, nonzero } => {
            let spec = parse_field(&fp.field)?;
            let g = parse_poly(&spec, &fp.poly)?;
            let sum = if nonzero { char_sum_nonzero(&spec, &g) } else { char_sum_full(&spec, &g) };
            if cli.json {
                println!("{}", cv_json_with_abs(&sum));
            } else {
                let (abs, err) = sum.abs();
                println!("coeffs = {:?}", sum.coeffs());
                println!("|sum| = {abs} (error bound {err:.3e})");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(BoundsCmd::Report { fp }) => {
            let spec = parse_field(&fp.field)?;
            let g = parse_poly(&spec, &fp.poly)?;
            let weil = weil_report(&spec, &g).map_err(|e| anyhow!("{e}"))?;
            let index = index_report(&spec, &g).map_err(|e| anyhow!("{e}"))?;
            let form = index_form(&spec, &g).map_err(|e| anyhow!("{e}"))?;
            let map = mapping_from_index(&spec, &form);
            let monomial = cyclo_report(&spec, &map, CycloVariant::Monomial)
                .map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "q": spec.q(),
                        "poly": g.to_display(&spec),
                        "form": index_form_json(&spec, &form),
                        "weil": report_json(&weil),
                        "index": report_json(&index),
                        "cyclo_monomial": report_json(&monomial),
                    })
                );
            } else {
                for rep in [&weil, &index, &monomial] {
                    println!(
                        "{:<16} lhs = {:<22} rhs = {:<22} {} {}",
                        rep.kind.as_str(),
                        rep.lhs,
                        rep.rhs_value,
                        if rep.applicable { "" } else { "[inapplicable]" },
                        rep.holds.as_str(),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(BoundsCmd::Sweep {
            fields,
            family,
            bounds,
            seed,
            count,
            max_degree,
            out,
        }) => {
            let family = match family.as_str() {
                "binomials" => FamilySpec::Binomials,
                "monomials" => FamilySpec::Monomials,
                "trinomials" => FamilySpec::Trinomials { max_degree },
                "random" => FamilySpec::Random { count, max_degree },
                other => bail!("unknown family {other:?}"),
            };
            let config = CampaignConfig {
                fields: parse_u64_list(&fields)?
                    .into_iter()
                    .map(|q| format!("q={q}"))
                    .collect(),
                family,
                bounds: bounds.split(',').map(|s| s.trim().to_string()).collect(),
                seed,
                out,
                threads: Some(cli.threads),
            };
            finish_campaign(&config, cli.json)
        }
        Command::Binomial { field, n, r, a } => {
            let spec = parse_field(&field)?;
            let a = parse_coeff(&spec, &a)?;
            let rep = binomial_report(&spec, n, r, a).map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "q": spec.q(),
                        "n": n,
                        "r": r,
                        "a": elem_json(&spec, a),
                        "ell": rep.ell,
                        "t": rep.t,
                        "u": rep.u,
                        "k": rep.k,
                        "n0": rep.n0,
                        "root_exists": rep.root_exists,
                        "root_by_search": rep.root_by_search,
                        "root_by_dlog": rep.root_by_dlog,
                        "report": report_json(&rep.report),
                    })
                );
            } else {
                println!(
                    "ell = {}, t = {}, u = {}, k = dlog(-a) = {}, n0 = {}",
                    rep.ell, rep.t, rep.u, rep.k, rep.n0
                );
                println!(
                    "root among ell-th roots of unity: {} (search) / {} (dlog test)",
                    rep.root_by_search, rep.root_by_dlog
                );
                println!(
                    "lhs = {} rhs = {} -> {}",
                    rep.report.lhs,
                    rep.report.rhs_value,
                    rep.report.holds.as_str()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ascurve { q, m, poly, bound } => {
            let (p, e) = prime_power(q)?;
            let (base, ext) = ASInstance::fields(p, e, m).map_err(|err| anyhow!("{err}"))?;
            let g = parse_poly(&ext, &poly)?;
            let inst = ASInstance::new(base, ext, g).map_err(|err| anyhow!("{err}"))?;
            let n_direct = inst.count_direct();
            let n_charsum = inst.count_charsum().map_err(|err| anyhow!("{err}"))?;
            let mut payload = json!({
                "N": n_direct,
                "N_direct": n_direct,
                "N_charsum": n_charsum,
            });
            if bound {
                let rep = inst.report().map_err(|err| anyhow!("{err}"))?;
                payload
                    .as_object_mut()
                    .unwrap()
                    .insert("bound_report".into(), report_json(&rep));
            }
            if cli.json {
                println!("{payload}");
            } else {
                println!("N = {n_direct} (direct) / {n_charsum} (character sums)");
                if bound {
                    let rep = inst.report().map_err(|err| anyhow!("{err}"))?;
                    println!(
                        "|N - {}| = {} <= {} -> {}",
                        rep.center.value(),
                        rep.lhs,
                        rep.rhs_value,
                        rep.holds.as_str()
                    );
                }
            }
            if n_direct != n_charsum {
                bail!("count mismatch: the two routes disagree");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Code { q, m, n_len, check_set, min_weight, verify_bounds, budget, seed, out } => {
            let (p, e) = prime_power(q)?;
            let base = FieldSpec::new(p, e, None).map_err(|err| anyhow!("{err}"))?;
            let ext = FieldSpec::new(p, e * m, None).map_err(|err| anyhow!("{err}"))?;
            let j = parse_u64_list(&check_set)?;
            let code = CodeSpec::new(base, ext, n_len, &j).map_err(|err| anyhow!("{err}"))?;
            run_code(&code, cli.json, min_weight, verify_bounds, budget, seed, out)
        }
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {config}"))?;
            let mut parsed: CampaignConfig =
                serde_json::from_str(&text).context("parsing the campaign config")?;
            if parsed.threads.is_none() {
                parsed.threads = Some(cli.threads);
            }
            finish_campaign(&parsed, cli.json)
        }
    }
}

fn parse_coeff(spec: &FieldSpec, input: &str) -> Result<FieldElement> {
    let g = parse_poly(spec, input)?;
    if !g.is_constant() {
        bail!("coefficient must be a constant");
    }
    Ok(g.constant_term())
}

fn finish_campaign(config: &CampaignConfig, as_json: bool) -> Result<ExitCode> {
    let outcome = run_campaign(config)?;
    if as_json {
        println!("{}", serde_json::to_value(&outcome.summary)?);
    } else {
        let s = &outcome.summary;
        println!(
            "rows: {}  holds: {}  violated: {}  inconclusive: {}  inapplicable: {}",
            s.rows, s.holds, s.violated, s.inconclusive, s.inapplicable
        );
    }
    if config.out.is_none() {
        print!("{}", outcome.csv);
        std::io::stdout().flush().ok();
    }
    if outcome.summary.violated > 0 {
        eprintln!("{} violated row(s)", outcome.summary.violated);
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_code(
    code: &CodeSpec,
    as_json: bool,
    min_weight: bool,
    verify_bounds: bool,
    budget: u64,
    seed: u64,
    out: Option<String>,
) -> Result<ExitCode> {
    let ext = code.ext();
    let u = code.check_set().len() as u32;
    let mut payload = json!({
        "q": code.base().q(),
        "ext": ext.q(),
        "N": code.length(),
        "k": code.k(),
        "J": code.check_set(),
    });

    if min_weight {
        let res = code.min_weight_search(budget, seed);
        payload.as_object_mut().unwrap().insert(
            "min_weight".into(),
            json!({
                "weight": res.min_weight,
                "exhaustive": res.exhaustive,
                "argmin": res.argmin.map(|a| {
                    a.iter().map(|x| elem_json(ext, *x)).collect::<Vec<_>>()
                }),
            }),
        );
        if let Ok(floor) = code.min_weight_floor() {
            payload
                .as_object_mut()
                .unwrap()
                .insert("min_weight_floor".into(), json!(floor.value()));
        }
    }

    let mut csv = String::from("a,weight,window_lo,window_hi,in_window\n");
    let mut all_in_window = true;
    if verify_bounds {
        let total = (ext.q() as u128).pow(u);
        if total > budget as u128 {
            bail!("codeword space larger than the budget; raise --budget");
        }
        let mut checked = 0u64;
        for codeidx in 1..total as u64 {
            let mut v = codeidx;
            let a: Vec<FieldElement> = (0..u)
                .map(|_| {
                    let d = v % ext.q();
                    v /= ext.q();
                    FieldElement::from_index(d as u32)
                })
                .collect();
            let rep = match code.code_weight_report(&a) {
                Ok(rep) => rep,
                Err(_) => continue,
            };
            let w = code.trace_codeword(&a).map_err(|e| anyhow!("{e}"))?.weight;
            let lo = rep.center.value() - rep.rhs_value;
            let hi = rep.center.value() + rep.rhs_value;
            let inside = rep.holds == HoldsStatus::Holds;
            all_in_window &= inside;
            checked += 1;
            let a_text: Vec<String> =
                a.iter().map(|x| ext.elem_to_string(*x)).collect();
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                format!("\"{}\"", a_text.join(";")),
                w,
                lo,
                hi,
                inside
            ));
        }
        payload.as_object_mut().unwrap().insert(
            "windows".into(),
            json!({ "checked": checked, "all_contained": all_in_window }),
        );
    }

    if let Some(path) = &out {
        std::fs::write(path, &csv).with_context(|| format!("writing {path}"))?;
    }

    if as_json {
        println!("{payload}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&payload).unwrap_or_else(|_| payload.to_string())
        );
    }
    if verify_bounds && !all_in_window {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
