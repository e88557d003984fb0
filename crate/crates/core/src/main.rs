use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use majorant::bounds::{fourth_derivative_bound, BoundLedger, LedgerOptions};
use majorant::proof::{self, BudgetOverride, ProofConfig, Verdict};
use majorant::report::{emit_report, Format};
use majorant::taylor::{build_taylor_model, certify_negative, d_derivative};
use majorant::{integrate, reference, Error, Result};

#[derive(Parser)]
#[command(name = "majorant", version, about = "Certified proof of d(t) > 0 on (k, k+1) for k = 3, 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Override every quadrature node count.
    #[arg(long = "n", global = true)]
    nodes: Option<u32>,

    /// JSON file with budget overrides (`positivity`, `models`).
    #[arg(long, global = true)]
    budget_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full proof for k = 3 or k = 4.
    Prove {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        k: u32,
    },
    /// Rebuild one coefficient table (1: t0 = 3.5, 2: t0 = 4.25, 3: t0 = 4.75).
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        which: u32,
    },
    /// Print the bound ledger for k.
    Bounds {
        #[arg(long)]
        k: u32,
    },
    /// Demonstrate the quadrature rule and its certificate.
    QuadDemo,
}

fn config_for(k: u32, cli: &Cli) -> Result<ProofConfig> {
    let mut config = ProofConfig::default_for(k)?;
    if let Some(path) = &cli.budget_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let o: BudgetOverride = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        config = config.apply_overrides(&o)?;
    }
    if let Some(n) = cli.nodes {
        config = config.with_nodes(n);
    }
    Ok(config)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn tables(which: u32, cli: &Cli) -> Result<String> {
    let (k, idx) = match which {
        1 => (3, 0),
        2 => (4, 0),
        _ => (4, 1),
    };
    let config = config_for(k, cli)?;
    let ledger = proof::ledger_for(&config)?;
    let spec = &config.models[idx];
    let model = build_taylor_model(&ledger, spec)?;
    let chain = certify_negative(&model, spec.interval.0, spec.interval.1).ok();
    let table = proof::table_report(&ledger, &model, chain)?;
    Ok(match cli.format {
        Format::Json => to_json(&table),
        Format::Md => {
            let mut s = format!("# {} (t0 = {}, N = {})\n\n", table.name, table.t0, spec.nodes);
            s.push_str("| j | bound | published | δ_j | N* | N* printed | d̄_j | printed | rel. diff |\n");
            s.push_str("|---|---|---|---|---|---|---|---|---|\n");
            for r in &table.rows {
                s.push_str(&format!(
                    "| {} | {:.4e} | {:.2e} | {} | {} | {} | {:.10} | {} | {:.1e} |\n",
                    r.j,
                    r.hiv_bound,
                    r.hiv_bound_published,
                    r.delta,
                    r.n_star,
                    r.n_star_published,
                    r.d_bar,
                    r.d_bar_published,
                    r.rel_diff
                ));
            }
            s.push_str(&format!(
                "\nremainder {:.6} (allowance {}), Σδ_j + R = {:.6} < δ = {}\n",
                table.remainder, table.remainder_budget, table.effective_budget, table.total
            ));
            s
        }
    })
}

fn bounds(k: u32, cli: &Cli) -> Result<String> {
    let cap = (k == 4).then_some(reference::ELL_CAP_K4);
    let ledger = BoundLedger::with_options(k, LedgerOptions { ell_cap: cap })?;
    Ok(match cli.format {
        Format::Json => to_json(&ledger),
        Format::Md => {
            let mut s = format!("# Bound ledger, k = {k}\n\n");
            for (m, v) in ledger.m.iter().enumerate() {
                s.push_str(&format!("- M_{m} = {v:.6e}\n"));
            }
            s.push_str(&format!("- M* = {:?}\n", ledger.m_star));
            s.push_str(&format!(
                "- min G+ ≥ {:.6} (≈ {:.6} at x = {:.6})\n",
                ledger.g_min_plus, ledger.g_min_plus_detail.approx_min, ledger.g_min_plus_detail.argmin_x
            ));
            s.push_str(&format!(
                "- min G- ≥ {:.6} (≈ {:.6} at x = {:.6})\n",
                ledger.g_min_minus, ledger.g_min_minus_detail.approx_min, ledger.g_min_minus_detail.argmin_x
            ));
            s.push_str(&format!("- ℓ: cap {:?}, derived {:?}\n", ledger.ell_max, ledger.ell_derived));
            for r in [&ledger.ratio_plus, &ledger.ratio_minus].into_iter().flatten() {
                s.push_str(&format!(
                    "- sup G{}'²/G{} ≈ {:.4} (u = {:.6}), certified {:.4}, reported {}; denominator ≥ {:.5}\n",
                    r.sign, r.sign, r.sup_estimate, r.argmax_u, r.certified, r.reported, r.denominator_min
                ));
            }
            let t = f64::from(k);
            s.push_str("\n| j | ‖H^IV_{k,j}‖ bound |\n|---|---|\n");
            for j in 0..=3 {
                if let Ok(b) = fourth_derivative_bound(t, j, &ledger) {
                    s.push_str(&format!("| {j} | {:.6e} |\n", b.value));
                }
            }
            s
        }
    })
}

fn quad_demo(cli: &Cli) -> Result<String> {
    let n = cli.nodes.unwrap_or(10);
    let quartic = integrate(|x| x.powi(4), |x| 12.0 * x * x, 24.0, n)?;
    let sine = integrate(
        |x| (2.0 * std::f64::consts::PI * x).sin(),
        |x| -4.0 * std::f64::consts::PI.powi(2) * (2.0 * std::f64::consts::PI * x).sin(),
        16.0 * std::f64::consts::PI.powi(4),
        n,
    )?;
    let ledger = BoundLedger::new(3)?;
    let d1 = d_derivative(&ledger, 3.0, 1, cli.nodes.unwrap_or(100))?;
    Ok(match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "quartic": { "result": quartic, "exact": 1.0 / 160.0 },
            "sine": { "result": sine, "exact": 1.0 / std::f64::consts::PI },
            "d1_at_3": d1,
        })),
        Format::Md => format!(
            "# Quadrature demo\n\n\
             - ∫ x⁴ = 1/160: {:.15} ± {:.3e} (N = {}), actual error {:.3e}\n\
             - ∫ sin 2πx = 1/π: {:.15} ± {:.3e} (N = {}), actual error {:.3e}\n\
             - d'(3) ≈ {:.12} ± {:.3e} (N = {}, ‖H^IV‖ ≤ {:.4e})\n",
            quartic.value,
            quartic.error_bound,
            n,
            (quartic.value - 1.0 / 160.0).abs(),
            sine.value,
            sine.error_bound,
            n,
            (sine.value - 1.0 / std::f64::consts::PI).abs(),
            d1.value,
            d1.err,
            d1.minus.nodes,
            d1.fourth_bound
        ),
    })
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Prove { k } => {
            let config = config_for(k, cli)?;
            let report = proof::prove(&config)?;
            log::info!("k = {k}: {}", report.verdict);
            Ok((emit_report(&report, cli.format), report.verdict == Verdict::Verified))
        }
        Command::Tables { which } => Ok((tables(which, cli)?, true)),
        Command::Bounds { k } => Ok((bounds(k, cli)?, true)),
        Command::QuadDemo => Ok((quad_demo(cli)?, true)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                println!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
