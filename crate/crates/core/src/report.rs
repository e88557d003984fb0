//! JSON and Markdown rendering of a [`ProofReport`].

use std::fmt::Write;

use crate::proof::{derivative_name, ProofReport, TableReport};
use crate::reference;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

pub fn emit_report(report: &ProofReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Md => to_markdown(report),
    }
}

/// Pretty JSON with fields in declaration order.
pub fn to_json(report: &ProofReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

pub fn from_json(text: &str) -> serde_json::Result<ProofReport> {
    serde_json::from_str(text)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.6e}"))
}

fn table_markdown(out: &mut String, t: &TableReport) {
    let _ = writeln!(out, "### {} (t0 = {}, radius = {}, order {})\n", t.name, t.t0, t.radius, t.order);
    let _ = writeln!(
        out,
        "| j | bound ‖H^IV‖ | published | δ_j | N* (ours) | N* (published bound) | N* printed | d̄_j | printed d̄_j | rel. diff |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|");
    for r in &t.rows {
        let _ = writeln!(
            out,
            "| {} | {:.4e} | {:.2e} | {} | {} | {} | {} | {:.10} | {} | {:.1e} |",
            r.j,
            r.hiv_bound,
            r.hiv_bound_published,
            r.delta,
            r.n_star,
            r.n_star_from_published,
            r.n_star_published,
            r.d_bar,
            r.d_bar_published,
            r.rel_diff
        );
    }
    let _ = writeln!(
        out,
        "\nRemainder bound {:.6} (allowance {}); Σδ_j + R = {:.6}, nominal {:.6}, total δ = {}.\n",
        t.remainder, t.remainder_budget, t.effective_budget, t.nominal_budget, t.total
    );
    if let Some(c) = &t.chain {
        let _ = writeln!(out, "Sign chain at {} (p = P_n + δ):\n", c.a);
        let _ = writeln!(out, "| j | p^(j)({}) | certified |", c.a);
        let _ = writeln!(out, "|---|---|---|");
        for (j, v) in c.values.iter().enumerate() {
            let _ = writeln!(out, "| {j} | {v:.10} | {} |", if j < c.checked { "yes" } else { "tail" });
        }
        let _ = writeln!(
            out,
            "\nTail: {:?}; discriminant {}; sampled max of p on [{}, {}]: {:.6e}\n",
            c.tail,
            fmt_opt(c.discriminant),
            c.a,
            c.b,
            c.sampled_max
        );
    }
}

pub fn to_markdown(report: &ProofReport) -> String {
    let mut out = String::new();
    let k = report.k;
    let _ = writeln!(out, "# d(t) > 0 on ({k}, {}): {}\n", k + 1, report.verdict);

    let _ = writeln!(out, "## Steps\n");
    let _ = writeln!(out, "| # | step | claim | value | error | margin | result | ms |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
    for (i, s) in report.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.10} | {:.3e} | {} | {} | {:.1} |",
            i + 1,
            s.name,
            s.claim,
            s.value,
            s.error,
            fmt_opt(s.margin),
            if s.passed { "PASS" } else { "FAIL" },
            s.elapsed_ms
        );
    }
    let _ = writeln!(out);
    for s in &report.steps {
        let _ = writeln!(out, "- **{}**: {}", s.name, s.detail);
    }

    let _ = writeln!(out, "\n## Low-order derivatives vs published values\n");
    let _ = writeln!(out, "| derivative | ours | published | δ | published bound |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    for p in reference::POSITIVITY.iter().filter(|p| p.k == k) {
        let name = format!("positivity {}({})", derivative_name(p.j), f64::from(k));
        let ours = report
            .steps
            .iter()
            .find(|s| s.name == name)
            .map_or(f64::NAN, |s| s.value);
        let _ = writeln!(
            out,
            "| {} | {:.10} | {} | {} | {:.1e} |",
            derivative_name(p.j), ours, p.value, p.delta, p.hiv_bound
        );
    }

    let _ = writeln!(out, "\n## Bound ledger\n");
    let l = &report.config.ledger;
    let _ = writeln!(out, "- M_0..M_4: {:?}", l.m);
    let _ = writeln!(out, "- M*: {}", fmt_opt(l.m_star));
    let _ = writeln!(out, "- min G+ ≥ {:.6}, min G- ≥ {:.6}", l.g_min_plus, l.g_min_minus);
    let _ = writeln!(out, "- ℓ cap: {}, derived ℓ: {}", fmt_opt(l.ell_max), fmt_opt(l.ell_derived));
    for r in [&l.ratio_plus, &l.ratio_minus].into_iter().flatten() {
        let _ = writeln!(
            out,
            "- sup G{}'²/G{}: estimate {:.4} at u = {:.6}, certified {:.4}, reported {}",
            r.sign, r.sign, r.sup_estimate, r.argmax_u, r.certified, r.reported
        );
    }

    let _ = writeln!(out, "\n## Taylor models\n");
    for t in &report.tables {
        table_markdown(&mut out, t);
    }

    let _ = writeln!(out, "## Spot checks of d(t) (not certified)\n");
    for s in &report.spot_checks {
        let _ = writeln!(out, "- d({}) ≈ {:.10e} (N = {})", s.t, s.value, s.nodes);
    }

    if !report.notes.is_empty() {
        let _ = writeln!(out, "\n## Notes\n");
        for n in &report.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    let c = &report.config.constants;
    let _ = writeln!(
        out,
        "\n## Constants\n\nquadrature denominator {}, guard {}, zero guard {}, node cap {}, σ₀ = {:.10}",
        c.quadrature_denominator, c.fp_guard, c.zero_guard, c.node_cap, c.sigma_zero
    );
    out
}
