use majorant::proof::ProofConfig;
use majorant::reference;
use majorant::taylor::{build_taylor_model, certify_negative, d_derivative, remainder_bound, TailKind};
use majorant::{BoundLedger, LedgerOptions};

fn ledger(k: u32) -> BoundLedger {
    let cap = (k == 4).then_some(reference::ELL_CAP_K4);
    BoundLedger::with_options(k, LedgerOptions { ell_cap: cap }).unwrap()
}

/// The model stays within its total budget of a direct evaluation of the
/// modelled derivative at interior points.
#[test]
fn models_track_direct_derivatives() {
    for k in [3, 4] {
        let l = ledger(k);
        for spec in ProofConfig::default_for(k).unwrap().models {
            let model = build_taylor_model(&l, &spec).unwrap();
            let (lo, hi) = model.range();
            for i in 1..=5 {
                let t = lo + (hi - lo) * f64::from(i) / 6.0;
                let direct = d_derivative(&l, t, spec.order, 500).unwrap();
                let gap = (model.eval(t) - direct.value).abs();
                assert!(
                    gap <= spec.total + direct.err,
                    "k = {k}, t0 = {}, t = {t}: gap {gap:e} > {}",
                    spec.t0,
                    spec.total
                );
            }
        }
    }
}

#[test]
fn remainders_within_allowances() {
    for (r, t0, radius, n, allowance) in [
        (4, 3.5, 0.5, 10, reference::REMAINDER_K3),
        (5, 4.25, 0.25, 7, reference::REMAINDER_425),
        (5, 4.75, 0.25, 6, reference::REMAINDER_475),
    ] {
        let b = remainder_bound(r, t0, radius, n).unwrap();
        assert_eq!(b.m, n + r + 1);
        assert!(b.value < allowance, "t0 = {t0}: {} ≥ {allowance}", b.value);
    }
}

#[test]
fn remainder_outside_window_is_rejected() {
    // m / ξ_min far beyond 1/σ₀
    assert!(remainder_bound(5, 3.5, 0.5, 40).is_err());
}

#[test]
fn sign_chains_certify_each_piece() {
    for k in [3, 4] {
        let l = ledger(k);
        for spec in ProofConfig::default_for(k).unwrap().models {
            let model = build_taylor_model(&l, &spec).unwrap();
            let cert = certify_negative(&model, spec.interval.0, spec.interval.1).unwrap();
            assert!(cert.sampled_max < 0.0);
            match spec.tail {
                TailKind::ParabolaNegativeDefinite => {
                    assert_eq!(cert.checked, model.coeffs.len() - 3);
                    assert!(cert.discriminant.unwrap() < 0.0);
                }
                TailKind::ConstantNegative => {
                    assert_eq!(cert.checked, model.coeffs.len() - 1);
                    assert!(cert.discriminant.is_none());
                }
            }
        }
    }
}

#[test]
fn chain_rejects_an_interval_outside_the_model() {
    let l = ledger(3);
    let spec = &ProofConfig::default_for(3).unwrap().models[0];
    let model = build_taylor_model(&l, spec).unwrap();
    assert!(certify_negative(&model, 2.9, 3.5).is_err());
}

#[test]
fn tight_total_breaks_the_chain() {
    let l = ledger(3);
    let mut spec = ProofConfig::default_for(3).unwrap().models[0].clone();
    // p(3) = P₁₀(3) + δ turns positive once δ exceeds 0.0685
    spec.total = 0.069;
    let model = build_taylor_model(&l, &spec).unwrap();
    assert!(certify_negative(&model, 3.0, 4.0).is_err());
}
