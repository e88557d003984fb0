// Analytic integrals over [0, 1/2] with exact second derivatives and
// hand-derived bounds on the fourth derivative.

#![allow(dead_code)]

use std::f64::consts::PI;

use majorant::PolyFamily;

pub struct Analytic {
    pub name: &'static str,
    pub f: Box<dyn Fn(f64) -> f64>,
    pub f2: Box<dyn Fn(f64) -> f64>,
    pub fourth: f64,
    pub exact: f64,
}

fn case(
    name: &'static str,
    f: impl Fn(f64) -> f64 + 'static,
    f2: impl Fn(f64) -> f64 + 'static,
    fourth: f64,
    exact: f64,
) -> Analytic {
    Analytic { name, f: Box::new(f), f2: Box::new(f2), fourth, exact }
}

pub fn corpus() -> Vec<Analytic> {
    let e_half = 0.5f64.exp();
    let m4_plus3 = majorant::bounds::deriv_sup_bounds(3)[4];
    let g = PolyFamily::plus(3).unwrap();
    vec![
        case("x^4", |x| x.powi(4), |x| 12.0 * x * x, 24.0, 1.0 / 160.0),
        case("x^5", |x| x.powi(5), |x| 20.0 * x.powi(3), 60.0, 1.0 / 384.0),
        case("exp", f64::exp, f64::exp, e_half, e_half - 1.0),
        case(
            "sin 2πx",
            |x| (2.0 * PI * x).sin(),
            |x| -4.0 * PI * PI * (2.0 * PI * x).sin(),
            16.0 * PI.powi(4),
            1.0 / PI,
        ),
        case("cos 3x", |x| (3.0 * x).cos(), |x| -9.0 * (3.0 * x).cos(), 81.0, 1.5f64.sin() / 3.0),
        case("1/(1+x)", |x| 1.0 / (1.0 + x), |x| 2.0 / (1.0 + x).powi(3), 24.0, 1.5f64.ln()),
        case(
            "x e^x",
            |x| x * x.exp(),
            |x| (x + 2.0) * x.exp(),
            4.5 * e_half,
            1.0 - 0.5 * e_half,
        ),
        case(
            "sqrt(1+x)",
            |x| (1.0 + x).sqrt(),
            |x| -0.25 * (1.0 + x).powf(-1.5),
            15.0 / 16.0,
            2.0 / 3.0 * (1.5f64.powf(1.5) - 1.0),
        ),
        case("log(1+x)", |x| (1.0 + x).ln(), |x| -1.0 / (1.0 + x).powi(2), 6.0, 1.5 * 1.5f64.ln() - 0.5),
        case(
            "G+ (k=3)",
            move |x| g.g(x),
            move |x| g.g_derivative(2, x).unwrap(),
            m4_plus3,
            1.5,
        ),
    ]
}
