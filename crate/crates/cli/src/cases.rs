//! Canned scenarios behind `--paper-case`.

use std::collections::BTreeMap;

use boxdim_core::analysis::{estimate_model, ArcTarget, SweepFamily};
use boxdim_core::dynamics::SystemSpec;
use boxdim_core::fractal::Method;
use boxdim_core::io::SCHEMA_VERSION;
use boxdim_core::models::SpiralSpec;
use boxdim_core::strings::SequenceGenerator;
use serde_json::{json, Value};

use crate::args::PaperCase;
use crate::commands::{dim_system, spiral_files, string_report, sweep_family, SpiralRequest};
use crate::settings::Settings;

pub fn name(c: PaperCase) -> &'static str {
    match c {
        PaperCase::Fig1 => "fig1",
        PaperCase::Fig2 => "fig2",
        PaperCase::Fig3 => "fig3",
        PaperCase::Hopf => "hopf",
        PaperCase::Takens => "takens",
        PaperCase::Lienard => "lienard",
        PaperCase::Damped => "damped",
        PaperCase::String => "string",
    }
}

fn quarter_spiral(name: &str) -> SpiralRequest {
    SpiralRequest {
        spec: SpiralSpec::power_focus(0.25),
        phi_max: Some(500.0),
        invert: false,
        riemann: None,
        poincare: None,
        disc: false,
        name: name.into(),
    }
}

pub fn run(s: &Settings, c: PaperCase) -> anyhow::Result<Value> {
    let body = match c {
        PaperCase::Fig1 => {
            let files = spiral_files(s, &SpiralRequest { invert: true, ..quarter_spiral("fig1") })?;
            let inner = estimate_model(&SpiralSpec::power_focus(0.25), s.eps_min, s.eps_max, s.scales)?;
            let outer = estimate_model(&SpiralSpec::power_focus_out(0.25), s.eps_min, s.eps_max, s.scales)?;
            let (a, b) = (inner.estimate.dimension, outer.estimate.dimension);
            json!({
                "spiral": files,
                "inner": inner,
                "inverted": outer,
                "difference": (a - b).abs(),
            })
        }
        PaperCase::Fig2 => {
            json!({ "spiral": spiral_files(s, &SpiralRequest { riemann: Some(0.5), disc: true, ..quarter_spiral("fig2") })? })
        }
        PaperCase::Fig3 => {
            json!({ "spiral": spiral_files(s, &SpiralRequest { poincare: Some(1.0), disc: true, ..quarter_spiral("fig3") })? })
        }
        PaperCase::Hopf => {
            sweep_family(s, &SweepFamily::HopfInverted { k: 1 }, &[-0.04, 0.0, 0.04], None, 2e5)?
        }
        PaperCase::Takens => {
            let fam = SweepFamily::TakensInverted { l: 2, a: vec![0.0, -2.0], index: 0 };
            sweep_family(s, &fam, &[-0.5, 0.0, 0.5, 1.0, 1.5], None, 2e5)?
        }
        PaperCase::Lienard => {
            let coeffs: BTreeMap<String, f64> = [("2".to_string(), 0.5), ("3".to_string(), -1.0)].into_iter().collect();
            let sys = SystemSpec::LienardInverted { coeffs };
            dim_system(s, &sys, ArcTarget::Focus, None, 2e5, Method::SausageGrid, true)?
        }
        PaperCase::Damped => {
            let sys = SystemSpec::DampedInverted { c: 1.0, alpha: 2, beta: 1 };
            dim_system(s, &sys, ArcTarget::Focus, None, 2e5, Method::SausageGrid, true)?
        }
        PaperCase::String => {
            let g = SequenceGenerator::Power { alpha: 2.0 };
            let seq = g.prefix(100_000);
            string_report(s, &seq, json!({ "kind": "generator", "generator": g }), Some(g.exact_dimension()), true)?
        }
    };
    Ok(json!({ "schema_version": SCHEMA_VERSION, "case": name(c), "result": body }))
}
