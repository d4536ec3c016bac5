use rayon::prelude::*;

use qstep_core::analytic::{step_limit_amplitudes_below, uniform_grid};
use qstep_core::validation::{self, ratio_sweep, ValidationOptions};
use qstep_core::{
    coefficients, kinematics, match_below, step_limit_coefficients, Error, ScatteringState,
    StepPotential,
};

use crate::output::{emit, label, Table};
use crate::{RunArgs, ValidateArgs};

pub const FIGURE_DELTAS: [f64; 4] = [0.5, 1.0, 2.0, 10.0];
pub const FIGURE_BELOW_RATIOS: [f64; 4] = [0.1, 0.2, 0.5, 0.9];
pub const LIMIT_DELTAS: [f64; 6] = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0];

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    ValidationFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPotential { .. } | Error::NonPositiveEnergy(_) | Error::InvalidConfig(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn write(table: &Table, args: &RunArgs) -> CliResult<()> {
    let text = table.render(args.format).map_err(CliError::Runtime)?;
    emit(&text, args.output.as_deref()).map_err(|e| CliError::Runtime(e.to_string()))
}

fn potential_for(v0: f64, delta: f64) -> CliResult<StepPotential> {
    Ok(StepPotential::new(v0, delta)?)
}

fn deltas_or(args: &RunArgs, default: &[f64]) -> Vec<f64> {
    if args.delta.is_empty() {
        default.to_vec()
    } else {
        args.delta.clone()
    }
}

fn grid(args: &RunArgs, (lo, hi, n): (f64, f64, usize)) -> CliResult<Vec<f64>> {
    Ok(uniform_grid(
        args.xmin.unwrap_or(lo),
        args.xmax.unwrap_or(hi),
        args.samples.unwrap_or(n),
    )?)
}

/// Energy ratios requested through `--ratio` or `--energy`.
fn requested_ratios(args: &RunArgs) -> Option<Vec<f64>> {
    match (args.energy, args.ratio.is_empty()) {
        (Some(e), _) => Some(vec![e / args.v0]),
        (None, false) => Some(args.ratio.clone()),
        (None, true) => None,
    }
}

pub fn potential(args: &RunArgs) -> CliResult<Table> {
    if let Some(f) = args.figure.filter(|&f| f != 1) {
        return usage(format!("figure {f} is not a potential plot (use --figure 1)"));
    }
    let deltas = deltas_or(args, &FIGURE_DELTAS);
    let pots = deltas
        .iter()
        .map(|&d| potential_for(args.v0, d))
        .collect::<CliResult<Vec<_>>>()?;
    let xs = grid(args, (-5.0, 5.0, 400))?;

    let mut header = vec!["x".to_string()];
    header.extend(deltas.iter().map(|&d| format!("V_delta_{}", label(d))));
    let mut table = Table::new(header);
    table.rows = xs
        .iter()
        .map(|&x| {
            let mut row = vec![x];
            row.extend(pots.iter().map(|p| p.value(x)));
            row
        })
        .collect();
    Ok(table)
}

pub fn coeffs(args: &RunArgs) -> CliResult<Table> {
    if let Some(f) = args.figure.filter(|&f| f != 6) {
        return usage(format!("figure {f} is not a coefficient plot (use --figure 6)"));
    }
    let deltas = deltas_or(args, &FIGURE_DELTAS);
    let ratios = match requested_ratios(args) {
        Some(r) => r,
        None => {
            let ratio_max = args.ratio_max.unwrap_or(4.0);
            let samples = args.samples.unwrap_or(400);
            if !(ratio_max > 0.0) || samples < 1 {
                return usage("ratio sweep needs --ratio-max > 0 and --samples >= 1");
            }
            ratio_sweep(ratio_max, samples)
        }
    };
    let pots = deltas
        .iter()
        .map(|&d| potential_for(args.v0, d))
        .collect::<CliResult<Vec<_>>>()?;

    let mut header = vec!["ratio".to_string()];
    header.extend(deltas.iter().map(|&d| format!("R_delta_{}", label(d))));
    header.extend(deltas.iter().map(|&d| format!("T_delta_{}", label(d))));
    let mut table = Table::new(header);
    table.rows = ratios
        .par_iter()
        .map(|&ratio| {
            let cs = pots
                .iter()
                .map(|p| kinematics(p, ratio * args.v0).map(|k| coefficients(&k)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut row = vec![ratio];
            row.extend(cs.iter().map(|c| c.r));
            row.extend(cs.iter().map(|c| c.t));
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(table)
}

/// `(delta, ratio)` cases of a wave figure.
pub fn wave_preset(figure: u8) -> Option<Vec<(f64, f64)>> {
    let cases = match figure {
        2 => FIGURE_DELTAS.iter().map(|&d| (d, 1.0)).collect(),
        3 => FIGURE_DELTAS.iter().map(|&d| (d, 2.0)).collect(),
        4 => FIGURE_BELOW_RATIOS.iter().map(|&r| (0.5, r)).collect(),
        5 => FIGURE_BELOW_RATIOS.iter().map(|&r| (10.0, r)).collect(),
        _ => return None,
    };
    Some(cases)
}

pub fn wave(args: &RunArgs) -> CliResult<Table> {
    let cases = match args.figure {
        Some(f) => match wave_preset(f) {
            Some(c) => c,
            None => return usage(format!("figure {f} is not a wavefunction plot (use 2-5)")),
        },
        None => {
            let Some(ratios) = requested_ratios(args) else {
                return usage("wave needs --ratio or --energy (or --figure 2|3|4|5)");
            };
            let deltas = deltas_or(args, &[1.0]);
            deltas
                .iter()
                .flat_map(|&d| ratios.iter().map(move |&r| (d, r)))
                .collect()
        }
    };
    let xs = grid(args, (-10.0, 10.0, 400))?;
    let header = ["delta", "ratio", "x", "re_psi", "im_psi", "density", "current"];
    let mut table = Table::new(header.iter().map(|s| s.to_string()).collect());
    for (delta, ratio) in cases {
        let p = potential_for(args.v0, delta)?;
        let sample = ScatteringState::new(&p, ratio * args.v0)?.scan(xs.clone())?;
        for j in 0..sample.len() {
            table.rows.push(vec![
                delta,
                ratio,
                sample.x[j],
                sample.psi[j].re,
                sample.psi[j].im,
                sample.density[j],
                sample.current[j],
            ]);
        }
    }
    Ok(table)
}

pub fn limit(args: &RunArgs) -> CliResult<Table> {
    if args.figure.is_some() {
        return usage("limit has no figure preset");
    }
    let ratio = match requested_ratios(args).as_deref() {
        None => 2.0,
        Some([r]) => *r,
        Some(_) => return usage("limit takes a single --ratio or --energy"),
    };
    let deltas = deltas_or(args, &LIMIT_DELTAS);
    let energy = ratio * args.v0;
    let above = ratio >= 1.0;
    let header: &[&str] = if above {
        &["delta", "R_exact", "R_step", "R_dev", "T_exact", "T_step", "T_dev"]
    } else {
        &[
            "delta", "re_D", "im_D", "re_D_step", "im_D_step", "D_dev", "re_B", "im_B",
            "re_B_step", "im_B_step", "B_dev",
        ]
    };
    let mut table = Table::new(header.iter().map(|s| s.to_string()).collect());
    table.rows = deltas
        .par_iter()
        .map(|&d| {
            let p = potential_for(args.v0, d)?;
            let kin = kinematics(&p, energy)?;
            if above {
                let (exact, step) = (coefficients(&kin), step_limit_coefficients(&kin));
                Ok(vec![
                    d,
                    exact.r,
                    step.r,
                    (exact.r - step.r).abs(),
                    exact.t,
                    step.t,
                    (exact.t - step.t).abs(),
                ])
            } else {
                let m = match_below(&p, energy)?;
                let s = step_limit_amplitudes_below(&kin)?;
                Ok(vec![
                    d,
                    m.transmitted.re,
                    m.transmitted.im,
                    s.transmitted.re,
                    s.transmitted.im,
                    (m.transmitted - s.transmitted).norm(),
                    m.reflected.re,
                    m.reflected.im,
                    s.reflected.re,
                    s.reflected.im,
                    (m.reflected - s.reflected).norm(),
                ])
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(table)
}

pub fn validate(args: &ValidateArgs) -> CliResult<()> {
    if let Some(eps) = args.perturb_gamma {
        if !eps.is_finite() {
            return usage("--perturb-gamma must be finite");
        }
    }
    let opts = ValidationOptions {
        perturb_gamma: args.perturb_gamma,
        below_only: args.below_only,
    };
    let results = validation::run(&opts);
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{:<4} {:<width$}  measured {:>10.3e}  tol {:>8.1e}  {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.measured,
            r.tolerance,
            r.detail,
        ));
    }
    let passed = validation::all_passed(&results);
    text.push_str(&format!(
        "{} of {} checks passed\n",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    emit(&text, args.output.as_deref()).map_err(|e| CliError::Runtime(e.to_string()))?;
    if passed {
        Ok(())
    } else {
        Err(CliError::ValidationFailed)
    }
}
