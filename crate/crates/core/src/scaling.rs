//! Runtime scaling measurements: median-of-k wall time per size and the
//! least-squares slope of `log t` against `log n`.

use crate::dso::Dso;
use crate::error::{Error, Result};
use crate::frp2::Frp2;
use crate::frp3::solve_3frp;
use crate::gen::{chorded_path, random_absent_edge, random_ladder, random_perturbed};
use crate::perturb::perturb_and_verify;
use crate::ssrp::ssrp2;
use crate::weight::{tiebreak, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Frp3,
    #[serde(rename = "frp3-ladder")]
    Frp3Ladder,
    Frp2,
    Dso,
    Incremental,
    Ssrp,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "frp3" => Suite::Frp3,
            "frp3-ladder" => Suite::Frp3Ladder,
            "frp2" => Suite::Frp2,
            "dso" => Suite::Dso,
            "incremental" => Suite::Incremental,
            "ssrp" => Suite::Ssrp,
            _ => return Err(Error::Invalid(format!("unknown bench suite `{s}`"))),
        })
    }
}

impl Suite {
    /// The fixed instance family, described for the report.
    pub fn family(self) -> &'static str {
        match self {
            Suite::Frp3 | Suite::Frp2 => "chorded_path(n, len = n/2, extra = n/4), s = 0, t = len",
            Suite::Frp3Ladder => "random_ladder(n), s = 0, t = n/2 - 1",
            Suite::Dso => "random_connected(n, extra = n, wmax = 9)",
            Suite::Incremental => "random_connected(n, extra = n, wmax = 9) plus 16 random insertions, time per insertion",
            Suite::Ssrp => "random_connected(n, extra = n, wmax = 9), s = 0",
        }
    }

    /// Runs one instance of size `n`, returning the measured seconds and the
    /// number of answers produced.
    pub fn run_once(self, n: usize, seed: u64) -> Result<(f64, u64)> {
        match self {
            Suite::Frp3 | Suite::Frp2 => {
                let len = (n / 2).max(1);
                let g = perturb_and_verify(&chorded_path(n, len, n / 4, seed), seed)?.0;
                let t0 = Instant::now();
                let count = if self == Suite::Frp3 {
                    solve_3frp(&g, 0, len, |_| {})?.triples as u64
                } else {
                    let f = Frp2::new(&g, 0, len)?;
                    let mut c = 0u64;
                    f.for_each_required(|_, _, _| c += 1)?;
                    c
                };
                Ok((t0.elapsed().as_secs_f64(), count))
            }
            Suite::Frp3Ladder => {
                let t = n / 2 - 1;
                let g = perturb_and_verify(&random_ladder(n, seed), seed)?.0;
                let t0 = Instant::now();
                let count = solve_3frp(&g, 0, t, |_| {})?.triples as u64;
                Ok((t0.elapsed().as_secs_f64(), count))
            }
            Suite::Dso => {
                let g = random_perturbed(n, n, 9, seed);
                let t0 = Instant::now();
                let d = Dso::build(g)?;
                Ok((t0.elapsed().as_secs_f64(), d.table().non_null() as u64))
            }
            Suite::Incremental => {
                let mut d = Dso::build(random_perturbed(n, n, 9, seed))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let k = 16;
                let t0 = Instant::now();
                for _ in 0..k {
                    let (x, y, w) = random_absent_edge(d.graph(), 9, &mut rng).ok_or(Error::Invalid("graph is complete".into()))?;
                    d.insert(x, y, Weight::new(w, tiebreak(seed, x, y)))?;
                }
                Ok((t0.elapsed().as_secs_f64() / k as f64, k as u64))
            }
            Suite::Ssrp => {
                let g = random_perturbed(n, n, 9, seed);
                let t0 = Instant::now();
                let st = ssrp2(&g, 0, |_, _, _, _| {})?;
                Ok((t0.elapsed().as_secs_f64(), st.emitted as u64))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeRun {
    pub n: usize,
    pub seconds: Vec<f64>,
    pub median_seconds: f64,
    pub outputs: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Machine {
    pub cpu: String,
    pub logical_cpus: usize,
    pub os: String,
    pub arch: String,
    pub threads_used: usize,
}

impl Machine {
    pub fn detect() -> Machine {
        let cpu = std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|s| s.lines().find(|l| l.starts_with("model name")).and_then(|l| l.split(':').nth(1)).map(|m| m.trim().to_string()))
            .unwrap_or_else(|| "unknown".into());
        Machine {
            cpu,
            logical_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
            threads_used: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub suite: Suite,
    pub family: String,
    pub seed: u64,
    pub reps: usize,
    pub sizes: Vec<SizeRun>,
    /// Least-squares slope of `ln t` over `ln n`; absent for a single size.
    pub slope: Option<f64>,
    pub note: String,
    pub machine: Machine,
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.max(1e-9).ln())).unzip();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Times `suite` at each size; `reps` runs per size with seeds `seed..seed+reps`.
pub fn measure(suite: Suite, sizes: &[usize], reps: usize, seed: u64, mut progress: impl FnMut(&SizeRun)) -> Result<ScalingReport> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("sizes must be non-empty and strictly ascending".into()));
    }
    let reps = reps.max(1);
    let mut runs = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut seconds = Vec::with_capacity(reps);
        let mut outputs = Vec::with_capacity(reps);
        for r in 0..reps as u64 {
            let (s, c) = suite.run_once(n, seed + r)?;
            seconds.push(s);
            outputs.push(c);
        }
        let run = SizeRun { n, median_seconds: median(&seconds), seconds, outputs: outputs[reps / 2] };
        progress(&run);
        runs.push(run);
    }
    let pts: Vec<(f64, f64)> = runs.iter().map(|r| (r.n as f64, r.median_seconds)).collect();
    let slope = loglog_slope(&pts);
    let note = match slope {
        None => "single size: raw time only".into(),
        Some(_) if runs.len() == 2 => "two sizes: slope from two points, low confidence".into(),
        Some(_) => format!("{}-point least-squares fit; polylog factors inflate slopes at small n", runs.len()),
    };
    Ok(ScalingReport { suite, family: suite.family().into(), seed, reps, sizes: runs, slope, note, machine: Machine::detect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0].iter().map(|&n: &f64| (n, 3.0 * n.powf(2.5))).collect();
        assert!((loglog_slope(&pts).unwrap() - 2.5).abs() < 1e-9);
        assert_eq!(loglog_slope(&pts[..1]), None);
    }

    #[test]
    fn single_size_reports_no_slope() {
        let r = measure(Suite::Dso, &[8], 3, 1, |_| {}).unwrap();
        assert_eq!(r.slope, None);
        assert_eq!(r.sizes[0].seconds.len(), 3);
        assert!(measure(Suite::Dso, &[8, 8], 1, 1, |_| {}).is_err());
    }

    #[test]
    fn suites_parse() {
        assert_eq!("frp3".parse::<Suite>().unwrap(), Suite::Frp3);
        assert!("nope".parse::<Suite>().is_err());
    }
}
