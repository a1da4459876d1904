use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::McError;
use crate::estimators::*;
use crate::sampler::SampleConfig;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// Accepted deviation in standard errors.
pub const Z_PASS: f64 = 3.0;
/// Beyond this a run is a hard failure.
pub const Z_FAIL: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "estimator", rename_all = "lowercase")]
pub enum McCase {
    Kinematic { a: ConvexBody, b: ConvexBody },
    Crofton { a: ConvexBody, k: usize },
    Cauchy { a: ConvexBody },
    Steiner { a: ConvexBody, r: f64 },
    Additive { a: ConvexBody, b: ConvexBody },
}

impl McCase {
    pub fn dim(&self) -> usize {
        match self {
            McCase::Kinematic { a, .. }
            | McCase::Crofton { a, .. }
            | McCase::Cauchy { a }
            | McCase::Steiner { a, .. }
            | McCase::Additive { a, .. } => a.dim(),
        }
    }

    pub fn run(&self, cfg: SampleConfig) -> Result<McEstimate, McError> {
        match self {
            McCase::Kinematic { a, b } => estimate_principal_kinematic(a, b, cfg, None),
            McCase::Crofton { a, k } => estimate_crofton(a, *k, cfg),
            McCase::Cauchy { a } => cauchy_projection_check(a, cfg),
            McCase::Steiner { a, r } => steiner_mc(a, *r, cfg),
            McCase::Additive { a, b } => estimate_additive(a, b, cfg),
        }
    }
}

/// The twelve default runs, named `estimator/dimension/bodies`.
pub fn default_cases() -> Vec<(String, McCase)> {
    let disk = ConvexBody::unit_ball(2);
    let square = ConvexBody::cube(2, 1.0);
    let ball = ConvexBody::unit_ball(3);
    let cube = ConvexBody::cube(3, 1.0);
    let brick = ConvexBody::Box { min: vec![0.0, 0.0, 0.0], max: vec![2.0, 1.0, 0.5] };
    let case = |name: &str, c: McCase| (name.to_string(), c);
    vec![
        case("kinematic/2/disk-square", McCase::Kinematic { a: disk.clone(), b: square.clone() }),
        case("kinematic/2/square-square", McCase::Kinematic { a: square.clone(), b: square.clone() }),
        case("kinematic/2/disk-disk", McCase::Kinematic { a: disk.clone(), b: disk.clone() }),
        case("kinematic/3/ball-cube", McCase::Kinematic { a: ball.clone(), b: cube.clone() }),
        case("kinematic/3/ball-ball", McCase::Kinematic { a: ball.clone(), b: ball.clone() }),
        case("kinematic/3/cube-brick", McCase::Kinematic { a: cube.clone(), b: brick.clone() }),
        case("crofton/2/disk-k1", McCase::Crofton { a: disk, k: 1 }),
        case("crofton/3/cube-k2", McCase::Crofton { a: cube.clone(), k: 2 }),
        case("cauchy/3/cube", McCase::Cauchy { a: cube.clone() }),
        case("steiner/2/square-r1", McCase::Steiner { a: square.clone(), r: 1.0 }),
        case("additive/2/square-square", McCase::Additive { a: square.clone(), b: square }),
        case("additive/3/cube-brick", McCase::Additive { a: cube, b: brick }),
    ]
}

/// Runs every default case; case `i` uses seed `seed + i`.
pub fn run_default_suite(samples: u64, seed: u64, jobs: usize) -> Result<Vec<McEstimate>, McError> {
    default_cases()
        .into_iter()
        .enumerate()
        .map(|(i, (name, case))| {
            let cfg = SampleConfig::new(samples, seed.wrapping_add(i as u64)).with_jobs(jobs);
            Ok(case.run(cfg)?.named(name))
        })
        .collect()
}

/// `|z| ≤ limit` for every run that has a prediction.
pub fn within(results: &[McEstimate], limit: f64) -> bool {
    results.iter().all(|r| r.z.is_none_or(|z| z.abs() <= limit))
}

pub fn to_csv(results: &[McEstimate]) -> String {
    let mut out = String::from(McEstimate::csv_header());
    out.push('\n');
    for r in results {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
