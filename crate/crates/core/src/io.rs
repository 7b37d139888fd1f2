//! Instance text format and solver result documents.
//!
//! An instance file is UTF-8 text: a header line `n <count>` followed by
//! `count` lines `xl yl xr yr`. Coordinates are written with the shortest
//! decimal representation that parses back to the same `f64`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Instance, Point, Rectangle};
use crate::heuristics::{Algorithm, Solution};
use crate::oracles::{verify_cover, verify_independent};

pub fn write_instance<W: Write>(mut out: W, instance: &Instance) -> Result<()> {
    out.write_all(format_instance(instance).as_bytes())?;
    Ok(())
}

pub fn format_instance(instance: &Instance) -> String {
    let mut s = format!("n {}\n", instance.rects.len());
    for r in &instance.rects {
        writeln!(s, "{} {} {} {}", r.lo.x, r.lo.y, r.hi.x, r.hi.y).expect("write to String");
    }
    s
}

/// Parses the instance format. The file carries only rectangles, so the
/// returned instance has seed 0 and the unit region.
pub fn read_instance<R: BufRead>(input: R) -> Result<Instance> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let header = header?;
    let count: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", c] => c
            .parse()
            .map_err(|_| Error::Parse(format!("bad count in header {header:?}")))?,
        _ => {
            return Err(Error::Parse(format!(
                "expected `n <count>`, got {header:?}"
            )))
        }
    };
    let mut rects = Vec::with_capacity(count);
    for (lineno, line) in lines {
        let line = line?;
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("line {}: bad number in {line:?}", lineno + 1)))?;
        let [xl, yl, xr, yr] = nums[..] else {
            return Err(Error::Parse(format!(
                "line {}: expected 4 numbers, got {}",
                lineno + 1,
                nums.len()
            )));
        };
        let rect = Rectangle::from_bounds(xl, yl, xr, yr)
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        rects.push(rect);
    }
    if rects.len() != count {
        return Err(Error::Parse(format!(
            "header announces {count} rectangles, found {}",
            rects.len()
        )));
    }
    Ok(Instance::from_rects(rects))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    read_instance(text.as_bytes())
}

/// Output of one solver run, in the shape emitted by `solve`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algo: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<usize>>,
    pub theta: Option<usize>,
    pub phi: Option<usize>,
    pub elapsed_ms: f64,
    pub verified: bool,
}

impl SolveReport {
    /// Runs `algo` and checks the result geometrically.
    pub fn run(instance: &Instance, algo: Algorithm, seed: Option<u64>) -> Self {
        Self::from_solution(instance, algo, seed, &algo.run(instance))
    }

    pub fn from_solution(
        instance: &Instance,
        algo: Algorithm,
        seed: Option<u64>,
        sol: &Solution,
    ) -> Self {
        let elapsed_ms = sol.elapsed().as_secs_f64() * 1e3;
        match sol {
            Solution::Cover(c) => Self {
                algo: algo.name().into(),
                n: instance.len(),
                seed,
                size: c.size(),
                verified: verify_cover(&instance.rects, &c.points),
                points: Some(c.points.clone()),
                members: None,
                theta: Some(c.theta_count),
                phi: Some(c.phi_count),
                elapsed_ms,
            },
            Solution::Independent(s) => Self {
                algo: algo.name().into(),
                n: instance.len(),
                seed,
                size: s.size(),
                verified: verify_independent(&instance.rects, &s.members),
                points: None,
                members: Some(s.members.clone()),
                theta: None,
                phi: None,
                elapsed_ms,
            },
        }
    }

    pub const CSV_HEADER: &'static str = "algo,n,seed,size,theta,phi,elapsed_ms,verified,witness";

    /// One CSV data row matching [`Self::CSV_HEADER`]. The witness column
    /// holds `x:y` points or member indices separated by `;`.
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        let witness = match (&self.points, &self.members) {
            (Some(p), _) => p
                .iter()
                .map(|p| format!("{}:{}", p.x, p.y))
                .collect::<Vec<_>>()
                .join(";"),
            (_, Some(m)) => m.iter().map(usize::to_string).collect::<Vec<_>>().join(";"),
            _ => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{:.3},{},{}",
            self.algo,
            self.n,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.size,
            opt(self.theta),
            opt(self.phi),
            self.elapsed_ms,
            self.verified,
            witness
        )
    }
}
