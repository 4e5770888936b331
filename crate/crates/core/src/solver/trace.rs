use std::io::{Read, Write};

use super::{Branch, Scheme};
use crate::error::{Error, Result};
use crate::fd::EvalCounter;
use crate::scalar::Real;

/// One line of a run log. `sigma`, `tau` and `h` are the values the
/// iteration used; `f` is the objective at the iterate it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    pub k: usize,
    pub branch: Branch,
    pub f: T,
    pub sigma: T,
    pub tau: T,
    pub h: T,
    pub gnorm: T,
    /// Cumulative function evaluations, including `f(x0)`.
    pub fe: u64,
    /// Cumulative retractions.
    pub re: u64,
    pub exact_gnorm: Option<T>,
    /// True when the iteration went straight to the decrease test with the
    /// estimate cached by a preceding `U3`.
    pub reused_gradient: bool,
    /// Seconds since the run started (not serialized).
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// A `U1` iteration certified `‖grad f‖ <= eps` through the reference
    /// Lipschitz constant.
    EpsilonStop,
    Budget,
    Stall,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::EpsilonStop => "epsilon_stop",
            Termination::Budget => "budget",
            Termination::Stall => "stall",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunTrace<T> {
    pub scheme: Scheme,
    pub dim: usize,
    pub epsilon: T,
    /// Initial parameters actually used (the coupled scheme starts `tau` at
    /// `sigma0`).
    pub sigma0: T,
    pub tau0: T,
    pub budget_fe: u64,
    pub f0: T,
    pub x0: Vec<T>,
    pub records: Vec<IterationRecord<T>>,
    pub termination: Termination,
    pub final_x: Vec<T>,
    pub final_f: T,
    pub final_sigma: T,
    pub final_tau: T,
    pub counter: EvalCounter,
    pub best_f: T,
}

impl<T: Real> RunTrace<T> {
    /// Largest `tau` seen during the run, including the final update.
    pub fn max_tau(&self) -> T {
        self.records.iter().map(|r| r.tau).fold(self.final_tau, T::max)
    }

    /// `f` before iteration `i`.
    pub fn f_before(&self, i: usize) -> T {
        if i == 0 {
            self.f0
        } else {
            self.records[i - 1].f
        }
    }

    /// Evaluation counts spent by iteration `i`.
    pub fn cost_of(&self, i: usize) -> EvalCounter {
        let prev = if i == 0 {
            EvalCounter::new(1, 0)
        } else {
            EvalCounter::new(self.records[i - 1].fe, self.records[i - 1].re)
        };
        EvalCounter::new(self.records[i].fe, self.records[i].re) - prev
    }

    /// `tau` implied by the branch counts: each `U1`/`U2` doubles it (and
    /// each `S` halves it in the coupled scheme).
    pub fn predicted_final_tau(&self) -> T {
        let c = classify_trace(self);
        let exp = match self.scheme {
            Scheme::Coupled => c.u1 as i64 + c.u2 as i64 - c.s as i64,
            _ => c.u1 as i64 + c.u2 as i64,
        };
        self.tau0 * pow2(exp)
    }

    /// `sigma` implied by the branch counts: `U2`/`U3` double it, `S`
    /// halves it (and `U1` doubles it in the coupled scheme).
    pub fn predicted_final_sigma(&self) -> T {
        let c = classify_trace(self);
        let mut exp = c.u2 as i64 + c.u3 as i64 - c.s as i64;
        if self.scheme == Scheme::Coupled {
            exp += c.u1 as i64;
        }
        self.sigma0 * pow2(exp)
    }
}

fn pow2<T: Real>(exp: i64) -> T {
    T::lit(2.0).powi(exp as i32)
}

/// Branch counts of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BranchCounts {
    pub s: usize,
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
}

impl BranchCounts {
    pub fn iterations(&self) -> usize {
        self.s + self.u1 + self.u2 + self.u3
    }
}

pub fn classify_trace<T>(trace: &RunTrace<T>) -> BranchCounts {
    let mut c = BranchCounts::default();
    for r in &trace.records {
        match r.branch {
            Branch::S => c.s += 1,
            Branch::U1 => c.u1 += 1,
            Branch::U2 => c.u2 += 1,
            Branch::U3 => c.u3 += 1,
        }
    }
    c
}

const COLUMNS: [&str; 9] = ["k", "branch", "f", "sigma", "tau", "h", "gnorm", "fe", "re"];

/// Writes `k,branch,f,sigma,tau,h,gnorm,fe,re[,exact_gnorm]`. The last
/// column is present when any record carries an exact gradient norm.
pub fn write_trace_csv<T: Real, W: Write>(records: &[IterationRecord<T>], out: W) -> Result<()> {
    let with_exact = records.iter().any(|r| r.exact_gnorm.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = COLUMNS.to_vec();
    if with_exact {
        header.push("exact_gnorm");
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.k.to_string(),
            r.branch.to_string(),
            r.f.to_string(),
            r.sigma.to_string(),
            r.tau.to_string(),
            r.h.to_string(),
            r.gnorm.to_string(),
            r.fe.to_string(),
            r.re.to_string(),
        ];
        if with_exact {
            row.push(r.exact_gnorm.map(|v| v.to_string()).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace_csv<T: Real, R: Read>(input: R) -> Result<Vec<IterationRecord<T>>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    let names: Vec<&str> = header.iter().collect();
    let with_exact = match names.as_slice() {
        n if n == COLUMNS => false,
        [rest @ .., "exact_gnorm"] if rest == COLUMNS => true,
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("unexpected trace header '{}'", names.join(",")),
            })
        }
    };
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| row.get(i).unwrap_or("");
        let bad = |what: &str, v: &str| Error::Parse {
            line,
            message: format!("invalid {what} '{v}'"),
        };
        let num = |i: usize| -> Result<T> { field(i).parse::<T>().map_err(|_| bad(COLUMNS[i], field(i))) };
        let int = |i: usize| -> Result<u64> { field(i).parse::<u64>().map_err(|_| bad(COLUMNS[i], field(i))) };
        let exact_gnorm = if with_exact && !field(9).is_empty() {
            Some(field(9).parse::<T>().map_err(|_| bad("exact_gnorm", field(9)))?)
        } else {
            None
        };
        records.push(IterationRecord {
            k: int(0)? as usize,
            branch: field(1).parse().map_err(|_| bad("branch", field(1)))?,
            f: num(2)?,
            sigma: num(3)?,
            tau: num(4)?,
            h: num(5)?,
            gnorm: num(6)?,
            fe: int(7)?,
            re: int(8)?,
            exact_gnorm,
            reused_gradient: false,
            elapsed: 0.0,
        });
    }
    // reuse is implied by the previous branch
    for i in 1..records.len() {
        records[i].reused_gradient = records[i - 1].branch == Branch::U3;
    }
    Ok(records)
}
