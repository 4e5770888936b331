use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Cost of every solver on every problem. `t[p][s]` is `None` when solver
/// `s` did not solve problem `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub problems: Vec<String>,
    pub solvers: Vec<String>,
    pub t: Vec<Vec<Option<f64>>>,
    /// Best value found by any solver within budget, per problem.
    pub f_best: Vec<f64>,
}

impl ProfileTable {
    pub fn new(problems: Vec<String>, solvers: Vec<String>, t: Vec<Vec<Option<f64>>>, f_best: Vec<f64>) -> Result<Self> {
        let table = Self {
            problems,
            solvers,
            t,
            f_best,
        };
        table.validate()?;
        Ok(table)
    }

    /// Table without `f_best` information (set to NaN).
    pub fn from_costs(t: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let np = t.len();
        let ns = t.first().map_or(0, Vec::len);
        Self::new(
            (1..=np).map(|i| format!("p{i}")).collect(),
            (1..=ns).map(|i| format!("s{i}")).collect(),
            t,
            vec![f64::NAN; np],
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.t.len() != self.problems.len() || self.f_best.len() != self.problems.len() {
            return Err(Error::DimensionMismatch {
                expected: self.problems.len(),
                got: self.t.len(),
            });
        }
        for row in &self.t {
            if row.len() != self.solvers.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.solvers.len(),
                    got: row.len(),
                });
            }
            for c in row.iter().flatten() {
                if !(*c > 0.0 && c.is_finite()) {
                    return Err(Error::InvalidConfig(format!("costs must be positive and finite, got {c}")));
                }
            }
        }
        Ok(())
    }

    pub fn solved_count(&self, solver: usize) -> usize {
        self.t.iter().filter(|row| row[solver].is_some()).count()
    }

    /// Column of costs for one solver.
    pub fn column(&self, solver: usize) -> Vec<Option<f64>> {
        self.t.iter().map(|row| row[solver]).collect()
    }

    /// Writes `problem,solver,cost,solved`; unsolved entries have an empty
    /// cost.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["problem", "solver", "cost", "solved"])?;
        for (p, row) in self.problems.iter().zip(&self.t) {
            for (s, c) in self.solvers.iter().zip(row) {
                let cost = c.map(|v| v.to_string()).unwrap_or_default();
                w.write_record([p.as_str(), s.as_str(), cost.as_str(), if c.is_some() { "true" } else { "false" }])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table written by [`ProfileTable::write_csv`]. Problems and
    /// solvers keep their first-appearance order; `f_best` is unknown (NaN).
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(input);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["problem", "solver", "cost", "solved"] {
            return Err(Error::Parse {
                line: 1,
                message: format!("unexpected header {:?}", headers.iter().collect::<Vec<_>>()),
            });
        }
        let mut problems: Vec<String> = Vec::new();
        let mut solvers: Vec<String> = Vec::new();
        let mut entries = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line());
            let parse_err = |message: String| Error::Parse { line, message };
            let p = rec[0].to_string();
            let s = rec[1].to_string();
            let solved: bool = rec[3].parse().map_err(|_| parse_err(format!("bad solved flag '{}'", &rec[3])))?;
            let cost = if solved {
                Some(rec[2].parse::<f64>().map_err(|_| parse_err(format!("bad cost '{}'", &rec[2])))?)
            } else {
                None
            };
            let pi = position_or_push(&mut problems, p);
            let si = position_or_push(&mut solvers, s);
            entries.push((pi, si, cost, line));
        }
        let mut t = vec![vec![None; solvers.len()]; problems.len()];
        let mut seen = vec![vec![false; solvers.len()]; problems.len()];
        for (pi, si, cost, line) in entries {
            if seen[pi][si] {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate entry for ({}, {})", problems[pi], solvers[si]),
                });
            }
            seen[pi][si] = true;
            t[pi][si] = cost;
        }
        if let Some(pi) = seen.iter().position(|row| row.iter().any(|s| !s)) {
            return Err(Error::Parse {
                line: 0,
                message: format!("problem '{}' is missing a solver entry", problems[pi]),
            });
        }
        let np = problems.len();
        Self::new(problems, solvers, t, vec![f64::NAN; np])
    }
}

fn position_or_push(list: &mut Vec<String>, item: String) -> usize {
    match list.iter().position(|x| *x == item) {
        Some(i) => i,
        None => {
            list.push(item);
            list.len() - 1
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub solver: String,
    pub alpha: Vec<f64>,
    pub rho: Vec<f64>,
    /// Fraction of problems solved at all (the limit as alpha grows).
    pub solved_fraction: f64,
}

/// `rho_s(alpha)`: fraction of problems whose cost ratio to the best solver
/// is at most `alpha`.
pub fn profile_value(table: &ProfileTable, solver: usize, alpha: f64) -> f64 {
    let ratios = ratios(table, solver);
    let hits = ratios.iter().flatten().filter(|&&r| r <= alpha).count();
    hits as f64 / table.problems.len() as f64
}

fn ratios(table: &ProfileTable, solver: usize) -> Vec<Option<f64>> {
    table
        .t
        .iter()
        .map(|row| {
            let best = row.iter().flatten().copied().fold(f64::INFINITY, f64::min);
            // A solved entry is never smaller than the row minimum; exact
            // ties give a ratio of exactly 1.
            row[solver].map(|c| if c == best { 1.0 } else { c / best })
        })
        .collect()
}

pub fn build_profile(table: &ProfileTable, alpha_grid: &[f64]) -> Result<Vec<ProfileCurve>> {
    if table.problems.is_empty() {
        return Err(Error::EmptyProblemSet);
    }
    table.validate()?;
    let np = table.problems.len() as f64;
    Ok((0..table.solvers.len())
        .map(|s| {
            let r = ratios(table, s);
            let rho = alpha_grid
                .iter()
                .map(|&a| r.iter().flatten().filter(|&&x| x <= a).count() as f64 / np)
                .collect();
            ProfileCurve {
                solver: table.solvers[s].clone(),
                alpha: alpha_grid.to_vec(),
                rho,
                solved_fraction: table.solved_count(s) as f64 / np,
            }
        })
        .collect())
}

/// 200 geometrically spaced points from 1 to 32.
pub fn default_alpha_grid() -> Vec<f64> {
    let n = 200;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                32.0
            } else {
                32f64.powf(i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// Writes `solver,alpha,rho`.
pub fn write_profiles_csv<W: Write>(curves: &[ProfileCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["solver", "alpha", "rho"])?;
    for c in curves {
        for (a, r) in c.alpha.iter().zip(&c.rho) {
            w.write_record([c.solver.as_str(), &a.to_string(), &r.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> ProfileTable {
        // rows are problems, columns solvers
        ProfileTable::from_costs(vec![vec![Some(2.0), Some(3.0)], vec![Some(4.0), Some(3.0)]]).unwrap()
    }

    #[test]
    fn hand_computed_ratios() {
        let t = two_by_two();
        assert_eq!(profile_value(&t, 0, 1.0), 0.5);
        assert_eq!(profile_value(&t, 1, 1.0), 0.5);
        assert_eq!(profile_value(&t, 0, 1.4), 1.0);
        assert_eq!(profile_value(&t, 1, 1.4), 0.5);
        assert_eq!(profile_value(&t, 1, 1.5), 1.0);
        let curves = build_profile(&t, &[1.0, 1.4, 1.5]).unwrap();
        assert_eq!(curves[0].rho, vec![0.5, 1.0, 1.0]);
        assert_eq!(curves[1].rho, vec![0.5, 0.5, 1.0]);
    }

    #[test]
    fn single_solver_is_fraction_solved_at_one() {
        let t = ProfileTable::from_costs(vec![vec![Some(5.0)], vec![None], vec![Some(1.0)], vec![Some(7.0)]]).unwrap();
        assert_eq!(profile_value(&t, 0, 1.0), 0.75);
    }

    #[test]
    fn ties_count_for_everyone() {
        let t = ProfileTable::from_costs(vec![vec![Some(3.0), Some(3.0)], vec![None, None], vec![Some(0.1), Some(0.1)]])
            .unwrap();
        assert_eq!(profile_value(&t, 0, 1.0), 2.0 / 3.0);
        assert_eq!(profile_value(&t, 1, 1.0), 2.0 / 3.0);
    }

    #[test]
    fn unsolved_never_counts() {
        let t = ProfileTable::from_costs(vec![vec![Some(1.0), None]]).unwrap();
        assert_eq!(profile_value(&t, 1, 1e300), 0.0);
        let c = build_profile(&t, &default_alpha_grid()).unwrap();
        assert!(c[1].rho.iter().all(|&r| r == 0.0));
        assert_eq!(c[0].solved_fraction, 1.0);
    }

    #[test]
    fn empty_table_is_an_error() {
        let t = ProfileTable::from_costs(vec![]).unwrap();
        assert!(matches!(build_profile(&t, &[1.0]), Err(Error::EmptyProblemSet)));
    }

    #[test]
    fn invalid_costs_are_rejected() {
        assert!(ProfileTable::from_costs(vec![vec![Some(0.0)]]).is_err());
        assert!(ProfileTable::from_costs(vec![vec![Some(f64::INFINITY)]]).is_err());
        assert!(ProfileTable::from_costs(vec![vec![Some(1.0)], vec![Some(1.0), None]]).is_err());
    }

    #[test]
    fn alpha_grid_endpoints() {
        let g = default_alpha_grid();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[199], 32.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cost_table_csv_round_trip() {
        let t = ProfileTable::from_costs(vec![vec![Some(2.5), None], vec![Some(4.0), Some(3.0)]]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("problem,solver,cost,solved\np1,s1,2.5,true\np1,s2,,false\n"));
        let back = ProfileTable::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.t, t.t);
        assert_eq!(back.problems, t.problems);
    }

    #[test]
    fn cost_table_csv_errors_carry_line() {
        let text = "problem,solver,cost,solved\np1,s1,2,true\np1,s2,abc,true\n";
        match ProfileTable::read_csv(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn profile_csv_layout() {
        let curves = build_profile(&two_by_two(), &[1.0, 2.0]).unwrap();
        let mut buf = Vec::new();
        write_profiles_csv(&curves, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "solver,alpha,rho\ns1,1,0.5\ns1,2,1\ns2,1,0.5\ns2,2,1\n"
        );
    }
}
