//! Test problems: three matrix-manifold families with a fixed instance grid,
//! a suite of classical smooth Euclidean functions, and a sphere problem
//! that is only defined on the manifold.
//!
//! Every generator is a pure function of its seed.

mod dictionary;
mod euclidean_suite;
mod geodesic;
mod rotation_sync;
mod table;
mod top_singular;

pub use dictionary::{dictionary_learning, DictionaryLearning, DICT_DELTA, DICT_LAMBDA};
pub use euclidean_suite::{euclidean_function, euclidean_suite, EuclideanFunction, EuclideanKind, EUCLIDEAN_DIMS};
pub use geodesic::{sphere_geodesic, SphereGeodesic};
pub use rotation_sync::{rotation_synchronization, RotationSync, DEFAULT_ROTATION_NOISE};
pub use table::{TableRow, RIEMANNIAN_SUITE};
pub use top_singular::{top_singular_vectors, TopSingularVectors};

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::manifolds::Manifold;
use crate::objective::Objective;
use crate::rng::{self, derive_seed};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    TopSingularVectors,
    DictionaryLearning,
    RotationSynchronization,
    Euclidean(EuclideanKind),
    SphereGeodesic,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::TopSingularVectors => "topsv",
            Family::DictionaryLearning => "dictlearn",
            Family::RotationSynchronization => "rotsync",
            Family::Euclidean(k) => k.tag(),
            Family::SphereGeodesic => "sphere-geodesic",
        }
    }
}

/// Size parameters of an instance: generator parameters plus the ambient
/// (`n`) and manifold (`d`) dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub m1: usize,
    pub m2: usize,
    pub m3: Option<usize>,
    pub n: usize,
    pub d: usize,
}

#[derive(Clone)]
pub struct ProblemInstance<T: Real> {
    pub name: String,
    pub family: Family,
    pub manifold: Arc<dyn Manifold<T>>,
    pub objective: Arc<dyn Objective<T>>,
    pub dims: Dims,
    pub seed: u64,
    pub known_optimum: Option<T>,
    /// Planted solution when the generator has one.
    pub reference_point: Option<Vec<T>>,
    pub x0: Vec<T>,
}

impl<T: Real> fmt::Debug for ProblemInstance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("name", &self.name)
            .field("manifold", &self.manifold.name())
            .field("dims", &self.dims)
            .field("seed", &self.seed)
            .finish()
    }
}

impl<T: Real> ProblemInstance<T> {
    pub fn dim(&self) -> usize {
        self.dims.d
    }

    pub fn f0(&self) -> T {
        self.objective.value(&self.x0)
    }

    /// Riemannian gradient from the oracle, `Proj_x(grad f(x))`.
    pub fn riemannian_gradient(&self, x: &[T]) -> Option<Vec<T>> {
        let eg = self.objective.gradient(x)?;
        self.manifold.project(x, &eg).ok()
    }
}

/// Default starting point: a random tangent step away from a random point.
pub(crate) fn default_start<T: Real>(m: &dyn Manifold<T>, seed: u64) -> Vec<T> {
    let mut r = rng::seeded(derive_seed(seed, 0x5EED));
    let p = m.random_point(&mut r);
    let v = m.random_tangent(&p, &mut r);
    m.retract(&p, &v).expect("generated point has the manifold's length")
}

pub(crate) fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidProblem(msg()))
    }
}

pub(crate) fn cast_vec<T: Real>(v: &[f64]) -> Vec<T> {
    v.iter().map(|&x| T::lit(x)).collect()
}

#[derive(Debug, Clone)]
pub struct ProblemSuite<T: Real> {
    pub instances: Vec<ProblemInstance<T>>,
    pub seed: u64,
}

impl<T: Real> ProblemSuite<T> {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Writes `name,m1,m2,m3,n,d,seed` (empty `m3` when not applicable).
    pub fn write_metadata_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "m1", "m2", "m3", "n", "d", "seed"])?;
        for p in &self.instances {
            w.write_record([
                p.name.clone(),
                p.dims.m1.to_string(),
                p.dims.m2.to_string(),
                p.dims.m3.map(|v| v.to_string()).unwrap_or_default(),
                p.dims.n.to_string(),
                p.dims.d.to_string(),
                p.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The 45 matrix-manifold instances of the reference grid (15 per family).
/// Rotation synchronization uses [`DEFAULT_ROTATION_NOISE`].
pub fn riemannian_suite<T: Real>(seed: u64) -> Result<ProblemSuite<T>> {
    let mut instances = Vec::with_capacity(RIEMANNIAN_SUITE.len());
    for (i, row) in RIEMANNIAN_SUITE.iter().enumerate() {
        let s = derive_seed(seed, i as u64);
        let p = match row.family {
            Family::TopSingularVectors => top_singular_vectors(row.m1, row.m2, row.m3.unwrap_or(0), s)?,
            Family::DictionaryLearning => dictionary_learning(row.m1, row.m2, row.m3.unwrap_or(0), s)?,
            Family::RotationSynchronization => rotation_synchronization(row.m1, row.m2, DEFAULT_ROTATION_NOISE, s)?,
            _ => unreachable!("grid only lists matrix-manifold families"),
        };
        instances.push(p);
    }
    Ok(ProblemSuite { instances, seed })
}

/// Builds an instance from its name:
///
/// * `topsv-M1-M2-M3`, `dictlearn-M1-M2-M3`, `rotsync-M1-M2`
/// * `<euclidean kind>-nN`, e.g. `quad-n2`, `rosenbrock-n10`
/// * `sphere-geodesic-nN` (intrinsic-only objective)
pub fn by_name<T: Real>(name: &str, seed: u64) -> Result<ProblemInstance<T>> {
    let unknown = || Error::InvalidProblem(format!("unknown problem '{name}'"));
    let ints = |rest: &str| -> Result<Vec<usize>> {
        rest.split('-')
            .map(|t| t.parse::<usize>().map_err(|_| unknown()))
            .collect()
    };
    if let Some(rest) = name.strip_prefix("topsv-") {
        return match ints(rest)?.as_slice() {
            &[a, b, c] => top_singular_vectors(a, b, c, seed),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("dictlearn-") {
        return match ints(rest)?.as_slice() {
            &[a, b, c] => dictionary_learning(a, b, c, seed),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("rotsync-") {
        return match ints(rest)?.as_slice() {
            &[a, b] => rotation_synchronization(a, b, DEFAULT_ROTATION_NOISE, seed),
            _ => Err(unknown()),
        };
    }
    let (family, n) = name.rsplit_once("-n").ok_or_else(unknown)?;
    let n: usize = n.parse().map_err(|_| unknown())?;
    if family == "sphere-geodesic" {
        return sphere_geodesic(n, seed);
    }
    let kind = EuclideanKind::from_tag(family).ok_or_else(unknown)?;
    euclidean_function(kind, n, seed)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::linalg;

    /// Largest relative error between the oracle gradient and central
    /// differences in the ambient space, over `points` random points.
    pub fn oracle_gradient_error(p: &ProblemInstance<f64>, points: usize, seed: u64) -> f64 {
        let mut r = rng::seeded(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..points {
            let x = p.manifold.random_point(&mut r);
            let g = p.objective.gradient(&x).unwrap();
            let h = 1e-6;
            let mut fd = vec![0.0; x.len()];
            let mut xp = x.clone();
            for i in 0..x.len() {
                xp[i] = x[i] + h;
                let fp = p.objective.value(&xp);
                xp[i] = x[i] - h;
                let fm = p.objective.value(&xp);
                xp[i] = x[i];
                fd[i] = (fp - fm) / (2.0 * h);
            }
            let err = linalg::norm(&linalg::sub(&fd, &g)) / linalg::norm(&g).max(1e-12);
            worst = worst.max(err);
        }
        worst
    }
}
