use super::Scheme;
use crate::scalar::Real;

/// Worst-case evaluation counts to reach an `eps`-critical point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityBound<T> {
    pub fe: T,
    pub re: T,
}

/// Evaluation bounds for a run whose `tau` never exceeds `tau_max`:
///
/// ```text
/// N  = 2 log2(tau_max / tau0) + 12.5 tau_max (f0 - f_low) / eps^2
/// FE <= (FE_g + 2) N,  RE <= (RE_g + 1) N
/// ```
///
/// with `(FE_g, RE_g) = (d, d)` for intrinsic probes and `(d, 0)` for
/// extrinsic ones.
pub fn complexity_bound<T: Real>(
    tau_max: T,
    tau0: T,
    f0: T,
    f_low: T,
    epsilon: T,
    d: usize,
    scheme: Scheme,
) -> ComplexityBound<T> {
    let iterations =
        T::lit(2.0) * (tau_max / tau0).log2() + T::lit(12.5) * tau_max * (f0 - f_low) / (epsilon * epsilon);
    let fe_g = T::from_usize_lossy(d);
    let re_g = T::from_usize_lossy(scheme.retractions_per_gradient(d));
    ComplexityBound {
        fe: (fe_g + T::lit(2.0)) * iterations,
        re: (re_g + T::one()) * iterations,
    }
}
