//! Alpha-Frechet max-stable processes on finite spaces.
//!
//! The max-stable side mirrors the sum-stable side: a nonnegative spectral
//! matrix over a weighted point space determines the process
//!
//! ```text
//! P(Y_{t_1} <= y_1, ..., Y_{t_n} <= y_n)
//!     = exp( - sum_s max_i (f_{t_i}(s) / y_i)^alpha mu_s )
//! ```
//!
//! For `alpha < 2` the same data read as an SaS representation describes the
//! *associated* sum-stable process, and the two share spectral
//! representations: a decomposition is valid for one exactly when it is
//! valid for the other.  That bridge lets every decomposition operation
//! delegate to the sum-stable machinery.  The index is inessential on the
//! max-stable side — raising entries to the power `alpha` turns any
//! `alpha`-Frechet process into a 1-Frechet one — so `alpha >= 2` is allowed
//! here, and bridging calls first normalize the index to 1.

use crate::decompose::{recover_weights, WeightFamily};
use crate::error::{Error, Result};
use crate::rep::{
    canonicalize_matrix, measures_agree, validate_matrix, Alpha, CanonicalSpectralMeasure,
    FinitePointSpace, SpectralRep,
};
use crate::stationary::{is_indecomposable, IndecomposabilityVerdict, StationaryProcessSpec};

/// A finite extremal representation: nonnegative spectral values `f[t][s]`
/// over a weighted point space, with a positive (not necessarily < 2)
/// stability index.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxStableRep {
    alpha: f64,
    space: FinitePointSpace,
    times: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl MaxStableRep {
    pub fn new(
        alpha: f64,
        space: FinitePointSpace,
        times: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        validate_matrix(&space, &times, &values)?;
        for row in &values {
            for (s, &x) in row.iter().enumerate() {
                if x < 0.0 {
                    return Err(Error::NegativeEntry {
                        label: space.label(s).to_string(),
                        value: x,
                    });
                }
            }
        }
        Ok(MaxStableRep {
            alpha,
            space,
            times,
            values,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn space(&self) -> &FinitePointSpace {
        &self.space
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn n_points(&self) -> usize {
        self.space.len()
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn column(&self, s: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[s]).collect()
    }

    /// Canonical spectral measure of the associated unit directions; since
    /// entries are nonnegative, all directions lie in the nonnegative
    /// orthant and antipodal identification never fires.
    pub fn canonicalize(&self) -> CanonicalSpectralMeasure {
        canonicalize_matrix(self.alpha, self.space.weights(), &self.times, &self.values).0
    }

    /// `sigma_t^alpha = sum_s f_t(s)^alpha mu_s`, the scale power of the
    /// Frechet marginal at time index `t`: `P(Y_t <= y) =
    /// exp(-sigma_t^alpha y^-alpha)`.
    pub fn marginal_scale_power(&self, t: usize) -> f64 {
        self.values[t]
            .iter()
            .zip(self.space.weights())
            .map(|(&f, &mu)| f.powf(self.alpha) * mu)
            .sum()
    }

    pub fn disjoint_union(reps: &[MaxStableRep]) -> Result<MaxStableRep> {
        if reps.is_empty() {
            return Err(Error::EmptyInput("representation list"));
        }
        let alpha = reps[0].alpha;
        let times = reps[0].times.clone();
        for r in &reps[1..] {
            if r.alpha != alpha {
                return Err(Error::AlphaMismatch(alpha, r.alpha));
            }
            if r.times != times {
                return Err(Error::TimesMismatch);
            }
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (k, r) in reps.iter().enumerate() {
            for (p, &w) in r.space.points().iter().zip(r.space.weights()) {
                points.push(format!("{k}:{p}"));
                weights.push(w);
            }
        }
        let mut values = vec![Vec::with_capacity(points.len()); times.len()];
        for r in reps {
            for (t, row) in r.values.iter().enumerate() {
                values[t].extend_from_slice(row);
            }
        }
        MaxStableRep::new(
            alpha,
            FinitePointSpace::new(points, weights)?,
            times,
            values,
        )
    }
}

/// Exact joint distribution function at time labels `subset` and thresholds
/// `y`: `exp(-sum_s max_i (f_{t_i}(s)/y_i)^alpha mu_s)`.
pub fn frechet_fdd_cdf(rep: &MaxStableRep, subset: &[String], y: &[f64]) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::EmptyInput("time subset"));
    }
    if subset.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} times but {} thresholds",
            subset.len(),
            y.len()
        )));
    }
    for &yi in y {
        if !yi.is_finite() || yi <= 0.0 {
            return Err(Error::NonPositiveThreshold(yi));
        }
    }
    let mut rows = Vec::with_capacity(subset.len());
    for label in subset {
        match rep.times.iter().position(|t| t == label) {
            Some(i) => rows.push(i),
            None => return Err(Error::DanglingLabel(label.clone())),
        }
    }
    let mut exponent = 0.0;
    for s in 0..rep.n_points() {
        let mut m: f64 = 0.0;
        for (&t, &yi) in rows.iter().zip(y) {
            m = m.max(rep.values[t][s] / yi);
        }
        exponent += m.powf(rep.alpha) * rep.space.weight(s);
    }
    Ok((-exponent).exp())
}

/// Reinterpret a nonnegative SaS representation as the extremal
/// representation of its associated max-stable process.  Identity on the
/// data.
pub fn associate(rep: &SpectralRep) -> Result<MaxStableRep> {
    MaxStableRep::new(
        rep.alpha().get(),
        rep.space().clone(),
        rep.times().to_vec(),
        rep.values().to_vec(),
    )
}

/// Reinterpret an extremal representation with `alpha < 2` as the spectral
/// representation of its associated SaS process.  Inverse of [`associate`].
pub fn deassociate(rep: &MaxStableRep) -> Result<SpectralRep> {
    SpectralRep::new(
        Alpha::new(rep.alpha)?,
        rep.space.clone(),
        rep.times.clone(),
        rep.values.clone(),
    )
}

/// Renormalize the index to 1: entries become `f^alpha`, weights stay, and
/// the law transports through `Y -> Y^alpha`, i.e.
/// `P(Y' <= y^alpha) = P(Y <= y)` jointly.
pub fn alpha_power_transform(rep: &MaxStableRep) -> MaxStableRep {
    MaxStableRep {
        alpha: 1.0,
        space: rep.space.clone(),
        times: rep.times.clone(),
        values: rep
            .values
            .iter()
            .map(|row| row.iter().map(|&x| x.powf(rep.alpha)).collect())
            .collect(),
    }
}

fn bridge_to_sas(rep: &MaxStableRep) -> Result<SpectralRep> {
    if rep.alpha < 2.0 {
        deassociate(rep)
    } else {
        deassociate(&alpha_power_transform(rep))
    }
}

/// Equality in distribution of two max-stable processes over the same
/// times.  Decided through the association bridge; indices `>= 2` are first
/// normalized to 1 on both sides.
pub fn max_same_process(a: &MaxStableRep, b: &MaxStableRep, tol: f64) -> Result<bool> {
    if a.times != b.times {
        return Err(Error::TimesMismatch);
    }
    if a.alpha != b.alpha {
        return Err(Error::AlphaMismatch(a.alpha, b.alpha));
    }
    if a.alpha < 2.0 {
        deassociate(a)?.same_process(&deassociate(b)?, tol)
    } else {
        // direct measure comparison after index normalization
        Ok(measures_agree(
            &alpha_power_transform(a).canonicalize(),
            &alpha_power_transform(b).canonicalize(),
            tol,
        ))
    }
}

/// Does the independent maximum of `comps` have the law of `rep`?  The max
/// of independent alpha-Frechet processes has the concatenated extremal
/// representation, so this reduces to [`max_same_process`] against the
/// disjoint union.
pub fn verify_max_decomposition(
    rep: &MaxStableRep,
    comps: &[MaxStableRep],
    tol: f64,
) -> Result<bool> {
    let union = MaxStableRep::disjoint_union(comps)?;
    let relabelled = MaxStableRep::new(
        rep.alpha,
        union.space.clone(),
        rep.times.clone(),
        union.values.clone(),
    )?;
    max_same_process(rep, &relabelled, tol)
}

/// Cut `rep` into max-components along nonnegative weight rows `r_k` with
/// `sum_k r_k(s)^alpha = 1` at every point.  Component `k` keeps the points
/// where `r_k > 0` and scales the spectral values by `r_k`.
pub fn make_max_components(rep: &MaxStableRep, family: &WeightFamily) -> Result<Vec<MaxStableRep>> {
    if family.point_dim() != rep.n_points() {
        return Err(Error::DimensionMismatch(format!(
            "weight family over {} points, representation has {}",
            family.point_dim(),
            rep.n_points()
        )));
    }
    for row in family.rows() {
        for (s, &r) in row.iter().enumerate() {
            if r < 0.0 {
                return Err(Error::NegativeEntry {
                    label: rep.space.label(s).to_string(),
                    value: r,
                });
            }
        }
    }
    family.check_norm_exponent(rep.alpha, rep.space.points())?;
    let mut comps = Vec::with_capacity(family.count());
    for (k, r) in family.rows().iter().enumerate() {
        let support: Vec<usize> = (0..rep.n_points()).filter(|&s| r[s] != 0.0).collect();
        if support.is_empty() {
            return Err(Error::EmptyComponent(k));
        }
        let points: Vec<String> = support
            .iter()
            .map(|&s| rep.space.label(s).to_string())
            .collect();
        let weights: Vec<f64> = support.iter().map(|&s| rep.space.weight(s)).collect();
        let values: Vec<Vec<f64>> = rep
            .values
            .iter()
            .map(|row| support.iter().map(|&s| r[s] * row[s]).collect())
            .collect();
        comps.push(MaxStableRep::new(
            rep.alpha,
            FinitePointSpace::new(points, weights)?,
            rep.times.clone(),
            values,
        )?);
    }
    Ok(comps)
}

/// Recover the weight vector `r` of a max-component.  Delegates to the
/// sum-stable recovery through the association bridge; for `alpha >= 2`
/// both sides are first normalized to index 1 and the recovered weights are
/// mapped back through `r = r_1^(1/alpha)`.
pub fn recover_max_weights(
    rep: &MaxStableRep,
    component: &MaxStableRep,
    tol: f64,
) -> Result<Vec<f64>> {
    if rep.times != component.times {
        return Err(Error::TimesMismatch);
    }
    if rep.alpha != component.alpha {
        return Err(Error::AlphaMismatch(rep.alpha, component.alpha));
    }
    if rep.alpha < 2.0 {
        recover_weights(&deassociate(rep)?, &deassociate(component)?, tol)
    } else {
        let r1 = recover_weights(&bridge_to_sas(rep)?, &bridge_to_sas(component)?, tol)?;
        Ok(r1.iter().map(|&x| x.powf(1.0 / rep.alpha)).collect())
    }
}

/// Indecomposability of a stationary max-stable process given by a flow
/// with trivial cocycle and nonnegative kernel.  The verdict transports
/// through association and is decided by the sum-stable orbit criterion.
pub fn is_indecomposable_max(
    spec: &StationaryProcessSpec,
    tol: f64,
) -> Result<IndecomposabilityVerdict> {
    for (s, &x) in spec.f0().iter().enumerate() {
        if x < 0.0 {
            return Err(Error::NegativeEntry {
                label: spec.flow().space().label(s).to_string(),
                value: x,
            });
        }
    }
    if spec
        .flow()
        .cocycles()
        .iter()
        .any(|c| c.iter().any(|&x| x != 1))
    {
        return Err(Error::CocycleInconsistent(
            "the max-stable bridge requires a trivial cocycle".into(),
        ));
    }
    is_indecomposable(spec, tol)
}
