//! Decompositions of SaS processes into independent components.
//!
//! A decomposition writes `X = X^(1) + ... + X^(n)` with independent SaS
//! components.  In spectral terms each component is `r_k * f` for a weight
//! family with `sum_k |r_k(s)|^alpha = 1` at every point, and the weights are
//! measurable with respect to the *ratio partition* — the grouping of points
//! by projective equivalence of their spectral columns.  That structure makes
//! components constructible, verifiable, and recoverable from canonical
//! masses.

use crate::error::{Error, Result};
use crate::rep::{match_atoms, Alpha, CanonicalSpectralMeasure, FinitePointSpace, SpectralRep};

/// Tolerance on the pointwise norm constraint `sum_k |r_k|^alpha = 1`.
pub const WEIGHT_NORM_TOL: f64 = 1e-9;

/// Relative threshold below which an increment entry counts as zero.
const SUPPORT_EPS: f64 = 1e-12;

/// A partition of point labels into disjoint covering blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    blocks: Vec<Vec<String>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<String>>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::EmptyInput("partition block"));
        }
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            for p in b {
                if !seen.insert(p.clone()) {
                    return Err(Error::DuplicateLabel(p.clone()));
                }
            }
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn block_containing(&self, label: &str) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.iter().any(|p| p == label))
    }

    /// True when every block of `self` is contained in one block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| match other.block_containing(&b[0]) {
                Some(i) => b.iter().all(|p| other.block_containing(p) == Some(i)),
                None => false,
            })
    }
}

/// Component weights: one vector over the points of a representation per
/// component.  Entries live in [-1, 1]; the pointwise norm constraint is
/// checked against a concrete representation in [`make_components`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFamily {
    rows: Vec<Vec<f64>>,
}

impl WeightFamily {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("weight family"));
        }
        let width = rows[0].len();
        if width == 0 {
            return Err(Error::EmptyInput("weight vector"));
        }
        for row in &rows {
            if row.len() != width {
                return Err(Error::DimensionMismatch("ragged weight family".to_string()));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("weight family"));
            }
        }
        Ok(WeightFamily { rows })
    }

    /// The even split into `n` components: every weight `n^(-1/alpha)`.
    pub fn uniform(n: usize, n_points: usize, alpha: Alpha) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("weight family"));
        }
        let r = (n as f64).powf(-1.0 / alpha.get());
        WeightFamily::new(vec![vec![r; n_points]; n])
    }

    /// Indicator weights of a two-set split `{A, complement}` given by the
    /// membership mask of A.
    pub fn indicator(mask: &[bool]) -> Result<Self> {
        let a: Vec<f64> = mask.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
        let b: Vec<f64> = mask.iter().map(|&m| if m { 0.0 } else { 1.0 }).collect();
        WeightFamily::new(vec![a, b])
    }

    pub fn count(&self) -> usize {
        self.rows.len()
    }

    pub fn point_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    fn check_norm(&self, alpha: Alpha, points: &[String]) -> Result<()> {
        self.check_norm_exponent(alpha.get(), points)
    }

    pub(crate) fn check_norm_exponent(&self, a: f64, points: &[String]) -> Result<()> {
        for s in 0..self.point_dim() {
            let norm: f64 = self.rows.iter().map(|r| r[s].abs().powf(a)).sum();
            if (norm - 1.0).abs() > WEIGHT_NORM_TOL {
                return Err(Error::WeightNormViolation {
                    point: points[s].clone(),
                    norm,
                });
            }
        }
        Ok(())
    }
}

/// Group points by projective equivalence of their spectral columns: two
/// points share a block exactly when their columns are proportional by some
/// nonzero scalar (signs included — every pairwise ratio of spectral values
/// is invariant under global negation of a column).
pub fn ratio_partition(rep: &SpectralRep) -> Partition {
    let (canon, assignment) = rep.canonicalize_with_assignment();
    let mut blocks = vec![Vec::new(); canon.atoms.len()];
    for (s, &a) in assignment.iter().enumerate() {
        blocks[a].push(rep.space().label(s).to_string());
    }
    Partition { blocks }
}

/// A representation is minimal when no two columns are proportional, i.e.
/// the ratio partition is discrete.
pub fn is_minimal(rep: &SpectralRep) -> bool {
    ratio_partition(rep).is_discrete()
}

/// Collapse each ratio-partition block onto its canonical atom: one point per
/// block, unit weight, column `direction * mass^(1/alpha)`.  Returns the
/// collapsed representation (same law) and the collapse partition, in atom
/// order; the collapsed point inherits the label of the block's first
/// original point.
pub fn minimalize(rep: &SpectralRep) -> (SpectralRep, Partition) {
    let (canon, assignment) = rep.canonicalize_with_assignment();
    let mut blocks = vec![Vec::new(); canon.atoms.len()];
    for (s, &a) in assignment.iter().enumerate() {
        blocks[a].push(rep.space().label(s).to_string());
    }
    let labels: Vec<String> = blocks.iter().map(|b| b[0].clone()).collect();
    let minimal = canon
        .to_rep(rep.alpha(), Some(labels))
        .expect("collapsed representation is always valid");
    (minimal, Partition { blocks })
}

/// Build the independent components `r_k * f`.  Zero-weight points drop out
/// of a component's support; weights and times are inherited.
pub fn make_components(rep: &SpectralRep, family: &WeightFamily) -> Result<Vec<SpectralRep>> {
    if family.point_dim() != rep.n_points() {
        return Err(Error::DimensionMismatch(format!(
            "weight family over {} points, representation has {}",
            family.point_dim(),
            rep.n_points()
        )));
    }
    family.check_norm(rep.alpha(), rep.space().points())?;
    let mut comps = Vec::with_capacity(family.count());
    for (k, r) in family.rows().iter().enumerate() {
        let support: Vec<usize> = (0..rep.n_points()).filter(|&s| r[s] != 0.0).collect();
        if support.is_empty() {
            return Err(Error::EmptyComponent(k));
        }
        let points: Vec<String> = support
            .iter()
            .map(|&s| rep.space().label(s).to_string())
            .collect();
        let weights: Vec<f64> = support.iter().map(|&s| rep.space().weight(s)).collect();
        let values: Vec<Vec<f64>> = rep
            .values()
            .iter()
            .map(|row| support.iter().map(|&s| r[s] * row[s]).collect())
            .collect();
        comps.push(SpectralRep::new(
            rep.alpha(),
            FinitePointSpace::new(points, weights)?,
            rep.times().to_vec(),
            values,
        )?);
    }
    Ok(comps)
}

/// Does the independent sum of `comps` have the law of `rep`?
pub fn verify_decomposition(rep: &SpectralRep, comps: &[SpectralRep], tol: f64) -> Result<bool> {
    let union = SpectralRep::disjoint_union(comps)?;
    let relabelled = SpectralRep::new(
        rep.alpha(),
        union.space().clone(),
        rep.times().to_vec(),
        union.values().to_vec(),
    )?;
    rep.same_process(&relabelled, tol)
}

/// Recover the unique nonnegative ratio-partition-measurable weights of a
/// component.  For each canonical atom `B`, the weight is
/// `(m_Z(B)/m_X(B))^(1/alpha)`; the candidate is a component exactly when
/// all of its directions occur in `rep` and no atom mass exceeds the
/// original's (within `tol`).
pub fn recover_weights(rep: &SpectralRep, component: &SpectralRep, tol: f64) -> Result<Vec<f64>> {
    if rep.times() != component.times() {
        return Err(Error::TimesMismatch);
    }
    if rep.alpha().get() != component.alpha().get() {
        return Err(Error::AlphaMismatch(
            rep.alpha().get(),
            component.alpha().get(),
        ));
    }
    let (canon_x, assignment) = rep.canonicalize_with_assignment();
    let canon_z = component.canonicalize();
    let matching = match_atoms(&canon_x, &canon_z);
    for (j, hit) in matching.assignment.iter().enumerate() {
        if hit.is_none() {
            return Err(Error::NotAComponent {
                direction: canon_z.atoms[j].direction.clone(),
            });
        }
    }
    let inv_alpha = 1.0 / rep.alpha().get();
    let mut per_atom = Vec::with_capacity(canon_x.atoms.len());
    for (atom, &mz) in canon_x.atoms.iter().zip(&matching.aggregated) {
        if mz > atom.mass * (1.0 + tol) {
            return Err(Error::NotAComponent {
                direction: atom.direction.clone(),
            });
        }
        per_atom.push((mz / atom.mass).powf(inv_alpha).min(1.0));
    }
    Ok(assignment.iter().map(|&a| per_atom[a]).collect())
}

/// The maximal common component of two processes on the same index set: at
/// every direction both canonical measures charge, take the smaller mass.
/// Returns `None` when the direction sets are disjoint (no nontrivial common
/// component exists).  Atoms of relative mass below `tol` are treated as
/// absent.
pub fn common_component(a: &SpectralRep, b: &SpectralRep, tol: f64) -> Result<Option<SpectralRep>> {
    if a.times() != b.times() {
        return Err(Error::TimesMismatch);
    }
    if a.alpha().get() != b.alpha().get() {
        return Err(Error::AlphaMismatch(a.alpha().get(), b.alpha().get()));
    }
    let canon_a = a.canonicalize();
    let canon_b = b.canonicalize();
    let matching = match_atoms(&canon_a, &canon_b);
    let floor = tol * canon_a.total_mass.max(canon_b.total_mass);
    let mut shared = Vec::new();
    for (atom, &mb) in canon_a.atoms.iter().zip(&matching.aggregated) {
        let m = atom.mass.min(mb);
        if m > floor {
            let mut shared_atom = atom.clone();
            shared_atom.mass = m;
            shared.push(shared_atom);
        }
    }
    if shared.is_empty() {
        return Ok(None);
    }
    let total_mass = shared.iter().map(|x| x.mass).sum();
    let measure = CanonicalSpectralMeasure {
        times: a.times().to_vec(),
        atoms: shared,
        total_mass,
    };
    let labels = (0..measure.atoms.len()).map(|i| format!("c{i}")).collect();
    Ok(Some(measure.to_rep(a.alpha(), Some(labels))?))
}

/// Representation of a process with independent increments observed at
/// `times` (all strictly positive, strictly increasing), where `m[i]` is the
/// accumulated scale mass on `(0, times[i]]` (`m(0) = 0` implicitly,
/// nondecreasing).  Points are the increment intervals with positive mass;
/// `f_t = 1` on intervals contained in `(0, t]`.
pub fn independent_increments_rep(times: &[f64], m: &[f64], alpha: Alpha) -> Result<SpectralRep> {
    if times.is_empty() {
        return Err(Error::EmptyInput("times"));
    }
    if times.len() != m.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} times but {} mass values",
            times.len(),
            m.len()
        )));
    }
    if times.iter().any(|t| !t.is_finite()) || m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("increment data"));
    }
    if times[0] <= 0.0 {
        return Err(Error::NonMonotone(format!(
            "first time {} must exceed 0",
            times[0]
        )));
    }
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::NonMonotone(format!(
                "times not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
    }
    if m[0] < 0.0 {
        return Err(Error::NonMonotone(format!(
            "mass function starts below 0 at {}",
            m[0]
        )));
    }
    for w in m.windows(2) {
        if w[1] < w[0] {
            return Err(Error::NonMonotone(format!(
                "mass function decreases at {} -> {}",
                w[0], w[1]
            )));
        }
    }
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut kept = Vec::new(); // index of the increment each point represents
    let mut prev_t = 0.0;
    let mut prev_m = 0.0;
    for (i, (&t, &mi)) in times.iter().zip(m).enumerate() {
        let dm = mi - prev_m;
        if dm > 0.0 {
            points.push(format!("({prev_t},{t}]"));
            weights.push(dm);
            kept.push(i);
        }
        prev_t = t;
        prev_m = mi;
    }
    if points.is_empty() {
        return Err(Error::EmptyInput("increments with positive mass"));
    }
    let time_labels: Vec<String> = times.iter().map(|t| format!("{t}")).collect();
    let values: Vec<Vec<f64>> = (0..times.len())
        .map(|i| {
            kept.iter()
                .map(|&j| if j <= i { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    SpectralRep::new(
        alpha,
        FinitePointSpace::new(points, weights)?,
        time_labels,
        values,
    )
}

/// Decide whether the representation (times taken in listed order, starting
/// implicitly from zero) has independent increments: the increment columns
/// `f_{t_i} - f_{t_{i-1}}` must have pairwise disjoint supports.
pub fn has_independent_increments(rep: &SpectralRep) -> bool {
    let max_abs = rep
        .values()
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let threshold = SUPPORT_EPS * max_abs;
    let n_times = rep.n_times();
    for s in 0..rep.n_points() {
        let mut hits = 0;
        let mut prev = 0.0;
        for t in 0..n_times {
            let delta = rep.values()[t][s] - prev;
            if delta.abs() > threshold {
                hits += 1;
                if hits > 1 {
                    return false;
                }
            }
            prev = rep.values()[t][s];
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Alpha;
    use approx::assert_relative_eq;

    fn rep(
        alpha: f64,
        labels: &[&str],
        weights: &[f64],
        times: &[&str],
        rows: &[&[f64]],
    ) -> SpectralRep {
        SpectralRep::new(
            Alpha::new(alpha).unwrap(),
            FinitePointSpace::new(
                labels.iter().map(|s| s.to_string()).collect(),
                weights.to_vec(),
            )
            .unwrap(),
            times.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    // brute-force projective classification by cross-ratio comparison,
    // independent of the canonical-key machinery
    fn partition_oracle(r: &SpectralRep) -> Vec<Vec<String>> {
        let n = r.n_points();
        let proportional = |a: &[f64], b: &[f64]| {
            let mut ok = true;
            for i in 0..a.len() {
                for j in 0..a.len() {
                    let lhs = a[i] * b[j];
                    let rhs = a[j] * b[i];
                    if (lhs - rhs).abs() > 1e-9 * (lhs.abs() + rhs.abs() + 1e-30) {
                        ok = false;
                    }
                }
            }
            ok
        };
        let mut assigned = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<String>> = Vec::new();
        for s in 0..n {
            let col = r.column(s);
            let mut found = None;
            for (b, block) in blocks.iter().enumerate() {
                let first = r.space().index_of(&block[0]).unwrap();
                if proportional(&col, &r.column(first)) {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => {
                    assigned[s] = b;
                    blocks[b].push(r.space().label(s).to_string());
                }
                None => {
                    assigned[s] = blocks.len();
                    blocks.push(vec![r.space().label(s).to_string()]);
                }
            }
        }
        blocks
    }

    #[test]
    fn ratio_partition_groups_proportional_columns() {
        // (1,2), (-3,-6), (0,1): first two proportional (negative scalar)
        let r = rep(
            1.0,
            &["a", "b", "c"],
            &[1.0, 1.0, 1.0],
            &["t1", "t2"],
            &[&[1.0, -3.0, 0.0], &[2.0, -6.0, 1.0]],
        );
        let p = ratio_partition(&r);
        assert_eq!(p.len(), 2);
        assert_eq!(p.block_containing("a"), p.block_containing("b"));
        assert_ne!(p.block_containing("a"), p.block_containing("c"));
        // agreement with the cross-ratio oracle, as sets
        let mut got: Vec<Vec<String>> = p.blocks().to_vec();
        let mut expect = partition_oracle(&r);
        for b in got.iter_mut().chain(expect.iter_mut()) {
            b.sort();
        }
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn ratio_partition_matches_oracle_on_random_reps() {
        let mut state = 7u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for trial in 0..50 {
            let n = 2 + trial % 5;
            let t = 2 + trial % 3;
            let mut values = vec![vec![0.0; n]; t];
            for s in 0..n {
                if s > 0 && next() > 0.2 {
                    // make a scaled copy of an earlier column
                    let src = ((next().abs() * s as f64) as usize).min(s - 1);
                    let c = 0.3 + next().abs() * 2.0;
                    let sign = if next() > 0.0 { 1.0 } else { -1.0 };
                    for row in values.iter_mut() {
                        row[s] = sign * c * row[src];
                    }
                } else {
                    for row in values.iter_mut() {
                        row[s] = next() * 2.0;
                    }
                    values[s % t][s] += 1.5;
                }
            }
            let r = SpectralRep::new(
                Alpha::new(1.2).unwrap(),
                FinitePointSpace::new(
                    (0..n).map(|i| format!("p{i}")).collect(),
                    (0..n).map(|i| 0.5 + 0.1 * i as f64).collect(),
                )
                .unwrap(),
                (0..t).map(|i| format!("t{i}")).collect(),
                values,
            )
            .unwrap();
            let mut got: Vec<Vec<String>> = ratio_partition(&r).blocks().to_vec();
            let mut expect = partition_oracle(&r);
            for b in got.iter_mut().chain(expect.iter_mut()) {
                b.sort();
            }
            got.sort();
            expect.sort();
            assert_eq!(got, expect, "trial {trial}");
        }
    }

    #[test]
    fn minimalize_collapses_and_preserves_the_law() {
        let r = rep(
            1.5,
            &["a", "b", "c"],
            &[1.0, 2.0, 1.0],
            &["t1", "t2"],
            &[&[1.0, 2.0, 0.0], &[2.0, 4.0, 1.0]],
        );
        assert!(!is_minimal(&r));
        let (min, partition) = minimalize(&r);
        assert!(is_minimal(&min));
        assert_eq!(min.n_points(), 2);
        assert_eq!(partition.len(), 2);
        assert!(r.same_process(&min, 1e-9).unwrap());
        assert!(min.space().weights().iter().all(|&w| w == 1.0));
    }

    #[test]
    fn make_components_enforces_the_norm_constraint() {
        let r = rep(1.0, &["a", "b"], &[1.0, 1.0], &["t"], &[&[1.0, 2.0]]);
        let bad = WeightFamily::new(vec![vec![0.5, 0.5], vec![0.4, 0.5]]).unwrap();
        assert!(matches!(
            make_components(&r, &bad),
            Err(Error::WeightNormViolation { .. })
        ));
        let good = WeightFamily::new(vec![vec![0.5, 0.25], vec![0.5, 0.75]]).unwrap();
        let comps = make_components(&r, &good).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(verify_decomposition(&r, &comps, 1e-9).unwrap());
    }

    #[test]
    fn uniform_split_verifies_and_recovers() {
        let r = rep(
            1.5,
            &["a", "b", "c"],
            &[1.0, 0.5, 2.0],
            &["t1", "t2"],
            &[&[1.0, -0.3, 0.7], &[0.2, 1.1, -0.4]],
        );
        let fam = WeightFamily::uniform(3, 3, r.alpha()).unwrap();
        let comps = make_components(&r, &fam).unwrap();
        assert!(verify_decomposition(&r, &comps, 1e-9).unwrap());
        let expected = 3f64.powf(-1.0 / 1.5);
        for comp in &comps {
            let w = recover_weights(&r, comp, 1e-9).unwrap();
            for &x in &w {
                assert_relative_eq!(x, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rep_plus_extra_mass_is_not_a_decomposition() {
        let r = rep(1.0, &["a"], &[1.0], &["t"], &[&[1.0]]);
        let extra = rep(1.0, &["z"], &[0.5], &["t"], &[&[1.0]]);
        assert!(!verify_decomposition(&r, &[r.clone(), extra], 1e-9).unwrap());
    }

    #[test]
    fn foreign_direction_is_not_a_component() {
        let r = rep(
            1.0,
            &["a", "b"],
            &[1.0, 1.0],
            &["t1", "t2"],
            &[&[1.0, 0.0], &[0.0, 1.0]],
        );
        let z = rep(1.0, &["q"], &[0.2], &["t1", "t2"], &[&[1.0], &[1.0]]);
        assert!(matches!(
            recover_weights(&r, &z, 1e-9),
            Err(Error::NotAComponent { .. })
        ));
    }

    #[test]
    fn excess_mass_is_not_a_component() {
        let r = rep(1.0, &["a"], &[1.0], &["t"], &[&[1.0]]);
        let z = rep(1.0, &["a"], &[1.5], &["t"], &[&[1.0]]);
        assert!(matches!(
            recover_weights(&r, &z, 1e-9),
            Err(Error::NotAComponent { .. })
        ));
        // mass within (1 + tol) passes and clamps to weight 1
        let z_ok = rep(1.0, &["a"], &[1.0 + 1e-12], &["t"], &[&[1.0]]);
        let w = recover_weights(&r, &z_ok, 1e-9).unwrap();
        assert_eq!(w, vec![1.0]);
    }

    #[test]
    fn recovery_aggregates_non_constant_weights_blockwise() {
        // two proportional columns with different component weights: the
        // recovered block weight satisfies r^alpha * m_X = sum mu |r_k|^alpha |v|^alpha
        let alpha = 1.5f64;
        let r = rep(
            alpha,
            &["a", "b"],
            &[1.0, 1.0],
            &["t1", "t2"],
            &[&[1.0, 2.0], &[2.0, 4.0]],
        );
        let r1 = [0.9f64, 0.4f64];
        let fam = WeightFamily::new(vec![
            r1.to_vec(),
            r1.iter()
                .map(|x| (1.0 - x.powf(alpha)).powf(1.0 / alpha))
                .collect(),
        ])
        .unwrap();
        let comps = make_components(&r, &fam).unwrap();
        let recovered = recover_weights(&r, &comps[0], 1e-9).unwrap();
        // hand aggregation: m_X(B) = 5^(a/2) + 2^a 5^(a/2), m_Z likewise with r^a factors
        let va = 5f64.sqrt().powf(alpha);
        let vb = (2.0 * 5f64.sqrt()).powf(alpha);
        let expect =
            ((r1[0].powf(alpha) * va + r1[1].powf(alpha) * vb) / (va + vb)).powf(1.0 / alpha);
        for &w in &recovered {
            assert_relative_eq!(w, expect, epsilon = 1e-10);
        }
    }

    #[test]
    fn common_component_of_overlapping_processes() {
        // shared direction e1 with masses 1 vs 0.4; b has a private direction
        let a = rep(
            1.0,
            &["a1", "a2"],
            &[1.0, 1.0],
            &["t1", "t2"],
            &[&[1.0, 0.0], &[0.0, 1.0]],
        );
        let b = rep(
            1.0,
            &["b1", "b2"],
            &[0.4, 1.0],
            &["t1", "t2"],
            &[&[1.0, 1.0], &[0.0, 1.0]],
        );
        let common = common_component(&a, &b, 1e-9).unwrap().unwrap();
        let canon = common.canonicalize();
        assert_eq!(canon.atoms.len(), 1);
        assert_relative_eq!(canon.atoms[0].mass, 0.4, max_relative = 1e-12);
        // the common component is a component of both sides
        assert!(recover_weights(&a, &common, 1e-9).is_ok());
        assert!(recover_weights(&b, &common, 1e-9).is_ok());
    }

    #[test]
    fn disjoint_direction_sets_have_no_common_component() {
        let a = rep(1.0, &["a"], &[1.0], &["t1", "t2"], &[&[1.0], &[0.0]]);
        let b = rep(1.0, &["b"], &[1.0], &["t1", "t2"], &[&[0.0], &[1.0]]);
        assert!(common_component(&a, &b, 1e-9).unwrap().is_none());
    }

    #[test]
    fn increments_rep_matches_the_integrated_mass() {
        let r =
            independent_increments_rep(&[1.0, 2.0], &[1.0, 2.0], Alpha::new(1.0).unwrap()).unwrap();
        assert_eq!(r.n_points(), 2);
        assert_eq!(
            r.space().points(),
            &["(0,1]".to_string(), "(1,2]".to_string()]
        );
        assert_eq!(r.values(), &[vec![1.0, 0.0], vec![1.0, 1.0]]);
        // marginal scale at t_i equals m(t_i)
        assert_relative_eq!(r.scale_functional(&[1.0, 0.0]).unwrap(), 1.0);
        assert_relative_eq!(r.scale_functional(&[0.0, 1.0]).unwrap(), 2.0);
        assert!(has_independent_increments(&r));
    }

    #[test]
    fn flat_stretches_drop_out() {
        let r = independent_increments_rep(
            &[1.0, 2.0, 3.0],
            &[1.0, 1.0, 2.5],
            Alpha::new(0.8).unwrap(),
        )
        .unwrap();
        assert_eq!(r.n_points(), 2);
        assert_eq!(r.space().points()[1], "(2,3]");
        assert!(has_independent_increments(&r));
    }

    #[test]
    fn increments_validation() {
        let alpha = Alpha::new(1.0).unwrap();
        assert!(matches!(
            independent_increments_rep(&[2.0, 1.0], &[1.0, 2.0], alpha),
            Err(Error::NonMonotone(_))
        ));
        assert!(matches!(
            independent_increments_rep(&[1.0, 2.0], &[2.0, 1.0], alpha),
            Err(Error::NonMonotone(_))
        ));
        assert!(matches!(
            independent_increments_rep(&[0.0, 1.0], &[1.0, 2.0], alpha),
            Err(Error::NonMonotone(_))
        ));
    }

    #[test]
    fn overlapping_increments_are_detected() {
        // f_1 = (1,1), f_2 = (2,0): increments (1,1) and (1,-1) share support
        let r = rep(
            1.0,
            &["a", "b"],
            &[1.0, 1.0],
            &["1", "2"],
            &[&[1.0, 1.0], &[2.0, 0.0]],
        );
        assert!(!has_independent_increments(&r));
    }

    #[test]
    fn components_of_increment_processes_inherit_independence() {
        let r = independent_increments_rep(
            &[0.5, 1.5, 4.0],
            &[0.3, 1.1, 1.9],
            Alpha::new(1.5).unwrap(),
        )
        .unwrap();
        let fam = WeightFamily::new(vec![
            vec![0.9, 0.2, 0.5],
            (0..3)
                .map(|i| {
                    let r1: f64 = [0.9, 0.2, 0.5][i];
                    (1.0 - r1.powf(1.5)).powf(1.0 / 1.5)
                })
                .collect(),
        ])
        .unwrap();
        for comp in make_components(&r, &fam).unwrap() {
            assert!(has_independent_increments(&comp));
            assert!(recover_weights(&r, &comp, 1e-9).is_ok());
        }
    }
}
