//! Stationary SaS processes generated by finite torus actions.
//!
//! A flow here is an action of `Z_{m_1} x ... x Z_{m_d}` on the point space
//! by commuting permutations, together with a +-1 cocycle and the
//! Radon-Nikodym factors of a (possibly non-preserved) control measure.  The
//! induced representation
//!
//! ```text
//! f_t(s) = c_t(s) * (mu(phi_t(s)) / mu(s))^(1/alpha) * f_0(phi_t(s))
//! ```
//!
//! is stationary over the torus index set by construction, and conversely the
//! invariant structure of the action — its orbit partition after collapsing
//! projectively equivalent points — governs which decompositions exist:
//! component weights of stationary decompositions are constant on orbits, and
//! the process is indecomposable exactly when the collapsed action is
//! transitive.

use crate::decompose::{make_components, minimalize, recover_weights, Partition, WeightFamily};
use crate::error::{Error, Result};
use crate::rep::{Alpha, FinitePointSpace, SpectralRep};

/// A permutation of `0..n`, stored as the image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image table {map:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Joint orbits of a list of permutations, as sorted index blocks ordered by
/// their smallest element.
pub fn joint_orbits(n: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for p in perms {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, p.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    blocks.into_values().collect()
}

/// Enumerate the elements of `Z_{m_1} x ... x Z_{m_d}` in row-major order
/// (first coordinate most significant).
pub fn torus_elements(torus: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &m in torus {
        let mut next = Vec::with_capacity(out.len() * m);
        for prefix in &out {
            for i in 0..m {
                let mut e = prefix.clone();
                e.push(i);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

pub fn torus_label(element: &[usize]) -> String {
    element
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn torus_labels(torus: &[usize]) -> Vec<String> {
    torus_elements(torus)
        .iter()
        .map(|e| torus_label(e))
        .collect()
}

fn torus_size(torus: &[usize]) -> usize {
    torus.iter().product()
}

fn flat_index(element: &[usize], torus: &[usize]) -> usize {
    let mut idx = 0;
    for (e, m) in element.iter().zip(torus) {
        idx = idx * m + e;
    }
    idx
}

/// A nonsingular action of a finite torus on a weighted point space:
/// commuting generator permutations whose orders divide the torus factors,
/// with a +-1 cocycle given on the generators and extended multiplicatively.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowAction {
    space: FinitePointSpace,
    torus: Vec<usize>,
    generators: Vec<Permutation>,
    cocycles: Vec<Vec<i8>>,
}

impl FlowAction {
    pub fn new(
        space: FinitePointSpace,
        torus: Vec<usize>,
        generators: Vec<Permutation>,
        cocycles: Vec<Vec<i8>>,
    ) -> Result<Self> {
        if torus.is_empty() {
            return Err(Error::EmptyInput("torus factors"));
        }
        if torus.iter().any(|&m| m == 0) {
            return Err(Error::DimensionMismatch("torus factor of size 0".into()));
        }
        if generators.len() != torus.len() || cocycles.len() != torus.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} torus factors, {} generators, {} cocycles",
                torus.len(),
                generators.len(),
                cocycles.len()
            )));
        }
        let n = space.len();
        for g in &generators {
            if g.len() != n {
                return Err(Error::InvalidPermutation(format!(
                    "generator acts on {} points, space has {n}",
                    g.len()
                )));
            }
        }
        for (i, c) in cocycles.iter().enumerate() {
            if c.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "cocycle {i} has length {}, space has {n}",
                    c.len()
                )));
            }
            if c.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::CocycleInconsistent(format!(
                    "cocycle {i} has entries outside {{-1, +1}}"
                )));
            }
        }
        // group relations: commutation and per-factor orders
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if generators[i].compose(&generators[j]) != generators[j].compose(&generators[i]) {
                    return Err(Error::NonCommutingGenerators(i, j));
                }
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.pow(torus[i]).is_identity() {
                return Err(Error::GeneratorOrder(i));
            }
        }
        // cocycle closure around the group relations; with these satisfied the
        // multiplicative extension obeys the full cocycle identity
        for (i, (g, c)) in generators.iter().zip(&cocycles).enumerate() {
            for s in 0..n {
                let mut prod = 1i8;
                let mut cur = s;
                for _ in 0..torus[i] {
                    prod *= c[cur];
                    cur = g.apply(cur);
                }
                if prod != 1 {
                    return Err(Error::CocycleInconsistent(format!(
                        "generator {i} does not close over its torus factor at point {:?}",
                        space.label(s)
                    )));
                }
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                for s in 0..n {
                    let lhs = cocycles[i][s] * cocycles[j][generators[i].apply(s)];
                    let rhs = cocycles[j][s] * cocycles[i][generators[j].apply(s)];
                    if lhs != rhs {
                        return Err(Error::CocycleInconsistent(format!(
                            "generators {i} and {j} disagree at point {:?}",
                            space.label(s)
                        )));
                    }
                }
            }
        }
        Ok(FlowAction {
            space,
            torus,
            generators,
            cocycles,
        })
    }

    pub fn trivial_cocycles(torus: &[usize], n_points: usize) -> Vec<Vec<i8>> {
        vec![vec![1; n_points]; torus.len()]
    }

    pub fn space(&self) -> &FinitePointSpace {
        &self.space
    }

    pub fn torus(&self) -> &[usize] {
        &self.torus
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn cocycles(&self) -> &[Vec<i8>] {
        &self.cocycles
    }

    pub fn torus_size(&self) -> usize {
        torus_size(&self.torus)
    }

    /// Per torus element (row-major order): the image table of `phi_t` and
    /// the extended cocycle values `c_t(s)`.
    pub fn element_tables(&self) -> Vec<(Vec<usize>, Vec<i8>)> {
        let n = self.space.len();
        let mut out = Vec::with_capacity(self.torus_size());
        for element in torus_elements(&self.torus) {
            let mut phi: Vec<usize> = (0..n).collect();
            let mut coc = vec![1i8; n];
            for (dim, &steps) in element.iter().enumerate() {
                for _ in 0..steps {
                    // c_{t+g}(s) = c_t(s) * c_g(phi_t(s)); phi_{t+g} = phi_g . phi_t
                    for s in 0..n {
                        coc[s] *= self.cocycles[dim][phi[s]];
                        phi[s] = self.generators[dim].apply(phi[s]);
                    }
                }
            }
            out.push((phi, coc));
        }
        out
    }

    /// Orbit index blocks of the joint generator action.
    pub fn orbit_indices(&self) -> Vec<Vec<usize>> {
        joint_orbits(self.space.len(), &self.generators)
    }

    pub fn is_measure_preserving(&self, rtol: f64) -> bool {
        self.generators.iter().all(|g| {
            (0..self.space.len()).all(|s| {
                let a = self.space.weight(s);
                let b = self.space.weight(g.apply(s));
                (a - b).abs() <= rtol * a.abs().max(b.abs())
            })
        })
    }

    /// Restrict the action to a generator-closed set of point indices.
    pub fn restrict(&self, indices: &[usize]) -> Result<FlowAction> {
        let position: std::collections::HashMap<usize, usize> = indices
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let points: Vec<String> = indices
            .iter()
            .map(|&i| self.space.label(i).to_string())
            .collect();
        let weights: Vec<f64> = indices.iter().map(|&i| self.space.weight(i)).collect();
        let mut generators = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut map = Vec::with_capacity(indices.len());
            for &i in indices {
                let img = g.apply(i);
                match position.get(&img) {
                    Some(&new) => map.push(new),
                    None => {
                        return Err(Error::InvalidPermutation(format!(
                            "restriction set not closed under the action at {:?}",
                            self.space.label(i)
                        )))
                    }
                }
            }
            generators.push(Permutation::new(map)?);
        }
        let cocycles = self
            .cocycles
            .iter()
            .map(|c| indices.iter().map(|&i| c[i]).collect())
            .collect();
        FlowAction::new(
            FinitePointSpace::new(points, weights)?,
            self.torus.clone(),
            generators,
            cocycles,
        )
    }
}

/// A stationary process specification: a flow plus the initial spectral
/// function `f_0`, observed over the full torus index set.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryProcessSpec {
    alpha: Alpha,
    flow: FlowAction,
    f0: Vec<f64>,
}

impl StationaryProcessSpec {
    pub fn new(alpha: Alpha, flow: FlowAction, f0: Vec<f64>) -> Result<Self> {
        if f0.len() != flow.space().len() {
            return Err(Error::DimensionMismatch(format!(
                "f0 has length {}, space has {}",
                f0.len(),
                flow.space().len()
            )));
        }
        if f0.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("f0"));
        }
        // full support: every orbit must meet the support of f0, otherwise
        // some point would carry an all-zero column
        for orbit in flow.orbit_indices() {
            if orbit.iter().all(|&s| f0[s] == 0.0) {
                let label = flow.space().label(orbit[0]).to_string();
                return Err(Error::FullSupportViolation(label));
            }
        }
        Ok(StationaryProcessSpec { alpha, flow, f0 })
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn flow(&self) -> &FlowAction {
        &self.flow
    }

    pub fn f0(&self) -> &[f64] {
        &self.f0
    }
}

/// Materialize the representation `f_t = c_t (d mu.phi_t / d mu)^(1/alpha)
/// f_0 . phi_t` over the full torus, times labelled by torus elements in
/// row-major order.
pub fn build_flow_rep(spec: &StationaryProcessSpec) -> Result<SpectralRep> {
    let flow = &spec.flow;
    let n = flow.space().len();
    let inv_alpha = 1.0 / spec.alpha.get();
    let tables = flow.element_tables();
    let mut values = Vec::with_capacity(tables.len());
    for (phi, coc) in &tables {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let img = phi[s];
            let rn = (flow.space().weight(img) / flow.space().weight(s)).powf(inv_alpha);
            row.push(coc[s] as f64 * rn * spec.f0[img]);
        }
        values.push(row);
    }
    SpectralRep::new(
        spec.alpha,
        flow.space().clone(),
        torus_labels(&flow.torus),
        values,
    )
}

/// Is the process stationary over the declared torus?  True exactly when
/// shifting the time grid by each torus generator leaves the canonical
/// spectral measure unchanged.
pub fn is_stationary(rep: &SpectralRep, torus: &[usize], tol: f64) -> Result<bool> {
    let labels = torus_labels(torus);
    if rep.times() != labels.as_slice() {
        return Err(Error::NotATorusIndex(format!(
            "expected {} torus-element labels, got {:?}",
            labels.len(),
            rep.times()
        )));
    }
    let elements = torus_elements(torus);
    for dim in 0..torus.len() {
        let mut shifted_rows = Vec::with_capacity(elements.len());
        for e in &elements {
            let mut shifted = e.clone();
            shifted[dim] = (shifted[dim] + 1) % torus[dim];
            shifted_rows.push(rep.values()[flat_index(&shifted, torus)].clone());
        }
        let shifted_rep = SpectralRep::new(
            rep.alpha(),
            rep.space().clone(),
            rep.times().to_vec(),
            shifted_rows,
        )?;
        if !rep.same_process(&shifted_rep, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The partition of the point space into orbits of the action — the largest
/// structure component weights can depend on.
pub fn invariant_partition(flow: &FlowAction) -> Partition {
    let blocks: Vec<Vec<String>> = flow
        .orbit_indices()
        .into_iter()
        .map(|orbit| {
            orbit
                .into_iter()
                .map(|i| flow.space().label(i).to_string())
                .collect()
        })
        .collect();
    Partition::new(blocks).expect("orbits partition the space")
}

/// Build stationary components from orbit-constant weights.  Rejects weight
/// vectors that vary within an orbit (`NotInvariant`), since those cannot
/// produce stationary components.
pub fn stationary_components(
    spec: &StationaryProcessSpec,
    family: &WeightFamily,
) -> Result<Vec<SpectralRep>> {
    let flow = spec.flow();
    if family.point_dim() != flow.space().len() {
        return Err(Error::DimensionMismatch(format!(
            "weight family over {} points, space has {}",
            family.point_dim(),
            flow.space().len()
        )));
    }
    for (k, row) in family.rows().iter().enumerate() {
        for orbit in flow.orbit_indices() {
            let first = row[orbit[0]];
            if orbit
                .iter()
                .any(|&s| (row[s] - first).abs() > 1e-12 * (1.0 + first.abs()))
            {
                return Err(Error::NotInvariant {
                    component: k,
                    orbit: flow.space().label(orbit[0]).to_string(),
                });
            }
        }
    }
    let rep = build_flow_rep(spec)?;
    make_components(&rep, family)
}

/// Recover the component weights of a stationary component and certify that
/// they are orbit-constant.  A non-constant recovery would contradict the
/// structure theorem and is surfaced as [`Error::InvarianceViolation`].
pub fn recover_stationary_weights(
    spec: &StationaryProcessSpec,
    component: &SpectralRep,
    tol: f64,
) -> Result<Vec<f64>> {
    if !is_stationary(component, spec.flow().torus(), tol)? {
        return Err(Error::NotStationary);
    }
    let rep = build_flow_rep(spec)?;
    let weights = recover_weights(&rep, component, tol)?;
    for orbit in spec.flow().orbit_indices() {
        let first = weights[orbit[0]];
        for &s in &orbit {
            if (weights[s] - first).abs() > tol {
                return Err(Error::InvarianceViolation(format!(
                    "weight varies on the orbit of {:?}: {} vs {}",
                    spec.flow().space().label(orbit[0]),
                    first,
                    weights[s]
                )));
            }
        }
    }
    Ok(weights)
}

/// Verdict of the indecomposability test.  A decomposable process comes with
/// a witness: a proper invariant set of points whose indicator cuts off a
/// nontrivial independent stationary component.
#[derive(Debug, Clone, PartialEq)]
pub enum IndecomposabilityVerdict {
    Indecomposable,
    Decomposable { witness: Vec<String> },
}

impl IndecomposabilityVerdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, IndecomposabilityVerdict::Indecomposable)
    }
}

/// Decide indecomposability: collapse the representation to its minimal
/// form, carry the action over to the collapsed points, and test whether the
/// induced action is transitive.  One orbit means every decomposition is
/// trivial; more than one yields an explicit witness component, which is
/// verified nontrivial before returning.
pub fn is_indecomposable(
    spec: &StationaryProcessSpec,
    tol: f64,
) -> Result<IndecomposabilityVerdict> {
    let rep = build_flow_rep(spec)?;
    let (_minimal, partition) = minimalize(&rep);
    let n_blocks = partition.len();
    let block_of: Vec<usize> = (0..rep.n_points())
        .map(|s| {
            partition
                .block_containing(rep.space().label(s))
                .expect("collapse partition covers the space")
        })
        .collect();
    // induced generator permutations on collapsed points; shifts map
    // projective classes onto projective classes, so this must be well
    // defined — anything else is a bug, not an input problem
    let mut induced = Vec::with_capacity(spec.flow().generators().len());
    for g in spec.flow().generators() {
        let mut map = vec![usize::MAX; n_blocks];
        for s in 0..rep.n_points() {
            let b = block_of[s];
            let img = block_of[g.apply(s)];
            if map[b] == usize::MAX {
                map[b] = img;
            } else if map[b] != img {
                return Err(Error::TheoremBreach(
                    "shift does not descend to the collapsed space".into(),
                ));
            }
        }
        induced.push(
            Permutation::new(map).map_err(|e| {
                Error::TheoremBreach(format!("induced map is not a permutation: {e}"))
            })?,
        );
    }
    let orbits = joint_orbits(n_blocks, &induced);
    if orbits.len() == 1 {
        return Ok(IndecomposabilityVerdict::Indecomposable);
    }
    // witness: the preimage of the induced orbit holding the first point
    let chosen = orbits
        .iter()
        .find(|orbit| orbit.contains(&block_of[0]))
        .expect("orbits cover every block");
    let mut mask = vec![false; rep.n_points()];
    for s in 0..rep.n_points() {
        if chosen.contains(&block_of[s]) {
            mask[s] = true;
        }
    }
    let witness: Vec<String> = (0..rep.n_points())
        .filter(|&s| mask[s])
        .map(|s| rep.space().label(s).to_string())
        .collect();
    // certify the witness is a genuine nontrivial component
    let comps = make_components(&rep, &WeightFamily::indicator(&mask)?)?;
    recover_weights(&rep, &comps[0], tol)
        .map_err(|e| Error::TheoremBreach(format!("witness failed recovery: {e}")))?;
    let full_atoms = rep.canonicalize().atoms.len();
    let witness_atoms = comps[0].canonicalize().atoms.len();
    if witness_atoms >= full_atoms {
        return Err(Error::TheoremBreach(
            "witness component is a constant multiple of the process".into(),
        ));
    }
    Ok(IndecomposabilityVerdict::Decomposable { witness })
}

/// Build a mixed moving average: kernel sheets over `torus x V`, shifted in
/// the torus coordinate and mixed over `V` with weights `nu`.  Point labels
/// are `"<torus element>|v<sheet>"`.
pub fn mma_build(
    torus: &[usize],
    kernels: &[Vec<f64>],
    nu: &[f64],
    alpha: Alpha,
) -> Result<StationaryProcessSpec> {
    if torus.is_empty() {
        return Err(Error::EmptyInput("torus factors"));
    }
    if kernels.is_empty() {
        return Err(Error::EmptyInput("kernel sheets"));
    }
    if nu.len() != kernels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} mixing weights for {} sheets",
            nu.len(),
            kernels.len()
        )));
    }
    let size = torus_size(torus);
    for (v, kernel) in kernels.iter().enumerate() {
        if kernel.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "sheet {v} has {} entries, torus has {size}",
                kernel.len()
            )));
        }
        if kernel.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("kernel"));
        }
        if kernel.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroKernelSheet(v));
        }
    }
    for (v, &w) in nu.iter().enumerate() {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::NonPositiveWeight(format!("v{v}"), w));
        }
    }
    let labels = torus_labels(torus);
    let mut points = Vec::with_capacity(kernels.len() * size);
    let mut weights = Vec::with_capacity(kernels.len() * size);
    let mut f0 = Vec::with_capacity(kernels.len() * size);
    for (v, kernel) in kernels.iter().enumerate() {
        for (e, &x) in labels.iter().zip(kernel) {
            points.push(format!("{e}|v{v}"));
            weights.push(nu[v]);
            f0.push(x);
        }
    }
    let elements = torus_elements(torus);
    let mut generators = Vec::with_capacity(torus.len());
    for dim in 0..torus.len() {
        let mut map = Vec::with_capacity(points.len());
        for v in 0..kernels.len() {
            for e in &elements {
                let mut shifted = e.clone();
                shifted[dim] = (shifted[dim] + 1) % torus[dim];
                map.push(v * size + flat_index(&shifted, torus));
            }
        }
        generators.push(Permutation::new(map)?);
    }
    let n_points = points.len();
    let flow = FlowAction::new(
        FinitePointSpace::new(points, weights)?,
        torus.to_vec(),
        generators,
        FlowAction::trivial_cocycles(torus, n_points),
    )?;
    StationaryProcessSpec::new(alpha, flow, f0)
}

/// Split a measure-preserving flow along its orbits.  Each returned sub-spec
/// restricts the space, action, cocycle, and kernel to one orbit; their
/// independent sum reproduces the original process, and each part is
/// indecomposable (a transitive action stays transitive after collapsing).
pub fn ergodic_decomposition(spec: &StationaryProcessSpec) -> Result<Vec<StationaryProcessSpec>> {
    let flow = spec.flow();
    if !flow.is_measure_preserving(1e-12) {
        for g in flow.generators() {
            for s in 0..flow.space().len() {
                let a = flow.space().weight(s);
                let b = flow.space().weight(g.apply(s));
                if (a - b).abs() > 1e-12 * a.max(b) {
                    return Err(Error::NotMeasurePreserving(format!(
                        "weight of {:?} is {a}, its image carries {b}",
                        flow.space().label(s)
                    )));
                }
            }
        }
    }
    let mut parts = Vec::new();
    for orbit in flow.orbit_indices() {
        let sub_flow = flow.restrict(&orbit)?;
        let sub_f0 = orbit.iter().map(|&i| spec.f0[i]).collect();
        parts.push(StationaryProcessSpec::new(spec.alpha, sub_flow, sub_f0)?);
    }
    Ok(parts)
}
