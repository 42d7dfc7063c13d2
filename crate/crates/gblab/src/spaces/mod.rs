//! Norm oracles for the explicit sequence-space constructions.
//!
//! Each `SpaceSpec` describes one space (plus parameters) over a finite index
//! window; `compile` turns it into an immutable `NormOracle` that evaluates
//! the exact norm of any finitely supported coefficient vector in the space's
//! basis. Evaluation cost is O(s log s) in the support size, never in the
//! window.

mod parse;

pub use parse::parse_space;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sparse::{Field, Index, IndexSet, SparseVector};

/// Window used when a space expression omits `window=`.
pub const DEFAULT_WINDOW: Index = 4096;

/// Base of the logarithm used by the log-democratic weight and everywhere a
/// growth rate is reported. Only asymptotic orders matter, so this is a
/// compile-time constant rather than a runtime knob.
pub const LOG_BASE: f64 = std::f64::consts::E;

/// log in base [`LOG_BASE`].
pub fn log_w(x: f64) -> f64 {
    x.ln() / LOG_BASE.ln()
}

/// Exponent of an ℓᵖ norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PValue {
    Finite(f64),
    Infinity,
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Finite(p) => write!(f, "{p}"),
            PValue::Infinity => write!(f, "inf"),
        }
    }
}

/// Choice of the slowly growing sequence for the block-functional space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CSequence {
    /// c_j = min(j, max(1, ⌈log(1+j)⌉)), then normalized. The default.
    LogCeil,
    /// c_j = j.
    Identity,
    /// Explicit prefix; must cover every block inside the window.
    Explicit(Vec<f64>),
}

impl fmt::Display for CSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSequence::LogCeil => write!(f, "log"),
            CSequence::Identity => write!(f, "identity"),
            CSequence::Explicit(v) => {
                write!(f, "explicit:")?;
                for (n, c) in v.iter().enumerate() {
                    if n > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Declarative description of one space construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SpaceSpec {
    /// Ambient ℓᵖ with the canonical basis.
    Lp { p: PValue, window: Index },
    /// Span of x_n = e_n − ½(e_{2n} + e_{2n+1}) in ℓ¹, evaluated by ambient
    /// expansion.
    Lindenstrauss { window: Index },
    /// Span of x_1 = e_1, x_n = e_n − e_{n−1} in ℓ¹, evaluated by ambient
    /// expansion.
    Difference { window: Index },
    /// max of the ℓᵖ norm and the sup of weighted partial sums
    /// |Σ_{n≤m} x_n n^{−1/p′}|.
    Kt { p: f64, window: Index },
    /// sup over m of (sum of the m largest magnitudes)/(1+log m)^α.
    LogDem { alpha: f64, window: Index },
    /// max of the sup norm and the block functionals
    /// (c_j/2j)|Σ_{i∈S_j, i≤n} (−1)^i x_i| over blocks S_j = {5^j+1..5^j+2j}.
    Counterexample { c: CSequence, window: Index },
    /// Interleaved direct sum: odd indices carry the left space, even the
    /// right, with norm ‖left‖ + ‖right‖.
    DirectSum {
        left: Box<SpaceSpec>,
        right: Box<SpaceSpec>,
    },
}

impl SpaceSpec {
    /// Max basis index supported by this spec.
    pub fn window(&self) -> Index {
        match self {
            SpaceSpec::Lp { window, .. }
            | SpaceSpec::Lindenstrauss { window }
            | SpaceSpec::Difference { window }
            | SpaceSpec::Kt { window, .. }
            | SpaceSpec::LogDem { window, .. }
            | SpaceSpec::Counterexample { window, .. } => *window,
            SpaceSpec::DirectSum { left, right } => {
                (2 * left.window() - 1).max(2 * right.window())
            }
        }
    }

    /// Short name of the outermost variant, used for config maps and output
    /// paths.
    pub fn variant_name(&self) -> &'static str {
        match self {
            SpaceSpec::Lp { .. } => "lp",
            SpaceSpec::Lindenstrauss { .. } => "lindenstrauss",
            SpaceSpec::Difference { .. } => "difference",
            SpaceSpec::Kt { .. } => "kt",
            SpaceSpec::LogDem { .. } => "logdem",
            SpaceSpec::Counterexample { .. } => "counterexample",
            SpaceSpec::DirectSum { .. } => "directsum",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let reject = |msg: String| Err(Error::InvalidSpec(msg));
        match self {
            SpaceSpec::Lp { p, window } => {
                if let PValue::Finite(p) = p {
                    if !(p.is_finite() && *p >= 1.0) {
                        return reject(format!("lp requires p >= 1, got {p}"));
                    }
                }
                if *window < 1 {
                    return reject("window must be >= 1".into());
                }
            }
            SpaceSpec::Lindenstrauss { window } | SpaceSpec::Difference { window } => {
                if *window < 1 {
                    return reject("window must be >= 1".into());
                }
            }
            SpaceSpec::Kt { p, window } => {
                if !(p.is_finite() && *p > 1.0) {
                    return reject(format!("kt requires 1 < p < inf, got {p}"));
                }
                if *window < 1 {
                    return reject("window must be >= 1".into());
                }
            }
            SpaceSpec::LogDem { alpha, window } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha <= 1.0) {
                    return reject(format!("logdem requires alpha in (0, 1], got {alpha}"));
                }
                if *window < 1 {
                    return reject("window must be >= 1".into());
                }
            }
            SpaceSpec::Counterexample { c, window } => {
                if *window < 1 {
                    return reject("window must be >= 1".into());
                }
                materialize_c(c, *window)?;
            }
            SpaceSpec::DirectSum { left, right } => {
                left.validate()?;
                right.validate()?;
            }
        }
        Ok(())
    }

    /// Compile into a norm oracle over the given scalar field.
    pub fn compile(&self, field: Field) -> Result<NormOracle> {
        self.validate()?;
        let cseq = match self {
            SpaceSpec::Counterexample { c, window } => Some(materialize_c(c, *window)?),
            _ => None,
        };
        let parts = match self {
            SpaceSpec::DirectSum { left, right } => Some((
                Box::new(left.compile(field)?),
                Box::new(right.compile(field)?),
            )),
            _ => None,
        };
        Ok(NormOracle {
            spec: self.clone(),
            field,
            cseq,
            parts,
        })
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Lp { p, window } => write!(f, "lp(p={p}, window={window})"),
            SpaceSpec::Lindenstrauss { window } => write!(f, "lindenstrauss(window={window})"),
            SpaceSpec::Difference { window } => write!(f, "difference(window={window})"),
            SpaceSpec::Kt { p, window } => write!(f, "kt(p={p}, window={window})"),
            SpaceSpec::LogDem { alpha, window } => {
                write!(f, "logdem(alpha={alpha}, window={window})")
            }
            SpaceSpec::Counterexample { c, window } => {
                write!(f, "counterexample(c={c}, window={window})")
            }
            SpaceSpec::DirectSum { left, right } => write!(f, "directsum({left}, {right})"),
        }
    }
}

/// Normalized block-weight sequence for the counterexample space: values
/// c′_1..c′_jmax for every block that starts inside the window.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockWeights {
    pub values: Vec<f64>,
}

impl BlockWeights {
    /// c′_j, 1-based.
    pub fn value(&self, j: usize) -> Option<f64> {
        (j >= 1).then(|| self.values.get(j - 1).copied()).flatten()
    }

    /// Largest block index with any element inside the window.
    pub fn max_block(&self) -> usize {
        self.values.len()
    }
}

/// First index of block j, i.e. 5^j + 1.
pub fn block_start(j: usize) -> Index {
    5u64.pow(j as u32) + 1
}

/// Block S_j = {5^j+1, ..., 5^j+2j}.
pub fn block_set(j: usize) -> IndexSet {
    IndexSet::interval(block_start(j), block_start(j) + 2 * j as Index - 1)
}

/// The same-parity half S_j′ = {5^j+1, 5^j+3, ..., 5^j+2j−1}.
pub fn block_alternating_set(j: usize) -> IndexSet {
    (0..j)
        .map(|t| block_start(j) + 2 * t as Index)
        .collect()
}

/// Block index j with i ∈ S_j, if any.
pub fn block_of(i: Index) -> Option<usize> {
    let mut j = 1usize;
    let mut p = 5u64;
    while p < i {
        if i >= p + 1 && i <= p + 2 * j as u64 {
            return Some(j);
        }
        j += 1;
        p = p.checked_mul(5)?;
    }
    None
}

/// Replace c by c′_j = min{c_j, min_{i<j} c_i·j/i}, which keeps the sequence
/// nondecreasing and makes c′_j/j nonincreasing.
pub fn normalize_c_sequence(c: &[f64]) -> Result<Vec<f64>> {
    for (k, &cj) in c.iter().enumerate() {
        let j = (k + 1) as f64;
        if !(cj >= 1.0 && cj <= j) {
            return Err(Error::InvalidSpec(format!(
                "c sequence must satisfy 1 <= c_j <= j; violated at j={}: c_j={cj}",
                k + 1
            )));
        }
        if k > 0 && cj < c[k - 1] {
            return Err(Error::InvalidSpec(format!(
                "c sequence must be nondecreasing; violated at j={}",
                k + 1
            )));
        }
    }
    let mut out = Vec::with_capacity(c.len());
    let mut min_ratio = f64::INFINITY;
    for (k, &cj) in c.iter().enumerate() {
        let j = (k + 1) as f64;
        let v = cj.min(j * min_ratio);
        out.push(v);
        min_ratio = min_ratio.min(cj / j);
    }
    Ok(out)
}

fn raw_c(c: &CSequence, j: usize) -> Option<f64> {
    match c {
        CSequence::LogCeil => {
            let v = (1.0 + j as f64).ln().ceil().max(1.0);
            Some(v.min(j as f64))
        }
        CSequence::Identity => Some(j as f64),
        CSequence::Explicit(v) => v.get(j - 1).copied(),
    }
}

fn materialize_c(c: &CSequence, window: Index) -> Result<BlockWeights> {
    let mut jmax = 0usize;
    while block_start(jmax + 1) <= window {
        jmax += 1;
    }
    let mut raw = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        match raw_c(c, j) {
            Some(v) => raw.push(v),
            None => {
                return Err(Error::InvalidSpec(format!(
                    "explicit c sequence too short: block {j} starts inside window {window}"
                )))
            }
        }
    }
    Ok(BlockWeights {
        values: normalize_c_sequence(&raw)?,
    })
}

/// Compiled norm evaluator. Immutable after compilation; evaluation is pure.
#[derive(Debug, Clone)]
pub struct NormOracle {
    spec: SpaceSpec,
    field: Field,
    cseq: Option<BlockWeights>,
    parts: Option<(Box<NormOracle>, Box<NormOracle>)>,
}

impl NormOracle {
    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> Index {
        self.spec.window()
    }

    /// Component oracles of a direct sum.
    pub fn parts(&self) -> Option<(&NormOracle, &NormOracle)> {
        self.parts.as_ref().map(|(l, r)| (&**l, &**r))
    }

    /// Normalized block weights of the counterexample space.
    pub fn block_weights(&self) -> Option<&BlockWeights> {
        self.cseq.as_ref()
    }

    fn check_input(&self, x: &SparseVector) -> Result<()> {
        if let Some(i) = x.max_index() {
            if i > self.window() {
                return Err(Error::WindowExceeded {
                    index: i,
                    window: self.window(),
                });
            }
        }
        if self.field == Field::Real && !x.is_real() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Exact norm of a finitely supported vector.
    pub fn norm(&self, x: &SparseVector) -> Result<f64> {
        self.check_input(x)?;
        Ok(self.norm_unchecked(x))
    }

    fn norm_unchecked(&self, x: &SparseVector) -> f64 {
        match &self.spec {
            SpaceSpec::Lp { p, .. } => lp_norm(x, *p),
            SpaceSpec::Lindenstrauss { .. } => l1_norm(&lindenstrauss_to_ambient(x)),
            SpaceSpec::Difference { .. } => l1_norm(&difference_to_ambient(x)),
            SpaceSpec::Kt { p, .. } => kt_norm(x, *p),
            SpaceSpec::LogDem { alpha, .. } => logdem_norm(x, *alpha),
            SpaceSpec::Counterexample { .. } => {
                counterexample_norm(x, self.cseq.as_ref().expect("compiled"))
            }
            SpaceSpec::DirectSum { .. } => {
                let (lo, ro) = self.parts().expect("compiled");
                let (xl, xr) = split(x);
                lo.norm_unchecked(&xl) + ro.norm_unchecked(&xr)
            }
        }
    }

    /// Ambient ℓ¹ coordinates for the two expansion-defined bases.
    pub fn expand_to_ambient(&self, x: &SparseVector) -> Result<SparseVector> {
        self.check_input(x)?;
        match &self.spec {
            SpaceSpec::Lindenstrauss { .. } => Ok(lindenstrauss_to_ambient(x)),
            SpaceSpec::Difference { .. } => Ok(difference_to_ambient(x)),
            _ => Err(Error::InvalidInput(
                "ambient expansion is defined only for lindenstrauss and difference".into(),
            )),
        }
    }

    /// True when the norm never grows under coordinate projections or
    /// coordinate-wise magnitude decrease (so every S_A is a contraction and
    /// the greedy projection realizes the best N-term error).
    pub fn is_suppression_unconditional(&self) -> bool {
        match &self.spec {
            SpaceSpec::Lp { .. } | SpaceSpec::LogDem { .. } => true,
            SpaceSpec::DirectSum { .. } => {
                let (l, r) = self.parts().expect("compiled");
                l.is_suppression_unconditional() && r.is_suppression_unconditional()
            }
            _ => false,
        }
    }

    /// Quasi-greedy constant when it is known exactly: 1 for the
    /// suppression-unconditional variants (and their direct sums).
    pub fn known_quasi_greedy_constant(&self) -> Option<f64> {
        self.is_suppression_unconditional().then_some(1.0)
    }

    /// Closed-form upper bound for the projection constant k_n, when one is
    /// available for the variant.
    pub fn k_upper_closed_form(&self, n: u64) -> Option<f64> {
        match &self.spec {
            SpaceSpec::Lp { .. } | SpaceSpec::LogDem { .. } => Some(1.0),
            SpaceSpec::Counterexample { .. } => {
                // k_{2N} ≤ c_N, so k_n ≤ c_⌈n/2⌉; weights are nondecreasing,
                // so blocks beyond the window cap at the last value.
                let w = self.cseq.as_ref().expect("compiled");
                let j = ((n + 1) / 2) as usize;
                if w.max_block() == 0 {
                    return Some(1.0);
                }
                Some(w.value(j.min(w.max_block())).expect("nonempty"))
            }
            SpaceSpec::DirectSum { .. } => {
                let (l, r) = self.parts().expect("compiled");
                Some(l.k_upper_closed_form(n)?.max(r.k_upper_closed_form(n)?))
            }
            _ => None,
        }
    }

    /// Every variant here has a monotone basis, so partial-sum projections
    /// have norm at most 1.
    pub fn basis_constant_upper(&self) -> f64 {
        1.0
    }
}

impl fmt::Display for NormOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

fn l1_norm(x: &SparseVector) -> f64 {
    x.iter().map(|(_, v)| v.norm()).sum()
}

fn lp_norm(x: &SparseVector, p: PValue) -> f64 {
    match p {
        PValue::Infinity => x.max_magnitude(),
        PValue::Finite(p) if p == 1.0 => l1_norm(x),
        PValue::Finite(p) if p == 2.0 => x.iter().map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt(),
        PValue::Finite(p) => x
            .iter()
            .map(|(_, v)| v.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
    }
}

/// x = Σ b_n(e_n − ½ e_{2n} − ½ e_{2n+1}) expanded to canonical ℓ¹
/// coordinates; the coefficient at ambient index m is b_m − ½ b_{⌊m/2⌋}.
fn lindenstrauss_to_ambient(b: &SparseVector) -> SparseVector {
    let half = Complex64::new(0.5, 0.0);
    SparseVector::from_entries(b.iter().flat_map(|(n, v)| {
        [(n, v), (2 * n, -v * half), (2 * n + 1, -v * half)]
    }))
}

/// x = b_1 e_1 + Σ_{n≥2} b_n(e_n − e_{n−1}); the coefficient at ambient
/// index n is b_n − b_{n+1}.
fn difference_to_ambient(b: &SparseVector) -> SparseVector {
    SparseVector::from_entries(b.iter().flat_map(|(n, v)| {
        if n >= 2 {
            vec![(n, v), (n - 1, -v)]
        } else {
            vec![(n, v)]
        }
    }))
}

fn kt_norm(x: &SparseVector, p: f64) -> f64 {
    let lp = lp_norm(x, PValue::Finite(p));
    let q = p / (p - 1.0);
    let mut prefix = Complex64::new(0.0, 0.0);
    let mut best = 0.0f64;
    // Partial sums are constant between support indices, so the sup over all
    // m is attained at a support index.
    for (n, v) in x.iter() {
        prefix += v * (n as f64).powf(-1.0 / q);
        best = best.max(prefix.norm());
    }
    lp.max(best)
}

fn logdem_norm(x: &SparseVector, alpha: f64) -> f64 {
    let mut mags: Vec<f64> = x.iter().map(|(_, v)| v.norm()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut best = 0.0f64;
    let mut sum = 0.0f64;
    for (k, m) in mags.iter().enumerate() {
        sum += m;
        best = best.max(sum / (1.0 + log_w((k + 1) as f64)).powf(alpha));
    }
    best
}

fn counterexample_norm(x: &SparseVector, weights: &BlockWeights) -> f64 {
    let mut best = x.max_magnitude();
    let mut current_block: Option<usize> = None;
    let mut prefix = Complex64::new(0.0, 0.0);
    let mut block_best = 0.0f64;
    let mut flush = |j: Option<usize>, block_best: f64, best: &mut f64| {
        if let Some(j) = j {
            if let Some(c) = weights.value(j) {
                *best = (*best).max(c / (2.0 * j as f64) * block_best);
            }
        }
    };
    // Support iteration is ascending, so entries of one block are contiguous
    // and in prefix order.
    for (i, v) in x.iter() {
        let j = block_of(i);
        if j != current_block {
            flush(current_block, block_best, &mut best);
            current_block = j;
            prefix = Complex64::new(0.0, 0.0);
            block_best = 0.0;
        }
        if j.is_some() {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            prefix += v * sign;
            block_best = block_best.max(prefix.norm());
        }
    }
    flush(current_block, block_best, &mut best);
    best
}

/// Interleave two coefficient vectors: left index i goes to 2i−1, right
/// index i to 2i.
pub fn interleave(left: &SparseVector, right: &SparseVector) -> SparseVector {
    SparseVector::from_entries(
        left.iter()
            .map(|(i, v)| (2 * i - 1, v))
            .chain(right.iter().map(|(i, v)| (2 * i, v))),
    )
}

/// Inverse of [`interleave`].
pub fn split(x: &SparseVector) -> (SparseVector, SparseVector) {
    let left = SparseVector::from_entries(
        x.iter().filter(|(i, _)| i % 2 == 1).map(|(i, v)| ((i + 1) / 2, v)),
    );
    let right =
        SparseVector::from_entries(x.iter().filter(|(i, _)| i % 2 == 0).map(|(i, v)| (i / 2, v)));
    (left, right)
}

/// Embed a left-component index set into the interleaved numbering.
pub fn embed_left_set(set: &IndexSet) -> IndexSet {
    set.iter().map(|i| 2 * i - 1).collect()
}

/// Embed a right-component index set into the interleaved numbering.
pub fn embed_right_set(set: &IndexSet) -> IndexSet {
    set.iter().map(|i| 2 * i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::indicator;
    use approx::assert_relative_eq;

    fn real(entries: &[(Index, f64)]) -> SparseVector {
        SparseVector::from_real_entries(entries.iter().copied())
    }

    fn oracle(spec: SpaceSpec) -> NormOracle {
        spec.compile(Field::Real).unwrap()
    }

    /// Coefficients 2^{−j} on the dyadic blocks [2^j, 2^{j+1}) for
    /// j = 0..levels−1.
    fn dyadic_vector(levels: u32) -> SparseVector {
        SparseVector::from_real_entries((0..levels).flat_map(|j| {
            (1u64 << j..1u64 << (j + 1)).map(move |k| (k, 0.5f64.powi(j as i32)))
        }))
    }

    #[test]
    fn lindenstrauss_single_basis_vector() {
        let o = oracle(SpaceSpec::Lindenstrauss { window: 64 });
        let x = real(&[(1, 1.0)]);
        assert_relative_eq!(o.norm(&x).unwrap(), 2.0);
        assert_eq!(
            o.expand_to_ambient(&x).unwrap(),
            real(&[(1, 1.0), (2, -0.5), (3, -0.5)])
        );
    }

    #[test]
    fn lindenstrauss_dyadic_vector_has_norm_two() {
        let o = oracle(SpaceSpec::Lindenstrauss { window: 64 });
        assert_relative_eq!(o.norm(&dyadic_vector(3)).unwrap(), 2.0);
        assert_relative_eq!(o.norm(&dyadic_vector(5)).unwrap(), 2.0);
    }

    #[test]
    fn difference_telescoping_sum() {
        let o = oracle(SpaceSpec::Difference { window: 64 });
        for n2 in [2u64, 8, 32] {
            let y = real(&(1..=n2).map(|n| (n, 1.0)).collect::<Vec<_>>());
            assert_eq!(o.expand_to_ambient(&y).unwrap(), real(&[(n2, 1.0)]));
            assert_relative_eq!(o.norm(&y).unwrap(), 1.0);
        }
    }

    #[test]
    fn difference_second_basis_vector() {
        let o = oracle(SpaceSpec::Difference { window: 8 });
        let x = real(&[(2, 1.0)]);
        assert_eq!(
            o.expand_to_ambient(&x).unwrap(),
            real(&[(1, -1.0), (2, 1.0)])
        );
        assert_relative_eq!(o.norm(&x).unwrap(), 2.0);
    }

    #[test]
    fn kt_norm_values() {
        let o = oracle(SpaceSpec::Kt { p: 2.0, window: 16 });
        assert_relative_eq!(o.norm(&real(&[(1, 1.0)])).unwrap(), 1.0);
        // max{√2, 1 + 2^{−1/2}}
        assert_relative_eq!(
            o.norm(&real(&[(1, 1.0), (2, 1.0)])).unwrap(),
            1.0 + 0.5f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn logdem_indicator_norm() {
        let o = oracle(SpaceSpec::LogDem {
            alpha: 1.0,
            window: 16,
        });
        let x = indicator(&IndexSet::interval(1, 4));
        assert_relative_eq!(
            o.norm(&x).unwrap(),
            4.0 / (1.0 + 4.0f64.ln()),
            max_relative = 1e-15
        );
    }

    #[test]
    fn counterexample_block_indicators() {
        let o = oracle(SpaceSpec::Counterexample {
            c: CSequence::LogCeil,
            window: 4096,
        });
        // S_2 = {26,27,28,29}, S_2' = {26,28}; the default sequence has
        // c_2 = 2 so the alternating half has norm c_2/2 = 1.
        assert_eq!(block_set(2), IndexSet::interval(26, 29));
        assert_eq!(block_alternating_set(2), IndexSet::from_iter([26, 28]));
        assert_relative_eq!(o.norm(&indicator(&block_set(2))).unwrap(), 1.0);
        let c2 = o.block_weights().unwrap().value(2).unwrap();
        assert_relative_eq!(c2, 2.0);
        assert_relative_eq!(
            o.norm(&indicator(&block_alternating_set(2))).unwrap(),
            c2 / 2.0
        );
    }

    #[test]
    fn counterexample_identity_sequence_alternating_half() {
        let o = oracle(SpaceSpec::Counterexample {
            c: CSequence::Identity,
            window: 4096,
        });
        for j in 2..=5usize {
            let cj = o.block_weights().unwrap().value(j).unwrap();
            assert_relative_eq!(cj, j as f64);
            assert_relative_eq!(o.norm(&indicator(&block_set(j))).unwrap(), 1.0);
            assert_relative_eq!(
                o.norm(&indicator(&block_alternating_set(j))).unwrap(),
                cj / 2.0
            );
        }
    }

    #[test]
    fn normalize_c_examples() {
        // Already admissible: identity stays put.
        let c: Vec<f64> = (1..=20).map(|j| j as f64).collect();
        assert_eq!(normalize_c_sequence(&c).unwrap(), c);

        // The log-ceil default: normalized values stay nondecreasing with
        // c'_j/j nonincreasing.
        let raw: Vec<f64> = (1..=64)
            .map(|j| ((1.0 + j as f64).ln().ceil().max(1.0)).min(j as f64))
            .collect();
        let norm = normalize_c_sequence(&raw).unwrap();
        for k in 1..norm.len() {
            assert!(norm[k] >= norm[k - 1] - 1e-12);
            assert!(
                norm[k] / (k + 1) as f64 <= norm[k - 1] / k as f64 + 1e-12,
                "c'_j/j must be nonincreasing"
            );
            assert!(norm[k] <= raw[k] + 1e-12);
        }

        // Staircase (1,1,2,2,3,3,...) clipped to c_j <= j.
        let stair: Vec<f64> = (1..=12).map(|j: u64| ((j + 1) / 2) as f64).collect();
        let norm = normalize_c_sequence(&stair).unwrap();
        for k in 1..norm.len() {
            assert!(norm[k] >= norm[k - 1] - 1e-12);
        }
    }

    #[test]
    fn normalize_c_rejects_bad_input() {
        assert!(normalize_c_sequence(&[2.0]).is_err()); // c_1 > 1
        assert!(normalize_c_sequence(&[1.0, 0.5]).is_err()); // below 1
        assert!(normalize_c_sequence(&[1.0, 2.0, 1.5]).is_err()); // decreasing
    }

    #[test]
    fn interleave_and_split_round_trip() {
        let l = real(&[(1, 1.5), (3, -2.0)]);
        let r = real(&[(1, 4.0), (2, 0.25)]);
        let x = interleave(&l, &r);
        assert_eq!(x, real(&[(1, 1.5), (2, 4.0), (4, 0.25), (5, -2.0)]));
        let (l2, r2) = split(&x);
        assert_eq!(l2, l);
        assert_eq!(r2, r);

        let just_right = interleave(&SparseVector::zero(), &real(&[(3, 7.0)]));
        assert_eq!(just_right, real(&[(6, 7.0)]));
    }

    #[test]
    fn direct_sum_norm_adds_components() {
        let spec = SpaceSpec::DirectSum {
            left: Box::new(SpaceSpec::Lp {
                p: PValue::Finite(1.0),
                window: 8,
            }),
            right: Box::new(SpaceSpec::Lp {
                p: PValue::Finite(2.0),
                window: 8,
            }),
        };
        let o = oracle(spec);
        let x = interleave(&real(&[(1, 1.0), (2, 1.0)]), &real(&[(1, 3.0), (2, 4.0)]));
        assert_relative_eq!(o.norm(&x).unwrap(), 2.0 + 5.0);
    }

    #[test]
    fn window_is_enforced() {
        let o = oracle(SpaceSpec::Lp {
            p: PValue::Finite(2.0),
            window: 4,
        });
        let err = o.norm(&real(&[(5, 1.0)])).unwrap_err();
        assert!(matches!(err, Error::WindowExceeded { index: 5, window: 4 }));
    }

    #[test]
    fn real_field_rejects_complex_input() {
        let o = oracle(SpaceSpec::Lp {
            p: PValue::Finite(2.0),
            window: 4,
        });
        let x = SparseVector::from_entries([(1, Complex64::new(0.0, 1.0))]);
        assert!(matches!(o.norm(&x), Err(Error::FieldMismatch)));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(SpaceSpec::Kt { p: 1.0, window: 4 }.validate().is_err());
        assert!(SpaceSpec::LogDem {
            alpha: 1.5,
            window: 4
        }
        .validate()
        .is_err());
        assert!(SpaceSpec::Lp {
            p: PValue::Finite(0.5),
            window: 4
        }
        .validate()
        .is_err());
    }
}
