//! Coordinate-difference reduction and additive functions.
//!
//! For `f` on H(n+1,q), `g_{i,k,m}(t) = f(t with k inserted at i) − f(t with m
//! inserted at i)` is a function on H(n,q). If `f` is a `λ` eigenfunction,
//! `g` is a `(λ+1)` eigenfunction. A function is *additive* when every such
//! `g` is constant, equivalently `f(x) = base + Σ_t part_t[x_t]`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_space::{Rational, VertexFunction};
use crate::hamming::{GraphParams, Vertex};

/// Reduction parameters `(i, k, m)`: 1-based coordinate of the source graph
/// and two distinct digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ReductionSpec {
    pub i: usize,
    pub k: usize,
    pub m: usize,
}

impl ReductionSpec {
    pub fn new(i: usize, k: usize, m: usize) -> Self {
        Self { i, k, m }
    }

    pub fn validate(&self, source: &GraphParams) -> Result<()> {
        source.check_coordinate(self.i)?;
        source.check_digit(self.i, self.k)?;
        source.check_digit(self.i, self.m)?;
        if self.k == self.m {
            return Err(Error::InvalidArgument(format!(
                "reduction digits must differ, got k = m = {}",
                self.k
            )));
        }
        Ok(())
    }

    /// Every valid spec on `source`, ordered by `i`, then `k`, then `m`.
    pub fn all(source: &GraphParams) -> Vec<ReductionSpec> {
        let q = source.q();
        (1..=source.n())
            .flat_map(|i| (0..q).flat_map(move |k| (0..q).filter(move |&m| m != k).map(move |m| Self::new(i, k, m))))
            .collect()
    }
}

/// Source index of target vertex `t` with `digit` inserted at 1-based coordinate `i`.
fn insert_index(target_index: usize, i: usize, digit: usize, q: usize) -> usize {
    let stride = q.pow((i - 1) as u32);
    let low = target_index % stride;
    let high = target_index / stride;
    low + digit * stride + high * stride * q
}

fn reduced_params(source: &GraphParams) -> Result<GraphParams> {
    if source.n() < 2 {
        return Err(Error::InvalidArgument(format!(
            "reduction needs a source graph with n ≥ 2, got {source}"
        )));
    }
    GraphParams::new(source.n() - 1, source.q())
}

/// `g_{i,k,m}` on H(n,q) from `f` on H(n+1,q).
pub fn reduce(f: &VertexFunction, spec: ReductionSpec) -> Result<VertexFunction> {
    let source = *f.params();
    let target = reduced_params(&source)?;
    spec.validate(&source)?;
    let q = source.q();
    Ok(VertexFunction::from_index_fn(target, |t| {
        f.value(insert_index(t, spec.i, spec.k, q)) - f.value(insert_index(t, spec.i, spec.m, q))
    }))
}

/// Two target vertices where `g_{i,k,m}` differs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAdditiveWitness {
    pub spec: ReductionSpec,
    pub t1: Vertex,
    pub t2: Vertex,
}

impl From<NonAdditiveWitness> for Error {
    fn from(w: NonAdditiveWitness) -> Self {
        Error::NotAdditive {
            i: w.spec.i,
            k: w.spec.k,
            m: w.spec.m,
            t1: w.t1.to_string(),
            t2: w.t2.to_string(),
        }
    }
}

/// First `(i, k<m)` whose reduction is not constant, or `None` if `f` is additive.
pub fn additivity_witness(f: &VertexFunction) -> Result<Option<NonAdditiveWitness>> {
    let source = *f.params();
    let target = reduced_params(&source)?;
    for spec in ReductionSpec::all(&source).into_iter().filter(|s| s.k < s.m) {
        let g = reduce(f, spec)?;
        if let Some(t) = (1..g.values().len()).find(|&t| g.value(t) != g.value(0)) {
            return Ok(Some(NonAdditiveWitness {
                spec,
                t1: target.decode_unchecked(0),
                t2: target.decode_unchecked(t),
            }));
        }
    }
    Ok(None)
}

/// True iff every reduction `g_{i,k,m}` of `f` is constant. Requires `n ≥ 2`.
pub fn is_additive(f: &VertexFunction) -> Result<bool> {
    Ok(additivity_witness(f)?.is_none())
}

/// `f(x) = base + Σ_t parts[t−1][x_t]` with `parts[·][0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveDecomposition {
    pub params: GraphParams,
    pub base: Rational,
    pub parts: Vec<Vec<Rational>>,
}

impl AdditiveDecomposition {
    pub fn reconstruct(&self) -> VertexFunction {
        let g = self.params;
        VertexFunction::from_index_fn(g, |x| {
            let mut v = self.base.clone();
            for (t, part) in self.parts.iter().enumerate() {
                v += &part[g.digit_of(x, t + 1)];
            }
            v
        })
    }

    /// Unique form `constant + Σ_t centered[t−1][x_t]` where every centered
    /// part sums to zero over the alphabet.
    pub fn centered(&self) -> (Rational, Vec<Vec<Rational>>) {
        let q = Rational::from_integer(self.params.q().into());
        let mut constant = self.base.clone();
        let parts = self
            .parts
            .iter()
            .map(|part| {
                let mean = part.iter().sum::<Rational>() / &q;
                constant += &mean;
                part.iter().map(|v| v - &mean).collect()
            })
            .collect();
        (constant, parts)
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.parts.iter().flatten().all(Zero::is_zero)
    }
}

/// Splits an additive `f` into univariate parts based at the all-zero vertex.
pub fn additive_decompose(f: &VertexFunction) -> Result<AdditiveDecomposition> {
    if let Some(w) = additivity_witness(f)? {
        return Err(w.into());
    }
    let g = *f.params();
    let base = f.value(0).clone();
    let parts = (1..=g.n())
        .map(|t| (0..g.q()).map(|v| f.value(v * g.stride(t)) - &base).collect())
        .collect();
    let d = AdditiveDecomposition { params: g, base, parts };
    debug_assert_eq!(&d.reconstruct(), f);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::{eigenbasis_lambda1, eigenvalue, random_eigenfunction, rational};
    use proptest::prelude::*;

    fn p(n: usize, q: usize) -> GraphParams {
        GraphParams::new(n, q).unwrap()
    }

    fn ints(params: GraphParams, v: &[i64]) -> VertexFunction {
        VertexFunction::new(params, v.iter().map(|&x| rational(x)).collect()).unwrap()
    }

    fn dual_layer_h23() -> VertexFunction {
        ints(p(2, 3), &[0, -1, -1, 1, 0, 0, 1, 0, 0])
    }

    /// Reduction by explicit word surgery, independent of index arithmetic.
    fn reduce_by_words(f: &VertexFunction, spec: ReductionSpec) -> VertexFunction {
        let src = *f.params();
        let dst = p(src.n() - 1, src.q());
        VertexFunction::from_index_fn(dst, |t| {
            let word = dst.decode(t).unwrap();
            let with = |d: usize| {
                let mut w = word.digits().to_vec();
                w.insert(spec.i - 1, d);
                f.at(&w).clone()
            };
            with(spec.k) - with(spec.m)
        })
    }

    #[test]
    fn reduce_univariate_example() {
        // f(x) = φ(x₁), φ = (2, −1, −1)
        let phi = [2, -1, -1];
        let f = VertexFunction::from_index_fn(p(2, 3), |x| rational(phi[x % 3]));
        let g = reduce(&f, ReductionSpec::new(1, 0, 1)).unwrap();
        assert_eq!(g, VertexFunction::constant(p(1, 3), rational(3)));
        assert!(g.is_eigenfunction(2));
    }

    #[test]
    fn reduce_dual_layer_example() {
        let g = reduce(&dual_layer_h23(), ReductionSpec::new(1, 0, 1)).unwrap();
        assert_eq!(g, VertexFunction::constant(p(1, 3), rational(1)));
    }

    #[test]
    fn reduce_errors() {
        let f = dual_layer_h23();
        assert!(matches!(
            reduce(&f, ReductionSpec::new(1, 1, 1)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(reduce(&f, ReductionSpec::new(3, 0, 1)).is_err());
        assert!(reduce(&f, ReductionSpec::new(1, 0, 3)).is_err());
        let tiny = VertexFunction::zeros(p(1, 3));
        assert!(reduce(&tiny, ReductionSpec::new(1, 0, 1)).is_err());
    }

    #[test]
    fn reduce_matches_word_surgery() {
        let g = p(3, 4);
        let f = VertexFunction::from_index_fn(g, |x| rational(((x * x + 3) % 17) as i64));
        for spec in ReductionSpec::all(&g) {
            assert_eq!(reduce(&f, spec).unwrap(), reduce_by_words(&f, spec));
        }
    }

    #[test]
    fn additivity_examples() {
        assert!(is_additive(&dual_layer_h23()).unwrap());
        let mut spike = vec![0; 9];
        spike[4] = 1;
        let spike = ints(p(2, 3), &spike);
        let w = additivity_witness(&spike).unwrap().unwrap();
        assert_eq!(w.spec, ReductionSpec::new(1, 0, 1));
        assert!(!is_additive(&spike).unwrap());
        assert!(is_additive(&VertexFunction::zeros(p(2, 3))).unwrap());
        assert!(is_additive(&VertexFunction::zeros(p(1, 3))).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = additive_decompose(&dual_layer_h23()).unwrap();
        assert_eq!(d.base, rational(0));
        assert_eq!(d.parts[0], vec![rational(0), rational(-1), rational(-1)]);
        assert_eq!(d.parts[1], vec![rational(0), rational(1), rational(1)]);
        assert_eq!(d.reconstruct(), dual_layer_h23());

        let c = VertexFunction::constant(p(3, 3), rational(5));
        let d = additive_decompose(&c).unwrap();
        assert_eq!(d.base, rational(5));
        assert!(d.parts.iter().flatten().all(Zero::is_zero));

        let mut spike = vec![0; 9];
        spike[8] = 2;
        let err = additive_decompose(&ints(p(2, 3), &spike)).unwrap_err();
        assert!(matches!(err, Error::NotAdditive { .. }), "{err}");
    }

    #[test]
    fn centered_parts_sum_to_zero() {
        let d = additive_decompose(&dual_layer_h23()).unwrap();
        let (constant, parts) = d.centered();
        assert_eq!(constant, rational(0));
        for part in &parts {
            assert!(part.iter().sum::<Rational>().is_zero());
        }
    }

    #[test]
    fn lambda1_basis_is_additive() {
        for (n, q) in [(2, 3), (3, 3), (2, 5), (3, 4)] {
            for e in eigenbasis_lambda1(&p(n, q)) {
                assert!(is_additive(&e).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduction_raises_eigenvalue_by_one(n in 1usize..=3, q in 3usize..=4, m_raw in 0usize..3, seed in any::<u64>()) {
            let m = 1 + m_raw % n;
            let src = p(n + 1, q);
            let f = random_eigenfunction(m, &src, seed, 3).unwrap();
            let target = p(n, q);
            let lambda = eigenvalue(m, &src).unwrap();
            for spec in ReductionSpec::all(&src) {
                let g = reduce(&f, spec).unwrap();
                prop_assert!(g.is_eigenfunction(lambda + 1));
                prop_assert_eq!(g.is_eigenfunction(lambda + 1), g.is_eigenfunction(eigenvalue(m - 1, &target).unwrap()));
            }
        }

        #[test]
        fn lambda1_eigenfunctions_are_additive(n in 2usize..=3, q in 3usize..=5, seed in any::<u64>()) {
            let f = random_eigenfunction(1, &p(n, q), seed, 4).unwrap();
            prop_assert!(is_additive(&f).unwrap());
            let d = additive_decompose(&f).unwrap();
            prop_assert_eq!(d.reconstruct(), f);
        }

        #[test]
        fn reduce_is_linear(a in -3i64..=3, b in -3i64..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
            let g = p(3, 3);
            let f = random_eigenfunction(2, &g, s1, 3).unwrap();
            let h = random_eigenfunction(1, &g, s2, 3).unwrap();
            let combo = &f.scale(&rational(a)) + &h.scale(&rational(b));
            for spec in ReductionSpec::all(&g) {
                let lhs = reduce(&combo, spec).unwrap();
                let rhs = &reduce(&f, spec).unwrap().scale(&rational(a)) + &reduce(&h, spec).unwrap().scale(&rational(b));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
