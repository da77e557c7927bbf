//! Exact rational functions `f : H(n,q) → ℚ` and the adjacency operator.
//!
//! Values are [`Rational`]s stored densely in vertex-index order. The
//! adjacency operator is applied without a matrix: along every coordinate
//! axis the `q` values of a line are summed once, and each vertex on the
//! line receives `line_sum − f(x)`. Summing over the `n` axes gives
//! `(Af)(x) = Σ_{y ~ x} f(y)` in `O(n·q^n)` additions.

mod bound;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamming::GraphParams;

pub use bound::{vorobev_lower_bound, BoundBranch, LowerBound};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `λ_m = n(q−1) − q·m`.
pub fn eigenvalue(m: usize, params: &GraphParams) -> Result<i64> {
    if m > params.n() {
        return Err(Error::EigenIndexOutOfRange { m, n: params.n() });
    }
    Ok(params.degree() as i64 - (params.q() * m) as i64)
}

/// `[λ_0, …, λ_n]`.
pub fn spectrum(params: &GraphParams) -> Vec<i64> {
    (0..=params.n())
        .map(|m| params.degree() as i64 - (params.q() * m) as i64)
        .collect()
}

/// The support `S(f)`: indices of nonzero entries, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub indices: Vec<usize>,
}

impl Support {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFunction {
    params: GraphParams,
    values: Vec<Rational>,
}

impl VertexFunction {
    pub fn new(params: GraphParams, values: Vec<Rational>) -> Result<Self> {
        if values.len() != params.vertex_count() {
            return Err(Error::Format(format!(
                "expected {} values for {params}, got {}",
                params.vertex_count(),
                values.len()
            )));
        }
        Ok(Self { params, values })
    }

    pub fn zeros(params: GraphParams) -> Self {
        Self::constant(params, Rational::zero())
    }

    pub fn constant(params: GraphParams, c: Rational) -> Self {
        Self {
            params,
            values: vec![c; params.vertex_count()],
        }
    }

    /// Builds `f` from its value at each vertex index.
    pub fn from_index_fn(params: GraphParams, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            params,
            values: (0..params.vertex_count()).map(f).collect(),
        }
    }

    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, index: usize) -> &Rational {
        &self.values[index]
    }

    /// Value at a word; panics if the word is invalid for the graph.
    pub fn at(&self, word: &[usize]) -> &Rational {
        let v = self.params.encode(word).expect("valid word");
        &self.values[v]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn support(&self) -> Support {
        Support {
            indices: self
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            params: self.params,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn check_same_graph(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch(
                self.params.n(),
                self.params.q(),
                other.params.n(),
                other.params.q(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_graph(other)?;
        Ok(Self {
            params: self.params,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// `Σ coefficients[b] · functions[b]`; all functions must share one graph.
    pub fn linear_combination(
        params: GraphParams,
        functions: &[VertexFunction],
        coefficients: &[Rational],
    ) -> Result<Self> {
        if functions.len() != coefficients.len() {
            return Err(Error::InvalidArgument(format!(
                "{} functions but {} coefficients",
                functions.len(),
                coefficients.len()
            )));
        }
        let mut acc = Self::zeros(params);
        for (f, c) in functions.iter().zip(coefficients) {
            acc.check_same_graph(f)?;
            if c.is_zero() {
                continue;
            }
            for (a, v) in acc.values.iter_mut().zip(&f.values) {
                *a += v * c;
            }
        }
        Ok(acc)
    }

    /// `(Af)(x) = Σ_{y ~ x} f(y)`, computed by axis sums.
    pub fn apply_adjacency(&self) -> Self {
        let g = &self.params;
        let q = g.q();
        let mut out = vec![Rational::zero(); g.vertex_count()];
        for i in 1..=g.n() {
            let stride = g.stride(i);
            let block = stride * q;
            for start in (0..g.vertex_count()).step_by(block) {
                for offset in 0..stride {
                    let line = (0..q).map(|d| start + offset + d * stride);
                    let sum: Rational = line.clone().map(|v| &self.values[v]).sum();
                    for v in line {
                        out[v] += &sum - &self.values[v];
                    }
                }
            }
        }
        Self {
            params: self.params,
            values: out,
        }
    }

    pub fn eigen_check(&self, lambda: i64) -> EigenCheck {
        let trivial = self.is_zero();
        let lambda = rational(lambda);
        let holds = trivial
            || self
                .apply_adjacency()
                .values
                .iter()
                .zip(&self.values)
                .all(|(af, f)| *af == &lambda * f);
        EigenCheck { holds, trivial }
    }

    /// Exact test of `Af = λf`. The zero function passes for every `λ`;
    /// use [`VertexFunction::eigen_check`] to tell it apart.
    pub fn is_eigenfunction(&self, lambda: i64) -> bool {
        self.eigen_check(lambda).holds
    }

    pub fn to_file(&self) -> FunctionFile {
        FunctionFile {
            n: self.params.n(),
            q: self.params.q(),
            values: self.values.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_file(file: &FunctionFile) -> Result<Self> {
        let params = GraphParams::new(file.n, file.q)?;
        let values = file
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("function file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: FunctionFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

impl Add for &VertexFunction {
    type Output = VertexFunction;

    fn add(self, rhs: Self) -> VertexFunction {
        self.try_add(rhs).expect("functions on the same graph")
    }
}

impl Neg for &VertexFunction {
    type Output = VertexFunction;

    fn neg(self) -> VertexFunction {
        self.scale(&rational(-1))
    }
}

impl Sub for &VertexFunction {
    type Output = VertexFunction;

    fn sub(self, rhs: Self) -> VertexFunction {
        self + &(-rhs)
    }
}

impl fmt::Display for VertexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Outcome of an exact eigen test; `trivial` marks the zero function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenCheck {
    pub holds: bool,
    pub trivial: bool,
}

/// On-disk JSON form: `{"n": 2, "q": 3, "values": ["0", "-1", "1/2", …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub n: usize,
    pub q: usize,
    pub values: Vec<String>,
}

/// Position of `e_{i,v}` in [`eigenbasis_lambda1`] (1-based `i`, `1 ≤ v < q`).
pub fn basis_position(params: &GraphParams, i: usize, v: usize) -> usize {
    (i - 1) * (params.q() - 1) + (v - 1)
}

/// The `n(q−1)` functions `e_{i,v}(x) = [x_i = v] − [x_i = 0]`, ordered
/// coordinate-major then `v` ascending.
pub fn eigenbasis_lambda1(params: &GraphParams) -> Vec<VertexFunction> {
    let mut out = Vec::with_capacity(params.degree());
    for i in 1..=params.n() {
        for v in 1..params.q() {
            out.push(VertexFunction::from_index_fn(*params, |x| {
                match params.digit_of(x, i) {
                    d if d == v => Rational::one(),
                    0 => -Rational::one(),
                    _ => Rational::zero(),
                }
            }));
        }
    }
    out
}

/// Rank of a family of functions, by exact Gaussian elimination.
pub fn rank(functions: &[VertexFunction]) -> usize {
    let mut rows: Vec<Vec<Rational>> = functions.iter().map(|f| f.values.clone()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &head[col];
            for (x, h) in row.iter_mut().zip(&head).skip(col) {
                *x -= &factor * h;
            }
        }
        rank += 1;
    }
    rank
}

/// A seeded random member of the `λ_m` eigenspace.
///
/// The result is an integer combination of a few product functions
/// `Π_{t∈M} φ_t(x_t)` with `|M| = m`, where every factor `φ_t` sums to zero
/// over the alphabet. Entries of each `φ_t` and the combination weights are
/// drawn from `[−coefficient_bound, coefficient_bound]`.
pub fn random_eigenfunction(
    m: usize,
    params: &GraphParams,
    seed: u64,
    coefficient_bound: i64,
) -> Result<VertexFunction> {
    if m > params.n() {
        return Err(Error::EigenIndexOutOfRange { m, n: params.n() });
    }
    if coefficient_bound < 1 {
        return Err(Error::InvalidArgument("coefficient bound must be positive".into()));
    }
    const TERMS: usize = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, q) = (params.n(), params.q());
    let mut acc = VertexFunction::zeros(*params);
    for _ in 0..TERMS {
        let weight = rng.gen_range(-coefficient_bound..=coefficient_bound);
        // Choose |M| = m coordinates (partial Fisher-Yates).
        let mut coords: Vec<usize> = (1..=n).collect();
        for s in 0..m {
            let pick = rng.gen_range(s..n);
            coords.swap(s, pick);
        }
        let factors: Vec<(usize, Vec<i64>)> = coords[..m]
            .iter()
            .map(|&t| {
                let mut phi: Vec<i64> = (0..q - 1)
                    .map(|_| rng.gen_range(-coefficient_bound..=coefficient_bound))
                    .collect();
                phi.push(-phi.iter().sum::<i64>());
                (t, phi)
            })
            .collect();
        for (x, a) in acc.values.iter_mut().enumerate() {
            let product: i64 = factors.iter().map(|(t, phi)| phi[params.digit_of(x, *t)]).product();
            *a += rational(weight * product);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, q: usize) -> GraphParams {
        GraphParams::new(n, q).unwrap()
    }

    fn ints(params: GraphParams, v: &[i64]) -> VertexFunction {
        VertexFunction::new(params, v.iter().map(|&x| rational(x)).collect()).unwrap()
    }

    /// Direct neighbor sum, independent of the axis-sum path.
    fn naive_adjacency(f: &VertexFunction) -> VertexFunction {
        let g = *f.params();
        VertexFunction::from_index_fn(g, |x| g.neighbor_indices(x).map(|y| f.value(y)).sum())
    }

    fn dual_layer_h23() -> VertexFunction {
        ints(p(2, 3), &[0, -1, -1, 1, 0, 0, 1, 0, 0])
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(1, &p(2, 3)).unwrap(), 1);
        assert_eq!(eigenvalue(0, &p(5, 4)).unwrap(), 15);
        assert_eq!(eigenvalue(3, &p(3, 4)).unwrap(), -3);
        assert!(matches!(
            eigenvalue(3, &p(2, 3)),
            Err(Error::EigenIndexOutOfRange { m: 3, n: 2 })
        ));
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&p(2, 3)), vec![4, 1, -2]);
        assert_eq!(spectrum(&p(1, 3)), vec![2, -1]);
        assert_eq!(spectrum(&p(3, 3)), vec![6, 3, 0, -3]);
    }

    #[test]
    fn support_examples() {
        assert_eq!(VertexFunction::zeros(p(2, 3)).support().size(), 0);
        let f = dual_layer_h23();
        assert_eq!(f.support().indices, vec![1, 2, 3, 6]);
        let layer = ints(p(2, 3), &[1, 0, 0, 1, 0, 0, 1, 0, 0]);
        assert_eq!(layer.support().size(), 3);
    }

    #[test]
    fn adjacency_examples() {
        let f = ints(p(1, 3), &[2, -1, -1]);
        assert_eq!(f.apply_adjacency(), ints(p(1, 3), &[-2, 1, 1]));
        let f = dual_layer_h23();
        assert_eq!(f.apply_adjacency(), f);
        let one = VertexFunction::constant(p(2, 3), rational(1));
        assert_eq!(one.apply_adjacency(), VertexFunction::constant(p(2, 3), rational(4)));
    }

    #[test]
    fn adjacency_matches_naive_sum() {
        for (n, q) in [(2, 3), (1, 4), (3, 2), (2, 5)] {
            let g = p(n, q);
            for seed in 0..5 {
                let f = VertexFunction::from_index_fn(g, |x| {
                    ratio(((x * 7 + seed * 13) % 11) as i64 - 5, (x % 3 + 1) as i64)
                });
                assert_eq!(f.apply_adjacency(), naive_adjacency(&f), "H({n},{q})");
            }
        }
    }

    #[test]
    fn eigen_check_examples() {
        assert!(dual_layer_h23().is_eigenfunction(1));
        let layer = ints(p(2, 3), &[1, 0, 0, 1, 0, 0, 1, 0, 0]);
        assert!(!layer.is_eigenfunction(1));
        let zero = VertexFunction::zeros(p(2, 3));
        assert_eq!(
            zero.eigen_check(7),
            EigenCheck {
                holds: true,
                trivial: true
            }
        );
        assert!(!dual_layer_h23().eigen_check(1).trivial);
    }

    #[test]
    fn eigenbasis_is_independent_lambda1_family() {
        for (n, q, expected) in [(2, 3, 4), (1, 3, 2), (3, 4, 9)] {
            let g = p(n, q);
            let basis = eigenbasis_lambda1(&g);
            assert_eq!(basis.len(), expected);
            let lambda1 = eigenvalue(1, &g).unwrap();
            assert!(basis.iter().all(|e| e.is_eigenfunction(lambda1)));
            assert_eq!(rank(&basis), expected);
        }
    }

    #[test]
    fn eigenbasis_entry_values() {
        let g = p(2, 3);
        let e = &eigenbasis_lambda1(&g)[basis_position(&g, 2, 1)];
        assert_eq!(e.at(&[2, 1]), &rational(1));
        assert_eq!(e.at(&[2, 0]), &rational(-1));
        assert_eq!(e.at(&[0, 2]), &rational(0));
    }

    #[test]
    fn random_eigenfunction_examples() {
        let g = p(2, 3);
        let f0 = random_eigenfunction(0, &g, 11, 3).unwrap();
        assert!(f0.is_constant());
        for seed in 0..10 {
            assert!(random_eigenfunction(1, &g, seed, 3).unwrap().is_eigenfunction(1));
            assert!(random_eigenfunction(2, &p(3, 3), seed, 3).unwrap().is_eigenfunction(0));
        }
        assert_eq!(
            random_eigenfunction(2, &p(3, 4), 5, 2).unwrap(),
            random_eigenfunction(2, &p(3, 4), 5, 2).unwrap()
        );
        assert!(random_eigenfunction(3, &g, 0, 3).is_err());
        assert!(random_eigenfunction(1, &g, 0, 0).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rational(-4));
        for bad in ["", "1/0", "a", "1/2/3", "1.5", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_format() {
        let f = dual_layer_h23().scale(&ratio(3, 2));
        let text = f.to_json();
        assert!(text.contains("\"3/2\""));
        assert!(text.contains("\"-3/2\""));
        assert_eq!(VertexFunction::from_json(&text).unwrap(), f);
        let short = r#"{"n":2,"q":3,"values":["1","2"]}"#;
        assert!(matches!(VertexFunction::from_json(short), Err(Error::Format(_))));
        let junk = r#"{"n":1,"q":3,"values":["1","x","0"]}"#;
        assert!(VertexFunction::from_json(junk).is_err());
        let bad_params = r#"{"n":1,"q":1,"values":["1"]}"#;
        assert!(VertexFunction::from_json(bad_params).is_err());
    }

    fn small_fn() -> impl Strategy<Value = (VertexFunction, VertexFunction, i64, i64)> {
        (1usize..=3, 2usize..=4).prop_flat_map(|(n, q)| {
            let g = p(n, q);
            let len = g.vertex_count();
            (
                prop::collection::vec(-5i64..=5, len),
                prop::collection::vec(-5i64..=5, len),
                -4i64..=4,
                -4i64..=4,
            )
                .prop_map(move |(a, b, s, t)| (ints(g, &a), ints(g, &b), s, t))
        })
    }

    proptest! {
        #[test]
        fn adjacency_is_linear((f, h, a, b) in small_fn()) {
            let combo = &f.scale(&rational(a)) + &h.scale(&rational(b));
            let lhs = combo.apply_adjacency();
            let rhs = &f.apply_adjacency().scale(&rational(a)) + &h.apply_adjacency().scale(&rational(b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adjacency_agrees_with_naive((f, _h, _a, _b) in small_fn()) {
            prop_assert_eq!(f.apply_adjacency(), naive_adjacency(&f));
        }

        #[test]
        fn basis_combinations_stay_in_lambda1(coeffs in prop::collection::vec(-3i64..=3, 4)) {
            let g = p(2, 3);
            let basis = eigenbasis_lambda1(&g);
            let c: Vec<Rational> = coeffs.iter().map(|&x| rational(x)).collect();
            let f = VertexFunction::linear_combination(g, &basis, &c).unwrap();
            prop_assert!(f.is_eigenfunction(1));
        }

        #[test]
        fn constant_one_maps_to_degree(n in 1usize..=4, q in 2usize..=5) {
            let g = p(n, q);
            let one = VertexFunction::constant(g, rational(1));
            prop_assert_eq!(one.apply_adjacency(), VertexFunction::constant(g, rational(g.degree() as i64)));
        }
    }
}
