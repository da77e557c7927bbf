//! Vertices of the Hamming graph H(n,q) and their neighborhoods.
//!
//! The graph is never materialized. A vertex is a word of `n` digits over
//! `{0,…,q−1}`, indexed little-endian: `index = Σ word[t]·q^t` (0-based `t`).
//! Coordinates are 1-based in every public signature.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `q^n` accepted by [`GraphParams::new`].
pub const DEFAULT_VERTEX_CAP: u64 = 100_000_000;

/// The pair `(n, q)` defining H(n,q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GraphParams {
    n: usize,
    q: usize,
    #[serde(skip)]
    vertex_count: usize,
}

#[derive(Deserialize)]
struct RawParams {
    n: usize,
    q: usize,
}

impl TryFrom<RawParams> for GraphParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        GraphParams::new(raw.n, raw.q)
    }
}

impl GraphParams {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        Self::with_cap(n, q, DEFAULT_VERTEX_CAP)
    }

    /// Like [`GraphParams::new`] with an explicit vertex-count cap.
    pub fn with_cap(n: usize, q: usize, cap: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams(format!("n must be at least 1, got {n}")));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!("q must be at least 2, got {q}")));
        }
        let count = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > cap as u128 || count > usize::MAX as u128 {
            return Err(Error::TooManyVertices { n, q, count, cap });
        }
        Ok(Self {
            n,
            q,
            vertex_count: count as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `q^n`.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Vertex degree `n(q−1)`.
    pub fn degree(&self) -> usize {
        self.n * (self.q - 1)
    }

    /// Index step for a 1-based coordinate: `q^{i−1}`.
    pub fn stride(&self, i: usize) -> usize {
        self.q.pow((i - 1) as u32)
    }

    pub fn check_coordinate(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::CoordinateOutOfRange { i, n: self.n });
        }
        Ok(())
    }

    pub fn check_digit(&self, coordinate: usize, digit: usize) -> Result<()> {
        if digit >= self.q {
            return Err(Error::DigitOutOfRange {
                coordinate,
                digit,
                q: self.q,
            });
        }
        Ok(())
    }

    pub fn check_vertex(&self, word: &[usize]) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::WrongLength {
                got: word.len(),
                expected: self.n,
            });
        }
        for (t, &d) in word.iter().enumerate() {
            self.check_digit(t + 1, d)?;
        }
        Ok(())
    }

    pub fn encode(&self, word: &[usize]) -> Result<usize> {
        self.check_vertex(word)?;
        Ok(self.encode_unchecked(word))
    }

    pub(crate) fn encode_unchecked(&self, word: &[usize]) -> usize {
        word.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    pub fn decode(&self, index: usize) -> Result<Vertex> {
        if index >= self.vertex_count {
            return Err(Error::IndexOutOfRange {
                index,
                count: self.vertex_count,
            });
        }
        Ok(self.decode_unchecked(index))
    }

    pub(crate) fn decode_unchecked(&self, mut index: usize) -> Vertex {
        let mut digits = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            digits.push(index % self.q);
            index /= self.q;
        }
        Vertex { digits }
    }

    /// Digit of coordinate `i` (1-based) of the vertex with this index.
    pub(crate) fn digit_of(&self, index: usize, i: usize) -> usize {
        (index / self.stride(i)) % self.q
    }

    /// All `n(q−1)` neighbors, coordinate-major then digit ascending.
    pub fn neighbors(&self, x: &Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(&x.digits)?;
        let mut out = Vec::with_capacity(self.degree());
        for t in 0..self.n {
            for d in (0..self.q).filter(|&d| d != x.digits[t]) {
                let mut y = x.clone();
                y.digits[t] = d;
                out.push(y);
            }
        }
        Ok(out)
    }

    /// Neighbor indices of a vertex index, in the same order as [`GraphParams::neighbors`].
    pub fn neighbor_indices(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).flat_map(move |i| {
            let stride = self.stride(i);
            let own = self.digit_of(index, i);
            let base = index - own * stride;
            (0..self.q).filter(move |&d| d != own).map(move |d| base + d * stride)
        })
    }

    /// Membership in the layer `T_k(i,n)`: coordinate `i` (1-based) equals `k`.
    pub fn in_layer(&self, x: &Vertex, i: usize, k: usize) -> Result<bool> {
        self.check_vertex(&x.digits)?;
        self.check_coordinate(i)?;
        self.check_digit(i, k)?;
        Ok(x.digits[i - 1] == k)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count).map(|v| self.decode_unchecked(v))
    }
}

impl fmt::Display for GraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.n, self.q)
    }
}

/// A word over the alphabet `{0,…,q−1}`.
///
/// Prints as comma-separated digits, first coordinate first (so the most
/// significant digit of the index comes last), e.g. `1,2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    digits: Vec<usize>,
}

impl Vertex {
    pub fn new(digits: Vec<usize>) -> Self {
        Self { digits }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at a 1-based coordinate.
    pub fn coordinate(&self, i: usize) -> usize {
        self.digits[i - 1]
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(digits: Vec<usize>) -> Self {
        Self { digits }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, d) in self.digits.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad digit {p:?} in vertex {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Vertex::new)
    }
}

pub fn hamming_distance(x: &Vertex, y: &Vertex) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::WrongLength {
            got: y.len(),
            expected: x.len(),
        });
    }
    Ok(x.digits.iter().zip(&y.digits).filter(|(a, b)| a != b).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, q: usize) -> GraphParams {
        GraphParams::new(n, q).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(p(2, 3).encode(&[0, 0]).unwrap(), 0);
        assert_eq!(p(2, 3).encode(&[1, 2]).unwrap(), 7);
        assert_eq!(p(3, 2).encode(&[1, 0, 1]).unwrap(), 5);
    }

    #[test]
    fn encode_errors() {
        assert!(matches!(
            p(2, 3).encode(&[0, 3]),
            Err(Error::DigitOutOfRange {
                coordinate: 2,
                digit: 3,
                q: 3
            })
        ));
        assert!(matches!(
            p(2, 3).encode(&[0]),
            Err(Error::WrongLength { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn decode_examples() {
        let g = p(2, 3);
        assert_eq!(g.decode(0).unwrap().digits(), &[0, 0]);
        assert_eq!(g.decode(7).unwrap().digits(), &[1, 2]);
        assert_eq!(g.decode(8).unwrap().digits(), &[2, 2]);
        assert!(matches!(g.decode(9), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn params_validation() {
        assert!(GraphParams::new(0, 3).is_err());
        assert!(GraphParams::new(2, 1).is_err());
        assert!(matches!(GraphParams::new(30, 10), Err(Error::TooManyVertices { .. })));
        assert!(GraphParams::with_cap(3, 3, 26).is_err());
        assert!(GraphParams::with_cap(3, 3, 27).is_ok());
    }

    #[test]
    fn neighbor_examples() {
        let g = p(2, 3);
        let got: Vec<String> = g
            .neighbors(&Vertex::new(vec![0, 0]))
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(got, ["1,0", "2,0", "0,1", "0,2"]);

        let got = p(1, 3).neighbors(&Vertex::new(vec![0])).unwrap();
        assert_eq!(got, vec![Vertex::new(vec![1]), Vertex::new(vec![2])]);

        let g = p(3, 4);
        for x in g.vertices() {
            assert_eq!(g.neighbors(&x).unwrap().len(), 9);
        }
    }

    #[test]
    fn neighbor_indices_match_neighbors() {
        let g = p(3, 3);
        for v in 0..g.vertex_count() {
            let x = g.decode(v).unwrap();
            let by_word: Vec<usize> = g
                .neighbors(&x)
                .unwrap()
                .iter()
                .map(|y| g.encode(y.digits()).unwrap())
                .collect();
            let by_index: Vec<usize> = g.neighbor_indices(v).collect();
            assert_eq!(by_word, by_index);
        }
    }

    #[test]
    fn distance_examples() {
        let v = |d: &[usize]| Vertex::new(d.to_vec());
        assert_eq!(hamming_distance(&v(&[0, 0]), &v(&[0, 0])).unwrap(), 0);
        assert_eq!(hamming_distance(&v(&[0, 0]), &v(&[1, 2])).unwrap(), 2);
        assert_eq!(hamming_distance(&v(&[1, 2, 0]), &v(&[1, 0, 0])).unwrap(), 1);
        assert!(hamming_distance(&v(&[1, 2]), &v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn layer_examples() {
        let g = p(2, 3);
        let x = Vertex::new(vec![1, 2]);
        assert!(g.in_layer(&x, 2, 2).unwrap());
        assert!(!g.in_layer(&x, 1, 0).unwrap());
        assert_eq!(g.vertices().filter(|x| g.in_layer(x, 1, 0).unwrap()).count(), 3);
        assert!(g.in_layer(&x, 0, 0).is_err());
        assert!(g.in_layer(&x, 3, 0).is_err());
        assert!(g.in_layer(&x, 1, 3).is_err());
    }

    #[test]
    fn vertex_display_and_parse() {
        let x: Vertex = "1,2".parse().unwrap();
        assert_eq!(x, Vertex::new(vec![1, 2]));
        assert_eq!(x.to_string(), "1,2");
        assert!("1,x".parse::<Vertex>().is_err());
    }

    fn params_strategy() -> impl Strategy<Value = GraphParams> {
        (1usize..=4, 2usize..=5).prop_map(|(n, q)| p(n, q))
    }

    proptest! {
        #[test]
        fn encode_decode_bijection(g in params_strategy(), seed in any::<usize>()) {
            let v = seed % g.vertex_count();
            let x = g.decode(v).unwrap();
            prop_assert_eq!(g.encode(x.digits()).unwrap(), v);
        }

        #[test]
        fn neighborhood_is_distance_one(g in params_strategy(), a in any::<usize>(), b in any::<usize>()) {
            let x = g.decode(a % g.vertex_count()).unwrap();
            let y = g.decode(b % g.vertex_count()).unwrap();
            let nx = g.neighbors(&x).unwrap();
            let ny = g.neighbors(&y).unwrap();
            prop_assert_eq!(nx.len(), g.degree());
            prop_assert_eq!(nx.contains(&y), ny.contains(&x));
            prop_assert_eq!(nx.contains(&y), hamming_distance(&x, &y).unwrap() == 1);
            let mut dedup = nx.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), nx.len());
        }

        #[test]
        fn layers_have_size_q_pow_n_minus_1(g in params_strategy(), i in 1usize..=4, k in 0usize..5) {
            prop_assume!(i <= g.n() && k < g.q());
            let count = g.vertices().filter(|x| g.in_layer(x, i, k).unwrap()).count();
            prop_assert_eq!(count, g.vertex_count() / g.q());
        }
    }
}
