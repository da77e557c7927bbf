//! Single-layer and dual-layer functions, and classification of additive
//! functions of small support into exactly one of three canonical forms.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function_space::{parse_rational, Rational, VertexFunction};
use crate::hamming::GraphParams;
use crate::reduction::additive_decompose;

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&c.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// The three shapes an additive function of support at most
/// `2(q−1)q^{n−2}` can take. Coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CanonicalForm {
    Zero,
    /// `c` on `T_k(i,n)`, zero elsewhere.
    SingleLayer {
        i: usize,
        k: usize,
        #[serde(with = "rational_string")]
        c: Rational,
    },
    /// `c` on `T_k(i,n)∖T_m(j,n)`, `−c` on `T_m(j,n)∖T_k(i,n)`, zero
    /// elsewhere. Stored with `i < j`.
    DualLayer {
        i: usize,
        k: usize,
        j: usize,
        m: usize,
        #[serde(with = "rational_string")]
        c: Rational,
    },
}

impl CanonicalForm {
    /// Dual-layer form with the two layers ordered so that `i < j`.
    pub fn dual_layer(i: usize, k: usize, j: usize, m: usize, c: Rational) -> Self {
        if i <= j {
            CanonicalForm::DualLayer { i, k, j, m, c }
        } else {
            CanonicalForm::DualLayer {
                i: j,
                k: m,
                j: i,
                m: k,
                c: -c,
            }
        }
    }

    /// Clause number in the trichotomy: 1 zero, 2 single layer, 3 dual layer.
    pub fn clause(&self) -> usize {
        match self {
            CanonicalForm::Zero => 1,
            CanonicalForm::SingleLayer { .. } => 2,
            CanonicalForm::DualLayer { .. } => 3,
        }
    }

    pub fn is_dual_layer(&self) -> bool {
        matches!(self, CanonicalForm::DualLayer { .. })
    }

    pub fn to_function(&self, params: &GraphParams) -> Result<VertexFunction> {
        match self {
            CanonicalForm::Zero => Ok(VertexFunction::zeros(*params)),
            CanonicalForm::SingleLayer { i, k, c } => construct_single_layer(params, *i, *k, c.clone()),
            CanonicalForm::DualLayer { i, k, j, m, c } => construct_dual_layer(params, *i, *k, *j, *m, c.clone()),
        }
    }

    pub fn scaled(&self, alpha: &Rational) -> Self {
        match self {
            CanonicalForm::Zero => CanonicalForm::Zero,
            CanonicalForm::SingleLayer { i, k, c } => CanonicalForm::SingleLayer {
                i: *i,
                k: *k,
                c: c * alpha,
            },
            CanonicalForm::DualLayer { i, k, j, m, c } => CanonicalForm::DualLayer {
                i: *i,
                k: *k,
                j: *j,
                m: *m,
                c: c * alpha,
            },
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::Zero => write!(f, "zero"),
            CanonicalForm::SingleLayer { i, k, c } => write!(f, "single_layer(i={i}, k={k}, c={c})"),
            CanonicalForm::DualLayer { i, k, j, m, c } => {
                write!(f, "dual_layer(i={i}, k={k}, j={j}, m={m}, c={c})")
            }
        }
    }
}

fn check_layer(params: &GraphParams, i: usize, k: usize) -> Result<()> {
    params.check_coordinate(i)?;
    params.check_digit(i, k)
}

fn check_nonzero(c: &Rational) -> Result<()> {
    if c.is_zero() {
        return Err(Error::InvalidArgument("layer constant c must be nonzero".into()));
    }
    Ok(())
}

/// `c` on `T_k(i,n)∖T_m(j,n)`, `−c` on `T_m(j,n)∖T_k(i,n)`, zero elsewhere.
pub fn construct_dual_layer(
    params: &GraphParams,
    i: usize,
    k: usize,
    j: usize,
    m: usize,
    c: Rational,
) -> Result<VertexFunction> {
    check_layer(params, i, k)?;
    check_layer(params, j, m)?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "dual layer needs i ≠ j, got i = j = {i}"
        )));
    }
    check_nonzero(&c)?;
    let neg = -c.clone();
    Ok(VertexFunction::from_index_fn(*params, |x| {
        match (params.digit_of(x, i) == k, params.digit_of(x, j) == m) {
            (true, false) => c.clone(),
            (false, true) => neg.clone(),
            _ => Rational::zero(),
        }
    }))
}

/// `c` on `T_k(i,n)`, zero elsewhere.
pub fn construct_single_layer(params: &GraphParams, i: usize, k: usize, c: Rational) -> Result<VertexFunction> {
    check_layer(params, i, k)?;
    check_nonzero(&c)?;
    Ok(VertexFunction::from_index_fn(*params, |x| {
        if params.digit_of(x, i) == k {
            c.clone()
        } else {
            Rational::zero()
        }
    }))
}

/// Coordinates of the dual-layer function in the `e_{t,v}` basis of the
/// `λ₁` eigenspace: `c([v=k] − 1/q)` on block `i`, `−c([v=m] − 1/q)` on
/// block `j`, zero elsewhere.
pub fn dual_layer_basis_coefficients(
    params: &GraphParams,
    i: usize,
    k: usize,
    j: usize,
    m: usize,
    c: &Rational,
) -> Vec<Rational> {
    let q = params.q();
    let inv_q = Rational::new(1.into(), q.into());
    let mut out = vec![Rational::zero(); params.degree()];
    for v in 1..q {
        let pattern = |d: usize| if v == d { Rational::one() } else { Rational::zero() } - &inv_q;
        out[(i - 1) * (q - 1) + v - 1] = c * pattern(k);
        out[(j - 1) * (q - 1) + v - 1] = -(c * pattern(m));
    }
    out
}

/// `2(q−1)q^{n−2}`, the minimum support of a nonzero `λ₁` eigenfunction
/// for `q > 2`.
pub fn minimum_support(params: &GraphParams) -> usize {
    2 * (params.q() - 1) * params.q().pow((params.n() - 2) as u32)
}

/// Recognizes `c·([v=k] − 1/q)` as a function of `v`; returns `(k, c)`.
fn match_centered_indicator(part: &[Rational]) -> Option<(usize, Rational)> {
    let q = part.len();
    let inv_q = Rational::new(1.into(), q.into());
    (0..q).find_map(|k| {
        let c = &part[k] - &part[(k + 1) % q];
        if c.is_zero() {
            return None;
        }
        let fits = part.iter().enumerate().all(|(v, u)| {
            let ind = if v == k { Rational::one() } else { Rational::zero() };
            *u == &c * (ind - &inv_q)
        });
        fits.then_some((k, c))
    })
}

/// Identifies which of the three canonical forms an additive function is.
///
/// Requires `n ≥ 2`, `q > 2`, `f` additive, and `|S(f)| ≤ 2(q−1)q^{n−2}`.
/// The function is decomposed into centered univariate parts, a candidate
/// form is read off the active coordinates, and the candidate is rebuilt
/// and compared with `f` exactly. [`Error::NoFormMatched`] means no form
/// fits, which cannot happen for inputs satisfying the preconditions.
pub fn classify_additive(f: &VertexFunction) -> Result<CanonicalForm> {
    let params = *f.params();
    if params.n() < 2 {
        return Err(Error::Unsupported(format!("classification needs n ≥ 2, got {params}")));
    }
    if params.q() <= 2 {
        return Err(Error::Unsupported(format!("classification needs q > 2, got {params}")));
    }
    let support = f.support_size();
    let max = minimum_support(&params);
    if support > max {
        return Err(Error::SupportTooLarge { support, max });
    }
    let decomposition = additive_decompose(f)?;
    if decomposition.is_zero() {
        return Ok(CanonicalForm::Zero);
    }
    let (_, parts) = decomposition.centered();
    let active: Vec<usize> = (0..parts.len())
        .filter(|&t| parts[t].iter().any(|u| !u.is_zero()))
        .collect();

    let no_match = |why: String| Error::NoFormMatched(format!("{params}, f = {f}: {why}"));
    let candidate = match active.as_slice() {
        [t] => {
            let (k, c) = match_centered_indicator(&parts[*t])
                .ok_or_else(|| no_match(format!("coordinate {} is not a layer pattern", t + 1)))?;
            CanonicalForm::SingleLayer { i: t + 1, k, c }
        }
        [s, t] => {
            let (k, c) = match_centered_indicator(&parts[*s])
                .ok_or_else(|| no_match(format!("coordinate {} is not a layer pattern", s + 1)))?;
            let (m, _) = match_centered_indicator(&parts[*t])
                .ok_or_else(|| no_match(format!("coordinate {} is not a layer pattern", t + 1)))?;
            CanonicalForm::dual_layer(s + 1, k, t + 1, m, c)
        }
        _ => return Err(no_match(format!("{} active coordinates", active.len()))),
    };
    if candidate.to_function(&params)? != *f {
        return Err(no_match(format!("candidate {candidate} does not reproduce f")));
    }
    Ok(candidate)
}
