//! Laurent polynomials with integer coefficients, genus and rooted-map
//! polynomials, and the bouquet recursions.
//!
//! Exponents are absolute genera: `x^g` for orientable genus `g` and
//! `x^{−g̃}` for non-orientable genus `g̃`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::embed::{genus_distribution, EmbeddingClass, EnumOptions};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::perm::factorial;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> LaurentPoly
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Terms with exponent `≥ 0`.
    pub fn nonnegative_part(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(0..)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Terms with exponent `< 0`.
    pub fn negative_part(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(..0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// `p(1/x)`.
    pub fn invert(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, v)| (e, v * c)))
    }

    /// `(num/den)·p`, failing unless every coefficient stays integral.
    pub fn scale_exact(&self, num: &BigInt, den: &BigInt) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (&e, v) in &self.coeffs {
            let (q, r) = (v * num).div_rem(den);
            if !r.is_zero() {
                return Err(Error::NonIntegral(format!(
                    "{v}·{num}/{den} at exponent {e}"
                )));
            }
            out.add_term(e, q);
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let unit = a.is_one();
            match e {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "x")?,
                e if e > 1 && unit => write!(f, "x^{e}")?,
                1 => write!(f, "{a}x")?,
                -1 => write!(f, "{a}/x")?,
                e if e > 0 => write!(f, "{a}x^{e}")?,
                e => write!(f, "{a}/x^{}", -e)?,
            }
        }
        Ok(())
    }
}

/// `g[Γ](x)`, `g̃[Γ](x)` and the total `G[Γ](x) = g(x) + g̃(1/x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusPolys {
    pub orientable: LaurentPoly,
    pub nonorientable: LaurentPoly,
    pub total: LaurentPoly,
}

impl GenusPolys {
    fn from_total(total: LaurentPoly) -> GenusPolys {
        GenusPolys {
            orientable: total.nonnegative_part(),
            nonorientable: total.negative_part().invert(),
            total,
        }
    }
}

/// Genus polynomials by exhaustive enumeration of all rotation systems.
pub fn genus_poly(graph: &MultiGraph, opts: &EnumOptions) -> Result<GenusPolys> {
    let dist = genus_distribution(graph, EmbeddingClass::LocallyOrientable, opts)?;
    Ok(GenusPolys::from_total(LaurentPoly::from_terms(dist)))
}

/// Rooted-map polynomials `R = (2ε / |Aut_{1/2}Γ|)·G`, exact.
pub fn rooted_poly(graph: &MultiGraph, opts: &EnumOptions) -> Result<GenusPolys> {
    let g = genus_poly(graph, opts)?;
    let order = graph.semiarc_aut_group(opts.caps)?.order();
    rooted_from_genus(&g, graph.semiarc_count(), order)
}

pub fn rooted_from_genus(g: &GenusPolys, semiarcs: usize, aut_order: usize) -> Result<GenusPolys> {
    let total = g
        .total
        .scale_exact(&BigInt::from(semiarcs), &BigInt::from(aut_order))?;
    Ok(GenusPolys::from_total(total))
}

fn table_value(n: i64, m: i64, base: impl Fn(i64, i64) -> Option<i64>) -> Option<BigInt> {
    if m < 0 || n < 0 {
        return Some(BigInt::zero());
    }
    base(m, n).map(BigInt::from)
}

/// `g_m(n)`: embeddings of `B_n` on the orientable surface of genus `m`,
/// from `(n+1)g_m(n) = 4(2n−1)(2n−3)(n−1)²(n−2)g_{m−1}(n−2) + 4(2n−1)(n−1)g_m(n−1)`
/// with `g₀(0) = g₀(1) = 1`, `g₀(2) = 4`, `g₁(2) = 2` and all other
/// values with `n ≤ 2` zero.
pub fn bouquet_genus_recursion(m: i64, n: i64) -> Result<BigInt> {
    let mut memo = HashMap::new();
    genus_rec(m, n, &mut memo)
}

fn genus_base(m: i64, n: i64) -> Option<i64> {
    match (m, n) {
        (0, 0) | (0, 1) => Some(1),
        (0, 2) => Some(4),
        (1, 2) => Some(2),
        (_, n) if n <= 2 => Some(0),
        _ => None,
    }
}

fn genus_rec(m: i64, n: i64, memo: &mut HashMap<(i64, i64), BigInt>) -> Result<BigInt> {
    if let Some(v) = table_value(n, m, genus_base) {
        return Ok(v);
    }
    if let Some(v) = memo.get(&(m, n)) {
        return Ok(v.clone());
    }
    let b = |x: i64| BigInt::from(x);
    let rhs = b(4)
        * b(2 * n - 1)
        * b(2 * n - 3)
        * b(n - 1)
        * b(n - 1)
        * b(n - 2)
        * genus_rec(m - 1, n - 2, memo)?
        + b(4) * b(2 * n - 1) * b(n - 1) * genus_rec(m, n - 1, memo)?;
    let (q, r) = rhs.div_rem(&b(n + 1));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("g_{m}({n})")));
    }
    memo.insert((m, n), q.clone());
    Ok(q)
}

/// `r_m(n)`: rooted orientable maps of `B_n` with genus `m`, from
/// `(n²−1)(n−2)r_m(n) = (2n−1)(2n−3)(n−1)²(n−2)r_{m−1}(n−2) + 2(2n−1)(n−1)(n−2)r_m(n−1)`
/// with `r₀(0) = r₀(1) = 1`, `r₀(2) = 2`, `r₁(2) = 1` and all other values
/// with `n ≤ 2` zero.
pub fn bouquet_rooted_recursion(m: i64, n: i64) -> Result<BigInt> {
    let mut memo = HashMap::new();
    rooted_rec(m, n, &mut memo)
}

fn rooted_base(m: i64, n: i64) -> Option<i64> {
    match (m, n) {
        (0, 0) | (0, 1) => Some(1),
        (0, 2) => Some(2),
        (1, 2) => Some(1),
        (_, n) if n <= 2 => Some(0),
        _ => None,
    }
}

fn rooted_rec(m: i64, n: i64, memo: &mut HashMap<(i64, i64), BigInt>) -> Result<BigInt> {
    if let Some(v) = table_value(n, m, rooted_base) {
        return Ok(v);
    }
    if let Some(v) = memo.get(&(m, n)) {
        return Ok(v.clone());
    }
    let b = |x: i64| BigInt::from(x);
    let rhs = b(2 * n - 1)
        * b(2 * n - 3)
        * b(n - 1)
        * b(n - 1)
        * b(n - 2)
        * rooted_rec(m - 1, n - 2, memo)?
        + b(2) * b(2 * n - 1) * b(n - 1) * b(n - 2) * rooted_rec(m, n - 1, memo)?;
    let (q, r) = rhs.div_rem(&(b(n * n - 1) * b(n - 2)));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("r_{m}({n})")));
    }
    memo.insert((m, n), q.clone());
    Ok(q)
}

/// `2n / |Aut_{1/2}B_n| = 2n / (2ⁿ n!)` as a reduced fraction.
pub fn bouquet_transfer_constant(n: usize) -> (BigUint, BigUint) {
    let num = BigUint::from(2 * n);
    let den = (BigUint::one() << n) * factorial(n);
    let g = num.gcd(&den);
    (num / &g, den / g)
}
