//! Closed-form counts and bounds, evaluated exactly.
//!
//! The formulas are transcribed as displayed; where a transcription does not
//! evaluate to an integer, the integer-valued entry points return
//! [`Error::NonIntegral`] and the `_exact` variants expose the rational value.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::embed::EnumOptions;
use crate::error::{Error, Result};
use crate::graph::{GroupCaps, MultiGraph};
use crate::map::CombMap;
use crate::perm::{cycle_index_sns2, euler_phi, factorial, Perm};
use crate::poly::{rooted_poly, LaurentPoly};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn fact(n: usize) -> BigRational {
    rat(factorial(n))
}

fn to_count(x: BigRational, what: &str) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegral(format!("{what} = {x}")));
    }
    Ok(x.to_integer().to_biguint().expect("non-negative"))
}

/// `2^e` for an integral rational exponent.
fn pow2(e: &BigRational) -> Result<BigRational> {
    if !e.is_integer() {
        return Err(Error::NonIntegral(format!("exponent {e}")));
    }
    let k = e
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::OutOfRange(format!("exponent {e}")))?;
    let p = BigInt::one() << k.unsigned_abs();
    Ok(if k >= 0 {
        rat(p)
    } else {
        BigRational::new(BigInt::one(), p)
    })
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |k| n.is_multiple_of(*k))
}

/// The two readings of the odd-`k` exponent `β(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BetaVariant {
    /// `(n−1)(n−2)/2k`.
    Statement,
    /// `(n−1)(n−4)/2k`.
    Proof,
}

pub fn kn_alpha(n: usize, k: usize) -> BigRational {
    let n = n as i64;
    let num = if k % 2 == 1 { n * (n - 3) } else { n * (n - 2) };
    BigRational::new(num.into(), (2 * k as i64).into())
}

pub fn kn_beta(n: usize, k: usize, variant: BetaVariant) -> BigRational {
    let n = n as i64;
    let num = match (k % 2, variant) {
        (0, _) => (n - 1) * (n - 3),
        (_, BetaVariant::Statement) => (n - 1) * (n - 2),
        (_, BetaVariant::Proof) => (n - 1) * (n - 4),
    };
    BigRational::new(num.into(), (2 * k as i64).into())
}

/// Which powers of two appear in a complete-graph count.
#[derive(Clone, Copy)]
enum Weight {
    /// `1` (orientable).
    One,
    /// `2^e` (locally orientable).
    Pow,
    /// `2^e − 1` (non-orientable).
    PowMinusOne,
}

fn weight(w: Weight, e: &BigRational) -> Result<BigRational> {
    Ok(match w {
        Weight::One => BigRational::one(),
        Weight::Pow => pow2(e)?,
        Weight::PowMinusOne => pow2(e)? - BigRational::one(),
    })
}

/// `½(Σ_{k|n} + Σ_{k|n, k even}) w(α) (n−2)!^{n/k} / (k^{n/k}(n/k)!)
///  + Σ_{k|n−1, k≠1} φ(k) w(β) (n−2)!^{(n−1)/k} / (n−1)`.
fn complete_form(n: usize, w: Weight, variant: BetaVariant) -> Result<BigRational> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("complete graph order {n} < 4")));
    }
    let base = fact(n - 2);
    let mut sum = BigRational::zero();
    for k in divisors(n) {
        let j = n / k;
        let term = weight(w, &kn_alpha(n, k))? * num_traits::pow(base.clone(), j)
            / (rat(BigInt::from(k).pow(j as u32)) * fact(j));
        let mult = if k % 2 == 0 { 2 } else { 1 };
        sum += term * rat(mult) / rat(2);
    }
    for k in divisors(n - 1).filter(|&k| k != 1) {
        let j = (n - 1) / k;
        sum += rat(euler_phi(k as u64))
            * weight(w, &kn_beta(n, k, variant))?
            * num_traits::pow(base.clone(), j)
            / rat(n - 1);
    }
    Ok(sum)
}

pub fn n_o_complete_exact(n: usize) -> Result<BigRational> {
    complete_form(n, Weight::One, BetaVariant::Statement)
}

pub fn n_l_complete_exact(n: usize, variant: BetaVariant) -> Result<BigRational> {
    complete_form(n, Weight::Pow, variant)
}

pub fn n_n_complete_exact(n: usize, variant: BetaVariant) -> Result<BigRational> {
    complete_form(n, Weight::PowMinusOne, variant)
}

/// Unrooted orientable maps of `K_n` by the closed form; `n = 4` gives 3.
pub fn n_o_complete(n: usize) -> Result<BigUint> {
    if n == 4 {
        return Ok(3u32.into());
    }
    to_count(n_o_complete_exact(n)?, "n_O(K_n)")
}

/// Unrooted maps of `K_n` by the closed form; `n = 4` gives 11.
pub fn n_l_complete(n: usize, variant: BetaVariant) -> Result<BigUint> {
    if n == 4 {
        return Ok(11u32.into());
    }
    to_count(n_l_complete_exact(n, variant)?, "n_L(K_n)")
}

/// Unrooted non-orientable maps of `K_n` by the closed form; `n = 4` gives 8.
pub fn n_n_complete(n: usize, variant: BetaVariant) -> Result<BigUint> {
    if n == 4 {
        return Ok(8u32.into());
    }
    to_count(n_n_complete_exact(n, variant)?, "n_N(K_n)")
}

/// The `β` variants whose `n^L(K_n)` equals `target`.
pub fn matching_beta_variants(n: usize, target: &BigUint) -> Vec<BetaVariant> {
    [BetaVariant::Statement, BetaVariant::Proof]
        .into_iter()
        .filter(|&v| n_l_complete_exact(n, v).ok() == Some(rat(target.clone())))
        .collect()
}

fn pure(n: usize, k: usize, m: usize) -> BigRational {
    cycle_index_sns2(n).pure_coefficient(k, m as u32)
}

/// `Σ_{k|2n, k≠2n} k^{m−1}(m−1)! (1/m!) ∂^m Z/∂s_k^m + φ(2n) ∂Z/∂s_{2n}`, `m = 2n/k`,
/// with derivatives at zero read as `m!·[s_k^m]Z(S_n[S_2])`.
pub fn n_o_bouquet_exact(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange("bouquet with no loops".into()));
    }
    let z = cycle_index_sns2(n);
    let mut sum = BigRational::zero();
    for k in divisors(2 * n).filter(|&k| k != 2 * n) {
        let m = 2 * n / k;
        sum += rat(BigInt::from(k).pow(m as u32 - 1)) * fact(m - 1) / fact(m)
            * z.derivative_at_zero(k, m as u32);
    }
    sum += rat(euler_phi(2 * n as u64)) * z.derivative_at_zero(2 * n, 1);
    Ok(sum)
}

/// `(2n−1)!/n! + Σ_{k|2n, 3≤k<2n} (2k)^{m−1}(m−1)! ∂^m Z/∂s_k^m
///  + (Σ_{s≥1} n!/((n−2s)!s!) + 4ⁿ(n−1)!(∂ⁿZ/∂s_2ⁿ − ⌊n/2⌋)) / (2ⁿn!)`.
pub fn n_n_bouquet_exact(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange("bouquet with no loops".into()));
    }
    let z = cycle_index_sns2(n);
    let mut sum = fact(2 * n - 1) / fact(n);
    for k in divisors(2 * n).filter(|&k| (3..2 * n).contains(&k)) {
        let m = 2 * n / k;
        sum += rat(BigInt::from(2 * k).pow(m as u32 - 1))
            * fact(m - 1)
            * z.derivative_at_zero(k, m as u32);
    }
    let mut inner = BigRational::zero();
    for s in 1..=n / 2 {
        inner += fact(n) / (fact(n - 2 * s) * fact(s));
    }
    inner += rat(BigInt::from(4).pow(n as u32))
        * fact(n - 1)
        * (z.derivative_at_zero(2, n as u32) - rat(n / 2));
    sum += inner / (rat(BigInt::one() << n) * fact(n));
    Ok(sum)
}

pub fn n_o_bouquet(n: usize) -> Result<BigUint> {
    to_count(n_o_bouquet_exact(n)?, "n_O(B_n)")
}

pub fn n_n_bouquet(n: usize) -> Result<BigUint> {
    to_count(n_n_bouquet_exact(n)?, "n_N(B_n)")
}

/// `(1/m!)·m!·[s_k^m]` shortcut used by tests to cross-check coefficient reading.
pub fn bouquet_pure_coefficient(n: usize, k: usize, m: usize) -> BigRational {
    pure(n, k, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetricCounts {
    pub n_o: BigUint,
    pub n_n: BigUint,
    pub n_l: BigUint,
    pub eta_o: BigUint,
    pub eta_n: BigUint,
    pub eta_l: BigUint,
}

/// Counts for a graph whose semi-arc automorphism group is trivial, with
/// `Π = ∏(ρ(v)−1)!`: `n^O = Π/2`, `n^N = (2^{β−1}−½)Π`, `n^L = 2^{β−1}Π`,
/// `η^O = Π`, `η^N = (2^β−1)Π`, `η^L = 2^βΠ`.
pub fn asymmetric_counts(graph: &MultiGraph, caps: GroupCaps) -> Result<AsymmetricCounts> {
    let order = graph.semiarc_aut_group(caps)?.order();
    if order != 1 {
        return Err(Error::NotAsymmetric(order));
    }
    let pi: BigUint = graph
        .valency_sequence()
        .iter()
        .map(|&r| factorial(r.saturating_sub(1)))
        .product();
    let twist = BigUint::one() << graph.betti();
    let half = |x: BigUint| -> Result<BigUint> {
        let (q, r) = x.div_rem(&BigUint::from(2u32));
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonIntegral(format!("{x}/2")))
        }
    };
    let eta_o = pi.clone();
    let eta_n = (&twist - 1u32) * &pi;
    let eta_l = &twist * &pi;
    Ok(AsymmetricCounts {
        n_o: half(eta_o.clone())?,
        n_n: half(eta_n.clone())?,
        n_l: half(eta_l.clone())?,
        eta_o,
        eta_n,
        eta_l,
    })
}

/// `(84(g−1), 168(g−1))` for orientable genus `g ≥ 2`, or
/// `(42(g′−2), 84(g′−2))` for non-orientable genus `g′ ≥ 3`.
pub fn hurwitz_bounds(genus: i64, orientable: bool) -> Result<(u64, u64)> {
    if orientable && genus >= 2 {
        let g = genus as u64;
        Ok((84 * (g - 1), 168 * (g - 1)))
    } else if !orientable && genus >= 3 {
        let g = genus as u64;
        Ok((42 * (g - 2), 84 * (g - 2)))
    } else {
        Err(Error::OutOfRange(format!("genus {genus} below threshold")))
    }
}

/// `2g+1` for orientable `g ≥ 2`, `g̃+1` for non-orientable `g̃ ≥ 3`.
pub fn max_automorphism_order(genus: i64, orientable: bool) -> Result<u64> {
    match (orientable, genus) {
        (true, g) if g >= 2 => Ok(2 * g as u64 + 1),
        (false, g) if g >= 3 => Ok(g as u64 + 1),
        _ => Err(Error::OutOfRange(format!("genus {genus} below threshold"))),
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n)
}

/// `g_min = 1 + N(g − 1 + (1 − 1/p₁)⌊φ/2⌋)` and
/// `g′_min = 2 + N(g − 2 + 2(1 − 1/p₁)⌊φ/2⌋)`, `p₁` the least prime factor of `N`.
pub fn min_genus_fixed_free(map: &CombMap, n: u64) -> Result<(i64, i64)> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("N = {n} < 2")));
    }
    let inv = map.invariants();
    let p1 = smallest_prime_factor(n) as i64;
    let n = n as i64;
    let half_faces = (inv.f / 2) as i64;
    let g = inv.genus;
    // N(1 − 1/p₁) = N − N/p₁ is an integer
    let reduced = n - n / p1;
    Ok((
        1 + n * (g - 1) + reduced * half_faces,
        2 + n * (g - 2) + 2 * reduced * half_faces,
    ))
}

/// `6n` for a triangulation with `n` faces, and `min(6n, −21χ)` when `χ < 0`.
pub fn smanifold_aut_bound(faces: usize, chi: i64) -> u64 {
    let six = 6 * faces as u64;
    if chi < 0 {
        six.min((-21 * chi) as u64)
    } else {
        six
    }
}

/// `R[B_n]` from exhaustive enumeration.
pub fn bouquet_rooted_polys(n: usize, opts: &EnumOptions) -> Result<LaurentPoly> {
    Ok(rooted_poly(&MultiGraph::bouquet(n)?, opts)?.total)
}

/// One vertex whose rotation is `x₁ … x_k αβx₁ … αβx_k`, with `x_i` the
/// base quadricell of edge `i`.
pub fn regular_map_mk(k: usize) -> Result<CombMap> {
    if k == 0 {
        return Err(Error::OutOfRange("k = 0".into()));
    }
    let cycle: Vec<u32> = (0..k as u32)
        .map(|i| 4 * i)
        .chain((0..k as u32).map(|i| 4 * i + 3))
        .collect();
    let mut images = vec![0u32; 4 * k];
    for (i, &q) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % cycle.len()];
        images[q as usize] = next;
        images[(next ^ 2) as usize] = q ^ 2;
    }
    CombMap::new(k, Perm::from_images(images)?)
}

/// The largest element order in a set of permutations.
pub fn max_element_order(elements: &[Perm]) -> BigUint {
    elements
        .iter()
        .map(Perm::order)
        .max()
        .unwrap_or_else(BigUint::one)
}

/// Checks that `|Aut M|` divides `2i·v_i` for every valency `i` and that
/// every vertex orbit size divides `|Aut M|`.
pub fn aut_divisibility(map: &CombMap) -> bool {
    let auts = map.automorphisms();
    let order = auts.len();
    let vof = map.vertex_of();
    let vals = map.vertex_valencies();
    let mut by_valency = std::collections::BTreeMap::new();
    for &v in &vals {
        *by_valency.entry(v).or_insert(0usize) += 1;
    }
    let valency_ok = by_valency.iter().all(|(&i, &vi)| (2 * i * vi) % order == 0);
    let orbits_ok = (0..vals.len()).all(|v| {
        let q = map.vertices()[v].cycle[0];
        let mut orbit: Vec<usize> = auts.iter().map(|g| vof[g.apply(q) as usize]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        order.is_multiple_of(orbit.len())
    });
    valency_ok && orbits_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exponents() {
        assert_eq!(kn_alpha(5, 1), r(5, 1));
        assert_eq!(kn_alpha(6, 2), r(6, 1));
        assert_eq!(kn_beta(5, 2, BetaVariant::Statement), r(2, 1));
        assert_eq!(kn_beta(7, 3, BetaVariant::Statement), r(5, 1));
        assert_eq!(kn_beta(7, 3, BetaVariant::Proof), r(3, 1));
    }

    #[test]
    fn k4_special_values() {
        assert_eq!(
            n_l_complete(4, BetaVariant::Statement).unwrap(),
            11u32.into()
        );
        assert_eq!(n_o_complete(4).unwrap(), 3u32.into());
        assert_eq!(n_n_complete(4, BetaVariant::Proof).unwrap(), 8u32.into());
        assert!(n_o_complete(3).is_err());
    }

    #[test]
    fn k5_displayed_values() {
        assert_eq!(n_o_complete(5).unwrap(), 45u32.into());
        for v in [BetaVariant::Statement, BetaVariant::Proof] {
            assert_eq!(n_l_complete(5, v).unwrap(), 1080u32.into());
            assert_eq!(n_n_complete(5, v).unwrap(), 1035u32.into());
        }
    }

    #[test]
    fn complete_identity_holds_exactly() {
        for n in 4..8 {
            for v in [BetaVariant::Statement, BetaVariant::Proof] {
                assert_eq!(
                    n_o_complete_exact(n).unwrap() + n_n_complete_exact(n, v).unwrap(),
                    n_l_complete_exact(n, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn non_integral_transcriptions_are_reported() {
        assert_eq!(n_o_complete_exact(6).unwrap(), r(665188, 5));
        assert!(matches!(n_o_complete(6), Err(Error::NonIntegral(_))));
        assert!(matches!(
            n_l_complete(8, BetaVariant::Statement),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn bouquet_forms() {
        assert_eq!(n_o_bouquet(2).unwrap(), 2u32.into());
        assert_eq!(n_o_bouquet_exact(1).unwrap(), r(1, 1));
        assert_eq!(n_o_bouquet_exact(3).unwrap(), r(9, 2));
        assert_eq!(n_n_bouquet_exact(1).unwrap(), r(2, 1));
        assert_eq!(n_n_bouquet_exact(2).unwrap(), r(11, 4));
    }

    #[test]
    fn hurwitz() {
        assert_eq!(hurwitz_bounds(2, true).unwrap(), (84, 168));
        assert_eq!(hurwitz_bounds(3, false).unwrap(), (42, 84));
        assert!(hurwitz_bounds(1, true).is_err());
        assert_eq!(max_automorphism_order(2, true).unwrap(), 5);
        assert_eq!(max_automorphism_order(3, false).unwrap(), 4);
    }

    #[test]
    fn smanifold_bound() {
        assert_eq!(smanifold_aut_bound(24, -1), 21);
        assert_eq!(smanifold_aut_bound(20, 2), 120);
    }

    #[test]
    fn regular_maps() {
        for g in 1..4usize {
            let m = regular_map_mk(2 * g + 1).unwrap();
            let inv = m.invariants();
            assert!(inv.orientable);
            assert_eq!((inv.v, inv.f, inv.genus), (1, 2, g as i64));
            let plus = m.orientation_preserving_automorphisms().unwrap();
            assert!(plus.len() >= 4 * g + 2);
        }
    }

    #[test]
    fn rotation_of_mk_exceeds_the_order_bound() {
        // The one-step rotation of M_5 (genus 2) has order 10 > 2g+1 = 5.
        let m = regular_map_mk(5).unwrap();
        let auts = m.orientation_preserving_automorphisms().unwrap();
        assert_eq!(max_element_order(&auts), 10u32.into());
    }

    #[test]
    fn min_genus_formula() {
        let m = crate::map::tests::planar_loop();
        // g = 0, φ = 2, N = 2, p₁ = 2: 1 + 2(−1) + 1 = 0
        assert_eq!(min_genus_fixed_free(&m, 2).unwrap(), (0, 0));
        let one_face = CombMap::from_images(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(one_face.invariants().f, 1);
        let (g, _) = min_genus_fixed_free(&one_face, 3).unwrap();
        assert_eq!(g, 1 + 3 * (one_face.invariants().genus - 1));
    }

    #[test]
    fn asymmetric_requires_trivial_group() {
        let k4 = MultiGraph::complete(4).unwrap();
        assert!(matches!(
            asymmetric_counts(&k4, GroupCaps::default()),
            Err(Error::NotAsymmetric(24))
        ));
    }

    #[test]
    fn divisibility_on_fig12() {
        assert!(aut_divisibility(&crate::map::tests::fig12()));
    }
}
