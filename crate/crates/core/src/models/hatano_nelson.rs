//! Bipartite Hatano–Nelson chain of `L` sites.
//!
//! Bond `j` (sites `j`, `j+1`) uses `(t_1, γ_1)` for odd `j` and `(t_2, γ_2)`
//! for even `j`; its hopping is `t − γ` to the right (above the diagonal) and
//! `t + γ` to the left. The corners `η_1` at `(1, L)` and `η_2` at `(L, 1)`
//! close the ring.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charpoly::PolyMatrix;
use crate::error::{Error, Result};
use crate::models::{ExactMatrix, ModelFamily, Realization, G};
use crate::poly::ScalarPoly;
use crate::tropical::SplittingReport;

#[derive(Clone, Debug, PartialEq)]
pub enum HatanoNelsonRegime {
    /// Open chain with `t_2 = γ_2 = 1` and `t_1 = γ_1 + ε`.
    Obc { gamma1: BigRational },
    /// `t_j = −γ_j`, so only rightward hopping `2t_j` survives, plus the
    /// corner `η_2 = ε`.
    Unidirectional { t1: BigRational, t2: BigRational },
}

/// Chain with polynomial bond parameters `(t_j, γ_j)` and corners.
fn chain(
    l: usize,
    bond: impl Fn(usize) -> (ScalarPoly<G>, ScalarPoly<G>),
    eta1: ScalarPoly<G>,
    eta2: ScalarPoly<G>,
) -> PolyMatrix<G> {
    let mut m = PolyMatrix::zeros(l);
    for j in 0..l - 1 {
        let (t, gamma) = bond(j + 1);
        m.set(j, j + 1, &t - &gamma);
        m.set(j + 1, j, &t + &gamma);
    }
    m.set(0, l - 1, &m.get(0, l - 1).clone() + &eta1);
    m.set(l - 1, 0, &m.get(l - 1, 0).clone() + &eta2);
    m
}

fn k(r: &BigRational) -> ScalarPoly<G> {
    ScalarPoly::constant(G::real(r.clone()))
}

pub fn hatano_nelson(l: u32, regime: HatanoNelsonRegime) -> Result<ModelFamily> {
    if l < 2 {
        return Err(Error::InvalidArgument("Hatano-Nelson chain needs L ≥ 2".into()));
    }
    let n = l as usize;
    let half = l / 2;
    let (matrix, expected, params) = match &regime {
        HatanoNelsonRegime::Obc { gamma1 } => {
            if gamma1.is_zero() {
                // ε(2γ_1 + ε) has order 2 instead of 1
                return Err(Error::InvalidArgument("obc regime needs γ1 ≠ 0".into()));
            }
            let m = chain(
                n,
                |j| {
                    if j % 2 == 1 {
                        (k(gamma1) + ScalarPoly::t(), k(gamma1))
                    } else {
                        (ScalarPoly::one(), ScalarPoly::one())
                    }
                },
                ScalarPoly::zero(),
                ScalarPoly::zero(),
            );
            let expected = SplittingReport::expect(n, &[(1, 2, 2 * half)], n % 2);
            (m, expected, vec![("regime".to_string(), "obc".to_string()), ("gamma1".to_string(), gamma1.to_string())])
        }
        HatanoNelsonRegime::Unidirectional { t1, t2 } => {
            if t1.is_zero() || (l > 2 && t2.is_zero()) {
                return Err(Error::InvalidArgument("unidirectional regime needs nonzero hoppings".into()));
            }
            let m = chain(
                n,
                |j| {
                    let t = if j % 2 == 1 { t1 } else { t2 };
                    (k(t), -k(t))
                },
                ScalarPoly::zero(),
                ScalarPoly::t(),
            );
            let expected = SplittingReport::expect(n, &[(1, l as i64, l)], 0);
            (
                m,
                expected,
                vec![
                    ("regime".to_string(), "unidirectional".to_string()),
                    ("t1".to_string(), t1.to_string()),
                    ("t2".to_string(), t2.to_string()),
                ],
            )
        }
    };
    let mut parameters = vec![("L".to_string(), l.to_string())];
    parameters.extend(params);
    Ok(ModelFamily {
        name: "hatano_nelson".into(),
        parameters,
        realization: Realization::Matrix(ExactMatrix::Gaussian(matrix)),
        expected: Some(expected),
        notes: vec![],
    })
}

/// `λ^{L mod 2} (λ² − ε(2γ_1 + ε))^{⌊L/2⌋}` and
/// `λ^L − 2^{L−1} t_1^{⌊L/2⌋} t_2^{⌊(L−1)/2⌋} ε`.
pub fn hatano_nelson_closed_form(l: u32, regime: &HatanoNelsonRegime) -> crate::charpoly::CharPoly<G> {
    use crate::charpoly::CharPoly;
    let t = ScalarPoly::<G>::t();
    match regime {
        HatanoNelsonRegime::Obc { gamma1 } => {
            let two_g = k(&(gamma1 * BigRational::from_integer(2.into())));
            let quad = CharPoly::from_lower(vec![ScalarPoly::zero(), -(&t * &(&two_g + &t))]).expect("degree two");
            let mut out = if l % 2 == 1 {
                CharPoly::from_lower(vec![ScalarPoly::zero()]).expect("degree one")
            } else {
                quad.clone()
            };
            let start = if l % 2 == 1 { 0 } else { 1 };
            for _ in start..l / 2 {
                out = out.product(&quad);
            }
            out
        }
        HatanoNelsonRegime::Unidirectional { t1, t2 } => {
            let mut c = BigRational::from_integer(num_bigint::BigInt::one() << (l - 1));
            for _ in 0..l / 2 {
                c *= t1;
            }
            for _ in 0..(l - 1) / 2 {
                c *= t2;
            }
            let mut lower = vec![ScalarPoly::zero(); l as usize];
            lower[l as usize - 1] = t.scale(&G::real(-c));
            CharPoly::from_lower(lower).expect("degree L")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ExactCharPoly;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn closed_forms_reproduced() {
        for l in 2..=7 {
            for regime in [
                HatanoNelsonRegime::Obc { gamma1: rat(1, 1) },
                HatanoNelsonRegime::Obc { gamma1: rat(-3, 7) },
                HatanoNelsonRegime::Unidirectional { t1: rat(-1, 1), t2: rat(-1, 1) },
                HatanoNelsonRegime::Unidirectional { t1: rat(2, 3), t2: rat(-5, 1) },
            ] {
                let m = hatano_nelson(l, regime.clone()).unwrap();
                let Some(ExactCharPoly::Gaussian(c)) = m.charpoly().unwrap() else { unreachable!() };
                assert_eq!(c, hatano_nelson_closed_form(l, &regime), "L={l} {regime:?}");
                assert_eq!(m.analyze().unwrap().report, m.expected.unwrap(), "L={l} {regime:?}");
            }
        }
    }

    #[test]
    fn odd_chain_has_flat_band() {
        let r = hatano_nelson(5, HatanoNelsonRegime::Obc { gamma1: rat(1, 1) }).unwrap().analyze().unwrap().report;
        assert_eq!(r, SplittingReport::expect(5, &[(1, 2, 4)], 1));
    }

    #[test]
    fn unidirectional_is_epl() {
        let r = hatano_nelson(5, HatanoNelsonRegime::Unidirectional { t1: rat(-1, 1), t2: rat(-1, 1) })
            .unwrap()
            .analyze()
            .unwrap()
            .report;
        assert_eq!(r, SplittingReport::expect(5, &[(1, 5, 5)], 0));
    }

    #[test]
    fn rejects_short_chain() {
        assert!(hatano_nelson(1, HatanoNelsonRegime::Obc { gamma1: rat(1, 1) }).is_err());
    }
}
