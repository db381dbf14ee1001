//! Nontrivial perturbation families of every Jordan form with `n ≤ 4`.
//!
//! Each Jordan form carries a template `H^tot` whose entries are affine in
//! placeholders `d_ij`. A family fixes a direction `d_ij = c_ij·t`: generic
//! slopes are random nonzero integers in `±1..±9`, and non-generic
//! constraints are imposed exactly, either by zeroing placeholders or by
//! solving one coefficient of the characteristic polynomial for one slope.
//!
//! Genericity is checked on the coefficients `c_{i,k}` (the `t^k` coefficient
//! of `a_i`) that each family needs to be nonzero; draws that fail the check
//! are rejected.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charpoly::{charpoly_checked, MatrixTemplate, PolyMatrix};
use crate::error::{Error, Result};
use crate::jordan::{jordan_matrix, JordanPartition};
use crate::scalar::{ExactScalar, GaussianRational};
use crate::tropical::SplittingReport;

type G = GaussianRational;

pub const DEFAULT_SEED: u64 = 20240917;

const MAX_DRAWS: usize = 256;

/// One perturbation direction of one Jordan form.
#[derive(Clone, Debug)]
pub struct PerturbationFamily {
    pub partition: JordanPartition,
    /// `"generic"` or the name of the imposed constraint.
    pub constraint: String,
    pub template: MatrixTemplate<G>,
    pub direction: BTreeMap<String, G>,
    pub matrix: PolyMatrix<G>,
    pub expected: SplittingReport,
}

impl PerturbationFamily {
    pub fn is_generic(&self) -> bool {
        self.constraint == "generic"
    }

    pub fn name(&self) -> String {
        format!("{} {}", self.partition.label(), self.constraint)
    }
}

/// How one family is built.
struct Recipe {
    constraint: &'static str,
    zero: &'static [&'static str],
    /// `(placeholder, i, k)`: choose the slope so that `c_{i,k} = 0`.
    solve: &'static [(&'static str, usize, u32)],
    /// Coefficients `c_{i,k}` that must not vanish.
    nonzero: &'static [(usize, u32)],
    /// `(numer, denom, multiplicity)` roots and the zero-root count.
    expected: (&'static [(i64, i64, u32)], usize),
}

struct Form {
    sizes: &'static [usize],
    template: &'static [&'static [&'static str]],
    recipes: &'static [Recipe],
}

const fn r(
    constraint: &'static str,
    zero: &'static [&'static str],
    solve: &'static [(&'static str, usize, u32)],
    nonzero: &'static [(usize, u32)],
    expected: (&'static [(i64, i64, u32)], usize),
) -> Recipe {
    Recipe { constraint, zero, solve, nonzero, expected }
}

const FORMS_2: &[Form] = &[
    Form {
        sizes: &[1, 1],
        template: &[&["-d22", "d12"], &["d21", "d22"]],
        recipes: &[
            r("generic", &[], &[], &[(2, 2)], (&[(1, 1, 2)], 0)),
            r("d22^2+d12*d21=0", &[], &[("d21", 2, 2)], &[], (&[], 2)),
        ],
    },
    Form {
        sizes: &[2],
        template: &[&["0", "1"], &["d21", "0"]],
        recipes: &[r("generic", &[], &[], &[(2, 1)], (&[(1, 2, 2)], 0))],
    },
];

const FORMS_3: &[Form] = &[
    Form {
        sizes: &[1, 1, 1],
        template: &[&["d11", "d12", "d13"], &["d21", "-d11-d33", "d23"], &["d31", "d32", "d33"]],
        recipes: &[
            r("generic", &[], &[], &[(2, 2), (3, 3)], (&[(1, 1, 3)], 0)),
            r("q=0", &[], &[("d13", 3, 3)], &[(2, 2)], (&[(1, 1, 2)], 1)),
            r("p=q=0", &["d11", "d33", "d21", "d31", "d32"], &[], &[], (&[], 3)),
        ],
    },
    Form {
        sizes: &[2, 1],
        template: &[&["0", "1", "0"], &["d21", "-d33", "d23"], &["d31", "0", "d33"]],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 2)], (&[(1, 2, 2), (1, 1, 1)], 0)),
            r("d21=0", &["d21"], &[], &[(2, 2), (3, 2)], (&[(2, 3, 3)], 0)),
            r("d21=0,q=0", &["d21"], &[("d23", 3, 2)], &[(2, 2)], (&[(1, 1, 2)], 1)),
            r("q=0", &[], &[("d23", 3, 2)], &[(2, 1)], (&[(1, 2, 2)], 1)),
        ],
    },
    Form {
        sizes: &[3],
        template: &[&["0", "1", "0"], &["0", "0", "1"], &["d31", "d32", "0"]],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 1)], (&[(1, 3, 3)], 0)),
            r("d31=0", &["d31"], &[], &[(2, 1)], (&[(1, 2, 2)], 1)),
        ],
    },
];

const FORMS_4: &[Form] = &[
    Form {
        sizes: &[1, 1, 1, 1],
        template: &[
            &["d11", "d12", "d13", "d14"],
            &["d21", "d22-d11", "d23", "d24"],
            &["d31", "d32", "-d44-d22", "d34"],
            &["d41", "d42", "d43", "d44"],
        ],
        recipes: &[
            r("generic", &[], &[], &[(2, 2), (3, 3), (4, 4)], (&[(1, 1, 4)], 0)),
            r("r=0", &[], &[("d12", 2, 2)], &[(3, 3), (4, 4)], (&[(1, 1, 4)], 0)),
            r("p=0", &[], &[("d13", 3, 3)], &[(2, 2), (4, 4)], (&[(1, 1, 4)], 0)),
            r("q=0", &[], &[("d14", 4, 4)], &[(2, 2), (3, 3)], (&[(1, 1, 3)], 1)),
            r("p=q=0", &["d41", "d42", "d43", "d44"], &[("d13", 3, 3)], &[(2, 2)], (&[(1, 1, 2)], 2)),
        ],
    },
    Form {
        sizes: &[2, 1, 1],
        template: &[
            &["0", "1", "0", "0"],
            &["d21", "0", "d23", "d24"],
            &["d31", "0", "-d44", "d34"],
            &["d41", "0", "d43", "d44"],
        ],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 2), (4, 3)], (&[(1, 2, 2), (1, 1, 2)], 0)),
            r("d21=0", &["d21"], &[], &[(2, 2), (3, 2), (4, 3)], (&[(2, 3, 3), (1, 1, 1)], 0)),
            r("p=0", &[], &[("d23", 3, 2)], &[(2, 1), (4, 3)], (&[(1, 2, 2), (1, 1, 2)], 0)),
            r("q=0", &[], &[("d24", 4, 3)], &[(2, 1), (3, 2)], (&[(1, 2, 2), (1, 1, 1)], 1)),
        ],
    },
    Form {
        sizes: &[2, 2],
        template: &[
            &["0", "1", "0", "0"],
            &["d21", "0", "d23", "d24"],
            &["d31", "0", "-d44", "1"],
            &["d41", "0", "d43", "d44"],
        ],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 2), (4, 2)], (&[(1, 2, 4)], 0)),
            r("d21=d43=0", &["d21", "d43"], &[], &[(4, 2)], (&[(1, 2, 4)], 0)),
            r("p=0", &[], &[("d23", 4, 2)], &[(2, 1), (3, 2), (4, 3)], (&[(1, 2, 2), (1, 1, 2)], 0)),
            r("d21=d43=0,p=0", &["d21", "d43"], &[("d23", 4, 2)], &[(2, 2), (3, 2), (4, 3)], (&[(2, 3, 3), (1, 1, 1)], 0)),
            r("p=q=0", &[], &[("d23", 4, 2), ("d31", 4, 3)], &[(2, 1), (3, 2)], (&[(1, 2, 2), (1, 1, 1)], 1)),
        ],
    },
    Form {
        sizes: &[3, 1],
        template: &[
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
            &["d31", "d32", "-d44", "d34"],
            &["d41", "d42", "0", "d44"],
        ],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 1), (4, 2)], (&[(1, 3, 3), (1, 1, 1)], 0)),
            r("q=0", &[], &[("d41", 4, 2)], &[(2, 1), (3, 1)], (&[(1, 3, 3)], 1)),
            r("d31=0", &["d31"], &[], &[(2, 1), (4, 2)], (&[(1, 2, 4)], 0)),
            r("d32=0", &["d32"], &[], &[(3, 1), (4, 2)], (&[(1, 3, 3), (1, 1, 1)], 0)),
            r("d31=d41=0", &["d31", "d41"], &[], &[(2, 1), (3, 2)], (&[(1, 2, 2), (1, 1, 1)], 1)),
        ],
    },
    Form {
        sizes: &[4],
        template: &[
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
            &["0", "0", "0", "1"],
            &["d41", "d42", "d43", "0"],
        ],
        recipes: &[
            r("generic", &[], &[], &[(2, 1), (3, 1), (4, 1)], (&[(1, 4, 4)], 0)),
            r("d41=0", &["d41"], &[], &[(3, 1)], (&[(1, 3, 3)], 1)),
            r("d41=d42=0", &["d41", "d42"], &[], &[(2, 1)], (&[(1, 2, 2)], 2)),
        ],
    },
];

fn forms(n: usize) -> Result<&'static [Form]> {
    match n {
        2 => Ok(FORMS_2),
        3 => Ok(FORMS_3),
        4 => Ok(FORMS_4),
        _ => Err(Error::InvalidArgument(format!("catalog covers n in {{2,3,4}}, got {n}"))),
    }
}

/// `c_{i,k}`: the `t^k` coefficient of `a_i` for the given direction.
fn coefficient(template: &MatrixTemplate<G>, direction: &BTreeMap<String, G>, i: usize, k: u32) -> Result<G> {
    let c = charpoly_checked(&template.instantiate(direction)?)?;
    Ok(c.coeff(i).coeff(k))
}

/// Solves `c_{i,k}(x) = 0` for the slope `x` of `name`, which must enter
/// affinely. `None` when `c_{i,k}` does not depend on `x`.
fn solve_slope(
    template: &MatrixTemplate<G>,
    direction: &BTreeMap<String, G>,
    name: &str,
    i: usize,
    k: u32,
) -> Result<Option<G>> {
    let at = |x: i64| {
        let mut d = direction.clone();
        d.insert(name.to_string(), G::from_integer(x));
        coefficient(template, &d, i, k)
    };
    let (c0, c1, c2) = (at(0)?, at(1)?, at(2)?);
    let slope = c1.clone() - c0.clone();
    if c2 != c0.clone() + slope.clone() + slope.clone() {
        return Err(Error::InvalidArgument(format!("c_{{{i},{k}}} is not affine in {name}")));
    }
    Ok(slope.inv().map(|inv| -(c0 * inv)))
}

fn draw_slope(rng: &mut ChaCha8Rng) -> G {
    let magnitude = rng.gen_range(1..=9);
    G::from_integer(if rng.gen_bool(0.5) { magnitude } else { -magnitude })
}

fn build(form: &Form, recipe: &Recipe, seed: u64) -> Result<PerturbationFamily> {
    let partition = JordanPartition::new(form.sizes.to_vec())?;
    let template = MatrixTemplate::<G>::parse(form.template)?;
    debug_assert_eq!(
        template.instantiate(&template.placeholders().into_iter().map(|p| (p, G::from_integer(0))).collect())?,
        jordan_matrix(&partition, &G::from_integer(0)),
        "template must reduce to the Jordan form at t = 0"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'draw: for _ in 0..MAX_DRAWS {
        let mut direction: BTreeMap<String, G> = template
            .placeholders()
            .into_iter()
            .map(|p| {
                let v = draw_slope(&mut rng);
                (p, v)
            })
            .collect();
        for name in recipe.zero {
            direction.insert(name.to_string(), G::from_integer(0));
        }
        for &(name, i, k) in recipe.solve {
            match solve_slope(&template, &direction, name, i, k)? {
                Some(x) => {
                    direction.insert(name.to_string(), x);
                }
                None => continue 'draw,
            }
        }
        let matrix = template.instantiate(&direction)?;
        let c = charpoly_checked(&matrix)?;
        if recipe.nonzero.iter().any(|&(i, k)| c.coeff(i).coeff(k) == G::from_integer(0)) {
            continue;
        }
        if recipe.solve.iter().any(|&(_, i, k)| c.coeff(i).coeff(k) != G::from_integer(0)) {
            continue;
        }
        let (roots, zeros) = recipe.expected;
        return Ok(PerturbationFamily {
            partition: partition.clone(),
            constraint: recipe.constraint.to_string(),
            template,
            direction,
            matrix,
            expected: SplittingReport::expect(partition.n(), roots, zeros),
        });
    }
    Err(Error::InvalidArgument(format!(
        "no admissible direction for {} {} after {MAX_DRAWS} draws",
        partition.label(),
        recipe.constraint
    )))
}

/// Every perturbation family for Jordan forms of size `n ∈ {2, 3, 4}`.
/// Deterministic in `seed`.
pub fn catalog_families(n: usize, seed: u64) -> Result<Vec<PerturbationFamily>> {
    let mut out = Vec::new();
    for (fi, form) in forms(n)?.iter().enumerate() {
        for (ri, recipe) in form.recipes.iter().enumerate() {
            let sub = seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add((n as u64) << 16 | (fi as u64) << 8 | ri as u64);
            out.push(build(form, recipe, sub)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{charpoly_checked, substitute_direction};
    use crate::tropical::analyze;

    #[test]
    fn every_family_matches_its_expectation() {
        for n in 2..=4 {
            for fam in catalog_families(n, DEFAULT_SEED).unwrap() {
                let c = charpoly_checked(&fam.matrix).unwrap();
                let got = analyze(&c).unwrap().report;
                assert_eq!(got, fam.expected, "{}", fam.name());
            }
        }
    }

    #[test]
    fn matrices_reduce_to_jordan_form() {
        for n in 2..=4 {
            for fam in catalog_families(n, DEFAULT_SEED).unwrap() {
                let j = jordan_matrix(&fam.partition, &G::from_integer(0));
                assert_eq!(fam.matrix.at_zero(), j, "{}", fam.name());
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = catalog_families(3, 5).unwrap();
        let b = catalog_families(3, 5).unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| x.direction == y.direction));
    }

    #[test]
    fn other_seeds_also_work() {
        for seed in [1, 2, 3] {
            for fam in catalog_families(4, seed).unwrap() {
                let c = substitute_direction(&fam.template, &fam.direction).unwrap();
                assert_eq!(analyze(&c).unwrap().report, fam.expected, "seed {seed} {}", fam.name());
            }
        }
    }

    #[test]
    fn rejects_bad_size() {
        assert!(catalog_families(5, 0).is_err());
    }
}
