//! Vectorized Lindblad generators.
//!
//! `ρ = Σ c_{mn} |m⟩⟨n|` maps to `Σ c_{mn} |m⟩ ⊗ |n*⟩`, so the vector index
//! is `m·d + n` (ket index slower). In this basis
//!
//! ```text
//! L = (−i H_nh) ⊗ 1 + 1 ⊗ (i H_nh*) + Σ_k Γ_k L_k ⊗ L_k*,
//! H_nh = H − (i/2) Σ_k Γ_k L_k† L_k.
//! ```

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::BigRational;

use crate::charpoly::PolyMatrix;
use crate::error::{Error, Result};
use crate::models::{ExactMatrix, ModelFamily, Realization, G};
use crate::poly::ScalarPoly;
use crate::scalar::{ExactScalar, QuadExt, Real};
use crate::tropical::SplittingReport;

type Q2 = QuadExt<2>;

fn check_square<T: Real>(m: &DMatrix<Complex<T>>, d: usize, what: &str) -> Result<()> {
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::Dimension(format!("{what} is {}x{}, expected {d}x{d}", m.nrows(), m.ncols())));
    }
    Ok(())
}

/// `(−iH) ⊗ 1 + 1 ⊗ (iH*)` for a possibly non-Hermitian `H`.
pub fn jump_free_liouvillian<T: Real>(h: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let d = h.nrows();
    let id = DMatrix::<Complex<T>>::identity(d, d);
    let i = Complex::new(T::zero(), T::one());
    (h * -i).kronecker(&id) + id.kronecker(&(h.map(|z| z.conj()) * i))
}

/// `D[L] = L ⊗ L* − (L†L ⊗ 1 + 1 ⊗ LᵀL*)/2`.
pub fn dissipator<T: Real>(l: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let d = l.nrows();
    let id = DMatrix::<Complex<T>>::identity(d, d);
    let lc = l.map(|z| z.conj());
    let ldl = l.adjoint() * l;
    let half = Complex::new(T::lit(0.5), T::zero());
    l.kronecker(&lc) - (ldl.kronecker(&id) + id.kronecker(&(l.transpose() * &lc))) * half
}

/// Full Liouvillian of `H` with jumps `(L_k, Γ_k)`.
pub fn lindblad_liouvillian<T: Real>(
    h: &DMatrix<Complex<T>>,
    jumps: &[(DMatrix<Complex<T>>, T)],
) -> Result<DMatrix<Complex<T>>> {
    let d = h.nrows();
    check_square(h, d, "Hamiltonian")?;
    let i = Complex::new(T::zero(), T::one());
    let mut h_nh = h.clone();
    let mut jump_terms = DMatrix::<Complex<T>>::zeros(d * d, d * d);
    for (k, (l, gamma)) in jumps.iter().enumerate() {
        check_square(l, d, &format!("jump operator {k}"))?;
        if gamma.is_nan() || *gamma < T::zero() {
            return Err(Error::InvalidArgument(format!("jump rate {k} must be non-negative")));
        }
        let g = Complex::new(*gamma, T::zero());
        h_nh -= (l.adjoint() * l) * (i * g * T::lit(0.5));
        jump_terms += l.kronecker(&l.map(|z| z.conj())) * g;
    }
    Ok(jump_free_liouvillian(&h_nh) + jump_terms)
}

fn kron<S: ExactScalar>(a: &PolyMatrix<S>, b: &PolyMatrix<S>) -> PolyMatrix<S> {
    let (na, nb) = (a.n(), b.n());
    PolyMatrix::from_fn(na * nb, |r, c| a.get(r / nb, c / nb) * b.get(r % nb, c % nb))
}

fn conj<S: ExactScalar>(a: &PolyMatrix<S>) -> PolyMatrix<S> {
    a.map(|p| p.conj())
}

fn transpose<S: ExactScalar>(a: &PolyMatrix<S>) -> PolyMatrix<S> {
    PolyMatrix::from_fn(a.n(), |i, j| a.get(j, i).clone())
}

fn scale<S: ExactScalar>(a: &PolyMatrix<S>, c: &ScalarPoly<S>) -> PolyMatrix<S> {
    a.map(|p| p * c)
}

/// Exact `D[L]` for constant `L`.
fn exact_dissipator<S: ExactScalar>(l: &PolyMatrix<S>) -> PolyMatrix<S> {
    let id = PolyMatrix::identity(l.n());
    let lc = conj(l);
    let ldl = transpose(&lc).matmul(l);
    let anti = kron(&ldl, &id).add(&kron(&id, &transpose(l).matmul(&lc)));
    kron(l, &lc).add(&anti.map(|p| -p.div_int(2)))
}

/// Effective Hamiltonian of the excited levels `|2⟩, |3⟩, |4⟩` with
/// `ε_l = 0`, hopping `t` between neighbours and decay rates `γ_l`.
fn effective_h(gammas: [&BigRational; 3], t: &Q2) -> PolyMatrix<Q2> {
    PolyMatrix::from_fn(3, |i, j| {
        if i == j {
            let g = G::new(BigRational::from_integer(0.into()), -gammas[i].clone() / BigRational::from_integer(2.into()));
            ScalarPoly::constant(Q2::from(g))
        } else if i.abs_diff(j) == 1 {
            ScalarPoly::constant(t.clone())
        } else {
            ScalarPoly::zero()
        }
    })
}

/// Hopping `t = (γ₄ − γ₃)/(2√2)` that makes `H_eff` an EP3 when
/// `2γ₃ = γ₂ + γ₄`.
fn ep3_hopping(gamma3: &BigRational, gamma4: &BigRational) -> Q2 {
    let b = (gamma4 - gamma3) / BigRational::from_integer(4.into());
    Q2::new(G::from_ints(0, 0), G::real(b))
}

/// `H_eff` at the EP3 point with `γ = (1, 2, 3)`; its eigenvalue is `−iγ₃/2 = −i`.
pub fn effective_hamiltonian() -> PolyMatrix<Q2> {
    let g: [BigRational; 3] = [1, 2, 3].map(|v: i64| BigRational::from_integer(v.into()));
    effective_h([&g[0], &g[1], &g[2]], &ep3_hopping(&g[1], &g[2]))
}

/// Effective Liouvillian of the four-level system with the ground state
/// projected out, perturbed by the inter-level decay `Γ`:
/// `Γ₂₃ = 5Γ/8`, `Γ₃₄ = Γ/13`, `Γ₂₄ = 39Γ/50`. Shifted by `+γ₃` so that the
/// degenerate eigenvalue `−γ₃` sits at zero.
pub fn effective_liouvillian_with(gamma2: &BigRational, gamma4: &BigRational) -> Result<ModelFamily> {
    let two = BigRational::from_integer(2.into());
    let gamma3 = (gamma2 + gamma4) / &two;
    if gamma3 == *gamma4 {
        return Err(Error::InvalidArgument("EP3 needs γ2 ≠ γ4".into()));
    }
    let t = ep3_hopping(&gamma3, gamma4);
    let h = effective_h([gamma2, &gamma3, gamma4], &t);
    let i = ScalarPoly::constant(Q2::from(G::i()));
    let id = PolyMatrix::<Q2>::identity(3);
    let mut l = kron(&scale(&h, &-&i), &id).add(&kron(&id, &scale(&conj(&h), &i)));
    for ((a, b), (num, den)) in [((0, 1), (5, 8)), ((1, 2), (1, 13)), ((0, 2), (39, 50))] {
        let mut jump = PolyMatrix::<Q2>::zeros(3);
        jump.set(a, b, ScalarPoly::one());
        let rate = ScalarPoly::monomial(Q2::from(G::ratio(num, den)), 1);
        l = l.add(&scale(&exact_dissipator(&jump), &rate));
    }
    let shift = PolyMatrix::<Q2>::from_fn(9, |r, c| {
        if r == c {
            ScalarPoly::constant(Q2::from(G::real(gamma3.clone())))
        } else {
            ScalarPoly::zero()
        }
    });
    let m = l.add(&shift);
    Ok(ModelFamily {
        name: "effective_liouvillian".into(),
        parameters: vec![
            ("gamma2".into(), gamma2.to_string()),
            ("gamma3".into(), gamma3.to_string()),
            ("gamma4".into(), gamma4.to_string()),
            ("t".into(), t.to_string()),
            ("shift".into(), gamma3.to_string()),
        ],
        realization: Realization::Matrix(ExactMatrix::Sqrt2(m)),
        expected: Some(SplittingReport::expect(9, &[(1, 5, 5), (1, 3, 3), (1, 1, 1)], 0)),
        notes: vec!["jump-free part has Jordan structure (5,3,1) at −γ3".into()],
    })
}

/// [`effective_liouvillian_with`] at `γ = (1, 2, 3)`, `t = √2/4`.
pub fn effective_liouvillian_example() -> Result<ModelFamily> {
    effective_liouvillian_with(&BigRational::from_integer(1.into()), &BigRational::from_integer(3.into()))
}
