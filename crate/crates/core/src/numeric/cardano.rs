//! Closed-form roots of the depressed cubic `λ³ + pλ + q`.
//!
//! With `Δ = √(q²/4 + p³/27)`, `α³ = −q/2 ± Δ` (sign chosen for the larger
//! modulus, which avoids cancellation) and `β = −p/(3α)`, the roots are
//! `α + β`, `ωα + ω²β` and `ω²α + ωβ` with `ω = e^{2πi/3}`.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

pub fn cardano_roots<T: Real>(p: Complex<T>, q: Complex<T>) -> [Complex<T>; 3] {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let delta = (q * q / T::lit(4.0) + p * p * p / T::lit(27.0)).sqrt();
    let half_q = -q / two;
    let (u1, u2) = (half_q + delta, half_q - delta);
    let u = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let omega = Complex::new(T::lit(-0.5), T::lit(0.75f64.sqrt()));
    let omega2 = omega.conj();
    if u.is_zero() {
        // p = q = 0 up to cancellation: λ³ = −q
        let r = (-q).cbrt_principal();
        return [r, r * omega, r * omega2];
    }
    let alpha = u.cbrt_principal();
    let beta = -p / (alpha * three);
    [alpha + beta, omega * alpha + omega2 * beta, omega2 * alpha + omega * beta]
}

trait CbrtPrincipal {
    fn cbrt_principal(self) -> Self;
}

impl<T: Real> CbrtPrincipal for Complex<T> {
    fn cbrt_principal(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let (r, theta) = self.to_polar();
        Complex::from_polar(num_traits::Float::cbrt(r), theta / T::lit(3.0))
    }
}
