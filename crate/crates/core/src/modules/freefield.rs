//! The free-field (oscillator) operators: normal-ordered quadratic
//! expressions in H and F realizing the L and G actions on any nonzero-level
//! handle, and the primed operators L' = L - Lbar, G' = G - Gbar.

use crate::algebra::Gen;
use crate::halfint::HalfInt;
use crate::rat::{rat, rat_int};
use num_traits::Zero;

use super::act::act;
use super::{GradedVector, ModuleError, ModuleHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfOp {
    Lbar(i64),
    Gbar(HalfInt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeOp {
    Lprime(i64),
    Gprime(HalfInt),
}

/// Apply a product of two commuting-or-normal-ordered letters, larger index
/// first (it annihilates soonest, keeping intermediates small).
fn apply_pair(
    h: &ModuleHandle,
    first: Gen,
    second: Gen,
    v: &GradedVector,
) -> Result<GradedVector, ModuleError> {
    let w = act(h, first, v)?;
    if w.is_zero() {
        return Ok(w);
    }
    act(h, second, &w)
}

/// Evaluate Lbar(n) or Gbar(r) on v. The summation windows below are exact:
/// for a window bound B = annihilation_bound(v), H_b v = 0 for b > B and
/// F_r v = 0 for r > B + 1/2, and in each discarded term the larger-index
/// factor is applied first (H and F commute exactly, so factor order never
/// changes the value), so every term outside the window vanishes.
pub fn act_freefield(
    h: &ModuleHandle,
    op: FfOp,
    v: &GradedVector,
) -> Result<GradedVector, ModuleError> {
    let params = h.spec.params();
    if params.ell.is_zero() {
        return Err(ModuleError::LevelZero);
    }
    let inv_ell = params.ell.recip();
    let b = h.annihilation_bound(v);
    let mut out = GradedVector::zero();
    match op {
        FfOp::Lbar(n) => {
            // (1/2l) sum_k :H_k H_{n-k}: the right factor of the normal
            // order carries the larger index; nonzero needs max(k, n-k) <= B
            let half_inv = rat(1, 2) * &inv_ell;
            for k in (n - b)..=b {
                let (lo, hi) = (k.min(n - k), k.max(n - k));
                let term = apply_pair(h, Gen::H(hi), Gen::H(lo), v)?;
                out.add_scaled(&term, &half_inv);
            }
            // +((n+1) z / l) H_n; this sign (together with the one in Gbar)
            // is forced by [Lbar_m, H_n] = -n H_{m+n} + (m^2+m) z at m+n = 0:
            // the quadratic sum contributes the -n H term only, so the linear
            // term must supply +(m^2+m) z, not its negative
            let coeff = rat_int(n + 1) * &params.z * &inv_ell;
            if !coeff.is_zero() {
                let term = act(h, Gen::H(n), v)?;
                out.add_scaled(&term, &coeff);
            }
            // -(1/2l) sum_r (r + 1/2) :F_r F_{n-r}: with
            // :F_r F_s: = F_r F_s for r < s and -F_s F_r otherwise
            // r, n-r half-odd; nonzero needs max <= B + 1/2
            let mut tr = 2 * (n - b) - 1; // twice r, from n - B - 1/2
            while tr <= 2 * b + 1 {
                let ts = 2 * n - tr; // twice (n - r)
                let coeff = rat(tr + 1, 2); // r + 1/2
                if !coeff.is_zero() {
                    let (sign, tlo, thi) = if tr < ts {
                        (rat_int(1), tr, ts)
                    } else {
                        (rat_int(-1), ts, tr)
                    };
                    let term = apply_pair(
                        h,
                        Gen::f(HalfInt::from_twice(thi)),
                        Gen::f(HalfInt::from_twice(tlo)),
                        v,
                    )?;
                    out.add_scaled(&term, &(-&half_inv * sign * coeff));
                }
                tr += 2;
            }
        }
        FfOp::Gbar(r) => {
            // (1/l) sum_k H_k F_{r-k}; [H, F] = 0 so apply the larger
            // index first; nonzero needs k <= B and r - k <= B + 1/2
            let tr = r.twice();
            let k_lo = (tr - 1) / 2 - b; // k >= r - 1/2 - B
            for k in k_lo..=b {
                let s = HalfInt::from_twice(tr - 2 * k); // r - k
                let term = if 2 * k >= s.twice() {
                    apply_pair(h, Gen::H(k), Gen::f(s), v)?
                } else {
                    apply_pair(h, Gen::f(s), Gen::H(k), v)?
                };
                out.add_scaled(&term, &inv_ell);
            }
            // +((2r+1) z / l) F_r; sign forced by
            // [Gbar_r, F_s] = H_{r+s} + (2r+1) z at r+s = 0
            let coeff = rat_int(tr + 1) * &params.z * &inv_ell;
            if !coeff.is_zero() {
                let term = act(h, Gen::f(r), v)?;
                out.add_scaled(&term, &coeff);
            }
        }
    }
    Ok(out)
}

/// L'_n = L_n - Lbar_n, G'_r = G_r - Gbar_r. Identically zero on Fock
/// handles (where L and G act through the bars); meaningful on any other
/// nonzero-level handle.
pub fn act_prime(
    h: &ModuleHandle,
    op: PrimeOp,
    v: &GradedVector,
) -> Result<GradedVector, ModuleError> {
    let (x, ff) = match op {
        PrimeOp::Lprime(n) => (Gen::L(n), FfOp::Lbar(n)),
        PrimeOp::Gprime(r) => (Gen::g(r), FfOp::Gbar(r)),
    };
    let mut out = act(h, x, v)?;
    let barred = act_freefield(h, ff, v)?;
    out.add_scaled(&barred, &rat_int(-1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_module, ModuleParams, ModuleSpec};
    use crate::pbw::PBWMonomial;
    use crate::rat::rat_zero;

    fn fock(ell: i64, d: i64, z: i64) -> ModuleHandle {
        build_module(
            ModuleSpec::Fock(ModuleParams::new(
                rat_zero(),
                rat_int(z),
                rat_int(ell),
                rat_int(d),
                rat_zero(),
            )),
            HalfInt::from_int(2),
        )
        .unwrap()
    }

    fn vac() -> GradedVector {
        GradedVector::unit((PBWMonomial::one(), 0))
    }

    #[test]
    fn lbar_minus_one_on_vacuum() {
        // Lbar(-1) v0 = (d/l) H_{-1} v0
        let h = fock(2, 3, 0);
        let r = act_freefield(&h, FfOp::Lbar(-1), &vac()).unwrap();
        let expect = {
            let mut e = act(&h, Gen::H(-1), &vac()).unwrap();
            e.scale(&rat(3, 2));
            e
        };
        assert_eq!(r, expect);
    }

    #[test]
    fn lbar_zero_on_vacuum() {
        // Lbar(0) v0 = (d^2/(2l) + d z / l) v0
        let h = fock(2, 3, 1);
        let r = act_freefield(&h, FfOp::Lbar(0), &vac()).unwrap();
        // 9/4 + 3/2 = 15/4
        let mut expect = vac();
        expect.scale(&rat(15, 4));
        assert_eq!(r, expect);
    }

    #[test]
    fn gbar_minus_half_on_vacuum() {
        // Gbar(-1/2) v0 = (d/l) F_{-1/2} v0
        let h = fock(2, 3, 5);
        let r = act_freefield(&h, FfOp::Gbar(HalfInt::half_odd(-1)), &vac()).unwrap();
        let expect = {
            let mut e = act(&h, Gen::f(HalfInt::half_odd(-1)), &vac()).unwrap();
            e.scale(&rat(3, 2));
            e
        };
        assert_eq!(r, expect);
    }

    #[test]
    fn prime_vanishes_on_fock() {
        let h = fock(3, 2, 1);
        for n in -2..=2 {
            let r = act_prime(&h, PrimeOp::Lprime(n), &vac()).unwrap();
            assert!(r.is_zero(), "L'({n}) on vacuum");
        }
        let w = act(&h, Gen::H(-1), &vac()).unwrap();
        let r = act_prime(&h, PrimeOp::Gprime(HalfInt::half_odd(0)), &w).unwrap();
        assert!(r.is_zero());
    }
}
