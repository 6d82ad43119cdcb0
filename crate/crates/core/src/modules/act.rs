//! Generator action on module vectors by recursive commutation
//! (straightening): a generator is pushed into a PBW monomial using the
//! bracket relations until it either joins the monomial as a lowering
//! letter or reaches the base vector, where the construction's base rule
//! applies.

use crate::algebra::{bracket, Gen};
use crate::halfint::HalfInt;
use crate::pbw::{Family, PBWMonomial};
use crate::rat::{rat, rat_int, Rat};
use num_traits::Zero;

use super::freefield::{act_freefield, FfOp};
use super::{
    tensor_right_index, tensor_right_key, GradedVector, ModuleError, ModuleHandle, ModuleSpec,
};

/// Act by a single generator. Lowering actions that would leave the
/// truncated slice raise TruncationOverflow.
pub fn act(h: &ModuleHandle, x: Gen, v: &GradedVector) -> Result<GradedVector, ModuleError> {
    match &h.spec {
        ModuleSpec::Tensor { .. } => tensor_act(h, x, v),
        ModuleSpec::Fock(_) | ModuleSpec::HcInduced { .. } => match x {
            Gen::L(n) => act_freefield(h, FfOp::Lbar(n), v),
            Gen::G(p) => act_freefield(h, FfOp::Gbar(p), v),
            _ => act_straighten(h, x, v),
        },
        _ => act_straighten(h, x, v),
    }
}

/// Scalar by which a central element acts on the construction.
pub fn central_scalar(h: &ModuleHandle, x: Gen) -> Rat {
    let p = h.spec.params();
    match &h.spec {
        ModuleSpec::Fock(_) | ModuleSpec::HcInduced { .. } => match x {
            // c1 -> 3/2 - 12 z^2 / ell under the free-field map
            Gen::C1 => rat(3, 2) - rat_int(12) * &p.z * &p.z / &p.ell,
            Gen::C2 => p.z,
            Gen::C3 => p.ell,
            _ => panic!("not central: {x}"),
        },
        ModuleSpec::SvirVerma(_) => match x {
            Gen::C1 => p.c,
            Gen::C2 | Gen::C3 => Rat::zero(),
            _ => panic!("not central: {x}"),
        },
        ModuleSpec::Tensor { left, right } => match x {
            Gen::C1 => {
                &left.c + rat(3, 2) - rat_int(12) * &right.z * &right.z / &right.ell
            }
            Gen::C2 => right.z.clone(),
            Gen::C3 => right.ell.clone(),
            _ => panic!("not central: {x}"),
        },
        _ => match x {
            Gen::C1 => p.c,
            Gen::C2 => p.z,
            Gen::C3 => p.ell,
            _ => panic!("not central: {x}"),
        },
    }
}

fn act_straighten(h: &ModuleHandle, x: Gen, v: &GradedVector) -> Result<GradedVector, ModuleError> {
    let mut out = GradedVector::zero();
    for ((mono, base), c) in v.iter() {
        apply_gen(h, x, c, mono, *base, &mut out)?;
    }
    Ok(out)
}

fn apply_gen(
    h: &ModuleHandle,
    x: Gen,
    coeff: &Rat,
    mono: &PBWMonomial,
    base: usize,
    out: &mut GradedVector,
) -> Result<(), ModuleError> {
    if coeff.is_zero() {
        return Ok(());
    }
    if x.is_central() {
        out.add_term((mono.clone(), base), coeff * central_scalar(h, x));
        return Ok(());
    }
    if let Some((fam, p)) = h.letter_of_gen(x) {
        let prependable = match mono.leading_letter() {
            None => true,
            Some((lf, lp)) => fam < lf || (fam == lf && p > lp),
        };
        if prependable {
            return prepend(h, fam, p, coeff, mono, base, out);
        }
        if let Some((lf, lp)) = mono.leading_letter() {
            if fam == lf && p == lp {
                if fam.is_odd() {
                    // x x rest = (1/2) [x, x] rest
                    let (_, rest) = mono.split_leading().unwrap();
                    let half = rat(1, 2);
                    for (g, cg) in bracket(x, x).iter() {
                        apply_gen(h, *g, &(coeff * cg * &half), &rest, base, out)?;
                    }
                    return Ok(());
                }
                // even letter repeats freely
                return prepend(h, fam, p, coeff, mono, base, out);
            }
        }
        return commute_with_leading(h, x, coeff, mono, base, out);
    }
    match mono.leading_letter() {
        None => base_rule(h, x, coeff, base, out),
        Some(_) => commute_with_leading(h, x, coeff, mono, base, out),
    }
}

fn prepend(
    h: &ModuleHandle,
    fam: Family,
    p: u32,
    coeff: &Rat,
    mono: &PBWMonomial,
    base: usize,
    out: &mut GradedVector,
) -> Result<(), ModuleError> {
    let mut new = mono.clone();
    if !new.add_letter(fam, p) {
        // odd letter already present at this position: x ... x ... with the
        // second copy deeper in the word cannot happen here, because the
        // caller only prepends when the letter order allows it
        unreachable!("odd letter collision on prepend");
    }
    if new.letter_count() > h.budget {
        return Err(ModuleError::TruncationOverflow {
            truncation: h.truncation,
            weight: h.mono_weight(&new),
        });
    }
    let deg = h.mono_weight(&new) + base_degree(h, base);
    if deg > h.truncation || deg < h.min_degree() {
        return Err(ModuleError::TruncationOverflow {
            truncation: h.truncation,
            weight: deg,
        });
    }
    out.add_term((new, base), coeff.clone());
    Ok(())
}

fn base_degree(h: &ModuleHandle, base: usize) -> HalfInt {
    h.base_degrees[base]
}

fn commute_with_leading(
    h: &ModuleHandle,
    x: Gen,
    coeff: &Rat,
    mono: &PBWMonomial,
    base: usize,
    out: &mut GradedVector,
) -> Result<(), ModuleError> {
    let ((yf, yp), rest) = mono.split_leading().unwrap();
    let y = h.gen_of_letter(yf, yp);
    // x y w = [x, y] w + (-1)^{|x||y|} y (x w)
    for (g, cg) in bracket(x, y).iter() {
        apply_gen(h, *g, &(coeff * cg), &rest, base, out)?;
    }
    let signed = if x.is_odd() && y.is_odd() {
        -coeff.clone()
    } else {
        coeff.clone()
    };
    let mut tmp = GradedVector::zero();
    apply_gen(h, x, &signed, &rest, base, &mut tmp)?;
    for ((m2, b2), c2) in tmp.iter() {
        apply_gen(h, y, c2, m2, *b2, out)?;
    }
    Ok(())
}

fn base_rule(
    h: &ModuleHandle,
    x: Gen,
    coeff: &Rat,
    base: usize,
    out: &mut GradedVector,
) -> Result<(), ModuleError> {
    let one = PBWMonomial::one();
    match &h.spec {
        ModuleSpec::Verma(p) => {
            let value = match x {
                Gen::L(0) => p.h.clone(),
                Gen::H(0) => p.d.clone(),
                Gen::L(n) if n > 0 => Rat::zero(),
                Gen::H(n) if n > 0 => Rat::zero(),
                Gen::G(q) if q.is_positive() => Rat::zero(),
                Gen::F(q) if q.is_positive() => Rat::zero(),
                _ => unreachable!("{x} should be a lowering letter"),
            };
            out.add_term((one, base), coeff * value);
        }
        ModuleSpec::SvirVerma(p) => {
            let value = match x {
                Gen::L(0) => p.h.clone(),
                Gen::L(n) if n > 0 => Rat::zero(),
                Gen::G(q) if q.is_positive() => Rat::zero(),
                // hc acts as zero on the super-Virasoro factor
                Gen::H(_) | Gen::F(_) => Rat::zero(),
                _ => unreachable!("{x} should be a lowering letter"),
            };
            out.add_term((one, base), coeff * value);
        }
        ModuleSpec::Fock(p) => {
            let value = match x {
                Gen::H(0) => p.d.clone(),
                Gen::H(n) if n > 0 => Rat::zero(),
                Gen::F(q) if q.is_positive() => Rat::zero(),
                _ => unreachable!("{x} cannot reach the Fock vacuum rule"),
            };
            out.add_term((one, base), coeff * value);
        }
        ModuleSpec::Whittaker(w) => {
            let value = w
                .phi(x)
                .unwrap_or_else(|| unreachable!("{x} should be a lowering letter"));
            out.add_term((one, base), coeff * value);
        }
        ModuleSpec::InducedG0q { table, params, .. }
        | ModuleSpec::HcInduced { table, params, .. } => {
            if let Some(mat) = table.generators.get(&x) {
                for (row, mrow) in mat.iter().enumerate() {
                    out.add_term((one.clone(), row), coeff * &mrow[base]);
                }
            } else if x == Gen::H(0) {
                out.add_term((one, base), coeff * &params.d);
            }
            // any other admissible generator without a table row acts as 0
        }
        ModuleSpec::Tensor { .. } => unreachable!("tensor action has its own path"),
    }
    Ok(())
}

/// Tensor action: x(u (x) w) = (x u) (x) w + (-1)^{|x||u|} u (x) (x w).
/// The left factor is the super-Virasoro Verma (hc acting as zero); the
/// right factor is a Fock handle with the full free-field action.
fn tensor_act(h: &ModuleHandle, x: Gen, v: &GradedVector) -> Result<GradedVector, ModuleError> {
    if x.is_central() {
        let mut out = v.clone();
        out.scale(&central_scalar(h, x));
        return Ok(out);
    }
    let lh = h.left_handle().expect("tensor handle");
    let rh = h.right_handle().expect("tensor handle");
    let mut out = GradedVector::zero();
    for ((mono, ridx), c) in v.iter() {
        // left part: (x u) (x) w
        let lu = GradedVector::unit((mono.clone(), 0));
        let lres = act(lh, x, &lu)?;
        for ((m2, _), c2) in lres.iter() {
            let key = (m2.clone(), *ridx);
            check_tensor_degree(h, &key)?;
            out.add_term(key, c * c2);
        }
        // right part: (-1)^{|x||u|} u (x) (x w)
        let u_odd = (mono.k.length() + mono.l.length()) % 2 == 1;
        let sign = if x.is_odd() && u_odd {
            -c.clone()
        } else {
            c.clone()
        };
        let rkey = tensor_right_key(h, *ridx);
        let rres = act(rh, x, &GradedVector::unit(rkey))?;
        for (rk2, c2) in rres.iter() {
            let key = (mono.clone(), tensor_right_index(h, rk2));
            check_tensor_degree(h, &key)?;
            out.add_term(key, &sign * c2);
        }
    }
    Ok(out)
}

fn check_tensor_degree(h: &ModuleHandle, key: &super::BasisKey) -> Result<(), ModuleError> {
    let deg = h.degree_of(key);
    if deg > h.truncation {
        return Err(ModuleError::TruncationOverflow {
            truncation: h.truncation,
            weight: deg,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_module, ModuleParams, ModuleSpec};
    use crate::rat::rat_zero;
    use std::collections::BTreeMap;

    fn verma(h: i64, d: i64, z: i64, ell: i64) -> ModuleHandle {
        build_module(
            ModuleSpec::Verma(ModuleParams::new(
                rat_zero(),
                rat_int(z),
                rat_int(ell),
                rat_int(d),
                rat_int(h),
            )),
            HalfInt::from_int(2),
        )
        .unwrap()
    }

    fn v0(h: &ModuleHandle) -> GradedVector {
        GradedVector::unit((PBWMonomial::one(), 0))
    }

    #[test]
    fn verma_single_commutations() {
        let m = verma(1, 2, 0, 5);
        // H_1 H_{-1} v0 = [H_1, H_{-1}] v0 = ell v0
        let w = act(&m, Gen::H(-1), &v0(&m)).unwrap();
        let r = act(&m, Gen::H(1), &w).unwrap();
        assert_eq!(r.coeff(&(PBWMonomial::one(), 0)), rat_int(5));
        assert_eq!(r.len(), 1);

        // L_1 F_{-1/2} v0 = 0
        let w = act(&m, Gen::f(HalfInt::half_odd(-1)), &v0(&m)).unwrap();
        let r = act(&m, Gen::L(1), &w).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn g_on_f_gives_d_plus_2z() {
        let m = verma(1, 2, 3, 5);
        let w = act(&m, Gen::f(HalfInt::half_odd(-1)), &v0(&m)).unwrap();
        let r = act(&m, Gen::g(HalfInt::half_odd(0)), &w).unwrap();
        // (d + 2z) v0 = 8 v0
        assert_eq!(r.coeff(&(PBWMonomial::one(), 0)), rat_int(8));
    }

    #[test]
    fn l0_reads_weight_plus_depth() {
        let m = verma(7, 0, 0, 1);
        // L_0 L_{-2} v0 = (h + 2) L_{-2} v0
        let w = act(&m, Gen::L(-2), &v0(&m)).unwrap();
        let r = act(&m, Gen::L(0), &w).unwrap();
        assert_eq!(r, {
            let mut e = w.clone();
            e.scale(&rat_int(9));
            e
        });
    }

    #[test]
    fn truncation_overflow_raised() {
        let m = verma(0, 0, 0, 1);
        let w = act(&m, Gen::L(-2), &v0(&m)).unwrap();
        assert!(matches!(
            act(&m, Gen::L(-1), &w),
            Err(ModuleError::TruncationOverflow { .. })
        ));
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let m = verma(3, 0, 0, 1);
        // G_{-1/2} G_{-1/2} v0 = (1/2)[G,G] v0 = L_{-1} v0
        let w = act(&m, Gen::g(HalfInt::half_odd(-1)), &v0(&m)).unwrap();
        let r = act(&m, Gen::g(HalfInt::half_odd(-1)), &w).unwrap();
        let expect = act(&m, Gen::L(-1), &v0(&m)).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn whittaker_base_scalars() {
        let data = super::super::WhittakerData {
            m: 1,
            l_values: BTreeMap::from([(1, rat_int(5)), (2, rat_int(7))]),
            h_values: BTreeMap::from([(0, rat_int(2)), (1, rat_int(3))]),
            c: rat_zero(),
            z: rat_zero(),
            ell: rat_int(1),
        };
        let m = build_module(ModuleSpec::Whittaker(data), HalfInt::from_int(2)).unwrap();
        let w = GradedVector::unit((PBWMonomial::one(), 0));
        let r = act(&m, Gen::L(1), &w).unwrap();
        assert_eq!(r.coeff(&(PBWMonomial::one(), 0)), rat_int(5));
        let r = act(&m, Gen::H(1), &w).unwrap();
        assert_eq!(r.coeff(&(PBWMonomial::one(), 0)), rat_int(3));
        let r = act(&m, Gen::L(3), &w).unwrap();
        assert!(r.is_zero());
        // L_0 is a lowering letter for m = 1
        let r = act(&m, Gen::L(0), &w).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.coeff(&(PBWMonomial::one(), 0)).is_zero());
    }
}
