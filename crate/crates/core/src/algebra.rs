//! The superconformal current algebra: generators, Z_2-parity, (1/2)Z-grading,
//! superbracket structure constants, and the named subalgebra family.
//!
//! The bracket is stored for one canonical argument order (family order
//! L < H < G < F, centrals last); the swapped case is derived through the
//! Koszul sign, so there is a single source of truth for every structure
//! constant.

use std::collections::BTreeMap;
use std::fmt;

use crate::halfint::HalfInt;
use crate::rat::{rat, rat_int, Rat};
use num_traits::Zero;

/// One basis element of the algebra.
///
/// `L`/`H` carry integer indices, `G`/`F` half-odd indices, and the three
/// central elements carry none. Variant order gives the canonical family
/// order used for bracket normalization and monomial sorting.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    L(i64),
    H(i64),
    G(HalfInt),
    F(HalfInt),
    C1,
    C2,
    C3,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Gen {
    /// G_p; panics unless p is half-odd.
    pub fn g(p: HalfInt) -> Gen {
        assert!(p.is_half_odd(), "G index must be half-odd, got {p}");
        Gen::G(p)
    }

    /// F_p; panics unless p is half-odd.
    pub fn f(p: HalfInt) -> Gen {
        assert!(p.is_half_odd(), "F index must be half-odd, got {p}");
        Gen::F(p)
    }

    pub fn parity(self) -> Parity {
        match self {
            Gen::L(_) | Gen::H(_) | Gen::C1 | Gen::C2 | Gen::C3 => Parity::Even,
            Gen::G(_) | Gen::F(_) => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Grading degree: the index for L/H/G/F, zero for the centrals.
    pub fn degree(self) -> HalfInt {
        match self {
            Gen::L(m) | Gen::H(m) => HalfInt::from_int(m),
            Gen::G(p) | Gen::F(p) => p,
            Gen::C1 | Gen::C2 | Gen::C3 => HalfInt::ZERO,
        }
    }

    pub fn is_central(self) -> bool {
        matches!(self, Gen::C1 | Gen::C2 | Gen::C3)
    }

    /// Same family, negated index (centrals unchanged); the transpose map
    /// on single generators.
    pub fn negate_index(self) -> Gen {
        match self {
            Gen::L(m) => Gen::L(-m),
            Gen::H(m) => Gen::H(-m),
            Gen::G(p) => Gen::G(-p),
            Gen::F(p) => Gen::F(-p),
            c => c,
        }
    }

    /// Parse the text form used by spec files and reports:
    /// `L(-2)`, `H(0)`, `G(-1/2)`, `F(3/2)`, `c1`, `c2`, `c3`.
    pub fn parse(s: &str) -> Result<Gen, String> {
        let s = s.trim();
        match s {
            "c1" => return Ok(Gen::C1),
            "c2" => return Ok(Gen::C2),
            "c3" => return Ok(Gen::C3),
            _ => {}
        }
        let (fam, rest) = s.split_at(1.min(s.len()));
        let idx = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("bad generator: {s:?}"))?;
        let h = HalfInt::parse(idx)?;
        match fam {
            "L" if h.is_integral() => Ok(Gen::L(h.as_int())),
            "H" if h.is_integral() => Ok(Gen::H(h.as_int())),
            "G" if h.is_half_odd() => Ok(Gen::g(h)),
            "F" if h.is_half_odd() => Ok(Gen::f(h)),
            _ => Err(format!("bad generator: {s:?}")),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::L(m) => write!(f, "L({m})"),
            Gen::H(m) => write!(f, "H({m})"),
            Gen::G(p) => write!(f, "G({p})"),
            Gen::F(p) => write!(f, "F({p})"),
            Gen::C1 => write!(f, "c1"),
            Gen::C2 => write!(f, "c2"),
            Gen::C3 => write!(f, "c3"),
        }
    }
}

/// A finite exact-rational linear combination of generators. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LieElement {
    terms: BTreeMap<Gen, Rat>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn term(g: Gen, c: Rat) -> Self {
        let mut e = LieElement::zero();
        e.add_term(g, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Gen, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, scale: &Rat) {
        for (g, c) in &other.terms {
            self.add_term(*g, c * scale);
        }
    }

    pub fn scale(&mut self, s: &Rat) {
        if s.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= s;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gen, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: Gen) -> Rat {
        self.terms.get(&g).cloned().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", crate::rat::rat_to_string(c), g)?;
        }
        Ok(())
    }
}

/// Superbracket [x, y]. Total on all generator pairs; the canonical-order
/// table is applied directly when the arguments are already in family order
/// L < H < G < F, otherwise the Koszul-signed swap of the table entry.
pub fn bracket(x: Gen, y: Gen) -> LieElement {
    if x.is_central() || y.is_central() {
        return LieElement::zero();
    }
    match (x, y) {
        // same-family bracket rows are valid as written for all indices
        (Gen::L(m), Gen::L(n)) => {
            let mut e = LieElement::term(Gen::L(m + n), rat_int(m - n));
            if m + n == 0 {
                e.add_term(Gen::C1, rat(m * m * m - m, 12));
            }
            e
        }
        (Gen::H(m), Gen::H(n)) => {
            if m + n == 0 {
                LieElement::term(Gen::C3, rat_int(m))
            } else {
                LieElement::zero()
            }
        }
        (Gen::G(p), Gen::G(q)) => {
            // 2 L_{p+q} + (1/3)(p^2 - 1/4) delta_{p+q,0} c1; with p stored as
            // twice/2 the central coefficient is (twice^2 - 1)/12.
            let mut e = LieElement::term(Gen::L((p + q).as_int()), rat_int(2));
            if p.twice() + q.twice() == 0 {
                e.add_term(Gen::C1, rat(p.twice() * p.twice() - 1, 12));
            }
            e
        }
        (Gen::F(p), Gen::F(q)) => {
            if p.twice() + q.twice() == 0 {
                LieElement::term(Gen::C3, rat_int(1))
            } else {
                LieElement::zero()
            }
        }
        // canonical cross-family rows
        (Gen::L(m), Gen::H(n)) => {
            let mut e = LieElement::term(Gen::H(m + n), rat_int(-n));
            if m + n == 0 {
                e.add_term(Gen::C2, rat_int(m * m + m));
            }
            e
        }
        (Gen::L(m), Gen::G(p)) => {
            // (m/2 - p) G_{m+p}
            let coeff = rat(m, 2) - p.to_rat();
            LieElement::term(Gen::g(HalfInt::from_int(m) + p), coeff)
        }
        (Gen::L(m), Gen::F(p)) => {
            let coeff = -(rat(m, 2) + p.to_rat());
            LieElement::term(Gen::f(HalfInt::from_int(m) + p), coeff)
        }
        (Gen::H(m), Gen::G(p)) => LieElement::term(Gen::f(HalfInt::from_int(m) + p), rat_int(m)),
        (Gen::H(_), Gen::F(_)) => LieElement::zero(),
        (Gen::G(p), Gen::F(q)) => {
            // H_{p+q} + (2p + 1) delta_{p+q,0} c2
            let mut e = LieElement::term(Gen::H((p + q).as_int()), rat_int(1));
            if p.twice() + q.twice() == 0 {
                e.add_term(Gen::C2, rat_int(p.twice() + 1));
            }
            e
        }
        // swapped order: [y, x] = -(-1)^{|x||y|} [x, y]
        _ => {
            let mut e = bracket(y, x);
            let sign = if x.is_odd() && y.is_odd() {
                rat_int(1)
            } else {
                rat_int(-1)
            };
            e.scale(&sign);
            e
        }
    }
}

/// Superbracket extended bilinearly to combinations.
pub fn bracket_elements(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.iter() {
        for (gy, cy) in y.iter() {
            out.add_scaled(&bracket(*gx, *gy), &(cx * cy));
        }
    }
    out
}

/// The subalgebra family of the defining relations' ambient algebra:
/// the six named subalgebras plus the two-parameter truncations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubalgebraSpec {
    /// super Virasoro: L_i, G_{i+1/2}, c1
    S,
    /// Heisenberg: H_i, c3
    Hh,
    /// fermion: F_{i+1/2}, c3
    Ff,
    /// Heisenberg-Clifford: H_i, F_{i+1/2}, c3
    Hc,
    /// twisted Heisenberg-Virasoro: L_i, H_i, c1, c2, c3
    Hv,
    /// fermion-Virasoro: L_i, F_{i+1/2}, c1, c3
    Fv,
    /// s^(m): L_{m+i}, G_{m+i+1/2} for i >= 0, plus c1
    SM { m: i64 },
    /// hc^(n): H_{n+i}, F_{n+i+1/2} for i >= 0, plus c3
    HcM { n: i64 },
    /// g^(m,n) = s^(m) + hc^(n) + C c2
    GMN { m: i64, n: i64 },
    /// g^(m,-inf) = s^(m) + hc + C c2
    GMInf { m: i64 },
}

impl SubalgebraSpec {
    pub fn contains(self, x: Gen) -> bool {
        use SubalgebraSpec::*;
        match self {
            S => matches!(x, Gen::L(_) | Gen::G(_) | Gen::C1),
            Hh => matches!(x, Gen::H(_) | Gen::C3),
            Ff => matches!(x, Gen::F(_) | Gen::C3),
            Hc => matches!(x, Gen::H(_) | Gen::F(_) | Gen::C3),
            Hv => matches!(x, Gen::L(_) | Gen::H(_) | Gen::C1 | Gen::C2 | Gen::C3),
            Fv => matches!(x, Gen::L(_) | Gen::F(_) | Gen::C1 | Gen::C3),
            SM { m } => match x {
                Gen::L(i) => i >= m,
                Gen::G(p) => p.twice() >= 2 * m + 1,
                Gen::C1 => true,
                _ => false,
            },
            HcM { n } => match x {
                Gen::H(i) => i >= n,
                Gen::F(p) => p.twice() >= 2 * n + 1,
                Gen::C3 => true,
                _ => false,
            },
            GMN { m, n } => {
                SM { m }.contains(x) || HcM { n }.contains(x) || x == Gen::C2
            }
            GMInf { m } => SM { m }.contains(x) || Hc.contains(x) || x == Gen::C2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn g(t: i64) -> Gen {
        Gen::g(HalfInt::from_twice(t))
    }
    fn f(t: i64) -> Gen {
        Gen::f(HalfInt::from_twice(t))
    }

    #[test]
    fn bracket_examples() {
        // [L_2, L_-2] = 4 L_0 + 1/2 c1
        let e = bracket(Gen::L(2), Gen::L(-2));
        assert_eq!(e.coeff(Gen::L(0)), rat_int(4));
        assert_eq!(e.coeff(Gen::C1), rat(1, 2));

        // centrals
        assert!(bracket(Gen::L(0), Gen::C1).is_zero());

        // [G_{1/2}, F_{-1/2}] = H_0 + 2 c2
        let e = bracket(g(1), f(-1));
        assert_eq!(e.coeff(Gen::H(0)), rat_int(1));
        assert_eq!(e.coeff(Gen::C2), rat_int(2));

        // [F_{1/2}, F_{-1/2}] = c3
        let e = bracket(f(1), f(-1));
        assert_eq!(e.coeff(Gen::C3), rat_int(1));

        // [G_{1/2}, G_{-1/2}] = 2 L_0 (central coefficient vanishes)
        let e = bracket(g(1), g(-1));
        assert_eq!(e.coeff(Gen::L(0)), rat_int(2));
        assert!(e.coeff(Gen::C1).is_zero());

        // [H_1, G_{-1/2}] = F_{1/2}
        let e = bracket(Gen::H(1), g(-1));
        assert_eq!(e.coeff(f(1)), rat_int(1));

        // [H_m, F_p] = 0
        assert!(bracket(Gen::H(3), f(-5)).is_zero());
    }

    #[test]
    fn swapped_brackets_carry_koszul_sign() {
        // even-even swap: [L_-2, L_2] = -[L_2, L_-2]
        let a = bracket(Gen::L(2), Gen::L(-2));
        let b = bracket(Gen::L(-2), Gen::L(2));
        let mut sum = a.clone();
        sum.add_scaled(&b, &rat_int(1));
        assert!(sum.is_zero());

        // odd-odd swap: [F_{-1/2}, G_{1/2}] = +[G_{1/2}, F_{-1/2}]
        let a = bracket(g(1), f(-1));
        let b = bracket(f(-1), g(1));
        assert_eq!(a, b);

        // even-odd swap
        let a = bracket(Gen::L(2), f(-3));
        let b = bracket(f(-3), Gen::L(2));
        let mut sum = a;
        sum.add_scaled(&b, &rat_int(1));
        assert!(sum.is_zero());
    }

    #[test]
    fn parity_and_degree() {
        assert_eq!(Gen::L(5).parity(), Parity::Even);
        assert_eq!(g(-3).parity(), Parity::Odd);
        assert_eq!(Gen::C3.parity(), Parity::Even);
        assert_eq!(Gen::L(-3).degree(), HalfInt::from_int(-3));
        assert_eq!(g(1).degree(), HalfInt::half_odd(0));
        assert_eq!(Gen::C2.degree(), HalfInt::ZERO);
    }

    #[test]
    fn subalgebra_membership() {
        use SubalgebraSpec::*;
        // g^(0,-1) contains H_-1
        assert!(GMN { m: 0, n: -1 }.contains(Gen::H(-1)));
        // s^(2) does not contain L_1
        assert!(!SM { m: 2 }.contains(Gen::L(1)));
        // hc has no L generators
        assert!(!Hc.contains(Gen::L(0)));
        assert!(SM { m: 2 }.contains(g(5))); // G_{5/2}
        assert!(!SM { m: 2 }.contains(g(3))); // G_{3/2}
        assert!(GMInf { m: 0 }.contains(Gen::H(-100)));
        assert!(GMN { m: 0, n: -1 }.contains(Gen::C2));
    }

    #[test]
    fn gen_parse_roundtrip() {
        for s in ["L(-2)", "H(0)", "G(-1/2)", "F(3/2)", "c1", "c3"] {
            let g = Gen::parse(s).unwrap();
            assert_eq!(format!("{g}"), s);
        }
        assert!(Gen::parse("G(1)").is_err());
        assert!(Gen::parse("L(1/2)").is_err());
    }
}
