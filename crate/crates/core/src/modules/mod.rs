//! Truncated realizations of the module families: Verma, Fock, universal
//! Whittaker, induced modules over explicit finite bases, and tensor
//! products of a super-Virasoro factor with a Fock factor.
//!
//! A handle enumerates a PBW basis (monomial over base vector) per graded
//! piece up to a weight truncation. All generator actions are evaluated by
//! recursive commutation against this basis; results that would leave the
//! truncated slice raise an overflow instead of being projected away.

pub mod act;
pub mod freefield;

use std::collections::BTreeMap;

use crate::algebra::Gen;
use crate::halfint::HalfInt;
use crate::pbw::{Family, PBWMonomial};
use crate::rat::{rat_int, rat_to_string, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("invalid module spec: {0}")]
    InvalidSpec(String),
    #[error("result exceeds truncation {truncation} (weight {weight})")]
    TruncationOverflow { truncation: HalfInt, weight: HalfInt },
    #[error("operation requires nonzero level")]
    LevelZero,
    #[error("degree {0} beyond truncation")]
    DegreeOutOfRange(HalfInt),
}

/// Scalar parameters: central values c (c1), z (c2), ell (c3 = level),
/// plus the H0 scalar d and the L0 highest weight h where applicable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleParams {
    pub c: Rat,
    pub z: Rat,
    pub ell: Rat,
    pub d: Rat,
    pub h: Rat,
}

impl ModuleParams {
    pub fn new(c: Rat, z: Rat, ell: Rat, d: Rat, h: Rat) -> Self {
        ModuleParams { c, z, ell, d, h }
    }
}

/// Whittaker homomorphism data for g^(m,0): values on L_m..L_2m and
/// H_0..H_m; everything else in the domain maps to 0 (commutator image,
/// and the odd part maps to 0 under any homomorphism to the even line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerData {
    pub m: i64,
    pub l_values: BTreeMap<i64, Rat>,
    pub h_values: BTreeMap<i64, Rat>,
    pub c: Rat,
    pub z: Rat,
    pub ell: Rat,
}

impl WhittakerData {
    pub fn phi(&self, x: Gen) -> Option<Rat> {
        match x {
            Gen::L(n) if n >= self.m => Some(if n <= 2 * self.m {
                self.l_values.get(&n).cloned().unwrap_or_else(Rat::zero)
            } else {
                Rat::zero()
            }),
            Gen::H(k) if k >= 0 => Some(if k <= self.m {
                self.h_values.get(&k).cloned().unwrap_or_else(Rat::zero)
            } else {
                Rat::zero()
            }),
            Gen::G(p) if p.twice() >= 2 * self.m + 1 => Some(Rat::zero()),
            Gen::F(p) if p.twice() >= 1 => Some(Rat::zero()),
            Gen::C1 => Some(self.c.clone()),
            Gen::C2 => Some(self.z.clone()),
            Gen::C3 => Some(self.ell.clone()),
            _ => None,
        }
    }
}

/// Explicit action of inducing-subalgebra generators on a finite base, one
/// dim x dim matrix per generator (entry[row][col] = coefficient of base
/// row in x . base col).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ActionTable {
    pub dim: usize,
    pub parities: Vec<bool>,
    pub generators: BTreeMap<Gen, Vec<Vec<Rat>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Verma(ModuleParams),
    /// Verma over the super-Virasoro part alone: only L/G letters, the
    /// Heisenberg-Clifford part and c2/c3 act as zero. Used standalone and
    /// as the left tensor factor.
    SvirVerma(ModuleParams),
    Fock(ModuleParams),
    Whittaker(WhittakerData),
    /// Induced from g^(0,-q) with an explicit base action.
    InducedG0q {
        q: i64,
        table: ActionTable,
        params: ModuleParams,
    },
    /// Induced from hc^(-m); L/G act through the free-field operators.
    HcInduced {
        m: i64,
        table: ActionTable,
        params: ModuleParams,
    },
    /// Super-Virasoro factor (a Verma on L/G letters only, hc acting as 0)
    /// tensored with a Fock factor carrying the full free-field action.
    Tensor {
        left: ModuleParams,
        right: ModuleParams,
    },
}

impl ModuleSpec {
    pub fn params(&self) -> ModuleParams {
        match self {
            ModuleSpec::Verma(p) | ModuleSpec::SvirVerma(p) | ModuleSpec::Fock(p) => p.clone(),
            ModuleSpec::Whittaker(w) => ModuleParams::new(
                w.c.clone(),
                w.z.clone(),
                w.ell.clone(),
                Rat::zero(),
                Rat::zero(),
            ),
            ModuleSpec::InducedG0q { params, .. } | ModuleSpec::HcInduced { params, .. } => {
                params.clone()
            }
            ModuleSpec::Tensor { right, .. } => right.clone(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ModuleSpec::Verma(_) => "verma".into(),
            ModuleSpec::SvirVerma(_) => "svir-verma".into(),
            ModuleSpec::Fock(_) => "fock".into(),
            ModuleSpec::Whittaker(w) => format!("whittaker(m={})", w.m),
            ModuleSpec::InducedG0q { q, .. } => format!("induced-g0q(q={q})"),
            ModuleSpec::HcInduced { m, .. } => format!("hc-induced(m={m})"),
            ModuleSpec::Tensor { .. } => "tensor".into(),
        }
    }
}

/// A PBW basis vector: exponent quadruple over a base-vector index.
pub type BasisKey = (PBWMonomial, usize);

/// Exact linear combination of basis vectors of one handle.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector {
    terms: BTreeMap<BasisKey, Rat>,
}

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector::default()
    }

    pub fn unit(key: BasisKey) -> Self {
        let mut v = GradedVector::zero();
        v.add_term(key, rat_int(1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: BasisKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, s: &Rat) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * s);
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

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Text form for reports: terms joined with " + ", each
/// "coeff * monomial v<base>", with the monomial rendered through the
/// handle's letter convention.
pub fn vector_text(handle: &ModuleHandle, v: &GradedVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for ((mono, base), c) in v.iter() {
        let mono_text = if mono.is_one() {
            String::new()
        } else {
            let letters: Vec<String> = mono
                .letters()
                .iter()
                .map(|&(fam, p)| format!("{}", handle.gen_of_letter(fam, p)))
                .collect();
            format!("{} ", letters.join(" "))
        };
        parts.push(format!("{}*{}v{}", rat_to_string(c), mono_text, base));
    }
    parts.join(" + ")
}

/// A built, immutable truncated module realization.
pub struct ModuleHandle {
    pub spec: ModuleSpec,
    pub truncation: HalfInt,
    /// Letter budget: maximum total letters per monomial (binding for
    /// Whittaker handles, generous elsewhere).
    pub budget: u32,
    /// Basis per degree, ascending degree, stable enumeration order.
    degrees: BTreeMap<HalfInt, Vec<BasisKey>>,
    /// (degree, index within degree) per basis vector.
    position: BTreeMap<BasisKey, (HalfInt, usize)>,
    /// Parity per base vector (false = even).
    base_parities: Vec<bool>,
    /// Degree per base vector (nonzero only for tensor handles).
    base_degrees: Vec<HalfInt>,
    /// Factor handles for tensor constructions.
    left: Option<Box<ModuleHandle>>,
    right: Option<Box<ModuleHandle>>,
}

impl ModuleHandle {
    pub fn basis_at(&self, degree: HalfInt) -> &[BasisKey] {
        self.degrees.get(&degree).map_or(&[], |v| v.as_slice())
    }

    pub fn degrees(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.degrees.keys().copied()
    }

    pub fn position(&self, key: &BasisKey) -> Option<(HalfInt, usize)> {
        self.position.get(key).copied()
    }

    pub fn right_handle(&self) -> Option<&ModuleHandle> {
        self.right.as_deref()
    }

    pub fn left_handle(&self) -> Option<&ModuleHandle> {
        self.left.as_deref()
    }

    pub fn base_dim(&self) -> usize {
        self.base_parities.len()
    }

    pub fn degree_of(&self, key: &BasisKey) -> HalfInt {
        self.mono_weight(&key.0) + self.base_degrees[key.1]
    }

    /// Module-grading weight of a monomial: the PBW weight shifted by the
    /// construction's letter offsets.
    pub fn mono_weight(&self, m: &PBWMonomial) -> HalfInt {
        let (l_off, h_off) = self.letter_offsets();
        let shift = l_off * (m.i.length() + m.k.length()) as i64
            + h_off * (m.j.length() + m.l.length()) as i64;
        crate::pbw::weight(m) - HalfInt::from_int(shift)
    }

    pub fn parity_of(&self, key: &BasisKey) -> bool {
        let odd_letters = key.0.k.length() + key.0.l.length();
        (odd_letters % 2 == 1) != self.base_parities[key.1]
    }

    /// The algebra generator named by letter position p of a family, under
    /// this construction's convention.
    pub fn gen_of_letter(&self, fam: Family, p: u32) -> Gen {
        let p = p as i64;
        let (l_off, h_off) = self.letter_offsets();
        match fam {
            Family::L => Gen::L(l_off - p),
            Family::H => Gen::H(h_off - p),
            Family::G => Gen::g(HalfInt::from_twice(2 * l_off + 1 - 2 * p)),
            Family::F => Gen::f(HalfInt::from_twice(2 * h_off + 1 - 2 * p)),
        }
    }

    /// Inverse of gen_of_letter: Some((family, position)) when x is a
    /// lowering letter of this construction.
    pub fn letter_of_gen(&self, x: Gen) -> Option<(Family, u32)> {
        let (l_off, h_off) = self.letter_offsets();
        let (has_lg, has_hf) = self.letter_families();
        match x {
            Gen::L(n) if has_lg && n < l_off => Some((Family::L, (l_off - n) as u32)),
            Gen::H(n) if has_hf && n < h_off => Some((Family::H, (h_off - n) as u32)),
            Gen::G(p) if has_lg && p.twice() < 2 * l_off + 1 => {
                Some((Family::G, ((2 * l_off + 1 - p.twice()) / 2) as u32))
            }
            Gen::F(p) if has_hf && p.twice() < 2 * h_off + 1 => {
                Some((Family::F, ((2 * h_off + 1 - p.twice()) / 2) as u32))
            }
            _ => None,
        }
    }

    /// (L-family offset, H-family offset): letter position p means
    /// L_{l_off - p}, H_{h_off - p}, G_{l_off + 1/2 - p}, F_{h_off + 1/2 - p}.
    fn letter_offsets(&self) -> (i64, i64) {
        match &self.spec {
            ModuleSpec::Verma(_)
            | ModuleSpec::SvirVerma(_)
            | ModuleSpec::Fock(_)
            | ModuleSpec::Tensor { .. } => (0, 0),
            ModuleSpec::Whittaker(w) => (w.m, 0),
            ModuleSpec::InducedG0q { q, .. } => (0, -q),
            ModuleSpec::HcInduced { m, .. } => (0, -m),
        }
    }

    /// Which families occur as lowering letters: (L/G, H/F).
    fn letter_families(&self) -> (bool, bool) {
        match &self.spec {
            ModuleSpec::Fock(_) | ModuleSpec::HcInduced { .. } => (false, true),
            ModuleSpec::SvirVerma(_) | ModuleSpec::Tensor { .. } => (true, false),
            _ => (true, true),
        }
    }

    /// Module-grading weight of one letter: minus the algebra degree of the
    /// named generator.
    pub fn letter_weight(&self, fam: Family, p: u32) -> HalfInt {
        -self.gen_of_letter(fam, p).degree()
    }

    pub fn graded_dim(&self, degree: HalfInt) -> Result<usize, ModuleError> {
        if degree > self.truncation || degree < self.min_degree() {
            return Err(ModuleError::DegreeOutOfRange(degree));
        }
        Ok(self.basis_at(degree).len())
    }

    /// Smallest admissible degree: -truncation for Whittaker handles
    /// (letters of negative weight exist), 0 otherwise.
    pub fn min_degree(&self) -> HalfInt {
        match &self.spec {
            ModuleSpec::Whittaker(_) => -self.truncation,
            _ => HalfInt::ZERO,
        }
    }

    /// Upper bound B such that H_b kills every term of v for b > B, and
    /// F_r does for r > B + 1/2. Base vectors contribute the largest index
    /// with a (possibly) nonzero base action; each letter of positive
    /// weight w can push an index down by at most w during commutation.
    pub fn annihilation_bound(&self, v: &GradedVector) -> i64 {
        let base_bound = match &self.spec {
            ModuleSpec::Verma(_)
            | ModuleSpec::SvirVerma(_)
            | ModuleSpec::Fock(_)
            | ModuleSpec::Tensor { .. } => 0,
            ModuleSpec::Whittaker(w) => w.m,
            ModuleSpec::InducedG0q { q, table, .. } => {
                let table_max = table
                    .generators
                    .keys()
                    .map(|g| g.degree().twice().abs())
                    .max()
                    .unwrap_or(0);
                (table_max + 1) / 2 + q.abs()
            }
            ModuleSpec::HcInduced { m, table, .. } => {
                let table_max = table
                    .generators
                    .keys()
                    .map(|g| g.degree().twice().abs())
                    .max()
                    .unwrap_or(0);
                (table_max + 1) / 2 + m.abs()
            }
        };
        let mut bound = base_bound;
        for ((mono, _), _) in v.iter() {
            let mut pos_weight = 0i64;
            for (fam, p) in mono.letters() {
                let w = self.letter_weight(fam, p);
                if w.is_positive() {
                    pos_weight += (w.twice() + 1) / 2;
                }
            }
            bound = bound.max(base_bound + pos_weight);
        }
        bound
    }
}

/// Validate an action table against the inducing subalgebra membership
/// test.
fn validate_table(
    table: &ActionTable,
    admissible: impl Fn(Gen) -> bool,
) -> Result<(), ModuleError> {
    if table.dim == 0 {
        return Err(ModuleError::InvalidSpec("empty action table base".into()));
    }
    if !table.parities.is_empty() && table.parities.len() != table.dim {
        return Err(ModuleError::InvalidSpec(
            "parity list length differs from base dimension".into(),
        ));
    }
    for (g, m) in &table.generators {
        if !admissible(*g) {
            return Err(ModuleError::InvalidSpec(format!(
                "generator {g} is not in the inducing subalgebra"
            )));
        }
        if m.len() != table.dim || m.iter().any(|r| r.len() != table.dim) {
            return Err(ModuleError::InvalidSpec(format!(
                "matrix for {g} is not {0}x{0}",
                table.dim
            )));
        }
    }
    Ok(())
}

pub fn build_module(spec: ModuleSpec, truncation: HalfInt) -> Result<ModuleHandle, ModuleError> {
    build_module_with_budget(spec, truncation, default_budget(truncation))
}

fn default_budget(truncation: HalfInt) -> u32 {
    // letters each weigh at least 1/2 in the all-positive constructions
    (truncation.twice().max(0) as u32).max(1) + 4
}

pub fn build_module_with_budget(
    spec: ModuleSpec,
    truncation: HalfInt,
    budget: u32,
) -> Result<ModuleHandle, ModuleError> {
    if truncation.is_negative() {
        return Err(ModuleError::InvalidSpec("negative truncation".into()));
    }
    // per-construction validation
    match &spec {
        ModuleSpec::Fock(p) => {
            if p.ell.is_zero() {
                return Err(ModuleError::InvalidSpec(
                    "Fock construction requires nonzero level".into(),
                ));
            }
        }
        ModuleSpec::Whittaker(w) => {
            if w.m < 1 {
                return Err(ModuleError::InvalidSpec("Whittaker m must be >= 1".into()));
            }
            if w.l_values.keys().any(|&n| n < w.m || n > 2 * w.m) {
                return Err(ModuleError::InvalidSpec(
                    "Whittaker L values must lie in m..=2m".into(),
                ));
            }
            if w.h_values.keys().any(|&k| k < 0 || k > w.m) {
                return Err(ModuleError::InvalidSpec(
                    "Whittaker H values must lie in 0..=m".into(),
                ));
            }
        }
        ModuleSpec::InducedG0q { q, table, .. } => {
            if *q < 0 {
                return Err(ModuleError::InvalidSpec("q must be >= 0".into()));
            }
            let q = *q;
            validate_table(table, |g| match g {
                Gen::L(n) => n >= 0,
                Gen::G(p) => p.twice() >= 1,
                Gen::H(n) => n >= -q,
                Gen::F(p) => p.twice() >= -2 * q + 1,
                _ => true,
            })?;
        }
        ModuleSpec::HcInduced { m, table, params } => {
            if params.ell.is_zero() {
                return Err(ModuleError::InvalidSpec(
                    "hc-induced free-field action requires nonzero level".into(),
                ));
            }
            let m = *m;
            validate_table(table, |g| match g {
                Gen::H(n) => n >= -m,
                Gen::F(p) => p.twice() >= -2 * m + 1,
                Gen::C3 => true,
                _ => false,
            })?;
        }
        ModuleSpec::Tensor { left, right } => {
            if right.ell.is_zero() {
                return Err(ModuleError::InvalidSpec(
                    "tensor right factor is a Fock module; level must be nonzero".into(),
                ));
            }
            if left.z != right.z {
                return Err(ModuleError::InvalidSpec(
                    "mismatched z between tensor factors".into(),
                ));
            }
        }
        ModuleSpec::Verma(_) | ModuleSpec::SvirVerma(_) => {}
    }

    let (base_parities, base_degrees, left, right) = match &spec {
        ModuleSpec::InducedG0q { table, .. } | ModuleSpec::HcInduced { table, .. } => {
            let parities = if table.parities.is_empty() {
                vec![false; table.dim]
            } else {
                table.parities.clone()
            };
            (parities, vec![HalfInt::ZERO; table.dim], None, None)
        }
        ModuleSpec::Tensor { left, right } => {
            let lh = build_module(ModuleSpec::SvirVerma(left.clone()), truncation)?;
            let rh = build_module(ModuleSpec::Fock(right.clone()), truncation)?;
            let mut parities = Vec::new();
            let mut degs = Vec::new();
            for d in rh.degrees().collect::<Vec<_>>() {
                for key in rh.basis_at(d) {
                    parities.push(rh.parity_of(key));
                    degs.push(d);
                }
            }
            (parities, degs, Some(Box::new(lh)), Some(Box::new(rh)))
        }
        _ => (vec![false], vec![HalfInt::ZERO], None, None),
    };

    let mut handle = ModuleHandle {
        spec,
        truncation,
        budget,
        degrees: BTreeMap::new(),
        position: BTreeMap::new(),
        base_parities,
        base_degrees,
        left,
        right,
    };
    enumerate_basis(&mut handle);
    Ok(handle)
}

/// Tensor handles index right-factor basis vectors as base vectors; this
/// resolves a flat base index back to the right handle's key.
pub fn tensor_right_key(handle: &ModuleHandle, base: usize) -> BasisKey {
    let rh = handle.right_handle().expect("tensor handle");
    let mut i = base;
    for d in rh.degrees().collect::<Vec<_>>() {
        let slice = rh.basis_at(d);
        if i < slice.len() {
            return slice[i].clone();
        }
        i -= slice.len();
    }
    panic!("base index out of range");
}

pub fn tensor_right_index(handle: &ModuleHandle, key: &BasisKey) -> usize {
    let rh = handle.right_handle().expect("tensor handle");
    let (deg, idx) = rh.position(key).expect("right key in right handle");
    let mut off = 0usize;
    for d in rh.degrees().collect::<Vec<_>>() {
        if d == deg {
            return off + idx;
        }
        off += rh.basis_at(d).len();
    }
    unreachable!()
}

/// Candidate lowering letters for the construction: every (family,
/// position, weight) that could appear within truncation and budget.
fn candidate_letters(handle: &ModuleHandle) -> Vec<(Family, u32, HalfInt)> {
    let n = handle.truncation;
    let budget = handle.budget as i64;
    // largest magnitude of a nonpositive letter weight (only Whittaker has
    // any); positive-weight letters may then reach N + budget * that
    let neg_span = match &handle.spec {
        ModuleSpec::Whittaker(w) => w.m,
        _ => 0,
    };
    let max_pos_twice = n.twice() + 2 * budget * neg_span;
    let (has_lg, has_hf) = handle.letter_families();
    let mut out = Vec::new();
    let mut fams: Vec<Family> = Vec::new();
    if has_lg {
        fams.push(Family::L);
        fams.push(Family::G);
    }
    if has_hf {
        fams.push(Family::H);
        fams.push(Family::F);
    }
    for fam in fams {
        for p in 1u32.. {
            let w = handle.letter_weight(fam, p);
            if w.twice() > max_pos_twice {
                break;
            }
            out.push((fam, p, w));
        }
    }
    out
}

fn enumerate_basis(handle: &mut ModuleHandle) {
    let letters = candidate_letters(handle);
    let mut monos: Vec<PBWMonomial> = Vec::new();
    let mut current = PBWMonomial::one();
    dfs_enumerate(handle, &letters, 0, HalfInt::ZERO, 0, &mut current, &mut monos);

    let min_deg = handle.min_degree();
    let mut degrees: BTreeMap<HalfInt, Vec<BasisKey>> = BTreeMap::new();
    for mono in monos {
        let w = handle.mono_weight(&mono);
        for base in 0..handle.base_parities.len() {
            let deg = w + handle.base_degrees[base];
            if deg > handle.truncation || deg < min_deg {
                continue;
            }
            degrees.entry(deg).or_default().push((mono.clone(), base));
        }
    }
    for keys in degrees.values_mut() {
        keys.sort();
    }
    let mut position = BTreeMap::new();
    for (&d, keys) in &degrees {
        for (i, k) in keys.iter().enumerate() {
            position.insert(k.clone(), (d, i));
        }
    }
    handle.degrees = degrees;
    handle.position = position;
}

fn dfs_enumerate(
    handle: &ModuleHandle,
    letters: &[(Family, u32, HalfInt)],
    idx: usize,
    weight: HalfInt,
    used: u32,
    current: &mut PBWMonomial,
    out: &mut Vec<PBWMonomial>,
) {
    // remaining letters can lower the weight by at most this much
    let remaining = (handle.budget - used) as i64;
    let neg_span = match &handle.spec {
        ModuleSpec::Whittaker(w) => w.m,
        _ => 0,
    };
    if weight.twice() - 2 * remaining * neg_span > handle.truncation.twice() {
        return; // weight can no longer come back under the cap
    }
    if idx == letters.len() {
        if weight.abs() <= handle.truncation {
            out.push(current.clone());
        }
        return;
    }
    let (fam, p, w) = letters[idx];
    let room = handle.budget - used;
    let max_mult = if fam.is_odd() { room.min(1) } else { room };
    dfs_enumerate(handle, letters, idx + 1, weight, used, current, out);
    let mut added = 0u32;
    while added < max_mult {
        if !current.add_letter(fam, p) {
            break;
        }
        added += 1;
        let new_weight = HalfInt::from_twice(weight.twice() + added as i64 * w.twice());
        dfs_enumerate(
            handle,
            letters,
            idx + 1,
            new_weight,
            used + added,
            current,
            out,
        );
    }
    for _ in 0..added {
        match fam {
            Family::L => current.i.decrement(p),
            Family::H => current.j.decrement(p),
            Family::G => current.k.clear(p),
            Family::F => current.l.clear(p),
        }
    }
}
