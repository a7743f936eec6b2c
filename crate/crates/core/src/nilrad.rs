//! Torsion modulo the nilradical for artinian coefficient rings.
//!
//! For `A = K[u]/(u^m)` the nilradical is `N = (u)` and `A/N = K`. A module
//! over `A[x_1,…,x_n]` is handled as a module over `K[u, x_1,…,x_n]` with the
//! extra relations `u^m·e_i`, which keeps every question exact without
//! Gröbner bases over a non-reduced ring. Products of fields have `N = 0` and
//! split componentwise into field problems.

use alloc::format;
use alloc::vec::Vec;

use crate::coeff::{Coeff, CoeffRing, CoeffValue};
use crate::error::{Error, Result};
use crate::gb::{element_annihilator, eliminate, FreeElem, Limits};
use crate::krull::{check_profile_matches_dim, dim_oracle, Config, Dim, ProfileCheck};
use crate::modpres::{is_torsion_element, ModulePresentation, Torsion, TorsionProfile};
use crate::poly::{Monomial, Poly};

/// An artinian coefficient ring with its nilradical and residue ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilData {
    ring: CoeffRing,
    residue: CoeffRing,
}

impl NilData {
    pub fn new(ring: CoeffRing) -> Result<Self> {
        match ring {
            CoeffRing::DualNumbers { base, .. } => Ok(NilData { ring, residue: base.as_ring() }),
            CoeffRing::ProductField { .. } => Ok(NilData { ring, residue: ring }),
            other => Err(Error::UnsupportedRing(format!("{other} is not an artinian test ring"))),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// `A/N`.
    pub fn residue(&self) -> CoeffRing {
        self.residue
    }

    /// Whether `N` is the zero ideal.
    pub fn is_reduced(&self) -> bool {
        self.ring == self.residue
    }
}

/// Whether `c` is regular modulo the nilradical.
pub fn is_cn_regular(c: &Coeff) -> Result<bool> {
    let ring = c.ring();
    match ring {
        CoeffRing::DualNumbers { base, .. } => Ok(!base.as_ring().is_zero(&ring.component(c.value(), 0))),
        CoeffRing::ProductField { .. } => Ok(ring.is_regular(c.value())),
        other => Err(Error::UnsupportedRing(format!("{other}"))),
    }
}

fn map_presentation(
    p: &ModulePresentation,
    target: CoeffRing,
    f: impl Fn(&CoeffValue) -> CoeffValue + Copy,
) -> Result<ModulePresentation> {
    let rels = p
        .relations()
        .iter()
        .map(|r| r.map(|c| Ok(c.map_coeffs(target, f))))
        .collect::<Result<Vec<_>>>()?;
    ModulePresentation::new(target, p.nvars(), p.rank(), rels)?.with_names(p.names().to_vec())
}

/// `M/MN` over `(A/N)[x_1,…,x_n]`.
pub fn reduce_mod_n(p: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = p.ring();
    match ring {
        CoeffRing::DualNumbers { base, .. } => map_presentation(p, base.as_ring(), |v| ring.component(v, 0)),
        other => Err(Error::UnsupportedRing(format!("reduction needs dual numbers, got {other}"))),
    }
}

fn lift_poly(f: &Poly, base: CoeffRing) -> Poly {
    let ring = f.ring();
    let mut terms = Vec::new();
    for (m, v) in f.terms() {
        if let CoeffValue::Tuple(cs) = v {
            for (j, c) in cs.iter().enumerate() {
                let mut exps = alloc::vec![j as u32];
                exps.extend_from_slice(m.exponents());
                terms.push((Monomial::from_exponents(&exps), c.clone()));
            }
        } else {
            let mut exps = alloc::vec![0];
            exps.extend_from_slice(m.exponents());
            terms.push((Monomial::from_exponents(&exps), ring.component(v, 0)));
        }
    }
    Poly::from_terms(base, f.nvars() + 1, terms)
}

fn dual_parts(ring: CoeffRing) -> Result<(CoeffRing, u32)> {
    match ring {
        CoeffRing::DualNumbers { base, m } => Ok((base.as_ring(), m)),
        other => Err(Error::UnsupportedRing(format!("lifting needs dual numbers, got {other}"))),
    }
}

/// The same module over `K[u, x_1,…,x_n]`, with `u` as the first variable
/// and the relations `u^m·e_i` added.
pub fn lift(p: &ModulePresentation) -> Result<ModulePresentation> {
    let (base, m) = dual_parts(p.ring())?;
    let n = p.nvars() + 1;
    let mut rels: Vec<FreeElem> = p.relations().iter().map(|r| lift_elem(r, base)).collect::<Result<_>>()?;
    let um = Poly::term(base, Monomial::var(n, 0, m), base.one());
    for i in 0..p.rank() {
        rels.push(FreeElem::unit(base, n, p.rank(), i).scale(&um)?);
    }
    ModulePresentation::new(base, n, p.rank(), rels)
}

fn lift_elem(y: &FreeElem, base: CoeffRing) -> Result<FreeElem> {
    FreeElem::new(y.comps().iter().map(|c| lift_poly(c, base)).collect())
}

fn component(p: &ModulePresentation, j: usize) -> Result<ModulePresentation> {
    let ring = p.ring();
    map_presentation(p, ring.base().as_ring(), move |v| ring.component(v, j))
}

fn component_elem(y: &FreeElem, j: usize) -> Result<FreeElem> {
    let ring = y.ring();
    let base = ring.base().as_ring();
    y.map(|c| Ok(c.map_coeffs(base, |v| ring.component(v, j))))
}

fn factor_count(ring: CoeffRing) -> usize {
    match ring {
        CoeffRing::ProductField { r, .. } => r as usize,
        _ => 0,
    }
}

/// Whether `y` is the zero class.
pub fn is_zero_class(p: &ModulePresentation, y: &FreeElem, limits: &Limits) -> Result<bool> {
    let ring = p.ring();
    match ring {
        CoeffRing::DualNumbers { .. } => {
            let (base, _) = dual_parts(ring)?;
            lift(p)?.is_zero_class(&lift_elem(y, base)?, limits)
        }
        CoeffRing::ProductField { .. } => {
            for j in 0..factor_count(ring) {
                if !component(p, j)?.is_zero_class(&component_elem(y, j)?, limits)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(Error::UnsupportedRing(format!("{other}"))),
    }
}

/// Whether some `d ∈ B'_k` that is regular modulo `N(B'_k)` kills `y`.
pub fn is_n_torsion(p: &ModulePresentation, y: &FreeElem, k: usize, limits: &Limits) -> Result<bool> {
    if k > p.nvars() {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds {} variables", p.nvars())));
    }
    let ring = p.ring();
    match ring {
        CoeffRing::DualNumbers { .. } => {
            let (base, _) = dual_parts(ring)?;
            let lifted = lift(p)?;
            let ann = element_annihilator(&lifted, &lift_elem(y, base)?, limits)?;
            let e = eliminate(&ann, k + 1, limits)?;
            Ok(e.gens().iter().any(|g| g.terms().any(|(m, _)| m.exponents()[0] == 0)))
        }
        CoeffRing::ProductField { .. } => {
            for j in 0..factor_count(ring) {
                if !is_torsion_element(&component(p, j)?, &component_elem(y, j)?, k, limits)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(Error::UnsupportedRing(format!("{other}"))),
    }
}

pub fn is_zero_module(p: &ModulePresentation, limits: &Limits) -> Result<bool> {
    for i in 0..p.rank() {
        if !is_zero_class(p, &p.generator(i), limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// N-torsion flags over `B'_0 ⊂ … ⊂ B'_n`, decided on generators.
pub fn n_torsion_profile(p: &ModulePresentation, limits: &Limits) -> Result<TorsionProfile> {
    if is_zero_module(p, limits)? {
        return Err(Error::ZeroModule);
    }
    let mut flags = Vec::with_capacity(p.nvars() + 1);
    for k in 0..=p.nvars() {
        let mut all = true;
        for i in 0..p.rank() {
            if !is_n_torsion(p, &p.generator(i), k, limits)? {
                all = false;
                break;
            }
        }
        flags.push(if all { Torsion::Torsion } else { Torsion::NonTorsion });
    }
    TorsionProfile::new(flags)
}

/// Field-case pieces whose profiles and dimensions describe `M/MN`.
fn residue_pieces(p: &ModulePresentation) -> Result<Vec<ModulePresentation>> {
    match p.ring() {
        CoeffRing::DualNumbers { .. } => Ok(alloc::vec![reduce_mod_n(p)?]),
        CoeffRing::ProductField { r, .. } => (0..r as usize).map(|j| component(p, j)).collect(),
        other => Err(Error::UnsupportedRing(format!("{other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianReport {
    pub nvars: usize,
    /// Whether `M/MN = 0`.
    pub reduced_zero: bool,
    /// N-torsion profile of `M`, decided directly.
    pub direct_profile: Option<TorsionProfile>,
    /// Torsion profile of `M/MN` over the residue ring.
    pub reduced_profile: Option<TorsionProfile>,
    /// Dimension of `M/MN`.
    pub dim: Dim,
    /// Profile threshold against dimension for each nonzero residue piece.
    pub piece_checks: Vec<ProfileCheck>,
    /// For each sampled nonzero `y`: no `d` regular modulo `N` has `y·d = 0`.
    pub s_torsion_free: Vec<(FreeElem, bool)>,
}

impl ArtinianReport {
    pub fn profiles_agree(&self) -> bool {
        self.direct_profile == self.reduced_profile
    }

    pub fn dim_in_range(&self) -> bool {
        self.reduced_zero || (self.dim >= Dim::Finite(0) && self.dim <= Dim::Finite(self.nvars))
    }

    pub fn s_torsion_free_holds(&self) -> bool {
        self.s_torsion_free.iter().all(|(_, ok)| *ok)
    }

    pub fn passes(&self) -> bool {
        self.profiles_agree() && self.dim_in_range() && self.s_torsion_free_holds()
    }
}

/// Compares the direct N-torsion profile with the field-case profile of
/// `M/MN`, checks the dimension range, and tests sampled elements for
/// torsion by scalars regular modulo `N`.
pub fn check_artinian(p: &ModulePresentation, sample: &[FreeElem], cfg: &Config) -> Result<ArtinianReport> {
    let limits = &cfg.limits;
    let ring = NilData::new(p.ring())?.ring();
    let pieces = residue_pieces(p)?;
    let mut live = Vec::new();
    for piece in &pieces {
        if !piece.is_zero_module(limits)? {
            live.push(piece);
        }
    }
    let reduced_zero = live.is_empty();

    let direct_profile = match n_torsion_profile(p, limits) {
        Ok(pr) => Some(pr),
        Err(Error::ZeroModule) => None,
        Err(e) => return Err(e),
    };

    let mut dim = Dim::MinusInfinity;
    let mut piece_checks = Vec::new();
    let mut reduced_profile = None;
    if !reduced_zero {
        let mut flags = alloc::vec![Torsion::Torsion; p.nvars() + 1];
        for piece in &live {
            dim = dim.max(dim_oracle(piece, cfg)?);
            let check = check_profile_matches_dim(piece, cfg)?;
            for (f, g) in flags.iter_mut().zip(check.profile.flags()) {
                if *g == Torsion::NonTorsion {
                    *f = Torsion::NonTorsion;
                }
            }
            piece_checks.push(check);
        }
        reduced_profile = Some(TorsionProfile::new(flags)?);
    }

    let scalars: Vec<CoeffValue> = ring
        .elements(4096)
        .ok_or_else(|| Error::UnsupportedRing(format!("{ring} is too large to enumerate")))?
        .into_iter()
        .filter(|c| is_cn_regular(&Coeff::from_parts(ring, c.clone())).unwrap_or(false))
        .collect();
    let mut s_torsion_free = Vec::new();
    if !reduced_zero {
        for y in sample {
            if is_zero_class(p, y, limits)? {
                continue;
            }
            let mut ok = true;
            for d in &scalars {
                let yd = y.scale(&Poly::constant(ring, p.nvars(), d.clone()))?;
                if is_zero_class(p, &yd, limits)? {
                    ok = false;
                    break;
                }
            }
            s_torsion_free.push((y.clone(), ok));
        }
    }

    Ok(ArtinianReport {
        nvars: p.nvars(),
        reduced_zero,
        direct_profile,
        reduced_profile,
        dim,
        piece_checks,
        s_torsion_free,
    })
}
