//! Krull dimension by descent, the Gröbner oracle, and checkers for the
//! dimension statements relating torsion to dimension.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::autom::{monicize_with, MonicStrategy, VarChange};
use crate::catalog;
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::gb::{self, element_annihilator, eliminate, lt_dimension, FreeElem, Ideal, Limits};
use crate::modpres::{
    descend, generator_annihilators, profile_from_annihilators, witness_from_annihilators, ModulePresentation,
    Torsion, TorsionProfile,
};
use crate::poly::{MonomialOrder, Poly};

/// A Krull dimension; the zero module has dimension `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    MinusInfinity,
    Finite(usize),
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::MinusInfinity => None,
        }
    }

    /// Whether `self < m` for a natural number `m`.
    pub fn below(self, m: usize) -> bool {
        self < Dim::Finite(m)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::MinusInfinity => f.write_str("-inf"),
            Dim::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    /// Order used by the oracle's leading-term dimension.
    pub order: MonomialOrder,
    pub strategy: MonicStrategy,
}

impl Default for Config {
    fn default() -> Self {
        Config { limits: Limits::default(), order: MonomialOrder::GrevLex, strategy: MonicStrategy::Auto }
    }
}

/// One descent from `nvars_before` to `nvars_before − 1` variables. The
/// stored presentation is pruned, so some `e_i·t^j` may be missing.
#[derive(Clone, Debug)]
pub struct DescentStep {
    pub nvars_before: usize,
    /// Change of the first `nvars_before` variables.
    pub change: VarChange,
    /// Monic annihilator in the new variables.
    pub witness: Poly,
    /// The module over `nvars_before − 1` variables.
    pub presentation: ModulePresentation,
}

#[derive(Clone, Debug)]
pub struct DimReport {
    pub nvars: usize,
    pub dim_descent: Dim,
    pub dim_oracle: Dim,
    pub steps: Vec<DescentStep>,
    /// Every step extended to all `n` variables.
    pub chain: Vec<VarChange>,
    pub composite: VarChange,
    /// Profile of the module in the original coordinates.
    pub profile_before: Option<TorsionProfile>,
    /// Profile after rewriting through the composite change.
    pub profile_after: Option<TorsionProfile>,
    pub agree: bool,
}

impl DimReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &Poly> {
        self.steps.iter().map(|s| &s.witness)
    }

    /// The last descended presentation, over `dim_descent` variables.
    pub fn final_presentation(&self) -> Option<&ModulePresentation> {
        self.steps.last().map(|s| &s.presentation)
    }
}

fn oracle_from(anns: &[Ideal], cfg: &Config) -> Result<Dim> {
    let mut best = Dim::MinusInfinity;
    for a in anns {
        best = best.max(lt_dimension(a, cfg.order, &cfg.limits)?);
    }
    Ok(best)
}

/// The maximum over generators of `dim B/Ann(e_i)`.
pub fn dim_oracle(p: &ModulePresentation, cfg: &Config) -> Result<Dim> {
    oracle_from(&generator_annihilators(&p.pruned()?, &cfg.limits)?, cfg)
}

/// Dimension by repeated monicization and descent, cross-checked against
/// [`dim_oracle`]. Disagreement is an error, not a report.
pub fn dim_descent(p: &ModulePresentation, cfg: &Config) -> Result<DimReport> {
    let n = p.nvars();
    let limits = &cfg.limits;
    let start = p.pruned()?;
    let anns = generator_annihilators(&start, limits)?;
    let dim_oracle = oracle_from(&anns, cfg)?;
    let identity = VarChange::identity(p.ring(), n);

    let mut zero = true;
    for a in &anns {
        if !a.is_unit(limits)? {
            zero = false;
            break;
        }
    }
    if zero {
        let report = DimReport {
            nvars: n,
            dim_descent: Dim::MinusInfinity,
            dim_oracle,
            steps: Vec::new(),
            chain: Vec::new(),
            composite: identity,
            profile_before: None,
            profile_after: None,
            agree: dim_oracle == Dim::MinusInfinity,
        };
        return finish(report);
    }

    let profile_before = profile_from_annihilators(&anns, limits)?;
    let mut current = start;
    // `Ann(e_i) ∩ B'_k` in the current coordinates. Later changes fix
    // `B'_k` setwise, so contracting first and rewriting after agrees with
    // rewriting the full annihilator.
    let mut contracted = anns;
    let mut composite = identity;
    let mut steps = Vec::new();
    let mut chain = Vec::new();
    let mut k = n;
    while k > 0 {
        let Some(f) = witness_from_annihilators(&contracted, k, limits)? else { break };
        let (change, g) = monicize_with(&f, cfg.strategy, k)?;
        let next = descend(&current, &change, &g)?.pruned()?;
        let wide = change.extend(n)?;
        composite = composite.compose(&wide)?;
        // `g` is monic in the rewritten ideal, so it is integral over
        // `B'_{k−1}` and its contraction vanishes exactly when its
        // dimension is `k − 1`; that certificate avoids an elimination
        // that can only return zero.
        let mut next_contracted = Vec::with_capacity(contracted.len());
        let mut stop = false;
        for a in &contracted {
            let r = a.rewrite(&change)?;
            if lt_dimension(&r, cfg.order, limits)? == Dim::Finite(k - 1) {
                stop = true;
                break;
            }
            next_contracted.push(eliminate(&r, k - 1, limits)?);
        }
        chain.push(wide);
        steps.push(DescentStep { nvars_before: k, change, witness: g, presentation: next.clone() });
        current = next;
        k -= 1;
        if stop {
            break;
        }
        contracted = next_contracted;
    }
    // torsion exactly over the `B'_j` with `j > k`, for the same reason
    let flags = (0..=n).map(|j| if j > k { Torsion::Torsion } else { Torsion::NonTorsion }).collect();
    let profile_after = TorsionProfile::new(flags)?;
    let dim_descent = Dim::Finite(k);
    finish(DimReport {
        nvars: n,
        dim_descent,
        dim_oracle,
        steps,
        chain,
        composite,
        profile_before: Some(profile_before),
        profile_after: Some(profile_after),
        agree: dim_descent == dim_oracle,
    })
}

fn finish(report: DimReport) -> Result<DimReport> {
    if !report.agree {
        return Err(Error::DimensionMismatch { descent: report.dim_descent, oracle: report.dim_oracle });
    }
    Ok(report)
}

/// Dimensions of `yB'_{m+t}` over `B'_{m+t}` for `t = 0…n−m`, and of `yB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KdcRow {
    pub y: FreeElem,
    pub full: Dim,
    pub restricted: Vec<Dim>,
}

impl KdcRow {
    /// `|yB'_m| ≤ |yB|`.
    pub fn holds(&self) -> bool {
        self.restricted[0] <= self.full
    }

    /// `|yB'_m| ≤ |yB'_{m+1}| ≤ … ≤ |yB|`.
    pub fn chain_holds(&self) -> bool {
        self.restricted.windows(2).all(|w| w[0] <= w[1]) && self.restricted.last().is_some_and(|d| *d <= self.full)
    }

    /// `|yB'_m| = |yB|`.
    pub fn strong(&self) -> bool {
        self.restricted[0] == self.full
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KdcReport {
    pub m: usize,
    pub rows: Vec<KdcRow>,
}

impl KdcReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds() && r.chain_holds())
    }

    pub fn strong_holds(&self) -> bool {
        self.rows.iter().all(KdcRow::strong)
    }
}

/// Compares `|yB'_m|_{B'_m}` with `|yB|_B` for each sampled `y`.
pub fn check_kdc(p: &ModulePresentation, m: usize, sample: &[FreeElem], cfg: &Config) -> Result<KdcReport> {
    let n = p.nvars();
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds {n} variables")));
    }
    let mut rows = Vec::with_capacity(sample.len());
    for y in sample {
        let ann = element_annihilator(p, y, &cfg.limits)?;
        let full = lt_dimension(&ann, cfg.order, &cfg.limits)?;
        let mut restricted = Vec::with_capacity(n - m + 1);
        for j in m..=n {
            restricted.push(lt_dimension(&eliminate(&ann, j, &cfg.limits)?, cfg.order, &cfg.limits)?);
        }
        rows.push(KdcRow { y: y.clone(), full, restricted });
    }
    Ok(KdcReport { m, rows })
}

/// Same computation as [`check_kdc`]; read [`KdcReport::strong_holds`].
pub fn check_strong_kdc(p: &ModulePresentation, m: usize, sample: &[FreeElem], cfg: &Config) -> Result<KdcReport> {
    check_kdc(p, m, sample, cfg)
}

/// Dimension and torsion over the full ring from one basis of the
/// relations; cheaper than per-generator annihilators at high rank.
pub fn relation_dim_and_torsion(p: &ModulePresentation, cfg: &Config) -> Result<(Dim, bool)> {
    let p = p.pruned()?;
    let gb = p.relation_basis(cfg.order, &cfg.limits)?;
    let dim = gb::module_lead_dimension(&gb)?;
    Ok((dim, gb::module_rank(&gb) == p.rank()))
}

/// Whether a module and its presentation over fewer variables have the
/// same dimension, bounded by that number of variables. The two sides use
/// different oracles: annihilators for `p`, the relation basis for
/// `descended`.
pub fn check_fg_dim_equality(p: &ModulePresentation, descended: &ModulePresentation, cfg: &Config) -> Result<bool> {
    let a = dim_oracle(p, cfg)?;
    let (b, _) = relation_dim_and_torsion(descended, cfg)?;
    Ok(a == b && b <= Dim::Finite(descended.nvars()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropReport {
    pub m: usize,
    pub dim: Dim,
    pub torsion: bool,
}

impl DropReport {
    /// `dim < m` exactly when the module is torsion over its whole ring.
    pub fn passes(&self) -> bool {
        self.dim.below(self.m) == self.torsion
    }
}

/// For a finitely presented module over `m` variables, compares
/// `dim < m` with torsion over the full ring.
pub fn check_torsion_dimension_drop(p: &ModulePresentation, cfg: &Config) -> Result<DropReport> {
    let (dim, torsion) = relation_dim_and_torsion(p, cfg)?;
    Ok(DropReport { m: p.nvars(), dim, torsion })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCheck {
    pub profile: TorsionProfile,
    pub dim: Dim,
}

impl ProfileCheck {
    pub fn m_profile(&self) -> Dim {
        self.profile.m_profile()
    }

    pub fn matches(&self) -> bool {
        self.m_profile() == self.dim
    }
}

/// Compares the profile threshold in the given coordinates with the
/// dimension. Reports; never asserts.
pub fn check_profile_matches_dim(p: &ModulePresentation, cfg: &Config) -> Result<ProfileCheck> {
    let anns = generator_annihilators(&p.pruned()?, &cfg.limits)?;
    let profile = profile_from_annihilators(&anns, &cfg.limits)?;
    let dim = oracle_from(&anns, cfg)?;
    Ok(ProfileCheck { profile, dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HuntMode {
    /// 1 to 3 random generators.
    General,
    /// One generator containing a pure power of the last variable.
    PrincipalWithPurePower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HuntParams {
    pub ring: CoeffRing,
    pub n: usize,
    pub max_deg: u32,
    pub count: usize,
    pub seed: u64,
    pub mode: HuntMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HuntResult {
    Checked(ProfileCheck),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntOutcome {
    pub index: usize,
    pub ideal: Ideal,
    pub result: HuntResult,
}

impl HuntOutcome {
    pub fn is_mismatch(&self) -> bool {
        matches!(&self.result, HuntResult::Checked(c) if !c.matches())
    }
}

/// The random ideal for instance `index`; depends only on `(seed, index)`.
pub fn hunt_ideal(params: &HuntParams, index: usize) -> Ideal {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let (ring, n) = (params.ring, params.n);
    match params.mode {
        HuntMode::General => catalog::random_ideal(&mut rng, ring, n, params.max_deg, 3, 3),
        HuntMode::PrincipalWithPurePower => {
            let f = catalog::random_poly_with_pure_power(&mut rng, ring, n, params.max_deg, 3);
            Ideal::new(ring, n, alloc::vec![f]).unwrap_or_else(|_| Ideal::zero(ring, n))
        }
    }
}

pub fn hunt_instance(params: &HuntParams, index: usize, cfg: &Config) -> HuntOutcome {
    let ideal = hunt_ideal(params, index);
    let p = ModulePresentation::cyclic(&ideal);
    let result = match check_profile_matches_dim(&p, cfg) {
        Ok(c) => HuntResult::Checked(c),
        Err(Error::ZeroModule) => HuntResult::Skipped("zero module".into()),
        Err(e) => HuntResult::Skipped(format!("{e}")),
    };
    HuntOutcome { index, ideal, result }
}

/// Runs the profile check on `count` seeded random cyclic modules.
pub fn hunt(params: &HuntParams, cfg: &Config) -> Result<Vec<HuntOutcome>> {
    if params.n == 0 || params.n > 4 {
        return Err(Error::InvalidArgument(format!("hunt supports 1..=4 variables, got {}", params.n)));
    }
    Ok((0..params.count).map(|i| hunt_instance(params, i, cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpres::Torsion;
    use crate::poly::parse_poly;

    fn cyclic_in(ring: CoeffRing, gens: &[&str], n: usize) -> ModulePresentation {
        let gens = gens.iter().map(|g| parse_poly(g, ring, n).unwrap()).collect();
        ModulePresentation::cyclic(&Ideal::new(ring, n, gens).unwrap())
    }

    fn cyclic(gens: &[&str], n: usize) -> ModulePresentation {
        cyclic_in(CoeffRing::Rationals, gens, n)
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn oracle_examples() {
        let free = ModulePresentation::free(CoeffRing::Rationals, 3, 1);
        assert_eq!(dim_oracle(&free, &cfg()).unwrap(), Dim::Finite(3));
        assert_eq!(dim_oracle(&cyclic(&["x1", "x2", "x3"], 3), &cfg()).unwrap(), Dim::Finite(0));
        assert_eq!(dim_oracle(&cyclic(&["x1*x3", "x2*x3"], 3), &cfg()).unwrap(), Dim::Finite(2));
        assert_eq!(dim_oracle(&cyclic(&["1"], 2), &cfg()).unwrap(), Dim::MinusInfinity);
    }

    #[test]
    fn descent_examples() {
        let r = dim_descent(&cyclic(&["x1*x2 + 1"], 2), &cfg()).unwrap();
        assert_eq!(r.dim_descent, Dim::Finite(1));
        assert_eq!(r.steps.len(), 1);

        let r = dim_descent(&ModulePresentation::free(CoeffRing::Rationals, 2, 1), &cfg()).unwrap();
        assert_eq!(r.dim_descent, Dim::Finite(2));
        assert!(r.chain.is_empty());

        let r = dim_descent(&cyclic(&["x1", "x2"], 2), &cfg()).unwrap();
        assert_eq!(r.dim_descent, Dim::Finite(0));
        assert_eq!(r.steps.len(), 2);
        let w: Vec<String> = r.witnesses().map(|w| format!("{w}")).collect();
        assert_eq!(w, ["x2", "x1"]);

        let r = dim_descent(&cyclic(&["1"], 2), &cfg()).unwrap();
        assert_eq!(r.dim_descent, Dim::MinusInfinity);
        assert!(r.profile_after.is_none());
    }

    #[test]
    fn profile_after_chain() {
        let r = dim_descent(&cyclic(&["x1"], 2), &cfg()).unwrap();
        assert_eq!(r.dim_descent, Dim::Finite(1));
        let after = r.profile_after.unwrap();
        assert_eq!(after.threshold(), 2);
        assert_eq!(r.profile_before.unwrap().flags(), &[Torsion::NonTorsion, Torsion::Torsion, Torsion::Torsion]);
    }

    #[test]
    fn kdc_examples() {
        let one = FreeElem::from_poly(parse_poly("1", CoeffRing::Rationals, 2).unwrap());
        let rep = check_kdc(&cyclic(&["x1"], 2), 1, core::slice::from_ref(&one), &cfg()).unwrap();
        assert_eq!((rep.rows[0].restricted[0], rep.rows[0].full), (Dim::Finite(0), Dim::Finite(1)));
        assert!(rep.holds());
        assert!(!rep.strong_holds());

        let rep = check_strong_kdc(&cyclic(&["x2"], 2), 1, &[one], &cfg()).unwrap();
        assert_eq!((rep.rows[0].restricted[0], rep.rows[0].full), (Dim::Finite(1), Dim::Finite(1)));
        assert!(rep.strong_holds());

        let free = ModulePresentation::free(CoeffRing::Rationals, 2, 1);
        let e1 = free.generator(0);
        for m in 0..=2 {
            let rep = check_kdc(&free, m, core::slice::from_ref(&e1), &cfg()).unwrap();
            assert_eq!(rep.rows[0].restricted[0], Dim::Finite(m));
            assert!(rep.holds());
        }
        assert!(check_strong_kdc(&free, 2, &[e1], &cfg()).unwrap().strong_holds());
    }

    #[test]
    fn fg_equality_examples() {
        for (gens, steps) in [(&["x1*x2 + 1"][..], 1), (&["x1", "x2"][..], 2), (&["x2"][..], 1)] {
            let p = cyclic(gens, 2);
            let r = dim_descent(&p, &cfg()).unwrap();
            assert_eq!(r.steps.len(), steps);
            for s in &r.steps {
                assert!(check_fg_dim_equality(&p, &s.presentation, &cfg()).unwrap());
                assert!(check_torsion_dimension_drop(&s.presentation, &cfg()).unwrap().passes());
            }
        }
        let p = cyclic(&["x1"], 1);
        let d = check_torsion_dimension_drop(&p, &cfg()).unwrap();
        assert_eq!((d.dim, d.torsion), (Dim::Finite(0), true));
        assert!(d.passes());
    }

    #[test]
    fn profile_checks() {
        let f5 = CoeffRing::prime_field(5).unwrap();
        let c = check_profile_matches_dim(&cyclic_in(f5, &["x1"], 2), &cfg()).unwrap();
        assert_eq!((c.m_profile(), c.dim), (Dim::Finite(0), Dim::Finite(1)));
        assert!(!c.matches());
        assert!(check_profile_matches_dim(&cyclic(&["x1*x2 - 1"], 2), &cfg()).unwrap().matches());
        let free = ModulePresentation::free(CoeffRing::Rationals, 2, 1);
        assert!(check_profile_matches_dim(&free, &cfg()).unwrap().matches());
        assert_eq!(check_profile_matches_dim(&cyclic(&["1"], 2), &cfg()), Err(Error::ZeroModule));
    }

    #[test]
    fn hunt_is_deterministic() {
        let params = HuntParams {
            ring: CoeffRing::prime_field(5).unwrap(),
            n: 2,
            max_deg: 2,
            count: 6,
            seed: 7,
            mode: HuntMode::General,
        };
        let a = hunt(&params, &cfg()).unwrap();
        let b = hunt(&params, &cfg()).unwrap();
        assert_eq!(a, b);
        assert!(hunt(&HuntParams { count: 0, ..params }, &cfg()).unwrap().is_empty());
    }
}
