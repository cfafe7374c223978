//! Applications layer: sigma-conjugacy classes, nonemptiness and dimension
//! of affine Deligne-Lusztig varieties via the dimension-equals-degree
//! identity, rational-point counts for superbasic classes, the defect-based
//! dimension comparison, group transfer, and leading coefficients.

use crate::conj::{
    invariant_of_class, is_straight_class, min_length, ConjClassId, InvariantF, KottwitzPoint,
    Mode, Rat,
};
use crate::engine::{Engine, OrderPolicy};
use crate::error::HeckeError;
use crate::group::{
    apply_delta, kappa, length, multiply, pairing_2rho, tau_power, CoweightVector, ExtAffineElt,
    FiniteWeylElt,
};
use crate::poly::eval_point_count;
use num_bigint::BigInt;
use num_rational::Ratio;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupContext {
    Pgl3,
    Gl3,
    U3,
    D3x,
}

impl GroupContext {
    pub fn name(&self) -> &'static str {
        match self {
            GroupContext::Pgl3 => "pgl3",
            GroupContext::Gl3 => "gl3",
            GroupContext::U3 => "u3",
            GroupContext::D3x => "d3x",
        }
    }

    pub fn from_name(s: &str) -> Option<GroupContext> {
        Some(match s {
            "pgl3" => GroupContext::Pgl3,
            "gl3" => GroupContext::Gl3,
            "u3" => GroupContext::U3,
            "d3x" => GroupContext::D3x,
            _ => return None,
        })
    }
}

/// A sigma-conjugacy class of one of the four groups, keyed by a straight
/// class. Classes of the second nontrivial coset are stored through their
/// image under the diagram flip (`kappa2` set), which is how all core
/// computations reach them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaClass {
    pub group: GroupContext,
    pub repr: ConjClassId,
    pub kappa2: bool,
    /// Central lift for the general linear group (defaults to the grading).
    pub central: Option<i64>,
    pub invariant: InvariantF,
    pub defect: u64,
}

impl SigmaClass {
    fn build(group: GroupContext, repr: ConjClassId, kappa2: bool, central: Option<i64>) -> Self {
        let core = invariant_of_class(&repr);
        let invariant = if kappa2 {
            InvariantF {
                newton: (core.newton.1, core.newton.0),
                kottwitz: KottwitzPoint::Mod3(2),
            }
        } else {
            core
        };
        let defect = defect_value(group, &repr, core.newton_is_zero());
        SigmaClass {
            group,
            repr,
            kappa2,
            central,
            invariant,
            defect,
        }
    }

    pub fn is_basic(&self) -> bool {
        self.invariant.newton_is_zero()
    }

    /// For the split groups: superbasic means one of the two nontrivial
    /// length-zero classes; the division algebra's basic class transfers to
    /// one of them.
    pub fn is_superbasic(&self) -> bool {
        match self.group {
            GroupContext::Pgl3 | GroupContext::Gl3 => self.repr == ConjClassId::OIdTau,
            GroupContext::D3x => self.is_basic(),
            GroupContext::U3 => false,
        }
    }

    /// `<newton, 2 rho>` of the class.
    pub fn newton_pairing_2rho(&self) -> Rat {
        self.invariant.newton_pairing_2rho()
    }

    /// Invariant seen by the core computation (the flip image for classes
    /// stored through the second coset).
    fn core_invariant(&self) -> InvariantF {
        invariant_of_class(&self.repr)
    }

    pub fn parse(group: GroupContext, text: &str) -> Result<SigmaClass, HeckeError> {
        let (name, central) = match group {
            GroupContext::Gl3 => match text.rsplit_once(':') {
                Some((n, c)) => {
                    let c: i64 = c.parse().map_err(|_| {
                        HeckeError::UnknownSigmaClass(text.to_string())
                    })?;
                    (n, Some(c))
                }
                None => (text, None),
            },
            _ => (text, None),
        };
        let unknown = || HeckeError::UnknownSigmaClass(format!("{name} (group {})", group.name()));
        let class = match group {
            GroupContext::Pgl3 | GroupContext::Gl3 => match name {
                "1" | "id" => SigmaClass::build(group, ConjClassId::Id, false, central),
                "tau" => SigmaClass::build(group, ConjClassId::OIdTau, false, central),
                "tau2" => SigmaClass::build(group, ConjClassId::OIdTau, true, central),
                _ => {
                    let (tag_text, kappa2) = if let Some(inner) = name.strip_prefix("O_lamtau2") {
                        (format!("O_lamtau{inner}"), true)
                    } else if let Some(inner) = name.strip_prefix("O_tau2") {
                        (format!("O_tau{inner}"), true)
                    } else {
                        (name.to_string(), false)
                    };
                    let tag = ConjClassId::parse(&tag_text).map_err(|_| unknown())?;
                    if !is_straight_class(&tag) {
                        return Err(unknown());
                    }
                    match tag.mode() {
                        Mode::Split if !kappa2 => SigmaClass::build(group, tag, false, central),
                        Mode::SplitTau => SigmaClass::build(group, tag, kappa2, central),
                        _ => return Err(unknown()),
                    }
                }
            },
            GroupContext::U3 => match name {
                "1" | "id" | "O0d" => SigmaClass::build(group, ConjClassId::O0d, false, None),
                _ => {
                    let tag = ConjClassId::parse(name).map_err(|_| unknown())?;
                    match tag {
                        ConjClassId::O2md(_) => SigmaClass::build(group, tag, false, None),
                        _ => return Err(unknown()),
                    }
                }
            },
            GroupContext::D3x => match name {
                "1" | "id" => SigmaClass::build(group, ConjClassId::OIdTau, false, None),
                _ => {
                    let tag = ConjClassId::parse(name).map_err(|_| unknown())?;
                    if tag.mode() != Mode::SplitTau || !is_straight_class(&tag) {
                        return Err(unknown());
                    }
                    SigmaClass::build(group, tag, false, None)
                }
            },
        };
        if let Some(c) = class.central {
            let expected = class.kappa_value() as i64;
            if (c - expected).rem_euclid(3) != 0 {
                return Err(HeckeError::UnknownSigmaClass(format!(
                    "central lift {c} is incompatible with grading {expected}"
                )));
            }
        }
        Ok(class)
    }

    /// Grading of the class (0 for the twisted group, where it is trivial).
    pub fn kappa_value(&self) -> u8 {
        match self.invariant.kottwitz {
            KottwitzPoint::Mod3(k) => k,
            KottwitzPoint::Trivial => 0,
        }
    }

    fn central_value(&self) -> i64 {
        self.central.unwrap_or(self.kappa_value() as i64)
    }
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.group, &self.repr, self.kappa2) {
            (GroupContext::U3, ConjClassId::O0d, _) => "1".to_string(),
            (GroupContext::D3x, ConjClassId::OIdTau, _) => "1".to_string(),
            (_, ConjClassId::Id, _) => "1".to_string(),
            (_, ConjClassId::OIdTau, false) => "tau".to_string(),
            (_, ConjClassId::OIdTau, true) => "tau2".to_string(),
            (_, tag, false) => tag.to_string(),
            (_, tag, true) => tag
                .to_string()
                .replacen("O_lamtau", "O_lamtau2", 1)
                .replacen("O_tau[", "O_tau2[", 1),
        };
        match self.central {
            Some(c) if c != self.kappa_value() as i64 => write!(f, "{base}:{c}"),
            _ => f.write_str(&base),
        }
    }
}

/// Defect table per group and class family, from the centralizer ranks.
///
/// The split groups: the identity-coset basic class has the full split
/// centralizer (defect 0); the two length-zero classes centralize a
/// division algebra of semisimple rank 0 (defect 2); translation-type
/// classes have integral slopes and a split-torus centralizer (defect 0);
/// the reflection and string classes have a half-integral slope pair, so
/// the centralizer picks up a quaternionic factor of rank one less
/// (defect 1). The quasi-split unitary group has rank 1 with rank-1
/// centralizers throughout (defect 0). The division algebra's values are
/// taken through the coset transfer, where only defect differences enter.
fn defect_value(group: GroupContext, repr: &ConjClassId, basic: bool) -> u64 {
    match group {
        GroupContext::Pgl3 | GroupContext::Gl3 => match repr {
            ConjClassId::OIdTau => 2,
            ConjClassId::C(_) | ConjClassId::Cp(_) | ConjClassId::OiTau(_) => 1,
            _ => 0,
        },
        GroupContext::U3 => 0,
        GroupContext::D3x => match repr {
            _ if basic => 2,
            ConjClassId::OiTau(_) => 1,
            _ => 0,
        },
    }
}

/// Outcome of a nonemptiness/dimension query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimResult {
    pub nonempty: bool,
    pub dim: Option<i64>,
    pub witness: Option<ConjClassId>,
    pub degree: Option<i64>,
    /// The witness tag refers to the flip image of the query (second-coset
    /// classes of the split groups).
    pub flipped: bool,
}

impl DimResult {
    pub fn empty() -> Self {
        DimResult {
            nonempty: false,
            dim: None,
            witness: None,
            degree: None,
            flipped: false,
        }
    }

    pub fn witness_label(&self) -> Option<String> {
        self.witness.map(|w| {
            if self.flipped {
                w.to_string()
                    .replacen("O_lamtau", "O_lamtau2", 1)
                    .replacen("O_tau[", "O_tau2[", 1)
                    .replacen("O_idtau", "O_idtau2", 1)
            } else {
                w.to_string()
            }
        })
    }

    pub fn to_json(
        &self,
        group: GroupContext,
        element: &ExtAffineElt,
        b: &SigmaClass,
    ) -> serde_json::Value {
        serde_json::json!({
            "group": group.name(),
            "element": element.to_string(),
            "b": b.to_string(),
            "nonempty": self.nonempty,
            "dim": self.dim,
            "witness_class": self.witness_label(),
            "degree": self.degree,
        })
    }
}

fn flip(a: &ExtAffineElt) -> ExtAffineElt {
    apply_delta(a, true)
}

/// Shared engines for the application queries; one memo table per mode.
pub struct AdlvCtx {
    split: Engine,
    coset: Engine,
    twisted: Engine,
}

impl Default for AdlvCtx {
    fn default() -> Self {
        Self::new()
    }
}

impl AdlvCtx {
    pub fn new() -> Self {
        AdlvCtx {
            split: Engine::new(Mode::Split),
            coset: Engine::new(Mode::SplitTau),
            twisted: Engine::new(Mode::Twisted),
        }
    }

    pub fn with_order(order: OrderPolicy) -> Self {
        AdlvCtx {
            split: Engine::with_order(Mode::Split, order),
            coset: Engine::with_order(Mode::SplitTau, order),
            twisted: Engine::with_order(Mode::Twisted, order),
        }
    }

    pub fn engine_mut(&mut self, mode: Mode) -> &mut Engine {
        match mode {
            Mode::Split => &mut self.split,
            Mode::SplitTau => &mut self.coset,
            Mode::Twisted => &mut self.twisted,
        }
    }

    /// Nonemptiness and dimension of `X_w(b)`; `central` is the central
    /// lift of the element for the general linear group.
    pub fn adlv(
        &mut self,
        group: GroupContext,
        w: &ExtAffineElt,
        central: Option<i64>,
        b: &SigmaClass,
    ) -> Result<DimResult, HeckeError> {
        if b.group != group {
            return Err(HeckeError::GroupMismatch {
                class: b.to_string(),
                group: group.name().to_string(),
            });
        }
        match group {
            GroupContext::U3 => self.dim_degree(Mode::Twisted, w, b, false),
            GroupContext::Pgl3 => self.adlv_split_quotient(w, b),
            GroupContext::Gl3 => {
                let wc = central.unwrap_or(kappa(w) as i64);
                if (wc - kappa(w) as i64).rem_euclid(3) != 0 {
                    return Err(HeckeError::ModeMismatch {
                        message: format!(
                            "central lift {wc} is incompatible with the grading of {w}"
                        ),
                    });
                }
                if wc != b.central_value() {
                    return Ok(DimResult::empty());
                }
                self.adlv_split_quotient(w, b)
            }
            GroupContext::D3x => {
                if kappa(w) != 0 {
                    return Err(HeckeError::ModeMismatch {
                        message: format!(
                            "division-algebra queries take elements of the affine Weyl group, got {w}"
                        ),
                    });
                }
                let shifted = multiply(w, &tau_power(1));
                self.dim_degree(Mode::SplitTau, &shifted, b, false)
            }
        }
    }

    fn adlv_split_quotient(
        &mut self,
        w: &ExtAffineElt,
        b: &SigmaClass,
    ) -> Result<DimResult, HeckeError> {
        if kappa(w) != b.kappa_value() {
            return Ok(DimResult::empty());
        }
        match kappa(w) {
            0 => self.dim_degree(Mode::Split, w, b, false),
            1 => self.dim_degree(Mode::SplitTau, w, b, false),
            _ => {
                let fw = flip(w);
                self.dim_degree(Mode::SplitTau, &fw, b, true)
            }
        }
    }

    /// `dim X_w(b) = max over matching classes of
    /// (len(w) + len(O) + deg f)/2 - <newton_b, 2 rho>`.
    fn dim_degree(
        &mut self,
        mode: Mode,
        w: &ExtAffineElt,
        b: &SigmaClass,
        flipped: bool,
    ) -> Result<DimResult, HeckeError> {
        let target = b.core_invariant();
        let norm = b.newton_pairing_2rho();
        let f = self.engine_mut(mode).class_polynomial(w)?;
        let lw = length(w) as i64;
        let mut best: Option<(i64, ConjClassId, i64)> = None;
        for (class, poly) in &f.entries {
            if invariant_of_class(class) != target {
                continue;
            }
            let deg = poly.degree().expect("stored entries are nonzero") as i64;
            let score = lw + min_length(class) as i64 + deg;
            debug_assert_eq!(score % 2, 0);
            if best.is_none_or(|(s, ..)| score > s) {
                best = Some((score, *class, deg));
            }
        }
        Ok(match best {
            None => DimResult::empty(),
            Some((score, witness, deg)) => {
                let dim = Rat::from_integer(score / 2) - norm;
                if !dim.is_integer() || dim < Rat::from_integer(0) {
                    return Err(HeckeError::Internal(format!(
                        "dimension {dim} at {w} is not a non-negative integer"
                    )));
                }
                DimResult {
                    nonempty: true,
                    dim: Some(dim.to_integer()),
                    witness: Some(witness),
                    degree: Some(deg),
                    flipped,
                }
            }
        })
    }

    /// Exact number of rational points of `X_w(b)` over the field with `q`
    /// elements, for superbasic `b`.
    pub fn rational_points(
        &mut self,
        group: GroupContext,
        w: &ExtAffineElt,
        b: &SigmaClass,
        q: u64,
    ) -> Result<BigInt, HeckeError> {
        if b.group != group {
            return Err(HeckeError::GroupMismatch {
                class: b.to_string(),
                group: group.name().to_string(),
            });
        }
        if !b.is_superbasic() {
            return Err(HeckeError::NotSuperbasic(b.to_string()));
        }
        match group {
            GroupContext::D3x => {
                let shifted = multiply(w, &tau_power(1));
                let tau_class = SigmaClass::parse(GroupContext::Pgl3, "tau")?;
                self.rational_points(GroupContext::Pgl3, &shifted, &tau_class, q)
            }
            GroupContext::Pgl3 | GroupContext::Gl3 => {
                if kappa(w) != b.kappa_value() {
                    return Ok(BigInt::from(0));
                }
                if group == GroupContext::Gl3 && b.central_value() != kappa(w) as i64 {
                    return Ok(BigInt::from(0));
                }
                let (elt, _) = if b.kappa2 { (flip(w), true) } else { (*w, false) };
                let f = self.engine_mut(Mode::SplitTau).class_polynomial(&elt)?;
                let entry = f.get(&ConjClassId::OIdTau);
                if entry.is_zero() {
                    return Ok(BigInt::from(0));
                }
                let qp = eval_point_count(&entry, length(w), 3)?;
                Ok(qp.eval(&BigInt::from(q)))
            }
            GroupContext::U3 => Err(HeckeError::NotSuperbasic(b.to_string())),
        }
    }

    /// The defect-based dimension comparison against the basic class with
    /// the same grading, valid above the length threshold.
    pub fn ghkr_check(
        &mut self,
        group: GroupContext,
        w: &ExtAffineElt,
        b: &SigmaClass,
        threshold_offset: i64,
    ) -> Result<bool, HeckeError> {
        if b.is_basic() {
            return Err(HeckeError::BasicClass(b.to_string()));
        }
        let norm = b.newton_pairing_2rho();
        debug_assert!(norm.is_integer());
        let norm = norm.to_integer();
        // The window must clear the basic-side nonemptiness onset
        // 2<newton, 2 rho> + 3, which binds for elements of b's own class.
        let threshold = (norm + threshold_offset).max(2 * norm + 3);
        if (length(w) as i64) < threshold {
            return Err(HeckeError::BelowThreshold {
                len: length(w),
                threshold,
            });
        }
        let basic = self.basic_partner(group, b)?;
        let with_b = self.adlv(group, w, None, b)?;
        let with_basic = self.adlv(group, w, None, &basic)?;
        if with_b.nonempty != with_basic.nonempty {
            return Ok(false);
        }
        if !with_b.nonempty {
            return Ok(true);
        }
        // dim X(b) = dim X(b') - <nu_b, rho> + (def(b') - def(b))/2
        let lhs = Rat::from_integer(with_b.dim.unwrap());
        let rhs = Rat::from_integer(with_basic.dim.unwrap()) - Rat::new(norm, 2)
            + Rat::new(basic.defect as i64 - b.defect as i64, 2);
        Ok(lhs == rhs)
    }

    fn basic_partner(
        &self,
        group: GroupContext,
        b: &SigmaClass,
    ) -> Result<SigmaClass, HeckeError> {
        let name = match group {
            GroupContext::U3 | GroupContext::D3x => "1".to_string(),
            GroupContext::Pgl3 => match b.kappa_value() {
                0 => "1".to_string(),
                1 => "tau".to_string(),
                _ => "tau2".to_string(),
            },
            GroupContext::Gl3 => {
                let base = match b.kappa_value() {
                    0 => "1",
                    1 => "tau",
                    _ => "tau2",
                };
                format!("{base}:{}", b.central_value())
            }
        };
        SigmaClass::parse(group, &name)
    }

    /// Leading coefficients of the class-polynomial entries selected by the
    /// dimension formula at `w0 t^lambda`, per sigma-class.
    pub fn leading_table(
        &mut self,
        lambda: CoweightVector,
        group: GroupContext,
    ) -> Result<Vec<(SigmaClass, BigInt)>, HeckeError> {
        if group != GroupContext::Pgl3 {
            return Err(HeckeError::GroupMismatch {
                class: "leading-coefficient table".to_string(),
                group: group.name().to_string(),
            });
        }
        if !lambda.is_dominant() {
            return Err(HeckeError::ModeMismatch {
                message: "the coweight must be dominant".to_string(),
            });
        }
        let w = multiply(
            &ExtAffineElt::finite(FiniteWeylElt::S121),
            &ExtAffineElt::translation(lambda),
        );
        let bound = pairing_2rho(&lambda).max(0) as u64;
        let mut out = Vec::new();
        for b in sigma_classes(group, bound) {
            if b.kappa_value() != kappa(&w) {
                continue;
            }
            let r = self.adlv(group, &w, None, &b)?;
            if !r.nonempty {
                continue;
            }
            let witness = r.witness.unwrap();
            let mode = if b.kappa_value() == 0 {
                Mode::Split
            } else {
                Mode::SplitTau
            };
            let elt = if r.flipped { flip(&w) } else { w };
            let f = self.engine_mut(mode).class_polynomial(&elt)?;
            out.push((b, f.get(&witness).leading_coeff()));
        }
        Ok(out)
    }

    /// Dimension inequality between a general double-coset member and the
    /// maximal element `w0 t^lambda`.
    pub fn grassmannian_bound_check(
        &mut self,
        lambda: CoweightVector,
        x: FiniteWeylElt,
        y: FiniteWeylElt,
        b: &SigmaClass,
    ) -> Result<bool, HeckeError> {
        if !lambda.is_dominant() {
            return Err(HeckeError::ModeMismatch {
                message: "the coweight must be dominant".to_string(),
            });
        }
        // y must have no left descent among the simple reflections fixing
        // lambda.
        let stabilizer: Vec<FiniteWeylElt> = [
            (lambda.p == 0, FiniteWeylElt::S1),
            (lambda.q == 0, FiniteWeylElt::S2),
        ]
        .into_iter()
        .filter_map(|(on_wall, s)| on_wall.then_some(s))
        .collect();
        for s in stabilizer {
            if s.compose(y).length() < y.length() {
                return Err(HeckeError::InvalidCosetRep(y.to_string()));
            }
        }
        let w = multiply(
            &ExtAffineElt::finite(x),
            &multiply(&ExtAffineElt::translation(lambda), &ExtAffineElt::finite(y)),
        );
        let top = multiply(
            &ExtAffineElt::finite(FiniteWeylElt::S121),
            &ExtAffineElt::translation(lambda),
        );
        let lhs = self.adlv(GroupContext::Pgl3, &w, None, b)?;
        let rhs = self.adlv(GroupContext::Pgl3, &top, None, b)?;
        Ok(match (lhs.dim, rhs.dim) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(dl), Some(dr)) => dl <= dr - 3 + x.length() as i64,
        })
    }
}

/// All sigma-conjugacy classes of the group with `<newton, 2 rho>` at most
/// the bound, sorted by (pairing, grading, tag).
pub fn sigma_classes(group: GroupContext, newton_bound: u64) -> Vec<SigmaClass> {
    let bound = newton_bound as i64;
    let mut out: Vec<SigmaClass> = Vec::new();
    let central = |_k: u8| None;
    match group {
        GroupContext::Pgl3 | GroupContext::Gl3 => {
            out.push(SigmaClass::build(group, ConjClassId::Id, false, central(0)));
            out.push(SigmaClass::build(group, ConjClassId::OIdTau, false, central(1)));
            out.push(SigmaClass::build(group, ConjClassId::OIdTau, true, central(2)));
            for m in 0..=bound {
                for n in 0..=bound {
                    if (m, n) != (0, 0) && 2 * m >= n && 2 * n >= m && 2 * (m + n) <= bound {
                        out.push(SigmaClass::build(
                            group,
                            ConjClassId::OLambda(m, n),
                            false,
                            central(0),
                        ));
                    }
                }
            }
            for i in (1..=bound / 3).filter(|i| i % 2 == 1) {
                out.push(SigmaClass::build(group, ConjClassId::C(i), false, central(0)));
                out.push(SigmaClass::build(group, ConjClassId::Cp(i), false, central(0)));
            }
            for tag in coset_straight_tags(bound) {
                out.push(SigmaClass::build(group, tag, false, central(1)));
                out.push(SigmaClass::build(group, tag, true, central(2)));
            }
        }
        GroupContext::U3 => {
            out.push(SigmaClass::build(group, ConjClassId::O0d, false, None));
            for m in 1..=bound / 2 {
                out.push(SigmaClass::build(group, ConjClassId::O2md(m), false, None));
            }
        }
        GroupContext::D3x => {
            out.push(SigmaClass::build(group, ConjClassId::OIdTau, false, None));
            for tag in coset_straight_tags(bound) {
                out.push(SigmaClass::build(group, tag, false, None));
            }
        }
    }
    out.retain(|b| b.newton_pairing_2rho() <= Ratio::from_integer(bound));
    out.sort_by(|a, b| {
        (a.newton_pairing_2rho(), a.kappa_value(), a.repr, a.kappa2).cmp(&(
            b.newton_pairing_2rho(),
            b.kappa_value(),
            b.repr,
            b.kappa2,
        ))
    });
    out
}

fn coset_straight_tags(bound: i64) -> Vec<ConjClassId> {
    let mut tags = Vec::new();
    for m in 1..=bound + 2 {
        for n in 1..=bound + 2 {
            let tag = ConjClassId::OLambdaTau(m, n);
            let valid = (m <= n && n <= 2 * m) || (n < m && m < 2 * n);
            if valid && (min_length(&tag) as i64) <= bound {
                tags.push(tag);
            }
        }
    }
    for i in (-bound - 2..=bound + 2).filter(|i| i.rem_euclid(2) == 1) {
        let tag = ConjClassId::OiTau(i);
        if (min_length(&tag) as i64) <= bound {
            tags.push(tag);
        }
    }
    tags.retain(is_straight_class);
    tags
}

/// Classes of the mode whose invariant matches the given one (the fiber of
/// the invariant map restricted to a minimal-length bound).
pub fn invariant_fiber(mode: Mode, target: &InvariantF, max_min_length: u64) -> Vec<ConjClassId> {
    crate::conj::enumerate_classes(mode, max_min_length)
        .into_iter()
        .filter(|c| invariant_of_class(c) == *target)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conj::classify;
    use crate::group::parse_element;

    fn pgl(name: &str) -> SigmaClass {
        SigmaClass::parse(GroupContext::Pgl3, name).unwrap()
    }

    #[test]
    fn adlv_examples() {
        let mut ctx = AdlvCtx::new();
        let s1s2 = parse_element("t[0,0].s12.tau^0").unwrap();
        let r = ctx.adlv(GroupContext::Pgl3, &s1s2, None, &pgl("1")).unwrap();
        assert!(r.nonempty);
        assert_eq!(r.dim, Some(2));
        assert_eq!(r.witness, Some(ConjClassId::O2));

        let s1 = parse_element("t[0,0].s1.tau^0").unwrap();
        let r = ctx.adlv(GroupContext::Pgl3, &s1, None, &pgl("tau")).unwrap();
        assert!(!r.nonempty);

        let a = parse_element("t[1,0].s1.tau^0").unwrap();
        let r = ctx.adlv(GroupContext::Pgl3, &a, None, &pgl("1")).unwrap();
        assert_eq!(r.dim, Some(3));
    }

    #[test]
    fn sigma_class_examples() {
        let basics = sigma_classes(GroupContext::Pgl3, 0);
        let kappas: Vec<u8> = basics.iter().map(|b| b.kappa_value()).collect();
        assert_eq!(kappas, vec![0, 1, 2]);
        assert!(basics.iter().all(|b| b.is_basic()));

        let u3 = sigma_classes(GroupContext::U3, 0);
        assert_eq!(u3.len(), 1);
        assert_eq!(u3[0].repr, ConjClassId::O0d);

        let with_type = sigma_classes(GroupContext::Pgl3, 4);
        assert!(with_type
            .iter()
            .any(|b| b.repr == ConjClassId::OLambda(1, 1)));
        // Round trip through the textual form.
        for b in sigma_classes(GroupContext::Pgl3, 6) {
            let again = SigmaClass::parse(GroupContext::Pgl3, &b.to_string()).unwrap();
            assert_eq!(again, b);
        }
    }

    #[test]
    fn rational_point_examples() {
        let mut ctx = AdlvCtx::new();
        let tau_class = pgl("tau");
        let tau = parse_element("t[0,0].e.tau^1").unwrap();
        assert_eq!(
            ctx.rational_points(GroupContext::Pgl3, &tau, &tau_class, 5)
                .unwrap(),
            BigInt::from(3)
        );
        let s1 = parse_element("t[0,0].s1.tau^0").unwrap();
        assert_eq!(
            ctx.rational_points(GroupContext::Pgl3, &s1, &tau_class, 5)
                .unwrap(),
            BigInt::from(0)
        );
        // A length-5 element of the first coset string class.
        let a = parse_element("t[0,1].s1.tau^1").unwrap();
        assert_eq!(length(&a), 5);
        assert_eq!(classify(&a, Mode::SplitTau).unwrap(), ConjClassId::OiTau(1));
        assert_eq!(
            ctx.rational_points(GroupContext::Pgl3, &a, &tau_class, 4)
                .unwrap(),
            BigInt::from(144)
        );
        // Non-superbasic classes are rejected.
        assert!(matches!(
            ctx.rational_points(GroupContext::Pgl3, &tau, &pgl("1"), 5),
            Err(HeckeError::NotSuperbasic(_))
        ));
        // A shifted central lift empties the general linear count.
        let shifted = SigmaClass::parse(GroupContext::Gl3, "tau:4").unwrap();
        assert_eq!(
            ctx.rational_points(GroupContext::Gl3, &tau, &shifted, 5)
                .unwrap(),
            BigInt::from(0)
        );
        let aligned = SigmaClass::parse(GroupContext::Gl3, "tau").unwrap();
        assert_eq!(
            ctx.rational_points(GroupContext::Gl3, &tau, &aligned, 5)
                .unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn defect_examples() {
        assert_eq!(pgl("1").defect, 0);
        assert_eq!(pgl("tau").defect, 2);
        assert_eq!(pgl("tau2").defect, 2);
        assert_eq!(pgl("O_lam[1,1]").defect, 0);
        assert_eq!(SigmaClass::parse(GroupContext::U3, "1").unwrap().defect, 0);
        assert_eq!(
            SigmaClass::parse(GroupContext::U3, "O2md[1]").unwrap().defect,
            0
        );
    }

    #[test]
    fn ghkr_examples() {
        let mut ctx = AdlvCtx::new();
        // Long element of the length-1 split class against a nonbasic class.
        let w = parse_element("t[5,0].s1.tau^0").unwrap();
        assert_eq!(length(&w), 19);
        let b = pgl("O_lam[2,2]");
        assert!(ctx.ghkr_check(GroupContext::Pgl3, &w, &b, 6).unwrap());
        // Below threshold is a precondition error.
        let short = parse_element("t[0,0].s1.tau^0").unwrap();
        assert!(matches!(
            ctx.ghkr_check(GroupContext::Pgl3, &short, &pgl("O_lam[1,1]"), 6),
            Err(HeckeError::BelowThreshold { .. })
        ));
        // Basic classes are rejected.
        assert!(matches!(
            ctx.ghkr_check(GroupContext::Pgl3, &w, &pgl("1"), 6),
            Err(HeckeError::BasicClass(_))
        ));
        // Twisted case.
        let u3b = SigmaClass::parse(GroupContext::U3, "O2md[1]").unwrap();
        let long = parse_element("t[3,-3].e.tau^0").unwrap();
        assert!(length(&long) >= 10);
        assert!(ctx.ghkr_check(GroupContext::U3, &long, &u3b, 6).unwrap());
    }

    #[test]
    fn transfer_examples() {
        let mut ctx = AdlvCtx::new();
        // Central mismatch empties the general linear query.
        let w = parse_element("t[0,0].s12.tau^0").unwrap();
        let b = SigmaClass::parse(GroupContext::Gl3, "1:3").unwrap();
        let r = ctx.adlv(GroupContext::Gl3, &w, Some(0), &b).unwrap();
        assert!(!r.nonempty);
        let b0 = SigmaClass::parse(GroupContext::Gl3, "1").unwrap();
        let r = ctx.adlv(GroupContext::Gl3, &w, None, &b0).unwrap();
        assert_eq!(r.dim, Some(2));
        // Division algebra basic query forwards through the coset.
        let d1 = SigmaClass::parse(GroupContext::D3x, "1").unwrap();
        let id = ExtAffineElt::IDENTITY;
        let r = ctx.adlv(GroupContext::D3x, &id, None, &d1).unwrap();
        assert!(r.nonempty);
        assert_eq!(r.dim, Some(0));
    }

    #[test]
    fn grassmannian_examples() {
        let mut ctx = AdlvCtx::new();
        let lam = CoweightVector::from_alpha(1, 1);
        let b = pgl("1");
        // x = w0, y = e: equality.
        assert!(ctx
            .grassmannian_bound_check(lam, FiniteWeylElt::S121, FiniteWeylElt::E, &b)
            .unwrap());
        // Mismatched grading is vacuous.
        assert!(ctx
            .grassmannian_bound_check(lam, FiniteWeylElt::E, FiniteWeylElt::E, &pgl("tau"))
            .unwrap());
        // Invalid coset representative: lambda on the alpha1 wall.
        let wall = CoweightVector::from_alpha(1, 2); // p = 0
        assert!(matches!(
            ctx.grassmannian_bound_check(wall, FiniteWeylElt::E, FiniteWeylElt::S1, &b),
            Err(HeckeError::InvalidCosetRep(_))
        ));
    }

    #[test]
    fn kappa2_queries_mirror_kappa1() {
        let mut ctx = AdlvCtx::new();
        for text in ["t[1,1].s1.tau^1", "t[2,1].e.tau^1", "t[1,0].s12.tau^1"] {
            let w = parse_element(text).unwrap();
            let fw = flip(&w);
            assert_eq!(kappa(&fw), 2);
            let r1 = ctx.adlv(GroupContext::Pgl3, &w, None, &pgl("tau")).unwrap();
            let r2 = ctx.adlv(GroupContext::Pgl3, &fw, None, &pgl("tau2")).unwrap();
            assert_eq!(r1.nonempty, r2.nonempty);
            assert_eq!(r1.dim, r2.dim);
        }
    }
}
