//! Taxonomy of (delta-)conjugacy classes of the extended affine Weyl group:
//! classification, minimal lengths, canonical representatives, and the
//! Newton/Kottwitz invariants.

use crate::error::HeckeError;
use crate::group::{
    apply_delta, invert, kappa, length, multiply, tau_power, wa_decomposition, CoweightVector,
    ExtAffineElt, FiniteWeylElt, FINITE_ELTS,
};
use num_rational::Ratio;
use std::fmt;

pub type Rat = Ratio<i64>;

/// Which conjugation problem is being solved: ordinary conjugacy inside the
/// affine Weyl group, ordinary conjugacy on the `W_a tau` coset, or twisted
/// (delta-)conjugacy on the whole extended group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Split,
    SplitTau,
    Twisted,
}

impl Mode {
    pub fn twisted(&self) -> bool {
        matches!(self, Mode::Twisted)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Split => "split",
            Mode::SplitTau => "split-tau",
            Mode::Twisted => "twisted",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Some(match s {
            "split" => Mode::Split,
            "split-tau" | "splittau" | "tau" => Mode::SplitTau,
            "twisted" => Mode::Twisted,
            _ => return None,
        })
    }

    /// Mode-appropriate conjugate `g a delta(g)^{-1}`.
    pub fn conjugate(&self, g: &ExtAffineElt, a: &ExtAffineElt) -> ExtAffineElt {
        multiply(g, &multiply(a, &invert(&apply_delta(g, self.twisted()))))
    }
}

/// Identifier of a (delta-)conjugacy class in one of the three modes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ConjClassId {
    // Conjugacy classes inside the affine Weyl group.
    Id,
    O1,
    O2,
    OLambda(i64, i64),
    C(i64),
    Cp(i64),
    // Conjugacy classes on the `W_a tau` coset.
    OIdTau,
    OLambdaTau(i64, i64),
    OiTau(i64),
    // Twisted (delta-)conjugacy classes.
    O0d,
    O1d,
    O1pd,
    O3d,
    O2md(i64),
}

use ConjClassId::*;

impl ConjClassId {
    pub fn mode(&self) -> Mode {
        match self {
            Id | O1 | O2 | OLambda(..) | C(_) | Cp(_) => Mode::Split,
            OIdTau | OLambdaTau(..) | OiTau(_) => Mode::SplitTau,
            O0d | O1d | O1pd | O3d | O2md(_) => Mode::Twisted,
        }
    }

    /// Mirror image under the diagram flip (split and coset tags only; the
    /// twisted classes are flip-stable).
    pub fn flip(&self) -> ConjClassId {
        match *self {
            OLambda(m, n) => OLambda(n, m),
            C(i) => Cp(i),
            Cp(i) => C(i),
            other => other,
        }
    }

    pub fn parse(s: &str) -> Result<ConjClassId, HeckeError> {
        let err = || HeckeError::Parse {
            position: 0,
            message: format!("unknown class id `{s}`"),
        };
        let bracket = |s: &str, prefix: &str| -> Option<Vec<i64>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')?;
            inner.split(',').map(|x| x.trim().parse().ok()).collect()
        };
        Ok(match s {
            "Id" => Id,
            "O1" => O1,
            "O2" => O2,
            "O_idtau" => OIdTau,
            "O0d" => O0d,
            "O1d" => O1d,
            "O1pd" => O1pd,
            "O3d" => O3d,
            _ => {
                if let Some(v) = bracket(s, "O_lamtau") {
                    if v.len() == 2 {
                        return Ok(OLambdaTau(v[0], v[1]));
                    }
                }
                if let Some(v) = bracket(s, "O_lam") {
                    if v.len() == 2 {
                        return Ok(OLambda(v[0], v[1]));
                    }
                }
                if let Some(v) = bracket(s, "O_tau") {
                    if v.len() == 1 {
                        return Ok(OiTau(v[0]));
                    }
                }
                if let Some(v) = bracket(s, "O2md") {
                    if v.len() == 1 {
                        return Ok(O2md(v[0]));
                    }
                }
                if let Some(v) = bracket(s, "Cp") {
                    if v.len() == 1 {
                        return Ok(Cp(v[0]));
                    }
                }
                if let Some(v) = bracket(s, "C") {
                    if v.len() == 1 {
                        return Ok(C(v[0]));
                    }
                }
                return Err(err());
            }
        })
    }
}

impl fmt::Display for ConjClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id => write!(f, "Id"),
            O1 => write!(f, "O1"),
            O2 => write!(f, "O2"),
            OLambda(m, n) => write!(f, "O_lam[{m},{n}]"),
            C(i) => write!(f, "C[{i}]"),
            Cp(i) => write!(f, "Cp[{i}]"),
            OIdTau => write!(f, "O_idtau"),
            OLambdaTau(m, n) => write!(f, "O_lamtau[{m},{n}]"),
            OiTau(i) => write!(f, "O_tau[{i}]"),
            O0d => write!(f, "O0d"),
            O1d => write!(f, "O1d"),
            O1pd => write!(f, "O1pd"),
            O3d => write!(f, "O3d"),
            O2md(m) => write!(f, "O2md[{m}]"),
        }
    }
}

/// Kottwitz invariant: `Z/3` in the split modes, trivial in the twisted
/// mode (the delta-coinvariants of `P/Q` vanish there).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KottwitzPoint {
    Mod3(u8),
    Trivial,
}

impl fmt::Display for KottwitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KottwitzPoint::Mod3(k) => write!(f, "{k}"),
            KottwitzPoint::Trivial => write!(f, "triv"),
        }
    }
}

/// The pair (dominant Newton point, Kottwitz point); constant on classes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct InvariantF {
    /// Dominant Newton vector in alpha-coordinates, exact rationals.
    pub newton: (Rat, Rat),
    pub kottwitz: KottwitzPoint,
}

impl InvariantF {
    pub fn newton_is_zero(&self) -> bool {
        self.newton.0 == Rat::from_integer(0) && self.newton.1 == Rat::from_integer(0)
    }

    /// `<newton, 2 rho>` as an exact rational.
    pub fn newton_pairing_2rho(&self) -> Rat {
        (self.newton.0 + self.newton.1) * Rat::from_integer(2)
    }
}

fn mode_check(a: &ExtAffineElt, mode: Mode) -> Result<(), HeckeError> {
    let k = kappa(a);
    let ok = match mode {
        Mode::Split => k == 0,
        Mode::SplitTau => k == 1,
        Mode::Twisted => true,
    };
    if ok {
        Ok(())
    } else {
        Err(HeckeError::ModeMismatch {
            message: format!(
                "element {a} has Omega-grading {k}, incompatible with mode {}",
                mode.name()
            ),
        })
    }
}

/// Dominant representative of the finite Weyl orbit of a coweight.
pub fn dominant_rep(lambda: CoweightVector) -> CoweightVector {
    for w in FINITE_ELTS {
        let v = w.apply(lambda);
        if v.is_dominant() {
            return v;
        }
    }
    unreachable!("every Weyl orbit meets the dominant cone")
}

fn dominant_rep_rat(p: Rat, q: Rat) -> (Rat, Rat) {
    // Same six linear maps as the integer action.
    let cands = [
        (p, q),
        (-p, p + q),
        (p + q, -q),
        (-p - q, p),
        (q, -p - q),
        (-q, -p),
    ];
    let zero = Rat::from_integer(0);
    for (a, b) in cands {
        if a >= zero && b >= zero {
            return (a, b);
        }
    }
    unreachable!("every Weyl orbit meets the dominant cone")
}

/// Valid parameter range for `OLambdaTau`: dominant, nonzero, and not on
/// the ray excluded for the coset classes.
fn lamtau_param_valid(m: i64, n: i64) -> bool {
    (1 <= m && m <= n && n <= 2 * m) || (1 <= n && n < m && m < 2 * n)
}

/// Orbit of the parameter of a `t^lambda s2 s1 tau` element under coset
/// conjugation; exactly one member lies in the valid range.
fn lamtau_param_orbit(m: i64, n: i64) -> [(i64, i64); 6] {
    [
        (m, n),
        (1 - n, m + 1 - n),
        (n - m, 1 - m),
        (n - m, n),
        (1 - n, 1 - m),
        (m, m + 1 - n),
    ]
}

/// The unique class containing `a`, by the explicit membership predicates.
pub fn classify(a: &ExtAffineElt, mode: Mode) -> Result<ConjClassId, HeckeError> {
    mode_check(a, mode)?;
    match mode {
        Mode::Split => {
            let (m, n) = a
                .trans
                .alpha_coords()
                .expect("split elements translate by the coroot lattice");
            Ok(split_classify(m, n, a.fin))
        }
        Mode::SplitTau => {
            let (m, n, w, _) = wa_decomposition(a);
            Ok(coset_classify(m, n, w))
        }
        Mode::Twisted => {
            let k = kappa(a) as i64;
            let normalized = multiply(&tau_power(k), &multiply(a, &tau_power(k)));
            debug_assert_eq!(kappa(&normalized), 0);
            let (m, n) = normalized.trans.alpha_coords().unwrap();
            Ok(twisted_classify(m, n, normalized.fin))
        }
    }
}

fn split_classify(m: i64, n: i64, w: FiniteWeylElt) -> ConjClassId {
    match w {
        FiniteWeylElt::E => {
            if m == 0 && n == 0 {
                Id
            } else {
                let dom = dominant_rep(CoweightVector::from_alpha(m, n));
                let (dm, dn) = dom.alpha_coords().unwrap();
                OLambda(dm, dn)
            }
        }
        FiniteWeylElt::S12 | FiniteWeylElt::S21 => O2,
        FiniteWeylElt::S1 => match n {
            0 => O1,
            n if n > 0 => C(n),
            n => Cp(-n),
        },
        FiniteWeylElt::S2 => match m {
            0 => O1,
            m if m < 0 => C(-m),
            m => Cp(m),
        },
        FiniteWeylElt::S121 => match m - n {
            0 => O1,
            d if d > 0 => C(d),
            d => Cp(-d),
        },
    }
}

fn coset_classify(m: i64, n: i64, w: FiniteWeylElt) -> ConjClassId {
    match w {
        FiniteWeylElt::E | FiniteWeylElt::S12 => OIdTau,
        FiniteWeylElt::S121 => OiTau(n),
        FiniteWeylElt::S2 => OiTau(m - n + 1),
        FiniteWeylElt::S1 => OiTau(1 - m),
        FiniteWeylElt::S21 => {
            let mut hit = None;
            for (pm, pn) in lamtau_param_orbit(m, n) {
                if lamtau_param_valid(pm, pn) {
                    debug_assert!(
                        hit.is_none() || hit == Some((pm, pn)),
                        "ambiguous coset translation class at ({m},{n})"
                    );
                    hit = Some((pm, pn));
                }
            }
            let (pm, pn) =
                hit.expect("every coset translation parameter normalizes into the valid range");
            OLambdaTau(pm, pn)
        }
    }
}

fn twisted_classify(m: i64, n: i64, w: FiniteWeylElt) -> ConjClassId {
    match w {
        FiniteWeylElt::E => {
            if m + n == 0 {
                O0d
            } else {
                O2md((m + n).abs())
            }
        }
        FiniteWeylElt::S1 | FiniteWeylElt::S2 => O1d,
        FiniteWeylElt::S121 => {
            if m % 2 == 0 && n % 2 == 0 {
                O3d
            } else {
                O1pd
            }
        }
        FiniteWeylElt::S21 => {
            let eps = n.rem_euclid(2);
            let k = (n - eps) / 2;
            let d = k - m;
            twisted_rotation_class(d, eps)
        }
        FiniteWeylElt::S12 => {
            let eps = m.rem_euclid(2);
            let k = (m - eps) / 2;
            let d = k - n;
            twisted_rotation_class(d, eps)
        }
    }
}

fn twisted_rotation_class(d: i64, eps: i64) -> ConjClassId {
    if d == 0 && eps == 0 {
        O0d
    } else if d > 0 || (d == 0 && eps == 1) {
        O2md(2 * d + eps)
    } else {
        O2md(-2 * d - eps)
    }
}

/// Canonical minimal-length representative of a class.
pub fn canonical_rep(c: &ConjClassId) -> ExtAffineElt {
    match *c {
        Id => ExtAffineElt::IDENTITY,
        O1 => ExtAffineElt::finite(FiniteWeylElt::S1),
        O2 => ExtAffineElt::finite(FiniteWeylElt::S12),
        OLambda(m, n) => ExtAffineElt::from_alpha(m, n, FiniteWeylElt::E),
        C(i) => ExtAffineElt::from_alpha(i / 2 + 1, i, FiniteWeylElt::S1),
        Cp(i) => ExtAffineElt::from_alpha(i, i / 2 + 1, FiniteWeylElt::S2),
        OIdTau => crate::group::TAU,
        OLambdaTau(m, n) => multiply(
            &ExtAffineElt::from_alpha(m, n, FiniteWeylElt::S21),
            &crate::group::TAU,
        ),
        OiTau(i) => multiply(
            &ExtAffineElt::from_alpha(i.div_euclid(2) + 1, i, FiniteWeylElt::S121),
            &crate::group::TAU,
        ),
        O0d => ExtAffineElt::IDENTITY,
        O1d => ExtAffineElt::finite(FiniteWeylElt::S1),
        // The unique length-1 member: the affine reflection t^theta s_theta.
        O1pd => ExtAffineElt::new(CoweightVector::new(1, 1), FiniteWeylElt::S121),
        O3d => ExtAffineElt::finite(FiniteWeylElt::S121),
        O2md(m) => o2md_rep(m),
    }
}

/// Lexicographically least length-`2m` member of the twisted class.
fn o2md_rep(m: i64) -> ExtAffineElt {
    let bound = 2 * m + 1;
    for p in -bound..=bound {
        for q in -bound..=bound {
            for w in FINITE_ELTS {
                let x = ExtAffineElt::new(CoweightVector::new(p, q), w);
                if length(&x) == (2 * m) as u64
                    && classify(&x, Mode::Twisted).ok() == Some(O2md(m))
                {
                    return x;
                }
            }
        }
    }
    unreachable!("twisted class O2md({m}) has a length-2m member")
}

/// Minimal length over the class.
pub fn min_length(c: &ConjClassId) -> u64 {
    match *c {
        Id => 0,
        O1 => 1,
        O2 => 2,
        OLambda(m, n) => 2 * (m + n) as u64,
        C(i) | Cp(i) => {
            if i % 2 == 1 {
                3 * i as u64
            } else {
                3 * i as u64 + 1
            }
        }
        OIdTau => 0,
        OLambdaTau(..) | OiTau(_) => length(&canonical_rep(c)),
        O0d => 0,
        O1d | O1pd => 1,
        O3d => 3,
        O2md(m) => 2 * m as u64,
    }
}

/// Newton point of an element: dominant representative of `lambda / n`
/// where `a delta(a) ... delta^{n-1}(a) = t^lambda` for the first valid `n`.
pub fn newton_point(a: &ExtAffineElt, mode: Mode) -> (Rat, Rat) {
    let twisted = mode.twisted();
    let mut prod = *a;
    for n in 1..=12u32 {
        let delta_order_ok = !twisted || n % 2 == 0;
        if delta_order_ok && prod.fin == FiniteWeylElt::E {
            let nn = Rat::from_integer(n as i64);
            let (p, q) = (
                Rat::from_integer(prod.trans.p) / nn,
                Rat::from_integer(prod.trans.q) / nn,
            );
            let (dp, dq) = dominant_rep_rat(p, q);
            // alpha-coordinates of the dominant vector
            let three = Rat::from_integer(3);
            return (
                (Rat::from_integer(2) * dp + dq) / three,
                (dp + Rat::from_integer(2) * dq) / three,
            );
        }
        let mut next_factor = *a;
        for _ in 0..n {
            next_factor = apply_delta(&next_factor, twisted);
        }
        prod = multiply(&prod, &next_factor);
    }
    unreachable!("the Newton iteration stabilizes within 12 steps")
}

/// Kottwitz invariant of an element in the given mode.
pub fn kottwitz(a: &ExtAffineElt, mode: Mode) -> KottwitzPoint {
    match mode {
        Mode::Split | Mode::SplitTau => KottwitzPoint::Mod3(kappa(a)),
        Mode::Twisted => KottwitzPoint::Trivial,
    }
}

/// Invariant of a class, computed on its canonical representative.
pub fn invariant_of_class(c: &ConjClassId) -> InvariantF {
    let rep = canonical_rep(c);
    let mode = c.mode();
    InvariantF {
        newton: newton_point(&rep, mode),
        kottwitz: kottwitz(&rep, mode),
    }
}

/// A class is straight iff its minimal length equals the Newton pairing;
/// straight classes enumerate the sigma-conjugacy classes of the group.
pub fn is_straight_class(c: &ConjClassId) -> bool {
    let inv = invariant_of_class(c);
    inv.newton_pairing_2rho() == Rat::from_integer(min_length(c) as i64)
}

/// All classes of the mode with minimal length at most the bound, sorted by
/// (minimal length, tag order).
pub fn enumerate_classes(mode: Mode, max_min_length: u64) -> Vec<ConjClassId> {
    let bound = max_min_length as i64;
    let mut out: Vec<ConjClassId> = Vec::new();
    match mode {
        Mode::Split => {
            out.push(Id);
            out.push(O1);
            out.push(O2);
            for m in 0..=bound {
                for n in 0..=bound {
                    if (m, n) != (0, 0)
                        && 2 * m >= n
                        && 2 * n >= m
                        && 2 * (m + n) <= bound
                    {
                        out.push(OLambda(m, n));
                    }
                }
            }
            for i in 1..=bound {
                if min_length(&C(i)) <= max_min_length {
                    out.push(C(i));
                    out.push(Cp(i));
                }
            }
        }
        Mode::SplitTau => {
            out.push(OIdTau);
            for m in 0..=bound + 2 {
                for n in 0..=bound + 2 {
                    if lamtau_param_valid(m, n) && min_length(&OLambdaTau(m, n)) <= max_min_length
                    {
                        out.push(OLambdaTau(m, n));
                    }
                }
            }
            for i in -(bound + 2)..=(bound + 2) {
                if min_length(&OiTau(i)) <= max_min_length {
                    out.push(OiTau(i));
                }
            }
        }
        Mode::Twisted => {
            out.push(O0d);
            out.push(O1d);
            out.push(O1pd);
            out.push(O3d);
            for m in 1..=bound / 2 {
                out.push(O2md(m));
            }
        }
    }
    out.retain(|c| min_length(c) <= max_min_length);
    out.sort_by_key(|c| (min_length(c), *c));
    out
}

/// Enumerate all elements of the mode's carrier set with length at most the
/// bound (test and sweep helper).
pub fn enumerate_elements(mode: Mode, max_length: u64) -> Vec<ExtAffineElt> {
    let b = max_length as i64 + 1;
    let mut out = Vec::new();
    for p in -b..=b {
        for q in -b..=b {
            if (p + q).abs() > b {
                continue;
            }
            for w in FINITE_ELTS {
                let x = ExtAffineElt::new(CoweightVector::new(p, q), w);
                let k = kappa(&x);
                let carrier_ok = match mode {
                    Mode::Split => k == 0,
                    Mode::SplitTau => k == 1,
                    Mode::Twisted => true,
                };
                if carrier_ok && length(&x) <= max_length {
                    out.push(x);
                }
            }
        }
    }
    out.sort_by_key(|x| (length(x), *x));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{pairing_2rho, Generator, GENERATORS, TAU};
    use std::collections::HashSet;

    #[test]
    fn classify_examples() {
        let s1s2 = ExtAffineElt::finite(FiniteWeylElt::S12);
        assert_eq!(classify(&s1s2, Mode::Split).unwrap(), O2);
        let t = ExtAffineElt::from_alpha(1, -1, FiniteWeylElt::E);
        assert_eq!(classify(&t, Mode::Split).unwrap(), OLambda(1, 2));
        let s121 = ExtAffineElt::finite(FiniteWeylElt::S121);
        assert_eq!(classify(&s121, Mode::Twisted).unwrap(), O3d);
        // Mode precondition.
        assert!(classify(&TAU, Mode::Split).is_err());
        assert!(classify(&s1s2, Mode::SplitTau).is_err());
    }

    #[test]
    fn min_length_examples() {
        assert_eq!(min_length(&O2), 2);
        assert_eq!(min_length(&C(2)), 7);
        assert_eq!(min_length(&C(1)), 3);
        assert_eq!(min_length(&O2md(3)), 6);
        assert_eq!(min_length(&OLambda(1, 1)), 4);
        assert_eq!(min_length(&OiTau(1)), 1);
        assert_eq!(min_length(&OiTau(0)), 3);
        assert_eq!(min_length(&OiTau(-1)), 5);
        assert_eq!(min_length(&OLambdaTau(1, 1)), 2);
    }

    #[test]
    fn canonical_reps_have_min_length_and_classify_home() {
        let mut classes = Vec::new();
        classes.extend(enumerate_classes(Mode::Split, 16));
        classes.extend(enumerate_classes(Mode::SplitTau, 16));
        classes.extend(enumerate_classes(Mode::Twisted, 16));
        for c in classes {
            let rep = canonical_rep(&c);
            assert_eq!(length(&rep), min_length(&c), "rep length for {c}");
            assert_eq!(classify(&rep, c.mode()).unwrap(), c, "rep class for {c}");
        }
    }

    #[test]
    fn newton_examples() {
        let one = Rat::from_integer(1);
        let t = ExtAffineElt::from_alpha(1, 1, FiniteWeylElt::E);
        assert_eq!(newton_point(&t, Mode::Split), (one, one));
        let s1 = ExtAffineElt::finite(FiniteWeylElt::S1);
        assert_eq!(
            newton_point(&s1, Mode::Split),
            (Rat::from_integer(0), Rat::from_integer(0))
        );
        assert_eq!(
            newton_point(&TAU, Mode::SplitTau),
            (Rat::from_integer(0), Rat::from_integer(0))
        );
        // Twisted: the 2m-family has Newton point (m/2)(a1 + a2).
        for m in 1..=4 {
            let inv = invariant_of_class(&O2md(m));
            let half_m = Rat::new(m, 2);
            assert_eq!(inv.newton, (half_m, half_m));
            assert_eq!(inv.kottwitz, KottwitzPoint::Trivial);
            assert_eq!(inv.newton_pairing_2rho(), Rat::from_integer(2 * m));
        }
    }

    #[test]
    fn invariant_examples() {
        let inv = invariant_of_class(&O1);
        assert!(inv.newton_is_zero());
        assert_eq!(inv.kottwitz, KottwitzPoint::Mod3(0));
        let inv = invariant_of_class(&OLambda(2, 1));
        assert_eq!(inv.newton, (Rat::from_integer(2), Rat::from_integer(1)));
        assert_eq!(kottwitz(&TAU, Mode::SplitTau), KottwitzPoint::Mod3(1));
        assert_eq!(
            kottwitz(&ExtAffineElt::finite(FiniteWeylElt::S1), Mode::Twisted),
            KottwitzPoint::Trivial
        );
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_classes(Mode::Split, 1), vec![Id, O1]);
        assert_eq!(
            enumerate_classes(Mode::Twisted, 3),
            vec![O0d, O1d, O1pd, O2md(1), O3d]
        );
        assert_eq!(enumerate_classes(Mode::SplitTau, 0), vec![OIdTau]);
    }

    #[test]
    fn straight_classes() {
        assert!(is_straight_class(&Id));
        assert!(is_straight_class(&OLambda(1, 1)));
        assert!(is_straight_class(&OLambda(1, 2)));
        assert!(!is_straight_class(&O1));
        assert!(!is_straight_class(&O2));
        assert!(is_straight_class(&C(1)));
        assert!(!is_straight_class(&C(2)));
        assert!(is_straight_class(&C(3)));
        assert!(is_straight_class(&OIdTau));
        assert!(is_straight_class(&OLambdaTau(1, 1)));
        assert!(is_straight_class(&OiTau(1)));
        assert!(!is_straight_class(&OiTau(2)));
        assert!(is_straight_class(&OiTau(-1)));
        assert!(!is_straight_class(&OiTau(0)));
        assert!(is_straight_class(&O0d));
        assert!(!is_straight_class(&O1d));
        assert!(!is_straight_class(&O1pd));
        assert!(!is_straight_class(&O3d));
        assert!(is_straight_class(&O2md(2)));
    }

    /// Conjugation stability, invariant constancy, and minimal lengths on
    /// every element up to length 14 in each mode.
    #[test]
    fn partition_and_invariance_sweep() {
        for mode in [Mode::Split, Mode::SplitTau, Mode::Twisted] {
            let mut seen_min: std::collections::HashMap<ConjClassId, u64> = Default::default();
            for a in enumerate_elements(mode, 14) {
                let c = classify(&a, mode).unwrap();
                assert!(min_length(&c) <= length(&a), "min length bound at {a}");
                let e = seen_min.entry(c).or_insert(u64::MAX);
                *e = (*e).min(length(&a));
                // Conjugating by any generator (and by tau) fixes the class.
                for g in GENERATORS {
                    let conj = mode.conjugate(&g.elt(), &a);
                    assert_eq!(classify(&conj, mode).unwrap(), c, "conj stability at {a}");
                }
                let conj = mode.conjugate(&TAU, &a);
                assert_eq!(classify(&conj, mode).unwrap(), c);
                // Constancy of the invariant pair.
                let inv = invariant_of_class(&c);
                assert_eq!(newton_point(&a, mode), inv.newton, "newton constancy at {a}");
                assert_eq!(kottwitz(&a, mode), inv.kottwitz);
            }
            for (c, observed) in seen_min {
                if min_length(&c) <= 14 {
                    assert_eq!(observed, min_length(&c), "minimal length attained for {c}");
                }
            }
        }
    }

    /// Orbit BFS from each canonical representative stays inside the class.
    #[test]
    fn orbit_closure_matches_membership() {
        for mode in [Mode::Split, Mode::SplitTau, Mode::Twisted] {
            for c in enumerate_classes(mode, 8) {
                let rep = canonical_rep(&c);
                let cap = length(&rep) + 4;
                let mut seen: HashSet<ExtAffineElt> = HashSet::new();
                let mut frontier = vec![rep];
                seen.insert(rep);
                while let Some(x) = frontier.pop() {
                    let gens: Vec<ExtAffineElt> = GENERATORS
                        .iter()
                        .map(Generator::elt)
                        .chain([TAU])
                        .collect();
                    for g in gens {
                        let y = mode.conjugate(&g, &x);
                        if length(&y) <= cap && seen.insert(y) {
                            assert_eq!(classify(&y, mode).unwrap(), c, "orbit escape from {c}");
                            frontier.push(y);
                        }
                    }
                }
                assert!(seen.len() > 1 || c == Id || c == O0d);
            }
        }
    }

    #[test]
    fn olambda_min_is_pairing() {
        for m in 0..=4 {
            for n in 0..=4 {
                if (m, n) != (0, 0) && 2 * m >= n && 2 * n >= m {
                    let lam = CoweightVector::from_alpha(m, n);
                    assert_eq!(min_length(&OLambda(m, n)), pairing_2rho(&lam) as u64);
                }
            }
        }
    }

    #[test]
    fn class_id_text_round_trip() {
        let ids = [
            Id,
            O1,
            O2,
            OLambda(3, 2),
            C(4),
            Cp(1),
            OIdTau,
            OLambdaTau(2, 3),
            OiTau(-2),
            O0d,
            O1d,
            O1pd,
            O3d,
            O2md(5),
        ];
        for c in ids {
            assert_eq!(ConjClassId::parse(&c.to_string()).unwrap(), c);
        }
        assert!(ConjClassId::parse("O_lam[1]").is_err());
        assert!(ConjClassId::parse("bogus").is_err());
    }
}
