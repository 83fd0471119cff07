//! Dévissage of `Π`-bitorsors along a split extension `1 → Γ → Π → π → 1`.
//!
//! A bitorsor is of type `π` when `Γ` fixes every point, and of type `Γ` when
//! it receives a morphism from a bitorsor whose left group is a `Π`-quotient
//! of `Γ`. [`decompose`] writes every `(∗, G)`-bitorsor with constant `G` as
//! `Y ∧ Z` with `Y` of type `Γ` and `Z` of type `π`.

use std::fmt;

use thiserror::Error;

use crate::bitorsor::{
    compose, isom_bitorsor, pushforward_factor, pushforward_into, sub_bitorsor, wedge_morphisms,
    Bitorsor, BitorsorError, BitorsorMorphism,
};
use crate::equivariant::{connected_component, from_theta, EquivariantError, ThetaBitorsor};
use crate::group::{
    all_subgroups, enumerate_homs, image, kernel, quotient, sections_of, FiniteGroup, GroupError,
    GroupHom, SemidirectProduct, Subgroup,
};
use crate::rclass::Factorization;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Y,
    Z,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Y => "Y",
            Factor::Z => "Z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevissageError {
    #[error("not a split extension: {0}")]
    NotSplit(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("decomposition failed at step `{step}`: {detail}")]
    StepFailed { step: &'static str, detail: String },
    #[error("oracle refused factor {0}")]
    OracleRefused(Factor),
    #[error(transparent)]
    Bitorsor(#[from] BitorsorError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn step<T, E: fmt::Display>(name: &'static str, r: Result<T, E>) -> Result<T, DevissageError> {
    r.map_err(|e| DevissageError::StepFailed {
        step: name,
        detail: e.to_string(),
    })
}

fn ensure(name: &'static str, ok: bool, detail: &str) -> Result<(), DevissageError> {
    if ok {
        Ok(())
    } else {
        Err(DevissageError::StepFailed {
            step: name,
            detail: detail.into(),
        })
    }
}

/// `1 → Γ → Π →ᵖ π → 1` with a section `s` of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension {
    pi_big: FiniteGroup,
    gamma: Subgroup,
    pi_small: FiniteGroup,
    p: GroupHom,
    s: GroupHom,
}

impl SplitExtension {
    pub fn new(gamma: Subgroup, p: GroupHom, s: GroupHom) -> Result<Self, DevissageError> {
        let pi_big = p.src().clone();
        let pi_small = p.dst().clone();
        let bad = |m: &str| Err(DevissageError::NotSplit(m.into()));
        if gamma.parent() != &pi_big {
            return bad("Γ is not a subgroup of the source of p");
        }
        if s.src() != &pi_small || s.dst() != &pi_big {
            return bad("s must go from π to Π");
        }
        if !p.is_surjective() {
            return bad("p is not surjective");
        }
        if kernel(&p) != gamma {
            return bad("ker p ≠ Γ");
        }
        if pi_small.elements().any(|x| p.apply(s.apply(x)) != x) {
            return bad("p ∘ s ≠ id");
        }
        Ok(SplitExtension {
            pi_big,
            gamma,
            pi_small,
            p,
            s,
        })
    }

    /// `N ⋊ Q` with `Γ = N` and the coordinate section.
    pub fn from_semidirect(sd: &SemidirectProduct) -> Result<Self, DevissageError> {
        Self::new(
            image(&sd.inclusion),
            sd.projection.clone(),
            sd.section.clone(),
        )
    }

    /// The same extension with another section of `p`.
    pub fn with_section(&self, s: GroupHom) -> Result<Self, DevissageError> {
        Self::new(self.gamma.clone(), self.p.clone(), s)
    }

    /// Every section of `p`, in enumeration order.
    pub fn sections(&self) -> Vec<GroupHom> {
        sections_of(&self.p).expect("p is surjective")
    }

    pub fn pi_big(&self) -> &FiniteGroup {
        &self.pi_big
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    pub fn pi_small(&self) -> &FiniteGroup {
        &self.pi_small
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn s(&self) -> &GroupHom {
        &self.s
    }

    /// `Γ` as a group in its own right, with its inclusion into `Π`.
    pub fn gamma_group(&self) -> (FiniteGroup, GroupHom) {
        self.gamma.to_group()
    }

    /// `σγσ⁻¹` in the indexing of [`gamma_group`](Self::gamma_group).
    fn conj_gamma(&self, sigma: usize, gamma_pos: usize) -> usize {
        let pi = &self.pi_big;
        let g = self.gamma.members()[gamma_pos];
        let c = pi.mul(pi.mul(sigma, g), pi.inv(sigma));
        self.gamma.position(c).expect("Γ is normal")
    }
}

/// Evidence that `P` is of type `Γ`: an injective morphism `sub → P` whose
/// source has left group `H′`, together with a `Π`-equivariant surjection
/// `Γ → H′` (`Π` acting on `Γ` by conjugation).
#[derive(Clone, Debug)]
pub struct TypeGammaWitness {
    pub quotient: GroupHom,
    pub sub: Bitorsor,
    pub inclusion: BitorsorMorphism,
}

impl TypeGammaWitness {
    /// Checks the witness against `P` and `E` from scratch.
    pub fn check(&self, p: &Bitorsor, e: &SplitExtension) -> Result<(), String> {
        let (gamma, _) = e.gamma_group();
        let rho = &self.quotient;
        if rho.src() != &gamma || rho.dst() != self.sub.left() {
            return Err("quotient map does not go from Γ to the witness left group".into());
        }
        GroupHom::new(gamma.clone(), rho.dst().clone(), rho.map().to_vec())
            .map_err(|e| e.to_string())?;
        if !rho.is_surjective() {
            return Err("Γ does not surject onto the witness left group".into());
        }
        if self.sub.pi() != e.pi_big() {
            return Err("witness is over a different Π".into());
        }
        for sigma in e.pi_big().elements() {
            for g in gamma.elements() {
                if rho.apply(e.conj_gamma(sigma, g)) != self.sub.pi_on_left(sigma, rho.apply(g)) {
                    return Err(format!(
                        "quotient map is not Π-equivariant at (σ={sigma}, γ={g})"
                    ));
                }
            }
        }
        let incl = &self.inclusion;
        if incl.src() != &self.sub || incl.dst() != p {
            return Err("witness morphism does not go from the witness to the bitorsor".into());
        }
        incl.check_exhaustive().map_err(|e| e.to_string())?;
        if !incl.is_injective() {
            return Err("witness morphism is not injective".into());
        }
        Ok(())
    }
}

fn same_pi(p: &Bitorsor, e: &SplitExtension) -> Result<(), DevissageError> {
    if p.pi() != e.pi_big() {
        return Err(DevissageError::SignatureMismatch(
            "bitorsor is over a different Π".into(),
        ));
    }
    Ok(())
}

/// Whether `Γ` fixes every point.
pub fn is_type_pi(p: &Bitorsor, e: &SplitExtension) -> Result<bool, DevissageError> {
    same_pi(p, e)?;
    Ok(e.gamma
        .members()
        .iter()
        .all(|&g| p.points().all(|x| p.act_pi(g, x) == x)))
}

/// Searches `Π`-stable `H′ ⊆ G′` (smallest first), `Π`-equivariant
/// surjections `Γ → H′`, and `Π`-stable orbits `H′·x`. The witness found is
/// injective.
pub fn is_type_gamma(
    p: &Bitorsor,
    e: &SplitExtension,
) -> Result<Option<TypeGammaWitness>, DevissageError> {
    same_pi(p, e)?;
    let left_pi = p.left_pi_group();
    let (gamma, _) = e.gamma_group();
    let mut subs: Vec<Subgroup> = all_subgroups(p.left())
        .into_iter()
        .filter(|h| {
            h.order() <= gamma.order() && gamma.order() % h.order() == 0 && left_pi.is_stable(h)
        })
        .collect();
    subs.sort_by_key(Subgroup::order);
    for h in subs {
        let (hg, _) = h.to_group();
        let equivariant = |rho: &GroupHom| {
            e.pi_big().generators().iter().all(|&sigma| {
                gamma.elements().all(|g| {
                    let lhs = h.members()[rho.apply(e.conj_gamma(sigma, g))];
                    lhs == p.pi_on_left(sigma, h.members()[rho.apply(g)])
                })
            })
        };
        let Some(rho) = enumerate_homs(&gamma, &hg)
            .into_iter()
            .find(|r| r.is_surjective() && equivariant(r))
        else {
            continue;
        };
        let mut seen = vec![false; p.size()];
        for x in p.points() {
            if seen[x] {
                continue;
            }
            let orbit: Vec<usize> = h.members().iter().map(|&g| p.act_left(g, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            let stable = p
                .pi()
                .generators()
                .iter()
                .all(|&s| orbit.iter().all(|&y| orbit.contains(&p.act_pi(s, y))));
            if stable {
                let (sub, inclusion) = sub_bitorsor(p, &h, x)?;
                let quotient =
                    GroupHom::new(gamma.clone(), sub.left().clone(), rho.map().to_vec())?;
                return Ok(Some(TypeGammaWitness {
                    quotient,
                    sub,
                    inclusion,
                }));
            }
        }
    }
    Ok(None)
}

/// Intermediate data of a decomposition.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// `H′ = θ(Γ)` inside the left group of the connected object.
    pub h_prime: Subgroup,
    /// `q: G′ → G′/H′`.
    pub q: GroupHom,
    /// The lift `π → G′` of `θ̄`.
    pub s_low: GroupHom,
    /// `θ̃ = s_low ∘ p`.
    pub theta_tilde: GroupHom,
    pub gamma_witness: TypeGammaWitness,
    /// For disconnected input: the connected object through point 0 and its
    /// inclusion.
    pub component: Option<(ThetaBitorsor, BitorsorMorphism)>,
}

/// `X ≅ Y ∧ Z` with `Y` of type `Γ` and `Z` of type `π`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub y: Bitorsor,
    pub z: Bitorsor,
    /// `Y ∧ Z → X`.
    pub witness_iso: BitorsorMorphism,
    pub certificate: Certificate,
}

pub fn decompose(t: &ThetaBitorsor, e: &SplitExtension) -> Result<Decomposition, DevissageError> {
    decompose_with_lifts(t, e, |_, _, _| Ok(None))
}

/// Like [`decompose`], but asks `lift(θ, q, θ̄)` for a homomorphism
/// `π → G′` with `q ∘ lift = θ̄` before falling back to `θ ∘ s`.
pub fn decompose_with_lifts<F>(
    t: &ThetaBitorsor,
    e: &SplitExtension,
    lift: F,
) -> Result<Decomposition, DevissageError>
where
    F: Fn(&GroupHom, &GroupHom, &GroupHom) -> Result<Option<GroupHom>, DevissageError>,
{
    if t.pi() != e.pi_big() {
        return Err(DevissageError::SignatureMismatch(
            "θ is defined on a different Π".into(),
        ));
    }
    if t.theta.is_surjective() {
        return decompose_connected(t, e, &lift);
    }
    let x = from_theta(t);
    let (component, inclusion) = connected_component(t, 0)?;
    let inner = decompose_connected(&component, e, &lift)?;
    let to_x = step("component inclusion", inner.witness_iso.then(&inclusion))?;

    // Push Z along the right inclusion and Y along the induced middle map;
    // the wedge of the pushforwards is X.
    let (z, into_z) = step(
        "push Z",
        pushforward_into(&inner.z, inclusion.phi_right(), &x.right_pi_group()),
    )?;
    let (y, into_y) = step(
        "push Y",
        pushforward_into(&inner.y, into_z.phi_left(), &z.left_pi_group()),
    )?;
    let both = step("wedge of pushforwards", wedge_morphisms(&into_y, &into_z))?;
    let witness_iso = step("factor through Y ∧ Z", pushforward_factor(&both, &to_x))?;
    ensure(
        "factor through Y ∧ Z",
        witness_iso.is_isomorphism(),
        "Y ∧ Z → X is not bijective",
    )?;

    let w = &inner.certificate.gamma_witness;
    let gamma_witness = TypeGammaWitness {
        quotient: w.quotient.clone(),
        sub: w.sub.clone(),
        inclusion: step("push witness", w.inclusion.then(&into_y))?,
    };
    ensure(
        "push witness",
        gamma_witness.inclusion.is_injective(),
        "witness is no longer injective",
    )?;
    Ok(Decomposition {
        y,
        z,
        witness_iso,
        certificate: Certificate {
            gamma_witness,
            component: Some((component, inclusion)),
            ..inner.certificate
        },
    })
}

fn decompose_connected<F>(
    t: &ThetaBitorsor,
    e: &SplitExtension,
    lift: &F,
) -> Result<Decomposition, DevissageError>
where
    F: Fn(&GroupHom, &GroupHom, &GroupHom) -> Result<Option<GroupHom>, DevissageError>,
{
    let theta = &t.theta;
    let g_left = theta.dst();
    let h_prime = step("H′ = θ(Γ)", e.gamma.image_under(theta))?;
    ensure("H′ = θ(Γ)", h_prime.is_normal(), "θ(Γ) is not normal")?;
    let (g_bar, q) = step("q: G′ → G′/H′", quotient(g_left, &h_prime))?;

    // θ̄ is well defined on π because Γ maps into ker q.
    let mut theta_bar = vec![usize::MAX; e.pi_small.order()];
    for sigma in e.pi_big.elements() {
        theta_bar[e.p.apply(sigma)] = q.apply(theta.apply(sigma));
    }
    let theta_bar = step("θ̄", GroupHom::new(e.pi_small.clone(), g_bar, theta_bar))?;
    let s_low = match lift(theta, &q, &theta_bar)? {
        Some(l) => l,
        None => step("s_low = θ ∘ s", e.s.then(theta))?,
    };
    ensure(
        "q ∘ s_low = θ̄",
        s_low.src() == &e.pi_small
            && s_low.dst() == g_left
            && step("q ∘ s_low", s_low.then(&q))? == theta_bar,
        "the lift does not cover θ̄",
    )?;
    let theta_tilde = step("θ̃ = s_low ∘ p", e.p.then(&s_low))?;
    ensure(
        "Γ ⊆ ker θ̃",
        e.gamma
            .members()
            .iter()
            .all(|&g| theta_tilde.apply(g) == g_left.identity()),
        "Γ is not in the kernel of θ̃",
    )?;

    let x = from_theta(t);
    let z = from_theta(&step(
        "Z",
        ThetaBitorsor::new(t.bitorsor.clone(), theta_tilde.clone()),
    )?);
    // Y = Isom_G(Z, X); point 0 is the identity of the common underlying set.
    let y = step("Y = Isom(Z, X)", isom_bitorsor(&z, &x))?;
    let (sub, inclusion) = step("W → Y", sub_bitorsor(&y, &h_prime, 0))?;
    let (gamma, gamma_incl) = e.gamma_group();
    let rho_map = gamma
        .elements()
        .map(|g| {
            h_prime
                .position(theta.apply(gamma_incl.apply(g)))
                .expect("θ(Γ) = H′")
        })
        .collect();
    let quotient_map = step("Γ → H′", GroupHom::new(gamma, sub.left().clone(), rho_map))?;
    let gamma_witness = TypeGammaWitness {
        quotient: quotient_map,
        sub,
        inclusion,
    };
    step("W → Y", gamma_witness.check(&y, e))?;

    // [f, z] ↦ f(z), which is the identity on indices.
    let yz = step("Y ∧ Z", compose(&y, &z))?;
    let witness_iso = step(
        "evaluation Y ∧ Z → X",
        BitorsorMorphism::from_basepoint(&yz, &x, 0, GroupHom::identity(x.right())),
    )?;
    ensure(
        "evaluation Y ∧ Z → X",
        witness_iso.is_isomorphism(),
        "not bijective",
    )?;
    Ok(Decomposition {
        y,
        z,
        witness_iso,
        certificate: Certificate {
            h_prime,
            q,
            s_low,
            theta_tilde,
            gamma_witness,
            component: None,
        },
    })
}

/// Outcome of [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Re-checks a decomposition without trusting any of its parts.
pub fn verify_decomposition(t: &ThetaBitorsor, d: &Decomposition, e: &SplitExtension) -> Verdict {
    verify_parts(
        t,
        &d.y,
        &d.z,
        &d.witness_iso,
        &d.certificate.gamma_witness,
        e,
    )
}

/// [`verify_decomposition`] on the parts a certificate carries; the remaining
/// certificate fields are informational.
pub fn verify_parts(
    t: &ThetaBitorsor,
    y: &Bitorsor,
    z: &Bitorsor,
    witness_iso: &BitorsorMorphism,
    gamma_witness: &TypeGammaWitness,
    e: &SplitExtension,
) -> Verdict {
    match verify_inner(t, y, z, witness_iso, gamma_witness, e) {
        Ok(()) => Verdict::Valid,
        Err(m) => Verdict::Invalid(m),
    }
}

fn verify_inner(
    t: &ThetaBitorsor,
    y: &Bitorsor,
    z: &Bitorsor,
    iso: &BitorsorMorphism,
    gamma_witness: &TypeGammaWitness,
    e: &SplitExtension,
) -> Result<(), String> {
    if t.pi() != e.pi_big() || y.pi() != e.pi_big() || z.pi() != e.pi_big() {
        return Err("Π does not match the extension".into());
    }
    if !is_type_pi(z, e).map_err(|e| e.to_string())? {
        return Err("Z is not of type π: Γ moves a point".into());
    }
    gamma_witness
        .check(y, e)
        .map_err(|m| format!("Y is not of type Γ: {m}"))?;
    let x = from_theta(t);
    let wedge = compose(y, z).map_err(|e| format!("Y ∧ Z: {e}"))?;
    if iso.src() != &wedge || iso.dst() != &x {
        return Err("witness isomorphism does not go from Y ∧ Z to X".into());
    }
    iso.check_exhaustive()
        .map_err(|e| format!("witness isomorphism: {e}"))?;
    if !iso.is_isomorphism() {
        return Err("witness morphism is not an isomorphism".into());
    }
    Ok(())
}

/// The bitorsor-level membership argument: `Z` is accepted by `pi_oracle`,
/// the type-`Γ` witness of `Y` by `gamma_oracle`, so `X ≅ Y ∧ Z` lies in the
/// composition closure.
#[derive(Clone, Debug)]
pub struct Membership {
    pub decomposition: Decomposition,
    pub factorization: Factorization,
}

pub fn th_ppal_membership<P, G>(
    t: &ThetaBitorsor,
    e: &SplitExtension,
    pi_oracle: P,
    gamma_oracle: G,
) -> Result<Membership, DevissageError>
where
    P: Fn(&Bitorsor) -> bool,
    G: Fn(&Bitorsor) -> bool,
{
    let d = decompose(t, e)?;
    if !pi_oracle(&d.z) {
        return Err(DevissageError::OracleRefused(Factor::Z));
    }
    if !gamma_oracle(&d.certificate.gamma_witness.sub) {
        return Err(DevissageError::OracleRefused(Factor::Y));
    }
    let factorization = Factorization::new(vec![d.y.clone(), d.z.clone()], d.witness_iso.clone())
        .map_err(|e| DevissageError::StepFailed {
        step: "factorization",
        detail: e.to_string(),
    })?;
    Ok(Membership {
        decomposition: d,
        factorization,
    })
}
