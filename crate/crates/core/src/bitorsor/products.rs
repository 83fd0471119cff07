use super::{inverse, sub_bitorsor, Bitorsor, BitorsorError, BitorsorMorphism, PiGroup};
use crate::group::{quotient, GroupHom, Subgroup};

/// `B₁ ∧ B₂ = (G₁, X₁ ×^{G₂} X₂, G₃)`.
///
/// Every class `[x₁, x₂]` has a unique representative `[x₀, rc(x₁)·x₂]`, so the
/// points are indexed by the points of `B₂`.
pub fn compose(b1: &Bitorsor, b2: &Bitorsor) -> Result<Bitorsor, BitorsorError> {
    if b1.right() != b2.left() {
        return Err(BitorsorError::NotComposable {
            detail: format!("{} ≠ {}", b1.right().label(), b2.left().label()),
        });
    }
    if b1.pi() != b2.pi() {
        return Err(BitorsorError::NotComposable {
            detail: "different Π".into(),
        });
    }
    if b1.right_pi_group() != b2.left_pi_group() {
        return Err(BitorsorError::NotComposable {
            detail: "Π acts differently on the middle group".into(),
        });
    }
    let n = b2.size();
    let l = b1.left();
    let left_act = (0..l.order() * n)
        .map(|i| b2.act_left(b1.right_coord(b1.act_left(i / n, 0)), i % n))
        .collect();
    let pi_points = (0..b1.pi().order() * n)
        .map(|i| {
            let s = i / n;
            b2.act_left(b1.right_coord(b1.act_pi(s, 0)), b2.act_pi(s, i % n))
        })
        .collect();
    Bitorsor::with_pi(
        l.clone(),
        b2.right().clone(),
        left_act,
        b2.right_act_table().to_vec(),
        b1.pi().clone(),
        pi_points,
    )
}

/// Point of `B₁ ∧ B₂` represented by `[x₁, x₂]`.
pub fn wedge_point(b1: &Bitorsor, b2: &Bitorsor, x1: usize, x2: usize) -> usize {
    b2.act_left(b1.right_coord(x1), x2)
}

/// `Φ₁ ∧ Φ₂: B₁ ∧ B₂ → C₁ ∧ C₂`, for `Φ₁` and `Φ₂` agreeing on the middle
/// group.
pub fn wedge_morphisms(
    m1: &BitorsorMorphism,
    m2: &BitorsorMorphism,
) -> Result<BitorsorMorphism, BitorsorError> {
    if m1.phi_right() != m2.phi_left() {
        return Err(BitorsorError::NotComposable {
            detail: "morphisms disagree on the middle group".into(),
        });
    }
    let src = compose(m1.src(), m2.src())?;
    let dst = compose(m1.dst(), m2.dst())?;
    let u1x0 = m1.apply(0);
    let point_map = src
        .points()
        .map(|p| wedge_point(m1.dst(), m2.dst(), u1x0, m2.apply(p)))
        .collect();
    BitorsorMorphism::new(
        src,
        dst,
        m1.phi_left().clone(),
        point_map,
        m2.phi_right().clone(),
    )
}

/// `B^φ` for `φ: G → G₂`, where `Π` acts on `G₂` as given by `target`.
///
/// Points are the elements of `G₂`: `[x, g₂] ↦ φ(rc(x))·g₂`. The left group is
/// `G₂` itself acting by left translation. Returns the bitorsor and the
/// canonical `(∗, φ)`-morphism.
pub fn pushforward_into(
    b: &Bitorsor,
    phi: &GroupHom,
    target: &PiGroup,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    if phi.src() != b.right() || phi.dst() != target.group() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "φ must start at the right group and end at the target group".into(),
        });
    }
    if target.pi() != b.pi() || !b.right_pi_group().is_equivariant(phi, target) {
        return Err(BitorsorError::NotEquivariant {
            detail: "φ does not commute with the Π-actions".into(),
        });
    }
    if phi.src() == phi.dst()
        && phi.map().iter().enumerate().all(|(g, &h)| g == h)
        && *target == b.right_pi_group()
    {
        return Ok((b.clone(), BitorsorMorphism::identity(b)));
    }
    let g2 = phi.dst();
    let m = g2.order();
    let table: Vec<usize> = (0..m * m).map(|i| g2.mul(i / m, i % m)).collect();
    let pi_points = (0..b.pi().order() * m)
        .map(|i| {
            let s = i / m;
            g2.mul(
                phi.apply(b.right_coord(b.act_pi(s, 0))),
                target.apply(s, i % m),
            )
        })
        .collect();
    let pushed = Bitorsor::with_pi(
        g2.clone(),
        g2.clone(),
        table.clone(),
        table,
        b.pi().clone(),
        pi_points,
    )?;
    let point_map: Vec<usize> = b.points().map(|x| phi.apply(b.right_coord(x))).collect();
    let left_map = b
        .left()
        .elements()
        .map(|g| point_map[b.act_left(g, 0)])
        .collect();
    let phi_left = GroupHom::new(b.left().clone(), g2.clone(), left_map)?;
    let canonical =
        BitorsorMorphism::new(b.clone(), pushed.clone(), phi_left, point_map, phi.clone())?;
    Ok((pushed, canonical))
}

/// The unique `(∗, id)`-morphism `Θ: B^φ → Y` with `m = Θ ∘ canonical`, for a
/// `(∗, φ)`-morphism `m: B → Y`.
pub fn pushforward_factor(
    canonical: &BitorsorMorphism,
    m: &BitorsorMorphism,
) -> Result<BitorsorMorphism, BitorsorError> {
    if canonical.src() != m.src() || canonical.phi_right() != m.phi_right() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "morphisms must share source and right homomorphism".into(),
        });
    }
    let pushed = canonical.dst();
    let y = m
        .dst()
        .act_right(m.apply(0), pushed.right_between(canonical.apply(0), 0));
    let theta =
        BitorsorMorphism::from_basepoint(pushed, m.dst(), y, GroupHom::identity(pushed.right()))?;
    if canonical.then(&theta)? != *m {
        return Err(BitorsorError::Internal("Θ ∘ canonical ≠ m".into()));
    }
    Ok(theta)
}

/// `B^φ` with `Π` acting trivially on the target.
pub fn pushforward(
    b: &Bitorsor,
    phi: &GroupHom,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    pushforward_into(b, phi, &PiGroup::constant(phi.dst(), b.pi()))
}

/// `^{φ′}B` for `φ′: G′ → G₂′`, built as `((B⁻¹)^{φ′})⁻¹`.
pub fn pushforward_left_into(
    b: &Bitorsor,
    phi: &GroupHom,
    target: &PiGroup,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    let (pushed, m) = pushforward_into(&inverse(b), phi, target)?;
    let result = inverse(&pushed);
    let canonical = BitorsorMorphism::new(
        b.clone(),
        result.clone(),
        m.phi_right().clone(),
        m.point_map().to_vec(),
        m.phi_left().clone(),
    )?;
    Ok((result, canonical))
}

pub fn pushforward_left(
    b: &Bitorsor,
    phi: &GroupHom,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    pushforward_left_into(b, phi, &PiGroup::constant(phi.dst(), b.pi()))
}

/// The normal subgroup `H′ ⊆ G′` with `X/H = H′\X`, i.e. `conj(x)(H)`.
pub fn corresponding_normal_subgroup(
    b: &Bitorsor,
    h: &Subgroup,
) -> Result<Subgroup, BitorsorError> {
    if h.parent() != b.right() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "subgroup is not a subgroup of the right group".into(),
        });
    }
    if !h.is_normal() {
        return Err(BitorsorError::NotNormal);
    }
    let conj_at = |x: usize| -> Vec<usize> {
        let mut m: Vec<usize> = h
            .members()
            .iter()
            .map(|&g| b.left_between(x, b.act_right(x, g)))
            .collect();
        m.sort_unstable();
        m
    };
    let members = conj_at(0);
    for x in b.points().skip(1) {
        if conj_at(x) != members {
            return Err(BitorsorError::Internal(format!(
                "conj(x)(H) depends on the point (x = {x})"
            )));
        }
    }
    Ok(Subgroup::new(b.left(), &members)?)
}

/// `B/H` with its canonical morphism. `H` must be normal and `Π`-stable.
pub fn quotient_bitorsor(
    b: &Bitorsor,
    h: &Subgroup,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    let h_left = corresponding_normal_subgroup(b, h)?;
    let right_pi = b.right_pi_group();
    if !right_pi.is_stable(h) {
        return Err(BitorsorError::NotPiStable);
    }
    let (_, q) = quotient(b.right(), h)?;
    let target = right_pi.push_through(&q)?;
    let (pushed, canonical) = pushforward_into(b, &q, &target)?;
    let kernel: Vec<usize> = b
        .left()
        .elements()
        .filter(|&g| canonical.phi_left().apply(g) == pushed.left().identity())
        .collect();
    if kernel != h_left.members() {
        return Err(BitorsorError::Internal(
            "kernel of the left quotient map is not the corresponding subgroup".into(),
        ));
    }
    Ok((pushed, canonical))
}

/// `(G″, Isom_G(X, Y), G′)` for `B₁ = (G′, X, G)` and `B₂ = (G″, Y, G)`.
///
/// Point `y` is the unique right-equivariant map with `x₀ ↦ y`; `Π` acts by
/// `(σf)(x) = σ f(σ⁻¹x)`.
pub fn isom_bitorsor(b1: &Bitorsor, b2: &Bitorsor) -> Result<Bitorsor, BitorsorError> {
    if b1.right() != b2.right() || b1.pi() != b2.pi() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "Isom needs a common right group and Π".into(),
        });
    }
    if b1.right_pi_group() != b2.right_pi_group() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "Π acts differently on the right groups".into(),
        });
    }
    let n = b2.size();
    let (l2, l1) = (b2.left(), b1.left());
    let left_act = (0..l2.order() * n)
        .map(|i| b2.act_left(i / n, i % n))
        .collect();
    let right_act = (0..n * l1.order())
        .map(|i| {
            let (y, g) = (i / l1.order(), i % l1.order());
            b2.act_right(y, b1.right_coord(b1.act_left(g, 0)))
        })
        .collect();
    let pi = b1.pi();
    let pi_points = (0..pi.order() * n)
        .map(|i| {
            let (s, y) = (i / n, i % n);
            let back = b1.act_pi(pi.inv(s), 0);
            b2.act_right(b2.act_pi(s, y), b2.pi_on_right(s, b1.right_coord(back)))
        })
        .collect();
    Bitorsor::with_pi(
        l2.clone(),
        l1.clone(),
        left_act,
        right_act,
        pi.clone(),
        pi_points,
    )
}

/// The canonical `(id, id)`-isomorphism `Isom_G(X, Y) → Y ∧ X⁻¹`,
/// `f ↦ [f(x₀), x₀]`.
pub fn isom_to_wedge(b1: &Bitorsor, b2: &Bitorsor) -> Result<BitorsorMorphism, BitorsorError> {
    let isom = isom_bitorsor(b1, b2)?;
    let inv1 = inverse(b1);
    let wedge = compose(b2, &inv1)?;
    let point_map = isom
        .points()
        .map(|y| wedge_point(b2, &inv1, y, 0))
        .collect();
    BitorsorMorphism::new(
        isom.clone(),
        wedge,
        GroupHom::identity(isom.left()),
        point_map,
        GroupHom::identity(isom.right()),
    )
}

/// Output of [`factor_through_pushforwards`]: `Φ = Ψ ∘ (Φ₁ ∧ Φ₂)`.
#[derive(Clone, Debug)]
pub struct PushforwardFactorization {
    pub phi2: GroupHom,
    /// `Φ₁: B₁ → B₁^{φ₂}`.
    pub first: BitorsorMorphism,
    /// `Φ₂: B₂ → ^{φ₂}B₂`, realized as `B₂ → B₂^{φ₃}`.
    pub second: BitorsorMorphism,
    /// `Ψ: B₁^{φ₂} ∧ ^{φ₂}B₂ → C`, an isomorphism.
    pub psi: BitorsorMorphism,
}

/// Factors a morphism out of `B₁ ∧ B₂` through the pushforwards along the
/// middle group.
pub fn factor_through_pushforwards(
    b1: &Bitorsor,
    b2: &Bitorsor,
    phi: &BitorsorMorphism,
) -> Result<PushforwardFactorization, BitorsorError> {
    let wedge = compose(b1, b2)?;
    if phi.src() != &wedge {
        return Err(BitorsorError::SignatureMismatch {
            detail: "morphism does not start at B₁ ∧ B₂".into(),
        });
    }
    let c = phi.dst();
    let (_, second) = pushforward_into(b2, phi.phi_right(), &c.right_pi_group())?;
    let phi2 = second.phi_left().clone();
    let (_, first) = pushforward_into(b1, &phi2, &second.dst().left_pi_group())?;
    let both = wedge_morphisms(&first, &second)?;
    let w = both.dst();
    let (w0, c0) = (both.apply(0), phi.apply(0));
    // Ψ is a (∗, id)-morphism with w₀ ↦ Φ(x₀), so Ψ(w) = Φ(x₀)·(w₀⁻¹w).
    let y = c.act_right(c0, w.right_between(w0, 0));
    let psi = BitorsorMorphism::from_basepoint(w, c, y, GroupHom::identity(c.right()))?;
    if psi.apply(w0) != c0 {
        return Err(BitorsorError::Internal(
            "Ψ does not send the base point to Φ(x₀)".into(),
        ));
    }
    let recomposed = both.then(&psi)?;
    if recomposed != *phi {
        return Err(BitorsorError::Internal("Ψ ∘ (Φ₁ ∧ Φ₂) ≠ Φ".into()));
    }
    if !psi.is_isomorphism() {
        return Err(BitorsorError::Internal("Ψ is not an isomorphism".into()));
    }
    Ok(PushforwardFactorization {
        phi2,
        first,
        second,
        psi,
    })
}

/// A sub-bitorsor `(H′, Y, H)` with its `(∗, j)`-inclusion.
#[derive(Clone, Debug)]
pub struct InducedWitness {
    pub sub: Bitorsor,
    pub inclusion: BitorsorMorphism,
}

/// The four conditions of the quotient lemma, each computed on its own:
/// (i) `B/H` has a `Π`-fixed point, (ii) some right coset `xH` is
/// `Π`-stable, (iii) some `H′x` is `Π`-stable, (iv) some `(H′, Y, H)` admits
/// a `(∗, j)`-morphism into `B`.
pub fn induction_conditions(b: &Bitorsor, h: &Subgroup) -> Result<[bool; 4], BitorsorError> {
    let (q, _) = quotient_bitorsor(b, h)?;
    let c1 = !q.fixed_points().is_empty();

    let stable = |set: &[usize]| {
        b.pi().elements().all(|s| {
            set.iter()
                .all(|&x| set.binary_search(&b.act_pi(s, x)).is_ok())
        })
    };
    let c2 = b.points().any(|x| {
        let mut coset: Vec<usize> = h.members().iter().map(|&g| b.act_right(x, g)).collect();
        coset.sort_unstable();
        stable(&coset)
    });

    let h_left = corresponding_normal_subgroup(b, h)?;
    let c3 = b.points().any(|x| {
        let mut orbit: Vec<usize> = h_left.members().iter().map(|&g| b.act_left(g, x)).collect();
        orbit.sort_unstable();
        stable(&orbit)
    });

    let c4 = b.points().any(|y| induced_at(b, h, &h_left, y).is_some());
    Ok([c1, c2, c3, c4])
}

/// Builds `(H′, Y, H)` abstractly on the orbit through `y` and validates the
/// `(∗, j)`-morphism into `B`.
fn induced_at(b: &Bitorsor, h: &Subgroup, h_left: &Subgroup, y: usize) -> Option<InducedWitness> {
    let (sub, inclusion) = sub_bitorsor(b, h_left, y).ok()?;
    let (_, j) = h.to_group();
    if inclusion.phi_right().map() != j.map() {
        return None;
    }
    let inclusion = BitorsorMorphism::new(
        sub.clone(),
        b.clone(),
        inclusion.phi_left().clone(),
        inclusion.point_map().to_vec(),
        j,
    )
    .ok()?;
    Some(InducedWitness { sub, inclusion })
}

/// A witness that `B` is induced from the normal subgroup `H` of its right
/// group, or `None`. The witness passes through the smallest `Π`-fixed point
/// of `B/H`.
pub fn is_induced_from(
    b: &Bitorsor,
    h: &Subgroup,
) -> Result<Option<InducedWitness>, BitorsorError> {
    let (q, canonical) = quotient_bitorsor(b, h)?;
    let Some(&fixed) = q.fixed_points().first() else {
        return Ok(None);
    };
    let y = b
        .points()
        .find(|&x| canonical.apply(x) == fixed)
        .expect("canonical morphism is surjective");
    let h_left = corresponding_normal_subgroup(b, h)?;
    match induced_at(b, h, &h_left, y) {
        Some(w) => Ok(Some(w)),
        None => Err(BitorsorError::Internal(
            "B/H has a fixed point but its preimage is not a sub-bitorsor".into(),
        )),
    }
}

/// Left-handed [`is_induced_from`] for a normal subgroup `H′` of the left
/// group: a sub-bitorsor `(H′, Y, H)` with a `(j, ∗)`-inclusion.
pub fn is_induced_from_left(
    b: &Bitorsor,
    h_left: &Subgroup,
) -> Result<Option<InducedWitness>, BitorsorError> {
    let inv = inverse(b);
    let Some(w) = is_induced_from(&inv, h_left)? else {
        return Ok(None);
    };
    let sub = inverse(&w.sub);
    let inclusion = BitorsorMorphism::new(
        sub.clone(),
        b.clone(),
        w.inclusion.phi_right().clone(),
        w.inclusion.point_map().to_vec(),
        w.inclusion.phi_left().clone(),
    )?;
    Ok(Some(InducedWitness { sub, inclusion }))
}
