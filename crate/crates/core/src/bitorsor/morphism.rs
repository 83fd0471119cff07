use std::fmt;

use super::{trivial_bitorsor, Bitorsor, BitorsorError};
use crate::group::{enumerate_homs, GroupHom, Subgroup};

/// A morphism `Φ = (φ′, u, φ)`: `u(g′·x) = φ′(g′)·u(x)`, `u(x·g) = u(x)·φ(g)`
/// and, over a common `Π`, `u(σx) = σu(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BitorsorMorphism {
    src: Bitorsor,
    dst: Bitorsor,
    phi_left: GroupHom,
    point_map: Vec<usize>,
    phi_right: GroupHom,
}

impl BitorsorMorphism {
    pub fn new(
        src: Bitorsor,
        dst: Bitorsor,
        phi_left: GroupHom,
        point_map: Vec<usize>,
        phi_right: GroupHom,
    ) -> Result<Self, BitorsorError> {
        let bad = |detail: String| Err(BitorsorError::InvalidMorphism { detail });
        if phi_left.src() != src.left() || phi_left.dst() != dst.left() {
            return bad("φ′ does not go between the left groups".into());
        }
        if phi_right.src() != src.right() || phi_right.dst() != dst.right() {
            return bad("φ does not go between the right groups".into());
        }
        if src.pi() != dst.pi() {
            return bad("source and target are over different Π".into());
        }
        if point_map.len() != src.size() || point_map.iter().any(|&y| y >= dst.size()) {
            return bad("point map has the wrong shape".into());
        }
        let u = |x: usize| point_map[x];
        for x in src.points() {
            for &g in src.left().generators() {
                if u(src.act_left(g, x)) != dst.act_left(phi_left.apply(g), u(x)) {
                    return bad(format!("u is not φ′-equivariant at ({g}, {x})"));
                }
            }
            for &g in src.right().generators() {
                if u(src.act_right(x, g)) != dst.act_right(u(x), phi_right.apply(g)) {
                    return bad(format!("u is not φ-equivariant at ({x}, {g})"));
                }
            }
            for &s in src.pi().generators() {
                if u(src.act_pi(s, x)) != dst.act_pi(s, u(x)) {
                    return bad(format!("u does not commute with σ={s} at {x}"));
                }
            }
        }
        Ok(BitorsorMorphism {
            src,
            dst,
            phi_left,
            point_map,
            phi_right,
        })
    }

    /// The identity morphism.
    pub fn identity(b: &Bitorsor) -> Self {
        BitorsorMorphism {
            src: b.clone(),
            dst: b.clone(),
            phi_left: GroupHom::identity(b.left()),
            point_map: b.points().collect(),
            phi_right: GroupHom::identity(b.right()),
        }
    }

    /// The morphism determined by `x₀ ↦ y` and `φ`: `u(x) = y·φ(rc(x))`, with
    /// `φ′` read off from `u`. Fails when the result is not a morphism.
    pub fn from_basepoint(
        src: &Bitorsor,
        dst: &Bitorsor,
        y: usize,
        phi_right: GroupHom,
    ) -> Result<Self, BitorsorError> {
        if phi_right.src() != src.right() || phi_right.dst() != dst.right() || y >= dst.size() {
            return Err(BitorsorError::InvalidMorphism {
                detail: "basepoint data does not match the bitorsors".into(),
            });
        }
        let point_map: Vec<usize> = src
            .points()
            .map(|x| dst.act_right(y, phi_right.apply(src.right_coord(x))))
            .collect();
        let left_map: Vec<usize> = src
            .left()
            .elements()
            .map(|g| dst.left_between(y, point_map[src.act_left(g, 0)]))
            .collect();
        let phi_left =
            GroupHom::new(src.left().clone(), dst.left().clone(), left_map).map_err(|e| {
                BitorsorError::InvalidMorphism {
                    detail: e.to_string(),
                }
            })?;
        Self::new(src.clone(), dst.clone(), phi_left, point_map, phi_right)
    }

    pub fn src(&self) -> &Bitorsor {
        &self.src
    }

    pub fn dst(&self) -> &Bitorsor {
        &self.dst
    }

    pub fn phi_left(&self) -> &GroupHom {
        &self.phi_left
    }

    pub fn phi_right(&self) -> &GroupHom {
        &self.phi_right
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.point_map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BitorsorMorphism) -> Result<BitorsorMorphism, BitorsorError> {
        if self.dst != other.src {
            return Err(BitorsorError::SignatureMismatch {
                detail: "morphisms are not composable".into(),
            });
        }
        let phi_left = self.phi_left.then(&other.phi_left)?;
        let phi_right = self.phi_right.then(&other.phi_right)?;
        let point_map = self.point_map.iter().map(|&x| other.apply(x)).collect();
        Ok(BitorsorMorphism {
            src: self.src.clone(),
            dst: other.dst.clone(),
            phi_left,
            point_map,
            phi_right,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.dst.size()];
        self.point_map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.dst.size()];
        for &y in &self.point_map {
            seen[y] = true;
        }
        !seen.contains(&false)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.src.size() == self.dst.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<BitorsorMorphism, BitorsorError> {
        if !self.is_isomorphism() {
            return Err(BitorsorError::InvalidMorphism {
                detail: "inverse of a non-isomorphism".into(),
            });
        }
        let mut point_map = vec![0; self.dst.size()];
        for (x, &y) in self.point_map.iter().enumerate() {
            point_map[y] = x;
        }
        Ok(BitorsorMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            phi_left: self.phi_left.inverse()?,
            point_map,
            phi_right: self.phi_right.inverse()?,
        })
    }

    /// Assembles a morphism without any checks. Meant for data read back from
    /// certificates; run [`check_exhaustive`](Self::check_exhaustive) before
    /// relying on it.
    pub fn from_parts_unchecked(
        src: Bitorsor,
        dst: Bitorsor,
        phi_left: GroupHom,
        point_map: Vec<usize>,
        phi_right: GroupHom,
    ) -> Self {
        BitorsorMorphism {
            src,
            dst,
            phi_left,
            point_map,
            phi_right,
        }
    }

    /// Re-runs every check, exhaustively over all group elements.
    pub fn check_exhaustive(&self) -> Result<(), BitorsorError> {
        let (s, d) = (&self.src, &self.dst);
        if s.pi() != d.pi() {
            return Err(BitorsorError::InvalidMorphism {
                detail: "source and target are over different Π".into(),
            });
        }
        if self.point_map.len() != s.size() || self.point_map.iter().any(|&y| y >= d.size()) {
            return Err(BitorsorError::InvalidMorphism {
                detail: "point map has the wrong shape".into(),
            });
        }
        GroupHom::new(
            s.left().clone(),
            d.left().clone(),
            self.phi_left.map().to_vec(),
        )?;
        GroupHom::new(
            s.right().clone(),
            d.right().clone(),
            self.phi_right.map().to_vec(),
        )?;
        let bad = |detail: &str| {
            Err(BitorsorError::InvalidMorphism {
                detail: detail.into(),
            })
        };
        for x in s.points() {
            for g in s.left().elements() {
                if self.apply(s.act_left(g, x)) != d.act_left(self.phi_left.apply(g), self.apply(x))
                {
                    return bad("left equivariance");
                }
            }
            for g in s.right().elements() {
                if self.apply(s.act_right(x, g))
                    != d.act_right(self.apply(x), self.phi_right.apply(g))
                {
                    return bad("right equivariance");
                }
            }
            for sigma in s.pi().elements() {
                if self.apply(s.act_pi(sigma, x)) != d.act_pi(sigma, self.apply(x)) {
                    return bad("Π-equivariance");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitorsorMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BitorsorMorphism({:?} → {:?}, u = {:?})",
            self.src, self.dst, self.point_map
        )
    }
}

/// Output of [`trivialize`].
#[derive(Clone, Debug)]
pub struct Trivialization {
    /// `conj(x): G → G′`, `conj(x)(g)·x = x·g`.
    pub conj: GroupHom,
    /// `(conj(x), g ↦ x·g, id): Triv(G) → B` (on the underlying plain bitorsor).
    pub morphism: BitorsorMorphism,
}

pub fn trivialize(b: &Bitorsor, x: usize) -> Result<Trivialization, BitorsorError> {
    if x >= b.size() {
        return Err(BitorsorError::PointOutOfRange(x));
    }
    let g = b.right();
    let conj_map = g
        .elements()
        .map(|h| b.left_between(x, b.act_right(x, h)))
        .collect();
    let conj = GroupHom::new(g.clone(), b.left().clone(), conj_map)?;
    let point_map = g.elements().map(|h| b.act_right(x, h)).collect();
    let morphism = BitorsorMorphism::new(
        trivial_bitorsor(g),
        b.underlying(),
        conj.clone(),
        point_map,
        GroupHom::identity(g),
    )?;
    Ok(Trivialization { conj, morphism })
}

/// The sub-bitorsor `(H′, H′·y, H)` through `y`, where `H = {g : y·g ∈ H′·y}`,
/// together with its inclusion. `H′·y` must be `Π`-stable.
pub fn sub_bitorsor(
    b: &Bitorsor,
    left_sub: &Subgroup,
    y: usize,
) -> Result<(Bitorsor, BitorsorMorphism), BitorsorError> {
    if left_sub.parent() != b.left() {
        return Err(BitorsorError::SignatureMismatch {
            detail: "subgroup is not a subgroup of the left group".into(),
        });
    }
    if y >= b.size() {
        return Err(BitorsorError::PointOutOfRange(y));
    }
    let mut points: Vec<usize> = left_sub
        .members()
        .iter()
        .map(|&h| b.act_left(h, y))
        .collect();
    points.sort_unstable();
    let pos = |x: usize| points.binary_search(&x).ok();
    let right_members: Vec<usize> = points.iter().map(|&x| b.right_between(y, x)).collect();
    let right_sub = Subgroup::new(b.right(), &right_members)?;
    let (hl, incl_l) = left_sub.to_group();
    let (hr, incl_r) = right_sub.to_group();
    let k = points.len();

    let mut pi_points = Vec::with_capacity(b.pi().order() * k);
    for s in b.pi().elements() {
        for &x in &points {
            pi_points.push(pos(b.act_pi(s, x)).ok_or(BitorsorError::NotPiStable)?);
        }
    }
    let left_act = (0..k * k)
        .map(|i| {
            pos(b.act_left(left_sub.members()[i / k], points[i % k])).expect("orbit is stable")
        })
        .collect();
    let right_act = (0..k * k)
        .map(|i| {
            pos(b.act_right(points[i / k], right_sub.members()[i % k])).expect("coset is stable")
        })
        .collect();
    let sub = Bitorsor::with_pi(hl, hr, left_act, right_act, b.pi().clone(), pi_points)?;
    let inclusion = BitorsorMorphism::new(sub.clone(), b.clone(), incl_l, points, incl_r)?;
    Ok((sub, inclusion))
}

/// Output of [`factor_morphism`]: `Φ = β ∘ α`.
#[derive(Clone, Debug)]
pub struct ImageFactorization {
    pub alpha: BitorsorMorphism,
    pub beta: BitorsorMorphism,
    pub image: Bitorsor,
}

pub fn factor_morphism(phi: &BitorsorMorphism) -> Result<ImageFactorization, BitorsorError> {
    let im_left = Subgroup::whole(phi.src().left()).image_under(phi.phi_left())?;
    let (image, beta) = sub_bitorsor(phi.dst(), &im_left, phi.apply(0))?;
    let left_map = phi
        .phi_left()
        .map()
        .iter()
        .map(|&g| im_left.position(g).expect("in the image"))
        .collect();
    let right_sub = Subgroup::new(phi.dst().right(), beta.phi_right().map())?;
    let right_map = phi
        .phi_right()
        .map()
        .iter()
        .map(|&g| right_sub.position(g).expect("in the image"))
        .collect();
    let point_map = phi
        .point_map()
        .iter()
        .map(|&y| beta.point_map().binary_search(&y).expect("in the image"))
        .collect();
    let alpha = BitorsorMorphism::new(
        phi.src().clone(),
        image.clone(),
        GroupHom::new(phi.src().left().clone(), image.left().clone(), left_map)?,
        point_map,
        GroupHom::new(phi.src().right().clone(), image.right().clone(), right_map)?,
    )?;
    Ok(ImageFactorization { alpha, beta, image })
}

/// Which structure maps an isomorphism search must fix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// Any isomorphism.
    Free,
    /// `(∗, id)`-isomorphisms; right groups must be equal.
    FixRight,
    /// `(id, id)`-isomorphisms; both groups must be equal.
    FixBoth,
}

/// Exhaustive isomorphism search. `Π`-equivariance is always required; use
/// [`Bitorsor::underlying`] to compare plain bitorsors.
pub fn are_isomorphic(b1: &Bitorsor, b2: &Bitorsor, mode: IsoMode) -> Option<BitorsorMorphism> {
    if b1.size() != b2.size() || b1.pi() != b2.pi() {
        return None;
    }
    let candidates: Vec<GroupHom> = match mode {
        IsoMode::Free => enumerate_homs(b1.right(), b2.right())
            .into_iter()
            .filter(GroupHom::is_bijective)
            .collect(),
        IsoMode::FixRight | IsoMode::FixBoth => {
            if b1.right() != b2.right() || (mode == IsoMode::FixBoth && b1.left() != b2.left()) {
                return None;
            }
            vec![GroupHom::identity(b1.right())]
        }
    };
    for phi in candidates {
        for y in b2.points() {
            if let Ok(m) = BitorsorMorphism::from_basepoint(b1, b2, y, phi.clone()) {
                if mode != IsoMode::FixBoth
                    || m.phi_left().map().iter().enumerate().all(|(g, &h)| g == h)
                {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// All morphisms `b1 → b2`.
pub fn enumerate_morphisms(b1: &Bitorsor, b2: &Bitorsor) -> Vec<BitorsorMorphism> {
    if b1.pi() != b2.pi() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for phi in enumerate_homs(b1.right(), b2.right()) {
        for y in b2.points() {
            if let Ok(m) = BitorsorMorphism::from_basepoint(b1, b2, y, phi.clone()) {
                out.push(m);
            }
        }
    }
    out
}
