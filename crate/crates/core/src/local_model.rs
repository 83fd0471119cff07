//! Finite model of a tame local situation: `Π = Z/n ⋊ Z/m` where the
//! generator of `Z/m` acts on `Z/n` by `t ↦ q·t`, `Γ = Z/n`, `π = Z/m`.

use serde::Serialize;
use thiserror::Error;

use crate::devissage::{
    decompose, is_type_pi, verify_decomposition, DevissageError, SplitExtension, Verdict,
};
use crate::equivariant::{classify_pi, h1_with, ThetaBitorsor};
use crate::group::builtin::semidirect_cyclic_full;
use crate::group::{image, FiniteGroup, GroupError};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalModelError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Devissage(#[from] DevissageError),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TameParams {
    pub q: usize,
    pub n: usize,
    pub m: usize,
}

impl TameParams {
    pub fn new(q: usize, n: usize, m: usize) -> Result<Self, LocalModelError> {
        let bad = |s: String| Err(LocalModelError::BadParams(s));
        if q < 2 {
            return bad(format!("q = {q} must be at least 2"));
        }
        if n == 0 || m == 0 {
            return bad("n and m must be positive".into());
        }
        if gcd(n, q) != 1 {
            return bad(format!("gcd(n, q) = gcd({n}, {q}) = {} ≠ 1", gcd(n, q)));
        }
        let qm = (0..m).fold(1 % n, |acc, _| acc * q % n);
        if qm != 1 % n {
            return bad(format!("q^m = {q}^{m} ≡ {qm} (mod {n}), expected 1"));
        }
        Ok(TameParams { q, n, m })
    }
}

/// `1 → Z/n → Z/n ⋊ Z/m → Z/m → 1` with the coordinate section.
pub fn build_tame_quotient(p: &TameParams) -> Result<SplitExtension, LocalModelError> {
    let TameParams { q, n, m } = *p;
    let sd = semidirect_cyclic_full(n, m, q % n.max(1))?;
    Ok(SplitExtension::new(
        image(&sd.inclusion),
        sd.projection,
        sd.section,
    )?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    /// Position in `h1` enumeration order.
    pub class: usize,
    pub theta: Vec<usize>,
    pub image_order: usize,
    /// `Γ ⊆ ker θ`, i.e. the class itself is unramified.
    pub gamma_in_kernel: bool,
    pub decomposed: bool,
    pub verified: bool,
    pub diagnosis: Option<String>,
    /// Class of `Z` in `h1` order.
    pub z_class: Option<usize>,
    pub z_type_pi: bool,
    /// Order of the quotient of `Γ` carried by the witness of `Y`.
    pub gamma_quotient_order: Option<usize>,
    pub gamma_quotient_cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub params: TameParams,
    pub pi_order: usize,
    pub group: String,
    pub group_order: usize,
    pub warning: Option<String>,
    pub entries: Vec<SurveyEntry>,
}

impl SurveyReport {
    pub fn all_decomposed(&self) -> bool {
        self.entries.iter().all(|e| e.decomposed && e.verified)
    }

    pub fn to_table(&self) -> String {
        let TameParams { q, n, m } = self.params;
        let mut out = format!(
            "tame model q={q} n={n} m={m}, |Π|={}, G={} (order {})\n",
            self.pi_order, self.group, self.group_order
        );
        if let Some(w) = &self.warning {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(
            "class  |im θ|  Γ⊆ker θ  decomposed  verified  Z class  |Γ quotient|  cyclic\n",
        );
        for e in &self.entries {
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            out.push_str(&format!(
                "{:<5}  {:<6}  {:<8}  {:<10}  {:<8}  {:<7}  {:<12}  {}\n",
                e.class,
                e.image_order,
                e.gamma_in_kernel,
                e.decomposed,
                e.verified,
                opt(e.z_class),
                opt(e.gamma_quotient_order),
                e.gamma_quotient_cyclic
            ));
        }
        out
    }
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| g.element_order(x) == g.order())
}

fn survey_entry(
    class: usize,
    t: &ThetaBitorsor,
    e: &SplitExtension,
    classes: &[ThetaBitorsor],
) -> SurveyEntry {
    let id = t.right().identity();
    let mut entry = SurveyEntry {
        class,
        theta: t.theta.map().to_vec(),
        image_order: image(&t.theta).order(),
        gamma_in_kernel: e.gamma().members().iter().all(|&g| t.theta.apply(g) == id),
        decomposed: false,
        verified: false,
        diagnosis: None,
        z_class: None,
        z_type_pi: false,
        gamma_quotient_order: None,
        gamma_quotient_cyclic: false,
    };
    let d = match decompose(t, e) {
        Ok(d) => d,
        Err(err) => {
            entry.diagnosis = Some(err.to_string());
            return entry;
        }
    };
    entry.decomposed = true;
    match verify_decomposition(t, &d, e) {
        Verdict::Valid => entry.verified = true,
        Verdict::Invalid(m) => entry.diagnosis = Some(m),
    }
    entry.z_class = classify_pi(&d.z, classes).ok();
    entry.z_type_pi = is_type_pi(&d.z, e).unwrap_or(false);
    let h = d.certificate.gamma_witness.sub.left();
    entry.gamma_quotient_order = Some(h.order());
    entry.gamma_quotient_cyclic = is_cyclic(h);
    entry
}

pub fn survey(p: &TameParams, g: &FiniteGroup) -> Result<SurveyReport, LocalModelError> {
    survey_with(p, g, Exec::default())
}

pub fn survey_with(
    p: &TameParams,
    g: &FiniteGroup,
    exec: Exec,
) -> Result<SurveyReport, LocalModelError> {
    let e = build_tame_quotient(p)?;
    let classes = h1_with(e.pi_big(), g, exec);
    let indexed: Vec<(usize, &ThetaBitorsor)> = classes.iter().enumerate().collect();
    let mut entries = exec.map(&indexed, |(i, t)| survey_entry(*i, t, &e, &classes));
    entries.sort_by(|a, b| (a.image_order, &a.theta).cmp(&(b.image_order, &b.theta)));
    let common = gcd(g.order(), p.q);
    let warning = (common > 1).then(|| {
        format!(
            "gcd(|G|, q) = {common} > 1: the decomposition still exists at this level, but the coprimality \
             hypothesis of the tame setting fails"
        )
    });
    Ok(SurveyReport {
        params: *p,
        pi_order: e.pi_big().order(),
        group: g.label().to_string(),
        group_order: g.order(),
        warning,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, dihedral, symmetric, trivial};
    use crate::group::{enumerate_homs, find_group_isomorphism};

    fn params(q: usize, n: usize, m: usize) -> TameParams {
        TameParams::new(q, n, m).unwrap()
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(
            TameParams::new(2, 4, 2),
            Err(LocalModelError::BadParams(_))
        ));
        assert!(matches!(
            TameParams::new(2, 3, 1),
            Err(LocalModelError::BadParams(_))
        ));
        assert!(matches!(
            TameParams::new(1, 3, 2),
            Err(LocalModelError::BadParams(_))
        ));
        assert!(TameParams::new(7, 1, 3).is_ok());
    }

    #[test]
    fn quotient_shapes() {
        let d4 = build_tame_quotient(&params(3, 4, 2)).unwrap();
        assert!(find_group_isomorphism(d4.pi_big(), &dihedral(4)).is_some());
        let s3 = build_tame_quotient(&params(2, 3, 2)).unwrap();
        assert!(find_group_isomorphism(s3.pi_big(), &symmetric(3)).is_some());
        let z4 = build_tame_quotient(&params(5, 4, 1)).unwrap();
        assert!(find_group_isomorphism(z4.pi_big(), &cyclic(4)).is_some());
        assert_eq!(z4.gamma().order(), 4);
        assert_eq!(z4.pi_small().order(), 1);
    }

    #[test]
    fn dihedral_survey_over_z2() {
        let p = params(3, 4, 2);
        let r = survey(&p, &cyclic(2)).unwrap();
        let e = build_tame_quotient(&p).unwrap();
        // Z/2 is abelian, so classes are homomorphisms.
        assert_eq!(
            r.entries.len(),
            enumerate_homs(e.pi_big(), &cyclic(2)).len()
        );
        assert!(r.all_decomposed());
        for entry in &r.entries {
            assert!(entry.z_type_pi);
            assert!(entry.gamma_quotient_cyclic);
            assert_eq!(entry.gamma_in_kernel, entry.z_class == Some(entry.class));
        }
        assert!(r.warning.is_none());
    }

    #[test]
    fn trivial_group_survey() {
        let r = survey(&params(3, 4, 2), &trivial()).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(r.all_decomposed());
        assert_eq!(r.entries[0].gamma_quotient_order, Some(1));
    }

    #[test]
    fn symmetric_survey_matches_devissage() {
        let r = survey(&params(2, 3, 2), &symmetric(3)).unwrap();
        assert!(r.all_decomposed());
        let full = r.entries.iter().find(|e| e.image_order == 6).unwrap();
        assert_eq!(full.gamma_quotient_order, Some(3));
        assert!(!full.gamma_in_kernel);
        assert!(r.warning.is_some());
        let orders: Vec<usize> = r.entries.iter().map(|e| e.image_order).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn degenerate_levels() {
        // m = 1: Z is always trivial.
        let r = survey(&params(5, 4, 1), &cyclic(4)).unwrap();
        assert!(r.all_decomposed());
        assert!(r.entries.iter().all(|e| e.z_class == Some(0)));
        // n = 1: every class is unramified.
        let r = survey(&params(3, 1, 2), &symmetric(3)).unwrap();
        assert!(r
            .entries
            .iter()
            .all(|e| e.gamma_in_kernel && e.z_class == Some(e.class)));
        assert!(r.entries.iter().all(|e| e.gamma_quotient_order == Some(1)));
    }

    #[test]
    fn reports_do_not_depend_on_strategy() {
        let p = params(2, 3, 2);
        let a = survey_with(&p, &symmetric(3), Exec::Sequential).unwrap();
        let b = survey_with(&p, &symmetric(3), Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_table(), b.to_table());
    }
}
