use std::collections::HashMap;
use std::path::Path;

use bitorsor_kit::bitorsor::{compose, inverse, Bitorsor};
use bitorsor_kit::devissage::{
    decompose, verify_parts, Decomposition, SplitExtension, TypeGammaWitness, Verdict,
};
use bitorsor_kit::equivariant::{classify_pi, connectivity, from_theta, h1, ThetaBitorsor};
use bitorsor_kit::group::builtin::{cyclic, dihedral, semidirect_cyclic_full, symmetric};
use bitorsor_kit::group::{enumerate_homs, image};
use bitorsor_kit::local_model::{survey, TameParams};
use bitorsor_kit::rclass::{closure, in_closure, parse_registry, ElementaryClassRegistry};
use bitorsor_kit::{Error, FiniteGroup, GroupHom, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::doc::{self, field, full_group, usizes_of, Decoder, DocError, Encoder, SCHEMA};
use crate::dot;
use crate::input::{load_group, read_file};
use crate::CliError;

/// What a command produced. `ok == false` means a validation failure whose
/// report is still worth printing.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub ok: bool,
}

impl Report {
    fn new(command: &str, text: String, mut body: Value) -> Self {
        let mut json = json!({ "schema": SCHEMA, "command": command });
        if let (Some(j), Some(b)) = (json.as_object_mut(), body.as_object_mut()) {
            j.append(b);
        }
        Report {
            text,
            json,
            dot: None,
            ok: true,
        }
    }
}

fn group_summary(g: &FiniteGroup) -> Value {
    json!({ "label": g.label(), "order": g.order() })
}

pub fn validate_group(source: &str) -> Result<Report, CliError> {
    let g = load_group(source)?;
    let text = format!(
        "valid group {} of order {}, generators {:?}, {}\n",
        g.label(),
        g.order(),
        g.generators(),
        if g.is_abelian() {
            "abelian"
        } else {
            "nonabelian"
        }
    );
    let embed = g.order() <= doc::EMBED_LIMIT;
    let mut group = full_group(&g);
    if !embed {
        group["table"] = json!({ "sha256": doc::sha256_hex(&group["table"]) });
    }
    Ok(Report::new(
        "validate-group",
        text,
        json!({ "valid": true, "abelian": g.is_abelian(), "group": group }),
    ))
}

fn class_rows(pi: &FiniteGroup, classes: &[ThetaBitorsor]) -> Vec<Value> {
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "theta": c.theta.map(),
                "generator_images": c.theta.generator_images(),
                "image_order": image(&c.theta).order(),
                "connected": connectivity(c)[0],
                "pi_generators": pi.generators(),
            })
        })
        .collect()
}

pub fn h1_classes(pi_arg: &str, group_arg: &str) -> Result<Report, CliError> {
    let (pi, g) = (load_group(pi_arg)?, load_group(group_arg)?);
    let classes = h1(&pi, &g);
    let mut text = format!(
        "H¹({}, {}): {} classes\n",
        pi.label(),
        g.label(),
        classes.len()
    );
    for (i, c) in classes.iter().enumerate() {
        text.push_str(&format!(
            "class {i}: θ on generators {:?} = {:?}, |im θ| = {}, connected: {}\n",
            pi.generators(),
            c.theta.generator_images(),
            image(&c.theta).order(),
            connectivity(c)[0]
        ));
    }
    let body = json!({ "pi": group_summary(&pi), "group": group_summary(&g), "classes": class_rows(&pi, &classes) });
    Ok(Report::new("h1", text, body))
}

pub fn classify(pi_arg: &str, group_arg: &str, images: &[usize]) -> Result<Report, CliError> {
    let (pi, g) = (load_group(pi_arg)?, load_group(group_arg)?);
    if images.len() != pi.generators().len() {
        return Err(CliError::Usage(format!(
            "--theta needs one image per generator of {} ({} given, {} needed)",
            pi.label(),
            images.len(),
            pi.generators().len()
        )));
    }
    let theta = enumerate_homs(&pi, &g)
        .into_iter()
        .find(|h| h.generator_images() == images)
        .ok_or_else(|| {
            Error::from(bitorsor_kit::GroupError::NotAHomomorphism {
                detail: format!("generator images {images:?} do not extend to a homomorphism"),
            })
        })?;
    let classes = h1(&pi, &g);
    let t = ThetaBitorsor::on_trivial(theta);
    let index = classify_pi(&from_theta(&t), &classes).map_err(Error::from)?;
    let text = format!(
        "θ = {:?} lies in class {index} of {}\n",
        t.theta.map(),
        classes.len()
    );
    let body = json!({ "theta": t.theta.map(), "class": index, "class_count": classes.len() });
    Ok(Report::new("classify", text, body))
}

fn extension_value(e: &SplitExtension) -> Value {
    json!({
        "pi_big": full_group(e.pi_big()),
        "gamma": e.gamma().members(),
        "p": { "dst": full_group(e.pi_small()), "map": e.p().map() },
        "s": e.s().map(),
    })
}

fn parse_extension_value(v: &Value) -> Result<SplitExtension, DocError> {
    let pi = doc::parse_group(field(v, "pi_big")?)?;
    let p = field(v, "p")?;
    let small = doc::parse_group(field(p, "dst")?)?;
    let gamma = Subgroup::new(&pi, &usizes_of(v, "gamma")?)?;
    let p = GroupHom::new(pi.clone(), small.clone(), usizes_of(p, "map")?)?;
    let s = GroupHom::new(small, pi, usizes_of(v, "s")?)?;
    Ok(SplitExtension::new(gamma, p, s)?)
}

fn encode_entry(enc: &mut Encoder, class: usize, t: &ThetaBitorsor, d: &Decomposition) -> Value {
    let c = &d.certificate;
    let gw = &c.gamma_witness;
    let component = c
        .component
        .as_ref()
        .map(|(ct, inc)| json!({ "theta": enc.hom(&ct.theta), "inclusion": enc.morphism(inc) }));
    json!({
        "class": class,
        "theta": t.theta.map(),
        "y": enc.bitorsor(&d.y),
        "z": enc.bitorsor(&d.z),
        "witness_iso": enc.morphism(&d.witness_iso),
        "gamma_witness": {
            "quotient": enc.hom(&gw.quotient),
            "sub": enc.bitorsor(&gw.sub),
            "inclusion": enc.morphism(&gw.inclusion),
        },
        "certificate": {
            "h_prime": { "parent": enc.group(c.h_prime.parent()), "members": c.h_prime.members() },
            "q": enc.hom(&c.q),
            "s_low": enc.hom(&c.s_low),
            "theta_tilde": enc.hom(&c.theta_tilde),
            "component": component,
        },
    })
}

type Decomposed = (usize, ThetaBitorsor, Decomposition);

fn encode_all(items: &[Decomposed], embed_all: bool) -> (Value, Value) {
    let mut enc = Encoder::new(embed_all);
    let entries: Vec<Value> = items
        .iter()
        .map(|(i, t, d)| encode_entry(&mut enc, *i, t, d))
        .collect();
    (enc.groups(), Value::Array(entries))
}

fn describe_decomposition(
    class: usize,
    t: &ThetaBitorsor,
    d: &Decomposition,
    classes: &[ThetaBitorsor],
) -> String {
    let gw = &d.certificate.gamma_witness;
    let z = classify_pi(&d.z, classes).map_or("?".to_string(), |c| c.to_string());
    format!(
        "class {class}: θ = {:?}\n  Y: {} points, left {} (order {}), type Γ through Γ ↠ H′ of order {}\n  Z: class {z}, type π\n",
        t.theta.map(),
        d.y.size(),
        d.y.left().label(),
        d.y.left().order(),
        gw.quotient.dst().order()
    )
}

pub fn decompose_cmd(
    e: &SplitExtension,
    group_arg: &str,
    class: Option<usize>,
) -> Result<Report, CliError> {
    let g = load_group(group_arg)?;
    let classes = h1(e.pi_big(), &g);
    let selected: Vec<usize> = match class {
        Some(c) if c >= classes.len() => {
            return Err(CliError::Usage(format!(
                "class {c} out of range: there are {} classes",
                classes.len()
            )))
        }
        Some(c) => vec![c],
        None => (0..classes.len()).collect(),
    };
    let mut items = Vec::new();
    for i in selected {
        let t = classes[i].clone();
        let d = decompose(&t, e).map_err(Error::from)?;
        items.push((i, t, d));
    }
    let mut text = format!(
        "Π = {} (order {}), Γ of order {}, π = {}; G = {}: {} classes\n",
        e.pi_big().label(),
        e.pi_big().order(),
        e.gamma().order(),
        e.pi_small().label(),
        g.label(),
        classes.len()
    );
    for (i, t, d) in &items {
        text.push_str(&describe_decomposition(*i, t, d, &classes));
    }
    let (groups, entries) = encode_all(&items, false);
    let body = json!({
        "input": { "extension": extension_value(e), "group": full_group(&g) },
        "groups": groups,
        "decompositions": entries,
    });
    let mut r = Report::new("decompose", text, body);
    r.dot = Some(dot::decompositions(&items));
    Ok(r)
}

fn verify_entry(
    entry: &Value,
    dec: &Decoder,
    e: &SplitExtension,
    g: &FiniteGroup,
) -> Result<Verdict, DocError> {
    let theta = GroupHom::new(e.pi_big().clone(), g.clone(), usizes_of(entry, "theta")?)?;
    let t = ThetaBitorsor::on_trivial(theta);
    let y = dec.bitorsor(field(entry, "y")?)?;
    let z = dec.bitorsor(field(entry, "z")?)?;
    let wedge = match compose(&y, &z) {
        Ok(w) => w,
        Err(err) => return Ok(Verdict::Invalid(format!("Y ∧ Z: {err}"))),
    };
    let iso = dec.morphism(field(entry, "witness_iso")?, wedge, from_theta(&t))?;
    let gw = field(entry, "gamma_witness")?;
    let sub = dec.bitorsor(field(gw, "sub")?)?;
    let witness = TypeGammaWitness {
        quotient: dec.hom(field(gw, "quotient")?)?,
        inclusion: dec.morphism(field(gw, "inclusion")?, sub.clone(), y.clone())?,
        sub,
    };
    Ok(verify_parts(&t, &y, &z, &iso, &witness, e))
}

/// Restores hashed tables by redoing the decompositions the document lists.
fn restore_hashed(doc: &mut Value, e: &SplitExtension, g: &FiniteGroup) -> Result<(), DocError> {
    let entries = field(doc, "decompositions")?
        .as_array()
        .ok_or_else(|| DocError::Shape("`decompositions` is not an array".into()))?;
    let mut items = Vec::new();
    for entry in entries {
        let theta = GroupHom::new(e.pi_big().clone(), g.clone(), usizes_of(entry, "theta")?)?;
        let t = ThetaBitorsor::on_trivial(theta);
        let d = decompose(&t, e)?;
        items.push((doc::usize_of(entry, "class")?, t, d));
    }
    let (groups, full) = encode_all(&items, true);
    doc::fill_hashed(&mut doc["groups"], &groups, "groups")?;
    doc::fill_hashed(&mut doc["decompositions"], &full, "decompositions")
}

pub fn verify(path: &Path) -> Result<Report, CliError> {
    let text = read_file(path)?;
    let mut document: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("certificate: not JSON: {e}")))?;
    let invalid = |e: DocError| CliError::Invalid(e.to_string());
    if document.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(CliError::Invalid(format!(
            "certificate: schema is not `{SCHEMA}`"
        )));
    }
    if document.get("command").and_then(Value::as_str) != Some("decompose") {
        return Err(CliError::Invalid(
            "certificate: not a `decompose` document".into(),
        ));
    }
    let input = field(&document, "input").map_err(invalid)?;
    let e = parse_extension_value(field(input, "extension").map_err(invalid)?).map_err(invalid)?;
    let g = doc::parse_group(field(input, "group").map_err(invalid)?).map_err(invalid)?;
    if doc::has_hashed(&document) {
        restore_hashed(&mut document, &e, &g).map_err(invalid)?;
    }
    let dec = Decoder::new(field(&document, "groups").map_err(invalid)?).map_err(invalid)?;
    let entries = field(&document, "decompositions")
        .map_err(invalid)?
        .as_array()
        .ok_or_else(|| CliError::Invalid("certificate: `decompositions` is not an array".into()))?;
    let mut results = Vec::new();
    let mut out = String::new();
    let mut ok = true;
    for (pos, entry) in entries.iter().enumerate() {
        let class = doc::usize_of(entry, "class").unwrap_or(pos);
        let verdict = verify_entry(entry, &dec, &e, &g)
            .unwrap_or_else(|err| Verdict::Invalid(err.to_string()));
        match &verdict {
            Verdict::Valid => {
                out.push_str(&format!("class {class}: valid\n"));
                results.push(json!({ "class": class, "valid": true }));
            }
            Verdict::Invalid(m) => {
                ok = false;
                out.push_str(&format!("class {class}: INVALID: devissage: {m}\n"));
                results.push(
                    json!({ "class": class, "valid": false, "reason": format!("devissage: {m}") }),
                );
            }
        }
    }
    let valid = results.iter().filter(|r| r["valid"] == true).count();
    out.push_str(&format!(
        "{valid} of {} decompositions verified\n",
        results.len()
    ));
    let mut r = Report::new(
        "verify",
        out,
        json!({ "all_valid": ok, "results": results }),
    );
    r.ok = ok;
    Ok(r)
}

/// `G#c` when the right group is constant, `G#c⁻¹` when only the left is.
fn describe_bitorsor(b: &Bitorsor, r: &ElementaryClassRegistry) -> String {
    let (core, suffix) = if b.right_is_constant() {
        (b.clone(), "")
    } else if b.left_is_constant() {
        (inverse(b), "⁻¹")
    } else {
        return "(no constant side)".into();
    };
    let Some(gi) = r.group_index(core.right()) else {
        return format!("{}#?", core.right().label());
    };
    match classify_pi(&core, r.classes(gi)) {
        Ok(c) => format!("{}#{c}{suffix}", core.right().label()),
        Err(_) => format!("{}#?", core.right().label()),
    }
}

pub fn closure_cmd(
    pi_arg: &str,
    registry: &Path,
    max_n: usize,
    target: Option<(&str, usize)>,
) -> Result<Report, CliError> {
    let pi = load_group(pi_arg)?;
    let mut r = parse_registry(&read_file(registry)?, &pi).map_err(Error::from)?;
    let violation = r.validate().err().map(|v| v.to_string());
    let elementary: Vec<Value> = (0..r.universe().len())
        .map(|gi| json!({ "group": r.universe()[gi].label(), "classes": r.elementary_classes(gi) }))
        .collect();
    let mut text = match &violation {
        None => "registry: valid\n".to_string(),
        Some(v) => format!("registry: not closed: rclass: {v}\n"),
    };
    let registry_json =
        json!({ "valid": violation.is_none(), "violation": violation, "elementary": elementary });
    if let Some((group_arg, class)) = target {
        let g = load_group(group_arg)?;
        let gi = r.add_group(&g);
        let classes = r.classes(gi).to_vec();
        let t = classes.get(class).ok_or_else(|| {
            CliError::Usage(format!(
                "class {class} out of range: there are {} classes",
                classes.len()
            ))
        })?;
        let f = in_closure(t, &r, max_n).map_err(Error::from)?;
        let factors: Option<Vec<String>> = f.as_ref().map(|f| {
            f.factors()
                .iter()
                .map(|b| describe_bitorsor(b, &r))
                .collect()
        });
        match &factors {
            Some(fs) => text.push_str(&format!(
                "{}#{class} = {} (length {})\n",
                g.label(),
                fs.join(" ∧ "),
                fs.len()
            )),
            None => text.push_str(&format!(
                "{}#{class} is not a wedge of at most {max_n} members\n",
                g.label()
            )),
        }
        let body = json!({
            "registry": registry_json,
            "max_n": max_n,
            "target": { "group": g.label(), "class": class, "in_closure": factors.is_some(), "factors": factors },
        });
        return Ok(Report::new("closure", text, body));
    }
    let chains = closure(&r, max_n).map_err(Error::from)?;
    let mut rows = Vec::new();
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (i, c) in chains.iter().enumerate() {
        let refs: Vec<String> = c.refs.iter().map(|cr| r.describe(cr)).collect();
        let wedge = describe_bitorsor(&c.wedge, &r);
        text.push_str(&format!("{} → {wedge}\n", refs.join(" ∧ ")));
        if refs.len() > 1 {
            if let Some(&p) = index.get(&refs[..refs.len() - 1]) {
                edges.push((p, i, refs[refs.len() - 1].clone()));
            }
        }
        labels.push(wedge.clone());
        index.insert(refs.clone(), i);
        rows.push(json!({ "factors": refs, "wedge": wedge, "length": c.refs.len() }));
    }
    text.push_str(&format!(
        "{} classes reachable with at most {max_n} factors\n",
        chains.len()
    ));
    let mut rep = Report::new(
        "closure",
        text,
        json!({ "registry": registry_json, "max_n": max_n, "chains": rows }),
    );
    rep.dot = Some(dot::closure(&labels, &edges));
    Ok(rep)
}

pub fn local_survey(q: usize, n: usize, m: usize, group_arg: &str) -> Result<Report, CliError> {
    let g = load_group(group_arg)?;
    let p = TameParams::new(q, n, m).map_err(Error::from)?;
    let report = survey(&p, &g).map_err(Error::from)?;
    let ok = report.all_decomposed();
    let body = json!({ "report": serde_json::to_value(&report).expect("reports serialize") });
    let mut r = Report::new("local-survey", report.to_table(), body);
    r.ok = ok;
    Ok(r)
}

/// Decomposes one seeded choice of extension, group and class, then verifies
/// the result.
pub fn demo(seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(3, 2, 2), (4, 2, 3), (3, 2, 1), (5, 4, 2), (7, 3, 2)];
    let (n, m, k) = shapes[rng.gen_range(0..shapes.len())];
    let groups = [
        cyclic(2),
        cyclic(3),
        cyclic(4),
        cyclic(6),
        symmetric(3),
        dihedral(4),
    ];
    let g = &groups[rng.gen_range(0..groups.len())];
    let sd = semidirect_cyclic_full(n, m, k).map_err(Error::from)?;
    let e = SplitExtension::from_semidirect(&sd).map_err(Error::from)?;
    let classes = h1(e.pi_big(), g);
    let class = rng.gen_range(0..classes.len());
    let t = classes[class].clone();
    let d = decompose(&t, &e).map_err(Error::from)?;
    let verdict = verify_parts(
        &t,
        &d.y,
        &d.z,
        &d.witness_iso,
        &d.certificate.gamma_witness,
        &e,
    );
    let mut text = format!(
        "seed {seed}: Π = Z/{n}⋊Z/{m} (1 ↦ {k}), G = {}, {} classes\n",
        g.label(),
        classes.len()
    );
    text.push_str(&describe_decomposition(class, &t, &d, &classes));
    text.push_str(&format!(
        "verification: {}\n",
        if verdict.is_valid() {
            "valid"
        } else {
            "INVALID"
        }
    ));
    let items = vec![(class, t, d)];
    let (groups_json, entries) = encode_all(&items, false);
    let body = json!({
        "seed": seed,
        "extension": { "n": n, "m": m, "k": k },
        "group": g.label(),
        "class": class,
        "valid": verdict.is_valid(),
        "groups": groups_json,
        "decompositions": entries,
    });
    let mut r = Report::new("demo", text, body);
    r.dot = Some(dot::decompositions(&items));
    r.ok = verdict.is_valid();
    Ok(r)
}
