//! Group specifications in JSON.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use weightsmith_core::group::PermGroup;
use weightsmith_core::hom::AutAction;
use weightsmith_core::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
    /// Generators of a normal subgroup `G`, making this a pair `G ⊴ G̃`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<ESpec>,
}

/// An outer action: a group given by its multiplication table, with the
/// images of the generators of `G̃` under some of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ESpec {
    pub multiplication_table: Vec<Vec<usize>>,
    pub generators: Vec<EGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EGenerator {
    pub element: usize,
    pub images: Vec<String>,
}

/// A validated specification.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub spec: GroupSpec,
    pub group: PermGroup,
    pub normal: Option<PermGroup>,
    pub action: Option<AutAction>,
}

impl Parsed {
    pub fn name(&self) -> &str {
        self.spec.name.as_deref().unwrap_or("group")
    }

    /// The pair `(G̃, G)`, or an error when no normal subgroup was given.
    pub fn pair(&self) -> Result<(&PermGroup, &PermGroup)> {
        match &self.normal {
            Some(n) => Ok((&self.group, n)),
            None => bail!("{}: this command needs a normal subgroup (field \"normal\")", self.name()),
        }
    }
}

fn perms(degree: usize, field: &str, texts: &[String]) -> Result<Vec<Perm>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| Perm::parse(degree, t).with_context(|| format!("{field}[{i}]: {t:?}")))
        .collect()
}

/// `parse_group_spec`: parses and validates one specification.
pub fn parse_group_spec(text: &str, max_order: u64) -> Result<Parsed> {
    let spec: GroupSpec = serde_json::from_str(text).context("group specification")?;
    validate(spec, max_order)
}

/// Parses a corpus file: a JSON array of specifications with unique names.
pub fn parse_corpus(text: &str, max_order: u64) -> Result<Vec<Parsed>> {
    let specs: Vec<GroupSpec> = serde_json::from_str(text).context("corpus file")?;
    let mut names = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, spec) in specs.into_iter().enumerate() {
        let name = spec.name.clone().ok_or_else(|| anyhow!("entry {i}: missing name"))?;
        if !names.insert(name.clone()) {
            bail!("entry {i}: duplicate name {name:?}");
        }
        out.push(validate(spec, max_order).with_context(|| format!("entry {i} ({name})"))?);
    }
    Ok(out)
}

pub fn validate(spec: GroupSpec, max_order: u64) -> Result<Parsed> {
    if spec.degree == 0 {
        bail!("degree: must be positive");
    }
    let gens = perms(spec.degree, "generators", &spec.generators)?;
    let group = PermGroup::new(spec.degree, gens, max_order)?;
    let normal = match &spec.normal {
        None => None,
        Some(texts) => {
            let gens = perms(spec.degree, "normal", texts)?;
            let n = group.subgroup(gens).context("normal")?;
            if !n.is_normal_in(&group) {
                bail!("normal: the subgroup is not normal");
            }
            Some(n)
        }
    };
    let action = match &spec.e {
        None => None,
        Some(e) => {
            let mut generators = Vec::new();
            for (i, g) in e.generators.iter().enumerate() {
                let images = perms(spec.degree, &format!("e.generators[{i}].images"), &g.images)?;
                if images.len() != group.gens().len() {
                    bail!(
                        "e.generators[{i}].images: expected {} images, found {}",
                        group.gens().len(),
                        images.len()
                    );
                }
                generators.push((g.element, images));
            }
            Some(AutAction::new(group.clone(), e.multiplication_table.clone(), generators).context("e")?)
        }
    };
    Ok(Parsed {
        spec,
        group,
        normal,
        action,
    })
}

/// A canonical encoding of the specification for cache keys: generators as
/// image lists, so formatting differences in cycle notation do not matter.
pub fn canonical_encoding(p: &Parsed) -> serde_json::Value {
    let images = |gs: &[Perm]| -> Vec<Vec<usize>> { gs.iter().map(|g| g.images().collect()).collect() };
    serde_json::json!({
        "degree": p.spec.degree,
        "generators": images(p.group.gens()),
        "normal": p.normal.as_ref().map(|n| images(n.gens())),
        "e": p.spec.e.as_ref().map(|e| serde_json::json!({
            "table": e.multiplication_table,
            "generators": e.generators.iter().map(|g| {
                let ims: Vec<Vec<usize>> = g.images.iter()
                    .map(|t| Perm::parse(p.spec.degree, t).map(|x| x.images().collect()).unwrap_or_default())
                    .collect();
                serde_json::json!([g.element, ims])
            }).collect::<Vec<_>>(),
        })),
    })
}
