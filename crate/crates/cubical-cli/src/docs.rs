//! Wire formats shared by the file-based commands, and the conversions
//! between them and the library types.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cubical::gates::{standard_coset, StandardCoset};
use cubical::geometry::{hyperplane_of_edge, Hyperplane};
use cubical::graph::VertexSet;
use cubical::invariants::{ClassifyingInvariant, EventuallyPeriodic};
use cubical::rays::PeriodicRay;
use cubical::words::{Letter, Raag, Sign};
use cubical::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplaneDoc {
    pub label: String,
    pub base: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayDoc {
    pub base: String,
    pub period: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolSeqDoc {
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicHyperplanesDoc {
    pub preperiod: Vec<HyperplaneDoc>,
    pub period: Vec<HyperplaneDoc>,
}

pub fn parse_letter(raag: &Raag, text: &str) -> Result<Letter, Error> {
    let word = raag.parse_word(text)?;
    if word.len() != 1 {
        return Err(Error::BadToken(text.to_owned()));
    }
    Ok(word[0])
}

pub fn parse_gens(raag: &Raag, text: &str) -> Result<VertexSet, Error> {
    let mut set = VertexSet::EMPTY;
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        set.insert(raag.graph().vertex(name)?);
    }
    Ok(set)
}

pub fn parse_coset(raag: &Raag, base: &str, gens: &str) -> Result<StandardCoset, Error> {
    let rep = raag.parse_element(base)?;
    Ok(standard_coset(raag, &rep, parse_gens(raag, gens)?))
}

pub fn coset_doc(raag: &Raag, c: &StandardCoset) -> Value {
    json!({
        "base": raag.format(c.base()),
        "generators": raag.graph().set_names(c.generators()),
    })
}

pub fn hyperplane_doc(raag: &Raag, h: &Hyperplane) -> Value {
    json!({
        "label": raag.graph().name(h.label),
        "base": raag.format(h.base()),
    })
}

pub fn hyperplane_from_doc(raag: &Raag, doc: &HyperplaneDoc) -> Result<Hyperplane, Error> {
    let label = raag.graph().vertex(&doc.label)?;
    let base = raag.parse_element(&doc.base)?;
    Ok(hyperplane_of_edge(raag, &base, Letter { vertex: label, sign: Sign::Pos }))
}

pub fn parse_hyperplane_json(raag: &Raag, text: &str) -> Result<Hyperplane, Error> {
    let doc: HyperplaneDoc =
        serde_json::from_str(text).map_err(|e| Error::BadToken(format!("{text}: {e}")))?;
    hyperplane_from_doc(raag, &doc)
}

pub fn parse_ray(raag: &Raag, args: &super::RayArgs) -> Result<PeriodicRay, Error> {
    PeriodicRay::new(raag.parse_element(&args.base)?, raag.parse_element(&args.period)?)
}

pub fn parse_two_rays(
    raag: &Raag,
    args: &super::TwoRayArgs,
) -> Result<(PeriodicRay, PeriodicRay), Error> {
    Ok((
        PeriodicRay::new(raag.parse_element(&args.base1)?, raag.parse_element(&args.period1)?)?,
        PeriodicRay::new(raag.parse_element(&args.base2)?, raag.parse_element(&args.period2)?)?,
    ))
}

pub fn load_hyperplane_seq(raag: &Raag, path: &str) -> Result<Vec<Hyperplane>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadToken(format!("cannot read `{path}`: {e}")))?;
    let docs: Vec<HyperplaneDoc> =
        serde_json::from_str(&text).map_err(|e| Error::BadToken(format!("bad sequence file `{path}`: {e}")))?;
    docs.iter().map(|d| hyperplane_from_doc(raag, d)).collect()
}

pub fn load_periodic_tuple(
    raag: &Raag,
    path: &str,
) -> Result<Vec<EventuallyPeriodic<Hyperplane>>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadToken(format!("cannot read `{path}`: {e}")))?;
    let docs: Vec<PeriodicHyperplanesDoc> =
        serde_json::from_str(&text).map_err(|e| Error::BadToken(format!("bad tuple file `{path}`: {e}")))?;
    docs.iter()
        .map(|d| {
            let pre = d
                .preperiod
                .iter()
                .map(|h| hyperplane_from_doc(raag, h))
                .collect::<Result<Vec<_>, _>>()?;
            let per = d
                .period
                .iter()
                .map(|h| hyperplane_from_doc(raag, h))
                .collect::<Result<Vec<_>, _>>()?;
            EventuallyPeriodic::new(pre, per)
        })
        .collect()
}

pub fn load_symbol_seq(path: &str) -> Result<SymbolSeqDoc, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("bad sequence file `{path}`: {e}"))
}

/// Parses a directed edge path: whitespace-separated `e` / `e^-1` tokens.
pub fn parse_path(
    x: &cubical::complex::CubeComplex,
    text: &str,
) -> Result<Vec<cubical::complex::Side>, Error> {
    let mut sides = Vec::new();
    for tok in text.split_whitespace() {
        let (id, dir) = match tok.strip_suffix("^-1") {
            Some(base) => (base, -1),
            None => (tok, 1),
        };
        sides.push((x.edge_index(id)?, dir));
    }
    Ok(sides)
}

pub fn load_ray_family(raag: &Raag, path: &str) -> Result<Vec<PeriodicRay>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadToken(format!("cannot read `{path}`: {e}")))?;
    let docs: Vec<RayDoc> =
        serde_json::from_str(&text).map_err(|e| Error::BadToken(format!("bad ray file `{path}`: {e}")))?;
    docs.iter()
        .map(|d| PeriodicRay::new(raag.parse_element(&d.base)?, raag.parse_element(&d.period)?))
        .collect()
}

pub fn invariant_doc(raag: &Raag, inv: &ClassifyingInvariant) -> Value {
    json!({
        "labels": inv.labels.iter().map(|&v| raag.graph().name(v)).collect::<Vec<_>>(),
        "s": inv.s.iter().map(|g| raag.format(g)).collect::<Vec<_>>(),
        "t": inv.t.iter().map(|g| raag.format(g)).collect::<Vec<_>>(),
        "terminal": {
            "base": raag.format(inv.terminal.base()),
            "generators": raag.graph().set_names(inv.terminal.generators()),
        },
    })
}
