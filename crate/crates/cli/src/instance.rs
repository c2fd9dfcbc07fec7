//! JSON instance files.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use hypercycle::ohg::{to_tensor_hg, OrientedHypergraph};
use hypercycle::{EdgeSpec, FieldSpec, TensorElem, TensorHypergraph, Word};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EdgeKind {
    SymQuad { members: Vec<String> },
    Directed { source: String, target: String },
    MultisetUndirected { members: Vec<String> },
    OrderedUndirected { members: Vec<String> },
    MultisetDirected { source: Vec<String>, target: Vec<String> },
    OrderedDirected { source: Vec<String>, target: Vec<String> },
    Raw { source: Vec<TermJson>, target: Vec<TermJson> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedEdgeJson {
    pub id: String,
    #[serde(default)]
    pub minus: Vec<String>,
    #[serde(default)]
    pub plus: Vec<String>,
}

/// Values a verified instance must reproduce.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_macro: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_macro: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_z: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_z_top: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oriented_edges: Option<Vec<OrientedEdgeJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vec<i8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

fn default_field() -> String {
    "Q".into()
}

/// A parsed instance, keeping the oriented form when the file had one.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub hypergraph: TensorHypergraph,
    pub oriented: Option<OrientedHypergraph>,
    pub expected: Option<Expected>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

struct Names<'a>(HashMap<&'a str, usize>);

impl<'a> Names<'a> {
    fn new(vertices: &'a [String]) -> Result<Self, CliError> {
        let mut map = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if map.insert(v.as_str(), i).is_some() {
                return Err(input(format!("duplicate vertex name {v:?}")));
            }
        }
        Ok(Names(map))
    }

    fn get(&self, name: &str) -> Result<usize, CliError> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| input(format!("unknown vertex {name:?}")))
    }

    fn all(&self, names: &[String]) -> Result<Vec<usize>, CliError> {
        names.iter().map(|n| self.get(n)).collect()
    }
}

fn tensor(field: FieldSpec, names: &Names, terms: &[TermJson]) -> Result<TensorElem, CliError> {
    let terms = terms
        .iter()
        .map(|t| Ok((Word::new(names.all(&t.word)?), field.parse_scalar(&t.coeff)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(TensorElem::from_terms(field, terms)?)
}

fn check_unique_ids<'a>(ids: impl Iterator<Item = &'a String>) -> Result<(), CliError> {
    let mut seen = BTreeMap::new();
    for id in ids {
        if seen.insert(id, ()).is_some() {
            return Err(input(format!("duplicate edge id {id:?}")));
        }
    }
    Ok(())
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| input(format!("malformed instance: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Resolves names and builds the hypergraph over `field`, or over the
    /// file's own field when no override is given.
    pub fn load(&self, field: Option<FieldSpec>) -> Result<Loaded, CliError> {
        let field = match field {
            Some(f) => f,
            None => self.field.parse()?,
        };
        let present = [self.edges.is_some(), self.oriented_edges.is_some(), self.incidence.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(input("exactly one of edges, oriented_edges, incidence is required"));
        }
        let names = Names::new(&self.vertices)?;
        let oriented = if let Some(edges) = &self.oriented_edges {
            check_unique_ids(edges.iter().map(|e| &e.id))?;
            let sides = edges
                .iter()
                .map(|e| Ok((e.id.clone(), names.all(&e.minus)?, names.all(&e.plus)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Some(OrientedHypergraph::from_sides(self.vertices.clone(), sides)?)
        } else if let Some(rows) = &self.incidence {
            if rows.len() != self.vertices.len() {
                return Err(input("incidence needs one row per vertex"));
            }
            let m = rows.first().map_or(0, Vec::len);
            let ids = (0..m).map(|e| format!("e{e}")).collect();
            Some(OrientedHypergraph::new(self.vertices.clone(), ids, rows.clone())?)
        } else {
            None
        };
        let hypergraph = match (&oriented, &self.edges) {
            (Some(o), _) => to_tensor_hg(o, field)?,
            (None, Some(edges)) => {
                let ids: Vec<String> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| e.id.clone().unwrap_or_else(|| format!("e{i}")))
                    .collect();
                check_unique_ids(ids.iter())?;
                let specs = edges
                    .iter()
                    .map(|e| edge_spec(field, &names, &e.kind))
                    .collect::<Result<Vec<_>, CliError>>()?;
                TensorHypergraph::build(field, self.vertices.clone(), ids.into_iter().zip(specs).collect())?
            }
            (None, None) => unreachable!("one input form is present"),
        };
        Ok(Loaded {
            hypergraph,
            oriented,
            expected: self.expected.clone(),
        })
    }

    /// The instance file describing `h`, with every edge written out.
    pub fn from_hypergraph(h: &TensorHypergraph) -> Self {
        let names = h.vertex_names();
        let list = |vs: &[usize]| vs.iter().map(|&v| names[v].clone()).collect::<Vec<_>>();
        let terms = |t: &TensorElem| {
            t.terms()
                .map(|(w, c)| TermJson {
                    word: list(w.letters()),
                    coeff: c.to_string(),
                })
                .collect()
        };
        let edges = h
            .edge_ids()
            .iter()
            .zip(h.specs())
            .map(|(id, s)| EdgeJson {
                id: Some(id.clone()),
                kind: match s {
                    EdgeSpec::SymQuad(m) => EdgeKind::SymQuad { members: list(m) },
                    EdgeSpec::Directed { source, target } => EdgeKind::Directed {
                        source: names[*source].clone(),
                        target: names[*target].clone(),
                    },
                    EdgeSpec::MultisetUndirected(m) => EdgeKind::MultisetUndirected { members: list(m) },
                    EdgeSpec::OrderedUndirected(m) => EdgeKind::OrderedUndirected { members: list(m) },
                    EdgeSpec::MultisetDirected { source, target } => EdgeKind::MultisetDirected {
                        source: list(source),
                        target: list(target),
                    },
                    EdgeSpec::OrderedDirected { source, target } => EdgeKind::OrderedDirected {
                        source: list(source),
                        target: list(target),
                    },
                    EdgeSpec::Raw { source, target } => EdgeKind::Raw {
                        source: terms(source),
                        target: terms(target),
                    },
                },
            })
            .collect();
        InstanceFile {
            field: h.field().to_string(),
            vertices: names.to_vec(),
            edges: Some(edges),
            oriented_edges: None,
            incidence: None,
            expected: None,
        }
    }
}

fn edge_spec(field: FieldSpec, names: &Names, kind: &EdgeKind) -> Result<EdgeSpec, CliError> {
    Ok(match kind {
        EdgeKind::SymQuad { members } => EdgeSpec::SymQuad(names.all(members)?),
        EdgeKind::Directed { source, target } => EdgeSpec::Directed {
            source: names.get(source)?,
            target: names.get(target)?,
        },
        EdgeKind::MultisetUndirected { members } => EdgeSpec::MultisetUndirected(names.all(members)?),
        EdgeKind::OrderedUndirected { members } => EdgeSpec::OrderedUndirected(names.all(members)?),
        EdgeKind::MultisetDirected { source, target } => EdgeSpec::MultisetDirected {
            source: names.all(source)?,
            target: names.all(target)?,
        },
        EdgeKind::OrderedDirected { source, target } => EdgeSpec::OrderedDirected {
            source: names.all(source)?,
            target: names.all(target)?,
        },
        EdgeKind::Raw { source, target } => EdgeSpec::Raw {
            source: tensor(field, names, source)?,
            target: tensor(field, names, target)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_parses() {
        let f = InstanceFile::parse(
            r#"{"field":"Q","vertices":["a","b","c"],"edges":[
                {"type":"sym_quad","members":["a","b"]},
                {"type":"sym_quad","members":["b","c"]},
                {"id":"ca","type":"sym_quad","members":["c","a"]}]}"#,
        )
        .unwrap();
        let h = f.load(None).unwrap().hypergraph;
        assert_eq!(h.edge_ids(), ["e0", "e1", "ca"]);
    }

    #[test]
    fn unknown_tag_and_vertex_are_input_errors() {
        let bad_tag = r#"{"vertices":["a"],"edges":[{"type":"hyper","members":["a"]}]}"#;
        assert!(matches!(InstanceFile::parse(bad_tag), Err(CliError::Input(_))));
        let bad_vertex = r#"{"vertices":["a"],"edges":[{"type":"directed","source":"a","target":"z"}]}"#;
        let f = InstanceFile::parse(bad_vertex).unwrap();
        assert!(matches!(f.load(None), Err(CliError::Input(_))));
    }

    #[test]
    fn duplicates_are_rejected() {
        let dup = r#"{"vertices":["a","a"],"edges":[]}"#;
        assert!(InstanceFile::parse(dup).unwrap().load(None).is_err());
        let both = r#"{"vertices":["a"],"edges":[],"incidence":[[]]}"#;
        assert!(InstanceFile::parse(both).unwrap().load(None).is_err());
    }

    #[test]
    fn raw_round_trip() {
        let text = r#"{"field":"F3","vertices":["a","b"],"edges":[
            {"id":"x","type":"raw","source":[{"word":["a","b"],"coeff":"2"}],"target":[{"word":[],"coeff":"1"}]}]}"#;
        let h = InstanceFile::parse(text).unwrap().load(None).unwrap().hypergraph;
        let back = InstanceFile::from_hypergraph(&h).load(None).unwrap().hypergraph;
        assert_eq!(h, back);
    }
}
