use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::{parse_rat, Rat};
use crate::{Error, Result};

/// Finite directed multigraph. Vertices and arrows carry unique string
/// labels; loops and parallel arrows are allowed, empty vertex sets are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, usize>,
    arrow_index: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut arrow_index = BTreeMap::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (i, (id, src, tgt)) in arrows.into_iter().enumerate() {
            if arrow_index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {id:?}")));
            }
            let src = *vertex_index
                .get(&src)
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let tgt = *vertex_index
                .get(&tgt)
                .ok_or_else(|| Error::UnknownVertex(tgt.clone()))?;
            built.push(Arrow { id, src, tgt });
        }
        Ok(Self { vertices, arrows: built, vertex_index, arrow_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_label(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.into()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown arrow id {id:?}")))
    }

    /// Builds a path from arrow ids, checking composability left to right.
    pub fn path(&self, ids: &[&str]) -> Result<Path> {
        let idx: Vec<usize> = ids.iter().map(|id| self.arrow(id)).collect::<Result<_>>()?;
        if idx.is_empty() {
            return Err(Error::Parse("empty path needs a base vertex".into()));
        }
        let start = self.arrows[idx[0]].src;
        self.path_from_indices(start, idx)
    }

    pub fn trivial_path(&self, vertex: usize) -> Path {
        Path { start: vertex, arrows: Vec::new() }
    }

    pub fn path_from_indices(&self, start: usize, arrows: Vec<usize>) -> Result<Path> {
        let mut at = start;
        for &a in &arrows {
            let arrow = &self.arrows[a];
            if arrow.src != at {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} does not start at vertex {:?}",
                    arrow.id, self.vertices[at]
                )));
            }
            at = arrow.tgt;
        }
        Ok(Path { start, arrows })
    }

    /// Opposite quiver: same labels, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| {
                    (
                        a.id.clone(),
                        self.vertices[a.tgt].clone(),
                        self.vertices[a.src].clone(),
                    )
                })
                .collect(),
        )
        .expect("opposite of a valid quiver is valid")
    }
}

/// Composable arrow sequence; the empty sequence at a vertex is the trivial
/// path. Composition is left-to-right: `p.compose(q)` traverses `p` first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows()[a].tgt)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrow_indices(&self) -> &[usize] {
        &self.arrows
    }

    pub fn arrow_ids<'q>(&self, q: &'q Quiver) -> Vec<&'q str> {
        self.arrows.iter().map(|&a| q.arrows()[a].id.as_str()).collect()
    }

    pub fn compose(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&other.arrows);
        Some(Path { start: self.start, arrows })
    }

    /// Deterministic order used everywhere: length, then source, then the
    /// arrow index sequence.
    pub fn order_key(&self) -> (usize, usize, Vec<usize>) {
        (self.len(), self.start, self.arrows.clone())
    }
}

/// Rational combination of parallel paths. All term paths share one
/// (source, target) pair; coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Rat, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rat, Path)>, q: &Quiver) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidRelation("no terms".into()));
        }
        if terms.iter().any(|(c, _)| c.is_zero()) {
            return Err(Error::InvalidRelation("zero coefficient".into()));
        }
        let src = terms[0].1.source();
        let tgt = terms[0].1.target(q);
        for (_, p) in &terms[1..] {
            if p.source() != src || p.target(q) != tgt {
                return Err(Error::InvalidRelation(format!(
                    "terms are not parallel: ({}, {}) vs ({}, {})",
                    q.vertex_label(src),
                    q.vertex_label(tgt),
                    q.vertex_label(p.source()),
                    q.vertex_label(p.target(q)),
                )));
            }
        }
        Ok(Self { terms })
    }

    pub fn monomial(path: Path, q: &Quiver) -> Result<Self> {
        Self::new(vec![(num::One::one(), path)], q)
    }

    pub fn terms(&self) -> &[(Rat, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.terms[0].1.target(q)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

// JSON schema shared with the CLI:
// {"vertices":[..], "arrows":[{"id","src","tgt"}], "relations":[{"terms":[{"coeff","path"}]}]}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

impl QuiverSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<(Quiver, Vec<Relation>)> {
        let quiver = Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
                .collect(),
        )?;
        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut terms = Vec::new();
            for t in &rel.terms {
                if t.path.is_empty() {
                    return Err(Error::Parse("relation term with empty path".into()));
                }
                let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((parse_rat(&t.coeff)?, quiver.path(&ids)?));
            }
            relations.push(Relation::new(terms, &quiver)?);
        }
        Ok((quiver, relations))
    }

    pub fn encode(quiver: &Quiver, relations: &[Relation]) -> Self {
        Self {
            vertices: quiver.vertices().to_vec(),
            arrows: quiver
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: quiver.vertex_label(a.src).into(),
                    tgt: quiver.vertex_label(a.tgt).into(),
                })
                .collect(),
            relations: relations
                .iter()
                .map(|r| RelationSpec {
                    terms: r
                        .terms()
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: c.to_string(),
                            path: p.arrow_ids(quiver).iter().map(|s| s.to_string()).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
