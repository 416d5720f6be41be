use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::quivalg::{ArrowSpec, Path, Quiver};
use crate::{Error, Result};

/// Ice quiver with potential: a quiver, a formal sum of signed cyclic
/// paths, a frozen vertex subset, and an optional rotation (a vertex
/// permutation expected to be a quiver automorphism).
///
/// Potential terms are stored with a canonical cyclic rotation (the
/// lexicographically least arrow-index sequence), so equality of potentials
/// is syntactic.
#[derive(Clone, Debug)]
pub struct IceQuiverWithPotential {
    pub quiver: Quiver,
    pub potential: Vec<(i8, Path)>,
    pub frozen: BTreeSet<usize>,
    pub rotation: Option<Vec<usize>>,
}

impl IceQuiverWithPotential {
    pub fn new(
        quiver: Quiver,
        potential: Vec<(i8, Path)>,
        frozen: BTreeSet<usize>,
        rotation: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut canon = Vec::new();
        for (sign, cycle) in potential {
            if sign != 1 && sign != -1 {
                return Err(Error::Parse(format!("potential sign must be +-1, got {sign}")));
            }
            if cycle.is_empty() || cycle.source() != cycle.target(&quiver) {
                return Err(Error::NonCycleTerm(format!(
                    "term through {:?}",
                    quiver.vertex_label(cycle.source())
                )));
            }
            canon.push((sign, canonical_rotation(&cycle, &quiver)));
        }
        for &f in &frozen {
            if f >= quiver.vertex_count() {
                return Err(Error::UnknownVertex(format!("vertex index {f}")));
            }
        }
        if let Some(rot) = &rotation {
            if rot.len() != quiver.vertex_count() {
                return Err(Error::Parse("rotation must map every vertex".into()));
            }
            let mut seen = vec![false; quiver.vertex_count()];
            for &t in rot {
                if t >= quiver.vertex_count() || seen[t] {
                    return Err(Error::Parse("rotation is not a permutation".into()));
                }
                seen[t] = true;
            }
        }
        Ok(Self { quiver, potential: canon, frozen, rotation })
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.quiver.vertex_count())
            .filter(|v| !self.frozen.contains(v))
            .collect()
    }

    /// True iff the declared rotation (or, absent one, some non-identity
    /// degree-preserving vertex permutation found by backtracking) is a
    /// quiver automorphism fixing the frozen set and mapping the potential
    /// to itself up to cyclic rotation of terms.
    pub fn check_symmetry(&self) -> bool {
        match &self.rotation {
            Some(rot) => self.is_symmetry(rot),
            None => self.search_symmetry(),
        }
    }

    fn is_symmetry(&self, rot: &[usize]) -> bool {
        // frozen fixed setwise
        if self.frozen.iter().any(|f| !self.frozen.contains(&rot[*f])) {
            return false;
        }
        let Some(arrow_map) = self.induced_arrow_map(rot) else {
            return false;
        };
        self.potential_invariant(rot, &arrow_map)
    }

    /// Arrow bijection induced by a vertex permutation. With parallel
    /// arrows the choice per parallel class is resolved by backtracking in
    /// `potential_invariant`; here the common case of at most one arrow per
    /// (src, tgt) pair is handled, otherwise arrows are matched in listed
    /// order within each parallel class.
    fn induced_arrow_map(&self, rot: &[usize]) -> Option<Vec<usize>> {
        let q = &self.quiver;
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in q.arrows().iter().enumerate() {
            by_pair.entry((a.src, a.tgt)).or_default().push(i);
        }
        let mut map = vec![usize::MAX; q.arrows().len()];
        for ((src, tgt), class) in &by_pair {
            let image = by_pair.get(&(rot[*src], rot[*tgt]))?;
            if image.len() != class.len() {
                return None;
            }
            for (a, b) in class.iter().zip(image) {
                map[*a] = *b;
            }
        }
        Some(map)
    }

    fn potential_invariant(&self, rot: &[usize], arrow_map: &[usize]) -> bool {
        let q = &self.quiver;
        let mapped: Vec<(i8, Path)> = self
            .potential
            .iter()
            .map(|(sign, cycle)| {
                let arrows: Vec<usize> =
                    cycle.arrow_indices().iter().map(|&a| arrow_map[a]).collect();
                let start = rot[cycle.source()];
                let path = q.path_from_indices(start, arrows).expect("automorphism image");
                (*sign, canonical_rotation(&path, q))
            })
            .collect();
        let mut a = self.potential.clone();
        let mut b = mapped;
        let key = |(s, p): &(i8, Path)| (*s, p.order_key());
        a.sort_by_key(key);
        b.sort_by_key(key);
        a == b
    }

    /// Backtracking over degree-preserving vertex matchings for a
    /// non-identity symmetry.
    fn search_symmetry(&self) -> bool {
        let n = self.quiver.vertex_count();
        let degree = |v: usize| -> (usize, usize, bool) {
            let indeg = self.quiver.arrows().iter().filter(|a| a.tgt == v).count();
            let outdeg = self.quiver.arrows().iter().filter(|a| a.src == v).count();
            (indeg, outdeg, self.frozen.contains(&v))
        };
        let degs: Vec<_> = (0..n).map(degree).collect();
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.backtrack(0, &mut assignment, &mut used, &degs)
    }

    fn backtrack(
        &self,
        v: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        degs: &[(usize, usize, bool)],
    ) -> bool {
        let n = self.quiver.vertex_count();
        if v == n {
            let identity = assignment.iter().enumerate().all(|(i, &t)| i == t);
            return !identity && self.is_symmetry(assignment);
        }
        for t in 0..n {
            if used[t] || degs[v] != degs[t] {
                continue;
            }
            assignment[v] = t;
            used[t] = true;
            if self.backtrack(v + 1, assignment, used, degs) {
                return true;
            }
            used[t] = false;
            assignment[v] = usize::MAX;
        }
        false
    }
}

/// Lexicographically least cyclic rotation of a cyclic path.
pub fn canonical_rotation(cycle: &Path, quiver: &Quiver) -> Path {
    let arrows = cycle.arrow_indices();
    let mut best: Option<Vec<usize>> = None;
    for k in 0..arrows.len() {
        let rotated: Vec<usize> = arrows[k..].iter().chain(&arrows[..k]).copied().collect();
        if best.as_ref().map(|b| rotated < *b).unwrap_or(true) {
            best = Some(rotated);
        }
    }
    let rotated = best.expect("cycles are nonempty");
    let start = quiver.arrows()[rotated[0]].src;
    quiver.path_from_indices(start, rotated).expect("rotation of a cycle is a cycle")
}

// JSON schema: quiver fields plus potential/frozen/rotation.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IqpSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub potential: Vec<PotentialTermSpec>,
    #[serde(default)]
    pub frozen: Vec<String>,
    #[serde(default)]
    pub rotation: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialTermSpec {
    pub sign: i8,
    pub cycle: Vec<String>,
}

/// Parses and validates an ice quiver with potential from JSON.
pub fn parse_iqp(json: &str) -> Result<IceQuiverWithPotential> {
    let spec: IqpSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let quiver = Quiver::new(
        spec.vertices.clone(),
        spec.arrows
            .iter()
            .map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
            .collect(),
    )?;
    let mut potential = Vec::new();
    for term in &spec.potential {
        if term.cycle.is_empty() {
            return Err(Error::NonCycleTerm("empty cycle".into()));
        }
        let ids: Vec<&str> = term.cycle.iter().map(String::as_str).collect();
        let path = quiver.path(&ids)?;
        potential.push((term.sign, path));
    }
    let mut frozen = BTreeSet::new();
    for f in &spec.frozen {
        frozen.insert(quiver.vertex(f)?);
    }
    let rotation = match &spec.rotation {
        None => None,
        Some(map) => {
            let mut rot = vec![usize::MAX; quiver.vertex_count()];
            for (from, to) in map {
                rot[quiver.vertex(from)?] = quiver.vertex(to)?;
            }
            if rot.contains(&usize::MAX) {
                return Err(Error::Parse("rotation must map every vertex".into()));
            }
            Some(rot)
        }
    };
    IceQuiverWithPotential::new(quiver, potential, frozen, rotation)
}
