use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use num::{One, Zero};

use super::quiver::{Path, Quiver, Relation};
use crate::exactla::Rat;
use crate::{Error, Result};

/// Sparse coefficient vector over a basis, sorted by index.
pub type SparseVec = Vec<(usize, Rat)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// Normal-form monomial of a presented algebra.
    Path(Path),
    /// Abstract basis element, e.g. a homotopy class of an endomorphism
    /// algebra.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub src: usize,
    pub tgt: usize,
    pub label: BasisLabel,
}

/// Finite-dimensional basic algebra with a fixed basis graded by
/// (source vertex, target vertex), a full multiplication table, and the
/// trivial idempotents as the first basis entries.
///
/// Presented algebras additionally carry their quiver, relations and the
/// normal-form rewriting data; table-backed algebras (endomorphism algebras)
/// do not.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    id: u64,
    vertices: Vec<String>,
    basis: Vec<BasisElem>,
    idempotent: Vec<usize>,
    table: Vec<Vec<SparseVec>>,
    /// basis indices per (src, tgt) vertex pair
    graded: Vec<Vec<Vec<usize>>>,
    presentation: Option<Presentation>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Stabilization level of the truncated ideal computation.
    pub level: usize,
    nf_map: HashMap<Path, SparseVec>,
}

/// Exact-rational coefficient vector over an algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub(crate) algebra_id: u64,
    pub coeffs: Vec<Rat>,
}

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)
}

impl FDAlgebra {
    /// Builds the quotient of the path algebra of `quiver` by the two-sided
    /// ideal generated by `relations`.
    ///
    /// For each level `l` the span of `a * r * b` with every term of length
    /// at most `l` is computed inside the space of paths of length at most
    /// `l`, then saturated under multiplication by arrows within that space.
    /// The basis consists of the pivot-free monomials. The construction
    /// accepts level `L` once no basis monomial has length `L`, every
    /// relation fits below `L`, and the levels `L+1` and `L+2` reproduce the
    /// same basis and structure constants. Associativity and the vanishing
    /// of all input relations are verified on the result.
    pub fn construct(quiver: Quiver, relations: Vec<Relation>, max_len: usize) -> Result<Self> {
        if max_len < 2 {
            return Err(Error::Invalid("max_len must be at least 2".into()));
        }
        for r in &relations {
            if r.terms().iter().any(|(_, p)| p.is_empty()) {
                return Err(Error::InvalidRelation(
                    "relations through trivial paths are not supported".into(),
                ));
            }
        }
        let max_rel_len = relations.iter().map(Relation::max_len).max().unwrap_or(0);

        let mut cache: HashMap<usize, LevelData> = HashMap::new();
        let level = |l: usize, cache: &mut HashMap<usize, LevelData>| -> LevelData {
            cache
                .entry(l)
                .or_insert_with(|| LevelData::compute(&quiver, &relations, l))
                .clone()
        };

        for l in 0..=max_len {
            let data = level(l, &mut cache);
            if l < max_rel_len || data.basis.iter().any(|p| p.len() == l) {
                continue;
            }
            let d1 = level(l + 1, &mut cache);
            if d1.basis != data.basis {
                continue;
            }
            let d2 = level(l + 2, &mut cache);
            if d2.basis != data.basis {
                continue;
            }
            let (Some(t0), Some(t1), Some(t2)) = (
                data.structure_table(&quiver),
                d1.structure_table(&quiver),
                d2.structure_table(&quiver),
            ) else {
                continue;
            };
            if t0 != t1 || t0 != t2 {
                continue;
            }
            return Self::assemble(quiver, relations, data, t0);
        }
        Err(Error::NotStabilized(max_len))
    }

    fn assemble(
        quiver: Quiver,
        relations: Vec<Relation>,
        data: LevelData,
        table: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let vertices = quiver.vertices().to_vec();
        let basis: Vec<BasisElem> = data
            .basis
            .iter()
            .map(|p| BasisElem {
                src: p.source(),
                tgt: p.target(&quiver),
                label: BasisLabel::Path(p.clone()),
            })
            .collect();
        // Trivial paths sort first, one per vertex in vertex order.
        let mut idempotent = Vec::with_capacity(vertices.len());
        for v in 0..vertices.len() {
            let idx = data
                .basis
                .iter()
                .position(|p| p.is_empty() && p.source() == v)
                .ok_or_else(|| {
                    Error::Invalid(format!(
                        "trivial path at vertex {:?} was eliminated; presentation outside \
                         the supported class",
                        vertices[v]
                    ))
                })?;
            idempotent.push(idx);
        }
        let graded = build_graded_index(vertices.len(), &basis);
        let alg = Self {
            id: fresh_id(),
            vertices,
            basis,
            idempotent,
            table,
            graded,
            presentation: Some(Presentation {
                quiver,
                relations,
                level: data.ell,
                nf_map: data.nf_map,
            }),
        };
        alg.verify_axioms()?;
        for r in alg.presentation.as_ref().unwrap().relations.clone() {
            let mut acc = alg.zero_element();
            for (c, p) in r.terms() {
                let e = alg.nf(p)?;
                acc = alg.add_scaled(&acc, &e, c);
            }
            if !alg.is_zero_element(&acc) {
                return Err(Error::Invalid(
                    "relation does not vanish in the constructed algebra".into(),
                ));
            }
        }
        Ok(alg)
    }

    /// Packages an abstract multiplication table as an algebra. Grading and
    /// idempotent axioms plus associativity are verified.
    pub fn from_table(
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        idempotent: Vec<usize>,
        table: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let graded = build_graded_index(vertices.len(), &basis);
        let alg = Self {
            id: fresh_id(),
            vertices,
            basis,
            idempotent,
            table,
            graded,
            presentation: None,
        };
        alg.verify_axioms()?;
        Ok(alg)
    }

    fn verify_axioms(&self) -> Result<()> {
        let n = self.vertices.len();
        if self.idempotent.len() != n {
            return Err(Error::Invalid("one idempotent per vertex required".into()));
        }
        for (v, &i) in self.idempotent.iter().enumerate() {
            let b = &self.basis[i];
            if b.src != v || b.tgt != v {
                return Err(Error::Invalid("idempotents must be graded (v, v)".into()));
            }
        }
        // grading of products and orthogonality of the idempotents
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let prod = &self.table[i][j];
                if self.basis[i].tgt != self.basis[j].src {
                    if !prod.is_empty() {
                        return Err(Error::Invalid("incomposable product is nonzero".into()));
                    }
                    continue;
                }
                for (k, _) in prod {
                    if self.basis[*k].src != self.basis[i].src
                        || self.basis[*k].tgt != self.basis[j].tgt
                    {
                        return Err(Error::Invalid("product violates the grading".into()));
                    }
                }
            }
        }
        for (u, &eu) in self.idempotent.iter().enumerate() {
            for (v, &ev) in self.idempotent.iter().enumerate() {
                let prod = &self.table[eu][ev];
                let expect: SparseVec =
                    if u == v { vec![(eu, Rat::one())] } else { Vec::new() };
                if *prod != expect {
                    return Err(Error::Invalid("idempotents are not orthogonal".into()));
                }
            }
        }
        // the idempotents act as left/right units on the basis
        for (i, b) in self.basis.iter().enumerate() {
            let unit: SparseVec = vec![(i, Rat::one())];
            if self.table[self.idempotent[b.src]][i] != unit
                || self.table[i][self.idempotent[b.tgt]] != unit
            {
                return Err(Error::Invalid("idempotents do not act as units".into()));
            }
        }
        self.verify_associativity()
    }

    fn verify_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.basis[i].tgt != self.basis[j].src {
                    continue;
                }
                let ij = self.table[i][j].clone();
                for k in 0..d {
                    if self.basis[j].tgt != self.basis[k].src {
                        continue;
                    }
                    let unit_k: SparseVec = vec![(k, Rat::one())];
                    let unit_i: SparseVec = vec![(i, Rat::one())];
                    let left = self.mul_sparse(&ij, &unit_k);
                    let right = self.mul_sparse(&unit_i, &self.table[j][k].clone());
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownVertex(label.into()))
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn idempotent_indices(&self) -> &[usize] {
        &self.idempotent
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn quiver(&self) -> Option<&Quiver> {
        self.presentation.as_ref().map(|p| &p.quiver)
    }

    /// Basis indices of the graded component from vertex `u` to vertex `v`.
    pub fn graded_component(&self, u: usize, v: usize) -> &[usize] {
        &self.graded[u][v]
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement { algebra_id: self.id, coeffs: vec![Rat::zero(); self.dim()] }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut e = self.zero_element();
        e.coeffs[i] = Rat::one();
        e
    }

    pub fn idempotent_element(&self, v: usize) -> AlgebraElement {
        self.basis_element(self.idempotent[v])
    }

    pub fn one(&self) -> AlgebraElement {
        let mut e = self.zero_element();
        for &i in &self.idempotent {
            e.coeffs[i] = Rat::one();
        }
        e
    }

    pub fn is_zero_element(&self, e: &AlgebraElement) -> bool {
        e.coeffs.iter().all(Rat::is_zero)
    }

    pub fn check_element(&self, e: &AlgebraElement) -> Result<()> {
        if e.algebra_id != self.id || e.coeffs.len() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add_scaled(&self, a: &AlgebraElement, b: &AlgebraElement, c: &Rat) -> AlgebraElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + c * y)
            .collect();
        AlgebraElement { algebra_id: self.id, coeffs }
    }

    pub fn scale(&self, a: &AlgebraElement, c: &Rat) -> AlgebraElement {
        AlgebraElement {
            algebra_id: self.id,
            coeffs: a.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product in the algebra; multiplication is left-to-right like path
    /// composition.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let sa: SparseVec = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let sb: SparseVec = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let prod = self.mul_sparse(&sa, &sb);
        let mut out = self.zero_element();
        for (i, c) in prod {
            out.coeffs[i] = c;
        }
        out
    }

    fn mul_sparse(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, ca) in a {
            for (j, cb) in b {
                if self.basis[*i].tgt != self.basis[*j].src {
                    continue;
                }
                let c = ca * cb;
                for (k, ck) in &self.table[*i][*j] {
                    let slot = acc.entry(*k).or_insert_with(Rat::zero);
                    *slot += &c * ck;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Normal form of a path of arbitrary length as an element. Presented
    /// algebras only.
    pub fn nf(&self, path: &Path) -> Result<AlgebraElement> {
        let pres = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::Invalid("algebra carries no presentation".into()))?;
        let mut memo: HashMap<Path, Option<SparseVec>> = HashMap::new();
        let sv = reduce_path(path, pres.level, &pres.nf_map, &basis_paths(self), &pres.quiver, &mut memo)
            .ok_or_else(|| Error::Invalid("path does not reduce at the stabilized level".into()))?;
        let mut out = self.zero_element();
        for (i, c) in sv {
            out.coeffs[i] = c;
        }
        Ok(out)
    }

    /// Element from a rational combination of paths.
    pub fn element_from_terms(&self, terms: &[(Rat, Path)]) -> Result<AlgebraElement> {
        let mut acc = self.zero_element();
        for (c, p) in terms {
            let e = self.nf(p)?;
            acc = self.add_scaled(&acc, &e, c);
        }
        Ok(acc)
    }

    /// (source, target) grading of an element, `None` for zero or mixed.
    pub fn element_grading(&self, e: &AlgebraElement) -> Option<(usize, usize)> {
        let mut grade = None;
        for (i, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = (self.basis[i].src, self.basis[i].tgt);
            match grade {
                None => grade = Some(g),
                Some(h) if h == g => {}
                _ => return None,
            }
        }
        grade
    }
}

fn build_graded_index(vertex_count: usize, basis: &[BasisElem]) -> Vec<Vec<Vec<usize>>> {
    let mut graded = vec![vec![Vec::new(); vertex_count]; vertex_count];
    for (i, b) in basis.iter().enumerate() {
        graded[b.src][b.tgt].push(i);
    }
    graded
}

fn basis_paths(alg: &FDAlgebra) -> Vec<Path> {
    alg.basis
        .iter()
        .map(|b| match &b.label {
            BasisLabel::Path(p) => p.clone(),
            BasisLabel::Named(_) => unreachable!("presented algebras have path labels"),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// truncated ideal computation

#[derive(Clone)]
struct LevelData {
    ell: usize,
    /// Pivot-free monomials at this level, in (length, source, lex) order.
    basis: Vec<Path>,
    /// Normal form of every path of length <= ell over `basis`.
    nf_map: HashMap<Path, SparseVec>,
}

impl LevelData {
    fn compute(quiver: &Quiver, relations: &[Relation], ell: usize) -> Self {
        // Paths of length <= ell, indexed in degree-descending order so that
        // echelon pivots are the longest monomials of each row.
        let mut paths = enumerate_paths(quiver, ell);
        paths.sort_by_key(|p| {
            let (l, s, a) = p.order_key();
            (Reverse(l), s, a)
        });
        let col_of: HashMap<Path, usize> =
            paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let by_target: Vec<Vec<usize>> = {
            let mut v = vec![Vec::new(); quiver.vertex_count()];
            for (i, p) in paths.iter().enumerate() {
                v[p.target(quiver)].push(i);
            }
            v
        };
        let by_source: Vec<Vec<usize>> = {
            let mut v = vec![Vec::new(); quiver.vertex_count()];
            for (i, p) in paths.iter().enumerate() {
                v[p.source()].push(i);
            }
            v
        };

        let mut ech = EchelonSet::new();

        // span of a * r * b with every term inside the level
        for r in relations {
            let m = r.max_len();
            if m > ell {
                continue;
            }
            for &ai in &by_target[r.source()] {
                let a = &paths[ai];
                if a.len() + m > ell {
                    continue;
                }
                for &bi in &by_source[r.target(quiver)] {
                    let b = &paths[bi];
                    if a.len() + m + b.len() > ell {
                        continue;
                    }
                    let mut vec: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (c, t) in r.terms() {
                        let p = a.compose(t, quiver).unwrap().compose(b, quiver).unwrap();
                        let col = col_of[&p];
                        *vec.entry(col).or_insert_with(Rat::zero) += c;
                    }
                    ech.insert(vec);
                }
            }
        }

        // Saturate: multiply rows that fit inside length ell-1 by arrows on
        // both sides until the rank is stable. This recovers ideal elements
        // whose product expression would overflow the level.
        loop {
            let before = ech.rows.len();
            for ri in 0..ech.rows.len() {
                let row = ech.rows[ri].clone();
                if paths[row[0].0].len() + 1 > ell {
                    continue;
                }
                for arrow_idx in 0..quiver.arrows().len() {
                    for side in [Side::Left, Side::Right] {
                        let prod = row_times_arrow(&row, arrow_idx, side, &paths, &col_of, quiver);
                        if !prod.is_empty() {
                            ech.insert(prod);
                        }
                    }
                }
            }
            if ech.rows.len() == before {
                break;
            }
        }

        let mut basis: Vec<Path> = paths
            .iter()
            .enumerate()
            .filter(|(i, _)| !ech.pivot_of.contains_key(i))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by_key(Path::order_key);
        let basis_index: HashMap<Path, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        let mut nf_map: HashMap<Path, SparseVec> = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            nf_map.insert(p.clone(), vec![(i, Rat::one())]);
        }
        for row in &ech.rows {
            let pivot = &paths[row[0].0];
            let mut tail: SparseVec = row[1..]
                .iter()
                .map(|(c, v)| (basis_index[&paths[*c]], -v.clone()))
                .collect();
            tail.sort_by_key(|(i, _)| *i);
            nf_map.insert(pivot.clone(), tail);
        }

        Self { ell, basis, nf_map }
    }

    /// Structure constants on the level basis, `None` if a product cannot be
    /// rewritten strictly downward at this level.
    fn structure_table(&self, quiver: &Quiver) -> Option<Vec<Vec<SparseVec>>> {
        let n = self.basis.len();
        let mut memo: HashMap<Path, Option<SparseVec>> = HashMap::new();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let Some(p) = self.basis[i].compose(&self.basis[j], quiver) else {
                    continue;
                };
                table[i][j] =
                    reduce_path(&p, self.ell, &self.nf_map, &self.basis, quiver, &mut memo)?;
            }
        }
        Some(table)
    }
}

/// Fully reduces a path of arbitrary length to a combination of basis
/// monomials by rewriting length-`ell` prefixes; every rewriting step
/// strictly shortens the terms.
fn reduce_path(
    path: &Path,
    ell: usize,
    nf_map: &HashMap<Path, SparseVec>,
    basis: &[Path],
    quiver: &Quiver,
    memo: &mut HashMap<Path, Option<SparseVec>>,
) -> Option<SparseVec> {
    if let Some(sv) = nf_map.get(path) {
        return Some(sv.clone());
    }
    if path.len() <= ell {
        return None;
    }
    if let Some(hit) = memo.get(path) {
        return hit.clone();
    }
    let arrows = path.arrow_indices();
    let prefix = quiver
        .path_from_indices(path.source(), arrows[..ell].to_vec())
        .expect("prefix of a valid path");
    let rest = arrows[ell..].to_vec();
    let pre = nf_map.get(&prefix)?.clone();
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (bidx, c) in &pre {
        let m = &basis[*bidx];
        if m.len() >= ell {
            memo.insert(path.clone(), None);
            return None;
        }
        let longer = quiver
            .path_from_indices(m.source(), m.arrow_indices().iter().chain(&rest).copied().collect())
            .expect("rewritten terms stay composable");
        let sub = reduce_path(&longer, ell, nf_map, basis, quiver, memo)?;
        for (k, v) in sub {
            *acc.entry(k).or_insert_with(Rat::zero) += c * &v;
        }
    }
    let out: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    memo.insert(path.clone(), Some(out.clone()));
    Some(out)
}

fn enumerate_paths(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..quiver.vertex_count())
        .map(|v| quiver.trivial_path(v))
        .collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let at = p.target(quiver);
            for (ai, arrow) in quiver.arrows().iter().enumerate() {
                if arrow.src == at {
                    let mut arrows = p.arrow_indices().to_vec();
                    arrows.push(ai);
                    next.push(quiver.path_from_indices(p.source(), arrows).unwrap());
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    all
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn row_times_arrow(
    row: &SparseVec,
    arrow_idx: usize,
    side: Side,
    paths: &[Path],
    col_of: &HashMap<Path, usize>,
    quiver: &Quiver,
) -> BTreeMap<usize, Rat> {
    let arrow = &quiver.arrows()[arrow_idx];
    let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
    for (col, c) in row {
        let p = &paths[*col];
        let prod = match side {
            Side::Left => {
                if arrow.tgt != p.source() {
                    continue;
                }
                let mut arrows = vec![arrow_idx];
                arrows.extend(p.arrow_indices());
                quiver.path_from_indices(arrow.src, arrows).unwrap()
            }
            Side::Right => {
                if p.target(quiver) != arrow.src {
                    continue;
                }
                let mut arrows = p.arrow_indices().to_vec();
                arrows.push(arrow_idx);
                quiver.path_from_indices(p.source(), arrows).unwrap()
            }
        };
        let Some(&ncol) = col_of.get(&prod) else {
            continue;
        };
        *out.entry(ncol).or_insert_with(Rat::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Incremental reduced echelon set over a fixed column order. Rows are
/// sorted sparse vectors with pivot first and a fully reduced tail.
struct EchelonSet {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl EchelonSet {
    fn new() -> Self {
        Self { rows: Vec::new(), pivot_of: HashMap::new() }
    }

    fn insert(&mut self, mut v: BTreeMap<usize, Rat>) -> bool {
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| self.pivot_of.contains_key(c))
                .map(|(c, f)| (*c, f.clone()));
            let Some((col, factor)) = hit else {
                break;
            };
            let row = self.rows[self.pivot_of[&col]].clone();
            for (rc, rv) in &row {
                let slot = v.entry(*rc).or_insert_with(Rat::zero);
                *slot -= &factor * rv;
            }
            v.retain(|_, c| !c.is_zero());
        }
        if v.is_empty() {
            return false;
        }
        let (&pivot, _) = v.iter().next().unwrap();
        let lead = v[&pivot].clone();
        let mut row: SparseVec = v.into_iter().map(|(c, val)| (c, val / &lead)).collect();
        row.sort_by_key(|(c, _)| *c);

        // eliminate the new pivot from existing tails
        for other in &mut self.rows {
            let Some(pos) = other.iter().position(|(c, _)| *c == pivot) else {
                continue;
            };
            let f = other[pos].1.clone();
            let mut merged: BTreeMap<usize, Rat> = other.drain(..).collect();
            for (rc, rv) in &row {
                let slot = merged.entry(*rc).or_insert_with(Rat::zero);
                *slot -= &f * rv;
            }
            merged.retain(|_, c| !c.is_zero());
            *other = merged.into_iter().collect();
        }

        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }
}
