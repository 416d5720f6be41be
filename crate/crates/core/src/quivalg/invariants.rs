use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{AlgebraElement, BasisLabel, FDAlgebra};
use super::quiver::Quiver;
use crate::exactla::{Rat, RationalMatrix, Subspace};
use crate::{Error, Result};

impl FDAlgebra {
    /// Cartan matrix: entry `(i, j)` counts basis monomials from vertex `i`
    /// to vertex `j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0i64; n]; n];
        for b in self.basis() {
            c[b.src][b.tgt] += 1;
        }
        c
    }

    /// Jacobson radical via the characteristic-zero trace criterion:
    /// `x` is in the radical iff the left-regular trace of `x * b` vanishes
    /// for every basis element `b`. When the span of the basis monomials of
    /// length >= 1 is nilpotent (admissible-type presentation) the two
    /// computations are cross-checked and must agree.
    pub fn radical(&self) -> Subspace {
        let d = self.dim();
        // trace of left multiplication by each basis element
        let traces: Vec<Rat> = (0..d)
            .map(|t| {
                let mut tr = Rat::zero();
                for j in 0..d {
                    for (k, c) in self.basis_product(t, j) {
                        if *k == j {
                            tr += c;
                        }
                    }
                }
                tr
            })
            .collect();
        // system: for each basis y, sum_i x_i tr(L_{b_i y}) = 0
        let mut m = RationalMatrix::zero(d, d);
        for y in 0..d {
            for i in 0..d {
                let mut acc = Rat::zero();
                for (t, c) in self.basis_product(i, y) {
                    acc += c * &traces[*t];
                }
                *m.at_mut(y, i) = acc;
            }
        }
        let rad = m.kernel();

        if let Some(arrow_span) = self.nilpotent_arrow_span() {
            assert_eq!(
                rad, arrow_span,
                "trace-criterion radical disagrees with the arrow span on an \
                 admissible-type presentation"
            );
        }
        rad
    }

    /// Span of the basis monomials of positive length, if that span is a
    /// nilpotent ideal; `None` otherwise (non-admissible presentation or
    /// table-backed algebra with non-monomial grading).
    fn nilpotent_arrow_span(&self) -> Option<Subspace> {
        let positive: Vec<usize> = (0..self.dim())
            .filter(|&i| match &self.basis()[i].label {
                BasisLabel::Path(p) => !p.is_empty(),
                BasisLabel::Named(_) => !self.idempotent_indices().contains(&i),
            })
            .collect();
        let span = Subspace::from_rows(
            self.dim(),
            positive.iter().map(|&i| self.basis_element(i).coeffs).collect(),
        );
        let mut power = span.clone();
        for _ in 0..=self.dim() {
            if power.is_zero() {
                return Some(span);
            }
            power = self.subspace_product(&power, &span);
        }
        None
    }

    /// Span of pairwise products of two subspaces.
    pub fn subspace_product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let p = self.mul(
                    &AlgebraElement { algebra_id: self.id(), coeffs: x.clone() },
                    &AlgebraElement { algebra_id: self.id(), coeffs: y.clone() },
                );
                if !self.is_zero_element(&p) {
                    rows.push(p.coeffs);
                }
            }
        }
        Subspace::from_rows(self.dim(), rows)
    }

    /// Descending chain J, J^2, ... ending with the zero subspace.
    pub fn radical_layers(&self) -> Vec<Subspace> {
        let j = self.radical();
        let mut layers = vec![j.clone()];
        while !layers.last().unwrap().is_zero() {
            let next = self.subspace_product(layers.last().unwrap(), &j);
            layers.push(next);
        }
        layers
    }

    /// Socle of the projective `e_v A`: elements of the vertex-v component
    /// killed by right multiplication with the radical, together with the
    /// target vertices of its composition factors.
    pub fn socle_of_projective(&self, v: usize) -> (Subspace, Vec<usize>) {
        let d = self.dim();
        let component: Vec<usize> = (0..d).filter(|&i| self.basis()[i].src == v).collect();
        let rad = self.radical();
        // rows: for each radical generator j, the map x -> x * j restricted
        // to the component
        let mut eqs: Vec<Vec<Rat>> = Vec::new();
        for j in rad.basis() {
            let je = AlgebraElement { algebra_id: self.id(), coeffs: j.clone() };
            let mut rows = vec![vec![Rat::zero(); component.len()]; d];
            for (col, &i) in component.iter().enumerate() {
                let prod = self.mul(&self.basis_element(i), &je);
                for (r, c) in prod.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        rows[r][col] = c.clone();
                    }
                }
            }
            eqs.extend(rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
        }
        let kernel = if eqs.is_empty() {
            Subspace::full(component.len())
        } else {
            RationalMatrix::from_rows(eqs).kernel()
        };
        // lift back into algebra coordinates
        let lifted: Vec<Vec<Rat>> = kernel
            .basis()
            .iter()
            .map(|k| {
                let mut full = vec![Rat::zero(); d];
                for (col, &i) in component.iter().enumerate() {
                    full[i] = k[col].clone();
                }
                full
            })
            .collect();
        let socle = Subspace::from_rows(d, lifted);

        // isotype of a socle vector supported on target w is the simple at w
        let mut isotypes = Vec::new();
        for w in 0..self.vertex_count() {
            let graded: Vec<Vec<Rat>> = socle
                .basis()
                .iter()
                .map(|vec| {
                    let mut g = vec![Rat::zero(); d];
                    for (i, c) in vec.iter().enumerate() {
                        if !c.is_zero() && self.basis()[i].tgt == w {
                            g[i] = c.clone();
                        }
                    }
                    g
                })
                .collect();
            let dim = Subspace::from_rows(d, graded).dim();
            for _ in 0..dim {
                isotypes.push(w);
            }
        }
        (socle, isotypes)
    }

    /// Self-injectivity certificate: a basic algebra is self-injective iff
    /// every indecomposable projective has simple socle and the socle
    /// isotype map is a permutation of the vertices.
    pub fn self_injectivity(&self) -> Result<SelfInjectivity> {
        let rad = self.radical();
        if self.dim() - rad.dim() != self.vertex_count() {
            return Err(Error::NotBasic(format!(
                "dim A/J = {} but the algebra has {} vertices",
                self.dim() - rad.dim(),
                self.vertex_count()
            )));
        }
        let mut image = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() {
            let (socle, isotypes) = self.socle_of_projective(v);
            if socle.dim() != 1 || isotypes.len() != 1 {
                return Ok(SelfInjectivity { self_injective: false, nakayama_permutation: None });
            }
            image.push(isotypes[0]);
        }
        let mut seen = vec![false; self.vertex_count()];
        for &w in &image {
            if seen[w] {
                return Ok(SelfInjectivity { self_injective: false, nakayama_permutation: None });
            }
            seen[w] = true;
        }
        Ok(SelfInjectivity { self_injective: true, nakayama_permutation: Some(image) })
    }

    /// Symmetry probe. A non-identity Nakayama permutation proves the
    /// algebra is not symmetric. Otherwise a seeded random search looks for
    /// a linear functional vanishing on commutators whose Gram form is
    /// nondegenerate; finding one certifies symmetry, exhausting the trials
    /// is inconclusive.
    pub fn symmetry_report(&self, trials: usize, seed: u64) -> SymmetryReport {
        let si = match self.self_injectivity() {
            Ok(si) if si.self_injective => si,
            _ => {
                return SymmetryReport {
                    nakayama_trivial: false,
                    verdict: SymmetryVerdict::NotSymmetric,
                    witness: None,
                }
            }
        };
        let perm = si.nakayama_permutation.as_ref().unwrap();
        let trivial = perm.iter().enumerate().all(|(i, &p)| i == p);
        if !trivial {
            return SymmetryReport {
                nakayama_trivial: false,
                verdict: SymmetryVerdict::NotSymmetric,
                witness: None,
            };
        }

        let d = self.dim();
        // functionals vanishing on all commutators
        let mut comm_rows = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![Rat::zero(); d];
                for (k, c) in self.basis_product(i, j) {
                    row[*k] += c;
                }
                for (k, c) in self.basis_product(j, i) {
                    row[*k] -= c;
                }
                if row.iter().any(|c| !c.is_zero()) {
                    comm_rows.push(row);
                }
            }
        }
        let lam_space = if comm_rows.is_empty() {
            Subspace::full(d)
        } else {
            RationalMatrix::from_rows(comm_rows).kernel()
        };
        if lam_space.is_zero() {
            return SymmetryReport {
                nakayama_trivial: true,
                verdict: SymmetryVerdict::Inconclusive,
                witness: None,
            };
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let lam: Vec<Rat> = {
                let mut acc = vec![Rat::zero(); d];
                for b in lam_space.basis() {
                    let c = Rat::from_integer(rng.gen_range(-9i64..=9).into());
                    for (a, v) in acc.iter_mut().zip(b) {
                        *a += &c * v;
                    }
                }
                acc
            };
            if self.is_symmetric_witness(&lam) {
                return SymmetryReport {
                    nakayama_trivial: true,
                    verdict: SymmetryVerdict::Symmetric,
                    witness: Some(lam),
                };
            }
        }
        SymmetryReport {
            nakayama_trivial: true,
            verdict: SymmetryVerdict::Inconclusive,
            witness: None,
        }
    }

    /// Checks that `lam` vanishes on commutators and that its Gram form is
    /// nondegenerate.
    pub fn is_symmetric_witness(&self, lam: &[Rat]) -> bool {
        let d = self.dim();
        assert_eq!(lam.len(), d);
        let eval = |sv: &[(usize, Rat)]| {
            let mut acc = Rat::zero();
            for (k, c) in sv {
                acc += c * &lam[*k];
            }
            acc
        };
        let mut gram = RationalMatrix::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                let ij = eval(self.basis_product(i, j));
                let ji = eval(self.basis_product(j, i));
                if ij != ji {
                    return false;
                }
                *gram.at_mut(i, j) = ij;
            }
        }
        gram.rank() == d
    }

    /// Dimension of the center, through the commutant of the vertex
    /// idempotents and the arrow classes (generators suffice).
    pub fn center_dimension(&self) -> usize {
        let d = self.dim();
        let mut generators: Vec<AlgebraElement> = self
            .idempotent_indices()
            .iter()
            .map(|&i| self.basis_element(i))
            .collect();
        match self.presentation() {
            Some(pres) => {
                let quiver = pres.quiver.clone();
                for a in quiver.arrows() {
                    let p = quiver.path(&[a.id.as_str()]).unwrap();
                    generators.push(self.nf(&p).unwrap());
                }
            }
            None => {
                // no presentation: commute against the whole basis
                generators = (0..d).map(|i| self.basis_element(i)).collect();
            }
        }

        // iteratively intersect kernels of z -> z g - g z
        let mut space = Subspace::full(d);
        for g in &generators {
            if space.is_zero() {
                break;
            }
            let k = space.dim();
            let mut rows = vec![vec![Rat::zero(); k]; d];
            for (col, b) in space.basis().iter().enumerate() {
                let z = AlgebraElement { algebra_id: self.id(), coeffs: b.clone() };
                let comm = self.add_scaled(&self.mul(&z, g), &self.mul(g, &z), &-Rat::one());
                for (r, c) in comm.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        rows[r][col] = c.clone();
                    }
                }
            }
            let rows: Vec<Vec<Rat>> =
                rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
            let kernel = if rows.is_empty() {
                Subspace::full(k)
            } else {
                RationalMatrix::from_rows(rows).kernel()
            };
            let lifted: Vec<Vec<Rat>> = kernel
                .basis()
                .iter()
                .map(|kv| {
                    let mut full = vec![Rat::zero(); d];
                    for (col, b) in space.basis().iter().enumerate() {
                        if kv[col].is_zero() {
                            continue;
                        }
                        for (slot, bv) in full.iter_mut().zip(b) {
                            *slot += &kv[col] * bv;
                        }
                    }
                    full
                })
                .collect();
            space = Subspace::from_rows(d, lifted);
        }
        space.dim()
    }

    /// Gabriel quiver: one vertex per idempotent, `dim` of the (i, j)
    /// component of J/J^2 many arrows from `i` to `j`.
    pub fn recover_quiver(&self) -> Result<Quiver> {
        let rad = self.radical();
        if self.dim() - rad.dim() != self.vertex_count() {
            return Err(Error::NotBasic("dim A/J must equal the vertex count".into()));
        }
        let rad2 = self.subspace_product(&rad, &rad);
        let n = self.vertex_count();
        let mut arrows = Vec::new();
        let mut counter = 0usize;
        for i in 0..n {
            for j in 0..n {
                let m = self.graded_piece_dim(&rad, i, j) - self.graded_piece_dim(&rad2, i, j);
                for _ in 0..m {
                    arrows.push((
                        format!("a{counter}"),
                        self.vertex_label(i).to_string(),
                        self.vertex_label(j).to_string(),
                    ));
                    counter += 1;
                }
            }
        }
        Quiver::new(self.vertices().to_vec(), arrows)
    }

    /// Dimension of the (u, v)-graded piece of a graded subspace.
    pub fn graded_piece_dim(&self, s: &Subspace, u: usize, v: usize) -> usize {
        let rows: Vec<Vec<Rat>> = s
            .basis()
            .iter()
            .map(|vec| {
                let mut g = vec![Rat::zero(); self.dim()];
                for (i, c) in vec.iter().enumerate() {
                    if !c.is_zero() && self.basis()[i].src == u && self.basis()[i].tgt == v {
                        g[i] = c.clone();
                    }
                }
                g
            })
            .collect();
        Subspace::from_rows(self.dim(), rows).dim()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SelfInjectivity {
    pub self_injective: bool,
    /// Vertex `v` maps to the socle isotype of `e_v A`; present iff
    /// self-injective.
    pub nakayama_permutation: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Symmetric,
    NotSymmetric,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub nakayama_trivial: bool,
    pub verdict: SymmetryVerdict,
    #[serde(skip)]
    pub witness: Option<Vec<Rat>>,
}

/// Radical of a bare multiplication table via the trace criterion (used for
/// locality and isomorphism tests on endomorphism rings before they are
/// packaged as algebras).
pub fn radical_subspace_of_table(table: &[Vec<Vec<(usize, Rat)>>]) -> Subspace {
    let d = table.len();
    let traces: Vec<Rat> = (0..d)
        .map(|t| {
            let mut tr = Rat::zero();
            for j in 0..d {
                for (k, c) in &table[t][j] {
                    if *k == j {
                        tr += c;
                    }
                }
            }
            tr
        })
        .collect();
    let mut m = RationalMatrix::zero(d, d);
    for y in 0..d {
        for i in 0..d {
            let mut acc = Rat::zero();
            for (t, c) in &table[i][y] {
                acc += c * &traces[*t];
            }
            *m.at_mut(y, i) = acc;
        }
    }
    m.kernel()
}

/// Radical dimension of a bare multiplication table.
pub fn radical_dim_of_table(table: &[Vec<Vec<(usize, Rat)>>]) -> usize {
    radical_subspace_of_table(table).dim()
}
