use num::{One, Zero};

use super::complex::{BoundedComplex, ChainTuple};
use super::module::{ProjMap, ProjModule};
use crate::exactla::{Rat, RationalMatrix, Subspace};
use crate::quivalg::AlgebraElement;
use crate::{Error, Result};

/// Basis of the module Hom-space `Hom_A(p, q)`: one map per target row,
/// source column and graded basis monomial.
pub fn hom_space(p: &ProjModule, q: &ProjModule) -> Result<Vec<ProjMap>> {
    if !p.same_algebra(q) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = p.algebra().clone();
    let mut out = Vec::new();
    for t in 0..q.rank() {
        for s in 0..p.rank() {
            for &b in alg.graded_component(q.vertices()[t], p.vertices()[s]) {
                let mut entries = vec![vec![alg.zero_element(); p.rank()]; q.rank()];
                entries[t][s] = alg.basis_element(b);
                out.push(ProjMap::new(p.clone(), q.clone(), entries)?);
            }
        }
    }
    Ok(out)
}

/// Coordinate layout for degreewise map tuples `X_i -> Y_{i - shift}`.
#[derive(Clone, Debug)]
pub struct MapLayout {
    shift: i64,
    degrees: Vec<DegreeLayout>,
    total: usize,
}

#[derive(Clone, Debug)]
struct DegreeLayout {
    deg: i64,
    src: ProjModule,
    tgt: ProjModule,
    /// (target row, source column, algebra basis index)
    slots: Vec<(usize, usize, usize)>,
    offset: usize,
}

impl MapLayout {
    fn build(x: &BoundedComplex, y_shifted: &BoundedComplex, shift: i64) -> Self {
        let alg = x.algebra().clone();
        let mut degrees = Vec::new();
        let mut offset = 0;
        let lo = x.min_deg().min(y_shifted.min_deg());
        let hi = x.max_deg().max(y_shifted.max_deg());
        for deg in lo..=hi {
            let src = x.module_at(deg);
            let tgt = y_shifted.module_at(deg);
            if src.is_zero() || tgt.is_zero() {
                continue;
            }
            let mut slots = Vec::new();
            for t in 0..tgt.rank() {
                for s in 0..src.rank() {
                    for &b in alg.graded_component(tgt.vertices()[t], src.vertices()[s]) {
                        slots.push((t, s, b));
                    }
                }
            }
            let len = slots.len();
            degrees.push(DegreeLayout { deg, src, tgt, slots, offset });
            offset += len;
        }
        Self { shift, degrees, total: offset }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Flattens a tuple into layout coordinates. Components outside the
    /// layout must be zero; entries must respect the grading.
    pub fn tuple_to_coords(&self, tuple: &ChainTuple) -> Result<Vec<Rat>> {
        let mut coords = vec![Rat::zero(); self.total];
        for dl in &self.degrees {
            let alg = dl.src.algebra();
            let Some(matrix) = tuple.component(dl.deg) else {
                continue;
            };
            if matrix.len() != dl.tgt.rank()
                || matrix.iter().any(|row| row.len() != dl.src.rank())
            {
                return Err(Error::Invalid(format!(
                    "component at degree {} has the wrong shape",
                    dl.deg
                )));
            }
            // validate support before reading slot coordinates
            for (t, row) in matrix.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    alg.check_element(e)?;
                    if alg.is_zero_element(e) {
                        continue;
                    }
                    let comp = alg.graded_component(dl.tgt.vertices()[t], dl.src.vertices()[s]);
                    for (i, c) in e.coeffs.iter().enumerate() {
                        if !c.is_zero() && !comp.contains(&i) {
                            return Err(Error::Invalid(format!(
                                "entry ({t}, {s}) at degree {} lies outside its graded \
                                 component",
                                dl.deg
                            )));
                        }
                    }
                }
            }
            for (k, (t, s, b)) in dl.slots.iter().enumerate() {
                coords[dl.offset + k] = matrix[*t][*s].coeffs[*b].clone();
            }
        }
        // reject nonzero components at inactive degrees
        for (&deg, matrix) in tuple.components() {
            if self.degrees.iter().any(|dl| dl.deg == deg) {
                continue;
            }
            for row in matrix {
                for e in row {
                    if !e.coeffs.iter().all(Rat::is_zero) {
                        return Err(Error::Invalid(format!(
                            "nonzero component at inactive degree {deg}"
                        )));
                    }
                }
            }
        }
        Ok(coords)
    }

    pub fn coords_to_tuple(&self, coords: &[Rat]) -> ChainTuple {
        assert_eq!(coords.len(), self.total);
        let mut tuple = ChainTuple::empty();
        for dl in &self.degrees {
            let alg = dl.src.algebra();
            let mut matrix = vec![vec![alg.zero_element(); dl.src.rank()]; dl.tgt.rank()];
            for (k, (t, s, b)) in dl.slots.iter().enumerate() {
                if !coords[dl.offset + k].is_zero() {
                    matrix[*t][*s].coeffs[*b] = coords[dl.offset + k].clone();
                }
            }
            tuple.insert(dl.deg, matrix);
        }
        tuple
    }

    fn component_as_map(&self, tuple: &ChainTuple, deg: i64) -> Option<ProjMap> {
        let dl = self.degrees.iter().find(|dl| dl.deg == deg)?;
        let alg = dl.src.algebra().clone();
        let matrix = tuple.component(deg).cloned().unwrap_or_else(|| {
            vec![vec![alg.zero_element(); dl.src.rank()]; dl.tgt.rank()]
        });
        ProjMap::new(dl.src.clone(), dl.tgt.clone(), matrix).ok()
    }
}

/// Solution space of the chain-map equation for maps of the given shift:
/// `f_{i-1} d^X_i = d^{Y[shift]}_i f_i`, with the shift negating the
/// differentials of `Y` in odd shifts.
pub fn chain_maps(
    x: &BoundedComplex,
    y: &BoundedComplex,
    shift: i64,
) -> Result<(Subspace, MapLayout)> {
    if x.algebra().id() != y.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    let ys = y.shift(shift);
    let layout = MapLayout::build(x, &ys, shift);
    let n = layout.dim();
    if n == 0 {
        return Ok((Subspace::zero(0), layout));
    }

    // rows of the equation system, one block per degree with both sides
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let lo = x.min_deg().min(ys.min_deg());
    let hi = x.max_deg().max(ys.max_deg()) + 1;
    for i in lo..=hi {
        let src = x.module_at(i);
        let tgt = ys.module_at(i - 1);
        if src.is_zero() || tgt.is_zero() {
            continue;
        }
        let eq_basis = hom_slots(&src, &tgt);
        if eq_basis.is_empty() {
            continue;
        }
        let mut block = vec![vec![Rat::zero(); n]; eq_basis.len()];
        for dl in &layout.degrees {
            for (k, (t, s, b)) in dl.slots.iter().enumerate() {
                let col = dl.offset + k;
                let alg = dl.src.algebra().clone();
                let mut unit = vec![vec![alg.zero_element(); dl.src.rank()]; dl.tgt.rank()];
                unit[*t][*s] = alg.basis_element(*b);
                let unit = ProjMap::new(dl.src.clone(), dl.tgt.clone(), unit)?;

                // f_{i-1} o d^X_i with f at degree i-1
                if dl.deg == i - 1 {
                    if let Some(dx) = x.diff_at(i) {
                        let comp = unit.compose(dx)?;
                        accumulate(&mut block, &eq_basis, &comp, col, false);
                    }
                }
                // - d^{ys}_i o f_i with f at degree i
                if dl.deg == i {
                    if let Some(dy) = ys.diff_at(i) {
                        let comp = dy.compose(&unit)?;
                        accumulate(&mut block, &eq_basis, &comp, col, true);
                    }
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }

    let space = if rows.is_empty() {
        Subspace::full(n)
    } else {
        RationalMatrix::from_rows(rows).kernel()
    };
    Ok((space, layout))
}

fn hom_slots(src: &ProjModule, tgt: &ProjModule) -> Vec<(usize, usize, usize)> {
    let alg = src.algebra();
    let mut slots = Vec::new();
    for t in 0..tgt.rank() {
        for s in 0..src.rank() {
            for &b in alg.graded_component(tgt.vertices()[t], src.vertices()[s]) {
                slots.push((t, s, b));
            }
        }
    }
    slots
}

fn accumulate(
    block: &mut [Vec<Rat>],
    eq_basis: &[(usize, usize, usize)],
    map: &ProjMap,
    col: usize,
    negate: bool,
) {
    for (row, (t, s, b)) in eq_basis.iter().enumerate() {
        let c = &map.entries()[*t][*s].coeffs[*b];
        if !c.is_zero() {
            let v = if negate { -c.clone() } else { c.clone() };
            block[row][col] = &block[row][col] + &v;
        }
    }
}

/// Hom space in the homotopy category: chain maps modulo the image of the
/// operator `h -> d h + h d`, with lifted representatives.
pub struct HomotopySpace {
    layout: MapLayout,
    chain: Subspace,
    null: Subspace,
    reps: Vec<Vec<Rat>>,
    quot: RationalMatrix,
}

pub fn homotopy_hom(x: &BoundedComplex, y: &BoundedComplex, shift: i64) -> Result<HomotopySpace> {
    homotopy_hom_with_preferred(x, y, shift, &[])
}

/// Same as [`homotopy_hom`], but representative selection starts from the
/// given chain vectors (used to put identity classes first in endomorphism
/// pieces).
pub fn homotopy_hom_with_preferred(
    x: &BoundedComplex,
    y: &BoundedComplex,
    shift: i64,
    preferred: &[Vec<Rat>],
) -> Result<HomotopySpace> {
    let (chain, layout) = chain_maps(x, y, shift)?;
    let ys = y.shift(shift);
    let n = layout.dim();

    // homotopy operator columns
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    let lo = x.min_deg().min(ys.min_deg()) - 1;
    let hi = x.max_deg().max(ys.max_deg()) + 1;
    for j in lo..=hi {
        let hsrc = x.module_at(j);
        let htgt = ys.module_at(j + 1);
        if hsrc.is_zero() || htgt.is_zero() {
            continue;
        }
        for (t, s, b) in hom_slots(&hsrc, &htgt) {
            let alg = hsrc.algebra().clone();
            let mut unit = vec![vec![alg.zero_element(); hsrc.rank()]; htgt.rank()];
            unit[t][s] = alg.basis_element(b);
            let h = ProjMap::new(hsrc.clone(), htgt.clone(), unit)?;

            let mut image = ChainTuple::empty();
            // d^{ys}_{j+1} o h_j lands in degree j
            if let Some(dy) = ys.diff_at(j + 1) {
                let m = dy.compose(&h)?;
                image.insert(j, m.entries().clone());
            }
            // h_j o d^X_{j+1} lands in degree j + 1
            if let Some(dx) = x.diff_at(j + 1) {
                let m = h.compose(dx)?;
                merge_component(&mut image, j + 1, m);
            }
            let coords = layout.tuple_to_coords(&image)?;
            if coords.iter().any(|c| !c.is_zero()) {
                cols.push(coords);
            }
        }
    }

    let null = if n == 0 { Subspace::zero(0) } else { Subspace::from_rows(n, cols) };
    assert!(
        chain.contains_subspace(&null),
        "null homotopies must be chain maps"
    );

    // representative selection: preferred vectors first, then chain basis
    let mut span = null.clone();
    let mut reps = Vec::new();
    for v in preferred.iter().chain(chain.basis()) {
        if !span.contains(v) {
            span = span.sum(&Subspace::from_rows(n, vec![v.clone()]));
            reps.push(v.clone());
        }
    }
    // coordinate map onto the chosen representatives
    let quot = quotient_map_for_reps(&chain, &null, &reps);
    Ok(HomotopySpace { layout, chain, null, reps, quot })
}

fn quotient_map_for_reps(
    chain: &Subspace,
    null: &Subspace,
    reps: &[Vec<Rat>],
) -> RationalMatrix {
    let n = chain.ambient_dim();
    if reps.is_empty() {
        return RationalMatrix::zero(0, n);
    }
    // complete [null | reps] to a basis of the full space and invert
    let mut cols: Vec<Vec<Rat>> = null.basis().to_vec();
    cols.extend(reps.iter().cloned());
    let mut span = Subspace::from_rows(n, cols.clone());
    for i in 0..n {
        if span.dim() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        if !span.contains(&e) {
            span = span.sum(&Subspace::from_rows(n, vec![e.clone()]));
            cols.push(e);
        }
    }
    let mat = RationalMatrix::from_rows(cols).transpose();
    // rows of the inverse matching the representative block
    let aug = {
        let mut aug = RationalMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = mat.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rat::one();
        }
        let (red, pivots) = aug.rref();
        assert_eq!(pivots.len(), n);
        red
    };
    let mut rows = Vec::with_capacity(reps.len());
    for r in null.dim()..null.dim() + reps.len() {
        rows.push((0..n).map(|c| aug.at(r, n + c).clone()).collect());
    }
    RationalMatrix::from_rows(rows)
}

impl HomotopySpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn chain_dim(&self) -> usize {
        self.chain.dim()
    }

    pub fn null_dim(&self) -> usize {
        self.null.dim()
    }

    pub fn layout(&self) -> &MapLayout {
        &self.layout
    }

    pub fn representatives(&self) -> Vec<ChainTuple> {
        self.reps.iter().map(|r| self.layout.coords_to_tuple(r)).collect()
    }

    pub fn representative(&self, k: usize) -> ChainTuple {
        self.layout.coords_to_tuple(&self.reps[k])
    }

    /// Coordinates of the homotopy class of a chain-map tuple over the
    /// representative basis.
    pub fn class_coords(&self, tuple: &ChainTuple) -> Result<Vec<Rat>> {
        let v = self.layout.tuple_to_coords(tuple)?;
        if !self.chain.contains(&v) {
            return Err(Error::Invalid("tuple is not a chain map".into()));
        }
        Ok(self.quot.mul_vec(&v))
    }

    pub fn is_null(&self, tuple: &ChainTuple) -> Result<bool> {
        Ok(self.class_coords(tuple)?.iter().all(Rat::is_zero))
    }

    /// Lifts class coordinates back to a representative tuple.
    pub fn tuple_from_class(&self, coords: &[Rat]) -> ChainTuple {
        assert_eq!(coords.len(), self.reps.len());
        let mut acc = vec![Rat::zero(); self.layout.dim()];
        for (c, r) in coords.iter().zip(&self.reps) {
            for (slot, v) in acc.iter_mut().zip(r) {
                *slot += c * v;
            }
        }
        self.layout.coords_to_tuple(&acc)
    }
}

fn merge_component(tuple: &mut ChainTuple, deg: i64, map: ProjMap) {
    let alg = map.source().algebra().clone();
    match tuple.component(deg).cloned() {
        None => tuple.insert(deg, map.entries().clone()),
        Some(existing) => {
            let merged = existing
                .iter()
                .zip(map.entries())
                .map(|(ra, rb)| {
                    ra.iter()
                        .zip(rb)
                        .map(|(a, b)| alg.add_scaled(a, b, &Rat::one()))
                        .collect()
                })
                .collect();
            tuple.insert(deg, merged);
        }
    }
}

/// Chain map with a chosen representative; the chain-map equation is
/// validated on construction.
#[derive(Clone, Debug)]
pub struct HomotopyClass {
    x: BoundedComplex,
    y: BoundedComplex,
    shift: i64,
    tuple: ChainTuple,
}

impl HomotopyClass {
    pub fn new(
        x: BoundedComplex,
        y: BoundedComplex,
        shift: i64,
        tuple: ChainTuple,
    ) -> Result<Self> {
        let (chain, layout) = chain_maps(&x, &y, shift)?;
        let coords = layout.tuple_to_coords(&tuple)?;
        if !chain.contains(&coords) {
            return Err(Error::Invalid("tuple violates the chain-map equation".into()));
        }
        Ok(Self { x, y, shift, tuple })
    }

    pub fn identity(x: &BoundedComplex) -> Self {
        let mut tuple = ChainTuple::empty();
        for deg in x.support() {
            let m = x.module_at(deg);
            tuple.insert(deg, ProjMap::identity(&m).entries().clone());
        }
        Self { x: x.clone(), y: x.clone(), shift: 0, tuple }
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.x
    }

    pub fn target(&self) -> &BoundedComplex {
        &self.y
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn tuple(&self) -> &ChainTuple {
        &self.tuple
    }
}

/// Composite class `f . g` of `g: x -> y` followed by `f: y -> z`; shifts
/// add.
pub fn compose(f: &HomotopyClass, g: &HomotopyClass) -> Result<HomotopyClass> {
    if f.x.algebra().id() != g.y.algebra().id()
        || f.x.min_deg() != g.y.min_deg()
        || f.x.support() != g.y.support()
    {
        return Err(Error::ComplexMismatch(
            "source of the outer map must match the target of the inner map".into(),
        ));
    }
    let gs = g.y.shift(g.shift);
    let g_layout = MapLayout::build(&g.x, &gs, g.shift);
    let fs = f.y.shift(f.shift);
    let f_layout = MapLayout::build(&f.x, &fs, f.shift);

    let mut tuple = ChainTuple::empty();
    for deg in g.x.support() {
        let Some(gmap) = g_layout.component_as_map(&g.tuple, deg) else {
            continue;
        };
        let Some(fmap) = f_layout.component_as_map(&f.tuple, deg - g.shift) else {
            continue;
        };
        let composite = fmap.compose(&gmap)?;
        if !composite.is_zero() {
            tuple.insert(deg, composite.entries().clone());
        }
    }
    HomotopyClass::new(g.x.clone(), f.y.clone(), f.shift + g.shift, tuple)
}

/// Single-entry chain-map tuple builder for maps between stalk-like
/// complexes (used in tests and assignments).
pub fn single_component_tuple(deg: i64, matrix: Vec<Vec<AlgebraElement>>) -> ChainTuple {
    let mut t = ChainTuple::empty();
    t.insert(deg, matrix);
    t
}

/// Raw composite of tuples without chain validation: `g: x -> y` of shift
/// `q` followed by `f: y -> z` of shift `p`, components `f_{i-q} o g_i`.
/// Callers are expected to check the class through a [`HomotopySpace`].
pub fn compose_tuples(
    x: &BoundedComplex,
    y: &BoundedComplex,
    z: &BoundedComplex,
    q: i64,
    p: i64,
    g: &ChainTuple,
    f: &ChainTuple,
) -> Result<ChainTuple> {
    let g_layout = MapLayout::build(x, &y.shift(q), q);
    let f_layout = MapLayout::build(y, &z.shift(p), p);
    let mut tuple = ChainTuple::empty();
    for deg in x.support() {
        let Some(gmap) = g_layout.component_as_map(g, deg) else {
            continue;
        };
        let Some(fmap) = f_layout.component_as_map(f, deg - q) else {
            continue;
        };
        let composite = fmap.compose(&gmap)?;
        if !composite.is_zero() {
            tuple.insert(deg, composite.entries().clone());
        }
    }
    Ok(tuple)
}
