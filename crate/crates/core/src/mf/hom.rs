//! Linear algebra on morphism spaces.
//!
//! A map between graded free modules of finite rank is determined by one
//! homogeneous form per matrix cell, of a degree fixed by the twists. Each
//! cell therefore contributes the coefficients of a finite monomial basis,
//! and cells whose degree is negative contribute nothing. Morphisms and
//! homotopies become vectors over these "slots", and the closedness and
//! boundary conditions become finite sparse systems.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Homotopy, MatrixFactorization, MfError, MfMorphism, PolyMatrix};
use crate::budget::Budget;
use crate::field::Field;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::poly::{monomial_basis, Monomial, Polynomial};

/// Coordinates for a pair of polynomial matrices `(A, B)` with prescribed
/// entry degrees.
#[derive(Debug)]
struct SlotSpace {
    /// `(block, row, col, monomial)` per slot
    slots: Vec<(u8, usize, usize, Monomial)>,
    index: BTreeMap<(u8, usize, usize, Monomial), usize>,
    shapes: [(usize, usize); 2],
}

impl SlotSpace {
    fn new(num_vars: usize, shapes: [(usize, usize); 2], degree: impl Fn(u8, usize, usize) -> i64) -> Self {
        let mut slots = Vec::new();
        let mut cache: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for (block, &(rows, cols)) in shapes.iter().enumerate() {
            let block = block as u8;
            for r in 0..rows {
                for c in 0..cols {
                    let deg = degree(block, r, c);
                    if deg < 0 {
                        continue;
                    }
                    let basis = cache
                        .entry(deg)
                        .or_insert_with(|| monomial_basis(num_vars, deg as u32));
                    for m in basis.iter() {
                        slots.push((block, r, c, m.clone()));
                    }
                }
            }
        }
        let index = slots.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Self { slots, index, shapes }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn lookup(&self, block: u8, r: usize, c: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(block, r, c, m.clone())).copied()
    }

    /// `None` if some term falls outside the slot space.
    fn encode<F: Field>(&self, mats: [&PolyMatrix<F>; 2]) -> Option<SparseVec<F::Elem>> {
        let mut v = Vec::new();
        for (block, m) in mats.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    for (mono, x) in m.get(r, c).terms() {
                        v.push((self.lookup(block as u8, r, c, mono)?, x.clone()));
                    }
                }
            }
        }
        v.sort_by_key(|(c, _)| *c);
        Some(v)
    }

    fn decode<F: Field>(&self, field: F, num_vars: usize, v: &SparseVec<F::Elem>) -> [PolyMatrix<F>; 2] {
        let mut out = [
            PolyMatrix::zero(field, num_vars, self.shapes[0].0, self.shapes[0].1),
            PolyMatrix::zero(field, num_vars, self.shapes[1].0, self.shapes[1].1),
        ];
        for (i, x) in v {
            let (block, r, c, m) = &self.slots[*i];
            let mat = &mut out[*block as usize];
            let mut p = mat.get(*r, *c).clone();
            p.add_term(m.clone(), x.clone());
            mat.set(*r, *c, p);
        }
        out
    }
}

/// Target of a linear map into polynomial matrix cells, indexed on demand.
struct Equations<F: Field> {
    field: F,
    index: BTreeMap<(u8, usize, usize, Monomial), usize>,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Equations<F> {
    fn new(field: F) -> Self {
        Self {
            field,
            index: BTreeMap::new(),
            columns: Vec::new(),
        }
    }

    fn start_column(&mut self) {
        self.columns.push(Vec::new());
    }

    /// Adds `sign · m · p` to cell `(block, r, c)` of the current column.
    fn add(&mut self, block: u8, r: usize, c: usize, m: &Monomial, p: &Polynomial<F>, negate: bool) {
        let col = self.columns.last_mut().expect("column started");
        for (pm, x) in p.terms() {
            let key = (block, r, c, pm.mul(m));
            let next = self.index.len();
            let row = *self.index.entry(key).or_insert(next);
            let x = if negate { self.field.neg(x) } else { x.clone() };
            col.push((row, x));
        }
    }

    /// The transposed system: one row per equation.
    fn into_matrix(self, ncols: usize) -> SparseMatrix<F> {
        let f = self.field;
        let mut rows: Vec<BTreeMap<usize, F::Elem>> = (0..self.index.len()).map(|_| BTreeMap::new()).collect();
        for (j, col) in self.columns.into_iter().enumerate() {
            for (r, x) in col {
                let e = rows[r].entry(j).or_insert_with(|| f.zero());
                *e = f.add(e, &x);
            }
        }
        let mut m = SparseMatrix::new(f, ncols);
        for row in rows {
            let v: SparseVec<F::Elem> = row.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
            if !v.is_empty() {
                m.push_row(v);
            }
        }
        m
    }
}

struct HomSetup<F: Field> {
    source: Arc<MatrixFactorization<F>>,
    target: Arc<MatrixFactorization<F>>,
    twist: i64,
    maps: SlotSpace,
    homotopies: SlotSpace,
}

impl<F: Field> HomSetup<F> {
    fn new(
        source: &Arc<MatrixFactorization<F>>,
        target: &Arc<MatrixFactorization<F>>,
        twist: i64,
        budget: &Budget,
    ) -> Result<Self, MfError> {
        if source.potential() != target.potential() {
            return Err(MfError::PotentialMismatch);
        }
        let (src, tgt) = (source.clone(), target.clone());
        let d = src.degree() as i64;
        let nv = src.num_vars();
        let (tk, tl) = (src.twists_k().clone(), src.twists_l().clone());
        let (tk2, tl2) = (tgt.twists_k().clone(), tgt.twists_l().clone());
        let maps = SlotSpace::new(
            nv,
            [(tgt.rank_k(), src.rank_k()), (tgt.rank_l(), src.rank_l())],
            |b, r, c| match b {
                0 => tk.get(c) - tk2.get(r) + twist,
                _ => tl.get(c) - tl2.get(r) + twist,
            },
        );
        let homotopies = SlotSpace::new(
            nv,
            [(tgt.rank_k(), src.rank_l()), (tgt.rank_l(), src.rank_k())],
            |b, r, c| match b {
                0 => tl.get(c) - tk2.get(r) + twist,
                _ => tk.get(c) - tl2.get(r) + twist - d,
            },
        );
        let cells = (maps.len() as u64 + homotopies.len() as u64)
            .saturating_mul((src.rank_k() + src.rank_l()) as u64);
        budget.check("morphism slot system", cells)?;
        Ok(Self {
            source: src,
            target: tgt,
            twist,
            maps,
            homotopies,
        })
    }

    fn field(&self) -> F {
        self.source.field()
    }

    /// `(g,h) ↦ (h·α - α'·g, β'·h - g·β)`.
    fn closedness(&self) -> SparseMatrix<F> {
        let (src, tgt) = (&*self.source, &*self.target);
        let mut eq = Equations::new(self.field());
        for (block, r, c, m) in &self.maps.slots {
            eq.start_column();
            let (r, c) = (*r, *c);
            if *block == 0 {
                for i in 0..tgt.rank_l() {
                    eq.add(0, i, c, m, tgt.alpha().get(i, r), true);
                }
                for j in 0..src.rank_l() {
                    eq.add(1, r, j, m, src.beta().get(c, j), true);
                }
            } else {
                for j in 0..src.rank_k() {
                    eq.add(0, r, j, m, src.alpha().get(c, j), false);
                }
                for i in 0..tgt.rank_k() {
                    eq.add(1, i, c, m, tgt.beta().get(i, r), false);
                }
            }
        }
        eq.into_matrix(self.maps.len())
    }

    /// Boundary of each homotopy slot, as a vector over the map slots.
    fn boundary_columns(&self) -> Vec<SparseVec<F::Elem>> {
        let (src, tgt) = (&*self.source, &*self.target);
        let f = self.field();
        let mut cols = Vec::with_capacity(self.homotopies.len());
        for (block, r, c, m) in &self.homotopies.slots {
            let (r, c) = (*r, *c);
            let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
            let mut push = |b: u8, rr: usize, cc: usize, p: &Polynomial<F>| {
                for (pm, x) in p.terms() {
                    let slot = self
                        .maps
                        .lookup(b, rr, cc, &pm.mul(m))
                        .expect("boundary lands in the map slots");
                    let e = acc.entry(slot).or_insert_with(|| f.zero());
                    *e = f.add(e, x);
                }
            };
            if *block == 0 {
                // s = E_rc·m: g += s·α, h += α'·s
                for j in 0..src.rank_k() {
                    push(0, r, j, src.alpha().get(c, j));
                }
                for i in 0..tgt.rank_l() {
                    push(1, i, c, tgt.alpha().get(i, r));
                }
            } else {
                // t = E_rc·m: g += β'·t, h += t·β
                for i in 0..tgt.rank_k() {
                    push(0, i, c, tgt.beta().get(i, r));
                }
                for j in 0..src.rank_l() {
                    push(1, r, j, src.beta().get(c, j));
                }
            }
            cols.push(acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect());
        }
        cols
    }

    fn boundary_matrix(&self) -> SparseMatrix<F> {
        let f = self.field();
        let mut rows: Vec<BTreeMap<usize, F::Elem>> = (0..self.maps.len()).map(|_| BTreeMap::new()).collect();
        for (j, col) in self.boundary_columns().into_iter().enumerate() {
            for (r, x) in col {
                rows[r].insert(j, x);
            }
        }
        let mut m = SparseMatrix::new(f, self.homotopies.len());
        for row in rows {
            m.push_row(row.into_iter().collect());
        }
        m
    }
}

/// Solves `boundary(s, t) = m`. A returned homotopy reproduces `m` exactly.
pub fn is_null_homotopic<F: Field>(m: &MfMorphism<F>, budget: &Budget) -> Result<Option<Homotopy<F>>, MfError> {
    let setup = HomSetup::new(&m.source, &m.target, m.twist, budget)?;
    let Some(rhs) = setup.maps.encode([&m.g, &m.h]) else {
        return Err(MfError::InvalidMorphism("entries of the wrong degree"));
    };
    let b = setup.boundary_matrix();
    let mut dense = alloc::vec![setup.field().zero(); setup.maps.len()];
    for (i, x) in rhs {
        dense[i] = x;
    }
    let Some(x) = b.solve(&dense) else {
        return Ok(None);
    };
    let [s, t] = setup
        .homotopies
        .decode(setup.field(), setup.source.num_vars(), &x);
    let h = Homotopy {
        source: setup.source.clone(),
        target: setup.target.clone(),
        twist: setup.twist,
        s,
        t,
    };
    debug_assert_eq!(&h.boundary(), m);
    Ok(Some(h))
}

/// `Hom(P, P'(ℓ))` in the homotopy category: closed maps modulo
/// boundaries, with canonical class coordinates.
#[derive(Debug, Clone)]
pub struct HomSpace<F: Field> {
    pub source: Arc<MatrixFactorization<F>>,
    pub target: Arc<MatrixFactorization<F>>,
    pub twist: i64,
    pub closed_dim: usize,
    pub boundary_rank: usize,
    maps: Arc<SlotSpace>,
    boundaries: Echelon<F>,
    classes: Echelon<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.classes.rank()
    }

    /// Representatives of the basis classes, reduced against boundaries.
    pub fn basis(&self) -> Vec<MfMorphism<F>> {
        self.classes.rows().iter().map(|v| self.morphism(v)).collect()
    }

    fn morphism(&self, v: &SparseVec<F::Elem>) -> MfMorphism<F> {
        let [g, h] = self
            .maps
            .decode(self.source.field(), self.source.num_vars(), v);
        MfMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            twist: self.twist,
            g,
            h,
        }
    }

    /// Coordinates of the class of a closed morphism over [`basis`](Self::basis).
    pub fn class_of(&self, m: &MfMorphism<F>) -> Result<Vec<F::Elem>, MfError> {
        if m.source != self.source || m.target != self.target || m.twist != self.twist {
            return Err(MfError::NotComposable("morphism lives in another Hom space"));
        }
        let v = self
            .maps
            .encode([&m.g, &m.h])
            .ok_or(MfError::InvalidMorphism("entries of the wrong degree"))?;
        let r = self.boundaries.reduce(&v);
        if !self.classes.contains(&r) {
            return Err(MfError::InvalidMorphism("not closed"));
        }
        Ok(self.classes.coordinates_reduced(&r))
    }

    pub fn morphism_from_class(&self, coords: &[F::Elem]) -> MfMorphism<F> {
        let f = self.source.field();
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (row, c) in self.classes.rows().iter().zip(coords) {
            acc = crate::linalg::axpy(&f, &acc, c, row);
        }
        self.morphism(&acc)
    }

    /// `Σ c_i·b_i` over a basis `b_i` of the boundaries; `coeffs` is
    /// called once per basis element.
    pub fn boundary_combination(&self, mut coeffs: impl FnMut(usize) -> F::Elem) -> MfMorphism<F> {
        let f = self.source.field();
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (i, row) in self.boundaries.rows().iter().enumerate() {
            acc = crate::linalg::axpy(&f, &acc, &coeffs(i), row);
        }
        self.morphism(&acc)
    }

    /// Whether a closed morphism represents the zero class.
    pub fn is_zero_class(&self, m: &MfMorphism<F>) -> Result<bool, MfError> {
        let f = self.source.field();
        Ok(self.class_of(m)?.iter().all(|c| f.is_zero(c)))
    }
}

/// `dim = dim ker(closedness) - rank(boundary)`, with a basis of classes.
pub fn hom_space<F: Field>(
    source: &Arc<MatrixFactorization<F>>,
    target: &Arc<MatrixFactorization<F>>,
    twist: i64,
    budget: &Budget,
) -> Result<HomSpace<F>, MfError> {
    let setup = HomSetup::new(source, target, twist, budget)?;
    let f = setup.field();
    let kernel = setup.closedness().kernel();
    let mut boundaries = Echelon::new(f, setup.maps.len());
    for col in setup.boundary_columns() {
        boundaries.insert(&col);
    }
    let mut classes = Echelon::new(f, setup.maps.len());
    for v in &kernel {
        classes.insert(&boundaries.reduce(v));
    }
    let classes = classes.into_reduced();
    let closed_dim = kernel.len();
    let boundary_rank = boundaries.rank();
    debug_assert_eq!(classes.rank() + boundary_rank, closed_dim);
    Ok(HomSpace {
        source: setup.source,
        target: setup.target,
        twist,
        closed_dim,
        boundary_rank,
        maps: Arc::new(setup.maps),
        boundaries,
        classes,
    })
}
