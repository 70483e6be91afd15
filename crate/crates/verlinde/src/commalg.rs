//! Finite-dimensional commutative algebras in the semisimplified category:
//! ideals, nilradical, idempotents, locality.
//!
//! The categorical layer works with multiplicity matrices throughout; the
//! "ordinary" layer (invariants, quotient by the non-trivial isotypic
//! ideal) extracts honest finite-dimensional commutative F_p-algebras on
//! which radical and idempotent computations run with plain linear algebra.
//! Radicals use the iterated-Frobenius-kernel method (valid over perfect
//! ground fields; trace forms degenerate in characteristic p).

use crate::fp::{fp_inv, fp_neg, FpMatrix};
use crate::ver::{
    braid, canonical_colspace, identity_mults, reassoc, reassoc_mult, sym_powers, tensor_mor,
    tensor_mult_canonical, tensor_struct, SubObject, VerError, VerMorphism, VerObject,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommAlgError {
    #[error(transparent)]
    Ver(#[from] VerError),
    #[error("product is not commutative modulo negligibles")]
    NotCommutative,
    #[error("product is not associative modulo negligibles")]
    NotAssociative,
    #[error("unit constraint fails modulo negligibles")]
    NotUnital,
    #[error(
        "semisimple quotient does not split over the prime field: \
         {fixed_dim} Frobenius-fixed dimensions among {total_dim}; \
         idempotent decomposition requires a field extension"
    )]
    NonSplit { fixed_dim: usize, total_dim: usize },
    #[error("Newton iteration for idempotent lifting did not stabilize")]
    LiftDiverged,
    #[error("morphism shape does not match the declared carrier")]
    BadShape,
}

/// A finite-dimensional commutative algebra object: carrier A, product
/// m: A⊗A → A, unit 1 → A, with commutativity, associativity, and
/// unitality holding as categorical (mod-negligible) equalities.
#[derive(Clone, Debug)]
pub struct FinCommAlgebra {
    carrier: VerObject,
    m: VerMorphism,
    unit: VerMorphism,
}

/// Multiply composable chains of isotypic matrices: out[k] = a[k]·b[k].
pub(crate) fn mm_compose(a: &[FpMatrix], b: &[FpMatrix]) -> Vec<FpMatrix> {
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

impl FinCommAlgebra {
    /// Validates the algebra axioms at class level (multiplicity matrices),
    /// so construction stays cheap even for large carriers.
    pub fn new(
        carrier: VerObject,
        m: VerMorphism,
        unit: VerMorphism,
    ) -> Result<Self, CommAlgError> {
        let ts = tensor_struct(&carrier, &carrier);
        if m.dom().mult() != ts.obj.mult()
            || m.cod().mult() != carrier.mult()
            || unit.dom().mult() != VerObject::unit(carrier.p()).mult()
            || unit.cod().mult() != carrier.mult()
        {
            return Err(CommAlgError::BadShape);
        }
        let alg = FinCommAlgebra { carrier, m, unit };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<(), CommAlgError> {
        let a = &self.carrier;
        let ts = tensor_struct(a, a);
        let mm = self.m.mult_maps();
        let id_mm = identity_mults(a);

        // Commutativity: m ∘ c = m.
        let braid_mm = braid(a, a).mult_maps();
        if mm_compose(&mm, &braid_mm) != mm {
            return Err(CommAlgError::NotCommutative);
        }

        // Unitality: m ∘ (unit ⊗ id) = id (std(1⊗A) is coordinate-identical
        // to std(A)); commutativity covers the right constraint.
        let ts_unit = tensor_struct(&VerObject::unit(a.p()), a);
        let u_mm = tensor_mult_canonical(&self.unit.mult_maps(), &id_mm, &ts_unit, &ts);
        if mm_compose(&mm, &u_mm) != id_mm {
            return Err(CommAlgError::NotUnital);
        }

        // Associativity: m∘(m⊗id)∘τ = m∘(id⊗m) on A⊗(A⊗A).
        let tau = reassoc_mult(a, a, a);
        let ts_m_id = tensor_struct(&ts.obj, a);
        let m_id = tensor_mult_canonical(&mm, &id_mm, &ts_m_id, &ts);
        let lhs = mm_compose(&mm, &mm_compose(&m_id, &tau));
        let ts_id_m = tensor_struct(a, &ts.obj);
        let id_m = tensor_mult_canonical(&id_mm, &mm, &ts_id_m, &ts);
        let rhs = mm_compose(&mm, &id_m);
        if lhs != rhs {
            return Err(CommAlgError::NotAssociative);
        }
        Ok(())
    }

    pub fn carrier(&self) -> &VerObject {
        &self.carrier
    }
    pub fn product(&self) -> &VerMorphism {
        &self.m
    }
    pub fn unit_mor(&self) -> &VerMorphism {
        &self.unit
    }
    pub fn p(&self) -> u16 {
        self.carrier.p()
    }

    /// An ordinary commutative algebra purely of trivial isotypic type.
    /// `table[i·dim + j]` is the product e_i·e_j; `unit` names the identity
    /// element.
    pub fn from_ordinary(
        p: u16,
        dim: usize,
        table: &[Vec<u8>],
        unit: &[u8],
    ) -> Result<Self, CommAlgError> {
        assert_eq!(table.len(), dim * dim);
        let mut mult = vec![0usize; p as usize - 1];
        mult[0] = dim;
        let carrier = VerObject::new(p, mult).map_err(CommAlgError::Ver)?;
        let ts = tensor_struct(&carrier, &carrier);
        // For a purely trivial-isotypic carrier the fused coordinates are the
        // raw pair coordinates in (i, j) order.
        let mut m1 = FpMatrix::zero(p, dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for (r, &v) in table[i * dim + j].iter().enumerate() {
                    m1.set(r, i * dim + j, v as u64);
                }
            }
        }
        let mut mults: Vec<FpMatrix> = (2..p as usize)
            .map(|_| FpMatrix::zero(p, 0, 0))
            .collect();
        mults.insert(0, m1);
        let m = VerMorphism::from_mult(&ts.obj, &carrier, &mults);
        let mut unit_mults: Vec<FpMatrix> = (2..p as usize)
            .map(|_| FpMatrix::zero(p, 0, 0))
            .collect();
        unit_mults.insert(0, FpMatrix::from_fn(p, dim, 1, |r, _| unit[r] as u64));
        let u = VerMorphism::from_mult(&VerObject::unit(p), &carrier, &unit_mults);
        Self::new(carrier, m, u)
    }

    /// The square-zero extension 1 ⊕ X: products of X with itself vanish.
    pub fn square_zero(x: &VerObject) -> Result<Self, CommAlgError> {
        let p = x.p();
        let one = VerObject::unit(p);
        let carrier = one.dsum(x);
        let ts = tensor_struct(&carrier, &carrier);
        // The unit is copy 0 of L_1 (direct sum puts the distinguished unit
        // first within its isotypic block).
        let summands = carrier.summands();
        let is_unit = |s: usize| summands[s].k == 1 && summands[s].copy == 0;
        let mut mults: Vec<FpMatrix> = (1..p as usize)
            .map(|k| FpMatrix::zero(p, carrier.mult_of(k), ts.obj.mult_of(k)))
            .collect();
        for slot in &ts.slots {
            let col = (slot.start - ts.obj.block_start(slot.k, 0)) / slot.k;
            let target = if is_unit(slot.a) {
                Some(&summands[slot.b])
            } else if is_unit(slot.b) {
                Some(&summands[slot.a])
            } else {
                None
            };
            if let Some(t) = target {
                debug_assert_eq!(t.k, slot.k);
                mults[slot.k - 1].set(t.copy, col, 1);
            }
        }
        let m = VerMorphism::from_mult(&ts.obj, &carrier, &mults);
        let mut unit_mults: Vec<FpMatrix> = (1..p as usize)
            .map(|k| FpMatrix::zero(p, carrier.mult_of(k), if k == 1 { 1 } else { 0 }))
            .collect();
        unit_mults[0].set(0, 0, 1);
        let u = VerMorphism::from_mult(&one, &carrier, &unit_mults);
        Self::new(carrier, m, u)
    }

    /// Elementwise product through the stored representative of m.
    pub fn mul_elems(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let ts = tensor_struct(&self.carrier, &self.carrier);
        let p = self.p();
        let dim = self.carrier.dim_vec();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        let mut raw = vec![0u8; dim * dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                raw[i * dim + j] = ((xi as u64 * yj as u64) % p as u64) as u8;
            }
        }
        let std_vec = ts.project_raw_vec(&raw);
        self.m.mat().apply(&std_vec)
    }

    /// The invariant subalgebra A^inv = Hom(1, A) with its induced product,
    /// as an ordinary algebra on the trivial-isotypic coordinates.
    pub fn invariants(&self) -> OrdAlgebra {
        let p = self.p();
        let n = self.carrier.mult_of(1);
        let ts = tensor_struct(&self.carrier, &self.carrier);
        let m1 = &self.m.mult_maps()[0];
        // Pair (copy i, copy j) of L_1 lands in the slot (summand_index(1,i),
        // summand_index(1,j), chain 0) of the fused object.
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let si = self.carrier.summand_index(1, i);
                let sj = self.carrier.summand_index(1, j);
                let slot = &ts.slots[ts.slot_index(si, sj, 0)];
                debug_assert_eq!(slot.k, 1);
                let col = slot.start - ts.obj.block_start(1, 0);
                table.push(m1.column(col));
            }
        }
        let unit = self.unit.mult_maps()[0].column(0);
        OrdAlgebra::new(p, n, table, unit)
    }

    /// The subobject of all non-trivial isotypic parts.
    pub fn nontrivial_part(&self) -> SubObject {
        let p = self.p();
        let gens: Vec<FpMatrix> = (1..p as usize)
            .map(|k| {
                if k == 1 {
                    FpMatrix::zero(p, self.carrier.mult_of(1), 0)
                } else {
                    FpMatrix::identity(p, self.carrier.mult_of(k))
                }
            })
            .collect();
        SubObject::from_generators(&self.carrier, &gens)
    }

    /// The ordinary quotient A / (ideal generated by A_{≠0}), together with
    /// the quotient morphism. The result is purely trivial-isotypic.
    pub fn underlying_ordinary(&self) -> (OrdAlgebra, VerMorphism) {
        let ideal = ideal_generated(self, &self.nontrivial_part());
        let (qobj, q, sect) = ideal.sub.quotient();
        debug_assert!(qobj.mult()[1..].iter().all(|&m| m == 0));
        let ord = self.ordinary_through(&qobj, &q, &sect);
        (ord, q)
    }

    /// The ordinary algebra induced on a purely trivial-isotypic quotient of
    /// the carrier, via a section of the quotient morphism.
    fn ordinary_through(&self, qobj: &VerObject, q: &VerMorphism, sect: &VerMorphism) -> OrdAlgebra {
        let p = self.p();
        let dim = qobj.mult_of(1);
        let ts_q = tensor_struct(qobj, qobj);
        let ts_a = tensor_struct(&self.carrier, &self.carrier);
        let ss = tensor_mult_canonical(&sect.mult_maps(), &sect.mult_maps(), &ts_q, &ts_a);
        let mq = mm_compose(&q.mult_maps(), &mm_compose(&self.m.mult_maps(), &ss));
        let m1 = &mq[0];
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                // For a purely trivial-isotypic object, fused coordinates are
                // the raw pair coordinates in (i, j) order.
                table.push(m1.column(i * dim + j));
            }
        }
        let unit = mm_compose(&q.mult_maps(), &self.unit.mult_maps())[0].column(0);
        OrdAlgebra::new(p, dim, table, unit)
    }
}

/// An ideal of a commutative algebra object, stored as the subobject of the
/// carrier it includes into.
#[derive(Clone, Debug)]
pub struct IdealV {
    pub sub: SubObject,
}

impl IdealV {
    pub fn inclusion(&self) -> VerMorphism {
        self.sub.incl_mor()
    }
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
    pub fn obj(&self) -> VerObject {
        self.sub.obj()
    }
}

/// The ideal generated by a subobject X ⊆ A: the image of m restricted to
/// A ⊗ X (already an ideal because A is unital, so it contains X).
pub fn ideal_generated(alg: &FinCommAlgebra, x: &SubObject) -> IdealV {
    let a = alg.carrier();
    let ts_ax = tensor_struct(a, &x.obj());
    let ts_aa = tensor_struct(a, a);
    let restricted = tensor_mult_canonical(
        &identity_mults(a),
        &x.incl_mor().mult_maps(),
        &ts_ax,
        &ts_aa,
    );
    let composed = mm_compose(&alg.product().mult_maps(), &restricted);
    IdealV {
        sub: SubObject::from_generators(a, &composed),
    }
}

/// Whether m(A ⊗ I) ⊆ I, i.e. the subobject is an ideal.
pub fn is_ideal(alg: &FinCommAlgebra, sub: &SubObject) -> bool {
    sub.contains(&ideal_generated(alg, sub).sub)
}

/// Successive power ideals I ⊇ I² ⊇ …: returns the first t with I^t = 0,
/// scanning up to `cap` (None if it never vanishes within the cap).
pub fn ideal_vanishing_power(alg: &FinCommAlgebra, ideal: &IdealV, cap: usize) -> Option<usize> {
    let a = alg.carrier();
    let ts_aa = tensor_struct(a, a);
    let mm = alg.product().mult_maps();
    let mut cur = ideal.sub.clone();
    for t in 1..=cap {
        if cur.is_zero() {
            return Some(t);
        }
        let ts_pair = tensor_struct(&cur.obj(), &ideal.sub.obj());
        let pair = tensor_mult_canonical(
            &cur.incl_mor().mult_maps(),
            &ideal.sub.incl_mor().mult_maps(),
            &ts_pair,
            &ts_aa,
        );
        cur = SubObject::from_generators(a, &mm_compose(&mm, &pair));
    }
    None
}

/// The nilradical: the ideal generated by the non-trivial isotypic part
/// (nilpotent), extended by the preimage of the radical of the ordinary
/// quotient (computed by iterated Frobenius kernels).
pub fn nilradical(alg: &FinCommAlgebra) -> IdealV {
    let a = alg.carrier();
    let base = ideal_generated(alg, &alg.nontrivial_part());
    let (qobj, q, sect) = base.sub.quotient();
    debug_assert!(qobj.mult()[1..].iter().all(|&m| m == 0));
    let ord = alg.ordinary_through(&qobj, &q, &sect);
    let rad = ord.nilradical_basis();
    if rad.cols() == 0 {
        return base;
    }
    // Pull the ordinary radical back through the quotient's section: the
    // result contains ker q, so it is the full preimage.
    let lifted1 = sect.mult_maps()[0].mul(&rad);
    let p = a.p();
    let gens: Vec<FpMatrix> = (1..p as usize)
        .map(|k| {
            if k == 1 {
                base.sub.basis(1).hcat(&lifted1)
            } else {
                base.sub.basis(k).clone()
            }
        })
        .collect();
    IdealV {
        sub: SubObject::from_generators(a, &gens),
    }
}

/// Idempotent elements of A^inv (the categorical points of the spectrum).
/// Requires the semisimple quotient to split over the prime field.
pub fn primitive_idempotents(alg: &FinCommAlgebra) -> Result<Vec<Vec<u8>>, CommAlgError> {
    alg.invariants().primitive_idempotents()
}

/// Whether A is local: exactly one primitive idempotent.
pub fn is_local(alg: &FinCommAlgebra) -> Result<bool, CommAlgError> {
    Ok(primitive_idempotents(alg)?.len() == 1)
}

// ---------------------------------------------------------------------------
// Ordinary commutative algebras over the prime field.
// ---------------------------------------------------------------------------

/// A finite-dimensional commutative unital F_p-algebra given by structure
/// data: left-multiplication matrices per basis vector.
#[derive(Clone, Debug)]
pub struct OrdAlgebra {
    p: u16,
    dim: usize,
    left_mult: Vec<FpMatrix>,
    unit: Vec<u8>,
}

impl OrdAlgebra {
    /// `table[i·dim + j]` = coordinates of e_i·e_j.
    pub fn new(p: u16, dim: usize, table: Vec<Vec<u8>>, unit: Vec<u8>) -> Self {
        assert_eq!(table.len(), dim * dim);
        let left_mult: Vec<FpMatrix> = (0..dim)
            .map(|i| {
                FpMatrix::from_fn(p, dim, dim, |r, j| table[i * dim + j][r] as u64)
            })
            .collect();
        let alg = OrdAlgebra {
            p,
            dim,
            left_mult,
            unit,
        };
        debug_assert!(alg.is_consistent());
        alg
    }

    fn is_consistent(&self) -> bool {
        // Unit acts as identity; commutativity; associativity via
        // L_{e_i}·L_{e_j} = L_{e_i·e_j}.
        let lu = self.left_of(&self.unit);
        if !lu.is_identity() {
            return false;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ei = self.basis_vec(i);
                let ej = self.basis_vec(j);
                if self.mul(&ei, &ej) != self.mul(&ej, &ei) {
                    return false;
                }
                let prod = self.mul(&ei, &ej);
                if self.left_mult[i].mul(&self.left_mult[j]) != self.left_of(&prod) {
                    return false;
                }
            }
        }
        true
    }

    pub fn p(&self) -> u16 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit_vec(&self) -> &[u8] {
        &self.unit
    }

    fn basis_vec(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.dim];
        v[i] = 1;
        v
    }

    /// Left multiplication operator by an arbitrary element.
    pub fn left_of(&self, x: &[u8]) -> FpMatrix {
        let mut acc = FpMatrix::zero(self.p, self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                acc = acc.add(&self.left_mult[i].scale(xi));
            }
        }
        acc
    }

    pub fn mul(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        self.left_of(x).apply(y)
    }

    pub fn pow_elem(&self, x: &[u8], n: usize) -> Vec<u8> {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The Frobenius x ↦ x^p, which is F_p-linear on a commutative algebra
    /// in characteristic p.
    pub fn frobenius_matrix(&self) -> FpMatrix {
        let cols: Vec<Vec<u8>> = (0..self.dim)
            .map(|i| self.pow_elem(&self.basis_vec(i), self.p as usize))
            .collect();
        FpMatrix::from_cols(self.p, self.dim, &cols)
    }

    /// Canonical basis of the nilradical: the kernel of Frob^k for the first
    /// k with p^k ≥ dim (an element is nilpotent iff its p^k-th power
    /// vanishes, since x^dim = 0 for nilpotents by Cayley–Hamilton).
    pub fn nilradical_basis(&self) -> FpMatrix {
        if self.dim == 0 {
            return FpMatrix::zero(self.p, 0, 0);
        }
        let mut k = 0usize;
        let mut pk = 1usize;
        while pk < self.dim {
            pk *= self.p as usize;
            k += 1;
        }
        let f = self.frobenius_matrix();
        canonical_colspace(&f.pow(k.max(1) as u64).kernel())
    }

    /// The semisimple quotient A/rad with the projection and a linear
    /// section.
    pub fn semisimple_quotient(&self) -> (OrdAlgebra, FpMatrix, FpMatrix) {
        let rad = self.nilradical_basis();
        // Reuse the multiplicity-level quotient machinery on a purely
        // trivial-isotypic wrapper object.
        let mut mult = vec![0usize; self.p as usize - 1];
        mult[0] = self.dim;
        let wrapper = VerObject::new(self.p, mult).expect("valid prime");
        let gens: Vec<FpMatrix> = (1..self.p as usize)
            .map(|k| {
                if k == 1 {
                    rad.clone()
                } else {
                    FpMatrix::zero(self.p, 0, 0)
                }
            })
            .collect();
        let sub = SubObject::from_generators(&wrapper, &gens);
        let (_, qm, sm) = sub.quotient();
        let q = qm.mult_maps()[0].clone();
        let s = sm.mult_maps()[0].clone();
        let qdim = q.rows();
        let mut table = Vec::with_capacity(qdim * qdim);
        for i in 0..qdim {
            for j in 0..qdim {
                let prod = self.mul(&s.column(i), &s.column(j));
                table.push(q.apply(&prod));
            }
        }
        let unit = q.apply(&self.unit);
        (OrdAlgebra::new(self.p, qdim, table, unit), q, s)
    }

    /// Whether the semisimple quotient is split (a product of copies of the
    /// prime field): Frobenius is the identity there.
    pub fn split_data(&self) -> (bool, usize, usize) {
        let (ss, _, _) = self.semisimple_quotient();
        let f = ss.frobenius_matrix();
        let fixed = ss.dim - f.sub(&FpMatrix::identity(self.p, ss.dim)).rank();
        (f.is_identity(), fixed, ss.dim)
    }

    /// The complete orthogonal set of primitive idempotents, lifted through
    /// the nilradical by Newton iteration. Errors if the semisimple quotient
    /// does not split over the prime field.
    pub fn primitive_idempotents(&self) -> Result<Vec<Vec<u8>>, CommAlgError> {
        let (ss, q, s) = self.semisimple_quotient();
        let f = ss.frobenius_matrix();
        if !f.is_identity() {
            let fixed = ss.dim - f.sub(&FpMatrix::identity(self.p, ss.dim)).rank();
            return Err(CommAlgError::NonSplit {
                fixed_dim: fixed,
                total_dim: ss.dim,
            });
        }
        // Split the semisimple quotient into its one-dimensional factors by
        // refining common eigenspaces of the multiplication operators.
        let mut components: Vec<FpMatrix> = vec![FpMatrix::identity(self.p, ss.dim)];
        for i in 0..ss.dim {
            let ma = &ss.left_mult[i];
            let mut next = Vec::new();
            for comp in &components {
                if comp.cols() == 1 {
                    next.push(comp.clone());
                    continue;
                }
                // Restriction R of M_a to the component: comp · R = M_a · comp.
                let r = comp
                    .solve(&ma.mul(comp))
                    .expect("components are stable under multiplication");
                let mut split_dims = 0usize;
                let mut pieces = Vec::new();
                for lam in 0..self.p as u8 {
                    let shifted = r.sub(&FpMatrix::identity(self.p, r.rows()).scale(lam));
                    let ker = shifted.kernel();
                    if ker.cols() > 0 {
                        split_dims += ker.cols();
                        pieces.push(canonical_colspace(&comp.mul(&ker)));
                    }
                }
                assert_eq!(
                    split_dims,
                    comp.cols(),
                    "split semisimple operators are diagonalizable over the prime field"
                );
                next.extend(pieces);
            }
            components = next;
        }
        assert!(components.iter().all(|c| c.cols() == 1));

        // Idempotent of each one-dimensional factor: e = v / (scalar of v²).
        let mut ss_idems: Vec<Vec<u8>> = Vec::new();
        for comp in &components {
            let v = comp.column(0);
            let v2 = ss.mul(&v, &v);
            let pivot = v.iter().position(|&c| c != 0).expect("nonzero component");
            let c = v2[pivot];
            assert_ne!(c, 0, "semisimple one-dimensional factors are not nilpotent");
            let cinv = fp_inv(c, self.p);
            let e: Vec<u8> = v
                .iter()
                .map(|&x| ((x as u64 * cinv as u64) % self.p as u64) as u8)
                .collect();
            debug_assert_eq!(ss.mul(&e, &e), e);
            // All of v² must be proportional to v.
            debug_assert_eq!(
                ss.mul(&e, &v),
                v,
                "factor idempotent acts as identity on its line"
            );
            ss_idems.push(e);
        }
        // Deterministic order.
        ss_idems.sort();

        // Lift successively, keeping orthogonality: work inside (1 − s)·A.
        let sub_vec = |x: &[u8], y: &[u8]| -> Vec<u8> {
            x.iter()
                .zip(y)
                .map(|(&a, &b)| ((a as u64 + fp_neg(b, self.p) as u64) % self.p as u64) as u8)
                .collect()
        };
        let mut lifted: Vec<Vec<u8>> = Vec::new();
        let mut running_sum = vec![0u8; self.dim];
        for (t, ebar) in ss_idems.iter().enumerate() {
            if t + 1 == ss_idems.len() {
                let last = sub_vec(&self.unit, &running_sum);
                assert_eq!(self.mul(&last, &last), last, "residual idempotent");
                lifted.push(last);
                break;
            }
            let corner = sub_vec(&self.unit, &running_sum);
            let mut x = self.mul(&corner, &s.apply(ebar));
            let mut ok = false;
            for _ in 0..64 {
                if self.mul(&x, &x) == x {
                    ok = true;
                    break;
                }
                // Newton step e ← 3e² − 2e³ doubles the nilpotency depth of
                // e² − e each round.
                let x2 = self.mul(&x, &x);
                let x3 = self.mul(&x2, &x);
                let three_x2: Vec<u8> = x2
                    .iter()
                    .map(|&c| ((c as u64 * 3) % self.p as u64) as u8)
                    .collect();
                let two_x3: Vec<u8> = x3
                    .iter()
                    .map(|&c| ((c as u64 * 2) % self.p as u64) as u8)
                    .collect();
                x = sub_vec(&three_x2, &two_x3);
            }
            if !ok {
                return Err(CommAlgError::LiftDiverged);
            }
            debug_assert_eq!(q.apply(&x), *ebar, "lift reduces to the factor idempotent");
            running_sum = running_sum
                .iter()
                .zip(&x)
                .map(|(&a, &b)| ((a as u64 + b as u64) % self.p as u64) as u8)
                .collect();
            lifted.push(x);
        }
        // Verify the complete orthogonal decomposition.
        for (i, a) in lifted.iter().enumerate() {
            assert_eq!(self.mul(a, a), *a, "idempotent");
            for b in lifted.iter().skip(i + 1) {
                assert!(
                    self.mul(a, b).iter().all(|&c| c == 0),
                    "distinct primitive idempotents are orthogonal"
                );
            }
        }
        let total: Vec<u8> = lifted.iter().fold(vec![0u8; self.dim], |acc, e| {
            acc.iter()
                .zip(e)
                .map(|(&a, &b)| ((a as u64 + b as u64) % self.p as u64) as u8)
                .collect()
        });
        assert_eq!(total, self.unit, "idempotents sum to the unit");
        Ok(lifted)
    }

    pub fn is_local(&self) -> Result<bool, CommAlgError> {
        Ok(self.primitive_idempotents()?.len() == 1)
    }

    /// Dimension of the localization A·e.
    pub fn component_dim(&self, e: &[u8]) -> usize {
        self.left_of(e).rank()
    }
}

// ---------------------------------------------------------------------------
// Truncated symmetric algebras: the canonical source of commutative algebra
// objects with non-trivial isotypic parts.
// ---------------------------------------------------------------------------

/// The truncated symmetric algebra ⊕_{n≤top} S^n(X) with the product induced
/// by concatenation. `top` defaults to the last non-vanishing degree (the
/// symmetric powers of non-trivial objects are nilpotent), and products
/// landing above `top` are zero (the quotient by the ideal of high degrees).
pub struct SymTrunc {
    pub alg: FinCommAlgebra,
    /// The carrier pieces S^0..S^top.
    pub degrees: Vec<VerObject>,
    /// Per degree and isotypic size: the first copy index of this degree's
    /// summands within the assembled carrier.
    copy_offset: Vec<Vec<usize>>,
}

impl SymTrunc {
    pub fn degree_count(&self) -> usize {
        self.degrees.len()
    }

    /// The degree-d part as a subobject of the carrier.
    pub fn degree_subobject(&self, d: usize) -> SubObject {
        let p = self.alg.p();
        let carrier = self.alg.carrier();
        let gens: Vec<FpMatrix> = (1..p as usize)
            .map(|k| {
                let m = self.degrees[d].mult_of(k);
                let off = self.copy_offset[d][k - 1];
                FpMatrix::from_fn(p, carrier.mult_of(k), m, |r, c| {
                    u64::from(r == off + c)
                })
            })
            .collect();
        SubObject::from_generators(carrier, &gens)
    }
}

/// Build the truncated symmetric algebra of X. `cut`: optional truncation
/// degree; defaults to the natural vanishing point (must exist below 4·p).
pub fn sym_trunc_algebra(x: &VerObject, cut: Option<usize>) -> Result<SymTrunc, CommAlgError> {
    let p = x.p();
    let scan = cut.unwrap_or(4 * p as usize);
    let tower = sym_powers(x, scan);
    let top = match cut {
        Some(t) => t,
        None => {
            (1..=scan)
                .find(|&n| tower.degrees[n].is_zero())
                .expect("symmetric powers vanish eventually")
                - 1
        }
    };
    let degrees: Vec<VerObject> = tower.degrees[..=top].to_vec();

    // Assemble the carrier and the copy offsets of each degree.
    let mut carrier = VerObject::zero(p);
    let mut copy_offset = Vec::with_capacity(top + 1);
    for d in degrees.iter() {
        copy_offset.push(
            (1..p as usize)
                .map(|k| carrier.mult_of(k))
                .collect::<Vec<_>>(),
        );
        carrier = carrier.dsum(d);
    }

    // Pairwise products μ_{a,b}: S^a ⊗ S^b → S^{a+b} via the section of the
    // b-th quotient, the reassociator, and the (a, b−1) product:
    //   μ_{a,b} = q_{a+b} ∘ (μ_{a,b−1} ⊗ id) ∘ τ ∘ (id ⊗ sect_b).
    // Any section gives the same class because the quotient tower kills all
    // relation images.
    let mut mu: Vec<Vec<VerMorphism>> = Vec::new();
    for a in 0..=top {
        let mut row = Vec::new();
        for b in 0..=top - a {
            let dom_ts = tensor_struct(&degrees[a], &degrees[b]);
            let morphism = if degrees[a].is_zero() || degrees[b].is_zero() {
                VerMorphism::zero(&dom_ts.obj, &degrees[a + b])
            } else if b == 0 {
                // std(S^a ⊗ 1) is coordinate-identical to S^a.
                VerMorphism::new_unchecked(
                    dom_ts.obj.clone(),
                    degrees[a].clone(),
                    FpMatrix::identity(p, degrees[a].dim_vec()),
                )
            } else {
                let step1 = tensor_mor(
                    &VerMorphism::identity(&degrees[a]),
                    &tower.sections[b - 1],
                );
                let tau = reassoc(&degrees[a], &degrees[b - 1], x);
                let prev: &VerMorphism = &row[b - 1];
                let step3 = tensor_mor(prev, &VerMorphism::identity(x));
                let lower = step3.compose(&tau.compose(&step1));
                tower.quotients[a + b - 1].compose(&lower)
            };
            row.push(morphism);
        }
        mu.push(row);
    }

    // Assemble the single product morphism on the full carrier: the slots of
    // carrier⊗carrier decompose exactly into the slots of the S^a⊗S^b
    // pieces (same pair chains, same raw inclusion vectors).
    let ts = tensor_struct(&carrier, &carrier);
    let summands = carrier.summands();
    // degree of each carrier summand.
    let degree_of: Vec<usize> = summands
        .iter()
        .map(|s| {
            (0..=top)
                .rfind(|&d| s.copy >= copy_offset[d][s.k - 1])
                .expect("every summand belongs to a degree")
        })
        .collect();
    let mut mat = FpMatrix::zero(p, carrier.dim_vec(), ts.obj.dim_vec());
    for slot in &ts.slots {
        let (da, db) = (degree_of[slot.a], degree_of[slot.b]);
        if da + db > top {
            continue;
        }
        let m_ab = &mu[da][db];
        let ts_small = tensor_struct(&degrees[da], &degrees[db]);
        // Local summand indices within the degree pieces.
        let local = |global: usize, d: usize| -> usize {
            let s = &summands[global];
            degrees[d].summand_index(s.k, s.copy - copy_offset[d][s.k - 1])
        };
        let small_slot =
            &ts_small.slots[ts_small.slot_index(local(slot.a, da), local(slot.b, db), slot.chain)];
        debug_assert_eq!(small_slot.k, slot.k);
        // Copy the block of μ_{a,b} hitting this slot, re-based into carrier
        // coordinates.
        for (r_small, r_big) in row_map(&degrees[da + db], &carrier, &copy_offset[da + db]) {
            for c in 0..slot.k {
                let v = m_ab.mat().get(r_small, small_slot.start + c);
                if v != 0 {
                    mat.set(r_big, slot.start + c, v as u64);
                }
            }
        }
    }
    let m = VerMorphism::new_unchecked(ts.obj.clone(), carrier.clone(), mat);

    let unit_obj = VerObject::unit(p);
    let mut unit_mults: Vec<FpMatrix> = (1..p as usize)
        .map(|k| FpMatrix::zero(p, carrier.mult_of(k), if k == 1 { 1 } else { 0 }))
        .collect();
    unit_mults[0].set(copy_offset[0][0], 0, 1);
    let unit = VerMorphism::from_mult(&unit_obj, &carrier, &unit_mults);

    let alg = FinCommAlgebra::new(carrier, m, unit)?;
    Ok(SymTrunc {
        alg,
        degrees,
        copy_offset,
    })
}

/// Coordinate pairs (row in `piece`, row in `whole`) identifying the piece's
/// canonical coordinates inside the assembled carrier, given the first-copy
/// offsets of the piece's summands.
fn row_map(piece: &VerObject, whole: &VerObject, offsets: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(piece.dim_vec());
    for s in piece.summands() {
        let big_start = whole.block_start(s.k, offsets[s.k - 1] + s.copy);
        for d in 0..s.k {
            pairs.push((s.start + d, big_start + d));
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_x2(p: u16) -> FinCommAlgebra {
        // F_p[x]/(x²): basis {1, x}.
        let table = vec![
            vec![1, 0], // 1·1
            vec![0, 1], // 1·x
            vec![0, 1], // x·1
            vec![0, 0], // x·x
        ];
        FinCommAlgebra::from_ordinary(p, 2, &table, &[1, 0]).unwrap()
    }

    fn fp_times_fp(p: u16) -> FinCommAlgebra {
        // F_p × F_p: basis of orthogonal idempotents.
        let table = vec![vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 1]];
        FinCommAlgebra::from_ordinary(p, 2, &table, &[1, 1]).unwrap()
    }

    fn fp_x2_times_fp(p: u16) -> FinCommAlgebra {
        // F_p[x]/(x²) × F_p: basis {(1,0), (x,0), (0,1)}.
        let z = || vec![0u8, 0, 0];
        let e0 = vec![1u8, 0, 0];
        let e1 = vec![0u8, 1, 0];
        let e2 = vec![0u8, 0, 1];
        let table = vec![
            e0.clone(),
            e1.clone(),
            z(),
            e1.clone(),
            z(),
            z(),
            z(),
            z(),
            e2.clone(),
        ];
        FinCommAlgebra::from_ordinary(p, 3, &table, &[1, 0, 1]).unwrap()
    }

    #[test]
    fn ordinary_algebra_constructors_validate() {
        for p in [5u16, 7] {
            let a = fp_x2(p);
            assert_eq!(a.carrier().dim_vec(), 2);
            let b = fp_times_fp(p);
            assert_eq!(b.carrier().dim_vec(), 2);
        }
    }

    #[test]
    fn square_zero_extension_axioms_and_radical() {
        let p = 5;
        let x = VerObject::simple(p, 3).unwrap();
        let a = FinCommAlgebra::square_zero(&x).unwrap();
        assert_eq!(a.carrier().mult(), &[1, 0, 1, 0]);
        let rad = nilradical(&a);
        assert_eq!(rad.obj().mult(), &[0, 0, 1, 0], "radical is the X part");
        assert!(is_ideal(&a, &rad.sub));
        assert_eq!(ideal_vanishing_power(&a, &rad, 6), Some(2), "square-zero");
        let (ord, _) = a.underlying_ordinary();
        assert_eq!(ord.dim(), 1);
        assert_eq!(a.invariants().dim(), 1);
        assert!(is_local(&a).unwrap());
    }

    #[test]
    fn ideal_generated_by_unit_and_zero() {
        let p = 5;
        let x = VerObject::simple(p, 2).unwrap();
        let a = FinCommAlgebra::square_zero(&x).unwrap();
        // The subobject generated by the unit line is everything.
        let unit_sub = crate::ver::ver_image(a.unit_mor());
        let full = ideal_generated(&a, &unit_sub);
        assert_eq!(full.obj().mult(), a.carrier().mult());
        // The zero subobject generates the zero ideal.
        let zero = SubObject::zero(a.carrier());
        assert!(ideal_generated(&a, &zero).sub.is_zero());
    }

    #[test]
    fn nilradical_of_ordinary_examples() {
        let p = 5;
        let a = fp_x2(p);
        let rad = nilradical(&a);
        assert_eq!(rad.dim(), 1, "F_p[x]/(x²) has the line (x) as radical");
        assert!(!is_local(&fp_times_fp(p)).unwrap());
        assert!(nilradical(&fp_times_fp(p)).sub.is_zero());
        assert!(is_local(&a).unwrap());
    }

    #[test]
    fn idempotent_decomposition_dimensions() {
        let p = 5;
        let a = fp_x2_times_fp(p);
        let ord = a.invariants();
        let idems = ord.primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 2);
        let mut dims: Vec<usize> = idems.iter().map(|e| ord.component_dim(e)).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2], "localization dimensions add up");
    }

    #[test]
    fn non_split_quotient_is_reported() {
        // F_5[x]/(x² − 2): the field with 25 elements (2 is a non-residue).
        let p = 5;
        let table = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![2, 0]];
        let a = FinCommAlgebra::from_ordinary(p, 2, &table, &[1, 0]).unwrap();
        match primitive_idempotents(&a) {
            Err(CommAlgError::NonSplit {
                fixed_dim,
                total_dim,
            }) => {
                assert_eq!((fixed_dim, total_dim), (1, 2));
            }
            other => panic!("expected a non-split report, got {other:?}"),
        }
    }

    #[test]
    fn sym_trunc_l3_and_its_degree_ideal() {
        let p = 5;
        let x = VerObject::simple(p, 3).unwrap();
        let st = sym_trunc_algebra(&x, None).unwrap();
        // S(L_3) at p=5: degrees 1, L_3, L_1.
        assert_eq!(st.degrees.len(), 3);
        assert_eq!(st.alg.carrier().mult(), &[2, 0, 1, 0]);
        assert_eq!(st.alg.carrier().dim_vec(), 5);
        // The ideal generated by the degree-1 part contains degrees 1 and 2.
        let d1 = st.degree_subobject(1);
        let ideal = ideal_generated(&st.alg, &d1);
        assert_eq!(ideal.obj().mult(), &[1, 0, 1, 0]);
        assert!(is_ideal(&st.alg, &ideal.sub));
        // Ordinary part: only degree 0 survives.
        let (ord, _) = st.alg.underlying_ordinary();
        assert_eq!(ord.dim(), 1);
    }

    #[test]
    fn sym_trunc_l2_ordinary_part() {
        let p = 5;
        let x = VerObject::simple(p, 2).unwrap();
        let st = sym_trunc_algebra(&x, None).unwrap();
        assert_eq!(st.degrees.len(), 4, "degrees 0..3 of S(L_2)");
        assert_eq!(st.alg.carrier().dim_vec(), 10);
        let (ord, _) = st.alg.underlying_ordinary();
        assert_eq!(ord.dim(), 1, "all positive degrees are in the ideal");
        // The positive-degree ideal is nilpotent.
        let plus = st
            .degree_subobject(1)
            .sum(&st.degree_subobject(2).sum(&st.degree_subobject(3)));
        let ideal = IdealV { sub: plus };
        assert!(is_ideal(&st.alg, &ideal.sub));
        assert_eq!(ideal_vanishing_power(&st.alg, &ideal, 11), Some(4));
    }

    #[test]
    fn nontrivial_part_generates_nilpotent_ideal() {
        let p = 5;
        for x in [
            VerObject::simple(p, 2).unwrap(),
            VerObject::simple(p, 3).unwrap(),
        ] {
            let st = sym_trunc_algebra(&x, None).unwrap();
            let ideal = ideal_generated(&st.alg, &st.alg.nontrivial_part());
            assert!(
                ideal_vanishing_power(&st.alg, &ideal, st.alg.carrier().dim_vec() + 1).is_some(),
                "the ideal of non-trivial isotypics is nilpotent"
            );
        }
    }

    #[test]
    fn frobenius_is_linear_and_detects_radical() {
        let p = 5;
        let a = fp_x2_times_fp(p);
        let ord = a.invariants();
        let f = ord.frobenius_matrix();
        // x ∈ radical ⟺ killed by an iterated Frobenius.
        let rad = ord.nilradical_basis();
        assert_eq!(rad.cols(), 1);
        assert!(f.mul(&rad).is_zero(), "p ≥ nilpotency degree here");
    }
}
