//! Unipotent representations of the cyclic group of order p over F_p.
//!
//! A representation is a single invertible matrix u with u^p = 1
//! (equivalently (u−1)^p = 0: every such u is unipotent in characteristic
//! p). Indecomposables are the Jordan blocks J_1..J_p; J_p is the regular
//! representation and generates the projectives. The functions here compute
//! Jordan profiles, explicit direct-sum decompositions with inclusion and
//! projection maps, equivariant Hom bases, projective stripping, and the
//! negligible (trace-radical) subspace of a Hom space.

use crate::fp::{fp_inv, fp_mul, validate_prime, FpError, FpMatrix};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CyclicError {
    #[error(transparent)]
    Field(#[from] FpError),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix does not satisfy u^p = 1 (not a unipotent cyclic action)")]
    NotUnipotent,
    #[error("jordan block size {0} exceeds p = {1}")]
    BlockTooBig(usize, u16),
}

/// A representation of Z/p on F_p^dim: the action of the chosen generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    p: u16,
    u: FpMatrix,
}

/// Multiplicities m_1..m_p of the Jordan blocks J_1..J_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanProfile {
    pub p: u16,
    /// mult[k-1] = multiplicity of J_k, for k = 1..p.
    pub mult: Vec<usize>,
}

impl JordanProfile {
    pub fn dim(&self) -> usize {
        self.mult.iter().enumerate().map(|(i, m)| (i + 1) * m).sum()
    }

    /// Multiplicity of the projective block J_p.
    pub fn projective_mult(&self) -> usize {
        self.mult[self.p as usize - 1]
    }

    /// The non-projective multiplicities m_1..m_{p−1}.
    pub fn reduced(&self) -> Vec<usize> {
        self.mult[..self.p as usize - 1].to_vec()
    }
}

/// One Jordan chain of the decomposition: an inclusion of the standard block
/// J_k and the matching projection, with proj ∘ incl = id.
#[derive(Clone, Debug)]
pub struct Chain {
    pub k: usize,
    /// dim × k; columns are [N^{k−1}v, ..., Nv, v] for the chain top v.
    pub incl: FpMatrix,
    /// k × dim; rows extracted from the inverse basis-change matrix.
    pub proj: FpMatrix,
}

/// A full decomposition into Jordan chains, ordered by ascending block size
/// (then by discovery order within a size).
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub profile: JordanProfile,
    pub chains: Vec<Chain>,
}

/// Result of splitting off the maximal free (projective) direct summand.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub core: CyclicRep,
    /// rep.dim × core.dim equivariant inclusion of the core.
    pub incl: FpMatrix,
    /// core.dim × rep.dim equivariant projection, proj ∘ incl = id.
    pub proj: FpMatrix,
    pub free_rank: usize,
}

impl CyclicRep {
    pub fn new(p: u16, u: FpMatrix) -> Result<Self, CyclicError> {
        validate_prime(p)?;
        if u.rows() != u.cols() {
            return Err(CyclicError::NotSquare(u.rows(), u.cols()));
        }
        assert_eq!(u.p(), p, "matrix modulus differs from representation modulus");
        if !u.pow(p as u64).is_identity() {
            return Err(CyclicError::NotUnipotent);
        }
        Ok(CyclicRep { p, u })
    }

    /// The standard Jordan block J_k = I + N with N the upper shift.
    pub fn jordan_block(p: u16, k: usize) -> Result<Self, CyclicError> {
        validate_prime(p)?;
        if k > p as usize {
            return Err(CyclicError::BlockTooBig(k, p));
        }
        let u = FpMatrix::from_fn(p, k, k, |i, j| u64::from(j == i) + u64::from(j == i + 1));
        Ok(CyclicRep { p, u })
    }

    /// Block-diagonal assembly of standard Jordan blocks, sizes as given.
    pub fn block_diag(p: u16, sizes: &[usize]) -> Result<Self, CyclicError> {
        validate_prime(p)?;
        let mut u = FpMatrix::zero(p, 0, 0);
        for &k in sizes {
            let b = Self::jordan_block(p, k)?;
            u = u.direct_sum(&b.u);
        }
        Ok(CyclicRep { p, u })
    }

    /// The regular representation: a single block of size p.
    pub fn regular(p: u16) -> Result<Self, CyclicError> {
        Self::jordan_block(p, p as usize)
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn u(&self) -> &FpMatrix {
        &self.u
    }

    /// The nilpotent part N = u − 1.
    pub fn n(&self) -> FpMatrix {
        self.u.sub(&FpMatrix::identity(self.p, self.dim()))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        CyclicRep {
            p: self.p,
            u: self.u.kron(&other.u),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        CyclicRep {
            p: self.p,
            u: self.u.direct_sum(&other.u),
        }
    }

    /// Contragredient: g acts by (u^{-1})^T.
    pub fn dual(&self) -> Self {
        let inv = self.u.inverse().expect("group action is invertible");
        CyclicRep {
            p: self.p,
            u: inv.transpose(),
        }
    }

    /// Conjugated representation t·u·t^{-1} (same profile, new basis).
    pub fn conjugate(&self, t: &FpMatrix) -> Self {
        let tinv = t.inverse().expect("basis change must be invertible");
        CyclicRep {
            p: self.p,
            u: t.mul(&self.u).mul(&tinv),
        }
    }

    /// Jordan profile from the rank sequence of powers of N:
    /// m_k = r_{k−1} − 2 r_k + r_{k+1} with r_j = rank(N^j), r_j = 0 for j ≥ p.
    pub fn jordan_profile(&self) -> JordanProfile {
        let p = self.p as usize;
        let n = self.n();
        let mut ranks = Vec::with_capacity(p + 2);
        ranks.push(self.dim());
        let mut power = FpMatrix::identity(self.p, self.dim());
        for _j in 1..=p {
            power = power.mul(&n);
            ranks.push(power.rank());
        }
        assert_eq!(ranks[p], 0, "N^p must vanish for a unipotent action");
        ranks.push(0);
        let mult = (1..=p)
            .map(|k| ranks[k - 1] + ranks[k + 1] - 2 * ranks[k])
            .collect();
        JordanProfile { p: self.p, mult }
    }

    /// Explicit decomposition into Jordan chains.
    ///
    /// Staircase construction: for k = p down to 1, chain tops of length k
    /// are chosen in ker(N^k) extending a basis of ker(N^{k−1}) + N·ker(N^{k+1});
    /// the chain of a top v is {N^{k−1}v, ..., Nv, v}. The union of all
    /// chains is a basis (verified by inverting the assembled basis matrix).
    pub fn jordan_decompose(&self) -> Decomposition {
        let p = self.p as usize;
        let dim = self.dim();
        let n = self.n();
        // Kernel bases of N^0..N^{p+1}; ker(N^0) = 0, ker(N^j) = all for j ≥ p.
        let mut kernels: Vec<FpMatrix> = Vec::with_capacity(p + 2);
        kernels.push(FpMatrix::zero(self.p, dim, 0));
        let mut power = FpMatrix::identity(self.p, dim);
        for _j in 1..=p {
            power = power.mul(&n);
            kernels.push(power.kernel());
        }
        kernels.push(FpMatrix::identity(self.p, dim));

        // Tops per size, found from k = p downward.
        let mut tops_by_k: Vec<Vec<Vec<u8>>> = vec![Vec::new(); p + 1];
        for k in (1..=p).rev() {
            let lower = &kernels[k - 1];
            let shifted = n.mul(&kernels[k + 1]);
            let span = lower.hcat(&shifted);
            let candidates = &kernels[k];
            let aug = span.hcat(candidates);
            let piv = aug.pivot_columns();
            for c in piv.into_iter().filter(|&c| c >= span.cols()) {
                tops_by_k[k].push(candidates.column(c - span.cols()));
            }
        }

        // Assemble chains ascending in k; chain columns [N^{k−1}v, ..., v].
        let mut chains_cols: Vec<(usize, Vec<Vec<u8>>)> = Vec::new();
        let mut mult = vec![0usize; p];
        for (k, tops) in tops_by_k.iter().enumerate().skip(1) {
            for v in tops {
                let mut cols = Vec::with_capacity(k);
                let mut w = v.clone();
                cols.push(w.clone());
                for _ in 1..k {
                    w = n.apply(&w);
                    cols.push(w.clone());
                }
                cols.reverse();
                chains_cols.push((k, cols));
                mult[k - 1] += 1;
            }
        }
        let profile = JordanProfile { p: self.p, mult };
        assert_eq!(profile.dim(), dim, "staircase must exhaust the space");

        let all_cols: Vec<Vec<u8>> = chains_cols
            .iter()
            .flat_map(|(_, cols)| cols.iter().cloned())
            .collect();
        let t = FpMatrix::from_cols(self.p, dim, &all_cols);
        let t_inv = t
            .inverse()
            .expect("chain vectors of the staircase decomposition form a basis");

        let mut chains = Vec::with_capacity(chains_cols.len());
        let mut offset = 0usize;
        for (k, cols) in &chains_cols {
            let incl = FpMatrix::from_cols(self.p, dim, cols);
            let idx: Vec<usize> = (offset..offset + k).collect();
            let proj = t_inv.select_rows(&idx);
            chains.push(Chain {
                k: *k,
                incl,
                proj,
            });
            offset += k;
        }
        Decomposition { profile, chains }
    }

    /// Strip the maximal free summand.
    ///
    /// The free part is detected by im(N^{p−1}): its basis is lifted through
    /// first-pivot preimages (standard basis vectors at the pivot columns),
    /// each lift generating one J_p chain. The retraction onto the free part
    /// is solved for inside the equivariant Hom space, and the core is the
    /// image of the complementary idempotent with its induced action.
    pub fn strip_projectives(&self) -> Stripped {
        let p = self.p;
        let dim = self.dim();
        let n = self.n();
        let npm1 = n.pow(p as u64 - 1);
        let piv = npm1.pivot_columns();
        let free_rank = piv.len();
        let id = FpMatrix::identity(p, dim);

        if free_rank == 0 {
            return Stripped {
                core: self.clone(),
                incl: id.clone(),
                proj: id,
                free_rank,
            };
        }

        // Inclusion of the free module: one J_p chain per pivot preimage.
        let mut cols: Vec<Vec<u8>> = Vec::with_capacity(free_rank * p as usize);
        for &c in &piv {
            let mut v = vec![0u8; dim];
            v[c] = 1;
            let mut chain = vec![v.clone()];
            let mut w = v;
            for _ in 1..p as usize {
                w = n.apply(&w);
                chain.push(w.clone());
            }
            chain.reverse();
            cols.extend(chain);
        }
        let incl_free = FpMatrix::from_cols(p, dim, &cols);
        let free_std =
            CyclicRep::block_diag(p, &vec![p as usize; free_rank]).expect("valid block sizes");

        // Equivariant retraction: pi = sum x_m H_m with pi ∘ incl_free = id.
        let homs = hom_basis(self, &free_std);
        let fdim = free_std.dim();
        let mut sys = FpMatrix::zero(p, fdim * fdim, homs.len());
        for (m, h) in homs.iter().enumerate() {
            let hi = h.mul(&incl_free);
            for r in 0..fdim {
                for c in 0..fdim {
                    sys.set(r * fdim + c, m, hi.get(r, c) as u64);
                }
            }
        }
        let rhs = FpMatrix::from_fn(p, fdim * fdim, 1, |i, _| u64::from(i / fdim == i % fdim));
        let x = sys
            .solve(&rhs)
            .expect("free modules split off equivariantly");
        let mut pi = FpMatrix::zero(p, fdim, dim);
        for (m, h) in homs.iter().enumerate() {
            let c = x.get(m, 0);
            if c != 0 {
                pi = pi.add(&h.scale(c));
            }
        }
        debug_assert!(pi.mul(&incl_free).is_identity());

        // Core = image of the complementary idempotent.
        let compl = id.sub(&incl_free.mul(&pi));
        let core_basis = compl.column_space_basis();
        let core_u = core_basis
            .solve(&self.u.mul(&core_basis))
            .expect("core is u-stable");
        let core = CyclicRep { p, u: core_u };
        let core_proj = core_basis
            .solve(&compl)
            .expect("idempotent image factors through its column basis");
        Stripped {
            core,
            incl: core_basis,
            proj: core_proj,
            free_rank,
        }
    }
}

/// Closed-form basis of the equivariant maps J_a → J_b between standard
/// blocks: shifted diagonals F_t[i][j] = δ_{i, j + (t−a)} for t = 1..min(a,b)
/// (chain bases e_j with N e_j = e_{j−1}; F_t sends the top e_a to f_t).
fn std_block_homs(p: u16, a: usize, b: usize) -> Vec<FpMatrix> {
    (1..=a.min(b))
        .map(|t| {
            FpMatrix::from_fn(p, b, a, |i, j| {
                u64::from(j + t >= a && i == j + t - a)
            })
        })
        .collect()
}

/// Basis of the space of equivariant maps a → b, via decomposition of both
/// sides and the closed-form block Hom bases. Deterministic ordering:
/// chains of `a` outer, chains of `b` inner, shift index innermost.
pub fn hom_basis(a: &CyclicRep, b: &CyclicRep) -> Vec<FpMatrix> {
    assert_eq!(a.p(), b.p(), "moduli differ");
    let da = a.jordan_decompose();
    let db = b.jordan_decompose();
    let mut out = Vec::new();
    for ca in &da.chains {
        for cb in &db.chains {
            for f in std_block_homs(a.p(), ca.k, cb.k) {
                // Transport std J_{ca.k} → J_{cb.k} to a → b.
                out.push(cb.incl.mul(&f).mul(&ca.proj));
            }
        }
    }
    out
}

/// Dense Sylvester-kernel Hom basis (reference implementation for tests:
/// kernel of u_a^T ⊗ I − I ⊗ u_b acting on column-stacked matrices).
pub fn hom_basis_dense(a: &CyclicRep, b: &CyclicRep) -> Vec<FpMatrix> {
    assert_eq!(a.p(), b.p(), "moduli differ");
    let p = a.p();
    let (da, db) = (a.dim(), b.dim());
    let lhs = a.u().transpose().kron(&FpMatrix::identity(p, db));
    let rhs = FpMatrix::identity(p, da).kron(b.u());
    let k = lhs.sub(&rhs).kernel();
    (0..k.cols())
        .map(|j| {
            FpMatrix::from_fn(p, db, da, |r, c| k.get(c * db + r, j) as u64)
        })
        .collect()
}

/// Basis of the negligible subspace N(a,b) ⊆ Hom(a,b): maps f with
/// tr(g ∘ f) = 0 for every g ∈ Hom(b,a).
pub fn negligible_subspace(a: &CyclicRep, b: &CyclicRep) -> Vec<FpMatrix> {
    let p = a.p();
    let fs = hom_basis(a, b);
    let gs = hom_basis(b, a);
    if fs.is_empty() {
        return Vec::new();
    }
    let mut gram = FpMatrix::zero(p, gs.len().max(1), fs.len());
    for (j, g) in gs.iter().enumerate() {
        for (i, f) in fs.iter().enumerate() {
            gram.set(j, i, g.mul(f).trace() as u64);
        }
    }
    let k = gram.kernel();
    (0..k.cols())
        .map(|col| {
            let mut m = FpMatrix::zero(p, b.dim(), a.dim());
            for (i, f) in fs.iter().enumerate() {
                let c = k.get(i, col);
                if c != 0 {
                    m = m.add(&f.scale(c));
                }
            }
            m
        })
        .collect()
}

/// Project a Hom-space element to its coefficients over a given basis.
/// Returns None if `f` is not in the span.
pub fn in_span(basis: &[FpMatrix], f: &FpMatrix) -> Option<Vec<u8>> {
    if basis.is_empty() {
        return f.is_zero().then(Vec::new);
    }
    let p = f.p();
    let (r, c) = (f.rows(), f.cols());
    let mut sys = FpMatrix::zero(p, r * c, basis.len());
    for (m, b) in basis.iter().enumerate() {
        assert_eq!((b.rows(), b.cols()), (r, c), "basis shape mismatch");
        for i in 0..r {
            for j in 0..c {
                sys.set(i * c + j, m, b.get(i, j) as u64);
            }
        }
    }
    let rhs = FpMatrix::from_fn(p, r * c, 1, |i, _| f.get(i / c, i % c) as u64);
    sys.solve(&rhs).map(|x| x.column(0))
}

/// Scalar of the semisimple part of an equivariant endo-block between two
/// standard blocks of the same size: the top-left entry (all other
/// contributions are nilpotent shifts with zero diagonal).
pub fn block_scalar(m: &FpMatrix) -> u8 {
    m.get(0, 0)
}

/// Trace pairing value tr(g ∘ f) — the form whose radical is negligible.
pub fn trace_pairing(g: &FpMatrix, f: &FpMatrix) -> u8 {
    g.mul(f).trace()
}

/// Convenience: scalar multiple of identity plus strictly-upper content test.
pub fn is_scalar_plus_nilpotent(m: &FpMatrix) -> bool {
    let s = m.get(0, 0);
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            if i == j {
                m.get(i, j) == s
            } else if j < i {
                m.get(i, j) == 0
            } else {
                true
            }
        })
    })
}

#[allow(dead_code)]
fn unused_scalar_helpers(p: u16) -> u8 {
    // Keep fp scalar helpers linked into this module's doc surface.
    fp_mul(fp_inv(1, p), 1, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::CounterRng;

    fn profile(p: u16, sizes: &[usize]) -> Vec<usize> {
        let mut mult = vec![0usize; p as usize];
        for &k in sizes {
            mult[k - 1] += 1;
        }
        mult
    }

    #[test]
    fn profile_of_standard_blocks() {
        for p in [5u16, 7] {
            let sizes = [1usize, 2, 2, (p as usize) - 1, p as usize];
            let rep = CyclicRep::block_diag(p, &sizes).unwrap();
            assert_eq!(rep.jordan_profile().mult, profile(p, &sizes));
        }
    }

    #[test]
    fn profile_is_conjugation_invariant() {
        let mut rng = CounterRng::new(10);
        for p in [5u16, 7] {
            for case in 0..4 {
                let sizes: Vec<usize> = (0..2 + case % 3)
                    .map(|_| 1 + rng.below(p as u64) as usize)
                    .collect();
                let rep = CyclicRep::block_diag(p, &sizes).unwrap();
                let t = rng.invertible(p, rep.dim());
                let conj = rep.conjugate(&t);
                assert_eq!(conj.jordan_profile().mult, profile(p, &sizes));
            }
        }
    }

    /// Frozen tensor-decomposition table at p = 5: (i, j) → (reduced profile,
    /// projective multiplicity) of M_i ⊗ M_j.
    #[test]
    fn kronecker_profiles_p5() {
        type Row = ((usize, usize), (Vec<usize>, usize));
        let expected: &[Row] = &[
            ((1, 1), (vec![1, 0, 0, 0], 0)),
            ((1, 2), (vec![0, 1, 0, 0], 0)),
            ((1, 3), (vec![0, 0, 1, 0], 0)),
            ((1, 4), (vec![0, 0, 0, 1], 0)),
            ((2, 2), (vec![1, 0, 1, 0], 0)),
            ((2, 3), (vec![0, 1, 0, 1], 0)),
            ((2, 4), (vec![0, 0, 1, 0], 1)),
            ((3, 3), (vec![1, 0, 1, 0], 1)),
            ((3, 4), (vec![0, 1, 0, 0], 2)),
            ((4, 4), (vec![1, 0, 0, 0], 3)),
        ];
        for ((i, j), (red, projm)) in expected {
            let a = CyclicRep::jordan_block(5, *i).unwrap();
            let b = CyclicRep::jordan_block(5, *j).unwrap();
            for prof in [
                a.tensor(&b).jordan_profile(),
                b.tensor(&a).jordan_profile(),
            ] {
                assert_eq!(&prof.reduced(), red, "reduced profile of M_{i}⊗M_{j}");
                assert_eq!(&prof.projective_mult(), projm, "projectives in M_{i}⊗M_{j}");
            }
        }
    }

    #[test]
    fn hom_dimensions_are_min() {
        for p in [5u16, 7] {
            for a in 1..=p as usize {
                for b in 1..=p as usize {
                    let ra = CyclicRep::jordan_block(p, a).unwrap();
                    let rb = CyclicRep::jordan_block(p, b).unwrap();
                    let basis = hom_basis(&ra, &rb);
                    assert_eq!(basis.len(), a.min(b), "dim Hom(M_{a}, M_{b}) at p={p}");
                    for f in &basis {
                        assert_eq!(f.mul(ra.u()), rb.u().mul(f), "equivariance");
                    }
                }
            }
        }
    }

    #[test]
    fn hom_basis_matches_dense_reference() {
        let mut rng = CounterRng::new(11);
        for p in [5u16] {
            for _case in 0..3 {
                let sa: Vec<usize> = (0..2).map(|_| 1 + rng.below(4) as usize).collect();
                let sb: Vec<usize> = (0..2).map(|_| 1 + rng.below(4) as usize).collect();
                let ta = rng.invertible(p, sa.iter().sum());
                let tb = rng.invertible(p, sb.iter().sum());
                let a = CyclicRep::block_diag(p, &sa).unwrap().conjugate(&ta);
                let b = CyclicRep::block_diag(p, &sb).unwrap().conjugate(&tb);
                let fast = hom_basis(&a, &b);
                let dense = hom_basis_dense(&a, &b);
                assert_eq!(fast.len(), dense.len(), "hom dimension");
                // Same span: every dense element expressible over fast basis.
                for f in &dense {
                    assert!(in_span(&fast, f).is_some(), "span mismatch");
                }
            }
        }
    }

    #[test]
    fn decompose_recovers_blocks_and_splits() {
        let mut rng = CounterRng::new(12);
        for p in [5u16, 7] {
            for _case in 0..4 {
                let sizes: Vec<usize> = (0..3).map(|_| 1 + rng.below(p as u64) as usize).collect();
                let t = rng.invertible(p, sizes.iter().sum());
                let rep = CyclicRep::block_diag(p, &sizes).unwrap().conjugate(&t);
                let dec = rep.jordan_decompose();
                assert_eq!(dec.profile.mult, profile(p, &sizes));
                let id = FpMatrix::identity(p, rep.dim());
                let mut sum = FpMatrix::zero(p, rep.dim(), rep.dim());
                for ch in &dec.chains {
                    // proj ∘ incl = id on the block.
                    assert!(ch.proj.mul(&ch.incl).is_identity());
                    // Equivariance: u ∘ incl = incl ∘ J_k.
                    let jk = CyclicRep::jordan_block(p, ch.k).unwrap();
                    assert_eq!(rep.u().mul(&ch.incl), ch.incl.mul(jk.u()));
                    sum = sum.add(&ch.incl.mul(&ch.proj));
                }
                assert_eq!(sum, id, "chain idempotents resolve the identity");
            }
        }
    }

    #[test]
    fn strip_identifies_free_summands() {
        let p = 5u16;
        // Pure free module.
        let reg = CyclicRep::regular(p).unwrap();
        let s = reg.strip_projectives();
        assert_eq!(s.free_rank, 1);
        assert_eq!(s.core.dim(), 0);
        // Free-less module.
        let j3 = CyclicRep::jordan_block(p, 3).unwrap();
        let s = j3.strip_projectives();
        assert_eq!(s.free_rank, 0);
        assert_eq!(s.core.dim(), 3);
        assert!(s.proj.mul(&s.incl).is_identity());
        // Mixture, conjugated: M_3 ⊗ M_3 = M_1 ⊕ M_3 ⊕ M_5 at p = 5.
        let t33 = j3.tensor(&j3);
        let s = t33.strip_projectives();
        assert_eq!(s.free_rank, 1);
        assert_eq!(s.core.dim(), 4);
        assert_eq!(s.core.jordan_profile().reduced(), vec![1, 0, 1, 0]);
        assert!(s.proj.mul(&s.incl).is_identity());
        // Inclusion/projection are equivariant.
        assert_eq!(t33.u().mul(&s.incl), s.incl.mul(s.core.u()));
        assert_eq!(s.proj.mul(t33.u()), s.core.u().mul(&s.proj));
        // Complementary idempotent: incl∘proj + free part = id.
        let mut rng = CounterRng::new(13);
        let t = rng.invertible(p, 9);
        let conj = t33.conjugate(&t);
        let s2 = conj.strip_projectives();
        assert_eq!(s2.core.jordan_profile().reduced(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn negligible_dimensions() {
        for p in [5u16, 7] {
            for i in 1..=p as usize {
                let m = CyclicRep::jordan_block(p, i).unwrap();
                let n = negligible_subspace(&m, &m);
                let expect = if i == p as usize { i } else { i - 1 };
                assert_eq!(n.len(), expect, "dim N(M_{i}, M_{i}) at p={p}");
            }
            // Distinct simples: every map is negligible.
            for i in 1..p as usize {
                for j in 1..p as usize {
                    if i == j {
                        continue;
                    }
                    let a = CyclicRep::jordan_block(p, i).unwrap();
                    let b = CyclicRep::jordan_block(p, j).unwrap();
                    assert_eq!(negligible_subspace(&a, &b).len(), i.min(j));
                }
            }
        }
    }

    #[test]
    fn rejects_non_unipotent() {
        // Diagonal matrix with a non-identity semisimple part: u^p ≠ 1.
        let m = FpMatrix::from_rows_u64(5, &[vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            CyclicRep::new(5, m),
            Err(CyclicError::NotUnipotent)
        ));
    }
}
