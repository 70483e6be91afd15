//! Axiom verification for Hopf algebra objects, entirely modulo negligibles.
//!
//! Every check is an equality of isotypic multiplicity matrices, which is
//! exactly equality of classes. Associativity and coassociativity use the
//! sparse reassociator so triple tensor products never require dense
//! multiplicity matrices. The bialgebra compatibility (Δ∘m as a map on the
//! fourfold product) is quadratic in the carrier dimension and is checked
//! directly on raw coordinate pairs up to [`DIRECT_BIALGEBRA_CAP`]; beyond
//! the cap a smash-product certificate is required, and the reduction
//! re-derives the product structure from its components instead of trusting
//! any stored flags.

use rayon::prelude::*;

use crate::commalg::mm_compose;
use crate::fp::FpMatrix;
use crate::ver::{
    braid_mult, reassoc_sparse, sparse_mul_left, sparse_mul_right, tensor_mult_apply_left,
    tensor_mult_apply_right, tensor_mult_canonical, tensor_struct, VerMorphism, VerObject,
};

use super::smash::check_certificate;
use super::{left_unit_embed, right_unit_embed, HopfError, VerHopfAlgebra};

/// Largest carrier dimension for which the fourfold bialgebra identity is
/// checked directly on raw coordinate pairs.
pub const DIRECT_BIALGEBRA_CAP: usize = 64;

/// How the bialgebra compatibility axiom was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BialgebraMode {
    /// Raw-pair computation of (m⊗m)∘(id⊗c⊗id)∘(Δ⊗Δ) against Δ∘m.
    Direct,
    /// Reduction to the smash components: the identity was verified for the
    /// base algebra directly, the group action was verified to consist of
    /// bialgebra automorphisms, and the product structure was re-assembled
    /// from those components and compared with the stored maps.
    BlockReduced,
}

/// Outcome of [`verify_hopf`]: one flag per axiom, all modulo negligibles.
#[derive(Debug, Clone)]
pub struct HopfReport {
    pub associative: bool,
    pub unital: bool,
    pub coassociative: bool,
    pub counital: bool,
    /// Δ∘u = u⊗u, ε∘m = ε⊗ε, and ε∘u = id on the unit object.
    pub unit_counit_compat: bool,
    pub bialgebra: bool,
    pub bialgebra_mode: BialgebraMode,
    pub antipode: bool,
    /// `Some(result)` when the structure claims the property.
    pub commutative: Option<bool>,
    pub cocommutative: Option<bool>,
}

impl HopfReport {
    pub fn pass(&self) -> bool {
        self.associative
            && self.unital
            && self.coassociative
            && self.counital
            && self.unit_counit_compat
            && self.bialgebra
            && self.antipode
            && self.commutative != Some(false)
            && self.cocommutative != Some(false)
    }
}

/// Verify every Hopf axiom of `h` modulo negligibles and report per-axiom
/// results. Fails with an error only when a check is structurally impossible
/// (oversized carrier without a certificate); axiom violations are reported
/// as `false` flags, never as errors.
pub fn verify_hopf(h: &VerHopfAlgebra) -> Result<HopfReport, HopfError> {
    h.shape_check()?;
    let p = h.p();
    let car = &h.carrier;
    let mm = h.mm();
    let ts_hh = tensor_struct(car, car);
    let hh = ts_hh.obj.clone();
    let ts_hh_h = tensor_struct(&hh, car);
    let ts_h_hh = tensor_struct(car, &hh);

    // Associativity: m∘(m⊗id)∘τ = m∘(id⊗m) on H⊗(H⊗H), with the sparse
    // reassociator τ: std(H⊗(H⊗H)) → std((H⊗H)⊗H).
    let tau = reassoc_sparse(car, car, car);
    let associative = {
        let l1 = tensor_mult_apply_left(&mm.m, &mm.m, &mm.id, &ts_hh_h, &ts_hh);
        let lhs: Vec<FpMatrix> = (1..p as usize)
            .map(|k| sparse_mul_right(p, &l1[k - 1], &tau[k - 1], ts_h_hh.obj.mult_of(k)))
            .collect();
        let rhs = tensor_mult_apply_left(&mm.m, &mm.id, &mm.m, &ts_h_hh, &ts_hh);
        lhs == rhs
    };

    // Unitality: m∘(u⊗id) = id = m∘(id⊗u).
    let unital = {
        let le = left_unit_embed(car, &mm.u);
        let re = right_unit_embed(car, &mm.u);
        mm_compose(&mm.m, &le) == mm.id && mm_compose(&mm.m, &re) == mm.id
    };

    // Coassociativity: (Δ⊗id)∘Δ = τ∘(id⊗Δ)∘Δ.
    let coassociative = {
        let lhs = tensor_mult_apply_right(&mm.d, &mm.id, &ts_hh, &ts_hh_h, &mm.d);
        let r0 = tensor_mult_apply_right(&mm.id, &mm.d, &ts_hh, &ts_h_hh, &mm.d);
        let rhs: Vec<FpMatrix> = (1..p as usize)
            .map(|k| sparse_mul_left(p, ts_hh_h.obj.mult_of(k), &tau[k - 1], &r0[k - 1]))
            .collect();
        lhs == rhs
    };

    // Counit: (ε⊗id)∘Δ = id = (id⊗ε)∘Δ. The codomains std(1⊗H), std(H⊗1)
    // are coordinate-identical to H.
    let one = VerObject::unit(p);
    let counital = {
        let ts_1h = tensor_struct(&one, car);
        let ts_h1 = tensor_struct(car, &one);
        let l = tensor_mult_canonical(&mm.e, &mm.id, &ts_hh, &ts_1h);
        let r = tensor_mult_canonical(&mm.id, &mm.e, &ts_hh, &ts_h1);
        mm_compose(&l, &mm.d) == mm.id && mm_compose(&r, &mm.d) == mm.id
    };

    // Unit/counit compatibility: Δ∘u = u⊗u, ε∘m = ε⊗ε, ε∘u = id.
    let unit_counit_compat = {
        let ts_11 = tensor_struct(&one, &one);
        let uu = tensor_mult_canonical(&mm.u, &mm.u, &ts_11, &ts_hh);
        let ee = tensor_mult_canonical(&mm.e, &mm.e, &ts_hh, &ts_11);
        let eu = mm_compose(&mm.e, &mm.u);
        mm_compose(&mm.d, &mm.u) == uu
            && mm_compose(&mm.e, &mm.m) == ee
            && eu[0] == FpMatrix::identity(p, 1)
    };

    // Bialgebra fourfold compatibility.
    let (bialgebra, bialgebra_mode) = if let Some(data) = &h.smash {
        (check_certificate(h, data)?, BialgebraMode::BlockReduced)
    } else if h.dim() <= DIRECT_BIALGEBRA_CAP {
        (bialgebra_direct(h), BialgebraMode::Direct)
    } else {
        return Err(HopfError::TooLargeForDirectCheck {
            dim: h.dim(),
            cap: DIRECT_BIALGEBRA_CAP,
        });
    };

    // Antipode: m∘(S⊗id)∘Δ = u∘ε = m∘(id⊗S)∘Δ.
    let antipode = {
        let ue = mm_compose(&mm.u, &mm.e);
        let sl = tensor_mult_apply_right(&mm.s, &mm.id, &ts_hh, &ts_hh, &mm.d);
        let sr = tensor_mult_apply_right(&mm.id, &mm.s, &ts_hh, &ts_hh, &mm.d);
        mm_compose(&mm.m, &sl) == ue && mm_compose(&mm.m, &sr) == ue
    };

    // Claimed flags.
    let commutative = h.commutative.then(|| {
        let b = braid_mult(car, car);
        mm_compose(&mm.m, &b) == mm.m
    });
    let cocommutative = h.cocommutative.then(|| {
        let b = braid_mult(car, car);
        mm_compose(&b, &mm.d) == mm.d
    });

    Ok(HopfReport {
        associative,
        unital,
        coassociative,
        counital,
        unit_counit_compat,
        bialgebra,
        bialgebra_mode,
        antipode,
        commutative,
        cocommutative,
    })
}

/// Direct fourfold check on raw coordinate pairs: for every raw basis pair
/// (x, y) of H⊗H, compute (m⊗m)∘(id⊗c⊗id)∘(Δ⊗Δ)(x⊗y) honestly in raw
/// coordinates (the braiding is the plain swap there), project to canonical
/// coordinates, and compare the assembled map with Δ∘m as classes.
fn bialgebra_direct(h: &VerHopfAlgebra) -> bool {
    let p = h.p();
    let car = &h.carrier;
    let d = car.dim_vec();
    let n2 = d * d;
    let ts = tensor_struct(car, car);
    let std_dim: usize = ts.obj.dim_vec();

    // Raw product: H-coordinates from a raw pair, d × d².
    let m_raw = h.mul.mat().mul(&ts.proj_dense());
    // Left side Δ∘m on canonical coordinates.
    let lhs = h.comul.mat().mul(h.mul.mat());
    // Coproduct columns lifted to raw pairs, kept sparse.
    let comul_mat = h.comul.mat();
    let deltas: Vec<Vec<(usize, usize, u8)>> = (0..d)
        .map(|x| {
            let raw = ts.lift_std_vec(&comul_mat.column(x));
            raw.iter()
                .enumerate()
                .filter(|&(_, &v)| v != 0)
                .map(|(i, &v)| (i / d, i % d, v))
                .collect()
        })
        .collect();

    let cols: Vec<Vec<u8>> = (0..n2)
        .into_par_iter()
        .map(|xy| {
            let dx = &deltas[xy / d];
            let dy = &deltas[xy % d];
            // r1[e·n2 + out] = Σ Δx[a,b]·Δy[c,d']·m_raw[e,(a,c)] over terms
            // with out = (b,d'); the swap of the middle factors is the index
            // shuffle (a,b,c,d') ↦ ((a,c),(b,d')).
            let mut r1 = vec![0u32; d * n2];
            let mut touched = vec![false; n2];
            for &(a, b, va) in dx {
                for &(c, dd, vc) in dy {
                    let w = (u32::from(va) * u32::from(vc)) % u32::from(p);
                    if w == 0 {
                        continue;
                    }
                    let col_in = a * d + c;
                    let col_out = b * d + dd;
                    touched[col_out] = true;
                    for e in 0..d {
                        let mv = m_raw.get(e, col_in);
                        if mv != 0 {
                            r1[e * n2 + col_out] += w * u32::from(mv);
                        }
                    }
                }
            }
            // wraw[e·d + f] = Σ_out r1[e,out]·m_raw[f,out].
            let mut wraw = vec![0u32; n2];
            for (out, _) in touched.iter().enumerate().filter(|&(_, &t)| t) {
                for e in 0..d {
                    let re = r1[e * n2 + out] % u32::from(p);
                    if re == 0 {
                        continue;
                    }
                    for f in 0..d {
                        let mv = m_raw.get(f, out);
                        if mv != 0 {
                            wraw[e * d + f] += re * u32::from(mv);
                        }
                    }
                }
            }
            let wmod: Vec<u8> = wraw.iter().map(|&v| (v % u32::from(p)) as u8).collect();
            ts.project_raw_vec(&wmod)
        })
        .collect();

    let mut pr = FpMatrix::zero(p, std_dim, n2);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            if v != 0 {
                pr.set(i, j, u64::from(v));
            }
        }
    }
    let rhs = pr.mul(&ts.incl_dense());
    let lmor = VerMorphism::new_unchecked(ts.obj.clone(), ts.obj.clone(), lhs);
    let rmor = VerMorphism::new_unchecked(ts.obj.clone(), ts.obj.clone(), rhs);
    lmor.eq_mod_neg(&rmor)
}
