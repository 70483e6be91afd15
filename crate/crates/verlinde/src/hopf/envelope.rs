//! Universal enveloping algebras with a PBW certificate.
//!
//! The envelope of a Lie algebra g is computed as a quotient of the tensor
//! algebra: the two-sided ideal generated by x⊗y − y⊗x − [x,y] is inserted
//! into all positions up to a truncation level, the level is raised until
//! the ideal's intersection with the low-degree filtration stabilizes, and
//! the quotient inherits the full Hopf structure (primitive coproduct,
//! reversal antipode). The certificate compares the associated graded
//! multiplicities of the filtered quotient against the symmetric powers of
//! the carrier — the Poincaré–Birkhoff–Witt property.

use serde::Serialize;

use crate::commalg::mm_compose;
use crate::fp::FpMatrix;
use crate::lie::VerLieAlgebra;
use crate::ver::{
    braid_mult, canonical_colspace, identity_mults, reassoc_mult, slot_pos, squared_parts,
    sym_nilpotence_degree, sym_powers, tensor_mult_canonical, tensor_struct, VerMorphism,
    VerObject,
};

use super::sym::{invert_family, sym_hopf};
use super::{mm_add, mm_zero, HopfError, VerHopfAlgebra};

/// One degree of the PBW comparison: the associated graded piece of the
/// filtered envelope against the corresponding symmetric power.
#[derive(Debug, Clone, Serialize)]
pub struct PbwDegree {
    pub n: usize,
    /// Isotypic multiplicities of gr_n U = U_n / U_{n−1}.
    #[serde(rename = "grU")]
    pub gr: Vec<usize>,
    /// Isotypic multiplicities of S^n(g).
    #[serde(rename = "S")]
    pub sym: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwCertificate {
    pub degrees: Vec<PbwDegree>,
    /// Truncation level at which the relation ideal stopped growing.
    pub stabilized_at: usize,
    pub pass: bool,
}

/// The envelope together with the canonical generator embedding g → U(g)
/// (the class of a degree-one tensor word).
pub struct EnvelopeData {
    pub hopf: VerHopfAlgebra,
    pub embedding: VerMorphism,
    pub certificate: PbwCertificate,
}

/// Build U(g) with its Hopf structure and the PBW certificate.
///
/// The carrier must have no invariant part — otherwise the symmetric
/// algebra, and with it the envelope, is infinite-dimensional.
pub fn universal_envelope(
    g: &VerLieAlgebra,
) -> Result<(VerHopfAlgebra, PbwCertificate), HopfError> {
    universal_envelope_capped(g, None)
}

/// As [`universal_envelope`], with an explicit cap on the tensor degree used
/// for relation saturation (default 2·D + 2 for top symmetric degree D).
pub fn universal_envelope_capped(
    g: &VerLieAlgebra,
    cap_override: Option<usize>,
) -> Result<(VerHopfAlgebra, PbwCertificate), HopfError> {
    universal_envelope_data(g, cap_override).map(|d| (d.hopf, d.certificate))
}

/// As [`universal_envelope_capped`], also returning the generator embedding.
pub fn universal_envelope_data(
    g: &VerLieAlgebra,
    cap_override: Option<usize>,
) -> Result<EnvelopeData, HopfError> {
    let x = &g.carrier;
    if x.is_zero() {
        let (hopf, certificate) = base_field(g.p());
        let embedding = VerMorphism::zero(x, &hopf.carrier);
        return Ok(EnvelopeData {
            hopf,
            embedding,
            certificate,
        });
    }
    if x.mult_of(1) > 0 {
        return Err(HopfError::InvariantPart {
            mult: x.mult_of(1),
        });
    }
    if g.is_abelian() {
        // U(g) = S(g) on the nose: the relations reduce to plain symmetry.
        let sh = sym_hopf(x)?;
        let degrees = sh
            .degrees
            .iter()
            .enumerate()
            .map(|(n, s)| PbwDegree {
                n,
                gr: s.mult().to_vec(),
                sym: s.mult().to_vec(),
            })
            .collect();
        let stabilized_at = sh.top_degree() + 1;
        let p = g.p();
        let kk = p as usize - 1;
        let car = sh.hopf.carrier.clone();
        let emb: Vec<FpMatrix> = (1..=kk)
            .map(|k| {
                let mut m = FpMatrix::zero(p, car.mult_of(k), x.mult_of(k));
                for c in 0..x.mult_of(k) {
                    m.set(sh.offsets[1][k - 1] + c, c, 1);
                }
                m
            })
            .collect();
        let embedding = VerMorphism::from_mult(x, &car, &emb);
        return Ok(EnvelopeData {
            hopf: sh.hopf,
            embedding,
            certificate: PbwCertificate {
                degrees,
                stabilized_at,
                pass: true,
            },
        });
    }
    envelope_generic(g, cap_override)
}

/// U(0) = the base field with its unique Hopf structure.
fn base_field(p: u16) -> (VerHopfAlgebra, PbwCertificate) {
    let one = VerObject::unit(p);
    let ts = tensor_struct(&one, &one);
    let id = identity_mults(&one);
    let h = VerHopfAlgebra {
        mul: VerMorphism::from_mult(&ts.obj, &one, &id),
        unit: VerMorphism::identity(&one),
        comul: VerMorphism::from_mult(&one, &ts.obj, &id),
        counit: VerMorphism::identity(&one),
        antipode: VerMorphism::identity(&one),
        carrier: one.clone(),
        commutative: true,
        cocommutative: true,
        smash: None,
    };
    let m = one.mult().to_vec();
    (
        h,
        PbwCertificate {
            degrees: vec![PbwDegree {
                n: 0,
                gr: m.clone(),
                sym: m,
            }],
            stabilized_at: 0,
            pass: true,
        },
    )
}

/// An insertion block T^a ⊗ R ⊗ T^b of the relation space R: the shared
/// domain carries a degree-two component (the antisymmetric tensor) and a
/// degree-one component (minus the bracket value).
struct Insertion {
    dom: VerObject,
    two: Vec<FpMatrix>,
    one: Vec<FpMatrix>,
}

struct RelationTable {
    a_obj: VerObject,
    sigma: Vec<FpMatrix>,
    minus_bracket: Vec<FpMatrix>,
    entries: Vec<Vec<Insertion>>,
}

impl RelationTable {
    /// Make sure entries[a][b] exists for all a + 2 + b ≤ level.
    fn ensure(&mut self, tobj: &[VerObject], x: &VerObject, id_x: &[FpMatrix], level: usize) {
        if level < 2 {
            return;
        }
        let xx = tensor_struct(x, x);
        for a in 0..=(level - 2) {
            while self.entries.len() <= a {
                self.entries.push(Vec::new());
            }
            let bmax = level - 2 - a;
            while self.entries[a].len() <= bmax {
                let b = self.entries[a].len();
                let next = if b == 0 {
                    let ts_da = tensor_struct(&tobj[a], &self.a_obj);
                    let id_ta = identity_mults(&tobj[a]);
                    let t2 = tensor_mult_canonical(
                        &id_ta,
                        &self.sigma,
                        &ts_da,
                        &tensor_struct(&tobj[a], &xx.obj),
                    );
                    let two = mm_compose(&reassoc_mult(&tobj[a], x, x), &t2);
                    let one = tensor_mult_canonical(
                        &id_ta,
                        &self.minus_bracket,
                        &ts_da,
                        &tensor_struct(&tobj[a], x),
                    );
                    Insertion {
                        dom: ts_da.obj.clone(),
                        two,
                        one,
                    }
                } else {
                    let prev = &self.entries[a][b - 1];
                    let ts_dom = tensor_struct(&prev.dom, x);
                    let two = tensor_mult_canonical(
                        &prev.two,
                        id_x,
                        &ts_dom,
                        &tensor_struct(&tobj[a + 2 + b - 1], x),
                    );
                    let one = tensor_mult_canonical(
                        &prev.one,
                        id_x,
                        &ts_dom,
                        &tensor_struct(&tobj[a + 1 + b - 1], x),
                    );
                    Insertion {
                        dom: ts_dom.obj.clone(),
                        two,
                        one,
                    }
                };
                self.entries[a].push(next);
            }
        }
    }
}

fn extend_powers(tobj: &mut Vec<VerObject>, x: &VerObject, n: usize) {
    while tobj.len() <= n {
        let next = tensor_struct(tobj.last().expect("nonempty"), x).obj.clone();
        tobj.push(next);
    }
}

/// woff[n][k−1] = first coordinate of T^n inside ⊕_{m ≤ level} T^m at
/// isotypic size k; woff[level+1] holds the total dimensions.
fn offsets(tobj: &[VerObject], level: usize, kk: usize) -> Vec<Vec<usize>> {
    let mut woff = vec![vec![0usize; kk]];
    for n in 0..=level {
        let mut next = woff[n].clone();
        for (k, slot) in next.iter_mut().enumerate() {
            *slot += tobj[n].mult_of(k + 1);
        }
        woff.push(next);
    }
    woff
}

/// Stack every insertion block with total degree ≤ level into one
/// generator matrix per isotypic size.
fn ideal_matrix(
    p: u16,
    kk: usize,
    rel: &RelationTable,
    level: usize,
    woff: &[Vec<usize>],
) -> Vec<FpMatrix> {
    let mut cols = vec![0usize; kk];
    for (a, row) in rel.entries.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            if a + 2 + b > level {
                continue;
            }
            for k in 1..=kk {
                cols[k - 1] += e.dom.mult_of(k);
            }
        }
    }
    let mut g: Vec<FpMatrix> = (1..=kk)
        .map(|k| FpMatrix::zero(p, woff[level + 1][k - 1], cols[k - 1]))
        .collect();
    let mut off = vec![0usize; kk];
    for (a, row) in rel.entries.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            if a + 2 + b > level {
                continue;
            }
            for k in 1..=kk {
                paste(&mut g[k - 1], &e.two[k - 1], woff[a + 2 + b][k - 1], off[k - 1]);
                paste(&mut g[k - 1], &e.one[k - 1], woff[a + 1 + b][k - 1], off[k - 1]);
                off[k - 1] += e.dom.mult_of(k);
            }
        }
    }
    g
}

fn paste(dst: &mut FpMatrix, src: &FpMatrix, r0: usize, c0: usize) {
    for r in 0..src.rows() {
        for c in 0..src.cols() {
            let v = src.get(r, c);
            if v != 0 {
                dst.set(r0 + r, c0 + c, u64::from(v));
            }
        }
    }
}

fn rev_rows(m: &FpMatrix) -> FpMatrix {
    let idx: Vec<usize> = (0..m.rows()).rev().collect();
    m.select_rows(&idx)
}

/// Reduced column-echelon basis with pivots at the *trailing* nonzero rows.
/// With trailing pivots, the span's intersection with a coordinate prefix
/// is spanned by exactly the basis columns supported inside the prefix, and
/// quotient sections live on the low-degree non-pivot coordinates.
fn trailing_echelon(g: &FpMatrix) -> FpMatrix {
    rev_rows(&canonical_colspace(&rev_rows(g)))
}

fn trailing_pivots(c: &FpMatrix) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..c.cols())
        .map(|j| {
            let r = (0..c.rows())
                .rev()
                .find(|&r| c.get(r, j) != 0)
                .expect("echelon basis column is nonzero");
            (r, j)
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

pub(crate) fn envelope_generic(
    g: &VerLieAlgebra,
    cap_override: Option<usize>,
) -> Result<EnvelopeData, HopfError> {
    let p = g.p();
    let kk = p as usize - 1;
    let x = &g.carrier;
    if x.mult_of(1) > 0 {
        return Err(HopfError::InvariantPart {
            mult: x.mult_of(1),
        });
    }

    // Top degree of S(g); beyond it the graded pieces of U vanish.
    let bound: usize = (1..=kk)
        .map(|k| x.mult_of(k) * (p as usize - k))
        .sum::<usize>()
        + 1;
    let nilp = sym_nilpotence_degree(x, bound).ok_or(HopfError::SaturationDiverged { cap: bound })?;
    let dtop = nilp - 1;
    let sym_tower = sym_powers(x, dtop);
    let cap = cap_override.unwrap_or(2 * dtop + 2);

    let id_x = identity_mults(x);
    let mut tobj: Vec<VerObject> = vec![VerObject::unit(p)];

    let (_, alt) = squared_parts(x);
    let sigma = alt.incl_mor().mult_maps();
    let minus_bracket: Vec<FpMatrix> = mm_compose(&g.bracket.mult_maps(), &sigma)
        .iter()
        .map(|m| m.neg())
        .collect();
    let mut rel = RelationTable {
        a_obj: alt.obj(),
        sigma,
        minus_bracket,
        entries: Vec::new(),
    };

    // Raise the truncation level until the ideal's intersection with the
    // degree-≤ dtop filtration steps is unchanged three levels in a row.
    let mut history: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stabilized = None;
    for level in (dtop + 2)..=cap {
        extend_powers(&mut tobj, x, level);
        rel.ensure(&tobj, x, &id_x, level);
        let woff = offsets(&tobj, level, kk);
        let gmat = ideal_matrix(p, kk, &rel, level, &woff);
        let prof: Vec<Vec<usize>> = (0..=dtop)
            .map(|n| {
                (1..=kk)
                    .map(|k| {
                        let c = trailing_echelon(&gmat[k - 1]);
                        trailing_pivots(&c)
                            .iter()
                            .filter(|&&(r, _)| r < woff[n + 1][k - 1])
                            .count()
                    })
                    .collect()
            })
            .collect();
        history.push(prof);
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            stabilized = Some(level);
            break;
        }
    }
    let stab = stabilized.ok_or(HopfError::SaturationDiverged { cap })?;

    // Final truncation: deep enough to hold products of two degree-≤ dtop
    // representatives.
    let dfin = stab.max(2 * dtop);
    extend_powers(&mut tobj, x, dfin);
    rel.ensure(&tobj, x, &id_x, dfin);
    let woff = offsets(&tobj, dfin, kk);
    let gmat = ideal_matrix(p, kk, &rel, dfin, &woff);

    // Quotient with trailing-pivot echelon: sections are unit vectors at
    // the non-pivot coordinates, which all lie in degrees ≤ dtop.
    let mut q_mm: Vec<FpMatrix> = Vec::with_capacity(kk);
    let mut nonpiv: Vec<Vec<usize>> = Vec::with_capacity(kk);
    for k in 1..=kk {
        let c = trailing_echelon(&gmat[k - 1]);
        let w = woff[dfin + 1][k - 1];
        let pairs = trailing_pivots(&c);
        let mut is_piv = vec![false; w];
        for &(r, _) in &pairs {
            debug_assert!(!is_piv[r], "distinct trailing pivots");
            is_piv[r] = true;
        }
        let free: Vec<usize> = (0..w).filter(|&r| !is_piv[r]).collect();
        if free.iter().any(|&r| r >= woff[dtop + 1][k - 1]) {
            return Err(HopfError::SaturationDiverged { cap: dfin });
        }
        let mut corr = FpMatrix::zero(p, w, w);
        for &(prow, col) in &pairs {
            debug_assert_eq!(c.get(prow, col), 1, "echelon pivots are normalized");
            for r in 0..w {
                let v = c.get(r, col);
                if v != 0 {
                    corr.set(r, prow, u64::from(v));
                }
            }
        }
        q_mm.push(FpMatrix::identity(p, w).sub(&corr).select_rows(&free));
        nonpiv.push(free);
    }
    let u_mult: Vec<usize> = nonpiv.iter().map(Vec::len).collect();
    let u_obj = VerObject::new(p, u_mult)?;

    // Coordinate → (degree, copy inside that degree) lookup per isotypic k.
    let decomp: Vec<Vec<(usize, usize)>> = (1..=kk)
        .map(|k| {
            let mut v = Vec::with_capacity(woff[dfin + 1][k - 1]);
            for (n, t) in tobj.iter().enumerate() {
                for c in 0..t.mult_of(k) {
                    v.push((n, c));
                }
            }
            v
        })
        .collect();

    // Concatenation maps θ[a][b]: T^a ⊗ T^b → T^{a+b} for a, b ≤ dtop.
    let mut theta: Vec<Vec<Vec<FpMatrix>>> = Vec::with_capacity(dtop + 1);
    for a in 0..=dtop {
        let mut row = vec![identity_mults(&tobj[a])];
        for b in 1..=dtop {
            let pab = tensor_struct(&tobj[a], &tobj[b - 1]);
            let step = mm_compose(
                &tensor_mult_canonical(
                    &row[b - 1],
                    &id_x,
                    &tensor_struct(&pab.obj, x),
                    &tensor_struct(&tobj[a + b - 1], x),
                ),
                &reassoc_mult(&tobj[a], &tobj[b - 1], x),
            );
            row.push(step);
        }
        theta.push(row);
    }

    // Product: per slot of U ⊗ U, the sections pick one tensor-word pair,
    // θ concatenates it, and q reduces back to the quotient basis.
    let ts_uu = tensor_struct(&u_obj, &u_obj);
    let usum = u_obj.summands();
    let mut bmat: Vec<FpMatrix> = (1..=kk)
        .map(|k| FpMatrix::zero(p, woff[dfin + 1][k - 1], ts_uu.obj.mult_of(k)))
        .collect();
    for t in &ts_uu.slots {
        let wa = nonpiv[t.ka - 1][usum[t.a].copy];
        let wb = nonpiv[t.kb - 1][usum[t.b].copy];
        let (da, ca) = decomp[t.ka - 1][wa];
        let (db, cb) = decomp[t.kb - 1][wb];
        let ts_small = tensor_struct(&tobj[da], &tobj[db]);
        let idx = ts_small.slot_index(
            tobj[da].summand_index(t.ka, ca),
            tobj[db].summand_index(t.kb, cb),
            t.chain,
        );
        let col_small = slot_pos(&ts_small, &ts_small.slots[idx]);
        let th = &theta[da][db][t.k - 1];
        let r0 = woff[da + db][t.k - 1];
        let bcol = slot_pos(&ts_uu, t);
        for r in 0..th.rows() {
            let v = th.get(r, col_small);
            if v != 0 {
                bmat[t.k - 1].set(r0 + r, bcol, u64::from(v));
            }
        }
    }
    let m_mm: Vec<FpMatrix> = (0..kk).map(|i| q_mm[i].mul(&bmat[i])).collect();

    // Split coproduct components δ[n][i]: T^n → T^i ⊗ T^{n−i} by routing
    // the last letter into either factor (braiding it past the right factor
    // when it goes left).
    let mut delta: Vec<Vec<Vec<FpMatrix>>> = vec![vec![identity_mults(&tobj[0])]];
    for n in 1..=dtop {
        let ts_px = tensor_struct(&tobj[n - 1], x);
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let cod = tensor_struct(&tobj[i], &tobj[n - i]);
            let mut acc = mm_zero(&tobj[n], &cod.obj);
            if i < n {
                let t1 = tensor_mult_canonical(
                    &delta[n - 1][i],
                    &id_x,
                    &ts_px,
                    &tensor_struct(&tensor_struct(&tobj[i], &tobj[n - 1 - i]).obj, x),
                );
                let rinv = invert_family(&reassoc_mult(&tobj[i], &tobj[n - 1 - i], x))?;
                acc = mm_add(&acc, &mm_compose(&rinv, &t1));
            }
            if i >= 1 {
                let right = &tobj[n - i];
                let t1 = tensor_mult_canonical(
                    &delta[n - 1][i - 1],
                    &id_x,
                    &ts_px,
                    &tensor_struct(&tensor_struct(&tobj[i - 1], right).obj, x),
                );
                let rinv = invert_family(&reassoc_mult(&tobj[i - 1], right, x))?;
                let t2 = mm_compose(&rinv, &t1);
                let t3 = tensor_mult_canonical(
                    &identity_mults(&tobj[i - 1]),
                    &braid_mult(right, x),
                    &tensor_struct(&tobj[i - 1], &tensor_struct(right, x).obj),
                    &tensor_struct(&tobj[i - 1], &tensor_struct(x, right).obj),
                );
                let t3 = mm_compose(&t3, &t2);
                let t4 = mm_compose(&reassoc_mult(&tobj[i - 1], x, right), &t3);
                acc = mm_add(&acc, &t4);
            }
            row.push(acc);
        }
        delta.push(row);
    }

    // Δ on U: push each split component through q ⊗ q.
    let qblk: Vec<Vec<FpMatrix>> = (0..=dtop)
        .map(|i| {
            (1..=kk)
                .map(|k| {
                    let cols: Vec<usize> = (woff[i][k - 1]..woff[i + 1][k - 1]).collect();
                    q_mm[k - 1].select_columns(&cols)
                })
                .collect()
        })
        .collect();
    let mut d_mm: Vec<FpMatrix> = (1..=kk)
        .map(|k| FpMatrix::zero(p, ts_uu.obj.mult_of(k), u_obj.mult_of(k)))
        .collect();
    for n in 0..=dtop {
        let mut mn: Vec<FpMatrix> = (1..=kk)
            .map(|k| FpMatrix::zero(p, ts_uu.obj.mult_of(k), tobj[n].mult_of(k)))
            .collect();
        for i in 0..=n {
            let tsd = tensor_struct(&tobj[i], &tobj[n - i]);
            let contrib = tensor_mult_canonical(&qblk[i], &qblk[n - i], &tsd, &ts_uu);
            for k in 0..kk {
                mn[k] = mn[k].add(&contrib[k].mul(&delta[n][i][k]));
            }
        }
        for k in 0..kk {
            for (ucopy, &w) in nonpiv[k].iter().enumerate() {
                let (dn, c) = decomp[k][w];
                if dn != n {
                    continue;
                }
                for r in 0..mn[k].rows() {
                    let v = mn[k].get(r, c);
                    if v != 0 {
                        d_mm[k].set(r, ucopy, u64::from(v));
                    }
                }
            }
        }
    }

    // Antipode: reversal with alternating sign, S(w·x) = −x·S(w), using the
    // prepend maps λ_n: X ⊗ T^{n−1} → T^n.
    let mut lam: Vec<Vec<FpMatrix>> = vec![Vec::new(), id_x.clone()];
    for n in 2..=dtop {
        let step = mm_compose(
            &tensor_mult_canonical(
                &lam[n - 1],
                &id_x,
                &tensor_struct(&tensor_struct(x, &tobj[n - 2]).obj, x),
                &tensor_struct(&tobj[n - 1], x),
            ),
            &reassoc_mult(x, &tobj[n - 2], x),
        );
        lam.push(step);
    }
    let mut stn: Vec<Vec<FpMatrix>> = vec![identity_mults(&tobj[0])];
    for n in 1..=dtop {
        let ts_prev = tensor_struct(&tobj[n - 1], x);
        let t1 = tensor_mult_canonical(&stn[n - 1], &id_x, &ts_prev, &ts_prev);
        let t2 = mm_compose(&braid_mult(&tobj[n - 1], x), &t1);
        let s_n: Vec<FpMatrix> = mm_compose(&lam[n], &t2).iter().map(|m| m.neg()).collect();
        stn.push(s_n);
    }
    let mut sb: Vec<FpMatrix> = (1..=kk)
        .map(|k| FpMatrix::zero(p, woff[dfin + 1][k - 1], u_obj.mult_of(k)))
        .collect();
    for k in 0..kk {
        for (ucopy, &w) in nonpiv[k].iter().enumerate() {
            let (dn, c) = decomp[k][w];
            let sm = &stn[dn][k];
            for r in 0..sm.rows() {
                let v = sm.get(r, c);
                if v != 0 {
                    sb[k].set(woff[dn][k] + r, ucopy, u64::from(v));
                }
            }
        }
    }
    let s_mm: Vec<FpMatrix> = (0..kk).map(|i| q_mm[i].mul(&sb[i])).collect();

    // Counit: coefficient of the empty word; unit: its class.
    let one = VerObject::unit(p);
    let e_mm: Vec<FpMatrix> = (1..=kk)
        .map(|k| {
            if k == 1 {
                FpMatrix::from_fn(p, 1, u_obj.mult_of(1), |_, c| u64::from(nonpiv[0][c] == 0))
            } else {
                FpMatrix::zero(p, 0, u_obj.mult_of(k))
            }
        })
        .collect();
    let u_mm: Vec<FpMatrix> = (1..=kk)
        .map(|k| {
            if k == 1 {
                q_mm[0].select_columns(&[0])
            } else {
                FpMatrix::zero(p, u_obj.mult_of(k), 0)
            }
        })
        .collect();

    let mut degrees = Vec::with_capacity(dtop + 1);
    let mut pass = true;
    for n in 0..=dtop {
        let gr: Vec<usize> = (0..kk)
            .map(|k| {
                nonpiv[k]
                    .iter()
                    .filter(|&&w| w >= woff[n][k] && w < woff[n + 1][k])
                    .count()
            })
            .collect();
        let sym = sym_tower.degrees[n].mult().to_vec();
        if gr != sym {
            pass = false;
        }
        degrees.push(PbwDegree { n, gr, sym });
    }

    // Generator embedding: the class of a degree-one word (T^1 shares its
    // coordinates with the carrier of g).
    let embedding = VerMorphism::from_mult(x, &u_obj, &qblk[1]);

    let h = VerHopfAlgebra {
        mul: VerMorphism::from_mult(&ts_uu.obj, &u_obj, &m_mm),
        unit: VerMorphism::from_mult(&one, &u_obj, &u_mm),
        comul: VerMorphism::from_mult(&u_obj, &ts_uu.obj, &d_mm),
        counit: VerMorphism::from_mult(&u_obj, &one, &e_mm),
        antipode: VerMorphism::from_mult(&u_obj, &u_obj, &s_mm),
        carrier: u_obj,
        commutative: g.is_abelian(),
        cocommutative: true,
        smash: None,
    };
    Ok(EnvelopeData {
        hopf: h,
        embedding,
        certificate: PbwCertificate {
            degrees,
            stabilized_at: stab,
            pass,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::verify::verify_hopf;
    use super::*;
    use crate::lie::sl;

    fn abelian(x: &VerObject) -> VerLieAlgebra {
        let ts = tensor_struct(x, x);
        VerLieAlgebra {
            carrier: x.clone(),
            bracket: VerMorphism::zero(&ts.obj, x),
            envelope: None,
        }
    }

    #[test]
    fn envelope_of_zero_is_base_field() {
        let g = abelian(&VerObject::zero(5));
        let (h, cert) = universal_envelope(&g).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(cert.pass);
        assert!(verify_hopf(&h).unwrap().pass());
    }

    #[test]
    fn generic_route_on_abelian_carrier_matches_symmetric_algebra() {
        let x = VerObject::simple(5, 2).unwrap();
        let data = envelope_generic(&abelian(&x), None).unwrap();
        let (h, cert) = (data.hopf, data.certificate);
        assert!(cert.pass, "{cert:?}");
        let sh = sym_hopf(&x).unwrap();
        assert_eq!(h.carrier.mult(), sh.hopf.carrier.mult());
        for (d, s) in cert.degrees.iter().zip(sh.degrees.iter()) {
            assert_eq!(d.gr, s.mult().to_vec(), "degree {}", d.n);
        }
        let rep = verify_hopf(&h).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.commutative, Some(true));
        assert_eq!(rep.cocommutative, Some(true));
    }

    #[test]
    fn envelope_of_sl2_at_p5_has_pbw_basis() {
        let x = VerObject::simple(5, 2).unwrap();
        let g = sl(&x).unwrap();
        let (h, cert) = universal_envelope(&g).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert_eq!(h.carrier.mult(), &[2, 0, 1, 0]);
        assert_eq!(h.dim(), 5);
        let rep = verify_hopf(&h).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.cocommutative, Some(true));
    }

    #[test]
    fn envelope_of_sl3_at_p5_has_pbw_basis() {
        let x = VerObject::simple(5, 3).unwrap();
        let g = sl(&x).unwrap();
        let (h, cert) = universal_envelope(&g).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert_eq!(h.dim(), 5);
        assert!(verify_hopf(&h).unwrap().pass());
    }

    #[test]
    fn envelope_of_sl2_at_p7_has_pbw_basis() {
        let x = VerObject::simple(7, 2).unwrap();
        let g = sl(&x).unwrap();
        let (h, cert) = universal_envelope(&g).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert_eq!(h.dim(), 14);
        assert!(verify_hopf(&h).unwrap().pass());
    }

    fn assert_embedding_is_primitive(data: &EnvelopeData, x: &VerObject) {
        let h = &data.hopf;
        let one = VerObject::unit(x.p());
        let emb = data.embedding.mult_maps();
        assert_eq!(data.embedding.dom().mult(), x.mult());
        let ts_uu = tensor_struct(&h.carrier, &h.carrier);
        let u_mm = h.unit.mult_maps();
        let lhs = mm_compose(&h.comul.mult_maps(), &emb);
        let left = tensor_mult_canonical(&emb, &u_mm, &tensor_struct(x, &one), &ts_uu);
        let right = tensor_mult_canonical(&u_mm, &emb, &tensor_struct(&one, x), &ts_uu);
        let rhs = mm_add(&left, &right);
        assert_eq!(lhs, rhs, "Δ∘ι must equal ι⊗1 + 1⊗ι");
        // The embedding is injective: full column rank in every isotypic block.
        for (k, m) in emb.iter().enumerate() {
            assert_eq!(m.rank(), x.mult_of(k + 1), "isotypic size {}", k + 1);
        }
    }

    #[test]
    fn generator_embedding_is_primitive_on_both_routes() {
        let l2 = VerObject::simple(5, 2).unwrap();
        let g = sl(&l2).unwrap();
        let data = universal_envelope_data(&g, None).unwrap();
        assert_embedding_is_primitive(&data, &g.carrier);

        let data = universal_envelope_data(&abelian(&l2), None).unwrap();
        assert_embedding_is_primitive(&data, &l2);
    }

    #[test]
    fn envelope_of_abelian_pair_is_symmetric_algebra() {
        let l2 = VerObject::simple(5, 2).unwrap();
        let x = l2.dsum(&l2);
        let (h, cert) = universal_envelope(&abelian(&x)).unwrap();
        assert_eq!(h.dim(), 50);
        assert!(cert.pass);
        assert_eq!(cert.stabilized_at, 7);
    }
}
