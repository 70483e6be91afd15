//! coHochschild cohomology of truncated symmetric coalgebras, computed from
//! the reduced cobar complex.
//!
//! For a graded coalgebra C = ⊕ S^n(X) the reduced cobar complex in weight
//! `q` has cochain groups
//!
//! ```text
//!   C_n(q) = ⊕  S^{a_1} ⊗ ... ⊗ S^{a_n}   over a_1 + ... + a_n = q, a_i ≥ 1,
//! ```
//!
//! with differential the alternating sum of the reduced-coproduct splits
//! applied in each tensor slot.  Cohomology is reported per bidegree
//! (cobar length, weight) as an isotypic multiplicity vector.

use serde::Serialize;

use crate::commalg::mm_compose;
use crate::fp::FpMatrix;
use crate::ver::{
    identity_mults, reassoc_mult, tensor_mult_canonical, tensor_struct, VerObject,
};

use super::{HopfError, SymHopf};

/// Dimension vector of one bigraded cohomology group.
#[derive(Clone, Debug, Serialize)]
pub struct CohomEntry {
    /// Weight: the symmetric-power grading of the coalgebra.
    pub degree: usize,
    /// Cohomological degree: the cobar word length.
    pub hom: usize,
    /// Isotypic multiplicities of the cohomology at this bidegree.
    pub mult: Vec<usize>,
}

/// The bigraded coHochschild cohomology up to a weight bound.
#[derive(Clone, Debug, Serialize)]
pub struct BigradedDims {
    pub p: u16,
    pub entries: Vec<CohomEntry>,
}

impl BigradedDims {
    /// The multiplicity vector at bidegree (hom, degree), if computed.
    pub fn get(&self, hom: usize, degree: usize) -> Option<&[usize]> {
        self.entries
            .iter()
            .find(|e| e.hom == hom && e.degree == degree)
            .map(|e| e.mult.as_slice())
    }
}

/// One weight column of the cobar complex: the admissible compositions,
/// their left-nested tensor objects, and each block's copy offsets inside
/// the formal direct sum.
struct CobarLevel {
    comps: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
    mult: Vec<usize>,
}

/// Compositions of `q` into exactly `n` parts from 1..=top.
fn compositions(q: usize, n: usize, top: usize) -> Vec<Vec<usize>> {
    fn rec(
        rem: usize,
        slots: usize,
        top: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = top.min(rem.saturating_sub(slots - 1));
        for a in 1..=hi {
            cur.push(a);
            rec(rem - a, slots - 1, top, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(q, n, top, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The left-nested canonical tensor object of a composition.
fn nested_obj(sh: &SymHopf, comp: &[usize]) -> VerObject {
    let mut cur = VerObject::unit(sh.hopf.p());
    for (j, &a) in comp.iter().enumerate() {
        cur = if j == 0 {
            sh.degrees[a].clone()
        } else {
            tensor_struct(&cur, &sh.degrees[a]).obj.clone()
        };
    }
    cur
}

fn level(sh: &SymHopf, q: usize, n: usize) -> CobarLevel {
    let kk = (sh.hopf.p() - 1) as usize;
    let comps = compositions(q, n, sh.top_degree());
    let mut offsets = Vec::with_capacity(comps.len());
    let mut mult = vec![0usize; kk];
    for comp in &comps {
        let o = nested_obj(sh, comp);
        offsets.push(mult.clone());
        for k in 1..=kk {
            mult[k - 1] += o.mult_of(k);
        }
    }
    CobarLevel {
        comps,
        offsets,
        mult,
    }
}

/// The reduced-coproduct split of slot `i` (1-based) of `comp` at cut `b`,
/// as a map between the left-nested objects of `comp` and of the refined
/// composition.
fn split_map(sh: &SymHopf, comp: &[usize], i: usize, b: usize) -> Vec<FpMatrix> {
    let a = comp[i - 1];
    let c = a - b;
    let sb = &sh.degrees[b];
    let sc = &sh.degrees[c];
    let delta = &sh.comul_parts[a][b];
    let (mut cur, mut dom, mut cod) = if i == 1 {
        (
            delta.clone(),
            sh.degrees[a].clone(),
            tensor_struct(sb, sc).obj.clone(),
        )
    } else {
        let pref = nested_obj(sh, &comp[..i - 1]);
        let w = tensor_struct(sb, sc).obj.clone();
        let ts_pa = tensor_struct(&pref, &sh.degrees[a]);
        let ts_pw = tensor_struct(&pref, &w);
        let inner = tensor_mult_canonical(&identity_mults(&pref), delta, &ts_pa, &ts_pw);
        let ra = reassoc_mult(&pref, sb, sc);
        (
            mm_compose(&ra, &inner),
            ts_pa.obj.clone(),
            tensor_struct(&tensor_struct(&pref, sb).obj, sc).obj.clone(),
        )
    };
    for &aj in &comp[i..] {
        let sj = &sh.degrees[aj];
        let ts_d = tensor_struct(&dom, sj);
        let ts_c = tensor_struct(&cod, sj);
        cur = tensor_mult_canonical(&cur, &identity_mults(sj), &ts_d, &ts_c);
        dom = ts_d.obj.clone();
        cod = ts_c.obj.clone();
    }
    cur
}

/// The cobar differential from word length `n` to `n + 1` in one weight.
fn differential(sh: &SymHopf, src: &CobarLevel, dst: &CobarLevel) -> Vec<FpMatrix> {
    let p = sh.hopf.p();
    let kk = (p - 1) as usize;
    let mut out: Vec<FpMatrix> = (1..=kk)
        .map(|k| FpMatrix::zero(p, dst.mult[k - 1], src.mult[k - 1]))
        .collect();
    for (ci, comp) in src.comps.iter().enumerate() {
        for i in 1..=comp.len() {
            let a = comp[i - 1];
            for b in 1..a {
                let mut tgt: Vec<usize> = comp[..i - 1].to_vec();
                tgt.push(b);
                tgt.push(a - b);
                tgt.extend_from_slice(&comp[i..]);
                let ti = dst
                    .comps
                    .iter()
                    .position(|t| *t == tgt)
                    .expect("refined composition is admissible");
                let block = split_map(sh, comp, i, b);
                let negate = (i - 1) % 2 == 1;
                for k in 1..=kk {
                    let blk = if negate {
                        block[k - 1].neg()
                    } else {
                        block[k - 1].clone()
                    };
                    let r0 = dst.offsets[ti][k - 1];
                    let c0 = src.offsets[ci][k - 1];
                    for r in 0..blk.rows() {
                        for cc in 0..blk.cols() {
                            let v = blk.get(r, cc);
                            if v != 0 {
                                out[k - 1].set(r0 + r, c0 + cc, u64::from(v));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Computes the bigraded coHochschild cohomology of the truncated symmetric
/// coalgebra in all weights `0..=qmax`.
///
/// The cobar differential is verified to square to zero before ranks are
/// taken; a failure is reported as a broken axiom rather than silently
/// producing dimensions.
pub fn cohochschild_cohomology(
    sh: &SymHopf,
    qmax: usize,
) -> Result<BigradedDims, HopfError> {
    let p = sh.hopf.p();
    let kk = (p - 1) as usize;
    if qmax >= p as usize {
        return Err(HopfError::Shape(format!(
            "weight bound {qmax} is out of range for p = {p}"
        )));
    }
    let mut entries = Vec::new();
    for q in 0..=qmax {
        let levels: Vec<CobarLevel> = (0..=q + 1).map(|n| level(sh, q, n)).collect();
        let diffs: Vec<Vec<FpMatrix>> = (0..=q)
            .map(|n| differential(sh, &levels[n], &levels[n + 1]))
            .collect();
        for n in 0..q {
            let dd = mm_compose(&diffs[n + 1], &diffs[n]);
            if dd.iter().any(|m| !m.is_zero()) {
                return Err(HopfError::AxiomFailed {
                    axiom: "cobar differential squares to zero",
                });
            }
        }
        for n in 0..=q {
            let mult: Vec<usize> = (0..kk)
                .map(|k| {
                    let rank_out = diffs[n][k].rank();
                    let rank_in = if n == 0 { 0 } else { diffs[n - 1][k].rank() };
                    levels[n].mult[k] - rank_out - rank_in
                })
                .collect();
            entries.push(CohomEntry {
                degree: q,
                hom: n,
                mult,
            });
        }
    }
    Ok(BigradedDims { p, entries })
}
