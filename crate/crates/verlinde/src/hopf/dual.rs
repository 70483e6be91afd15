//! Duals of Hopf algebras along the canonical self-duality of objects.
//!
//! Every object here is isomorphic to its dual; fixing the block Gram
//! pairing as the evaluation turns dualization into plain matrix algebra:
//! f: A → B dualizes to f^∨ = G_A⁻ᵀ fᵀ G_Bᵀ : B → A. The pairing on a
//! tensor square evaluates the factors pairwise, and because every fusion
//! channel J_a ⊗ J_b → J_k has a + b ≡ k + 1 (mod 2), the parity of the
//! Gram blocks is coherent across all structure maps — dualizing twice
//! reproduces the original morphisms on the nose (the same isotypic
//! blocks, not merely an isomorphic copy).

use crate::ver::{object_gram, tensor_struct, VerMorphism, VerObject};

use super::{HopfError, VerHopfAlgebra};

/// Largest carrier dimension for which the dual is assembled densely.
const DUAL_CAP: usize = 64;

/// The dual Hopf algebra on the same carrier. Multiplication dualizes the
/// coproduct and vice versa, unit and counit trade places, the antipode
/// dualizes in place, and the claimed (co)commutativity flags swap.
pub fn dual_hopf(h: &VerHopfAlgebra) -> Result<VerHopfAlgebra, HopfError> {
    let d = h.dim();
    if d > DUAL_CAP {
        return Err(HopfError::TooLargeForDirectCheck {
            dim: d,
            cap: DUAL_CAP,
        });
    }
    let carrier = h.carrier.clone();
    let g = object_gram(&carrier);
    let g_t = g.transpose();
    let g_inv_t = g
        .inverse()
        .ok_or_else(|| HopfError::Shape("carrier pairing is degenerate".into()))?
        .transpose();
    let ts_hh = tensor_struct(&carrier, &carrier);
    let incl = ts_hh.incl_dense();
    let q = incl.transpose().mul(&g.kron(&g)).mul(&incl);
    let q_t = q.transpose();
    let q_inv_t = q
        .inverse()
        .ok_or_else(|| HopfError::Shape("tensor-square pairing is degenerate".into()))?
        .transpose();

    let mul_mat = g_inv_t.mul(&h.comul.mat().transpose()).mul(&q_t);
    let comul_mat = q_inv_t.mul(&h.mul.mat().transpose()).mul(&g_t);
    let unit_mat = g_inv_t.mul(&h.counit.mat().transpose());
    let counit_mat = h.unit.mat().transpose().mul(&g_t);
    let antipode_mat = g_inv_t.mul(&h.antipode.mat().transpose()).mul(&g_t);

    let one = VerObject::unit(h.p());
    Ok(VerHopfAlgebra {
        mul: VerMorphism::new_unchecked(ts_hh.obj.clone(), carrier.clone(), mul_mat),
        unit: VerMorphism::new_unchecked(one.clone(), carrier.clone(), unit_mat),
        comul: VerMorphism::new_unchecked(carrier.clone(), ts_hh.obj.clone(), comul_mat),
        counit: VerMorphism::new_unchecked(carrier.clone(), one, counit_mat),
        antipode: VerMorphism::new_unchecked(carrier.clone(), carrier.clone(), antipode_mat),
        commutative: h.cocommutative,
        cocommutative: h.commutative,
        smash: None,
        carrier,
    })
}

#[cfg(test)]
mod tests {
    use super::super::envelope::universal_envelope;
    use super::super::sym::{group_algebra, sym_hopf};
    use super::super::verify::verify_hopf;
    use super::*;
    use crate::commalg::{is_local, FinCommAlgebra};
    use crate::lie::sl;

    // Equality of morphisms is equality of their isotypic blocks; dense
    // representatives may differ by negligible components.
    fn same_hopf(a: &VerHopfAlgebra, b: &VerHopfAlgebra) -> bool {
        a.mul.mult_maps() == b.mul.mult_maps()
            && a.unit.mult_maps() == b.unit.mult_maps()
            && a.comul.mult_maps() == b.comul.mult_maps()
            && a.counit.mult_maps() == b.counit.mult_maps()
            && a.antipode.mult_maps() == b.antipode.mult_maps()
    }

    #[test]
    fn dual_of_group_algebra_is_a_hopf_algebra() {
        let h = group_algebra(5, 3).unwrap();
        let dual = dual_hopf(&h).unwrap();
        let rep = verify_hopf(&dual).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.commutative, Some(true));
        assert_eq!(rep.cocommutative, Some(true));
        assert!(same_hopf(&dual_hopf(&dual).unwrap(), &h), "double dual");
    }

    #[test]
    fn dual_of_symmetric_algebra_passes() {
        let x = VerObject::simple(5, 2).unwrap();
        let h = sym_hopf(&x).unwrap().hopf;
        let dual = dual_hopf(&h).unwrap();
        assert!(verify_hopf(&dual).unwrap().pass());
        assert!(same_hopf(&dual_hopf(&dual).unwrap(), &h), "double dual");
    }

    #[test]
    fn function_algebra_of_pgl2_is_commutative_and_local() {
        let x = VerObject::simple(5, 2).unwrap();
        let (env, cert) = universal_envelope(&sl(&x).unwrap()).unwrap();
        assert!(cert.pass);
        let o = dual_hopf(&env).unwrap();
        assert_eq!(o.dim(), 5);
        assert_eq!(o.carrier.mult(), &[2, 0, 1, 0]);
        let rep = verify_hopf(&o).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.commutative, Some(true));
        // Independent validation of the algebra half, plus locality: the
        // function algebra of a connected group is local.
        let alg =
            FinCommAlgebra::new(o.carrier.clone(), o.mul.clone(), o.unit.clone()).unwrap();
        assert!(is_local(&alg).unwrap());
        assert!(same_hopf(&dual_hopf(&o).unwrap(), &env), "double dual");
    }
}
