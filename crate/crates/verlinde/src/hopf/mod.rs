//! Hopf algebra objects internal to the semisimplified category.
//!
//! A Hopf algebra here is a quintuple of class-level morphisms (product,
//! unit, coproduct, counit, antipode) on a carrier object, with every axiom
//! read modulo negligibles. The submodules provide verification
//! ([`verify::verify_hopf`]), the standard constructions (group algebras,
//! truncated symmetric algebras as Hopf algebras, tensor products, universal
//! envelopes with PBW certificates, duals, smash products), and the
//! structure theory on top of them (primitives, grouplikes, coradical
//! filtrations, Kostant decompositions, coHochschild cohomology).
//!
//! All large-scale computations happen on isotypic multiplicity matrices;
//! dense canonical-coordinate matrices appear only for small carriers.

use thiserror::Error;

use crate::commalg::CommAlgError;
use crate::fp::FpMatrix;
use crate::ver::{
    identity_mults, tensor_mult_canonical, tensor_struct, VerError, VerMorphism, VerObject,
};

pub mod cohoch;
pub mod corad;
pub mod dual;
pub mod envelope;
pub mod smash;
pub mod sym;
pub mod verify;

pub use cohoch::{cohochschild_cohomology, BigradedDims, CohomEntry};
pub use corad::{
    coradical_filtration, grouplikes, kostant_decomposition, primitives,
    relative_coradical_filtration, FiltrationV, Grouplikes, KostantDecomposition,
};
pub use dual::dual_hopf;
pub use envelope::{
    universal_envelope, universal_envelope_capped, universal_envelope_data, EnvelopeData,
    PbwCertificate, PbwDegree,
};
pub use smash::{smash_product, SmashData};
pub use sym::{group_algebra, sym_hopf, tensor_hopf, SymHopf};
pub use verify::{verify_hopf, BialgebraMode, HopfReport};

/// Errors from Hopf-algebra constructions and verifications.
#[derive(Debug, Error)]
pub enum HopfError {
    #[error(transparent)]
    Ver(#[from] VerError),
    #[error(transparent)]
    CommAlg(#[from] CommAlgError),
    #[error("carrier has an invariant part of multiplicity {mult}; the construction requires none")]
    InvariantPart { mult: usize },
    #[error("relation saturation did not stabilize by tensor degree {cap}")]
    SaturationDiverged { cap: usize },
    #[error("dimension {dim} exceeds the direct-check cap {cap} and no product certificate is attached")]
    TooLargeForDirectCheck { dim: usize, cap: usize },
    #[error("point enumeration needs {cost} candidates, above the cap {cap}")]
    EnumerationTooLarge { cost: u128, cap: u128 },
    #[error("operation requires a cocommutative coproduct")]
    NotCocommutative,
    #[error("group action does not preserve the Hopf structure: {reason}")]
    NotHopfAction { reason: String },
    #[error("constructed structure failed verification: {axiom}")]
    AxiomFailed { axiom: &'static str },
    #[error("filtration did not exhaust the carrier within {steps} steps")]
    FiltrationNotExhaustive { steps: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A Hopf algebra object: carrier H with product m: H⊗H → H, unit 1 → H,
/// coproduct Δ: H → H⊗H, counit H → 1, and antipode H → H. The two flags
/// are *claims* checked by [`verify_hopf`]; constructors set them when the
/// construction guarantees the property.
#[derive(Clone)]
pub struct VerHopfAlgebra {
    pub carrier: VerObject,
    pub mul: VerMorphism,
    pub unit: VerMorphism,
    pub comul: VerMorphism,
    pub counit: VerMorphism,
    pub antipode: VerMorphism,
    pub commutative: bool,
    pub cocommutative: bool,
    /// When the algebra was assembled as a smash product B # kΓ, the
    /// components are kept so verification can reduce the large bialgebra
    /// axiom to certified identities at the scale of B.
    pub smash: Option<Box<SmashData>>,
}

impl VerHopfAlgebra {
    pub fn p(&self) -> u16 {
        self.carrier.p()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim_vec()
    }

    /// Check that every structure map has the right domain and codomain.
    pub fn shape_check(&self) -> Result<(), HopfError> {
        let h = &self.carrier;
        let one = VerObject::unit(h.p());
        let hh = tensor_struct(h, h).obj.clone();
        let expect = [
            (&self.mul, hh.mult(), h.mult(), "product"),
            (&self.unit, one.mult(), h.mult(), "unit"),
            (&self.comul, h.mult(), hh.mult(), "coproduct"),
            (&self.counit, h.mult(), one.mult(), "counit"),
            (&self.antipode, h.mult(), h.mult(), "antipode"),
        ];
        for (f, dm, cm, name) in expect {
            if f.dom().mult() != dm || f.cod().mult() != cm {
                return Err(HopfError::Shape(format!(
                    "{name}: got {:?} → {:?}",
                    f.dom().mult(),
                    f.cod().mult()
                )));
            }
        }
        Ok(())
    }
}

/// The isotypic matrices of all five structure maps, extracted once.
pub(crate) struct HopfMults {
    pub m: Vec<FpMatrix>,
    pub u: Vec<FpMatrix>,
    pub d: Vec<FpMatrix>,
    pub e: Vec<FpMatrix>,
    pub s: Vec<FpMatrix>,
    pub id: Vec<FpMatrix>,
}

impl VerHopfAlgebra {
    pub(crate) fn mm(&self) -> HopfMults {
        HopfMults {
            m: self.mul.mult_maps(),
            u: self.unit.mult_maps(),
            d: self.comul.mult_maps(),
            e: self.counit.mult_maps(),
            s: self.antipode.mult_maps(),
            id: identity_mults(&self.carrier),
        }
    }
}

/// x ↦ x ⊗ 1: H → H⊗H at multiplicity level. The domain std(H⊗1) is
/// coordinate-identical to H, so the result reads directly as a map from H.
pub(crate) fn right_unit_embed(h: &VerObject, u_mm: &[FpMatrix]) -> Vec<FpMatrix> {
    let one = VerObject::unit(h.p());
    let ts_h1 = tensor_struct(h, &one);
    debug_assert_eq!(ts_h1.obj.mult(), h.mult());
    let ts_hh = tensor_struct(h, h);
    tensor_mult_canonical(&identity_mults(h), u_mm, &ts_h1, &ts_hh)
}

/// x ↦ 1 ⊗ x: H → H⊗H at multiplicity level.
pub(crate) fn left_unit_embed(h: &VerObject, u_mm: &[FpMatrix]) -> Vec<FpMatrix> {
    let one = VerObject::unit(h.p());
    let ts_1h = tensor_struct(&one, h);
    debug_assert_eq!(ts_1h.obj.mult(), h.mult());
    let ts_hh = tensor_struct(h, h);
    tensor_mult_canonical(u_mm, &identity_mults(h), &ts_1h, &ts_hh)
}

/// The multiplicity matrices of the morphism 1 → H picking out an invariant
/// vector (given by its coordinates in the multiplicity space of L_1).
pub(crate) fn element_mults(h: &VerObject, v: &[u8]) -> Vec<FpMatrix> {
    let p = h.p();
    assert_eq!(v.len(), h.mult_of(1), "invariant vector length");
    (1..p as usize)
        .map(|k| {
            if k == 1 {
                FpMatrix::from_fn(p, h.mult_of(1), 1, |r, _| u64::from(v[r]))
            } else {
                FpMatrix::zero(p, h.mult_of(k), 0)
            }
        })
        .collect()
}

/// Elementwise sum of isotypic families.
pub(crate) fn mm_add(a: &[FpMatrix], b: &[FpMatrix]) -> Vec<FpMatrix> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Elementwise difference of isotypic families.
pub(crate) fn mm_sub(a: &[FpMatrix], b: &[FpMatrix]) -> Vec<FpMatrix> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Zero family with the shape of a map dom → cod.
pub(crate) fn mm_zero(dom: &VerObject, cod: &VerObject) -> Vec<FpMatrix> {
    let p = dom.p();
    (1..p as usize)
        .map(|k| FpMatrix::zero(p, cod.mult_of(k), dom.mult_of(k)))
        .collect()
}
