//! The standard construction and the outer exact product.
//!
//! Given a subgroup `H` of `G` and a right transversal `M`, every element of
//! `G` factors uniquely as `h·m`; factoring the products `a·alpha` and `a·b`
//! yields the four structural tables of a hypergroup over `H`. Conversely,
//! any hypergroup rebuilds a group on the set `H x M` (the outer exact
//! product), and the two constructions invert each other.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupMorphism};
use crate::hypergroup::{HgError, Hypergroup, HypergroupMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("NotATransversal: {reason}")]
    NotATransversal { reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Axioms(#[from] HgError),
}

/// Fixed pairing of `(alpha, a)` with a single index: `alpha * m + a`.
#[inline]
pub fn pair_index(alpha: usize, a: usize, m: usize) -> usize {
    alpha * m + a
}

/// Inverse of [`pair_index`].
#[inline]
pub fn unpair_index(x: usize, m: usize) -> (usize, usize) {
    (x / m, x % m)
}

/// Builds the hypergroup of a subgroup and a right transversal.
///
/// `h_elems` must be a sorted subgroup; `members` is the transversal in the
/// order that will index the basic set. For each `a` in `M` and `alpha` in
/// `H` the product `a·alpha` is factored as `h·m`, giving `psi` and `phi`;
/// factoring `a·b` gives `lam` and `xi`.
pub fn standard_construct(
    g: &FiniteGroup,
    h_elems: &[usize],
    members: &[usize],
) -> Result<Hypergroup, ConstructError> {
    let h = g.subgroup_table(h_elems)?;
    let m = members.len();
    if h_elems.len() * m != g.order() {
        return Err(ConstructError::NotATransversal {
            reason: format!(
                "|H| * |M| = {} does not match |G| = {}",
                h_elems.len() * m,
                g.order()
            ),
        });
    }
    // factorization table: group element -> (H index, M index)
    let mut dec: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for (hi, &x) in h_elems.iter().enumerate() {
        for (mi, &t) in members.iter().enumerate() {
            let p = g.mul(x, t);
            if dec[p].is_some() {
                return Err(ConstructError::NotATransversal {
                    reason: format!("element {p} factors as h*m in two ways"),
                });
            }
            dec[p] = Some((hi, mi));
        }
    }
    if let Some(p) = dec.iter().position(|d| d.is_none()) {
        return Err(ConstructError::NotATransversal {
            reason: format!("element {p} has no h*m factorization"),
        });
    }
    let split = |x: usize| dec[x].expect("factorization is total");

    let ho = h.order();
    let mut phi = Vec::with_capacity(m * ho);
    let mut psi = Vec::with_capacity(m * ho);
    for &a in members {
        for &al in h_elems {
            let (hi, mi) = split(g.mul(a, al));
            psi.push(hi);
            phi.push(mi);
        }
    }
    let mut xi = Vec::with_capacity(m * m);
    let mut lam = Vec::with_capacity(m * m);
    for &a in members {
        for &b in members {
            let (hi, mi) = split(g.mul(a, b));
            lam.push(hi);
            xi.push(mi);
        }
    }
    Ok(Hypergroup::new(h, m, phi, psi, xi, lam)?)
}

/// The group rebuilt from a hypergroup on the index set `H x M`, together
/// with the canonical monomorphism `f0: alpha -> (alpha*theta, o)` and the
/// injection `f1: a -> (epsilon, a)`.
#[derive(Debug, Clone)]
pub struct ExactProductGroup {
    pub group: FiniteGroup,
    pub f0: GroupMorphism,
    pub f1: Vec<usize>,
}

/// The outer exact product: `alpha a · beta b = (alpha·^a beta·(a^beta, b)) [a^beta, b]`.
///
/// The resulting table is validated through the full group checker rather
/// than trusted.
pub fn exact_product(x: &Hypergroup) -> Result<ExactProductGroup, ConstructError> {
    let h = x.group();
    let m = x.basic_len();
    let n = h.order() * m;
    let mut rows = vec![vec![0usize; n]; n];
    for al in 0..h.order() {
        for a in 0..m {
            for be in 0..h.order() {
                for b in 0..m {
                    let ab = x.phi(a, be);
                    let scalar = h.mul3(al, x.psi(a, be), x.lam(ab, b));
                    rows[pair_index(al, a, m)][pair_index(be, b, m)] =
                        pair_index(scalar, x.xi(ab, b), m);
                }
            }
        }
    }
    let group = FiniteGroup::from_table(&rows)?;
    let derived = x.derived()?;
    let f0_map: Vec<usize> = (0..h.order())
        .map(|al| pair_index(h.mul(al, derived.theta), derived.o, m))
        .collect();
    let f0 = GroupMorphism::new(h.clone(), group.clone(), f0_map)?;
    if !f0.is_injective() {
        return Err(ConstructError::Axioms(HgError::AxiomViolation {
            identity: "f0 monomorphism".into(),
            tuple: vec![],
        }));
    }
    let f1: Vec<usize> = (0..m).map(|a| pair_index(h.identity(), a, m)).collect();
    debug_assert_eq!(group.identity(), pair_index(derived.theta, derived.o, m));
    Ok(ExactProductGroup { group, f0, f1 })
}

/// Rebuilds a hypergroup from its own exact product and returns the
/// connecting isomorphism.
///
/// With `Hbar = im f0` and `Mbar = im f1` inside `Gbar = H ⊙ M`, the
/// standard construction on `(Gbar, Hbar, Mbar)` is isomorphic to the
/// original hypergroup via the corestrictions of `f0` and `f1`; the four
/// table-preservation equalities are verified elementwise.
pub fn universality_roundtrip(x: &Hypergroup) -> Result<HypergroupMorphism, ConstructError> {
    let ep = exact_product(x)?;
    let hbar = ep.f0.image();
    let rebuilt = standard_construct(&ep.group, &hbar, &ep.f1)?;
    let f0: Vec<usize> = ep
        .f0
        .map()
        .iter()
        .map(|&v| hbar.binary_search(&v).expect("image element"))
        .collect();
    let f1: Vec<usize> = (0..x.basic_len()).collect();
    let morphism = HypergroupMorphism::new(x.clone(), rebuilt, f0, f1)?;
    morphism.check()?;
    if !morphism.is_isomorphism() {
        return Err(ConstructError::Axioms(HgError::AxiomViolation {
            identity: "roundtrip bijectivity".into(),
            tuple: vec![],
        }));
    }
    Ok(morphism)
}

/// The comparison map `(alpha, a) -> alpha·a` from the exact product of the
/// standard construction back into the ambient group.
///
/// Returns the exact product together with the map, validated as a
/// homomorphism. Its bijectivity and the compatibility with the inclusion
/// of `H` are the content of the reconstruction theorem and are asserted by
/// the callers.
pub fn reconstruction_map(
    g: &FiniteGroup,
    h_elems: &[usize],
    members: &[usize],
) -> Result<(ExactProductGroup, GroupMorphism), ConstructError> {
    let x = standard_construct(g, h_elems, members)?;
    let ep = exact_product(&x)?;
    let m = members.len();
    let map: Vec<usize> = (0..ep.group.order())
        .map(|idx| {
            let (al, a) = unpair_index(idx, m);
            g.mul(h_elems[al], members[a])
        })
        .collect();
    let morphism = GroupMorphism::new(ep.group.clone(), g.clone(), map)?;
    Ok((ep, morphism))
}
