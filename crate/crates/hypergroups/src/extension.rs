//! Group extensions and their classification by hypergroup orbits.
//!
//! An extension of `H` is a monomorphism `phi: H -> G`; its degree is the
//! index of the image. Extensions are classified two independent ways:
//! through orbits of hypergroups under the wreath action (the map `E` sends
//! a hypergroup to the embedding into its exact product, the map `H` pulls
//! the standard construction back along a transversal), and through direct
//! enumeration of the possible ambient groups. The two routes must agree,
//! and the composites of the two maps must fix representatives.

use thiserror::Error;

use crate::action::{
    enumerate_hypergroups, enumerate_trivial_phi_class, enumerate_trivial_phi_fixed_xi,
    orbits_full, orbits_kappa, orbits_xi_stabilizer, same_orbit, ActionError,
};
use crate::construction::{exact_product, pair_index, standard_construct, ConstructError};
use crate::group::{
    all_isomorphisms, enumerate_groups_oracle, isomorphism, isomorphism_extending, FiniteGroup,
    GroupError, GroupMorphism, ORACLE_LIMIT,
};
use crate::hypergroup::{HgError, Hypergroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("NotInjective: the map is not a monomorphism")]
    NotInjective,
    #[error("OrderTooLarge: ambient order {order} exceeds the oracle limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("DegreeTooLarge: degree {degree} is outside the orbit-search range")]
    DegreeTooLarge { degree: usize },
    #[error("ClassificationMismatch: {what}")]
    ClassificationMismatch { what: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hg(#[from] HgError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A group extension: a monomorphism together with its finite degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    phi: GroupMorphism,
}

impl Extension {
    pub fn new(phi: GroupMorphism) -> Result<Self, ExtError> {
        if !phi.is_injective() {
            return Err(ExtError::NotInjective);
        }
        if phi.target().order() % phi.source().order() != 0 {
            return Err(ExtError::NotInjective);
        }
        Ok(Extension { phi })
    }

    pub fn morphism(&self) -> &GroupMorphism {
        &self.phi
    }

    pub fn source(&self) -> &FiniteGroup {
        self.phi.source()
    }

    pub fn ambient(&self) -> &FiniteGroup {
        self.phi.target()
    }

    /// Index of the image in the ambient group.
    pub fn degree(&self) -> usize {
        self.ambient().order() / self.source().order()
    }

    /// Sorted image of the monomorphism.
    pub fn image(&self) -> Vec<usize> {
        self.phi.image()
    }

    pub fn is_normal(&self) -> bool {
        self.ambient().is_normal_subgroup(&self.image())
    }
}

/// Extension isomorphism: some `pi: G -> G'` with `pi(phi(h)) = phi'(h)`.
///
/// The search is seeded with the forced images of the subgroup, so the
/// backtracking only has the cosets left to match.
pub fn extensions_equal(a: &Extension, b: &Extension) -> bool {
    if a.source() != b.source() || a.ambient().order() != b.ambient().order() {
        return false;
    }
    let seed: Vec<(usize, usize)> = (0..a.source().order())
        .map(|x| (a.morphism().apply(x), b.morphism().apply(x)))
        .collect();
    isomorphism_extending(a.ambient(), b.ambient(), &seed).is_some()
}

/// The hypergroup of an extension along a chosen transversal of the image.
///
/// The basic set is indexed by `members` in the given order and the group
/// part is the abstract source `H`, pulled back through the monomorphism.
pub fn hypergroup_of_extension(
    e: &Extension,
    members: &[usize],
) -> Result<Hypergroup, ExtError> {
    let g = e.ambient();
    let image = e.image();
    let raw = standard_construct(g, &image, members)?;
    // relabel the H part from subgroup positions back to the abstract source
    let mut into_source = vec![usize::MAX; image.len()];
    for x in 0..e.source().order() {
        let pos = image
            .binary_search(&e.morphism().apply(x))
            .expect("image elements are in the image");
        into_source[pos] = x;
    }
    let from_source: Vec<usize> = (0..e.source().order())
        .map(|x| {
            image
                .binary_search(&e.morphism().apply(x))
                .expect("image elements are in the image")
        })
        .collect();
    let m = members.len();
    let x = Hypergroup::from_fns(
        e.source().clone(),
        m,
        |a, al| raw.phi(a, from_source[al]),
        |a, al| into_source[raw.psi(a, from_source[al])],
        |a, b| raw.xi(a, b),
        |a, b| into_source[raw.lam(a, b)],
    )?;
    Ok(x)
}

/// The canonical transversal of the image: the least element of each coset.
pub fn canonical_transversal(e: &Extension) -> Result<Vec<usize>, ExtError> {
    let cosets = e.ambient().right_cosets(&e.image())?;
    Ok(cosets.iter().map(|c| c[0]).collect())
}

/// The classification map `H`: an extension to a hypergroup over its source
/// (one representative of the well-defined orbit).
pub fn map_h(e: &Extension) -> Result<Hypergroup, ExtError> {
    let members = canonical_transversal(e)?;
    hypergroup_of_extension(e, &members)
}

/// The classification map `E`: a hypergroup to the extension
/// `f0: H -> H ⊙ M` into its exact product.
pub fn map_e(x: &Hypergroup) -> Result<Extension, ExtError> {
    let ep = exact_product(x)?;
    Extension::new(ep.f0)
}

/// Wreath orders above this are not walked for a single orbit.
const ORBIT_WALK_LIMIT: usize = 20_000;

/// The canonical representative (least table key) of the hypergroup orbit
/// of an extension. The whole wreath orbit is walked, so the degree is
/// guarded; the raw hypergroup is always available through [`map_h`].
pub fn orbit_representative_of_extension(e: &Extension) -> Result<Hypergroup, ExtError> {
    let m = e.degree();
    let w = crate::action::WreathGroup::new(e.source().clone(), m);
    if w.order() > ORBIT_WALK_LIMIT {
        return Err(ExtError::DegreeTooLarge { degree: m });
    }
    let x = map_h(e)?;
    Ok(crate::action::orbit_canonical_form(&x)?)
}

/// All monomorphisms from `h` into `g` whose image has index `degree`.
fn monomorphisms_of_degree(
    h: &FiniteGroup,
    g: &FiniteGroup,
    degree: usize,
) -> Vec<Extension> {
    let mut out = Vec::new();
    if h.order() * degree != g.order() {
        return out;
    }
    for subgroup in g.all_subgroups() {
        if subgroup.len() != h.order() {
            continue;
        }
        let table = g.subgroup_table(&subgroup).expect("listed subgroups are subgroups");
        for iso in all_isomorphisms(h, &table) {
            let map: Vec<usize> = iso.map().iter().map(|&p| subgroup[p]).collect();
            let phi = GroupMorphism::new(h.clone(), g.clone(), map)
                .expect("composite of isomorphism and inclusion");
            out.push(Extension::new(phi).expect("inclusion composites are injective"));
        }
    }
    out
}

/// Deduplicates a list of extensions by [`extensions_equal`], keeping the
/// first representative of each class.
pub fn dedupe_extensions(list: &[Extension]) -> Vec<Extension> {
    let mut reps: Vec<Extension> = Vec::new();
    for e in list {
        if !reps.iter().any(|r| extensions_equal(r, e)) {
            reps.push(e.clone());
        }
    }
    reps
}

/// Outcome of the two-route classification of `Ext_m(H)`.
#[derive(Debug, Clone)]
pub struct Classification {
    pub h: FiniteGroup,
    pub degree: usize,
    /// Canonical orbit representatives from the hypergroup enumeration,
    /// when the search space is supported.
    pub orbit_reps: Option<Vec<Hypergroup>>,
    /// One extension per orbit (the map `E` of each representative).
    pub orbit_extensions: Option<Vec<Extension>>,
    /// One extension per class from the ambient-group oracle, when the
    /// ambient order is within the oracle limit.
    pub oracle_extensions: Option<Vec<Extension>>,
    /// The agreed number of classes.
    pub class_count: usize,
}

/// Classifies the degree-`m` extensions of `h` by both routes and verifies
/// that they agree and that the maps `H` and `E` are mutually inverse on
/// representatives.
///
/// The orbit route is skipped when the hypergroup search space is out of
/// range, the oracle route when `|H|·m` exceeds the oracle limit; at least
/// one route must apply.
pub fn classify_ext(h: &FiniteGroup, m: usize) -> Result<Classification, ExtError> {
    let ambient_order = h.order() * m;

    let orbit_data = match enumerate_hypergroups(h, m) {
        Ok(all) => {
            let partition = orbits_full(&all)?;
            let reps: Vec<Hypergroup> = partition
                .orbits
                .iter()
                .map(|o| all[o.representative].clone())
                .collect();
            let exts: Vec<Extension> =
                reps.iter().map(map_e).collect::<Result<_, _>>()?;
            let deduped = dedupe_extensions(&exts);
            if deduped.len() != exts.len() {
                return Err(ExtError::ClassificationMismatch {
                    what: format!(
                        "distinct orbits gave equal extensions: {} orbits, {} classes",
                        exts.len(),
                        deduped.len()
                    ),
                });
            }
            // H∘E fixes every orbit
            for (rep, ext) in reps.iter().zip(&exts) {
                let back = map_h(ext)?;
                if !same_orbit(rep, &back)? {
                    return Err(ExtError::ClassificationMismatch {
                        what: "map_h(map_e(X)) left the orbit of X".into(),
                    });
                }
            }
            Some((reps, exts))
        }
        Err(ActionError::SearchSpaceTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let oracle_extensions = if ambient_order <= ORACLE_LIMIT {
        let mut all = Vec::new();
        for g in enumerate_groups_oracle(ambient_order)? {
            all.extend(monomorphisms_of_degree(h, &g, m));
        }
        let classes = dedupe_extensions(&all);
        // E∘H fixes every class
        for e in &classes {
            let x = map_h(e)?;
            let back = map_e(&x)?;
            if !extensions_equal(e, &back) {
                return Err(ExtError::ClassificationMismatch {
                    what: "map_e(map_h(phi)) is not isomorphic to phi".into(),
                });
            }
        }
        Some(classes)
    } else {
        None
    };

    let class_count = match (&orbit_data, &oracle_extensions) {
        (Some((_, r1)), Some(r2)) => {
            if r1.len() != r2.len() {
                return Err(ExtError::ClassificationMismatch {
                    what: format!("orbit route found {}, oracle route {}", r1.len(), r2.len()),
                });
            }
            // the two routes pair off bijectively
            let mut taken = vec![false; r2.len()];
            for e in r1 {
                match r2
                    .iter()
                    .position(|f| extensions_equal(e, f))
                {
                    Some(j) if !taken[j] => taken[j] = true,
                    Some(_) => {
                        return Err(ExtError::ClassificationMismatch {
                            what: "two orbits matched one oracle class".into(),
                        })
                    }
                    None => {
                        return Err(ExtError::ClassificationMismatch {
                            what: "orbit class missing from the oracle route".into(),
                        })
                    }
                }
            }
            r1.len()
        }
        (Some((_, r1)), None) => r1.len(),
        (None, Some(r2)) => r2.len(),
        (None, None) => {
            return Err(ExtError::OrderTooLarge {
                order: ambient_order,
                limit: ORACLE_LIMIT,
            })
        }
    };

    Ok(Classification {
        h: h.clone(),
        degree: m,
        orbit_reps: orbit_data.as_ref().map(|(reps, _)| reps.clone()),
        orbit_extensions: orbit_data.map(|(_, exts)| exts),
        oracle_extensions,
        class_count,
    })
}

/// Representative classes of a classification, preferring the oracle route.
pub fn class_representatives(c: &Classification) -> &[Extension] {
    c.oracle_extensions
        .as_deref()
        .or(c.orbit_extensions.as_deref())
        .expect("classification carries at least one route")
}

/// Splits the classes of `Ext_m(H)` into normal and non-normal parts,
/// verifying per class that normality coincides with triviality of the
/// action table of the associated hypergroup.
pub fn split_normal(c: &Classification) -> Result<(Vec<usize>, Vec<usize>), ExtError> {
    let mut normal = Vec::new();
    let mut rest = Vec::new();
    for (i, e) in class_representatives(c).iter().enumerate() {
        let is_normal = e.is_normal();
        let trivial = map_h(e)?.is_trivial_phi();
        if is_normal != trivial {
            return Err(ExtError::ClassificationMismatch {
                what: format!(
                    "class {i}: normal = {is_normal} but trivial action = {trivial}"
                ),
            });
        }
        if is_normal {
            normal.push(i);
        } else {
            rest.push(i);
        }
    }
    Ok((normal, rest))
}

/// The quotient of a normal extension, as a group on coset indices.
pub fn quotient_of_extension(e: &Extension) -> Result<FiniteGroup, ExtError> {
    let (q, _) = e.ambient().quotient_group(&e.image())?;
    Ok(q)
}

/// Classes of extensions of `h` by the group `q`, computed three ways.
///
/// The three routes coincide whenever every automorphism of `q` acts
/// trivially on the kappa orbits of the fixed-table set; the kappa-only
/// route `r3` counts finer classes otherwise (the stabilizer-corrected
/// count always matches the other two).
#[derive(Debug, Clone)]
pub struct QuotientClassification {
    /// Class representatives from the extension route.
    pub classes: Vec<Extension>,
    /// Normal classes with quotient isomorphic to `q` (extension route).
    pub r1_count: usize,
    /// Orbits of trivial-action hypergroups with `(M, xi)` isomorphic to
    /// `q`, under the full wreath group.
    pub r2_count: usize,
    /// Orbits of trivial-action hypergroups with `(M, xi)` equal to the
    /// table of `q`, under the kappa subgroup only.
    pub r3_count: usize,
    /// Orbits of the same fixed-table set under the full stabilizer of the
    /// table: kappa maps combined with table automorphisms.
    pub r3_stabilizer_count: usize,
}

impl QuotientClassification {
    pub fn routes_agree(&self) -> bool {
        self.r1_count == self.r2_count && self.r2_count == self.r3_count
    }
}

/// Classifies the extensions of `h` with quotient `q` by three independent
/// routes. The counts are reported, not asserted; see
/// [`QuotientClassification::routes_agree`].
pub fn ext_by_quotient(
    h: &FiniteGroup,
    q: &FiniteGroup,
) -> Result<QuotientClassification, ExtError> {
    let m = q.order();
    let classification = classify_ext(h, m)?;
    let mut classes = Vec::new();
    for e in class_representatives(&classification) {
        if !e.is_normal() {
            continue;
        }
        let quotient = quotient_of_extension(e)?;
        if isomorphism(&quotient, q).is_some() {
            classes.push(e.clone());
        }
    }
    let r1_count = classes.len();

    let class_set = enumerate_trivial_phi_class(h, q)?;
    let r2_count = orbits_full(&class_set)?.len();

    let fixed_set = enumerate_trivial_phi_fixed_xi(h, &q.rows())?;
    let r3_count = orbits_kappa(&fixed_set)?.len();
    let r3_stabilizer_count = orbits_xi_stabilizer(&fixed_set, &q.rows())?.len();

    Ok(QuotientClassification { classes, r1_count, r2_count, r3_count, r3_stabilizer_count })
}

/// The transport isomorphism for the kappa action: the exact product of
/// `(M_H)_kappa` maps onto the exact product of `M_H` by
/// `alpha a -> (alpha·kappa_a) a`. Validated as a homomorphism on
/// construction.
pub fn kappa_transport(
    x: &Hypergroup,
    kappa: &[usize],
) -> Result<GroupMorphism, ExtError> {
    let acted = crate::action::act_kappa(x, kappa)?;
    let ep_acted = exact_product(&acted)?;
    let ep = exact_product(x)?;
    let h = x.group();
    let m = x.basic_len();
    let map: Vec<usize> = (0..ep_acted.group.order())
        .map(|idx| {
            let (al, a) = crate::construction::unpair_index(idx, m);
            pair_index(h.mul(al, kappa[a]), a, m)
        })
        .collect();
    Ok(GroupMorphism::new(ep_acted.group, ep.group, map)?)
}

/// The transport isomorphism for the permutation action:
/// `alpha a -> alpha f^{-1}(a)` from the exact product of `(M_H)_f` onto
/// the exact product of `M_H`.
pub fn perm_transport(x: &Hypergroup, f: &[usize]) -> Result<GroupMorphism, ExtError> {
    let acted = crate::action::act_f(x, f)?;
    let ep_acted = exact_product(&acted)?;
    let ep = exact_product(x)?;
    let m = x.basic_len();
    let mut finv = vec![0usize; m];
    for (i, &v) in f.iter().enumerate() {
        finv[v] = i;
    }
    let map: Vec<usize> = (0..ep_acted.group.order())
        .map(|idx| {
            let (al, a) = crate::construction::unpair_index(idx, m);
            pair_index(al, finv[a], m)
        })
        .collect();
    Ok(GroupMorphism::new(ep_acted.group, ep.group, map)?)
}
