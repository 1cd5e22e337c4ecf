//! Hypergroups over a group: the four structural tables and their axioms.
//!
//! A hypergroup over a finite group `H` is a basic set `M = {0..m-1}` with
//! tables
//!
//! * `phi: M x H -> M` (written `a^alpha`), a right action of `H`,
//! * `psi: M x H -> H` (written `^a alpha`), surjective,
//! * `xi:  M x M -> M` (written `[a, b]`), a right quasigroup with a left
//!   neutral element `o`,
//! * `lam: M x M -> H` (written `(a, b)`), the factor table,
//!
//! subject to the compatibility identities A1-A5. These axioms are exactly
//! what the unique factorizations `a·alpha = ^a alpha · a^alpha` and
//! `a·b = (a, b)·[a, b]` satisfy inside an ambient group `G = H ⊙ M`.

use std::fmt;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgError {
    #[error("DimensionMismatch: {what}")]
    DimensionMismatch { what: String },
    #[error("AxiomViolation: {identity} fails at {tuple:?}")]
    AxiomViolation { identity: String, tuple: Vec<usize> },
    #[error("DomainMismatch: {what}")]
    DomainMismatch { what: String },
    #[error("NotTrivialPhi: the action table moves a point")]
    NotTrivialPhi,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The axioms of the definition, in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    P1i,
    P1ii,
    P2,
    P3,
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::P1i,
        Axiom::P1ii,
        Axiom::P2,
        Axiom::P3,
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A5,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::P1i => "P1(i)",
            Axiom::P1ii => "P1(ii)",
            Axiom::P2 => "P2",
            Axiom::P3 => "P3",
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A5 => "A5",
        };
        f.write_str(s)
    }
}

/// Per-axiom outcome: `None` means the axiom holds, otherwise the first
/// violating tuple in scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<(Axiom, Option<Vec<usize>>)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, v)| v.is_none())
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&[usize]> {
        self.results
            .iter()
            .find(|(a, _)| *a == axiom)
            .and_then(|(_, v)| v.as_deref())
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.results
            .iter()
            .filter(|(_, v)| v.is_some())
            .map(|(a, _)| *a)
            .collect()
    }
}

/// A hypergroup over the group `H` with basic set `0..m-1`.
///
/// The tables are stored flat and validated for shape on construction;
/// whether the axioms hold is a separate question answered by
/// [`Hypergroup::check_axioms`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergroup {
    h: FiniteGroup,
    m: usize,
    phi: Vec<usize>,
    psi: Vec<usize>,
    xi: Vec<usize>,
    lam: Vec<usize>,
}

impl fmt::Debug for Hypergroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergroup(|H|={}, m={})", self.h.order(), self.m)
    }
}

impl Hypergroup {
    pub fn new(
        h: FiniteGroup,
        m: usize,
        phi: Vec<usize>,
        psi: Vec<usize>,
        xi: Vec<usize>,
        lam: Vec<usize>,
    ) -> Result<Self, HgError> {
        let ho = h.order();
        if m == 0 {
            return Err(HgError::DimensionMismatch { what: "basic set is empty".into() });
        }
        let checks = [
            ("phi", &phi, m * ho, m),
            ("psi", &psi, m * ho, ho),
            ("xi", &xi, m * m, m),
            ("lam", &lam, m * m, ho),
        ];
        for (name, tab, len, range) in checks {
            if tab.len() != len {
                return Err(HgError::DimensionMismatch {
                    what: format!("{name} has {} entries, expected {len}", tab.len()),
                });
            }
            if let Some(pos) = tab.iter().position(|&v| v >= range) {
                return Err(HgError::DimensionMismatch {
                    what: format!("{name}[{pos}] = {} is out of range 0..{range}", tab[pos]),
                });
            }
        }
        Ok(Hypergroup { h, m, phi, psi, xi, lam })
    }

    /// Builds the tables from closures; sizes are taken on trust of `m`.
    pub fn from_fns(
        h: FiniteGroup,
        m: usize,
        phi: impl Fn(usize, usize) -> usize,
        psi: impl Fn(usize, usize) -> usize,
        xi: impl Fn(usize, usize) -> usize,
        lam: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, HgError> {
        let ho = h.order();
        let mut tphi = Vec::with_capacity(m * ho);
        let mut tpsi = Vec::with_capacity(m * ho);
        for a in 0..m {
            for al in 0..ho {
                tphi.push(phi(a, al));
                tpsi.push(psi(a, al));
            }
        }
        let mut txi = Vec::with_capacity(m * m);
        let mut tlam = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                txi.push(xi(a, b));
                tlam.push(lam(a, b));
            }
        }
        Hypergroup::new(h, m, tphi, tpsi, txi, tlam)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn basic_len(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn phi(&self, a: usize, alpha: usize) -> usize {
        self.phi[a * self.h.order() + alpha]
    }

    #[inline]
    pub fn psi(&self, a: usize, alpha: usize) -> usize {
        self.psi[a * self.h.order() + alpha]
    }

    #[inline]
    pub fn xi(&self, a: usize, b: usize) -> usize {
        self.xi[a * self.m + b]
    }

    #[inline]
    pub fn lam(&self, a: usize, b: usize) -> usize {
        self.lam[a * self.m + b]
    }

    pub fn phi_table(&self) -> &[usize] {
        &self.phi
    }

    pub fn psi_table(&self) -> &[usize] {
        &self.psi
    }

    pub fn xi_table(&self) -> &[usize] {
        &self.xi
    }

    pub fn lam_table(&self) -> &[usize] {
        &self.lam
    }

    /// Concatenated `(phi, psi, xi, lam)` tables; the comparison key used
    /// for canonical orbit representatives.
    pub fn table_key(&self) -> Vec<usize> {
        let mut key =
            Vec::with_capacity(self.phi.len() + self.psi.len() + self.xi.len() + self.lam.len());
        key.extend_from_slice(&self.phi);
        key.extend_from_slice(&self.psi);
        key.extend_from_slice(&self.xi);
        key.extend_from_slice(&self.lam);
        key
    }

    /// Runs the full axiom battery and reports the first counterexample of
    /// each axiom that fails.
    pub fn check_axioms(&self) -> AxiomReport {
        let h = &self.h;
        let m = self.m;
        let e = h.identity();
        let mut results = Vec::with_capacity(Axiom::ALL.len());

        // P1(i): every column of xi is a permutation
        let mut p1i = None;
        'p1i: for a in 0..m {
            let mut seen = vec![false; m];
            for x in 0..m {
                let v = self.xi(x, a);
                if seen[v] {
                    p1i = Some(vec![x, a]);
                    break 'p1i;
                }
                seen[v] = true;
            }
        }
        results.push((Axiom::P1i, p1i));

        // P1(ii): a left neutral row
        let o = (0..m).find(|&o| (0..m).all(|a| self.xi(o, a) == a));
        results.push((Axiom::P1ii, if o.is_some() { None } else { Some(vec![]) }));

        // P2: right action
        let mut p2 = None;
        'p2: for a in 0..m {
            if self.phi(a, e) != a {
                p2 = Some(vec![a, e]);
                break;
            }
            for al in 0..h.order() {
                for be in 0..h.order() {
                    if self.phi(self.phi(a, al), be) != self.phi(a, h.mul(al, be)) {
                        p2 = Some(vec![a, al, be]);
                        break 'p2;
                    }
                }
            }
        }
        results.push((Axiom::P2, p2));

        // P3: psi is surjective onto H
        let mut hit = vec![false; h.order()];
        for &v in &self.psi {
            hit[v] = true;
        }
        let p3 = hit.iter().position(|&b| !b).map(|missing| vec![missing]);
        results.push((Axiom::P3, p3));

        // A1: ^a(alpha*beta) = ^a alpha * ^{a^alpha} beta
        let mut a1 = None;
        'a1: for a in 0..m {
            for al in 0..h.order() {
                for be in 0..h.order() {
                    let lhs = self.psi(a, h.mul(al, be));
                    let rhs = h.mul(self.psi(a, al), self.psi(self.phi(a, al), be));
                    if lhs != rhs {
                        a1 = Some(vec![a, al, be]);
                        break 'a1;
                    }
                }
            }
        }
        results.push((Axiom::A1, a1));

        // A2: [a, b]^alpha = [a^{^b alpha}, b^alpha]
        let mut a2 = None;
        'a2: for a in 0..m {
            for b in 0..m {
                for al in 0..h.order() {
                    let lhs = self.phi(self.xi(a, b), al);
                    let rhs = self.xi(self.phi(a, self.psi(b, al)), self.phi(b, al));
                    if lhs != rhs {
                        a2 = Some(vec![a, b, al]);
                        break 'a2;
                    }
                }
            }
        }
        results.push((Axiom::A2, a2));

        // A3: (a, b) * ^{[a,b]} alpha = ^a(^b alpha) * (a^{^b alpha}, b^alpha)
        let mut a3 = None;
        'a3: for a in 0..m {
            for b in 0..m {
                for al in 0..h.order() {
                    let lhs = h.mul(self.lam(a, b), self.psi(self.xi(a, b), al));
                    let ba = self.psi(b, al);
                    let rhs =
                        h.mul(self.psi(a, ba), self.lam(self.phi(a, ba), self.phi(b, al)));
                    if lhs != rhs {
                        a3 = Some(vec![a, b, al]);
                        break 'a3;
                    }
                }
            }
        }
        results.push((Axiom::A3, a3));

        // A4: [[a, b], c] = [a^{(b,c)}, [b, c]]
        let mut a4 = None;
        'a4: for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let lhs = self.xi(self.xi(a, b), c);
                    let rhs = self.xi(self.phi(a, self.lam(b, c)), self.xi(b, c));
                    if lhs != rhs {
                        a4 = Some(vec![a, b, c]);
                        break 'a4;
                    }
                }
            }
        }
        results.push((Axiom::A4, a4));

        // A5: (a, b) * ([a,b], c) = ^a(b, c) * (a^{(b,c)}, [b, c])
        let mut a5 = None;
        'a5: for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let lhs = h.mul(self.lam(a, b), self.lam(self.xi(a, b), c));
                    let bc = self.lam(b, c);
                    let rhs =
                        h.mul(self.psi(a, bc), self.lam(self.phi(a, bc), self.xi(b, c)));
                    if lhs != rhs {
                        a5 = Some(vec![a, b, c]);
                        break 'a5;
                    }
                }
            }
        }
        results.push((Axiom::A5, a5));

        AxiomReport { results }
    }

    pub fn is_hypergroup(&self) -> bool {
        self.check_axioms().passed()
    }

    /// The left neutral element `o` of `(M, xi)`, when one exists.
    pub fn left_neutral(&self) -> Option<usize> {
        (0..self.m).find(|&o| (0..self.m).all(|a| self.xi(o, a) == a))
    }

    /// Computes the derived data `(o, theta, left inverses, H-inverses)` and
    /// verifies the derived identities A6-A11, the solvability identity (S),
    /// and bijectivity of `psi(o, ·)`. Any failure is reported as an
    /// [`HgError::AxiomViolation`]; on an axiom-satisfying hypergroup these
    /// are theorems, so a failure signals a checker bug.
    pub fn derived(&self) -> Result<HypergroupDerived, HgError> {
        let h = &self.h;
        let m = self.m;
        let e = h.identity();
        let o = self.left_neutral().ok_or_else(|| HgError::AxiomViolation {
            identity: "P1(ii)".into(),
            tuple: vec![],
        })?;
        let theta = h.inv(self.lam(o, o));
        let theta_inv = self.lam(o, o);

        let mut left_inv = vec![usize::MAX; m];
        for a in 0..m {
            let sols: Vec<usize> = (0..m).filter(|&x| self.xi(x, a) == o).collect();
            if sols.len() != 1 {
                return Err(HgError::AxiomViolation {
                    identity: "P1(i)".into(),
                    tuple: vec![a],
                });
            }
            left_inv[a] = sols[0];
        }
        let hinv: Vec<usize> =
            (0..m).map(|a| h.mul(theta, h.inv(self.lam(left_inv[a], a)))).collect();

        let fail = |identity: &str, tuple: Vec<usize>| -> HgError {
            HgError::AxiomViolation { identity: identity.into(), tuple }
        };

        for a in 0..m {
            // A6: ^a epsilon = epsilon
            if self.psi(a, e) != e {
                return Err(fail("A6", vec![a]));
            }
            // A10: [a, o] = a^{theta^{-1}}
            if self.xi(a, o) != self.phi(a, theta_inv) {
                return Err(fail("A10", vec![a]));
            }
            // A11: (a, o) = ^a(theta^{-1})
            if self.lam(a, o) != self.psi(a, theta_inv) {
                return Err(fail("A11", vec![a]));
            }
            // A9: (o, a) = theta^{-1}
            if self.lam(o, a) != theta_inv {
                return Err(fail("A9", vec![a]));
            }
        }
        for al in 0..h.order() {
            // A7: o^alpha = o
            if self.phi(o, al) != o {
                return Err(fail("A7", vec![al]));
            }
            // A8: ^o alpha = theta^{-1} * alpha * theta
            if self.psi(o, al) != h.mul3(theta_inv, al, theta) {
                return Err(fail("A8", vec![al]));
            }
        }
        // psi(o, ·) is a bijection of H (conjugation by theta)
        {
            let mut seen = vec![false; h.order()];
            for al in 0..h.order() {
                let v = self.psi(o, al);
                if seen[v] {
                    return Err(fail("psi(o,.) bijective", vec![al]));
                }
                seen[v] = true;
            }
        }
        // (S): ([b^{a^(-1)}, a^[-1]], a) * ^b(a^(-1)) * (b^{a^(-1)}, a^[-1]) = epsilon
        for a in 0..m {
            for b in 0..m {
                let ba = self.phi(b, hinv[a]);
                let x = self.xi(ba, left_inv[a]);
                let value = h.mul3(self.lam(x, a), self.psi(b, hinv[a]), self.lam(ba, left_inv[a]));
                if value != e {
                    return Err(fail("S", vec![a, b]));
                }
            }
        }
        Ok(HypergroupDerived { o, theta, left_inv, hinv })
    }

    /// `true` when the action table fixes every point: `a^alpha = a`.
    pub fn is_trivial_phi(&self) -> bool {
        (0..self.m)
            .all(|a| (0..self.h.order()).all(|al| self.phi(a, al) == a))
    }

    /// For a trivial-action hypergroup, checks the reduced axioms:
    /// (A) `(M, xi)` is a group, (B) every `psi(a, ·)` is an automorphism
    /// and conjugation-compatible with `lam`, (C) the factor identity.
    pub fn check_trivial_phi_axioms(&self) -> Result<TrivialPhiReport, HgError> {
        if !self.is_trivial_phi() {
            return Err(HgError::NotTrivialPhi);
        }
        let h = &self.h;
        let m = self.m;

        let xi_rows: Vec<Vec<usize>> =
            (0..m).map(|a| (0..m).map(|b| self.xi(a, b)).collect()).collect();
        let group_a = match FiniteGroup::from_table(&xi_rows) {
            Ok(_) => None,
            Err(GroupError::NotAssociative { i, j, k }) => Some(vec![i, j, k]),
            Err(_) => Some(vec![]),
        };

        // (B) psi rows are automorphisms, conjugated along xi by lam
        let mut twist_b = None;
        'b: for a in 0..m {
            let mut seen = vec![false; h.order()];
            for al in 0..h.order() {
                let v = self.psi(a, al);
                if seen[v] {
                    twist_b = Some(vec![a, al]);
                    break 'b;
                }
                seen[v] = true;
            }
            for al in 0..h.order() {
                for be in 0..h.order() {
                    if self.psi(a, h.mul(al, be)) != h.mul(self.psi(a, al), self.psi(a, be)) {
                        twist_b = Some(vec![a, al, be]);
                        break 'b;
                    }
                }
            }
        }
        if twist_b.is_none() {
            'b2: for a in 0..m {
                for b in 0..m {
                    let lab = self.lam(a, b);
                    for al in 0..h.order() {
                        let lhs = self.psi(self.xi(a, b), al);
                        let rhs = h.mul3(h.inv(lab), self.psi(a, self.psi(b, al)), lab);
                        if lhs != rhs {
                            twist_b = Some(vec![a, b, al]);
                            break 'b2;
                        }
                    }
                }
            }
        }

        // (C) (a, b)*([a,b], c) = ^a(b, c)*(a, [b, c])
        let mut factor_c = None;
        'c: for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let lhs = h.mul(self.lam(a, b), self.lam(self.xi(a, b), c));
                    let rhs = h.mul(self.psi(a, self.lam(b, c)), self.lam(a, self.xi(b, c)));
                    if lhs != rhs {
                        factor_c = Some(vec![a, b, c]);
                        break 'c;
                    }
                }
            }
        }

        Ok(TrivialPhiReport { group_a, twist_b, factor_c })
    }
}

/// Derived hypergroup data: the left neutral `o`, the element
/// `theta = (o,o)^{-1}`, left inverses in `(M, xi)`, and the `H`-part
/// `a^{(-1)} = theta * (a^{[-1]}, a)^{-1}` of the ambient inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergroupDerived {
    pub o: usize,
    pub theta: usize,
    pub left_inv: Vec<usize>,
    pub hinv: Vec<usize>,
}

/// Outcome of the reduced trivial-action axioms; `None` entries pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialPhiReport {
    pub group_a: Option<Vec<usize>>,
    pub twist_b: Option<Vec<usize>>,
    pub factor_c: Option<Vec<usize>>,
}

impl TrivialPhiReport {
    pub fn passed(&self) -> bool {
        self.group_a.is_none() && self.twist_b.is_none() && self.factor_c.is_none()
    }
}

/// A morphism of hypergroups over the group: a group homomorphism `f0` on
/// the `H`-parts and a map `f1` of basic sets preserving all four tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergroupMorphism {
    source: Hypergroup,
    target: Hypergroup,
    f0: Vec<usize>,
    f1: Vec<usize>,
}

impl HypergroupMorphism {
    pub fn new(
        source: Hypergroup,
        target: Hypergroup,
        f0: Vec<usize>,
        f1: Vec<usize>,
    ) -> Result<Self, HgError> {
        if f0.len() != source.group().order()
            || f0.iter().any(|&v| v >= target.group().order())
        {
            return Err(HgError::DimensionMismatch { what: "f0 has wrong shape".into() });
        }
        if f1.len() != source.basic_len() || f1.iter().any(|&v| v >= target.basic_len()) {
            return Err(HgError::DimensionMismatch { what: "f1 has wrong shape".into() });
        }
        Ok(HypergroupMorphism { source, target, f0, f1 })
    }

    pub fn identity(x: &Hypergroup) -> Self {
        HypergroupMorphism {
            source: x.clone(),
            target: x.clone(),
            f0: (0..x.group().order()).collect(),
            f1: (0..x.basic_len()).collect(),
        }
    }

    pub fn source(&self) -> &Hypergroup {
        &self.source
    }

    pub fn target(&self) -> &Hypergroup {
        &self.target
    }

    pub fn f0(&self) -> &[usize] {
        &self.f0
    }

    pub fn f1(&self) -> &[usize] {
        &self.f1
    }

    /// Verifies that `f0` is a group homomorphism and that the four squares
    /// for `phi`, `psi`, `xi`, `lam` commute; the first broken square is
    /// reported with its witness tuple.
    pub fn check(&self) -> Result<(), HgError> {
        let (s, t) = (&self.source, &self.target);
        let (hs, ht) = (s.group(), t.group());
        for x in 0..hs.order() {
            for y in 0..hs.order() {
                if self.f0[hs.mul(x, y)] != ht.mul(self.f0[x], self.f0[y]) {
                    return Err(HgError::AxiomViolation {
                        identity: "f0 homomorphism".into(),
                        tuple: vec![x, y],
                    });
                }
            }
        }
        for a in 0..s.basic_len() {
            for al in 0..hs.order() {
                if self.f1[s.phi(a, al)] != t.phi(self.f1[a], self.f0[al]) {
                    return Err(HgError::AxiomViolation {
                        identity: "phi square".into(),
                        tuple: vec![a, al],
                    });
                }
                if self.f0[s.psi(a, al)] != t.psi(self.f1[a], self.f0[al]) {
                    return Err(HgError::AxiomViolation {
                        identity: "psi square".into(),
                        tuple: vec![a, al],
                    });
                }
            }
        }
        for a in 0..s.basic_len() {
            for b in 0..s.basic_len() {
                if self.f1[s.xi(a, b)] != t.xi(self.f1[a], self.f1[b]) {
                    return Err(HgError::AxiomViolation {
                        identity: "xi square".into(),
                        tuple: vec![a, b],
                    });
                }
                if self.f0[s.lam(a, b)] != t.lam(self.f1[a], self.f1[b]) {
                    return Err(HgError::AxiomViolation {
                        identity: "lam square".into(),
                        tuple: vec![a, b],
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Diagram-order composite: first `self`, then `g`.
    pub fn then(&self, g: &HypergroupMorphism) -> Result<HypergroupMorphism, HgError> {
        if self.target != g.source {
            return Err(HgError::DomainMismatch {
                what: "composite endpoints do not match".into(),
            });
        }
        Ok(HypergroupMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            f0: self.f0.iter().map(|&v| g.f0[v]).collect(),
            f1: self.f1.iter().map(|&v| g.f1[v]).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        fn bijective(map: &[usize], n: usize) -> bool {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        }
        self.is_valid()
            && bijective(&self.f0, self.target.group().order())
            && bijective(&self.f1, self.target.basic_len())
    }
}
