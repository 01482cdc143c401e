//! Worked configurations with hand-derived values, shared by the golden
//! tests and the acceptance run.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(dead_code)]

pub mod oracles;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use blade_angles::angles::AngleReport;
use blade_angles::bivector::{plucker_coordinate_of, rotor_transport, YVector};
use blade_angles::hitzer::hitzer_recover;
use blade_angles::identities::BladePair;
use blade_angles::linalg::{svd, Matrix};
use blade_angles::prelude::*;
use blade_angles::random::{random_blade, trial_rng};
use rand::Rng;

pub const GOLDEN: f64 = 1e-12;

pub fn tol() -> Tolerance64 {
    Tolerance64::default()
}

/// `Σ c_k x_k` over basis vectors of `R^n`.
pub fn vec_of(n: usize, terms: &[(usize, f64)]) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

pub fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

pub fn prod(alg: Algebra, vs: &[&Vec<f64>]) -> Multivector64 {
    let owned: Vec<Vec<f64>> = vs.iter().map(|v| (*v).clone()).collect();
    Multivector64::product_of_vectors(alg, &owned).unwrap()
}

pub fn scalar(alg: Algebra, x: f64) -> Multivector64 {
    Multivector64::scalar(alg, x)
}

pub fn blade(alg: Algebra, vs: &[&Vec<f64>]) -> Blade64 {
    let owned: Vec<Vec<f64>> = vs.iter().map(|v| (*v).clone()).collect();
    Blade64::from_vectors(alg, &owned, &tol()).unwrap()
}

/// Collects mismatches instead of stopping at the first one, so a failing
/// criterion reports everything that is off.
#[derive(Default)]
pub struct Check {
    failures: Vec<String>,
}

impl Check {
    pub fn mv(&mut self, label: &str, got: &Multivector64, expected: &Multivector64) {
        let diff = (got - expected).max_abs();
        if !(diff <= GOLDEN) {
            self.failures.push(format!("{label}: coefficient error {diff:e}"));
        }
    }

    pub fn scalar(&mut self, label: &str, got: f64, expected: f64) {
        self.close(label, got, expected, GOLDEN);
    }

    pub fn close(&mut self, label: &str, got: f64, expected: f64, eps: f64) {
        if !((got - expected).abs() <= eps) {
            self.failures.push(format!("{label}: got {got:.17e}, expected {expected:.17e}"));
        }
    }

    pub fn truth(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(format!("{label}: does not hold"));
        }
    }

    pub fn ok<T, E: std::fmt::Debug>(&mut self, label: &str, r: std::result::Result<T, E>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.failures.push(format!("{label}: {e:?}"));
                None
            }
        }
    }

    pub fn finish(self) -> std::result::Result<(), String> {
        if self.failures.is_empty() {
            Ok(())
        } else {
            Err(self.failures.join("; "))
        }
    }
}

// =======================================================================
// Two 3-blades sharing a line, with both remaining angles right
// =======================================================================

/// Orthonormal `e1, e2, e3, f2, f3` in `R^5`; `E = e1 e2 e3`,
/// `F = e1 f2 f3`.
pub struct OrthogonalPlanes {
    pub alg: Algebra,
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub e3: Vec<f64>,
    pub f2: Vec<f64>,
    pub f3: Vec<f64>,
    pub big_e: Blade64,
    pub big_f: Blade64,
}

impl OrthogonalPlanes {
    pub fn new() -> Self {
        let alg = Algebra::new(5).unwrap();
        let u = |i| vec_of(5, &[(i, 1.0)]);
        let (e1, e2, e3, f2, f3) = (u(0), u(1), u(2), u(3), u(4));
        let big_e = blade(alg, &[&e1, &e2, &e3]);
        let big_f = blade(alg, &[&e1, &f2, &f3]);
        OrthogonalPlanes { alg, e1, e2, e3, f2, f3, big_e, big_f }
    }

    pub fn principal(&self) -> PrincipalData64 {
        let e = vec![self.e1.clone(), self.e2.clone(), self.e3.clone()];
        let f = vec![self.e1.clone(), self.f2.clone(), self.f3.clone()];
        PrincipalData64::from_bases(&self.big_e, &self.big_f, e, f, &tol()).unwrap()
    }

    /// Same subspaces, with `f2' = -f2` in the second basis, so that
    /// `e1 f2' f3 = -F`.
    pub fn alternate_principal(&self) -> PrincipalData64 {
        let e = vec![self.e1.clone(), self.e2.clone(), self.e3.clone()];
        let f = vec![self.e1.clone(), neg(&self.f2), self.f3.clone()];
        PrincipalData64::from_bases(&self.big_e, &self.big_f, e, f, &tol()).unwrap()
    }
}

/// Rotor image `R̃ x R` of a vector.
pub fn rotate(rotor: &Multivector64, x: &[f64]) -> Vec<f64> {
    let xv = Multivector64::vector(rotor.algebra(), x).unwrap();
    (&(&rotor.reverse() * &xv) * rotor).vector_part()
}

fn vectors_close(c: &mut Check, label: &str, got: &[f64], expected: &[f64]) {
    let err = got.iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if !(err <= GOLDEN) {
        c.truth(&format!("{label} (error {err:e})"), false);
    }
}

pub fn orthogonal_planes_in_five_space() -> std::result::Result<(), String> {
    let x = OrthogonalPlanes::new();
    let alg = x.alg;
    let mut c = Check::default();
    let pd = x.principal();
    c.scalar("theta 1", pd.thetas()[0], 0.0);
    c.scalar("theta 2", pd.thetas()[1], FRAC_PI_2);
    c.scalar("theta 3", pd.thetas()[2], FRAC_PI_2);
    c.truth("one zero angle", pd.zero_count() == 1);
    c.truth("last angle that is not right", pd.last_non_right() == 1);
    c.truth("partially orthogonal", pd.is_partially_orthogonal());

    let e2f2 = prod(alg, &[&x.e2, &x.f2]);
    let e3f3 = prod(alg, &[&x.e3, &x.f3]);
    let e2f2e3f3 = &e2f2 * &e3f3;
    let phi = AngleBivector64::from_principal(pd.clone(), false).unwrap();
    c.mv("angle bivector", &phi.as_multivector(), &(&e2f2 + &e3f3).scale(FRAC_PI_2));
    c.mv("exponential", &phi.exp(), &e2f2e3f3);
    let half = phi.scaled(0.5).exp();
    let expected_half = (&(&(&scalar(alg, 1.0) + &e2f2) + &e3f3) + &e2f2e3f3).scale(0.5);
    c.mv("half exponential", &half, &expected_half);
    if let Some(moved) = c.ok("transport", rotor_transport(&x.big_e, &phi)) {
        c.mv("transport of E", moved.multivector(), x.big_f.multivector());
    }
    vectors_close(&mut c, "half rotor takes e2 to f2", &rotate(&half, &x.e2), &x.f2);
    let e2 = Multivector64::vector(alg, &x.e2).unwrap();
    c.mv("one-sided product", &(&e2 * &phi.exp()), &prod(alg, &[&x.f2, &x.e3, &x.f3]));

    let oriented = AngleBivector64::from_principal(pd, true).unwrap();
    c.mv("oriented equals unoriented", &oriented.as_multivector(), &phi.as_multivector());

    // Principal bases with f2 flipped: F = -e1 f2' f3.
    let alt = x.alternate_principal();
    let f2p = neg(&x.f2);
    c.truth("alternate relative orientation", alt.eps_ab().is_negative());
    let alt_phi = AngleBivector64::from_principal(alt.clone(), false).unwrap();
    c.mv("alternate unoriented exponential", &alt_phi.exp(), &(-&e2f2e3f3));
    if let Some(moved) = c.ok("alternate transport", rotor_transport(&x.big_e, &alt_phi)) {
        c.mv("alternate transport of E", moved.multivector(), &(-x.big_f.multivector()));
    }
    let alt_oriented = AngleBivector64::from_principal(alt, true).unwrap();
    let e2f2p = prod(alg, &[&x.e2, &f2p]);
    c.mv("alternate oriented bivector", &alt_oriented.as_multivector(), &(&e2f2p - &e3f3).scale(FRAC_PI_2));
    c.mv("alternate oriented exponential", &alt_oriented.exp(), &(-&(&e2f2p * &e3f3)));
    c.mv("both oriented exponentials agree", &alt_oriented.exp(), &e2f2e3f3);
    let alt_half = alt_oriented.scaled(0.5).exp();
    c.truth("half rotors differ", (&alt_half - &half).max_abs() > 0.1);
    vectors_close(&mut c, "alternate rotor fixes e1", &rotate(&alt_half, &x.e1), &x.e1);
    vectors_close(&mut c, "alternate rotor takes e2 to f2'", &rotate(&alt_half, &x.e2), &f2p);
    vectors_close(&mut c, "alternate rotor takes e3 to -f3", &rotate(&alt_half, &x.e3), &neg(&x.f3));
    if let Some(moved) = c.ok("oriented transport", rotor_transport(&x.big_e, &alt_oriented)) {
        c.mv("oriented transport of E", moved.multivector(), x.big_f.multivector());
    }
    c.finish()
}

// =======================================================================
// Two planes in R^4 meeting only at the origin
// =======================================================================

/// Orthonormal `f1, f2, g1, g2`; `e1 = (f1 + 3 g1)/√10`,
/// `e2 = (2 f2 + g2)/√5`, `A = e1 e2`, `B = f1 f2`.
pub struct TiltedPlanes {
    pub alg: Algebra,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub g1: Vec<f64>,
    pub g2: Vec<f64>,
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub a: Blade64,
    pub b: Blade64,
    /// `g1 f1`
    pub i1: Multivector64,
    /// `g2 f2`
    pub i2: Multivector64,
}

impl TiltedPlanes {
    pub fn new() -> Self {
        let alg = Algebra::new(4).unwrap();
        let s10 = 10f64.sqrt();
        let s5 = 5f64.sqrt();
        let (f1, f2, g1, g2) =
            (vec_of(4, &[(0, 1.0)]), vec_of(4, &[(1, 1.0)]), vec_of(4, &[(2, 1.0)]), vec_of(4, &[(3, 1.0)]));
        let e1 = vec_of(4, &[(0, 1.0 / s10), (2, 3.0 / s10)]);
        let e2 = vec_of(4, &[(1, 2.0 / s5), (3, 1.0 / s5)]);
        let a = blade(alg, &[&e1, &e2]);
        let b = blade(alg, &[&f1, &f2]);
        let i1 = prod(alg, &[&g1, &f1]);
        let i2 = prod(alg, &[&g2, &f2]);
        TiltedPlanes { alg, f1, f2, g1, g2, e1, e2, a, b, i1, i2 }
    }

    /// Principal bases in ascending angle order: the pair `(e2, f2)` comes
    /// first.
    pub fn principal(&self) -> PrincipalData64 {
        PrincipalData64::from_bases(
            &self.a,
            &self.b,
            vec![self.e2.clone(), self.e1.clone()],
            vec![self.f2.clone(), self.f1.clone()],
            &tol(),
        )
        .unwrap()
    }

    /// `(c0 + c1 I1 + c2 I2 + c3 I1 I2) / (5√2)`
    pub fn combo(&self, cs: [f64; 4]) -> Multivector64 {
        let k = 1.0 / (5.0 * 2f64.sqrt());
        let i12 = &self.i1 * &self.i2;
        let mut m = scalar(self.alg, cs[0]);
        m += &self.i1.scale(cs[1]);
        m += &self.i2.scale(cs[2]);
        m += &i12.scale(cs[3]);
        m.scale(k)
    }
}

pub fn tilted_planes_in_four_space() -> std::result::Result<(), String> {
    let x = TiltedPlanes::new();
    let mut c = Check::default();
    let k = 1.0 / (5.0 * 2f64.sqrt());
    c.scalar("norm of A", x.a.norm(), 1.0);
    let at_b = &x.a.multivector().reverse() * x.b.multivector();
    c.mv("reverse(A) B", &at_b, &x.combo([2.0, 6.0, 1.0, 3.0]));
    c.mv("reverse(B) A", &(&x.b.multivector().reverse() * x.a.multivector()), &x.combo([2.0, -6.0, -1.0, 3.0]));

    let computed = PrincipalData64::compute(&x.a, &x.b, &tol()).unwrap();
    c.scalar("smaller angle", computed.thetas()[0], (2.0 / 5f64.sqrt()).acos());
    c.scalar("larger angle", computed.thetas()[1], (1.0 / 10f64.sqrt()).acos());
    c.truth("positive relative orientation", !computed.eps_ab().is_negative());
    let pair = BladePair::new(x.a.clone(), x.b.clone(), &tol()).unwrap();
    let r = pair.check_product_exponential();
    c.close("product-exponential residual", r.residual, 0.0, GOLDEN);

    // Plücker coordinates in (f1f2, e1⊥f2, f1e2⊥, e1⊥e2⊥, f1e1⊥, f2e2⊥);
    // with planes labelled by decreasing angle, so plane 1 is index 1 here.
    let pd = x.principal();
    let e1p = pd.e_perp(1).unwrap();
    let e2p = pd.e_perp(0).unwrap();
    vectors_close(&mut c, "e1 perp is g1", &e1p, &x.g1);
    vectors_close(&mut c, "e2 perp is g2", &e2p, &x.g2);
    use YVector::{EPerp, F};
    let basis: [[YVector; 2]; 6] =
        [[F(1), F(0)], [EPerp(1), F(0)], [F(1), EPerp(0)], [EPerp(1), EPerp(0)], [F(1), EPerp(1)], [F(0), EPerp(0)]];
    let expected = [2.0, 6.0, 1.0, 3.0, 0.0, 0.0];
    // Coordinates are taken against e_1 ∧ e_2 of the ascending basis, which
    // is ε_A A.
    let sa = pd.eps_a().value::<f64>();
    for (factors, want) in basis.iter().zip(expected) {
        let got = plucker_coordinate_of(&pd, factors).unwrap() * sa;
        c.scalar(&format!("plucker coordinate of A on {factors:?}"), got, want * k);
    }
    // The same coordinates for [B] in the dual labelling.
    let sw = pd.swapped();
    let sb = sw.eps_a().value::<f64>();
    for (factors, want) in basis.iter().zip(expected) {
        let got = plucker_coordinate_of(&sw, factors).unwrap() * sb;
        c.scalar(&format!("plucker coordinate of B on {factors:?}"), got, want * k);
    }
    c.finish()
}

// =======================================================================
// Two planes in R^3 sharing a line, with opposite orientations
// =======================================================================

/// `f1, f2, g2` orthonormal; `A = -f1 ∧ (3 f2 + 4 g2)` with projections
/// of area 3 and 4, `B = f1 f2`.
pub struct SharedLine {
    pub alg: Algebra,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub g2: Vec<f64>,
    pub a: Blade64,
    pub b: Blade64,
}

impl SharedLine {
    pub fn new() -> Self {
        let alg = Algebra::new(3).unwrap();
        let (f1, f2, g2) = (vec_of(3, &[(0, 1.0)]), vec_of(3, &[(1, 1.0)]), vec_of(3, &[(2, 1.0)]));
        let a = blade(alg, &[&f1, &vec_of(3, &[(1, -3.0), (2, -4.0)])]);
        let b = blade(alg, &[&f1, &f2]);
        SharedLine { alg, f1, f2, g2, a, b }
    }
}

pub fn shared_line_with_opposite_orientation() -> std::result::Result<(), String> {
    let x = SharedLine::new();
    let mut c = Check::default();
    let i2 = prod(x.alg, &[&x.g2, &x.f2]);
    let at_b = &x.a.multivector().reverse() * x.b.multivector();
    c.scalar("norm of A", x.a.norm(), 5.0);
    c.mv("reverse(A) B", &at_b, &(&scalar(x.alg, -3.0) - &i2.scale(4.0)));
    let pd = PrincipalData64::compute(&x.a, &x.b, &tol()).unwrap();
    c.truth("negative relative orientation", pd.eps_ab().is_negative());
    c.scalar("shared direction", pd.thetas()[0], 0.0);
    c.scalar("tilt", pd.thetas()[1], 0.6f64.acos());
    c.mv("second principal bivector", &pd.plane(1).unwrap(), &i2);
    let report = AngleReport::from_principal(&pd, true);
    c.scalar("oriented asymmetric angle", report.oriented.unwrap().asym, (-0.6f64).acos());
    c.scalar("scalar product", x.a.multivector().reverse().scalar_product(x.b.multivector()).unwrap(), -3.0);
    let pair = BladePair::with_principal(x.a.clone(), x.b.clone(), pd);
    c.close("product-exponential residual", pair.check_product_exponential().residual, 0.0, GOLDEN);
    c.finish()
}

// =======================================================================
// A plane against a 4-space, one angle right
// =======================================================================

/// Orthonormal `f1..f4, g1, g2` in `R^6`; `e1 = (√3/2) f1 + g1/2`,
/// `e2 = g2`, `A = e1 e2`, `B = f1 f2 f3 f4`.
pub struct PlaneAndFourSpace {
    pub alg: Algebra,
    pub f: [Vec<f64>; 4],
    pub g1: Vec<f64>,
    pub g2: Vec<f64>,
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub a: Blade64,
    pub b: Blade64,
}

impl PlaneAndFourSpace {
    pub fn new() -> Self {
        let alg = Algebra::new(6).unwrap();
        let u = |i| vec_of(6, &[(i, 1.0)]);
        let f = [u(0), u(1), u(2), u(3)];
        let (g1, g2) = (u(4), u(5));
        let e1 = vec_of(6, &[(0, 3f64.sqrt() / 2.0), (4, 0.5)]);
        let e2 = g2.clone();
        let a = blade(alg, &[&e1, &e2]);
        let b = blade(alg, &[&f[0], &f[1], &f[2], &f[3]]);
        PlaneAndFourSpace { alg, f, g1, g2, e1, e2, a, b }
    }

    pub fn principal(&self) -> PrincipalData64 {
        PrincipalData64::from_bases(&self.a, &self.b, vec![self.e1.clone(), self.e2.clone()], self.f.to_vec(), &tol())
            .unwrap()
    }
}

pub fn plane_against_four_space() -> std::result::Result<(), String> {
    let x = PlaneAndFourSpace::new();
    let alg = x.alg;
    let mut c = Check::default();
    let r3 = 3f64.sqrt() / 2.0;
    let i1 = prod(alg, &[&x.g1, &x.f[0]]);
    let i2 = prod(alg, &[&x.g2, &x.f[1]]);
    let i12 = &i1 * &i2;
    let f34 = prod(alg, &[&x.f[2], &x.f[3]]);
    let (am, bm) = (x.a.multivector(), x.b.multivector());

    let pd = x.principal();
    c.scalar("first angle", pd.thetas()[0], FRAC_PI_6);
    c.scalar("second angle", pd.thetas()[1], FRAC_PI_2);
    c.mv("first principal bivector", &pd.plane(0).unwrap(), &i1);
    c.mv("second principal bivector", &pd.plane(1).unwrap(), &i2);
    let po = pd.po_of_b();
    c.mv("projective subblade", po.proj.multivector(), &prod(alg, &[&x.f[0], &x.f[1]]));
    c.mv("orthogonal subblade", po.perp.multivector(), &f34);

    let phi = AngleBivector64::from_principal(pd.clone(), true).unwrap();
    c.mv("angle bivector", &phi.as_multivector(), &(&i1.scale(FRAC_PI_6) + &i2.scale(FRAC_PI_2)));
    c.mv("exponential", &phi.exp(), &(&i2.scale(r3) + &i12.scale(0.5)));
    c.mv("cosh", &phi.cosh(), &i12.scale(0.5));
    c.mv("sinh", &phi.sinh(), &i2.scale(r3));
    let lead = &scalar(alg, r3) + &i1.scale(0.5);
    c.mv("reverse(A) B", &(&am.reverse() * bm), &(&(&lead * &i2) * &f34));
    let lead_rev = &scalar(alg, r3) - &i1.scale(0.5);
    c.mv("reverse(B) A", &(&bm.reverse() * am), &(&(&lead_rev * &i2) * &f34));

    let anti = am.anticommutator(bm).unwrap();
    let comm = am.commutator(bm).unwrap();
    c.mv("anticommutator", &anti, &(&i12 * &f34).scale(-0.5));
    c.mv("commutator", &comm, &(&i2 * &f34).scale(-r3));
    c.truth("anticommutator has grade 6", anti.homogeneous_grade(1e-14) == Some(6));
    c.truth("commutator has grade 4", comm.homogeneous_grade(1e-14) == Some(4));
    c.mv("anticommutator squared", &anti.square(), &scalar(alg, -0.25));
    c.mv("commutator squared", &comm.square(), &scalar(alg, 0.75));
    c.mv("they commute", &anti.commutator(&comm).unwrap(), &Multivector64::zero(alg));
    c.mv("A squared", &am.square(), &scalar(alg, -1.0));
    c.mv("B squared", &bm.square(), &scalar(alg, 1.0));

    // The single vector e1 against B.
    let e1 = blade(alg, &[&x.e1]);
    let pd1 = PrincipalData64::from_bases(&e1, &x.b, vec![x.e1.clone()], x.f.to_vec(), &tol()).unwrap();
    let phi1 = AngleBivector64::from_principal(pd1, true).unwrap();
    c.mv("vector angle bivector", &phi1.as_multivector(), &i1.scale(FRAC_PI_6));
    c.mv("vector cosh", &phi1.cosh(), &scalar(alg, r3));
    c.mv("vector sinh", &phi1.sinh(), &i1.scale(0.5));
    let f234 = prod(alg, &[&x.f[1], &x.f[2], &x.f[3]]);
    let anti1 = e1.multivector().anticommutator(bm).unwrap();
    let comm1 = e1.multivector().commutator(bm).unwrap();
    c.mv("vector anticommutator", &anti1, &(&i1 * &f234).scale(0.5));
    c.mv("vector commutator", &comm1, &f234.scale(r3));
    c.truth("vector anticommutator has grade 5", anti1.homogeneous_grade(1e-14) == Some(5));
    c.truth("vector commutator has grade 3", comm1.homogeneous_grade(1e-14) == Some(3));
    c.mv("vector anticommutator squared", &anti1.square(), &scalar(alg, 0.25));
    c.mv("vector commutator squared", &comm1.square(), &scalar(alg, -0.75));
    c.mv("vector products commute", &anti1.commutator(&comm1).unwrap(), &Multivector64::zero(alg));

    let pair = BladePair::with_principal(x.a.clone(), x.b.clone(), pd);
    c.close("product-exponential residual", pair.check_product_exponential().residual, 0.0, GOLDEN);
    c.finish()
}

// =======================================================================
// Commutator values of the first two configurations
// =======================================================================

pub fn commutator_values_of_worked_pairs() -> std::result::Result<(), String> {
    let mut c = Check::default();

    let x = OrthogonalPlanes::new();
    let alg = x.alg;
    let (em, fm) = (x.big_e.multivector(), x.big_f.multivector());
    let e2f2e3f3 = prod(alg, &[&x.e2, &x.f2, &x.e3, &x.f3]);
    // reverse(E) = -E, so E ⊠ F is minus the hyperbolic cosine.
    let anti = em.anticommutator(fm).unwrap();
    c.mv("reverse(E) ⊠ F", &em.reverse().anticommutator(fm).unwrap(), &e2f2e3f3);
    c.mv("E ⊠ F", &anti, &(-&e2f2e3f3));
    c.mv("E × F", &em.commutator(fm).unwrap(), &Multivector64::zero(alg));
    let phi = AngleBivector64::from_principal(x.principal(), true).unwrap();
    c.mv("cosh of the oriented bivector", &phi.cosh(), &e2f2e3f3);
    c.mv("sinh of the oriented bivector", &phi.sinh(), &Multivector64::zero(alg));
    c.mv("(E ⊠ F)^2", &anti.square(), &scalar(alg, 1.0));
    c.mv("E^2", &em.square(), &scalar(alg, -1.0));
    c.mv("F^2", &fm.square(), &scalar(alg, -1.0));

    let y = TiltedPlanes::new();
    let alg = y.alg;
    let (am, bm) = (y.a.multivector(), y.b.multivector());
    let anti = am.anticommutator(bm).unwrap();
    let comm = am.commutator(bm).unwrap();
    c.mv("A ⊠ B", &anti, &y.combo([-2.0, 0.0, 0.0, -3.0]));
    c.mv("A × B", &comm, &y.combo([0.0, -6.0, -1.0, 0.0]));
    let i12 = &y.i1 * &y.i2;
    c.mv("(A ⊠ B)^2", &anti.square(), &(&scalar(alg, 13.0) + &i12.scale(12.0)).scale(1.0 / 50.0));
    c.mv("(A × B)^2", &comm.square(), &(&scalar(alg, -37.0) + &i12.scale(12.0)).scale(1.0 / 50.0));
    c.mv("A^2", &am.square(), &scalar(alg, -1.0));
    c.mv("B^2", &bm.square(), &scalar(alg, -1.0));
    c.scalar("|A ⊠ B|^2", anti.norm_squared(), 13.0 / 50.0);
    c.scalar("|A × B|^2", comm.norm_squared(), 37.0 / 50.0);
    c.scalar("|A|", y.a.norm(), 1.0);
    c.scalar("|B|", y.b.norm(), 1.0);
    c.mv("(A ⊠ B) × (A × B)", &anti.commutator(&comm).unwrap(), &Multivector64::zero(alg));
    c.scalar("(A ⊠ B) * (A × B)", anti.scalar_product(&comm).unwrap(), 0.0);
    c.finish()
}

// =======================================================================
// Angle recovery from products of the worked pairs
// =======================================================================

pub fn recover_from_product(a: &Blade64, b: &Blade64) -> HitzerRecoveryOut {
    let ua = a.normalized().unwrap();
    let ub = b.normalized().unwrap();
    let product = &ua.multivector().reverse() * ub.multivector();
    let r = hitzer_recover(&product, a.grade(), b.grade(), &tol()).unwrap();
    HitzerRecoveryOut { d: r.d, big_d: r.big_d, thetas: r.thetas }
}

pub struct HitzerRecoveryOut {
    pub d: usize,
    pub big_d: usize,
    pub thetas: Vec<f64>,
}

pub fn worked_recoveries() -> std::result::Result<(), String> {
    let mut c = Check::default();
    let angle = 1e-8;

    let x = TiltedPlanes::new();
    let r = recover_from_product(&x.a, &x.b);
    c.truth("tilted planes: no zero angle", r.d == 0 && r.big_d == 2);
    c.close("tilted planes: smaller angle", r.thetas[0], (2.0 / 5f64.sqrt()).acos(), angle);
    c.close("tilted planes: larger angle", r.thetas[1], (1.0 / 10f64.sqrt()).acos(), angle);

    let y = PlaneAndFourSpace::new();
    let r = recover_from_product(&y.a, &y.b);
    c.truth("plane and 4-space: d = 0, D = 1", r.d == 0 && r.big_d == 1);
    c.close("plane and 4-space: generic angle", r.thetas[0], FRAC_PI_6, angle);
    c.close("plane and 4-space: right angle", r.thetas[1], FRAC_PI_2, angle);

    // Completely orthogonal planes: every angle is right.
    let alg = Algebra::new(5).unwrap();
    let u = |i| vec_of(5, &[(i, 1.0)]);
    let a = blade(alg, &[&u(0), &u(1)]);
    let b = blade(alg, &[&u(2), &u(3), &u(4)]);
    let r = recover_from_product(&a, &b);
    c.truth("orthogonal planes: d = D = 0", r.d == 0 && r.big_d == 0);
    for t in &r.thetas {
        c.close("orthogonal planes: right angle", *t, FRAC_PI_2, angle);
    }

    let z = OrthogonalPlanes::new();
    let r = recover_from_product(&z.big_e, &z.big_f);
    c.truth("shared line: d = 1", r.d == 1 && r.big_d == 1);
    c.close("shared line: zero angle", r.thetas[0], 0.0, angle);
    c.close("shared line: right angle", r.thetas[2], PI / 2.0, angle);
    c.finish()
}

/// Largest deviation seen by [`svd_oracle_population`].
pub struct OracleSummary {
    pub pairs: usize,
    pub max_svd_deviation: f64,
    pub max_angle_deviation: f64,
}

/// Random blade pairs with grades up to 3 in general position in `R^n`,
/// `p + q <= n <= 6`: the squared singular values of the cross-Gram matrix
/// from the library SVD, and the squared cosines of the library principal
/// angles, against the roots of the characteristic polynomial of `MᵀM` from
/// the closed-form solver. `M` is taken with the smaller grade as its column
/// count so that `MᵀM` has no structural zero roots. General position keeps
/// the roots simple; repeated roots of a characteristic polynomial are only
/// determined to about half the working precision.
pub fn svd_oracle_population(seed: u64, pairs: usize, eps: f64) -> std::result::Result<OracleSummary, String> {
    let mut summary = OracleSummary { pairs, max_svd_deviation: 0.0, max_angle_deviation: 0.0 };
    let mut failures = Vec::new();
    for t in 0..pairs as u64 {
        let mut rng = trial_rng(seed, t);
        let p = rng.gen_range(1..=3);
        let q = rng.gen_range(1..=(6 - p).min(3));
        let n = rng.gen_range((p + q).max(3)..=6);
        let alg = Algebra::new(n).unwrap();
        let a = random_blade::<f64, _>(&mut rng, alg, p, &tol()).unwrap();
        let b = random_blade::<f64, _>(&mut rng, alg, q, &tol()).unwrap();
        let (e, f) = (a.subspace().frame().to_vec(), b.subspace().frame().to_vec());
        let (rows, cols) = if p >= q { (&e, &f) } else { (&f, &e) };
        let m: Vec<Vec<f64>> =
            rows.iter().map(|x| cols.iter().map(|y| x.iter().zip(y).map(|(u, v)| u * v).sum()).collect()).collect();
        let roots = oracles::gram_eigenvalues_closed_form(&m);
        let k = p.min(q);

        let mut sigma = svd(&Matrix::cross_gram(&e, &f)).sigma;
        sigma.sort_by(|x, y| y.total_cmp(x));
        sigma.truncate(k);
        let pd = PrincipalData64::compute(&a, &b, &tol()).map_err(|err| format!("trial {t}: {err}"))?;
        let cosines: Vec<f64> = pd.thetas().iter().map(|th| th.cos()).collect();
        if sigma.len() != k || cosines.len() != k || roots.len() != k {
            failures.push(format!("seed={seed} trial={t}: expected {k} values"));
            continue;
        }

        for i in 0..k {
            let svd_dev = (sigma[i] * sigma[i] - roots[i]).abs();
            let angle_dev = (cosines[i] * cosines[i] - roots[i]).abs();
            summary.max_svd_deviation = summary.max_svd_deviation.max(svd_dev);
            summary.max_angle_deviation = summary.max_angle_deviation.max(angle_dev);
            if !(svd_dev <= eps && angle_dev <= eps) {
                failures.push(format!(
                    "seed={seed} trial={t} n={n} p={p} q={q} root {i}: svd {svd_dev:e}, angles {angle_dev:e}"
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}
